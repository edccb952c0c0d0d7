from fractions import Fraction
from math import ceil

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lnfgraph.bounds import (
    DomainError, PreconditionError, ResidueDecomposition, b, classify_degrees, f,
    f_residue_form, f_residue_values, f_values, lower_bound_certificate, phi, phi_min,
)
from lnfgraph.constructors import case1_graph, witness
from lnfgraph.graph import Graph, complete, cycle, join, petersen


def phi_oracle(n, s):
    return max(ceil(Fraction(4 * n - s, 2)), ceil(Fraction(3 * (n + s), 2)))


def test_f_examples():
    assert [f(n) for n in (8, 9, 12, 15, 16)] == [15, 18, 23, 29, 30]
    with pytest.raises(DomainError):
        f(7)


@given(st.integers(8, 10**6))
def test_f_forms_agree(n):
    assert f(n) == f_residue_form(n)


def test_f_forms_agree_exhaustively():
    ns = range(8, 10**6 + 1)
    table = f_values(np.arange(8, 10**6 + 1))
    assert np.array_equal(table, f_residue_values(np.arange(8, 10**6 + 1)))
    assert all(f(n) == f_residue_form(n) == table[n - 8] for n in ns)
    with pytest.raises(DomainError):
        f_values([7, 8])


def test_b_examples():
    assert b(8) == Fraction(49, 3)
    assert b(10) == 21
    assert isinstance(b(10), Fraction)
    gap = b(8) - f(8)
    assert gap == Fraction(4, 3) > 0
    for k in range(1, 200):
        assert b(8 * k) - f(8 * k) == Fraction(11 * k - 7, 3)


def test_residue_decomposition():
    d = ResidueDecomposition.of(23)
    assert (d.k, d.r) == (2, 7)
    with pytest.raises(DomainError):
        ResidueDecomposition.of(5)


def test_phi_examples():
    assert phi(16, 4) == 30
    assert phi(8, 2) == 15
    with pytest.raises(ValueError):
        phi(8, 0)
    with pytest.raises(ValueError):
        phi(8, 9)


def test_phi_matches_fraction_oracle():
    for n in range(8, 120):
        for s in range(1, n + 1):
            assert phi(n, s) == phi_oracle(n, s)


@pytest.mark.parametrize("k", range(1, 101))
def test_phi_min_tables(k):
    for r in range(8):
        n = 8 * k + r
        value, argmins = phi_min(n)
        values = {s: phi_oracle(n, s) for s in range(1, n + 1)}
        assert value == min(values.values())
        assert argmins == {s for s, v in values.items() if v == value}
        if r in (0, 4):
            assert value == f(n)
        if r == 0:
            assert argmins == {2 * k} and value == 15 * k
        if r == 7:
            assert phi(n, 2 * k) == 15 * k + 14 == f(n)
            # the minimum is attained on a three-point plateau around 2k + 1
            assert argmins == {2 * k, 2 * k + 1, 2 * k + 2}
        if r in (1, 2, 3, 5, 6):
            assert f(n) - value == 1


def test_degree_classification_on_g8():
    g = witness(8)
    cls = classify_degrees(g)
    degs = g.degrees()
    assert cls.S == {v for v in range(8) if degs[v] == 3}
    assert cls.s == len(cls.S) == 2 and cls.S_independent
    assert cls.S | cls.T | cls.W == set(range(8))
    assert not (cls.S & cls.T) and not (cls.T & cls.W)
    assert sum(i * len(vs) for i, vs in cls.T_buckets.items()) == 3 * cls.s


def test_classification_partitions(rng):
    from conftest import random_graph
    for _ in range(200):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        cls = classify_degrees(g)
        assert cls.S | cls.T | cls.W == set(range(g.order))
        assert len(cls.S) + len(cls.T) + len(cls.W) == g.order
        assert set().union(*cls.T_buckets.values()) == cls.T if cls.T else not cls.T_buckets


def test_lower_bound_on_g8_is_tight():
    cert = lower_bound_certificate(witness(8))
    assert cert.branch == "case-2"
    assert cert.bound == 15 == cert.size and cert.tight and cert.holds


def test_lower_bound_on_k3_join_independent_set():
    g = join(complete(3), Graph.empty(5))
    assert g == case1_graph(8)
    cert = lower_bound_certificate(g)
    assert cert.branch == "case-1"
    assert cert.bound == 14 and cert.size == 18 and cert.holds and not cert.tight


def test_lower_bound_high_min_degree():
    cert = lower_bound_certificate(complete(6))
    assert cert.branch == "min-degree-4" and cert.bound == 12 and cert.holds


def test_lower_bound_holds_on_witnesses():
    for n in range(8, 80):
        cert = lower_bound_certificate(witness(n))
        assert cert.holds and cert.bound <= f(n) == cert.size


def test_lower_bound_refuses_bad_inputs():
    with pytest.raises(PreconditionError):
        lower_bound_certificate(petersen())
    with pytest.raises(PreconditionError):
        lower_bound_certificate(cycle(6))
