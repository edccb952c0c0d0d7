"""The extremal size function, the refuted 7(n-1)/3 bound and the degree-class lower bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph, bits_of, iter_bits, popcount

EXACT_RESIDUES = (0, 4, 7)


class DomainError(ValueError):
    """Argument outside the range where the quantity is defined."""


class PreconditionError(ValueError):
    """The graph does not satisfy the hypotheses a bound relies on."""


@dataclass(frozen=True)
class ResidueDecomposition:
    n: int
    k: int
    r: int

    @classmethod
    def of(cls, n: int) -> ResidueDecomposition:
        if n < 8:
            raise DomainError(f"n={n} is below 8")
        return cls(n, n // 8, n % 8)


def _require_order(n: int) -> None:
    if n < 8:
        raise DomainError(f"f(n) is only defined for n >= 8, got n={n}")


def f(n: int) -> int:
    """Minimum size of a 3-connected locally nonforesty graph of order n >= 8."""
    _require_order(n)
    return 2 * n - n // 8 + (0 if n % 8 in EXACT_RESIDUES else 1)


def f_residue_form(n: int) -> int:
    """The same value written as 15k + 2r (+1 unless r in {0, 4, 7})."""
    d = ResidueDecomposition.of(n)
    return 15 * d.k + 2 * d.r + (0 if d.r in EXACT_RESIDUES else 1)


def f_values(ns) -> np.ndarray:
    """Vectorised f over an integer array (all entries >= 8)."""
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size and ns.min() < 8:
        raise DomainError("f(n) is only defined for n >= 8")
    return 2 * ns - ns // 8 + ~np.isin(ns % 8, EXACT_RESIDUES)


def f_residue_values(ns) -> np.ndarray:
    """Vectorised 15k + 2r (+1) form."""
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size and ns.min() < 8:
        raise DomainError("f(n) is only defined for n >= 8")
    k, r = np.divmod(ns, 8)
    return 15 * k + 2 * r + ~np.isin(r, EXACT_RESIDUES)


def b(n: int) -> Fraction:
    """The conjectured lower bound 7(n-1)/3, exact."""
    if n < 1:
        raise DomainError("b(n) needs n >= 1")
    return Fraction(7 * (n - 1), 3)


def _ceil_half(x: int) -> int:
    return -(-x // 2)


def phi(n: int, s: int) -> int:
    """max(ceil(2n - s/2), ceil(3(n+s)/2))."""
    if not 1 <= s <= n:
        raise ValueError(f"s={s} outside 1..{n}")
    return max(_ceil_half(4 * n - s), _ceil_half(3 * (n + s)))


def phi_min(n: int) -> tuple[int, frozenset]:
    """Minimum of phi(n, s) over 1 <= s <= n and the set of minimizing s."""
    _require_order(n)
    values = [phi(n, s) for s in range(1, n + 1)]
    best = min(values)
    return best, frozenset(s for s, v in enumerate(values, start=1) if v == best)


@dataclass(frozen=True)
class DegreeClassification:
    """S = degree-3 vertices, T = N(S), W = the rest, and T split by degree into S."""

    S: frozenset
    T: frozenset
    W: frozenset
    T_buckets: dict = field(hash=False)
    s: int
    S_independent: bool

    def bucket(self, i: int) -> frozenset:
        return self.T_buckets.get(i, frozenset())


def classify_degrees(g: Graph) -> DegreeClassification:
    degs = g.degrees()
    S = [v for v in range(g.order) if degs[v] == 3]
    smask = bits_of(S)
    tmask = 0
    for v in S:
        tmask |= g.adj[v]
    tmask &= ~smask
    T = list(iter_bits(tmask))
    W = [v for v in range(g.order) if not (smask | tmask) >> v & 1]
    buckets: dict[int, set] = {}
    for v in T:
        buckets.setdefault(popcount(g.adj[v] & smask), set()).add(v)
    independent = all(not g.adj[v] & smask for v in S)
    return DegreeClassification(
        S=frozenset(S), T=frozenset(T), W=frozenset(W),
        T_buckets={i: frozenset(vs) for i, vs in sorted(buckets.items())},
        s=len(S), S_independent=independent,
    )


@dataclass(frozen=True)
class LowerBoundCertificate:
    branch: str  # "min-degree-4", "case-1" or "case-2"
    bound: int
    size: int
    holds: bool
    s: int
    degree_sum_bound: int
    t_bucket_bound: int | None
    double_count_ok: bool

    @property
    def tight(self) -> bool:
        return self.size == self.bound


def lower_bound_certificate(g: Graph) -> LowerBoundCertificate:
    """Degree-sum lower bound on e(g) for a 3-connected locally nonforesty graph.

    With delta >= 4 the bound is 2n. Otherwise it is ceil(2n - s/2), raised to
    ceil(3(n+s)/2) when every vertex of T_i has degree at least i + 3 (the
    complementary situation forces g = K3 v complement(K_i) and only the first
    bound is used).
    """
    from .predicates import is_k_connected, is_locally_nonforesty

    ok, cut = is_k_connected(g, 3)
    if not ok:
        raise PreconditionError(f"graph is not 3-connected (cut {sorted(cut) if cut else cut})")
    lnf, bad = is_locally_nonforesty(g)
    if not lnf:
        raise PreconditionError(f"local subgraph of vertex {bad} is a forest")

    n, m = g.order, g.size
    cls = classify_degrees(g)
    if cls.s == 0:
        return LowerBoundCertificate("min-degree-4", 2 * n, m, m >= 2 * n, 0, 2 * n, None, True)

    degs = g.degrees()
    double_count = sum(i * len(vs) for i, vs in cls.T_buckets.items()) == 3 * cls.s
    if cls.S_independent and not double_count:
        raise AssertionError("sum of i*|T_i| differs from 3s on an independent S")
    first = _ceil_half(4 * n - cls.s)
    case2 = all(degs[v] >= i + 3 for i, vs in cls.T_buckets.items() for v in vs)
    if case2:
        second = _ceil_half(3 * (n + cls.s))
        bound = max(first, second)
        return LowerBoundCertificate("case-2", bound, m, m >= bound, cls.s, first, second, double_count)
    return LowerBoundCertificate("case-1", first, m, m >= first, cls.s, first, None, double_count)
