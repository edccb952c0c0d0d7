"""Machine-checkable search results."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1

PREDICATES = ("connected", "3_connected", "locally_nonforesty")


def failing_predicate(g, predicates) -> str | None:
    """Name of the first predicate ``g`` fails, or None."""
    from .predicates import is_k_connected, is_locally_nonforesty

    for name in predicates:
        if name == "connected":
            ok = is_k_connected(g, 1)[0]
        elif name == "3_connected":
            ok = is_k_connected(g, 3)[0]
        elif name == "locally_nonforesty":
            ok = g.order > 0 and is_locally_nonforesty(g)[0]
        else:
            raise ValueError(f"unknown predicate {name!r}")
        if not ok:
            return name
    return None


@dataclass
class Certificate:
    """Either a witness (``verdict`` exists/confirmed) or an exhaustion statement.

    ``records`` holds per-item results (one per size for minimality runs, one
    per assembled graph for gadget stores). ``timing`` is kept apart so that
    outputs can be compared byte-for-byte after dropping it.
    """

    kind: str
    constraints: dict
    verdict: str
    witness: str | None = None
    counts: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in ("exists", "confirmed")

    def to_dict(self, with_timing: bool = True) -> dict:
        d = {"schema_version": SCHEMA_VERSION, **asdict(self)}
        if not with_timing:
            d.pop("timing")
        return d

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=True) + "\n"

    def save(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        return path

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        d = dict(d)
        version = d.pop("schema_version", None)
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported certificate schema {version!r}")
        return cls(**d)

    @classmethod
    def load(cls, path) -> Certificate:
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def verify(self) -> bool:
        """Re-check the witness (if any) against the recorded constraints."""
        from .formats import parse_graph6

        if self.kind == "gadget-store":
            return self.verdict == "confirmed" and all(r["verdict"] == "pass" for r in self.records)
        if (self.witness is not None) != (self.verdict in ("exists", "confirmed")):
            return False
        if self.witness is None:
            return True
        g = parse_graph6(self.witness)
        c = self.constraints
        if "order" in c and g.order != c["order"]:
            return False
        size = c.get("size", c.get("claimed"))
        if size is not None and g.size != size:
            return False
        if c.get("min_degree") and min(g.degrees()) < c["min_degree"]:
            return False
        return failing_predicate(g, c.get("predicates", ())) is None
