"""Closed formulas for the family ``(x,y)^n1 + (z,w)^n2 + (xz - yw)`` and the example catalog.

All arithmetic is on Python integers and fractions.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources
from math import comb
from typing import List, Optional, Tuple

# (n1, n2) -> n3 values of the tested variant triples
TABLE1 = {
    (4, 4): (2,), (4, 5): (3,),
    (5, 5): (3,), (5, 6): (3, 4), (5, 7): (4,),
    (6, 6): (3, 4), (6, 7): (4, 5), (6, 8): (4, 5), (6, 9): (5,),
    (7, 7): (4, 5), (7, 8): (4, 5, 6), (7, 9): (5, 6), (7, 10): (5, 6), (7, 11): (6,),
    (8, 8): (4, 5, 6), (8, 9): (5, 6, 7), (8, 10): (5, 6, 7), (8, 11): (6, 7), (8, 12): (6, 7), (8, 13): (7,),
    (9, 9): (5, 6, 7), (9, 10): (5, 6, 7, 8), (9, 11): (6, 7, 8), (9, 12): (6, 7, 8), (9, 13): (7, 8),
    (9, 14): (7, 8), (9, 15): (8,),
}


def table1_triples() -> List[Tuple[int, int, int]]:
    return [(a, b, c) for (a, b), cs in TABLE1.items() for c in cs]


def _check(n1: int, n2: int):
    if not (isinstance(n1, int) and isinstance(n2, int)) or n1 < 2 or n2 < 2:
        raise ValueError(f"need integers n1, n2 >= 2, got ({n1}, {n2})")


def binom(j: int, k: int) -> int:
    """Binomial coefficient, zero unless j >= k >= 0."""
    return comb(j, k) if j >= k >= 0 else 0


def d_formula(n1: int, n2: int) -> int:
    """Colength n1 n2 (n1 + n2) / 2."""
    _check(n1, n2)
    return n1 * n2 * (n1 + n2) // 2


def F_formula(a: int, b: int) -> int:
    _check(a, b)
    s = sum((i - 1) * binom(b - i, 1) for i in range(2, a))
    return s + (a - 1) * binom(b - a + 1, 2) + (a + 1) * (a + b - 1) + binom(b - 1, 2)


def D_sum(n1: int, n2: int) -> int:
    """Component dimension as F(n1, n2) + F(n2, n1) + d - 1."""
    return F_formula(n1, n2) + F_formula(n2, n1) + d_formula(n1, n2) - 1


def D_closed_formula(n1: int, n2: int) -> int:
    """Component dimension as a cubic in m = min(n1, n2), M = max(n1, n2)."""
    _check(n1, n2)
    m, M = Fraction(min(n1, n2)), Fraction(max(n1, n2))
    val = m**3 / 3 + m * M**2 + m**2 + 2 * m * M + M**2 - m / 3 - 1
    if val.denominator != 1:
        raise ArithmeticError(f"closed form is not integral at ({n1}, {n2}): {val}")
    return int(val)


def inequality_verdicts(n1: int, n2: int) -> Tuple[bool, bool]:
    """``(D < 4d, D < 3(d - 1))``."""
    d, D = d_formula(n1, n2), D_closed_formula(n1, n2)
    return D < 4 * d, D < 3 * (d - 1)


@dataclass(frozen=True)
class FamilyStats:
    n1: int
    n2: int
    d: int
    D_sum: int
    D_closed: int
    lt_4d: bool
    lt_3dm1: bool

    def __post_init__(self):
        if self.D_sum != self.D_closed:
            raise AssertionError(f"D_sum {self.D_sum} != D_closed {self.D_closed} at ({self.n1}, {self.n2})")

    @classmethod
    def of(cls, n1: int, n2: int) -> "FamilyStats":
        lt4, lt3 = inequality_verdicts(n1, n2)
        return cls(n1, n2, d_formula(n1, n2), D_sum(n1, n2), D_closed_formula(n1, n2), lt4, lt3)

    def to_json(self) -> dict:
        return asdict(self)


# --------------------------------------------------------------------------
# catalog

EXPECTED_FIELDS = ("colength", "tangent_total", "tnt", "t2_zero", "socle_dim", "hom_lt_4d", "hom_lt_3dm1",
                   "general_socle_dim")


@dataclass(frozen=True)
class Scenario:
    name: str
    groups: Tuple[str, ...]
    spec: dict
    expected: dict
    general_socle: int = 0  # number of general socle elements to divide by

    def to_json(self) -> dict:
        out = {"name": self.name, "groups": list(self.groups), "spec": self.spec, "expected": self.expected}
        if self.general_socle:
            out["general_socle"] = self.general_socle
        return out


def example_catalog(path: Optional[str] = None) -> List[Scenario]:
    """Named scenarios with their expected values (``None`` where nothing is claimed).

    ``path`` selects a catalog file with the same schema instead of the bundled one.
    """
    if path is None:
        text = resources.files("elemcomp").joinpath("catalog.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    out = []
    for entry in raw["scenarios"]:
        expected = {k: entry["expected"].get(k) for k in EXPECTED_FIELDS}
        out.append(Scenario(entry["name"], tuple(entry["groups"]), entry["spec"], expected,
                            entry.get("general_socle", 0)))
    return out


def catalog_lookup(names, path: Optional[str] = None) -> List[Scenario]:
    """Scenarios by name or group name, in catalog order; unknown names raise KeyError."""
    cat = example_catalog(path)
    out = []
    for n in names:
        hits = [s for s in cat if s.name == n or n in s.groups]
        if not hits:
            raise KeyError(n)
        out.extend(s for s in hits if s not in out)
    return out
