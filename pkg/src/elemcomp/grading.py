"""Multigradings on k[x, y, z, w] given by integer weight vectors.

Three gradings matter here.  ``STANDARD`` is total degree; ``BIGRADED``
is ``(u1+u2, u3+u4)``; ``FINE`` adds the weight ``u1+u4``, which still
makes ``xz - yw`` homogeneous.  Every ideal in the family (and every
monomial extension of it) is homogeneous for ``FINE``, and Hom/T^2 split
into much smaller pieces under it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .poly import Monomial, Polynomial, monomials_of_degree

Key = Tuple[int, ...]


class Grading:
    __slots__ = ("name", "weights", "_total", "var_keys")

    def __init__(self, name: str, weights: Sequence[Sequence[int]], total: Sequence[int]):
        self.name = name
        self.weights = tuple(tuple(w) for w in weights)
        # total degree = sum_i total[i] * key[i]
        self._total = tuple(total)
        self.var_keys = tuple(self.key(m) for m in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))

    def __repr__(self):
        return f"Grading({self.name})"

    def __eq__(self, other):
        return isinstance(other, Grading) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def key(self, m: Monomial) -> Key:
        return tuple(w[0] * m[0] + w[1] * m[1] + w[2] * m[2] + w[3] * m[3] for w in self.weights)

    def total(self, key: Key) -> int:
        return sum(c * k for c, k in zip(self._total, key))

    def poly_key(self, f: Polynomial) -> Key | None:
        """Key of a homogeneous polynomial, ``None`` if f is not homogeneous or zero."""
        keys = {self.key(m) for m in f.terms}
        return keys.pop() if len(keys) == 1 else None

    def is_homogeneous(self, f: Polynomial) -> bool:
        return len({self.key(m) for m in f.terms}) <= 1

    def monomials(self, key: Key) -> list[Monomial]:
        return _monomials_with_key(self, key)


@lru_cache(maxsize=None)
def _monomials_with_key(grading: Grading, key: Key) -> list[Monomial]:
    d = grading.total(key)
    return [m for m in monomials_of_degree(d) if grading.key(m) == key]


def add_keys(a: Key, b: Key) -> Key:
    return tuple(i + j for i, j in zip(a, b))


def sub_keys(a: Key, b: Key) -> Key:
    return tuple(i - j for i, j in zip(a, b))


FINE = Grading("fine", [(1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 0, 1)], (1, 1, 0))
BIGRADED = Grading("bigraded", [(1, 1, 0, 0), (0, 0, 1, 1)], (1, 1))
STANDARD = Grading("standard", [(1, 1, 1, 1)], (1,))

GRADINGS = (FINE, BIGRADED, STANDARD)


def finest_grading(polys: Iterable[Polynomial]) -> Grading:
    """Finest of FINE, BIGRADED, STANDARD making every polynomial homogeneous."""
    polys = [f for f in polys if f]
    for g in GRADINGS:
        if all(g.is_homogeneous(f) for f in polys):
            return g
    raise ValueError("generators must be homogeneous in the standard grading")
