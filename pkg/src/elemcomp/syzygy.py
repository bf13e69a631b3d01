"""First syzygies of generator tuples.

Two sources:

* :func:`structured_syzygies` writes down generating syzygies for the
  family ideals directly (Eliahou-Kervaire relations of the two power
  ideals and the mixed relations through ``q = xz - yw``) and, for each
  extra generator ``f``, one syzygy per minimal generator of the
  annihilator of ``f`` in the previous quotient;
* :func:`syzygy_slice` computes a whole graded piece of the syzygy module
  as the kernel of a Macaulay matrix.

Together with the Koszul syzygies ``g_j e_i - g_i e_j`` the structured
list generates the syzygy module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg, oracle
from .grading import STANDARD, Grading, Key, add_keys, sub_keys
from .poly import FieldSpec, Monomial, Polynomial, mono_mul, mono_str, monomials_of_degree
from .quotient import ArtinQuotient, extend_quotient

Layout = List[Tuple[int, Monomial]]


class StructuredUnavailable(ValueError):
    """The structured syzygies do not apply to this ideal."""


@dataclass(frozen=True)
class SyzygyGenerator:
    """Cofactors ``h`` with ``sum_k h[k] * gens[k] == 0``; checked on construction."""

    label: str
    cofactors: Tuple[Polynomial, ...]
    generators: Tuple[Polynomial, ...]
    kind: str = "structured"

    def __post_init__(self):
        if len(self.cofactors) != len(self.generators):
            raise ValueError("one cofactor per generator required")
        if self.expand():
            raise ValueError(f"syzygy {self.label} does not expand to zero")

    @classmethod
    def make(cls, label: str, cofactors: Dict[int, Polynomial], generators: Sequence[Polynomial], kind="structured"):
        field = generators[0].field
        zero = Polynomial.zero(field)
        cof = tuple(cofactors.get(k, zero) for k in range(len(generators)))
        return cls(label, cof, tuple(generators), kind)

    def expand(self) -> Polynomial:
        total = Polynomial.zero(self.generators[0].field)
        for h, g in zip(self.cofactors, self.generators):
            if h:
                total = total + h * g
        return total

    @property
    def degree(self) -> int:
        return next(h.degree() + g.degree() for h, g in zip(self.cofactors, self.generators) if h)

    def key(self, grading: Grading) -> Key:
        h, g = next((h, g) for h, g in zip(self.cofactors, self.generators) if h)
        return add_keys(grading.poly_key(h), grading.poly_key(g))

    def support(self) -> List[int]:
        return [k for k, h in enumerate(self.cofactors) if h]


# --------------------------------------------------------------------------
# degreewise slices


def layout_for(gens: Sequence[Polynomial], key: Key, grading: Grading) -> Layout:
    """Columns ``(k, m)`` of the Macaulay map into S_key: m runs over S_{key - key(g_k)}."""
    out: Layout = []
    for k, g in enumerate(gens):
        for m in grading.monomials(sub_keys(key, grading.poly_key(g))):
            out.append((k, m))
    return out


def macaulay_matrix(gens: Sequence[Polynomial], layout: Layout, key: Key, grading: Grading) -> np.ndarray:
    field = gens[0].field
    rows = {m: r for r, m in enumerate(grading.monomials(key))}
    M = field.zeros((len(rows), len(layout)))
    for col, (k, m) in enumerate(layout):
        for t, c in gens[k].terms.items():
            M[rows[mono_mul(m, t)], col] = field(c)
    return M


@dataclass
class SyzygySlice:
    """A graded piece of the syzygy module.

    ``matrix`` holds one syzygy per row, in the coordinates ``layout``.
    """

    degree: int
    key: Key
    layout: Layout
    matrix: np.ndarray
    generators: Tuple[Polynomial, ...]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def row_to_cofactors(self, row) -> Tuple[Polynomial, ...]:
        field = self.generators[0].field
        terms: List[Dict[Monomial, object]] = [{} for _ in self.generators]
        for col in np.flatnonzero(row):
            k, m = self.layout[col]
            terms[k][m] = row[col]
        return tuple(Polynomial(t, field) for t in terms)

    @cached_property
    def basis(self) -> List[Tuple[Polynomial, ...]]:
        return [self.row_to_cofactors(r) for r in self.matrix]

    def vector(self, cofactors: Sequence[Polynomial]) -> np.ndarray:
        """Layout coordinates of a cofactor tuple of the right degree."""
        field = self.generators[0].field
        col = {c: i for i, c in enumerate(self.layout)}
        v = field.zeros(len(self.layout))
        for k, h in enumerate(cofactors):
            for m, c in h.terms.items():
                v[col[(k, m)]] = c
        return v

    def contains(self, rows: np.ndarray) -> bool:
        """Whether every row of ``rows`` lies in the span of this slice."""
        field = self.generators[0].field
        if rows.shape[0] == 0:
            return True
        return linalg.rank(np.concatenate([self.matrix, rows]), field) == linalg.rank(self.matrix, field)


def graded_syzygy_slice(gens: Sequence[Polynomial], key: Key, grading: Grading) -> SyzygySlice:
    gens = tuple(gens)
    field = gens[0].field
    layout = layout_for(gens, key, grading)
    if not layout:
        return SyzygySlice(grading.total(key), key, layout, field.zeros((0, 0)), gens)
    M = macaulay_matrix(gens, layout, key, grading)
    return SyzygySlice(grading.total(key), key, layout, linalg.nullspace(M, field), gens)


def syzygy_slice(gens: Sequence[Polynomial], d: int) -> SyzygySlice:
    """Basis of the syzygies of total degree d: kernel of (h_k) -> sum h_k g_k."""
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("syzygy slices need homogeneous generators")
    return graded_syzygy_slice(gens, (d,), STANDARD)


def koszul_rows(gens: Sequence[Polynomial], layout: Layout, key: Key, grading: Grading) -> np.ndarray:
    """Spanning rows ``m (g_j e_i - g_i e_j)`` in the given layout (not reduced)."""
    field = gens[0].field
    col = {c: i for i, c in enumerate(layout)}
    rows = []
    gkeys = [grading.poly_key(g) for g in gens]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            rest = sub_keys(sub_keys(key, gkeys[i]), gkeys[j])
            for m in grading.monomials(rest):
                v = field.zeros(len(layout))
                for t, c in gens[j].terms.items():
                    v[col[(i, mono_mul(m, t))]] = field(c)
                for t, c in gens[i].terms.items():
                    p = col[(j, mono_mul(m, t))]
                    v[p] = field.sub(v[p], field(c))
                rows.append(v)
    if not rows:
        return field.zeros((0, len(layout)))
    return np.array(rows, dtype=field.dtype)


def graded_koszul_subspace(gens: Sequence[Polynomial], key: Key, grading: Grading) -> SyzygySlice:
    gens = tuple(gens)
    layout = layout_for(gens, key, grading)
    rows = koszul_rows(gens, layout, key, grading)
    return SyzygySlice(grading.total(key), key, layout, linalg.row_basis(rows, gens[0].field), gens)


def koszul_subspace(gens: Sequence[Polynomial], d: int) -> SyzygySlice:
    """Span of the Koszul syzygies of total degree d, in the layout of ``syzygy_slice(gens, d)``."""
    return graded_koszul_subspace(gens, (d,), STANDARD)


def koszul_generators(gens: Sequence[Polynomial]) -> List[SyzygyGenerator]:
    out = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            out.append(SyzygyGenerator.make(f"koszul({i},{j})", {i: gens[j], j: -gens[i]}, gens, kind="koszul"))
    return out


# --------------------------------------------------------------------------
# membership certificates


def membership_certificate(p: Polynomial, gens: Sequence[Polynomial]) -> Optional[Tuple[Polynomial, ...]]:
    """Cofactors h with ``sum h_k gens_k == p``, or None if p is not in the ideal.

    Uses Groebner division with cofactor tracking.
    """
    gens = list(gens)
    nonzero = [k for k, g in enumerate(gens) if g]
    if not p:
        return tuple(Polynomial.zero(p.field) for _ in gens)
    if not nonzero:
        return None
    G = oracle.buchberger([gens[k] for k in nonzero])
    cof = oracle.certificate(p, G)
    if cof is None:
        return None
    out = [Polynomial.zero(p.field) for _ in gens]
    for k, h in zip(nonzero, cof):
        out[k] = h
    return tuple(out)


def family_certificate(p: Polynomial, n1: int, n2: int) -> Optional[Dict[int, Polynomial]]:
    """Certificate of membership in the family ideal, by the rewrite ``yw -> xz``.

    Generator indices follow :func:`~elemcomp.quotient.family_generators`.
    Each monomial ``r (yw)^t`` becomes ``r (xz)^t - r q sum_i (xz)^i (yw)^(t-1-i)``;
    the rewritten monomial is then divisible by a power generator or is a
    basis monomial, and the basis parts must cancel.
    """
    field = p.field
    cof: Dict[int, Dict[Monomial, object]] = {}
    leftover: Dict[Monomial, object] = {}
    q_index = n1 + n2 + 2

    def add(k, m, c):
        d = cof.setdefault(k, {})
        v = field.add(d.get(m, field.zero), c)
        if v:
            d[m] = v
        else:
            d.pop(m, None)

    for m, c in p.terms.items():
        u1, u2, u3, u4 = m
        t = min(u2, u4)
        r = (u1, u2 - t, u3, u4 - t)
        for i in range(t):
            add(q_index, mono_mul(r, (i, t - 1 - i, i, t - 1 - i)), field.neg(c))
        u1, u2, u3, u4 = u1 + t, u2 - t, u3 + t, u4 - t
        if u1 + u2 >= n1:
            k = min(u2, n1)
            add(k, (u1 - (n1 - k), u2 - k, u3, u4), c)
        elif u3 + u4 >= n2:
            l = min(u4, n2)
            add(n1 + 1 + l, (u1, u2, u3 - (n2 - l), u4 - l), c)
        else:
            mm = (u1, u2, u3, u4)
            v = field.add(leftover.get(mm, field.zero), c)
            if v:
                leftover[mm] = v
            else:
                leftover.pop(mm)
    if leftover:
        return None
    return {k: Polynomial(t, field) for k, t in cof.items() if t}


def _solve_any(A: np.ndarray, b: np.ndarray, field: FieldSpec) -> Optional[np.ndarray]:
    """Some x with ``A x = b``, or None."""
    n = A.shape[1]
    if n == 0:
        return field.zeros(0) if not np.any(b) else None
    R, piv = linalg.rref(np.concatenate([A, b.reshape(-1, 1)], axis=1), field)
    if piv and piv[-1] == n:
        return None
    x = field.zeros(n)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


# --------------------------------------------------------------------------
# structured syzygies


@dataclass
class _Stage:
    """Quotient after adding generator ``index`` (the extra ``f``) to ``previous``."""

    previous: ArtinQuotient
    current: ArtinQuotient
    f: Polynomial
    index: int


def _stages(Q: ArtinQuotient) -> Tuple[ArtinQuotient, List[_Stage]]:
    """Walk back to the family base quotient, one generator per stage."""
    chain = []
    R = Q
    while R.parent is not None:
        chain.append(R)
        R = R.parent
    base = R
    if base.spec.raw is not None or base.spec.n1 is None or base.spec.extra or base.spec.n3 is not None:
        raise StructuredUnavailable("structured syzygies need a family ideal as the base")
    stages: List[_Stage] = []
    prev = base
    for R in reversed(chain):
        new = R.generators[len(prev.generators):]
        for f in new:
            if len(new) == 1:
                cur = R
            else:
                cur = extend_quotient(prev, [f], spec=prev.spec.with_extra([f]))
            stages.append(_Stage(prev, cur, f, len(prev.generators)))
            prev = cur
    return base, stages


def _regrade(Q: ArtinQuotient, grading: Grading) -> Dict[Key, List[int]]:
    if grading == Q.grading:
        return Q.slices
    out: Dict[Key, List[int]] = {}
    for i, m in enumerate(Q.basis):
        out.setdefault(grading.key(m), []).append(i)
    return out


def annihilator_generators(Q: ArtinQuotient, f: Polynomial, grading: Grading) -> List[Polynomial]:
    """Minimal homogeneous generators of ``ann(f + J)`` in Q = S/J.

    In each slice the annihilator is the kernel of multiplication by f; a
    complement of the part reached from lower slices by the variables gives
    the minimal generators.  Returned as polynomials in the basis monomials.
    """
    field = Q.field
    slices = _regrade(Q, grading)
    fkey = grading.poly_key(f)
    ann: Dict[Key, np.ndarray] = {}
    out: List[Polynomial] = []
    for key in sorted(slices, key=lambda k: (grading.total(k), k)):
        idx = slices[key]
        dst = slices.get(add_keys(key, fkey), [])
        if dst:
            K = linalg.nullspace(Q.action_block(f, idx, dst), field)
        else:
            K = linalg.nullspace(field.zeros((0, len(idx))), field)
        if K.shape[0] == 0:
            continue
        ann[key] = K
        reached = []
        for v in range(4):
            src_key = sub_keys(key, grading.var_keys[v])
            W = ann.get(src_key)
            if W is None:
                continue
            block = Q.variable_block(v, slices[src_key], idx)
            reached.append(linalg.matmul(W, block.T.copy(), field))
        if reached:
            Rm, Pm = linalg.rref(np.concatenate(reached), field)
        else:
            Rm, Pm = field.zeros((0, len(idx))), []
        if len(Pm) == K.shape[0]:
            continue
        # complement of span(reached) inside span(K): reduce K against Rm
        res = K.copy()
        if Pm:
            res = field.reduce(res - linalg.matmul(res[:, Pm], Rm, field))
        C, _ = linalg.rref(res, field)
        for row in C:
            out.append(Polynomial({Q.basis[idx[c]]: row[c] for c in np.flatnonzero(row)}, field))
    return out


class _Certifier:
    """Membership certificates for the ideals along a stage chain."""

    def __init__(self, base: ArtinQuotient, stages: List[_Stage]):
        self.base = base
        self.stages = stages
        self.field = base.field

    def certify(self, p: Polynomial, level: int) -> Dict[int, Polynomial]:
        """Cofactors expressing p in the generators of ``stages[level-1].current``."""
        field = self.field
        if not p:
            return {}
        if level == 0:
            cof = family_certificate(p, self.base.spec.n1, self.base.spec.n2)
            if cof is None:
                raise ValueError(f"{p} is not in the family ideal")
            return cof
        st = self.stages[level - 1]
        P = st.previous
        d = p.degree()
        rng = list(P.graded_slice(d))
        target = P.nf(p)[rng]
        monos = monomials_of_degree(d - st.f.degree()) if d >= st.f.degree() else []
        cols = [P.nf(st.f.mul_monomial(m))[rng] for m in monos]
        if cols:
            A = np.array(cols, dtype=field.dtype).T.reshape(len(rng), len(monos))
        else:
            A = field.zeros((len(rng), 0))
        x = _solve_any(A, target, field)
        if x is None:
            raise ValueError(f"{p} is not in the ideal at stage {level}")
        a = Polynomial({m: x[i] for i, m in enumerate(monos) if x[i]}, field)
        rest = self.certify(p - a * st.f, level - 1)
        if a:
            rest[st.index] = rest.get(st.index, Polynomial.zero(field)) + a
        return rest


def family_syzygies(n1: int, n2: int, gens: Sequence[Polynomial]) -> List[SyzygyGenerator]:
    """The generating syzygies of ``(x,y)^n1 + (z,w)^n2 + (xz - yw)`` modulo Koszul ones."""
    field = gens[0].field
    X, Y, Z, W = (Polynomial.monomial(m, field) for m in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    q = n1 + n2 + 2
    out = []
    for k in range(1, n1 + 1):
        a = mono_str((n1 - k, k, 0, 0))
        out.append(SyzygyGenerator.make(f"({a}; x)", {k - 1: Y, k: -X}, gens))
    for l in range(1, n2 + 1):
        b = mono_str((0, 0, n2 - l, l))
        out.append(SyzygyGenerator.make(f"({b}; z)", {n1 + l: W, n1 + 1 + l: -Z}, gens))
    for k in range(1, n1 + 1):
        m = (n1 - k, k - 1, 0, 0)
        out.append(SyzygyGenerator.make(
            f"(q; {mono_str(m)})", {k - 1: Z, k: -W, q: -Polynomial.monomial(m, field)}, gens))
    for l in range(1, n2 + 1):
        m = (0, 0, n2 - l, l - 1)
        out.append(SyzygyGenerator.make(
            f"(q; {mono_str(m)})", {n1 + l: X, n1 + 1 + l: -Y, q: -Polynomial.monomial(m, field)}, gens))
    return out


def structured_syzygies(Q: ArtinQuotient, include_koszul: bool = False) -> List[SyzygyGenerator]:
    """Generating syzygies of the ideal of Q modulo Koszul syzygies.

    Q must be a family quotient, possibly extended (variant generator and
    extra generators, in any number of stages).  For each extra generator
    f, added to a previous ideal J', every minimal generator c of the
    annihilator of f in S/J' gives the syzygy ``c e_f - sum h_k e_k`` where
    ``c f = sum h_k g_k`` is a membership certificate in J'.
    """
    base, stages = _stages(Q)
    gens = list(Q.generators)
    n1, n2 = base.spec.n1, base.spec.n2
    for st in stages:
        if not st.f.is_bihomogeneous():
            raise StructuredUnavailable(f"generator {st.f} is not bihomogeneous")
    out = family_syzygies(n1, n2, gens)
    cert = _Certifier(base, stages)
    for level, st in enumerate(stages):
        for c in annihilator_generators(st.previous, st.f, Q.grading):
            h = cert.certify(c * st.f, level)
            cof = {k: -v for k, v in h.items()}
            cof[st.index] = cof.get(st.index, Polynomial.zero(Q.field)) + c
            out.append(SyzygyGenerator.make(f"(g{st.index}; {c})", cof, gens))
    if include_koszul:
        out += koszul_generators(gens)
    return out
