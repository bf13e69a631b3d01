"""Artinian quotients S/J of S = k[x, y, z, w] with monomial bases.

Every quotient built here keeps a basis of monomials, so multiplying a
basis element by a monomial is a normal-form lookup of a single monomial.
Family quotients use the monomials not divisible by yw; extensions and raw
quotients drop the grevlex-leading monomials of each slice.  Three
constructions exist:

* :func:`build_family_quotient` for ``(x,y)^n1 + (z,w)^n2 + (xz - yw)``,
  reducing by the rewrite ``yw -> xz`` followed by truncation;
* :func:`extend_quotient`, which adds generators to an existing quotient
  by closing them up into an ideal with the multiplication maps;
* :func:`build_raw_quotient` for arbitrary homogeneous generators, by
  row-reducing Macaulay matrices degree by degree.
"""

from __future__ import annotations

import logging
from math import comb
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .grading import FINE, Grading, Key, add_keys, finest_grading
from .poly import (
    VAR_MONOMIALS,
    FieldSpec,
    Monomial,
    Polynomial,
    grevlex_key,
    mono_bidegree,
    mono_degree,
    mono_mul,
    monomials_of_degree,
    parse_poly,
)

log = logging.getLogger(__name__)

MAX_RAW_DEGREE = 64


# --------------------------------------------------------------------------
# ideal descriptions


@dataclass(frozen=True)
class IdealSpec:
    """Symbolic description of an ideal.

    Either a family ``(x,y)^n1 + (z,w)^n2 + (xz - yw)`` (optionally with the
    variant generator ``(xz)^n3``) or a raw generator list; both may carry
    extra generators.
    """

    n1: Optional[int] = None
    n2: Optional[int] = None
    n3: Optional[int] = None
    raw: Optional[Tuple[Polynomial, ...]] = None
    extra: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if self.raw is None:
            if self.n1 is None or self.n2 is None:
                raise ValueError("family spec needs n1 and n2")
            if self.n1 < 2 or self.n2 < 2:
                raise ValueError(f"need n1, n2 >= 2, got ({self.n1}, {self.n2})")
            if self.n3 is not None and self.n3 < 1:
                raise ValueError(f"need n3 >= 1, got {self.n3}")
        else:
            if self.n1 is not None or self.n2 is not None or self.n3 is not None:
                raise ValueError("raw spec cannot carry family parameters")
            if not self.raw:
                raise ValueError("raw spec needs at least one generator")
        object.__setattr__(self, "extra", tuple(self.extra))
        if self.raw is not None:
            object.__setattr__(self, "raw", tuple(self.raw))

    @classmethod
    def family(cls, n1: int, n2: int, n3: int | None = None, extra: Sequence[Polynomial] = ()) -> "IdealSpec":
        return cls(n1=n1, n2=n2, n3=n3, extra=tuple(extra))

    @classmethod
    def from_generators(cls, gens: Sequence[Polynomial]) -> "IdealSpec":
        return cls(raw=tuple(gens))

    @property
    def kind(self) -> str:
        if self.raw is not None:
            return "raw"
        return "family" if self.n3 is None else "variant"

    @property
    def is_family_based(self) -> bool:
        return self.raw is None

    def base_generators(self, field: FieldSpec) -> List[Polynomial]:
        if self.raw is not None:
            return [_to_field(g, field) for g in self.raw]
        gens = family_generators(self.n1, self.n2, field)
        if self.n3 is not None:
            gens.append(Polynomial.monomial((self.n3, 0, self.n3, 0), field))
        return gens

    def generators(self, field: FieldSpec) -> List[Polynomial]:
        """All generators: family (or raw) ones first, then the extras."""
        return self.base_generators(field) + [_to_field(g, field) for g in self.extra]

    def with_extra(self, gens: Sequence[Polynomial]) -> "IdealSpec":
        return IdealSpec(n1=self.n1, n2=self.n2, n3=self.n3, raw=self.raw, extra=self.extra + tuple(gens))

    def to_json(self) -> dict:
        if self.raw is not None:
            out = {"raw": [str(g) for g in self.raw]}
        else:
            out = {"family": {"n1": self.n1, "n2": self.n2}, "variant_n3": self.n3}
        out["extra"] = [str(g) for g in self.extra]
        return out

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec) -> "IdealSpec":
        extra = tuple(parse_poly(t, field) for t in obj.get("extra") or [])
        if "raw" in obj:
            return cls(raw=tuple(parse_poly(t, field) for t in obj["raw"]), extra=extra)
        fam = obj["family"]
        return cls(n1=int(fam["n1"]), n2=int(fam["n2"]), n3=obj.get("variant_n3"), extra=extra)

    def describe(self) -> str:
        if self.raw is not None:
            base = "(" + ", ".join(str(g) for g in self.raw) + ")"
        else:
            base = f"(x,y)^{self.n1} + (z,w)^{self.n2} + (xz - yw"
            base += f", (xz)^{self.n3})" if self.n3 is not None else ")"
        if self.extra:
            base += " + (" + ", ".join(str(g) for g in self.extra) + ")"
        return base


def _neg(field: FieldSpec, a):
    return -a if field.p is None else (-int(a)) % field.p


def _to_field(g: Polynomial, field: FieldSpec) -> Polynomial:
    return g if g.field == field else g.to_field(field)


def family_generators(n1: int, n2: int, field: FieldSpec) -> List[Polynomial]:
    """``x^(n1-k) y^k`` (k = 0..n1), ``z^(n2-l) w^l`` (l = 0..n2), then ``xz - yw``."""
    gens = [Polynomial.monomial((n1 - k, k, 0, 0), field) for k in range(n1 + 1)]
    gens += [Polynomial.monomial((0, 0, n2 - l, l), field) for l in range(n2 + 1)]
    gens.append(Polynomial({(1, 0, 1, 0): 1, (0, 1, 0, 1): -1}, field))
    return gens


# --------------------------------------------------------------------------
# quotient algebras


class ArtinQuotient:
    """Finite-dimensional quotient S/J with an ordered monomial basis.

    ``basis`` is sorted by total degree, then grevlex-descending, so each
    graded slice is a contiguous index range.  ``grading`` is the finest
    grading in which every generator of J is homogeneous; basis elements are
    homogeneous in it (they are monomials) and so is every normal form.
    """

    def __init__(
        self,
        spec: IdealSpec,
        field: FieldSpec,
        basis: Sequence[Monomial],
        reducer: Callable[[Monomial], Dict[int, object]],
        generators: Sequence[Polynomial],
        grading: Grading,
        parent: "ArtinQuotient | None" = None,
        warnings: Sequence[str] = (),
    ):
        self.spec = spec
        self.field = field
        self.basis = list(basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._reducer = reducer
        self.generators = list(generators)
        self.grading = grading
        self.parent = parent
        self.warnings = list(warnings)
        self._nf_cache: Dict[Monomial, Dict[int, object]] = {}
        self._mult: list[np.ndarray] | None = None
        self.degrees = [mono_degree(m) for m in self.basis]
        self.keys = [grading.key(m) for m in self.basis]
        self.slices: Dict[Key, List[int]] = {}
        for i, k in enumerate(self.keys):
            self.slices.setdefault(k, []).append(i)
        self.top_degree = max(self.degrees) if self.basis else -1

    def __repr__(self):
        return f"ArtinQuotient({self.spec.describe()}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    # normal forms ---------------------------------------------------------
    def nf_monomial(self, m: Monomial) -> Dict[int, object]:
        """Normal form of a monomial as a sparse ``{basis index: coefficient}`` map."""
        out = self._nf_cache.get(m)
        if out is None:
            out = self._reducer(m) if mono_degree(m) <= self.top_degree else {}
            self._nf_cache[m] = out
        return out

    def nf(self, f: Polynomial) -> np.ndarray:
        """Coordinate vector of ``f + J`` in the basis."""
        vec = self.field.zeros(self.dim)
        fld = self.field
        for m, c in f.terms.items():
            for i, a in self.nf_monomial(m).items():
                vec[i] = fld.add(vec[i], fld.mul(c, a))
        return vec

    def nf_poly(self, f: Polynomial) -> Polynomial:
        return self.vector_to_poly(self.nf(f))

    def vector_to_poly(self, vec) -> Polynomial:
        return Polynomial({self.basis[i]: vec[i] for i in np.flatnonzero(vec)}, self.field)

    def in_ideal(self, f: Polynomial) -> bool:
        return not np.any(self.nf(f))

    # slices -----------------------------------------------------------------
    def slice(self, key: Key) -> List[int]:
        return self.slices.get(key, [])

    def graded_slice(self, d: int) -> range:
        lo = next((i for i, e in enumerate(self.degrees) if e >= d), self.dim)
        hi = next((i for i, e in enumerate(self.degrees) if e > d), self.dim)
        return range(lo, max(lo, hi))

    def bigraded_slice(self, bideg: Tuple[int, int]) -> List[int]:
        return [i for i, m in enumerate(self.basis) if mono_bidegree(m) == tuple(bideg)]

    def hilbert_function(self) -> List[int]:
        out = [0] * (self.top_degree + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    # multiplication ---------------------------------------------------------
    def action_block(self, h: Polynomial, src: Sequence[int], dst: Sequence[int]) -> np.ndarray:
        """Matrix of ``b -> h*b`` from span(src) to span(dst) (len(dst) x len(src)).

        Components of the product outside ``dst`` are dropped, so ``dst``
        must contain the slice the products land in.
        """
        fld = self.field
        out = fld.zeros((len(dst), len(src)))
        if not dst or not src:
            return out
        pos = {j: r for r, j in enumerate(dst)}
        for col, i in enumerate(src):
            b = self.basis[i]
            for m, c in h.terms.items():
                for j, a in self.nf_monomial(mono_mul(m, b)).items():
                    r = pos.get(j)
                    if r is not None:
                        out[r, col] = fld.add(out[r, col], fld.mul(c, a))
        return out

    def variable_block(self, v: int, src: Sequence[int], dst: Sequence[int]) -> np.ndarray:
        return self.action_block(Polynomial.monomial(VAR_MONOMIALS[v], self.field), src, dst)

    @property
    def mult(self) -> list[np.ndarray]:
        """The four dim x dim matrices of multiplication by x, y, z, w."""
        if self._mult is None:
            everything = list(range(self.dim))
            self._mult = [self.variable_block(v, everything, everything) for v in range(4)]
        return self._mult

    def multiply(self, vec: np.ndarray, h: Polynomial) -> np.ndarray:
        """Coordinates of ``h * (element with coordinates vec)``."""
        fld = self.field
        out = fld.zeros(self.dim)
        for i in np.flatnonzero(vec):
            b = self.basis[i]
            for m, c in h.terms.items():
                for j, a in self.nf_monomial(mono_mul(m, b)).items():
                    out[j] = fld.add(out[j], fld.mul(fld.mul(c, a), vec[i]))
        return out


# --------------------------------------------------------------------------
# constructions


def family_basis(n1: int, n2: int) -> List[Monomial]:
    """Monomials x^a y^b z^c w^e with a+b < n1, c+e < n2 and b*e = 0, basis-ordered."""
    out = []
    for a1 in range(n1):
        for a2 in range(n1 - a1):
            for a3 in range(n2):
                for a4 in range(n2 - a3):
                    if a2 * a4 == 0:
                        out.append((a1, a2, a3, a4))
    return _basis_order(out)


def _basis_order(monos) -> List[Monomial]:
    return sorted(monos, key=lambda m: (mono_degree(m), tuple(-t for t in grevlex_key(m))))


def build_family_quotient(n1: int, n2: int, field: FieldSpec | None = None) -> ArtinQuotient:
    """S/I for I = (x,y)^n1 + (z,w)^n2 + (xz - yw)."""
    if n1 < 2 or n2 < 2:
        raise ValueError(f"need n1, n2 >= 2, got ({n1}, {n2})")
    field = field or FieldSpec.prime()
    basis = family_basis(n1, n2)
    index = {m: i for i, m in enumerate(basis)}
    one = field.one

    def reduce(m: Monomial) -> Dict[int, object]:
        u1, u2, u3, u4 = m
        t = min(u2, u4)
        u1, u2, u3, u4 = u1 + t, u2 - t, u3 + t, u4 - t
        if u1 + u2 >= n1 or u3 + u4 >= n2:
            return {}
        return {index[(u1, u2, u3, u4)]: one}

    spec = IdealSpec.family(n1, n2)
    return ArtinQuotient(spec, field, basis, reduce, family_generators(n1, n2, field), FINE)


def macaulay_bound(h: int, d: int) -> int:
    """Macaulay's upper bound h^<d> for the Hilbert function one degree up."""
    out, i = 0, d
    while h > 0 and i > 0:
        k = i
        while comb(k + 1, i) <= h:
            k += 1
        h -= comb(k, i)
        out += comb(k + 1, i + 1)
        i -= 1
    return out


def build_raw_quotient(gens: Sequence[Polynomial], field: FieldSpec | None = None, spec: IdealSpec | None = None) -> ArtinQuotient:
    """S/J for homogeneous generators, via Macaulay matrices in each degree.

    Rows of the degree-d matrix span J_d; the columns are the degree-d
    monomials in grevlex-descending order, so pivots are leading monomials
    and the non-pivot columns are the standard monomials.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("the zero ideal is not Artinian")
    field = field or gens[0].field
    gens = [_to_field(g, field) for g in gens]
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("raw generators must be homogeneous")
    grading = finest_grading(gens)
    table: Dict[Monomial, Dict[Monomial, object]] = {}
    basis: List[Monomial] = []
    top_gen = max(g.degree() for g in gens)
    d, prev = 0, None
    while True:
        if d > MAX_RAW_DEGREE:
            raise ValueError(f"ideal is not Artinian below degree {MAX_RAW_DEGREE}")
        cols = monomials_of_degree(d)
        col_index = {m: i for i, m in enumerate(cols)}
        rows = []
        for g in gens:
            gd = g.degree()
            for m in monomials_of_degree(d - gd):
                row = [0] * len(cols)
                for t, c in g.terms.items():
                    row[col_index[mono_mul(m, t)]] = c
                rows.append(row)
        if rows:
            R, pivots = linalg.rref(field.array(rows), field)
        else:
            R, pivots = field.zeros((0, len(cols))), []
        piv = set(pivots)
        std = [c for c in range(len(cols)) if c not in piv]
        if not std:
            break
        # Gotzmann persistence: maximal growth past the generator degrees never stops
        if prev is not None and d - 1 >= top_gen and len(std) == macaulay_bound(prev, d - 1):
            raise ValueError(f"ideal is not Artinian (Hilbert function {len(std)} persists from degree {d})")
        prev = len(std)
        for c in std:
            basis.append(cols[c])
            table[cols[c]] = {cols[c]: field.one}
        for r, pc in enumerate(pivots):
            table[cols[pc]] = {cols[c]: _neg(field, R[r, c]) for c in std if R[r, c]}
        d += 1
    basis = _basis_order(basis)
    index = {m: i for i, m in enumerate(basis)}
    top = d - 1

    def reduce(m: Monomial) -> Dict[int, object]:
        if mono_degree(m) > top:
            return {}
        return {index[t]: c for t, c in table[m].items()}

    spec = spec or IdealSpec.from_generators(gens)
    return ArtinQuotient(spec, field, basis, reduce, gens, grading)


def extend_quotient(Q: ArtinQuotient, gens: Sequence[Polynomial], spec: IdealSpec | None = None) -> ArtinQuotient:
    """S/(J + <gens>) computed inside Q = S/J.

    The ideal generated by the residues of ``gens`` is closed up under the
    four multiplication maps degree by degree, row-reduced slice by slice,
    and its pivot monomials are dropped from the basis.
    """
    field = Q.field
    gens = [_to_field(g, field) for g in gens if g]
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("extension generators must be homogeneous")
    grading = finest_grading(Q.generators + gens)
    spec = spec or Q.spec.with_extra(gens)
    warnings = list(Q.warnings)

    # slices of Q under the (possibly coarser) grading of the new ideal
    slices: Dict[Key, List[int]] = {}
    for i, m in enumerate(Q.basis):
        slices.setdefault(grading.key(m), []).append(i)

    seeds: Dict[Key, list] = {}
    for g in gens:
        vec = Q.nf(g)
        if np.any(vec):
            key = grading.poly_key(g)
            seeds.setdefault(key, []).append(vec[slices[key]])
    if not seeds:
        warnings.append("extension generators all reduce to zero; quotient unchanged")
        log.warning("extend_quotient: generators %s already lie in the ideal", [str(g) for g in gens])

    closure: Dict[Key, np.ndarray] = {}
    pivot_rows: Dict[Key, Tuple[np.ndarray, List[int]]] = {}
    for key in sorted(slices, key=lambda k: (grading.total(k), k)):
        idx = slices[key]
        parts = [np.array(v, dtype=field.dtype).reshape(1, -1) for v in seeds.get(key, [])]
        for v in range(4):
            src_key = tuple(a - b for a, b in zip(key, grading.var_keys[v]))
            W = closure.get(src_key)
            if W is None or W.shape[0] == 0:
                continue
            block = Q.variable_block(v, slices[src_key], idx)
            parts.append(linalg.matmul(W, block.T.copy(), field))
        if not parts:
            continue
        R, piv = linalg.rref(np.concatenate(parts, axis=0), field)
        if R.shape[0]:
            closure[key] = R
            pivot_rows[key] = (R, piv)

    removed = set()
    for key, (R, piv) in pivot_rows.items():
        idx = slices[key]
        removed.update(idx[c] for c in piv)
    keep = [i for i in range(Q.dim) if i not in removed]
    new_index = {old: new for new, old in enumerate(keep)}
    red: Dict[int, Dict[int, object]] = {old: {new_index[old]: field.one} for old in keep}
    for key, (R, piv) in pivot_rows.items():
        idx = slices[key]
        for r, pc in enumerate(piv):
            row = {}
            for c in np.flatnonzero(R[r]):
                if c == pc:
                    continue
                row[new_index[idx[c]]] = _neg(field, R[r, c])
            red[idx[pc]] = row

    def reduce(m: Monomial) -> Dict[int, object]:
        out: Dict[int, object] = {}
        for i, a in Q.nf_monomial(m).items():
            for j, b in red[i].items():
                v = field.add(out.get(j, field.zero), field.mul(a, b))
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
        return out

    basis = [Q.basis[i] for i in keep]
    return ArtinQuotient(spec, field, basis, reduce, Q.generators + gens, grading, parent=Q, warnings=warnings)


def build_quotient(spec: IdealSpec, field: FieldSpec | None = None) -> ArtinQuotient:
    """Quotient for any :class:`IdealSpec`; extras are added one at a time."""
    field = field or FieldSpec.prime()
    if spec.raw is not None:
        Q = build_raw_quotient(spec.base_generators(field), field, spec=IdealSpec.from_generators(spec.raw))
    else:
        Q = build_family_quotient(spec.n1, spec.n2, field)
        if spec.n3 is not None:
            variant = IdealSpec.family(spec.n1, spec.n2, spec.n3)
            Q = extend_quotient(Q, [Polynomial.monomial((spec.n3, 0, spec.n3, 0), field)], spec=variant)
            if Q.dim == Q.parent.dim:
                Q.warnings.append(f"(xz)^{spec.n3} already lies in the family ideal")
    for g in spec.extra:
        Q = extend_quotient(Q, [g])
    return Q


# --------------------------------------------------------------------------
# socle and decomposition


def socle(Q: ArtinQuotient) -> List[np.ndarray]:
    """Basis of the common kernel of the four multiplication maps.

    Computed slice by slice, so each returned vector is homogeneous for
    ``Q.grading``.
    """
    field = Q.field
    out = []
    for key in sorted(Q.slices, key=lambda k: (Q.grading.total(k), k)):
        idx = Q.slices[key]
        blocks = []
        for v in range(4):
            dst = Q.slice(add_keys(key, Q.grading.var_keys[v]))
            if dst:
                blocks.append(Q.variable_block(v, idx, dst))
        if blocks:
            K = linalg.nullspace(np.concatenate(blocks, axis=0), field)
        else:
            K = linalg.nullspace(field.zeros((0, len(idx))), field)
        for row in K:
            vec = field.zeros(Q.dim)
            vec[idx] = row
            out.append(vec)
    return out


def socle_polynomials(Q: ArtinQuotient) -> List[Polynomial]:
    return [Q.vector_to_poly(v) for v in socle(Q)]


def check_socle_condition(Q: ArtinQuotient) -> bool:
    """True iff the socle equals the bigraded slice (n1-1, n2-1)."""
    if Q.spec.n1 is None:
        raise ValueError("socle condition needs a family spec with (n1, n2)")
    target = set(Q.bigraded_slice((Q.spec.n1 - 1, Q.spec.n2 - 1)))
    soc = socle(Q)
    if len(soc) != len(target):
        return False
    return all(set(int(i) for i in np.flatnonzero(v)) <= target for v in soc)


@dataclass
class Decomposition:
    """``p = sum_i y^i p[i,0] + sum_j w^j p[0,j] + p[0,0]`` with p[.,.] in k[x,z]."""

    y_parts: Dict[int, Polynomial]
    w_parts: Dict[int, Polynomial]
    constant_part: Polynomial

    def reassemble(self) -> Polynomial:
        f = self.constant_part
        for i, p in self.y_parts.items():
            f = f + p.mul_monomial((0, i, 0, 0))
        for j, p in self.w_parts.items():
            f = f + p.mul_monomial((0, 0, 0, j))
        return f


def decompose(Q: ArtinQuotient, p) -> Decomposition:
    """Split an element of a family quotient by its y- and w-exponents.

    ``p`` is a coordinate vector or a polynomial (reduced first).
    """
    if Q.spec.n1 is None:
        raise ValueError("decomposition needs a family quotient")
    vec = Q.nf(p) if isinstance(p, Polynomial) else p
    field = Q.field
    ys: Dict[int, dict] = {}
    ws: Dict[int, dict] = {}
    const: dict = {}
    for i in np.flatnonzero(vec):
        u1, u2, u3, u4 = Q.basis[i]
        xz = (u1, 0, u3, 0)
        if u2 and u4:
            raise ValueError("basis monomial divisible by yw")
        if u2:
            ys.setdefault(u2, {})[xz] = vec[i]
        elif u4:
            ws.setdefault(u4, {})[xz] = vec[i]
        else:
            const[xz] = vec[i]
    return Decomposition(
        {i: Polynomial(t, field) for i, t in sorted(ys.items())},
        {j: Polynomial(t, field) for j, t in sorted(ws.items())},
        Polynomial(const, field),
    )


def ideal_span(Q: ArtinQuotient, vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Row basis of the ideal of Q generated by the given elements (not necessarily homogeneous)."""
    field = Q.field
    if not len(vectors):
        return field.zeros((0, Q.dim))
    span = linalg.row_basis(np.array(vectors, dtype=field.dtype).reshape(len(vectors), Q.dim), field)
    while True:
        grown = [span] + [linalg.matmul(span, M.T.copy(), field) for M in Q.mult]
        new = linalg.row_basis(np.concatenate(grown), field)
        if new.shape[0] == span.shape[0]:
            return span
        span = new


def socle_dim_of_quotient(Q: ArtinQuotient, vectors: Sequence[np.ndarray]) -> int:
    """Socle dimension of Q/U, U the ideal generated by ``vectors``.

    Works without a grading: the socle of Q/U is ``{b : v b in U for all v} / U``.
    """
    field = Q.field
    U = ideal_span(Q, vectors)
    if U.shape[0] == 0:
        return len(socle(Q))
    perp = linalg.nullspace(U, field)
    blocks = [linalg.matmul(perp, M, field) for M in Q.mult]
    return linalg.nullspace(np.concatenate(blocks), field).shape[0] - U.shape[0]


def general_socle_elements(Q: ArtinQuotient, count: int, rng) -> List[np.ndarray]:
    """``count`` random combinations of a socle basis, coefficients uniform in the field.

    ``rng`` is a :class:`random.Random`.  Over the rationals the
    coefficients are drawn from a bounded integer range instead.
    """
    field = Q.field
    soc = socle(Q)
    out = []
    for _ in range(count):
        vec = field.zeros(Q.dim)
        for s in soc:
            c = rng.randrange(field.p) if field.p is not None else rng.randint(-1000, 1000)
            vec = field.reduce(vec + s * c)
        out.append(vec)
    return out
