"""Tangent and obstruction spaces of graded Artinian quotients B = S/J.

``Hom_S(J, B)`` is computed one multidegree at a time: a map of degree J
sends each generator g_k to an element of B in degree key(g_k) + J, and
must kill every syzygy.  The structured engine imposes only the generating
syzygies modulo Koszul ones (Koszul syzygies give identically zero
conditions because J acts by zero on B); the generic engine imposes every
syzygy of every relevant degree.

``T^2_{>=0}`` is the cokernel of ``Hom(F, B) -> Hom(Q/Kos, B)`` where F is
free on the generators and Q the syzygy module.  An S-linear map on
``Q/Kos`` is stored degree by degree and S-linearity is imposed by
commuting with multiplication by x, y, z, w, which needs no second
syzygies.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .grading import Grading, Key, add_keys, sub_keys
from .poly import VAR_MONOMIALS, mono_mul, monomials_of_degree
from .quotient import ArtinQuotient
from .syzygy import StructuredUnavailable, graded_syzygy_slice, koszul_rows, structured_syzygies

log = logging.getLogger(__name__)

STRUCTURED = "structured"
GENERIC = "generic"

T2_DEFAULT_SCOPE = 9


def worker_count() -> int:
    env = os.environ.get("EC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring EC_THREADS=%r", env)
    return os.cpu_count() or 1


def _parallel_map(fn: Callable, items: Sequence, threads: Optional[int] = None) -> list:
    """``[fn(i) for i in items]``, optionally on worker threads; order preserved."""
    threads = worker_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


# --------------------------------------------------------------------------
# helpers shared by both engines


class _Setup:
    """Slices of B and generator keys under one grading."""

    def __init__(self, Q: ArtinQuotient, grading: Optional[Grading] = None):
        self.Q = Q
        self.field = Q.field
        self.grading = grading or Q.grading
        g = self.grading
        self.gens = list(Q.generators)
        if any(g.poly_key(f) is None for f in self.gens):
            raise ValueError(f"generators are not homogeneous for the {g.name} grading")
        self.gkeys = [g.poly_key(f) for f in self.gens]
        if g == Q.grading:
            self.slices = Q.slices
        else:
            self.slices = {}
            for i, m in enumerate(Q.basis):
                self.slices.setdefault(g.key(m), []).append(i)

    def B(self, key: Key) -> List[int]:
        return self.slices.get(key, [])

    def candidate_keys(self) -> List[Key]:
        """Every J with some B_{key(g_k) + J} nonzero."""
        out = {sub_keys(L, gk) for L in self.slices for gk in set(self.gkeys)}
        return sorted(out, key=lambda k: (self.grading.total(k), k))

    def monomial_action(self, monos: Sequence, src: List[int], dst: List[int]) -> np.ndarray:
        """Array ``A[i]`` = matrix of multiplication by monos[i] from span(src) to span(dst)."""
        Q = self.Q
        fld = self.field
        pos = {j: r for r, j in enumerate(dst)}
        A = fld.zeros((len(monos), len(dst), len(src)))
        for a, m in enumerate(monos):
            for col, i in enumerate(src):
                for j, c in Q.nf_monomial(mono_mul(m, Q.basis[i])).items():
                    r = pos.get(j)
                    if r is not None:
                        A[a, r, col] = c
        return A


def _group_layout(layout) -> Dict[int, Tuple[List[int], list]]:
    """``k -> (layout columns, monomials)`` for the columns belonging to generator k."""
    out: Dict[int, Tuple[List[int], list]] = {}
    for col, (k, m) in enumerate(layout):
        cols, monos = out.setdefault(k, ([], []))
        cols.append(col)
        monos.append(m)
    return out


def _apply_rows(setup: _Setup, rows: np.ndarray, layout, src_for: Callable[[int], List[int]],
                dst: List[int]) -> Dict[int, np.ndarray]:
    """For layout vectors u (rows), the maps ``b -> sum_m u[k, m] m b`` per generator k.

    Returns ``k -> array (len(rows), len(dst), len(src_k))``.
    """
    fld = setup.field
    out = {}
    for k, (cols, monos) in _group_layout(layout).items():
        src = src_for(k)
        if not src:
            continue
        A = setup.monomial_action(monos, src, dst)
        U = rows[:, cols]
        if not np.any(U):
            continue
        prod = linalg.matmul(U, A.reshape(len(monos), -1), fld)
        out[k] = prod.reshape(rows.shape[0], len(dst), len(src))
    return out


# --------------------------------------------------------------------------
# Hom(J, B)


@dataclass
class _HomPiece:
    key: Key
    unknowns: int
    rank: int

    @property
    def dim(self) -> int:
        return self.unknowns - self.rank


class _HomSolver:
    def __init__(self, Q: ArtinQuotient, engine: str = STRUCTURED, grading: Optional[Grading] = None):
        self.setup = _Setup(Q, grading)
        self.Q = Q
        self.notes: List[str] = []
        self.engine = engine
        if engine == STRUCTURED:
            try:
                syz = structured_syzygies(Q)
            except StructuredUnavailable as exc:
                self.notes.append(f"structured engine unavailable ({exc}); used generic slices")
                self.engine = GENERIC
            else:
                g = self.setup.grading
                self.syzygies = [(s, s.key(g)) for s in syz]
        elif engine != GENERIC:
            raise ValueError(f"unknown engine {engine!r}")
        self._slice_cache: Dict[Key, object] = {}

    def _offsets(self, J: Key):
        st = self.setup
        offs, srcs, n = [], [], 0
        for gk in st.gkeys:
            src = st.B(add_keys(gk, J))
            offs.append(n)
            srcs.append(src)
            n += len(src)
        return offs, srcs, n

    def _syzygy_slice(self, K: Key):
        sl = self._slice_cache.get(K)
        if sl is None:
            sl = graded_syzygy_slice(self.setup.gens, K, self.setup.grading)
            self._slice_cache[K] = sl
        return sl

    def piece(self, J: Key) -> _HomPiece:
        st = self.setup
        fld = st.field
        offs, srcs, n = self._offsets(J)
        if n == 0:
            return _HomPiece(J, 0, 0)
        blocks = []
        if self.engine == STRUCTURED:
            for s, sk in self.syzygies:
                dst = st.B(add_keys(sk, J))
                if not dst:
                    continue
                row = fld.zeros((len(dst), n))
                for k in s.support():
                    if srcs[k]:
                        row[:, offs[k]:offs[k] + len(srcs[k])] = self.Q.action_block(s.cofactors[k], srcs[k], dst)
                blocks.append(row)
        else:
            for L in st.slices:
                K = sub_keys(L, J)
                if st.grading.total(K) < min(st.grading.total(gk) for gk in st.gkeys):
                    continue
                sl = self._syzygy_slice(K)
                if sl.dim == 0:
                    continue
                dst = st.B(L)
                acts = _apply_rows(st, sl.matrix, sl.layout, lambda k: srcs[k], dst)
                M = fld.zeros((sl.dim, len(dst), n))
                for k, A in acts.items():
                    M[:, :, offs[k]:offs[k] + len(srcs[k])] = A
                blocks.append(M.reshape(-1, n))
        if not blocks:
            return _HomPiece(J, n, 0)
        return _HomPiece(J, n, linalg.rank(np.concatenate(blocks), fld))


def _degree_window(setup: _Setup) -> Tuple[int, int]:
    degs = [g.degree() for g in setup.gens]
    return -max(degs), setup.Q.top_degree - min(degs)


def hom_pieces(Q: ArtinQuotient, engine: str = STRUCTURED, grading: Optional[Grading] = None,
               degrees: Optional[Iterable[int]] = None, threads: Optional[int] = None):
    """``(pieces, solver)``: Hom(J, B) in every multidegree (optionally only some total degrees)."""
    solver = _HomSolver(Q, engine, grading)
    keys = solver.setup.candidate_keys()
    if degrees is not None:
        wanted = set(degrees)
        keys = [k for k in keys if solver.setup.grading.total(k) in wanted]
    return _parallel_map(solver.piece, keys, threads), solver


def hom_dim(Q: ArtinQuotient, j: int, engine: str = STRUCTURED, grading: Optional[Grading] = None) -> int:
    """dim_k Hom_S(J, S/J)_j."""
    pieces, _ = hom_pieces(Q, engine, grading, degrees=[j])
    return sum(p.dim for p in pieces)


def trivial_tangent_rank(Q: ArtinQuotient) -> int:
    """Rank of the four maps ``g -> d g / d v mod J`` inside Hom_{-1}."""
    gens = Q.generators
    rows = [np.concatenate([Q.nf(g.derivative(v)) for g in gens]) for v in range(4)]
    return linalg.rank(np.array(rows, dtype=Q.field.dtype), Q.field)


@dataclass
class TangentReport:
    per_degree: Dict[int, int]
    per_bidegree: Optional[Dict[Tuple[int, int], int]]
    total: int
    j_min: int
    j_max: int
    trivial_rank_at_minus1: int
    tnt_verdict: bool
    engine: str
    notes: List[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "per_degree": {str(j): d for j, d in sorted(self.per_degree.items())},
            "total": self.total,
            "j_min": self.j_min,
            "j_max": self.j_max,
            "trivial_rank_at_minus1": self.trivial_rank_at_minus1,
            "tnt": self.tnt_verdict,
            "engine": self.engine,
        }
        if self.per_bidegree is not None:
            out["per_bidegree"] = {f"{a},{b}": d for (a, b), d in sorted(self.per_bidegree.items()) if d}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def tangent_report(Q: ArtinQuotient, engine: str = STRUCTURED, grading: Optional[Grading] = None,
                   threads: Optional[int] = None) -> TangentReport:
    pieces, solver = hom_pieces(Q, engine, grading, threads=threads)
    st = solver.setup
    j_min, j_max = _degree_window(st)
    per_degree = {j: 0 for j in range(j_min, j_max + 1)}
    per_bidegree: Optional[Dict[Tuple[int, int], int]] = {} if len(st.grading.weights) >= 2 else None
    for p in pieces:
        j = st.grading.total(p.key)
        if p.dim and not j_min <= j <= j_max:
            raise AssertionError(f"Hom piece {p.key} outside the degree window")
        if j in per_degree:
            per_degree[j] += p.dim
        if per_bidegree is not None and p.dim:
            b = (p.key[0], p.key[1])
            per_bidegree[b] = per_bidegree.get(b, 0) + p.dim
    trivial = trivial_tangent_rank(Q)
    tnt = all(per_degree[j] == 0 for j in per_degree if j <= -2) and per_degree.get(-1, 0) == trivial
    return TangentReport(per_degree, per_bidegree, sum(per_degree.values()), j_min, j_max, trivial, tnt,
                         solver.engine, list(solver.notes))


def trivial_negative_tangents(Q: ArtinQuotient, engine: str = STRUCTURED) -> bool:
    """Hom(J, B) vanishes below degree -1 and is spanned by the four partials in degree -1."""
    st = _Setup(Q)
    j_min, _ = _degree_window(st)
    pieces, _ = hom_pieces(Q, engine, degrees=range(j_min, 0))
    neg = sum(p.dim for p in pieces if st.grading.total(p.key) <= -2)
    minus1 = sum(p.dim for p in pieces if st.grading.total(p.key) == -1)
    return neg == 0 and minus1 == trivial_tangent_rank(Q)


# --------------------------------------------------------------------------
# T^2 in nonnegative degrees


class _L2Slice:
    """``(Q/Kos)_K`` with a basis C of representatives and a coordinate map."""

    def __init__(self, setup: _Setup, K: Key):
        fld = setup.field
        self.key = K
        sl = graded_syzygy_slice(setup.gens, K, setup.grading)
        self.layout = sl.layout
        self.col = {c: i for i, c in enumerate(self.layout)}
        n = len(self.layout)
        kos = koszul_rows(setup.gens, self.layout, K, setup.grading)
        if kos.shape[0]:
            self.kosR, self.kosP = linalg.rref(kos, fld)
        else:
            self.kosR, self.kosP = fld.zeros((0, n)), []
        if sl.dim:
            res = self._reduce(sl.matrix, fld)
            self.C, self.PC = linalg.rref(res, fld)
        else:
            self.C, self.PC = fld.zeros((0, n)), []
        self.field = fld

    def _reduce(self, U: np.ndarray, fld) -> np.ndarray:
        if not self.kosP:
            return U.copy()
        return fld.reduce(U - linalg.matmul(U[:, self.kosP], self.kosR, fld))

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    def coords(self, U: np.ndarray) -> np.ndarray:
        """Coordinates in the basis C of the classes of the syzygies U (rows)."""
        return self._reduce(U, self.field)[:, self.PC]


@dataclass
class ObstructionReport:
    per_degree: Dict[int, int]
    vanishes_nonneg: bool
    cutoff_degree: int
    conclusive: bool
    warnings: List[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "per_degree": {str(j): d for j, d in sorted(self.per_degree.items())},
            "t2_nonneg_zero": self.vanishes_nonneg,
            "cutoff": self.cutoff_degree,
            "conclusive": self.conclusive,
        }
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


class _T2Solver:
    def __init__(self, Q: ArtinQuotient, cutoff: int, grading: Optional[Grading] = None):
        self.setup = _Setup(Q, grading)
        self.Q = Q
        self.cutoff = cutoff
        st = self.setup
        g = st.grading
        dmin = min(g.total(k) for k in st.gkeys)
        # all multidegrees of total degree dmin..cutoff where Q/Kos can live
        self.l2: Dict[Key, _L2Slice] = {}
        keys = sorted({g.key(m) for d in range(dmin, cutoff + 1) for m in monomials_of_degree(d)},
                      key=lambda k: (g.total(k), k))
        for K in keys:
            s = _L2Slice(st, K)
            if s.dim:
                self.l2[K] = s

    def candidate_keys(self) -> List[Key]:
        g = self.setup.grading
        out = {sub_keys(L, K) for L in self.setup.slices for K in self.l2}
        return sorted((J for J in out if g.total(J) >= 0), key=lambda k: (g.total(k), k))

    def piece(self, J: Key) -> int:
        st = self.setup
        fld = st.field
        g = st.grading
        # unknown blocks psi_K : (Q/Kos)_K -> B_{K+J}, stored as (target, source) matrices
        blocks: Dict[Key, Tuple[int, List[int], int]] = {}
        n = 0
        for K, s in self.l2.items():
            if g.total(K) + g.total(J) > self.cutoff:
                continue
            dst = st.B(add_keys(K, J))
            if dst:
                blocks[K] = (n, dst, s.dim)
                n += len(dst) * s.dim
        if n == 0:
            return 0
        # S-linearity: v psi_K(b) = psi_{K+v}(v b), also when psi_K = 0 for lack of targets
        rows = []
        for K, s in self.l2.items():
            if g.total(K) + g.total(J) > self.cutoff:
                continue
            r = s.dim
            for v in range(4):
                K2 = add_keys(K, g.var_keys[v])
                if K2 not in blocks:
                    if K in blocks and st.B(add_keys(K2, J)) and g.total(K2) + g.total(J) <= self.cutoff:
                        # (Q/Kos)_{K2} = 0, so v psi_K(b) must vanish
                        off, dst, _ = blocks[K]
                        dst2 = st.B(add_keys(K2, J))
                        act = self.Q.variable_block(v, dst, dst2)
                        M = fld.zeros((r, len(dst2), n))
                        for i in range(r):
                            M[i, :, off + i:off + len(dst) * r:r] = act
                        rows.append(M.reshape(-1, n))
                    continue
                off2, dst2, r2 = blocks[K2]
                M = fld.zeros((r, len(dst2), n))
                if K in blocks:
                    off, dst, _ = blocks[K]
                    act = self.Q.variable_block(v, dst, dst2)  # |dst2| x |dst|
                    # v * psi_K(C_i): entry [t2, off + t*r + i] = act[t2, t]
                    for i in range(r):
                        M[i, :, off + i:off + len(dst) * r:r] = act
                alpha = self._shift_coords(K, K2, v)  # r x r2
                t2 = np.arange(len(dst2))
                for i in range(r):
                    for l in np.flatnonzero(alpha[i]):
                        cols = off2 + t2 * r2 + l
                        M[i, t2, cols] = fld.reduce(M[i, t2, cols] - alpha[i, l])
                rows.append(M.reshape(-1, n))
        # maps coming from Hom(F, B): psi(h) = sum_k h_k b_k
        image = []
        for k, gk in enumerate(st.gkeys):
            src = st.B(add_keys(gk, J))
            if not src:
                continue
            vec = fld.zeros((len(src), n))
            for K, (off, dst, r) in blocks.items():
                s = self.l2[K]
                acts = _apply_rows(st, s.C, s.layout, lambda kk: src if kk == k else [], dst)
                A = acts.get(k)  # (r, |dst|, |src|)
                if A is None:
                    continue
                vec[:, off:off + len(dst) * r] = A.transpose(2, 1, 0).reshape(len(src), -1)
            image.append(vec)
        Z = np.concatenate(rows) if rows else fld.zeros((0, n))
        nullity = n - (linalg.rank(Z, fld) if Z.shape[0] else 0)
        if image:
            Im = np.concatenate(image)
            if Z.shape[0] and np.any(linalg.matmul(Z, Im.T.copy(), fld)):
                raise AssertionError("image of Hom(F, B) violates S-linearity")
            im_rank = linalg.rank(Im, fld)
        else:
            im_rank = 0
        return nullity - im_rank

    def _shift_coords(self, K: Key, K2: Key, v: int) -> np.ndarray:
        """Coordinates in (Q/Kos)_{K2} of v times the basis of (Q/Kos)_K."""
        s, s2 = self.l2[K], self.l2[K2]
        fld = self.setup.field
        U = fld.zeros((s.dim, len(s2.layout)))
        var = VAR_MONOMIALS[v]
        for col, (k, m) in enumerate(s.layout):
            U[:, s2.col[(k, mono_mul(m, var))]] = s.C[:, col]
        return s2.coords(U)


def t2_nonneg(Q: ArtinQuotient, cutoff: Optional[int] = None, grading: Optional[Grading] = None,
              threads: Optional[int] = None) -> ObstructionReport:
    """dim T^2(B/k, B)_j for every j >= 0.

    ``cutoff`` bounds the total degree ``deg(syzygy) + j`` of the targets
    considered; the default (top degree of B) is exact, anything smaller
    gives an inconclusive report.
    """
    warnings = []
    top = Q.top_degree
    if cutoff is None:
        cutoff = top
    conclusive = cutoff >= top
    if not conclusive:
        warnings.append(f"cutoff {cutoff} below the top degree {top} of B; result inconclusive")
    if Q.spec.n1 is not None and Q.spec.n1 + Q.spec.n2 > T2_DEFAULT_SCOPE and not (
            (Q.spec.n1, Q.spec.n2, Q.spec.n3) == (4, 4, 2)):
        warnings.append("instance beyond the default obstruction scope; expect long run time")
    solver = _T2Solver(Q, max(cutoff, 0), grading)
    g = solver.setup.grading
    keys = solver.candidate_keys()
    dims = _parallel_map(solver.piece, keys, threads)
    per_degree = {j: 0 for j in range(0, top + 1)}
    for J, d in zip(keys, dims):
        if d < 0:
            raise AssertionError(f"negative T^2 dimension at {J}")
        j = g.total(J)
        per_degree[j] = per_degree.get(j, 0) + d
    vanishes = all(v == 0 for v in per_degree.values())
    return ObstructionReport(per_degree, vanishes, cutoff, conclusive, warnings)
