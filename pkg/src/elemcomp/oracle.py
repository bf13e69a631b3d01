"""Brute-force cross-checks that share nothing with the fast paths but ``poly``.

* a plain Buchberger algorithm (grevlex, normal pair selection, product
  and chain criteria) that tracks how every basis element is built from
  the input generators;
* normal forms by multivariate division and the staircase of standard
  monomials;
* ``oracle_hom_dim``: Hom(J, S/J)_j from the staircase and *all* degreewise
  syzygies, with its own sparse Gaussian elimination.

Everything here is written for small instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .poly import (
    FieldSpec,
    Monomial,
    Polynomial,
    grevlex_key,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)

DEFAULT_PAIR_LIMIT = 200_000
DEFAULT_SIZE_GUARD = 150


class OracleRefusal(RuntimeError):
    """Instance too large for the brute-force oracle."""


@dataclass
class GroebnerBasis:
    input_generators: List[Polynomial]
    basis: List[Polynomial]
    # cofactors[i][k]: coefficient of input generator k in basis[i]
    cofactors: List[List[Polynomial]]

    @property
    def field(self) -> FieldSpec:
        return self.input_generators[0].field

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial() for g in self.basis]


def _lt(f: Polynomial) -> Tuple[Monomial, object]:
    m = f.leading_monomial()
    return m, f.terms[m]


def _combine(cofs: List[Polynomial], other: List[Polynomial], m: Monomial, c) -> List[Polynomial]:
    """cofs - c*m*other, componentwise."""
    return [a - b.mul_monomial(m, c) for a, b in zip(cofs, other)]


def divide(f: Polynomial, G: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """Multivariate division: ``f = sum q_i G_i + r`` with no term of r divisible by any LM(G_i)."""
    field = f.field
    lts = [_lt(g) for g in G]
    quotients: List[Dict[Monomial, object]] = [{} for _ in G]
    rem: Dict[Monomial, object] = {}
    p = f
    while p:
        m, c = _lt(p)
        for i, (gm, gc) in enumerate(lts):
            if mono_divides(gm, m):
                t = mono_div(m, gm)
                a = field.mul(c, field.inv(gc))
                quotients[i][t] = field.add(quotients[i].get(t, field.zero), a)
                p = p - G[i].mul_monomial(t, a)
                break
        else:
            rem[m] = c
            p = p - Polynomial._raw({m: c}, field)
    return [Polynomial(q, field) for q in quotients], Polynomial(rem, field)


def _s_polynomial(f: Polynomial, g: Polynomial):
    fm, fc = _lt(f)
    gm, gc = _lt(g)
    L = mono_lcm(fm, gm)
    field = f.field
    a = field.inv(fc)
    b = field.inv(gc)
    return mono_div(L, fm), a, mono_div(L, gm), b


def buchberger(gens: Sequence[Polynomial], pair_limit: int = DEFAULT_PAIR_LIMIT) -> GroebnerBasis:
    """Reduced grevlex Groebner basis with cofactor tracking."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    n = len(gens)
    zero = Polynomial.zero(field)
    unit = [[zero] * n for _ in range(n)]
    for k in range(n):
        unit[k][k] = Polynomial.monomial((0, 0, 0, 0), field)

    G: List[Polynomial] = []
    C: List[List[Polynomial]] = []

    def reduce_full(p: Polynomial, cof: List[Polynomial]):
        """Fully reduce p by G, updating its cofactor vector."""
        rem: Dict[Monomial, object] = {}
        while p:
            m, c = _lt(p)
            for i, g in enumerate(G):
                gm, gc = _lt(g)
                if mono_divides(gm, m):
                    t = mono_div(m, gm)
                    a = field.mul(c, field.inv(gc))
                    p = p - g.mul_monomial(t, a)
                    cof = _combine(cof, C[i], t, a)
                    break
            else:
                rem[m] = c
                p = p - Polynomial._raw({m: c}, field)
        return Polynomial(rem, field), cof

    pairs: set = set()

    def add(p: Polynomial, cof: List[Polynomial]):
        inv = field.inv(p.leading_coeff())
        p = p.scale(inv)
        cof = [h.scale(inv) for h in cof]
        G.append(p)
        C.append(cof)
        j = len(G) - 1
        for i in range(j):
            pairs.add((i, j))

    for k, g in enumerate(gens):
        if not g:
            continue
        r, cof = reduce_full(g, list(unit[k]))
        if r:
            add(r, cof)
    if not G:
        raise ValueError("all generators are zero")

    done: set = set()
    steps = 0
    while pairs:
        steps += 1
        if steps > pair_limit:
            raise OracleRefusal(f"Buchberger pair limit {pair_limit} exceeded")
        i, j = min(
            pairs,
            key=lambda ij: (
                mono_degree(mono_lcm(G[ij[0]].leading_monomial(), G[ij[1]].leading_monomial())),
                grevlex_key(mono_lcm(G[ij[0]].leading_monomial(), G[ij[1]].leading_monomial())),
                ij,
            ),
        )
        pairs.discard((i, j))
        done.add((i, j))
        mi, mj = G[i].leading_monomial(), G[j].leading_monomial()
        L = mono_lcm(mi, mj)
        if L == mono_mul(mi, mj):
            continue  # coprime leading monomials
        chain = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_divides(G[k].leading_monomial(), L):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    chain = True
                    break
        if chain:
            continue
        ti, ai, tj, aj = _s_polynomial(G[i], G[j])
        s = G[i].mul_monomial(ti, ai) - G[j].mul_monomial(tj, aj)
        cof = [a.mul_monomial(ti, ai) - b.mul_monomial(tj, aj) for a, b in zip(C[i], C[j])]
        r, cof = reduce_full(s, cof)
        if r:
            add(r, cof)

    # minimalise
    keep = []
    for i, g in enumerate(G):
        m = g.leading_monomial()
        redundant = False
        for j, h in enumerate(G):
            if j == i:
                continue
            hm = h.leading_monomial()
            if mono_divides(hm, m) and (hm != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    G = [G[i] for i in keep]
    C = [C[i] for i in keep]
    # interreduce tails
    for i in range(len(G)):
        others_G = G[:i] + G[i + 1:]
        others_C = C[:i] + C[i + 1:]
        lm, lc = _lt(G[i])
        tail = G[i] - Polynomial._raw({lm: lc}, field)
        qs, r = divide(tail, others_G) if others_G else ([], tail)
        cof = list(C[i])
        for q, oc in zip(qs, others_C):
            for t, a in q.terms.items():
                cof = _combine(cof, oc, t, a)
        G[i] = Polynomial._raw({lm: lc}, field) + r
        C[i] = cof
    order = sorted(range(len(G)), key=lambda i: grevlex_key(G[i].leading_monomial()))
    return GroebnerBasis(gens, [G[i] for i in order], [C[i] for i in order])


def oracle_normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return divide(p, G.basis)[1]


def certificate(p: Polynomial, G: GroebnerBasis) -> List[Polynomial] | None:
    """Cofactors h with ``sum h_k gens_k = p`` if p lies in the ideal, else None."""
    qs, r = divide(p, G.basis)
    if r:
        return None
    field = p.field
    out = [Polynomial.zero(field) for _ in G.input_generators]
    for q, cof in zip(qs, G.cofactors):
        if q:
            out = [a + q * c for a, c in zip(out, cof)]
    return out


def staircase(G: GroebnerBasis, max_degree: int = 200) -> List[Monomial]:
    """Standard monomials (not divisible by any leading monomial)."""
    lms = G.leading_monomials()
    for v in range(4):
        if not any(sum(l) == l[v] for l in lms):
            raise OracleRefusal("ideal is not Artinian: no pure power of a variable is a leading monomial")
    out = []
    for d in range(max_degree + 1):
        layer = [m for m in monomials_of_degree(d) if not any(mono_divides(l, m) for l in lms)]
        if not layer:
            return out
        out.extend(layer)
    raise OracleRefusal("staircase did not terminate; ideal is not Artinian")


# --------------------------------------------------------------------------
# sparse elimination (rows are dicts column -> nonzero value)


def _sparse_rank(rows: List[Dict[int, object]], field: FieldSpec) -> int:
    pivots: Dict[int, Dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = field.inv(row[c])
                pivots[c] = {k: field.mul(v, inv) for k, v in row.items()}
                break
            a = row[c]
            for k, v in piv.items():
                nv = field.sub(row.get(k, field.zero), field.mul(a, v))
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _sparse_kernel(rows: List[Dict[int, object]], ncols: int, field: FieldSpec) -> List[Dict[int, object]]:
    """Kernel basis of the matrix with the given sparse rows."""
    # full reduction to RREF
    pivots: Dict[int, Dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        for c, piv in pivots.items():
            if c in row:
                a = row[c]
                for k, v in piv.items():
                    nv = field.sub(row.get(k, field.zero), field.mul(a, v))
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        c = min(row)
        inv = field.inv(row[c])
        row = {k: field.mul(v, inv) for k, v in row.items()}
        for pc, piv in pivots.items():
            if c in piv:
                a = piv[c]
                for k, v in row.items():
                    nv = field.sub(piv.get(k, field.zero), field.mul(a, v))
                    if nv:
                        piv[k] = nv
                    else:
                        piv.pop(k, None)
        pivots[c] = row
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        vec = {f: field.one}
        for pc, piv in pivots.items():
            if f in piv:
                vec[pc] = field.neg(piv[f])
        out.append(vec)
    return out


# --------------------------------------------------------------------------
# Hom(J, S/J)_j


class _OracleQuotient:
    def __init__(self, gens: Sequence[Polynomial], size_guard: int):
        self.gens = [g for g in gens]
        self.field = gens[0].field
        if not all(g.is_homogeneous() for g in gens if g):
            raise ValueError("oracle needs homogeneous generators")
        self.G = buchberger(gens)
        self.stair = staircase(self.G)
        if len(self.stair) > size_guard:
            raise OracleRefusal(f"quotient dimension {len(self.stair)} exceeds oracle guard {size_guard}")
        self.by_degree: Dict[int, List[Monomial]] = {}
        for m in self.stair:
            self.by_degree.setdefault(mono_degree(m), []).append(m)
        self.top = max(self.by_degree)
        self._nf: Dict[Monomial, Dict[Monomial, object]] = {}

    def nf(self, m: Monomial) -> Dict[Monomial, object]:
        out = self._nf.get(m)
        if out is None:
            if mono_degree(m) > self.top:
                out = {}
            else:
                out = dict(divide(Polynomial.monomial(m, self.field), self.G.basis)[1].terms)
            self._nf[m] = out
        return out


def _syzygies_of_degree(gens: Sequence[Polynomial], d: int, field: FieldSpec):
    layout = []
    for k, g in enumerate(gens):
        for m in monomials_of_degree(d - g.degree()):
            layout.append((k, m))
    rows: Dict[Monomial, Dict[int, object]] = {}
    for col, (k, m) in enumerate(layout):
        for t, c in gens[k].terms.items():
            rows.setdefault(mono_mul(m, t), {})[col] = c
    return layout, _sparse_kernel(list(rows.values()), len(layout), field)


def oracle_hom_dim(gens: Sequence[Polynomial], j: int, size_guard: int = DEFAULT_SIZE_GUARD, _quotient=None) -> int:
    """dim Hom_S(J, S/J)_j by brute force over all degreewise syzygies."""
    Q = _quotient or _OracleQuotient(gens, size_guard)
    field = Q.field
    gens = [g for g in Q.gens if g]
    unknowns = {}
    for k, g in enumerate(gens):
        for b in Q.by_degree.get(g.degree() + j, []):
            unknowns[(k, b)] = len(unknowns)
    if not unknowns:
        return 0
    rows = []
    dmin = min(g.degree() for g in gens)
    for d in range(dmin, Q.top - j + 1):
        targets = Q.by_degree.get(d + j, [])
        if not targets:
            continue
        layout, kernel = _syzygies_of_degree(gens, d, field)
        for vec in kernel:
            # sum_k h_k * phi(g_k), expanded in the staircase of degree d + j
            row: Dict[Tuple[Monomial, int], object] = {}
            for col, c in vec.items():
                k, m = layout[col]
                for b in Q.by_degree.get(gens[k].degree() + j, []):
                    u = unknowns[(k, b)]
                    for t, a in Q.nf(mono_mul(m, b)).items():
                        key = (t, u)
                        row[key] = field.add(row.get(key, field.zero), field.mul(c, a))
            per_target: Dict[Monomial, Dict[int, object]] = {}
            for (t, u), v in row.items():
                if v:
                    per_target.setdefault(t, {})[u] = v
            rows.extend(per_target.values())
    return len(unknowns) - _sparse_rank(rows, field)


def oracle_hom_dims(gens: Sequence[Polynomial], size_guard: int = DEFAULT_SIZE_GUARD) -> Dict[int, int]:
    """``{j: dim Hom(J, S/J)_j}`` over the window where it can be nonzero."""
    Q = _OracleQuotient(gens, size_guard)
    degs = [g.degree() for g in gens if g]
    return {j: oracle_hom_dim(gens, j, _quotient=Q) for j in range(-max(degs), Q.top - min(degs) + 1)}


def oracle_quotient_dim(gens: Sequence[Polynomial]) -> int:
    return len(staircase(buchberger(gens)))


# --------------------------------------------------------------------------
# T^2 in nonnegative degrees, from a presentation of Q/Kos


def _in_span(pivots: Dict[int, Dict[int, object]], row: Dict[int, object], field: FieldSpec, add: bool) -> bool:
    """Reduce ``row`` by an echelon dict; optionally insert it.  True iff it was dependent."""
    row = dict(row)
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            if add:
                inv = field.inv(row[c])
                pivots[c] = {k: field.mul(v, inv) for k, v in row.items()}
            return False
        a = row[c]
        for k, v in piv.items():
            nv = field.sub(row.get(k, field.zero), field.mul(a, v))
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return True


def oracle_t2_dims(gens: Sequence[Polynomial], size_guard: int = DEFAULT_SIZE_GUARD) -> Dict[int, int]:
    """``{j: dim T^2(B/k, B)_j}`` for j >= 0 with B = S/(gens).

    Q/Kos is presented as the module generated by minimal syzygies sigma_i
    modulo every combination that maps into the Koszul span.  A degree-j
    map is a choice b_i in B_{deg sigma_i + j} killing all such combinations;
    the maps induced by the free module on the generators are divided out.
    """
    Q = _OracleQuotient(gens, size_guard)
    field = Q.field
    gens = [g for g in Q.gens if g]
    top = Q.top
    dmin = min(g.degree() for g in gens)

    # minimal syzygies degree by degree, each as {(k, mono): coef}
    sigmas: List[Tuple[int, Dict[Tuple[int, Monomial], object]]] = []
    for d in range(dmin, top + 1):
        layout, kernel = _syzygies_of_degree(gens, d, field)
        col = {c: i for i, c in enumerate(layout)}
        span: Dict[int, Dict[int, object]] = {}
        for e, s in sigmas:
            for m in monomials_of_degree(d - e):
                row = {}
                for (k, t), c in s.items():
                    row[col[(k, mono_mul(m, t))]] = c
                _in_span(span, row, field, True)
        for vec in kernel:
            if not _in_span(span, vec, field, True):
                sigmas.append((d, {layout[c]: v for c, v in vec.items()}))

    out = {}
    for j in range(0, top + 1):
        unknowns = {}
        for i, (e, _) in enumerate(sigmas):
            for b in Q.by_degree.get(e + j, []):
                unknowns[(i, b)] = len(unknowns)
        if not unknowns:
            out[j] = 0
            continue
        rows = []
        for d in range(dmin, top - j + 1):
            targets = Q.by_degree.get(d + j, [])
            if not targets:
                continue
            # source: combinations sum_i a_i sigma_i with deg a_i = d - e_i
            src = [(i, m) for i, (e, _) in enumerate(sigmas) for m in monomials_of_degree(d - e)]
            if not src:
                continue
            layout = [(k, m) for k, g in enumerate(gens) for m in monomials_of_degree(d - g.degree())]
            col = {c: n for n, c in enumerate(layout)}
            # Koszul part of F_d
            kos: Dict[int, Dict[int, object]] = {}
            for a in range(len(gens)):
                for b in range(a + 1, len(gens)):
                    for m in monomials_of_degree(d - gens[a].degree() - gens[b].degree()):
                        row: Dict[int, object] = {}
                        for t, c in gens[b].terms.items():
                            key = col[(a, mono_mul(m, t))]
                            row[key] = field.add(row.get(key, field.zero), c)
                        for t, c in gens[a].terms.items():
                            key = col[(b, mono_mul(m, t))]
                            row[key] = field.sub(row.get(key, field.zero), c)
                        _in_span(kos, {k: v for k, v in row.items() if v}, field, True)
            # preimage of Kos: kernel of src -> F_d / Kos_d
            kos_pivots = sorted(kos)
            nk = len(layout)
            images = []
            for i, m in src:
                row = {}
                for (k, t), c in sigmas[i][1].items():
                    row[col[(k, mono_mul(m, t))]] = c
                images.append(row)
            # columns of the composite map: F_d coordinates reduced modulo Kos
            reduced = []
            for row in images:
                row = dict(row)
                for c in kos_pivots:
                    if c in row:
                        a = row[c]
                        for k, v in kos[c].items():
                            nv = field.sub(row.get(k, field.zero), field.mul(a, v))
                            if nv:
                                row[k] = nv
                            else:
                                row.pop(k, None)
                reduced.append(row)
            transpose: Dict[int, Dict[int, object]] = {}
            for s_idx, row in enumerate(reduced):
                for c, v in row.items():
                    transpose.setdefault(c, {})[s_idx] = v
            pre = _sparse_kernel(list(transpose.values()), len(src), field)
            del nk
            for vec in pre:
                # constraint sum a_{i,m} m b_i = 0 in B_{d+j}
                acc: Dict[Tuple[Monomial, int], object] = {}
                for s_idx, c in vec.items():
                    i, m = src[s_idx]
                    for b in Q.by_degree.get(sigmas[i][0] + j, []):
                        u = unknowns[(i, b)]
                        for t, a in Q.nf(mono_mul(m, b)).items():
                            key = (t, u)
                            acc[key] = field.add(acc.get(key, field.zero), field.mul(c, a))
                per_target: Dict[Monomial, Dict[int, object]] = {}
                for (t, u), v in acc.items():
                    if v:
                        per_target.setdefault(t, {})[u] = v
                rows.extend(per_target.values())
        hom = len(unknowns) - _sparse_rank(rows, field)
        # image of Hom(F, B)_j: e_k -> b, so sigma_i -> sum_k sigma_{i,k} b
        image = []
        for k, g in enumerate(gens):
            for b in Q.by_degree.get(g.degree() + j, []):
                row: Dict[int, object] = {}
                for i, (e, s) in enumerate(sigmas):
                    for (kk, m), c in s.items():
                        if kk != k:
                            continue
                        for t, a in Q.nf(mono_mul(m, b)).items():
                            u = unknowns[(i, t)]
                            row[u] = field.add(row.get(u, field.zero), field.mul(c, a))
                image.append({u: v for u, v in row.items() if v})
        out[j] = hom - _sparse_rank(image, field)
    return out
