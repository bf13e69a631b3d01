"""Shared random generators for the test modules."""

import random

from elemcomp.poly import Polynomial


def random_polynomial(rng: random.Random, field, max_degree=8, terms=6):
    out = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, d) for _ in range(3))
        m = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], d - cuts[2])
        out[m] = rng.randint(-20, 20)
    return Polynomial(out, field)


def random_homogeneous(rng: random.Random, field, degree, terms=3):
    out = {}
    for _ in range(terms):
        cuts = sorted(rng.randint(0, degree) for _ in range(3))
        m = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], degree - cuts[2])
        out[m] = rng.randint(1, 5)
    return Polynomial(out, field)


def _columns(M, field):
    rows, cols = M.nonzero()
    out = {}
    for r, c in zip(rows.tolist(), cols.tolist()):
        out.setdefault(c, {})[r] = M[r, c]
    return out


def _product_columns(A, B, field):
    """Sparse columns of A @ B, both given as column dicts."""
    out = {}
    for i, col in B.items():
        acc = {}
        for k, b in col.items():
            for r, a in A.get(k, {}).items():
                acc[r] = field.add(acc.get(r, field.zero), field.mul(a, b))
        out[i] = {r: v for r, v in acc.items() if v}
    return {i: c for i, c in out.items() if c}


def multiplication_commutes(Q) -> bool:
    """Exact check that the four multiplication matrices pairwise commute."""
    cols = [_columns(M, Q.field) for M in Q.mult]
    for a in range(4):
        for b in range(a + 1, 4):
            if _product_columns(cols[a], cols[b], Q.field) != _product_columns(cols[b], cols[a], Q.field):
                return False
    return True


# criterion number -> "criterion N: PASS|FAIL (...)", filled by test_acceptance
ACCEPTANCE_RESULTS = {}
