"""Dense exact Gaussian elimination over a :class:`~elemcomp.poly.FieldSpec`.

Prime fields with modulus below 2^31 run on int64 arrays: a product of two
reduced entries stays below 2^62, so one elimination step never overflows.
Larger primes and the rationals fall back to object arrays.
"""

from __future__ import annotations

import numpy as np

from .poly import FieldSpec


def rref(A: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.  Returns ``(R, pivots)`` with zero rows dropped."""
    A = field.reduce(np.array(A, dtype=field.dtype, copy=True))
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    m, n = A.shape
    p = field.p
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = field.inv(A[r, c])
        A[r, c:] = field.reduce(A[r, c:] * inv)
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            upd = A[np.ix_(rows, np.arange(c, n))] - np.outer(col[rows], A[r, c:])
            A[np.ix_(rows, np.arange(c, n))] = upd % p if p is not None else upd
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(A: np.ndarray, field: FieldSpec) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, field)[1])


def nullspace(A: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Basis of ``{v : A v = 0}`` as the rows of the returned matrix."""
    n = A.shape[1]
    if A.shape[0] == 0:
        out = field.zeros((n, n))
        for i in range(n):
            out[i, i] = field.one
        return out
    R, pivots = rref(A, field)
    free = [c for c in range(n) if c not in set(pivots)]
    out = field.zeros((len(free), n))
    for k, f in enumerate(free):
        out[k, f] = field.one
        for r, pc in enumerate(pivots):
            out[k, pc] = field.reduce(-R[r, f]) if field.p is not None else -R[r, f]
    return out


def row_basis(A: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Rows of the RREF, i.e. a canonical basis of the row space."""
    if A.shape[0] == 0:
        return A
    return rref(A, field)[0]


def matmul(A: np.ndarray, B: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Matrix product reduced into the field without int64 overflow."""
    p = field.p
    if field.dtype is object:
        out = A.dot(B)
        return out % p if p is not None else out
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # split B into 16-bit halves; each partial product sum stays below 2^63
    lo = B & 0xFFFF
    hi = B >> 16
    part_lo = (A @ lo) % p
    part_hi = (A @ hi) % p
    return (part_lo + (part_hi << 16) % p) % p


def solve_coordinates(basis: np.ndarray, vectors: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Coordinates of ``vectors`` (rows) with respect to the independent rows of ``basis``.

    Raises ``ValueError`` if some vector is outside the row space.
    """
    r = basis.shape[0]
    if vectors.shape[0] == 0:
        return field.zeros((0, r))
    if r == 0:
        if np.any(vectors):
            raise ValueError("vector not in the span of an empty basis")
        return field.zeros((vectors.shape[0], 0))
    # rref of [basis^T | vectors^T] column-wise: solve basis^T c = v
    aug = np.concatenate([basis.T, vectors.T], axis=1)
    R, pivots = rref(aug, field)
    if len([p for p in pivots if p < r]) != r:
        raise ValueError("basis rows are linearly dependent")
    if any(p >= r for p in pivots):
        raise ValueError("vector not in the row space")
    return R[:r, r:].T.copy()


class CoordinateMap:
    """Fast coordinates w.r.t. a full-row-rank basis via a pivot-column inverse.

    For a basis matrix ``M`` (r x n, rank r) pick r independent columns P;
    then ``u = a M`` implies ``a = u[P] M[:, P]^{-1}``.
    """

    def __init__(self, basis: np.ndarray, field: FieldSpec):
        self.field = field
        self.basis = basis
        r, n = basis.shape
        self.r = r
        if r == 0:
            self.cols = []
            self.inv = field.zeros((0, 0))
            return
        _, cols = rref(basis, field)
        if len(cols) != r:
            raise ValueError("basis rows are linearly dependent")
        self.cols = cols
        sub = basis[:, cols]
        # invert sub via rref([sub | I])
        eye = field.zeros((r, r))
        for i in range(r):
            eye[i, i] = field.one
        R, piv = rref(np.concatenate([sub, eye], axis=1), field)
        self.inv = R[:, r:]

    def __call__(self, vectors: np.ndarray) -> np.ndarray:
        if self.r == 0:
            return self.field.zeros((vectors.shape[0], 0))
        return matmul(vectors[:, self.cols], self.inv, self.field)
