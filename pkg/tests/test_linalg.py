import numpy as np
from hypothesis import given, settings, strategies as st

from elemcomp import linalg
from elemcomp.poly import FieldSpec

from conftest import P31, QQ

small_mats = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


def as_field(rows, field):
    return field.array(rows)


@settings(max_examples=200)
@given(small_mats)
def test_rank_nullity(rows):
    for field in (P31, QQ):
        A = as_field(rows, field)
        N = linalg.nullspace(A, field)
        assert linalg.rank(A, field) + N.shape[0] == A.shape[1]
        if N.shape[0]:
            assert not np.any(linalg.matmul(A, N.T.copy(), field))


@settings(max_examples=200)
@given(small_mats)
def test_rref_is_reduced(rows):
    A = as_field(rows, P31)
    R, piv = linalg.rref(A, P31)
    for r, c in enumerate(piv):
        assert R[r, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    assert list(piv) == sorted(piv)


def test_matmul_large_entries_exact():
    p = P31.p
    A = np.array([[p - 1, p - 2], [3, p - 5]], dtype=P31.dtype)
    B = np.array([[p - 7, 11], [p - 1, p - 1]], dtype=P31.dtype)
    expect = [[sum(int(A[i, k]) * int(B[k, j]) for k in range(2)) % p for j in range(2)] for i in range(2)]
    assert linalg.matmul(A, B, P31).tolist() == expect


def test_solve_coordinates_round_trip():
    field = FieldSpec.rationals()
    basis = field.array([[1, 2, 0], [0, 1, 1]])
    vecs = field.array([[2, 5, 1], [1, 2, 0]])
    coords = linalg.solve_coordinates(basis, vecs, field)
    assert coords.tolist() == [[2, 1], [1, 0]]


def test_coordinate_map_matches_solve():
    basis = P31.array([[1, 0, 3, 4], [0, 2, 1, 0], [5, 5, 0, 1]])
    vecs = linalg.matmul(P31.array([[1, 2, 3], [0, 0, 7]]), basis, P31)
    cmap = linalg.CoordinateMap(basis, P31)
    assert cmap(vecs).tolist() == linalg.solve_coordinates(basis, vecs, P31).tolist()
