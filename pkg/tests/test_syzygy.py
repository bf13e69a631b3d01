import numpy as np
import pytest

from elemcomp import linalg
from elemcomp.poly import Polynomial, monomials_of_degree, parse_poly
from elemcomp.quotient import IdealSpec, build_quotient, family_generators
from elemcomp.syzygy import (
    StructuredUnavailable,
    SyzygyGenerator,
    family_certificate,
    koszul_subspace,
    membership_certificate,
    structured_syzygies,
    syzygy_slice,
)

from conftest import CHAIN, P31, QQ, polys, random_primes


def multiples_in_degree(syzygies, slc, d):
    rows = []
    for s in syzygies:
        e = s.degree
        if e > d:
            continue
        for m in monomials_of_degree(d - e):
            rows.append(slc.vector([h.mul_monomial(m) for h in s.cofactors]))
    if not rows:
        return np.zeros((0, len(slc.layout)), dtype=slc.matrix.dtype)
    return np.array(rows, dtype=slc.matrix.dtype)


def assert_generates(Q, max_degree):
    syz = structured_syzygies(Q, include_koszul=True)
    gens = Q.generators
    for d in range(1, max_degree + 1):
        slc = syzygy_slice(gens, d)
        rows = multiples_in_degree(syz, slc, d)
        assert slc.contains(rows), d
        got = linalg.rank(rows, Q.field) if rows.shape[0] else 0
        assert got == slc.dim, (d, got, slc.dim)


@pytest.mark.parametrize("n1, n2", [(a, b) for a in (2, 3, 4) for b in (2, 3, 4)])
def test_structured_and_koszul_span_family_syzygies(n1, n2):
    assert_generates(build_quotient(IdealSpec.family(n1, n2)), n1 + n2 + 2)


@pytest.mark.parametrize("spec", [
    IdealSpec.family(3, 3, extra=polys(CHAIN)),
    IdealSpec.family(4, 4, 2),
    IdealSpec.family(3, 3, extra=polys(["x^2*z"])),
], ids=lambda s: s.describe())
def test_structured_and_koszul_span_extended_syzygies(spec):
    assert_generates(build_quotient(spec), 8)


def test_family_2_2_labels():
    syz = structured_syzygies(build_quotient(IdealSpec.family(2, 2)))
    labels = {s.label for s in syz}
    assert len(syz) == 8
    assert {"(x*y; x)", "(y^2; x)", "(z*w; z)", "(w^2; z)"} <= labels
    assert sum(label.startswith("(q; ") for label in labels) == 4
    assert all(not s.expand() for s in syz)


def test_syzygies_expand_to_zero_over_rationals():
    Q = build_quotient(IdealSpec.family(3, 3, extra=polys(CHAIN, QQ)), QQ)
    for s in structured_syzygies(Q, include_koszul=True):
        assert not s.expand()


def test_bad_syzygy_rejected():
    gens = polys(["x", "y"])
    with pytest.raises(ValueError):
        SyzygyGenerator.make("bogus", {0: gens[0], 1: gens[0]}, gens)


def test_non_bihomogeneous_extra_is_unavailable():
    Q = build_quotient(IdealSpec.family(3, 3, extra=polys(["x^2*z + x*z^2"])))
    with pytest.raises(StructuredUnavailable):
        structured_syzygies(Q)


def test_certificate_of_x_times_socle_element():
    Q = build_quotient(IdealSpec.family(3, 3, extra=polys(["x^2*z^2"])))
    n1 = 3
    syz = {s.label: s for s in structured_syzygies(Q)}
    s = syz[f"(g{len(Q.generators) - 1}; x)"]
    # x * x^2 z^2 = z^2 * x^3
    assert s.cofactors[0] == -parse_poly("z^2", P31)
    assert all(not h for k, h in enumerate(s.cofactors) if k not in (0, len(Q.generators) - 1))
    assert f"(g{len(Q.generators) - 1}; y)" in syz and n1 == 3


def test_membership_certificates():
    gens = family_generators(2, 2, P31)
    for p in polys(["x^2", "y*w - x*z", "x^2*w + z*w*y", "y*w*x"]):
        cof = membership_certificate(p, gens)
        assert cof is not None
        assert sum((h * g for h, g in zip(cof, gens)), Polynomial.zero(P31)) == p
    assert membership_certificate(parse_poly("x", P31), gens) is None
    # y*w alone is not in the ideal; its residue is that of x*z
    assert membership_certificate(parse_poly("y*w", P31), gens) is None


@pytest.mark.parametrize("n1, n2", [(2, 2), (3, 4)])
def test_family_certificate_unit_on_power_generator(n1, n2):
    gens = family_generators(n1, n2, P31)
    cert = family_certificate(gens[0], n1, n2)
    assert cert == {0: Polynomial.monomial((0, 0, 0, 0), P31)}
    assert family_certificate(parse_poly("x", P31), n1, n2) is None
    p = parse_poly("y^2*w^2*x + x^3*z^5 - 4*y*w^3*z^2", P31) * parse_poly("x*z - y*w", P31)
    cert = family_certificate(p, n1, n2)
    assert sum((h * gens[k] for k, h in cert.items()), Polynomial.zero(P31)) == p


def test_syzygy_slice_examples():
    assert syzygy_slice(polys(["x"]), 3).dim == 0
    assert syzygy_slice(polys(["x", "y"]), 2).dim == 1
    assert koszul_subspace(polys(["x", "y"]), 2).dim == 1
    gens = family_generators(2, 2, P31)
    assert koszul_subspace(gens, 2).dim == 0
    slc = syzygy_slice(gens, 4)
    assert slc.contains(koszul_subspace(gens, 4).matrix)


def test_syzygy_slice_rows_are_syzygies():
    gens = family_generators(2, 3, P31)
    slc = syzygy_slice(gens, 5)
    for cof in slc.basis:
        assert not sum((h * g for h, g in zip(cof, gens)), Polynomial.zero(P31))


def test_syzygy_slice_field_independence():
    from elemcomp.poly import FieldSpec
    fields = [FieldSpec.prime(p) for p in random_primes()] + [QQ]
    for texts in (None, CHAIN):
        dims = []
        for f in fields:
            gens = family_generators(3, 3, f) + (polys(texts, f) if texts else [])
            dims.append([syzygy_slice(gens, d).dim for d in range(2, 8)])
        assert all(x == dims[0] for x in dims)


def test_syzygy_slice_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        syzygy_slice(polys(["x + y^2"]), 3)
