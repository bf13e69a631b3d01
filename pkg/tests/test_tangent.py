import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from elemcomp import oracle
from elemcomp.family import D_closed_formula
from elemcomp.grading import BIGRADED, STANDARD
from elemcomp.poly import FieldSpec, Polynomial
from elemcomp.quotient import IdealSpec, build_quotient
from elemcomp.tangent import (
    GENERIC,
    STRUCTURED,
    hom_dim,
    t2_nonneg,
    tangent_report,
    trivial_negative_tangents,
    trivial_tangent_rank,
)

from conftest import CHAIN, P31, QQ, polys, random_primes

CI = ["y", "z", "w", "x^2"]


def family(n1, n2, n3=None, field=P31):
    return build_quotient(IdealSpec.family(n1, n2, n3), field)


def raw(texts, field=P31):
    return build_quotient(IdealSpec.from_generators(polys(texts, field)), field)


def test_hom_examples():
    Q = family(2, 2)
    assert hom_dim(Q, -2) == 0
    assert hom_dim(Q, -1) == 4
    R = raw(CI)
    assert hom_dim(R, -2, engine=GENERIC) == 1
    assert not trivial_negative_tangents(R)
    assert tangent_report(R).tnt_verdict is False


@pytest.mark.parametrize("n1, n2, total", [
    (2, 2, 25), (2, 3, 44), (2, 4, 69), (2, 5, 100), (3, 3, 70), (3, 4, 104)])
def test_grid_totals(n1, n2, total):
    rep = tangent_report(family(n1, n2))
    assert rep.total == total
    assert rep.tnt_verdict and rep.per_degree[-1] == 4 and rep.trivial_rank_at_minus1 == 4


@pytest.mark.parametrize("n1, n2", [(a, b) for a in range(2, 7) for b in range(a, 7)])
def test_family_totals_match_component_dimension(n1, n2):
    rep = tangent_report(family(n1, n2))
    assert rep.total == D_closed_formula(n1, n2)
    assert rep.tnt_verdict


@pytest.mark.parametrize("steps, total", [(0, 70), (1, 77), (2, 82), (3, 85)])
def test_chain_totals(steps, total):
    Q = build_quotient(IdealSpec.family(3, 3, extra=polys(CHAIN[:steps])))
    rep = tangent_report(Q)
    assert rep.total == total and rep.tnt_verdict


ENGINE_SPECS = [IdealSpec.family(a, b) for a in (2, 3, 4) for b in (2, 3, 4) if a <= b] + [
    IdealSpec.family(4, 4, 2),
    IdealSpec.family(3, 3, extra=polys(CHAIN)),
    IdealSpec.family(3, 3, extra=polys(["x^2*z"])),
    IdealSpec.family(2, 4, extra=polys(["x*z^3", "y*w^3"])),
]


@pytest.mark.parametrize("spec", ENGINE_SPECS, ids=lambda s: s.describe())
def test_engines_agree(spec):
    Q = build_quotient(spec)
    a = tangent_report(Q, engine=STRUCTURED)
    b = tangent_report(Q, engine=GENERIC)
    assert a.engine == STRUCTURED and b.engine == GENERIC
    assert a.per_degree == b.per_degree
    assert a.per_bidegree == b.per_bidegree


def test_variant_4_4_2():
    rep = tangent_report(family(4, 4, 2))
    assert rep.total == 173 and rep.tnt_verdict
    assert rep.total < 4 * 56 and not rep.total < 3 * 55


def test_structured_falls_back_for_mixed_bidegree_extras():
    Q = build_quotient(IdealSpec.family(3, 3, extra=polys(["x^2*z + x*z^2"])))
    rep = tangent_report(Q, engine=STRUCTURED)
    assert rep.engine == GENERIC and rep.notes
    assert rep.per_degree == tangent_report(Q, engine=GENERIC).per_degree


@pytest.mark.parametrize("spec", [IdealSpec.family(2, 3), IdealSpec.family(3, 3, extra=polys(CHAIN[:2])),
                                  IdealSpec.from_generators(polys(CI))], ids=lambda s: s.describe())
def test_degree_window(spec):
    Q = build_quotient(spec)
    rep = tangent_report(Q)
    degs = [g.degree() for g in Q.generators]
    assert rep.j_min == -max(degs) and rep.j_max == Q.top_degree - min(degs)
    assert sorted(rep.per_degree) == list(range(rep.j_min, rep.j_max + 1))
    assert rep.total == sum(rep.per_degree.values())
    for j in (rep.j_min - 1, rep.j_min - 2, rep.j_max + 1):
        assert hom_dim(Q, j) == 0


@pytest.mark.parametrize("spec", [IdealSpec.family(2, 4), IdealSpec.family(3, 3, extra=polys(CHAIN))],
                         ids=lambda s: s.describe())
def test_bigraded_refinement(spec):
    Q = build_quotient(spec)
    fine = tangent_report(Q)
    for grading in (BIGRADED, STANDARD):
        assert tangent_report(Q, grading=grading).per_degree == fine.per_degree
    by_total = {}
    for (a, b), d in fine.per_bidegree.items():
        by_total[a + b] = by_total.get(a + b, 0) + d
    assert by_total == {j: d for j, d in fine.per_degree.items() if d}


def test_prime_independence():
    specs = [IdealSpec.family(2, 3), IdealSpec.family(3, 3, extra=polys(CHAIN)), IdealSpec.family(4, 4, 2)]
    for spec in specs:
        seen = set()
        for p in random_primes():
            F = FieldSpec.prime(p)
            Q = build_quotient(IdealSpec.from_json(spec.to_json(), F), F)
            rep = tangent_report(Q)
            t2 = t2_nonneg(Q) if spec.n1 + spec.n2 <= 6 else None
            seen.add((Q.dim, tuple(sorted(rep.per_degree.items())),
                      None if t2 is None else tuple(sorted(t2.per_degree.items()))))
        assert len(seen) == 1


@pytest.mark.parametrize("spec", [IdealSpec.family(2, 2), IdealSpec.family(2, 3), IdealSpec.family(3, 3),
                                  IdealSpec.family(3, 3, extra=polys(CHAIN))], ids=lambda s: s.describe())
def test_rationals_match_default_prime(spec):
    Qq = build_quotient(IdealSpec.from_json(spec.to_json(), QQ), QQ)
    Qp = build_quotient(spec)
    assert tangent_report(Qq).per_degree == tangent_report(Qp).per_degree
    assert t2_nonneg(Qq).per_degree == t2_nonneg(Qp).per_degree


def test_thread_count_does_not_change_results(monkeypatch):
    Q = family(3, 4)
    one = tangent_report(Q, threads=1).to_json()
    monkeypatch.setenv("EC_THREADS", "4")
    assert tangent_report(Q).to_json() == one
    assert t2_nonneg(Q, threads=3).to_json() == t2_nonneg(Q, threads=1).to_json()


def test_trivial_rank():
    assert trivial_tangent_rank(family(3, 5)) == 4
    assert trivial_tangent_rank(raw(CI)) == 4


# ---------------------------------------------------------------- T^2


@pytest.mark.parametrize("n1, n2", [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)])
def test_t2_vanishes_for_small_families(n1, n2):
    rep = t2_nonneg(family(n1, n2))
    assert rep.vanishes_nonneg and rep.conclusive
    assert sorted(rep.per_degree) == list(range(0, rep.cutoff_degree + 1))


def test_t2_chain():
    got = [t2_nonneg(build_quotient(IdealSpec.family(3, 3, extra=polys(CHAIN[:i])))).vanishes_nonneg
           for i in range(4)]
    assert got[0] and got[3]


def test_t2_variant_nonzero():
    rep = t2_nonneg(family(4, 4, 2))
    assert not rep.vanishes_nonneg and rep.conclusive and not rep.warnings
    assert rep.per_degree[0] == 16


def test_t2_cutoff_inconclusive():
    rep = t2_nonneg(family(2, 3), cutoff=1)
    assert not rep.conclusive and rep.warnings
    assert rep.to_json()["conclusive"] is False


def test_t2_scope_warning():
    rep = t2_nonneg(family(2, 8))
    assert any("scope" in w for w in rep.warnings)


# ---------------------------------------------------------------- oracle cross-checks


def test_family_matches_oracle():
    for n1, n2 in [(2, 2), (2, 3), (3, 3)]:
        Q = family(n1, n2)
        want = oracle.oracle_hom_dims(Q.generators)
        rep = tangent_report(Q)
        assert {j: d for j, d in rep.per_degree.items() if d} == {j: d for j, d in want.items() if d}
    for steps in range(4):
        Q = build_quotient(IdealSpec.family(3, 3, extra=polys(CHAIN[:steps])))
        assert sum(oracle.oracle_hom_dims(Q.generators).values()) == tangent_report(Q).total
        t2 = oracle.oracle_t2_dims(Q.generators)
        assert {j: d for j, d in t2.items() if d} == {j: d for j, d in t2_nonneg(Q).per_degree.items() if d}


mono_strategy = st.tuples(*[st.integers(0, 3)] * 4).filter(lambda m: 2 <= sum(m) <= 4)


@st.composite
def small_ideals(draw):
    powers = [draw(st.integers(2, 3)) for _ in range(4)]
    gens = {}
    for v, e in enumerate(powers):
        m = [0, 0, 0, 0]
        m[v] = e
        gens[tuple(m)] = Polynomial.monomial(tuple(m), P31)
    for m in draw(st.lists(mono_strategy, max_size=4)):
        gens[m] = Polynomial.monomial(m, P31)
    out = list(gens.values())
    if draw(st.booleans()):
        out.append(Polynomial({(1, 0, 1, 0): 1, (0, 1, 0, 1): -1}, P31))
    return out


@settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(small_ideals())
def test_random_ideals_match_oracle(gens):
    Q = build_quotient(IdealSpec.from_generators(gens))
    assert Q.dim <= 81
    rep = tangent_report(Q)
    want = oracle.oracle_hom_dims(gens)
    assert {j: d for j, d in rep.per_degree.items() if d} == {j: d for j, d in want.items() if d}
    t2 = oracle.oracle_t2_dims(gens)
    assert {j: d for j, d in t2_nonneg(Q).per_degree.items() if d} == {j: d for j, d in t2.items() if d}
