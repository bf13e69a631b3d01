import json
from fractions import Fraction

import pytest

from elemcomp.family import (
    EXPECTED_FIELDS,
    D_closed_formula,
    D_sum,
    F_formula,
    FamilyStats,
    TABLE1,
    binom,
    catalog_lookup,
    d_formula,
    example_catalog,
    inequality_verdicts,
    table1_triples,
)
from elemcomp.quotient import IdealSpec, build_family_quotient

from conftest import P31

PAIRS = [(a, b) for a in range(2, 21) for b in range(a, 21)]


def test_d_examples():
    assert d_formula(2, 2) == 8 and d_formula(2, 5) == 35 and d_formula(10, 10) == 1000


@pytest.mark.parametrize("bad", [(1, 3), (3, 1), (0, 0), (2.0, 2)])
def test_out_of_range_rejected(bad):
    with pytest.raises(ValueError):
        d_formula(*bad)
    with pytest.raises(ValueError):
        D_closed_formula(*bad)


def test_binomial_convention():
    assert binom(3, 2) == 3 and binom(2, 3) == 0 and binom(-1, 0) == 0 and binom(4, -1) == 0


def test_F_examples():
    assert F_formula(2, 2) + F_formula(2, 2) + d_formula(2, 2) - 1 == 25
    assert F_formula(3, 3) + F_formula(3, 3) + 27 - 1 == 70
    assert F_formula(2, 3) + F_formula(3, 2) + 15 - 1 == 44


def test_D_closed_examples():
    assert D_closed_formula(2, 4) == 69
    assert D_closed_formula(3, 4) == 104
    assert D_closed_formula(10, 10) == 1729


def test_inequality_examples():
    assert inequality_verdicts(2, 2) == (True, False)
    assert inequality_verdicts(2, 4) == (True, False)
    assert inequality_verdicts(3, 3) == (True, True)


def test_sum_form_equals_closed_form():
    for a, b in PAIRS:
        assert D_sum(a, b) == D_closed_formula(a, b) == D_closed_formula(b, a)


def test_lt_3dm1_exceptions():
    failing = {(a, b) for a, b in PAIRS if not inequality_verdicts(a, b)[1]}
    assert failing == {(2, 2), (2, 3), (2, 4)}
    assert all(inequality_verdicts(a, b)[0] for a, b in PAIRS)


def test_alternative_count_form_agrees():
    # the per-corner count written as n1(n1+n2) + C(n2,2) plus the sum terms
    for a, b in PAIRS:
        s = sum((i - 1) * binom(b - i, 1) for i in range(2, a))
        alt = s + (a - 1) * binom(b - a + 1, 2) + (a + 1) * (a + b - 1) + binom(b - 1, 2)
        assert alt == F_formula(a, b)
        assert (a + 1) * (a + b - 1) + binom(b - 1, 2) == a * (a + b) + binom(b, 2)


def test_closed_form_is_integral_over_rationals():
    for a, b in PAIRS:
        m, M = Fraction(min(a, b)), Fraction(max(a, b))
        assert (m**3 / 3 - m / 3).denominator == 1


def test_formula_matches_quotient_dimension():
    for a, b in [(2, 2), (3, 5), (6, 4), (7, 7)]:
        assert build_family_quotient(a, b).dim == d_formula(a, b)


def test_family_stats_json():
    s = FamilyStats.of(9, 15).to_json()
    assert s["lt_3dm1"] and s["D_sum"] == s["D_closed"]
    assert json.loads(json.dumps(s)) == s


def test_table1_shape():
    triples = table1_triples()
    assert len(triples) == len(set(triples)) == sum(len(v) for v in TABLE1.values())
    for spot in [(4, 4, 2), (4, 5, 3), (5, 5, 3), (6, 7, 4), (6, 7, 5), (7, 8, 6)]:
        assert spot in triples


def test_catalog_schema():
    cat = example_catalog()
    names = [s.name for s in cat]
    assert len(names) == len(set(names))
    for s in cat:
        assert set(s.expected) == set(EXPECTED_FIELDS)
        assert any(v is not None for v in s.expected.values())
        spec = IdealSpec.from_json(s.spec, P31)
        if spec.n1 is not None and spec.n3 is None and not spec.extra and s.expected["colength"] is not None:
            assert s.expected["colength"] == d_formula(spec.n1, spec.n2)
            if s.expected["tangent_total"] is not None:
                assert s.expected["tangent_total"] == D_closed_formula(spec.n1, spec.n2)


def test_catalog_named_examples():
    by_name = {s.name: s for s in example_catalog()}
    ie = by_name["iarrobino-emsalem"]
    assert (ie.expected["colength"], ie.expected["tangent_total"]) == (8, 25)
    assert by_name["eg2-prime-a"].expected["tangent_total"] == 179
    assert by_name["eg2-prime-b"].expected["tangent_total"] == 146
    assert (by_name["taxicab"].expected["colength"], by_name["taxicab"].expected["tangent_total"]) == (1000, 1729)
    chain = catalog_lookup(["eg2-chain"])
    assert [s.expected["tangent_total"] for s in chain] == [70, 77, 82, 85]


def test_catalog_lookup_unknown():
    with pytest.raises(KeyError):
        catalog_lookup(["no-such-scenario"])
