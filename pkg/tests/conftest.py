import random

import pytest
from hypothesis import HealthCheck, settings

from elemcomp import FieldSpec, IdealSpec, build_quotient, parse_poly
from elemcomp.poly import is_prime

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

P31 = FieldSpec.prime()
QQ = FieldSpec.rationals()

CHAIN = ["x^2*z^2", "x^2*w^2", "y^2*z^2"]
RAW_60 = ["x^4", "x^3*y", "x^2*y^2", "x*y^3", "y^4", "z^4", "z^3*w", "z^2*w^2", "z*w^3", "w^4",
          "x*z - y*w", "x*y^2*w^3", "x^3*w^3", "y^3*z*w^2", "y^3*z^3"]


def random_primes(count=3, seed=2024):
    """Distinct primes in (2^20, 2^31), drawn reproducibly."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.randrange(2**20 + 1, 2**31)
        if is_prime(p) and p not in out:
            out.append(p)
    return out


def polys(texts, field=P31):
    return [parse_poly(t, field) for t in texts]


def chain_spec(steps, field=P31):
    return IdealSpec.family(3, 3, extra=polys(CHAIN[:steps], field))


@pytest.fixture(scope="session")
def chain_quotients():
    return [build_quotient(chain_spec(i)) for i in range(4)]


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_RESULTS
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[n])
