from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from supergeo.scalar import Scalar
from supergeo.superpoly import SuperPolynomial, VarTable

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# z0 inverted, z1 not; three odd generators
SMALL = VarTable([("z0", True), ("z1", False)], ["zeta0", "zeta1", "zeta2"])

ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance(request):
    return request.config.stash[ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, elapsed, limit, title = results[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d} {verdict}  {elapsed:7.3f}s (limit {limit}s)  {title}"
        )


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw, nonzero=False):
    re = draw(small_fractions)
    im = draw(st.one_of(st.just(Fraction(0)), small_fractions))
    c = Scalar(re, im)
    if nonzero and not c:
        c = Scalar(1)
    return c


@st.composite
def polynomials(draw, ring=SMALL, max_terms=4, parity=None, laurent=True):
    """Random elements of ``ring``; negative exponents only on inverted variables."""
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        exps = []
        for _name, inv in ring.even_vars:
            lo = -2 if (inv and laurent) else 0
            exps.append(draw(st.integers(lo, 2)))
        odd = tuple(sorted(draw(st.sets(st.integers(0, ring.n_odd - 1), max_size=ring.n_odd))))
        if parity is not None and len(odd) % 2 != parity:
            continue
        terms.append(((tuple(exps), odd), draw(scalars())))
    return SuperPolynomial.from_terms(ring, terms)


def even_units(ring=SMALL):
    """``c * z0^k * (1 + nilpotent even part)``."""

    @st.composite
    def build(draw):
        c = draw(scalars(nonzero=True))
        k = draw(st.integers(-2, 2))
        nil = draw(polynomials(ring, parity=0))
        nil = SuperPolynomial(ring, {m: v for m, v in nil.terms.items() if m.odd})
        return ring.monomial({"z0": k}) * c * (ring.one() + nil)

    return build()
