import math

import pytest
from hypothesis import given, settings, strategies as st

from ipd.errors import DomainError
from ipd.oracles import bessel_j, erf, lanczos_gamma, reference_oracle


def test_gamma_against_stdlib():
    for x in (0.5, 1 / 3, 0.75, 1.0, 2.0, 7.5, 14.25, 0.01, -0.5, -2.25):
        assert lanczos_gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)


def test_gamma_sqrt_pi():
    assert lanczos_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


@given(st.floats(min_value=0.1, max_value=20.0))
@settings(max_examples=50, deadline=None)
def test_gamma_functional_equation(x):
    assert lanczos_gamma(x + 1.0) == pytest.approx(x * lanczos_gamma(x), rel=1e-11)


@given(
    st.floats(min_value=-8.0, max_value=8.0), st.floats(min_value=0.2, max_value=8.0)
)
@settings(max_examples=40, deadline=None)
def test_gamma_reflection_complex(re, im):
    s = complex(re, im)
    lhs = lanczos_gamma(s) * lanczos_gamma(1.0 - s)
    rhs = math.pi / complex(math.sin(math.pi * s.real) * math.cosh(math.pi * s.imag),
                            math.cos(math.pi * s.real) * math.sinh(math.pi * s.imag))
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_bessel_pinned_values():
    assert bessel_j(0, 1.0) == pytest.approx(0.7651976866, abs=1e-9)
    assert bessel_j(1, 1.0) == pytest.approx(0.4400505857, abs=1e-9)
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(3, 0.0) == 0.0


@given(st.integers(min_value=1, max_value=6), st.floats(min_value=0.1, max_value=15.0))
@settings(max_examples=50, deadline=None)
def test_bessel_recurrence(n, z):
    lhs = bessel_j(n - 1, z) + bessel_j(n + 1, z)
    rhs = (2.0 * n / z) * bessel_j(n, z)
    assert lhs == pytest.approx(rhs, abs=1e-9)


@given(st.integers(min_value=1, max_value=5), st.floats(min_value=0.1, max_value=15.0))
@settings(max_examples=30, deadline=None)
def test_bessel_negative_order(n, z):
    assert bessel_j(-n, z) == pytest.approx((-1.0) ** n * bessel_j(n, z), abs=1e-12)


def test_erf_against_stdlib():
    for x in (-6.0, -3.5, -0.7, 0.0, 0.3, 2.0, 3.99, 4.01, 5.5, 8.0):
        assert erf(x) == pytest.approx(math.erf(x), abs=1e-13)
    assert erf(6.0) == pytest.approx(1.0, abs=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        lanczos_gamma(0)
    with pytest.raises(DomainError):
        lanczos_gamma(-2 + 1e-8j)
    with pytest.raises(DomainError):
        bessel_j(0.5, 1.0)
    with pytest.raises(DomainError):
        bessel_j(True, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0, 21.0)
    with pytest.raises(DomainError):
        erf(1j)
    with pytest.raises(DomainError):
        reference_oracle("airy", 1.0)


def test_dispatch():
    assert reference_oracle("gamma", 0.5) == lanczos_gamma(0.5)
    assert reference_oracle("bessel_j", 2, 1.0) == bessel_j(2, 1.0)
    assert reference_oracle("erf", 1.0) == erf(1.0)
