"""Independent reference values for the verification suites.

Everything here is classical numerics on floats: a Lanczos Gamma, the Bessel J
power series, and erf. None of it touches the exact algebra or the quadrature
engine, so agreement between the two sides is a real check and not a tautology.
"""

import cmath
import math

from .errors import DomainError

# Lanczos approximation, g = 7, 9 coefficients. Relative error below 1e-13
# on the right half plane, comfortably inside the 1e-12 contract.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def lanczos_gamma(s):
    """Gamma(s) for real or complex s away from the poles.

    Uses reflection for Re(s) < 1/2, so accuracy is uniform on both half
    planes. Raises DomainError within 1e-6 of a nonpositive integer.
    """
    sc = complex(s)
    near = round(sc.real)
    if near <= 0 and abs(sc - near) < 1e-6:
        raise DomainError(f"gamma pole at {near}: argument {s} too close")
    if sc.real < 0.5:
        # Gamma(s) Gamma(1-s) = pi / sin(pi s)
        val = math.pi / (cmath.sin(math.pi * sc) * lanczos_gamma(1.0 - sc))
    else:
        w = sc - 1.0
        acc = _LANCZOS_COEF[0]
        for i in range(1, len(_LANCZOS_COEF)):
            acc += _LANCZOS_COEF[i] / (w + i)
        t = w + _LANCZOS_G + 0.5
        val = math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc
    if isinstance(s, complex) and s.imag != 0.0:
        return val
    return val.real


def bessel_j(n, z):
    """J_n(z) by the power series, for integer n and |z| <= 20.

    Summed until the partial sums stagnate in double precision. Negative
    order via J_{-n} = (-1)^n J_n.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"bessel_j needs integer order, got {n!r}")
    zc = complex(z)
    if abs(zc) > 20.0:
        raise DomainError(f"bessel_j series contract limited to |z| <= 20, got |z| = {abs(zc):.3g}")
    sign = 1.0
    if n < 0:
        n = -n
        sign = -1.0 if n % 2 else 1.0
    half = zc / 2.0
    term = half**n / math.factorial(n)
    total = term
    k = 1
    while True:
        term *= -(half * half) / (k * (n + k))
        nxt = total + term
        if nxt == total:
            break
        total = nxt
        k += 1
        if k > 400:
            break
    val = sign * total
    if isinstance(z, complex) and z.imag != 0.0:
        return val
    return val.real


# 1/sqrt(pi), shared by both erf branches.
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def erf(x):
    """Error function for real x.

    |x| <= 4 uses the positive-term confluent series (no cancellation);
    beyond that the asymptotic erfc expansion truncated at its smallest term,
    which is far below double precision there.
    """
    if isinstance(x, complex):
        raise DomainError("erf oracle is real-only")
    x = float(x)
    ax = abs(x)
    if ax <= 4.0:
        # erf(x) = 2x e^{-x^2}/sqrt(pi) * sum_k (2x^2)^k / (1*3*...*(2k+1))
        t = 2.0 * x * math.exp(-x * x) * _INV_SQRT_PI
        term = 1.0
        total = 1.0
        twox2 = 2.0 * x * x
        k = 1
        while True:
            term *= twox2 / (2 * k + 1)
            nxt = total + term
            if nxt == total:
                break
            total = nxt
            k += 1
        return t * total
    # erfc(ax) = e^{-ax^2}/(ax sqrt(pi)) * (1 - 1/(2x^2) + 3/(2x^2)^2 - ...)
    inv2x2 = 1.0 / (2.0 * ax * ax)
    term = 1.0
    total = 1.0
    k = 1
    while True:
        nxt_term = term * -(2 * k - 1) * inv2x2
        if abs(nxt_term) >= abs(term):
            break
        term = nxt_term
        total += term
        k += 1
    erfc = math.exp(-ax * ax) * _INV_SQRT_PI / ax * total
    return math.copysign(1.0 - erfc, x)


def reference_oracle(name: str, *args):
    """Dispatch to a named oracle: gamma | bessel_j | erf."""
    if name == "gamma":
        return lanczos_gamma(*args)
    if name == "bessel_j":
        return bessel_j(*args)
    if name == "erf":
        return erf(*args)
    raise DomainError(f"unknown oracle {name!r}")
