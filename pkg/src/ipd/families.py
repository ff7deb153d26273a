"""Classical connection families used by the verification suites."""

from __future__ import annotations

from .connection import Connection, canonicalize
from .errors import InputError
from .exact import GaussianRational, RationalFunction, as_scalar

TWO = as_scalar(2)


def gaussian_connection() -> Connection:
    """alpha = -2t dt; the dual flat section is exp(-t^2)."""
    alpha = RationalFunction.from_coeffs([0, -2], [1])
    return canonicalize(alpha, label="gaussian")


def gamma_connection(s) -> Connection:
    """alpha = -dt + s dt/t; the dual flat section is exp(-t) t^s."""
    s = as_scalar(s)
    alpha = RationalFunction.from_coeffs([s, -1], [0, 1])
    return canonicalize(alpha, label=f"gamma(s={s})")


def bessel_connection(z, nu=0) -> Connection:
    """alpha = (z/2)(1 + u^-2) du - nu du/u in the variable u.

    The dual flat section is u^-nu exp((z/2)(u - 1/u)); with nu = 0,
    periods of du/u^(n+1) over loops around u = 0 give 2*pi*i*J_n(z).
    """
    z = as_scalar(z)
    nu = as_scalar(nu)
    half_z = z / TWO
    alpha = RationalFunction.from_coeffs([half_z, -nu, half_z], [0, 0, 1])
    return canonicalize(alpha, label=f"bessel(z={z})" if not nu else f"bessel(z={z},nu={nu})")


def bessel_parameter(c: Connection) -> GaussianRational:
    """Recover z from a Bessel-family connection; InputError if not that shape."""
    num, den = c.alpha.num, c.alpha.den
    if len(den) == 3 and not den[0] and not den[1] and len(num) == 3 and num[0] == num[2]:
        z = num[2] * TWO
        if z:
            return z
    raise InputError(f"{c.label} is not a Bessel-family connection")
