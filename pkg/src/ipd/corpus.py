"""Randomized rank-1 connections for exactness and invariant testing.

Generation is deterministic given the seed.  Pole locations come from a
small fixed set so that distances stay O(1); coefficient numerators and
denominators stay small so the exact lattice computations stay fast and the
doubling stability check has room above any integer residue that occurs.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .connection import Connection, canonicalize
from .derham import CohomologyBasis, section_lattice_functions
from .exact import GaussianRational, RationalFunction, ZERO, as_scalar, p_pow_linear

POLE_SITES = ("0", "1", "-1", "i", "-i", "2")


def _random_fraction(rng: random.Random, span: int = 6, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _random_scalar(rng: random.Random, allow_imag: bool = True) -> GaussianRational:
    re = _random_fraction(rng)
    im = Fraction(0)
    if allow_imag and rng.random() < 0.25:
        im = _random_fraction(rng, span=3, den=3)
    return GaussianRational(re, im)


def random_connection(rng: random.Random, label: str) -> Connection:
    """One random connection: 1-3 finite poles of order <= 4, small coefficients."""
    n_poles = rng.choice((1, 2, 2, 3))
    sites = rng.sample(POLE_SITES, n_poles)
    alpha = RationalFunction.zero()
    for site in sites:
        a = as_scalar(site)
        order = rng.choice((1, 1, 1, 2, 2, 3, 4))
        for k in range(1, order + 1):
            if k == order:
                c = _random_scalar(rng)
                while not c:
                    c = _random_scalar(rng)
            else:
                if rng.random() < 0.5:
                    continue
                c = _random_scalar(rng)
            if c:
                term = RationalFunction.from_coeffs((c,), p_pow_linear(a, k))
                alpha = alpha + term
    if rng.random() < 0.3:
        deg = rng.randint(0, 2)
        coeffs = [_random_scalar(rng, allow_imag=False) for _ in range(deg + 1)]
        if any(coeffs):
            alpha = alpha + RationalFunction.from_coeffs(coeffs, (as_scalar(1),))
    if alpha.is_zero():
        alpha = RationalFunction.from_coeffs((as_scalar(1),), p_pow_linear(ZERO, 1))
    return canonicalize(alpha, label)


def connection_corpus(count: int, seed: int = 0) -> list[Connection]:
    rng = random.Random(seed)
    return [random_connection(rng, f"corpus[{i}]") for i in range(count)]


def random_lattice_section(
    rng: random.Random, c: Connection, basis: CohomologyBasis
) -> RationalFunction:
    """Random integer combination of the section lattice underlying `basis`."""
    sections = section_lattice_functions(c, basis)
    g = RationalFunction.zero()
    while g.is_zero():
        for s in sections:
            w = rng.randint(-3, 3)
            if w:
                g = g + s.scale(as_scalar(w))
    return g
