"""Numerical periods: flat-section evaluation and cycle integration.

The integrand along a cycle is (dual flat section) * (rational 1-form).
The section is exp(f(z) + sum_j s_j log(z - a_j)) with f rational and the
log branches threaded along the path: every piece is cut into chunks short
enough that no arg(z - a_j) moves by pi/2 within a chunk, so principal-value
continuation from the chunk base is unambiguous.  Bounded chunks use
adaptive Gauss-Kronrod 7-15 with a tanh-sinh fallback near singular
endpoints; decay rays use dyadic chunks with an explicit exponential tail
bound once the integrand falls below the truncation threshold.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .connection import Connection, INFINITY, Point, global_antiderivative, singular_profile
from .cycles import (
    Arc,
    Cycle,
    DecayRay,
    Line,
    _piece_clearance,
    _seg_point_dist,
)
from .derham import CohomologyBasis
from .errors import InputError, SingularApproach
from .exact import RationalFunction
from .families import bessel_parameter

EXP_CAP = 700.0
TRUNCATE_REL = 1e-16
MAX_RAY_CHUNKS = 64
MAX_SPLIT_DEPTH = 60

# Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK QK15 constants)
_XGK = (
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
)
_WGK = (
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
)
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469)


# ---------------------------------------------------------------------------
# branch state and section evaluation


@dataclass
class BranchState:
    """Base point and the chosen arg(z - a_j) for each finite singular point."""

    z: complex
    args: dict

    def copy(self) -> "BranchState":
        return BranchState(self.z, dict(self.args))


class _SectionContext:
    """Precomputed data for evaluating the (dual) flat section."""

    def __init__(self, c: Connection, dual: bool = True):
        self.connection = c
        anti = global_antiderivative(c)
        self.f = anti.f_global
        self.sign = 1.0 if dual else -1.0
        self.log_terms = [
            (p, complex(p), complex(s)) for p, s in anti.log_terms
        ]
        self.tracked = {
            sp.location: complex(sp.location)
            for sp in singular_profile(c)
            if sp.location is not INFINITY
        }

    def section(self, z: complex, args: dict) -> complex:
        w = complex(self.f.eval_complex(z))
        for p, a, s in self.log_terms:
            w += s * complex(math.log(abs(z - a)), args[p])
        w *= self.sign
        if w.real > EXP_CAP:
            raise SingularApproach(
                "flat section overflow: the path crosses a growth region"
            )
        return cmath.exp(w)


def flat_section_eval(
    c: Connection, z: complex, args: Optional[dict] = None, dual: bool = True
) -> complex:
    """Evaluate the flat section at z with given (or principal) log branches."""
    ctx = _SectionContext(c, dual)
    if args is None:
        args = {p: cmath.phase(z - a) for p, a, _ in ctx.log_terms}
    return ctx.section(z, args)


# ---------------------------------------------------------------------------
# chunked integration along a parametrized path


def _gk15(f, a: float, b: float):
    """(kronrod, |kronrod - gauss|) of f over [a, b]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fk = 0j
    fg = 0j
    for i, x in enumerate(_XGK):
        w = _WGK[i]
        if x == 0.0:
            v = f(mid)
            fk += w * v
            fg += _WG[3] * v
        else:
            v1 = f(mid - half * x)
            v2 = f(mid + half * x)
            fk += w * (v1 + v2)
            if i % 2 == 1:
                fg += _WG[i // 2] * (v1 + v2)
    return fk * half, abs(fk - fg) * abs(half)


def _adaptive_gk(f, a: float, b: float, abs_tol: float, max_depth: int = 13):
    """Recursive bisection Gauss-Kronrod; returns (value, err, converged)."""
    val, err = _gk15(f, a, b)
    if err <= abs_tol or b - a <= 1e-15 * max(abs(a), abs(b), 1.0):
        return val, err, True
    if max_depth == 0:
        return val, err, False
    mid = 0.5 * (a + b)
    v1, e1, c1 = _adaptive_gk(f, a, mid, 0.5 * abs_tol, max_depth - 1)
    v2, e2, c2 = _adaptive_gk(f, mid, b, 0.5 * abs_tol, max_depth - 1)
    return v1 + v2, e1 + e2, c1 and c2


def _tanh_sinh(f, a: float, b: float, levels: int = 9):
    """Tanh-sinh quadrature of f over (a, b); handles endpoint singularities."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t_max = 5.0

    def term(t: float):
        s = 0.5 * math.pi * math.sinh(t)
        if abs(s) > 300.0:
            return None
        x = mid + half * math.tanh(s)
        if not (a < x < b):
            return None
        ch = math.cosh(s)
        w = half * 0.5 * math.pi * math.cosh(t) / (ch * ch)
        return w * f(x)

    h = 1.0
    total = 0j
    k = 0
    while k * h <= t_max:
        for t in ((k * h,) if k == 0 else (k * h, -k * h)):
            v = term(t)
            if v is not None:
                total += v
        k += 1
    value = total * h
    prev = value
    for _ in range(1, levels):
        h *= 0.5
        extra = 0j
        k = 1
        while k * h <= t_max:
            for t in (k * h, -k * h):
                v = term(t)
                if v is not None:
                    extra += v
            k += 2
        value = 0.5 * value + extra * h
        if abs(value - prev) <= 1e-14 * max(1.0, abs(value)):
            return value, abs(value - prev), True
        prev = value
    return value, abs(value - prev), False


def _chunk_edges(param, tracked: dict, t0: float, t1: float, depth: int = 0):
    """Split [t0, t1] so each chunk's chord is under half its clearance."""
    z0, z1 = param(t0), param(t1)
    if depth > MAX_SPLIT_DEPTH:
        raise SingularApproach("chunking did not separate from a singular point")
    for a in tracked.values():
        d = _seg_point_dist(z0, z1, a)
        if d <= 0.0 or abs(z1 - z0) > 0.5 * d:
            tm = 0.5 * (t0 + t1)
            yield from _chunk_edges(param, tracked, t0, tm, depth + 1)
            yield from _chunk_edges(param, tracked, tm, t1, depth + 1)
            return
    yield (t0, t1)


@dataclass
class _Accum:
    value: complex = 0j
    abs_error: float = 0.0
    tail_bound: float = 0.0
    l1: float = 0.0
    segments: int = 0
    converged: bool = True


def _integrate_param(
    ctx: _SectionContext,
    form: RationalFunction,
    param,
    dparam,
    state: BranchState,
    t0: float,
    t1: float,
    acc: _Accum,
    rel_tol: float,
    arc_center: Optional[complex] = None,
    arc_sweep: float = 0.0,
) -> None:
    """Integrate F(z(t)) z'(t) dt over [t0, t1], threading state in place."""
    tracked = ctx.tracked
    own = None
    if arc_center is not None:
        for p, a in tracked.items():
            if abs(a - arc_center) < 1e-12:
                own = p
        if own is not None:
            # around its own center the arg advances exactly with the sweep
            stepped = {p: a for p, a in tracked.items() if p != own}
        else:
            stepped = tracked
    else:
        stepped = tracked

    # cap arc chunks at half a radian of sweep so chord bounds hold inside
    seeds = [(t0, t1)]
    if arc_center is not None and abs(arc_sweep) > 0.5:
        n = int(math.ceil(abs(arc_sweep) / 0.5))
        edges = [t0 + (t1 - t0) * i / n for i in range(n + 1)]
        seeds = list(zip(edges[:-1], edges[1:]))

    for s0, s1 in seeds:
        for u0, u1 in _chunk_edges(param, stepped, s0, s1):
            z_base = param(u0)
            base_args = dict(state.args)

            def integrand(t):
                z = param(t)
                args = {
                    p: base_args[p] + cmath.phase((z - a) / (z_base - a))
                    for p, a in stepped.items()
                }
                if own is not None:
                    args[own] = base_args[own] + arc_sweep * (t - u0) / (t1 - t0)
                return ctx.section(z, args) * complex(form.eval_complex(z)) * dparam(t)

            tol = rel_tol * max(acc.l1, abs(acc.value), 1.0)
            val, err, ok = _adaptive_gk(integrand, u0, u1, tol)
            if not ok:
                val2, err2, ok2 = _tanh_sinh(integrand, u0, u1)
                if err2 < err:
                    val, err, ok = val2, err2, ok2
            acc.value += val
            acc.abs_error += err
            acc.l1 += abs(val)
            acc.segments += 1
            acc.converged = acc.converged and ok
            # thread the state across the chunk
            z_end = param(u1)
            for p, a in stepped.items():
                state.args[p] += cmath.phase((z_end - a) / (z_base - a))
            if own is not None:
                state.args[own] += arc_sweep * (u1 - u0) / (t1 - t0)
            state.z = z_end


def _integrate_line(ctx, form, line: Line, state, acc, rel_tol):
    d = line.end - line.start
    _integrate_param(
        ctx, form,
        lambda t: line.start + t * d,
        lambda t: d,
        state, 0.0, 1.0, acc, rel_tol,
    )


def _integrate_arc(ctx, form, arc: Arc, state, acc, rel_tol):
    sweep = arc.theta1 - arc.theta0
    _integrate_param(
        ctx, form,
        lambda t: arc.center + cmath.rect(arc.radius, arc.theta0 + t * sweep),
        lambda t: 1j * sweep * cmath.rect(arc.radius, arc.theta0 + t * sweep),
        state, 0.0, 1.0, acc, rel_tol,
        arc_center=arc.center, arc_sweep=sweep,
    )


def _ray_decay_rate(ctx: _SectionContext, ray: DecayRay) -> tuple[float, int]:
    """(gamma, k): the section decays like exp(-gamma r^-k) at a finite point
    (exp(-gamma R^k) in |z| = R at infinity) along the ray direction."""
    for sp in singular_profile(ctx.connection):
        if sp.location == ray.point:
            a, k = sp.leading_term()
            gamma = -(complex(a) * cmath.rect(1.0, -k * ray.direction)).real
            # directions on a Stokes line give gamma ~ 1e-16*|a| from rounding,
            # far below the ~1e-6*|a| floor a margin-respecting anchor has
            if gamma <= 1e-11 * abs(complex(a)):
                raise SingularApproach(
                    "decay ray direction does not decay; invalid cycle"
                )
            return gamma, k
    raise InputError("ray does not sit at a singular point")


def _integrate_ray(ctx, form, ray: DecayRay, state, acc, rel_tol):
    """Integral over the ray in its traversal direction, starting or ending
    at the anchor where `state` currently sits."""
    gamma, k = _ray_decay_rate(ctx, ray)
    at_inf = ray.point is INFINITY
    if at_inf:
        z_dir = cmath.rect(1.0, -ray.direction)
        r0 = 1.0 / ray.anchor_radius
    else:
        z_dir = cmath.rect(1.0, ray.direction)
        r0 = ray.anchor_radius
        p = complex(ray.point)

    def z_of(r: float) -> complex:
        return r * z_dir if at_inf else p + r * z_dir

    # S = integral from the anchor toward the decaying end, in r-space
    sub = _Accum()
    sub.l1 = acc.l1
    r_hi = r0
    stop = False
    for _ in range(MAX_RAY_CHUNKS):
        r_next = r_hi * 2.0 if at_inf else r_hi * 0.5
        seg = Line(z_of(r_hi), z_of(r_next))
        _integrate_line(ctx, form, seg, state, sub, rel_tol)
        r_hi = r_next
        f_edge = abs(
            ctx.section(z_of(r_hi), state.args)
            * complex(form.eval_complex(z_of(r_hi)))
        )
        scale = max(sub.l1, abs(acc.value), 1.0)
        if f_edge * r_hi * 4.0 < TRUNCATE_REL * scale:
            stop = True
            break
    if not stop:
        sub.converged = False
    r_star = r_hi
    f_star = abs(
        ctx.section(z_of(r_star), state.args)
        * complex(form.eval_complex(z_of(r_star)))
    )
    if at_inf:
        tail = 2.0 * f_star / (gamma * k * r_star ** (k - 1))
    else:
        tail = 2.0 * f_star * r_star ** (k + 1) / (gamma * k)

    # traversal sign: sub.value is anchor -> decaying end
    sign = 1.0 if ray.sense == "inward" else -1.0
    acc.value += sign * sub.value
    acc.abs_error += sub.abs_error
    acc.tail_bound += tail
    acc.l1 = max(acc.l1, sub.l1)
    acc.segments += sub.segments
    acc.converged = acc.converged and sub.converged


# ---------------------------------------------------------------------------
# public entry points


@dataclass(frozen=True)
class PeriodValue:
    value: complex
    abs_error: float
    tail_bound: float
    segments_used: int
    scale: float
    converged: bool

    def total_error(self) -> float:
        return self.abs_error + self.tail_bound


def integrate_cycle(
    c: Connection,
    cy: Cycle,
    form: RationalFunction,
    rel_tol: float = 1e-12,
    delta: float = 1e-4,
) -> PeriodValue:
    """Period of (dual section) * form over the cycle.

    The branch state starts from the cycle's declared base args; pieces are
    integrated in traversal order.  A piece passing within delta of a
    singular point raises SingularApproach.  Failure to meet the tolerance
    is reported through converged=False, not an exception.
    """
    ctx = _SectionContext(c, dual=True)
    for i, piece in enumerate(cy.pieces):
        for sp in singular_profile(c):
            if sp.location is INFINITY:
                continue
            if isinstance(piece, DecayRay) and piece.point == sp.location:
                continue
            d = _piece_clearance(piece, sp.location, complex(sp.location))
            if d < delta:
                raise SingularApproach(
                    f"piece {i} passes within {d:.2e} of a singular point"
                )

    acc = _Accum()
    state = BranchState(cy.base_point(), cy.args_dict())

    first = cy.pieces[0]
    if isinstance(first, DecayRay):
        _integrate_ray(ctx, form, first, state, acc, rel_tol)
        # the ray threading walked the state to the decaying end and back is
        # not meaningful; reset to the anchor branch for the interior
        state = BranchState(cy.base_point(), cy.args_dict())
        rest = cy.pieces[1:]
    else:
        rest = cy.pieces

    for piece in rest:
        if isinstance(piece, Line):
            _integrate_line(ctx, form, piece, state, acc, rel_tol)
        elif isinstance(piece, Arc):
            _integrate_arc(ctx, form, piece, state, acc, rel_tol)
        else:
            _integrate_ray(ctx, form, piece, state, acc, rel_tol)

    value = acc.value * cy.orientation
    return PeriodValue(
        value=value,
        abs_error=acc.abs_error,
        tail_bound=acc.tail_bound,
        segments_used=acc.segments,
        scale=max(acc.l1, abs(value)),
        converged=acc.converged,
    )


@dataclass(frozen=True)
class PeriodMatrix:
    entries: tuple[tuple[PeriodValue, ...], ...]
    rank: int
    determinant: Optional[complex]
    scale: float
    threshold: float

    def values(self) -> np.ndarray:
        return np.array(
            [[e.value for e in row] for row in self.entries], dtype=complex
        )


def period_matrix(
    c: Connection,
    cycles: list[Cycle],
    basis: CohomologyBasis,
    rel_tol: float = 1e-12,
    rank_tol: float = 1e-6,
) -> PeriodMatrix:
    """All pairings cycle x basis form, with numerical rank and determinant.

    Rank is counted from the column-pivoted QR factorization of the value
    matrix at threshold rank_tol * (largest entry magnitude).
    """
    entries = tuple(
        tuple(integrate_cycle(c, cy, form, rel_tol) for form in basis.basis)
        for cy in cycles
    )
    if not entries or not basis.basis:
        return PeriodMatrix(entries, 0, None, 0.0, 0.0)
    m = np.array([[e.value for e in row] for row in entries], dtype=complex)
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    threshold = rank_tol * scale
    if scale == 0.0:
        rank = 0
    else:
        r = scipy.linalg.qr(m, mode="r", pivoting=True)[0]
        diag = np.abs(np.diag(r))
        rank = int(np.sum(diag > threshold))
    det = complex(np.linalg.det(m)) if m.shape[0] == m.shape[1] else None
    return PeriodMatrix(entries, rank, det, scale, threshold)


_DERIV_FACTOR_CACHE: dict = {}


def parametric_derivative_period(
    c: Connection, cy: Cycle, form: RationalFunction, order: int = 1,
    rel_tol: float = 1e-12,
) -> PeriodValue:
    """d^k/dz^k of the period, for the Bessel family with parameter z.

    Differentiating under the integral multiplies the integrand by
    ((u^2 - 1) / 2u)^k; only k <= 2 is supported.
    """
    if order < 0 or order > 2:
        raise InputError("parameter derivatives are supported for order <= 2")
    bessel_parameter(c)  # InputError when not in the family
    if order == 0:
        return integrate_cycle(c, cy, form, rel_tol)
    factor = RationalFunction.from_coeffs([-1, 0, 1], [0, 2])
    g = form
    for _ in range(order):
        g = g * factor
    return integrate_cycle(c, cy, g, rel_tol)
