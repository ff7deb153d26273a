"""Algebraic de Rham cohomology of a rank-1 connection on P^1.

H^1 is computed as the cokernel of nabla between two finite-dimensional
lattices of global sections: rational functions with prescribed pole bounds
on the singular divisor D, mapping to 1-forms with bounds raised by
max(pole order, 1) at every point.  With coupled bounds the index of the
lattice map is independent of the bound sizes, so stability of the kernel
and cokernel under doubling certifies that the lattice saw the whole
cohomology.  All dimension work is exact; no floating point enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .connection import (
    Connection,
    INFINITY,
    Point,
    SingularPointData,
    point_key,
    point_str,
    singular_profile,
)
from .errors import InputError, InconsistentRank, LatticeTooSmall
from .exact import (
    GaussianRational,
    ONE,
    RationalFunction,
    ZERO,
    as_scalar,
    p_pow_linear,
    partial_fractions,
)
from .linalg import SpanTracker, row_echelon

DEFAULT_SECTION_MARGIN = 2


# ---------------------------------------------------------------------------
# function lattices: rational functions with bounded poles along D


@dataclass(frozen=True)
class FunctionLattice:
    """Rational functions with pole order <= bound at each finite point of D
    and pole order <= inf_pole at infinity (negative = forced vanishing)."""

    finite_points: tuple[GaussianRational, ...]
    finite_bounds: tuple[int, ...]
    inf_pole: int

    def ambient(self) -> list[tuple]:
        """Coordinate labels: ("pp", a, k) for (z-a)^-k, ("poly", p) for z^p."""
        coords: list[tuple] = []
        for a, n in zip(self.finite_points, self.finite_bounds):
            for k in range(1, n + 1):
                coords.append(("pp", a, k))
        for p in range(0, self.inf_pole + 1):
            coords.append(("poly", p))
        return coords

    def basis_vectors(self) -> list[list[GaussianRational]]:
        coords = self.ambient()
        n = len(coords)
        if self.inf_pole >= 0:
            return [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
        # forced vanishing at infinity of order ell: kill w^1..w^(ell-1)
        # in the expansion (z-a)^-k = w^k * sum C(k-1+i, i) a^i w^i
        ell = -self.inf_pole
        rows = []
        for j in range(1, ell):
            row = []
            for kind, a, k in coords:
                if k <= j:
                    row.append(as_scalar(comb(j - 1, j - k)) * _power(a, j - k))
                else:
                    row.append(ZERO)
            rows.append(row)
        from .linalg import nullspace

        if not rows:
            return [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
        return nullspace(rows, cols=n)

    def dimension(self) -> int:
        return len(self.basis_vectors())


def _power(a: GaussianRational, e: int) -> GaussianRational:
    out = ONE
    for _ in range(e):
        out = out * a
    return out


def element_function(coord: tuple) -> RationalFunction:
    if coord[0] == "pp":
        _, a, k = coord
        return RationalFunction.from_coeffs((ONE,), p_pow_linear(a, k))
    _, p = coord
    return RationalFunction.from_coeffs([ZERO] * p + [ONE], (ONE,))


def vector_function(vec, coords) -> RationalFunction:
    total = RationalFunction.zero()
    for x, coord in zip(vec, coords):
        if x:
            total = total + element_function(coord).scale(x)
    return total


def decompose(rf: RationalFunction, coords: list[tuple]) -> list[GaussianRational]:
    """Ambient coordinates of a rational function; InputError if it escapes."""
    index = {c: i for i, c in enumerate(coords)}
    out = [ZERO] * len(coords)
    pf = partial_fractions(rf)
    for a, k, coeff in pf.pole_terms:
        key = ("pp", a, k)
        if key not in index:
            raise InputError(
                f"pole of order {k} at {point_str(a)} exceeds the lattice bounds"
            )
        out[index[key]] = coeff
    for p, coeff in enumerate(pf.poly):
        if not coeff:
            continue
        key = ("poly", p)
        if key not in index:
            raise InputError(f"polynomial degree {p} exceeds the lattice bounds")
        out[index[key]] = coeff
    return out


# ---------------------------------------------------------------------------
# bounds


def _flat_section_orders(profile: Sequence[SingularPointData]) -> dict[Point, int]:
    """Pole orders of the flat section prod (z-a)^-s when it is meromorphic."""
    orders: dict[Point, int] = {}
    total = 0
    for sp in profile:
        if sp.location is INFINITY:
            continue
        s = sp.residue
        if s.is_integer():
            total += int(s.re)
            if s.re > 0:
                orders[sp.location] = int(s.re)
    # at infinity the flat section behaves like z^-total
    if -total > 0:
        orders[INFINITY] = -total
    return orders


def default_section_bounds(
    profile: Sequence[SingularPointData], h0: int
) -> dict[Point, int]:
    bounds = {
        sp.location: sp.pole_order + DEFAULT_SECTION_MARGIN for sp in profile
    }
    if h0 == 1:
        for p, order in _flat_section_orders(profile).items():
            if p in bounds:
                bounds[p] = max(bounds[p], order)
    return bounds


def _lattice_pair(profile, bounds: dict[Point, int]):
    finites = [sp for sp in profile if sp.location is not INFINITY]
    pts = tuple(sp.location for sp in finites)
    sec_fin = tuple(bounds[sp.location] for sp in finites)
    form_fin = tuple(
        bounds[sp.location] + max(sp.pole_order, 1) for sp in finites
    )
    inf_sp = next((sp for sp in profile if sp.location is INFINITY), None)
    if inf_sp is not None:
        b_inf = bounds[INFINITY]
        sec_inf = b_inf
        form_inf = b_inf + max(inf_sp.pole_order, 1) - 2
    else:
        sec_inf = 0
        form_inf = -2
    return (
        FunctionLattice(pts, sec_fin, sec_inf),
        FunctionLattice(pts, form_fin, form_inf),
    )


# ---------------------------------------------------------------------------
# the lattice map and its cokernel


def _candidate_key(vec, coords):
    """Pole-complexity sort key: (total pole order, worst single pole)."""
    per_point: dict = {}
    poly_deg = -1
    for x, coord in zip(vec, coords):
        if not x:
            continue
        if coord[0] == "pp":
            _, a, k = coord
            key = ("pp", a)
            per_point[key] = max(per_point.get(key, 0), k)
        else:
            poly_deg = max(poly_deg, coord[1])
    total = sum(per_point.values())
    worst = max(per_point.values(), default=0)
    inf_order = 0
    if poly_deg >= 0:
        inf_order = poly_deg + 2
    elif per_point:
        # pure principal parts: the form pole order at infinity is 2-k for
        # the lowest k present, never more than 1
        min_k = min(
            coord[2]
            for x, coord in zip(vec, coords)
            if x and coord[0] == "pp"
        )
        inf_order = max(0, 2 - min_k)
    total += inf_order
    worst = max(worst, inf_order)
    return (total, worst)


class _LatticeComputation:
    def __init__(self, c: Connection, profile, bounds: dict[Point, int]):
        self.bounds = bounds
        self.sec, self.form = _lattice_pair(profile, bounds)
        self.sec_coords = self.sec.ambient()
        self.form_coords = self.form.ambient()
        self.sec_basis = self.sec.basis_vectors()
        self.form_basis = self.form.basis_vectors()
        f_alpha = c.alpha
        self.image_cols: list[list[GaussianRational]] = []
        elem_images: dict[int, list[GaussianRational]] = {}
        for i, coord in enumerate(self.sec_coords):
            g = element_function(coord)
            image = _nabla_image(g, coord, f_alpha)
            elem_images[i] = decompose(image, self.form_coords)
        for v in self.sec_basis:
            col = [ZERO] * len(self.form_coords)
            for i, x in enumerate(v):
                if x:
                    img = elem_images[i]
                    col = [cx + x * ix for cx, ix in zip(col, img)]
            self.image_cols.append(col)
        self.tracker = SpanTracker(len(self.form_coords))
        self.image_rank = 0
        for col in self.image_cols:
            if self.tracker.add(col):
                self.image_rank += 1
        self.ker_dim = len(self.sec_basis) - self.image_rank
        self.coker_dim = len(self.form_basis) - self.image_rank

    def select_basis(self) -> list[list[GaussianRational]]:
        ranked = sorted(
            range(len(self.form_basis)),
            key=lambda i: (
                _candidate_key(self.form_basis[i], self.form_coords),
                i,
            ),
        )
        selected = []
        for i in ranked:
            if len(selected) == self.coker_dim:
                break
            if self.tracker.add(self.form_basis[i]):
                selected.append(self.form_basis[i])
        if len(selected) != self.coker_dim:
            raise LatticeTooSmall("could not complete a cokernel basis")
        return selected


def _nabla_image(g: RationalFunction, coord: tuple, f_alpha: RationalFunction):
    """nabla(g) = (g' + g * f_alpha) dz, returned as the coefficient function."""
    if coord[0] == "pp":
        _, a, k = coord
        deriv = RationalFunction.from_coeffs(
            (as_scalar(-k),), p_pow_linear(a, k + 1)
        )
    else:
        _, p = coord
        if p == 0:
            deriv = RationalFunction.zero()
        else:
            deriv = RationalFunction.from_coeffs(
                [ZERO] * (p - 1) + [as_scalar(p)], (ONE,)
            )
    return deriv + g * f_alpha


# ---------------------------------------------------------------------------
# public operations


def h0_dimension(c: Connection) -> int:
    """1 iff every pole order is <= 1 and every residue is an integer."""
    for sp in singular_profile(c):
        if sp.pole_order >= 2 or not sp.residue.is_integer():
            return 0
    return 1


@dataclass(frozen=True)
class CohomologyBasis:
    h0_dim: int
    h1_dim: int
    basis: tuple[RationalFunction, ...]
    section_bounds: tuple[tuple[Point, int], ...]

    def bounds_dict(self) -> dict[Point, int]:
        return dict(self.section_bounds)


def _scaled_bounds(bounds: dict[Point, int], factor: int) -> dict[Point, int]:
    return {p: b * factor for p, b in bounds.items()}


def h1_basis(
    c: Connection, extra_bounds: dict[Point, int] | None = None
) -> CohomologyBasis:
    """Echelon basis of H^1_dR, preferring representatives with low pole order.

    Runs the lattice computation at the default bounds and at doubled bounds;
    if the dimensions disagree it doubles once more, and raises
    LatticeTooSmall if they still disagree.
    """
    profile = singular_profile(c)
    h0 = h0_dimension(c)
    bounds = default_section_bounds(profile, h0)
    if extra_bounds:
        for p, b in extra_bounds.items():
            if p not in bounds:
                raise InputError(f"{point_str(p)} is not on the singular divisor")
            bounds[p] = max(bounds[p], b)

    comp = _LatticeComputation(c, profile, bounds)
    comp2 = _LatticeComputation(c, profile, _scaled_bounds(bounds, 2))
    if (comp.ker_dim, comp.coker_dim) != (comp2.ker_dim, comp2.coker_dim):
        comp4 = _LatticeComputation(c, profile, _scaled_bounds(bounds, 4))
        if (comp2.ker_dim, comp2.coker_dim) != (comp4.ker_dim, comp4.coker_dim):
            raise LatticeTooSmall(
                f"cokernel dimension unstable under enlargement for {c.label}"
            )
        comp = comp2

    if comp.ker_dim != h0:
        raise LatticeTooSmall(
            f"lattice kernel {comp.ker_dim} disagrees with h0 = {h0} for {c.label}"
        )
    if all(sp.pole_order >= 1 for sp in profile):
        chi = 2 - sum(sp.pole_order for sp in profile)
        if comp.coker_dim - comp.ker_dim != -chi:
            raise LatticeTooSmall(
                f"cokernel violates the Euler characteristic for {c.label}"
            )

    selected = comp.select_basis()
    forms = tuple(vector_function(v, comp.form_coords) for v in selected)
    return CohomologyBasis(
        h0_dim=h0,
        h1_dim=comp.coker_dim,
        basis=forms,
        section_bounds=tuple(
            sorted(comp.bounds.items(), key=lambda kv: point_key(kv[0]))
        ),
    )


def _form_orders(c: Connection, form: RationalFunction) -> dict[Point, int]:
    """Pole orders of form*dz at the points of D; InputError off-divisor."""
    profile = singular_profile(c)
    locations = {sp.location for sp in profile}
    pf = partial_fractions(form)
    orders: dict[Point, int] = {}
    for a, k, coeff in pf.pole_terms:
        if a not in locations:
            raise InputError(
                f"form has a pole at {point_str(a)} off the singular divisor"
            )
        orders[a] = max(orders.get(a, 0), k)
    inf_order = form.pole_order_at_infinity() + 2
    if inf_order > 0:
        if INFINITY not in locations:
            raise InputError("form has a pole at infinity off the singular divisor")
        orders[INFINITY] = inf_order
    return orders


def reduce_form(
    c: Connection, basis: CohomologyBasis, form: RationalFunction
) -> list[GaussianRational]:
    """Coordinates of a 1-form's class in the given cohomology basis.

    The lattice is enlarged as needed to contain the form; the basis classes
    stay those of `basis`, so coordinates are stable across enlargements.
    """
    profile = singular_profile(c)
    bounds = basis.bounds_dict()
    for p, order in _form_orders(c, form).items():
        m = next(sp.pole_order for sp in profile if sp.location == p)
        need = order - max(m, 1)
        if need > bounds[p]:
            bounds[p] = need
    comp = _LatticeComputation(c, profile, bounds)
    target = decompose(form, comp.form_coords)
    basis_cols = [decompose(b, comp.form_coords) for b in basis.basis]
    columns = comp.image_cols + basis_cols
    rows = [
        [col[r] for col in columns] for r in range(len(comp.form_coords))
    ]
    from .linalg import solve

    x = solve(rows, target)
    if x is None:
        raise LatticeTooSmall("form did not reduce against the cohomology basis")
    return x[len(comp.image_cols):]


@dataclass(frozen=True)
class EulerData:
    chi_dr: int
    chi_top: int
    non_reduced: bool


def euler_characteristics(
    rank: int, genus: int, pole_data: Sequence[Sequence[tuple[int, int]]], n: int
) -> EulerData:
    """Algebraic and topological Euler characteristics from pole data.

    pole_data lists, per singular point, the blocks (pole order m, dim M).
    A block with m = 0 is admitted but flagged, since the divisor is then not
    effective at that point and the chi_dr formula does not apply.
    """
    if n != len(pole_data):
        raise InputError(f"n = {n} but pole data lists {len(pole_data)} points")
    non_reduced = False
    weighted = 0
    for blocks in pole_data:
        total = 0
        for m, dim in blocks:
            if m < 0 or dim < 1:
                raise InputError("pole orders must be >= 0 and block dims >= 1")
            if m == 0:
                non_reduced = True
            total += dim
            weighted += m * dim
        if total != rank:
            raise InconsistentRank(
                f"block dimensions sum to {total}, expected rank {rank}"
            )
    chi_dr = -rank * (2 * genus - 2) - weighted
    chi_top = -rank * (2 * genus - 2 + n)
    return EulerData(chi_dr=chi_dr, chi_top=chi_top, non_reduced=non_reduced)


def section_lattice_functions(
    c: Connection, basis: CohomologyBasis
) -> list[RationalFunction]:
    """The section-lattice basis underlying a cohomology computation."""
    profile = singular_profile(c)
    sec, _ = _lattice_pair(profile, basis.bounds_dict())
    coords = sec.ambient()
    return [vector_function(v, coords) for v in sec.basis_vectors()]


def nabla_applied(c: Connection, g: RationalFunction) -> RationalFunction:
    """Coefficient of nabla(g) = (g' + g f_alpha) dz."""
    from .exact import differentiate

    return differentiate(g) + g * c.alpha
