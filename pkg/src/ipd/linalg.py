"""Dense exact linear algebra over the Gaussian rationals.

Matrices are lists of rows of GaussianRational.  Sizes here stay in the tens,
so plain fraction Gauss elimination with first-nonzero pivoting is fast enough
and completely deterministic.
"""

from __future__ import annotations

from .exact import GaussianRational, ONE, ZERO

Matrix = list[list[GaussianRational]]


def mat_copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def row_echelon(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column list."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(row_echelon(m)[1])


def nullspace(m: Matrix, cols: int | None = None) -> list[list[GaussianRational]]:
    """Basis of the right nullspace, one vector per free column, in column order."""
    if not m:
        n = cols or 0
        return [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    n = len(m[0])
    ech, pivots = row_echelon(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -ech[r][fc]
        basis.append(v)
    return basis


def solve(m: Matrix, b: list[GaussianRational]) -> list[GaussianRational] | None:
    """One solution of m x = b, or None if inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if not m:
        return None if any(b) else []
    n = len(m[0])
    aug = [row[:] + [bx] for row, bx in zip(m, b)]
    ech, pivots = row_echelon(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = ech[r][n]
    return x


class SpanTracker:
    """Incremental column-span membership with exact elimination.

    Rows kept in reduced form keyed by pivot index; `add` returns True when
    the vector enlarged the span.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[GaussianRational]] = {}

    def _reduce(self, v: list[GaussianRational]) -> list[GaussianRational]:
        v = v[:]
        for p in sorted(self.rows):
            if v[p]:
                f = v[p]
                row = self.rows[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, v: list[GaussianRational]) -> bool:
        return not any(self._reduce(v))

    def add(self, v: list[GaussianRational]) -> bool:
        red = self._reduce(v)
        pivot = next((i for i, x in enumerate(red) if x), None)
        if pivot is None:
            return False
        inv = ONE / red[pivot]
        red = [x * inv for x in red]
        for p, row in self.rows.items():
            if row[pivot]:
                f = row[pivot]
                self.rows[p] = [x - f * y for x, y in zip(row, red)]
        self.rows[pivot] = red
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
