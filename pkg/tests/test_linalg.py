from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ipd.exact import GaussianRational, Rational, as_scalar
from ipd.linalg import SpanTracker, nullspace, rank, row_echelon, solve

entries = st.builds(
    lambda a, b: GaussianRational(Rational(Fraction(a, b)), Rational(0)),
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=3),
)


def matrices(rows, cols):
    return st.lists(
        st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    )


def test_rank_and_nullspace_small():
    m = [[as_scalar(1), as_scalar(2)], [as_scalar(2), as_scalar(4)]]
    assert rank(m) == 1
    ns = nullspace(m)
    assert len(ns) == 1
    v = ns[0]
    assert m[0][0] * v[0] + m[0][1] * v[1] == as_scalar(0)


@given(matrices(3, 3))
@settings(max_examples=30, deadline=None)
def test_rank_nullity(m):
    r = rank(m)
    assert r + len(nullspace(m)) == 3


@given(matrices(3, 3), st.lists(entries, min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_solve_consistency(m, x):
    # b := m x is always solvable and any solution reproduces b
    b = [sum((m[i][j] * x[j] for j in range(3)), as_scalar(0)) for i in range(3)]
    y = solve(m, b)
    assert y is not None
    for i in range(3):
        assert sum((m[i][j] * y[j] for j in range(3)), as_scalar(0)) == b[i]


def test_solve_inconsistent_returns_none():
    m = [[as_scalar(1), as_scalar(1)], [as_scalar(1), as_scalar(1)]]
    assert solve(m, [as_scalar(0), as_scalar(1)]) is None


@given(matrices(4, 3))
@settings(max_examples=30, deadline=None)
def test_span_tracker_matches_rank(m):
    tracker = SpanTracker(3)
    added = sum(1 for row in m if tracker.add(row))
    assert added == tracker.rank == rank(m)


def test_echelon_pivots_monotone():
    m = [
        [as_scalar(0), as_scalar(1), as_scalar(2)],
        [as_scalar(1), as_scalar(0), as_scalar(0)],
        [as_scalar(1), as_scalar(1), as_scalar(2)],
    ]
    _, pivots = row_echelon(m)
    assert pivots == sorted(pivots)
    assert len(pivots) == rank(m)
