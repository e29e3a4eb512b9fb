"""Exact integer linear algebra: unimodularity, normal forms, kernels."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from lgforge.intlinalg import (
    det,
    identity_matrix,
    kernel_basis,
    lattice_basis_of_rows,
    mat_mul,
    rank_rational,
    row_hermite_form,
    smith_normal_form,
    solve_rational,
)


def gauss_det(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return out


small_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n
    )
)

rect_matrices = st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(
    lambda shape: st.lists(
        st.lists(st.integers(-4, 4), min_size=shape[1], max_size=shape[1]),
        min_size=shape[0],
        max_size=shape[0],
    )
)


@given(small_matrices)
def test_det_matches_gaussian_elimination(m):
    assert det(m) == gauss_det(m)


@settings(deadline=None)
@given(rect_matrices)
def test_smith_normal_form_is_a_valid_decomposition(m):
    u, d, v = smith_normal_form(m)
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    assert mat_mul(mat_mul(u, m), v) == d
    rows, cols = len(m), len(m[0])
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d[i][j] == 0


@settings(deadline=None)
@given(rect_matrices)
def test_kernel_basis_spans_the_kernel(m):
    basis = kernel_basis(m)
    cols = len(m[0])
    for k in basis:
        assert all(sum(m[i][j] * k[j] for j in range(cols)) == 0 for i in range(len(m)))
    assert len(basis) == cols - rank_rational(m)
    if basis:
        # saturated: the basis itself has unit elementary divisors
        _, d, _ = smith_normal_form(basis)
        assert all(d[i][i] == 1 for i in range(len(basis)))


@settings(deadline=None)
@given(rect_matrices)
def test_hermite_form_is_a_left_gl_invariant(m):
    h = row_hermite_form(m)
    shears = [
        identity_matrix(len(m)),
    ]
    t = identity_matrix(len(m))
    if len(m) > 1:
        t[0][1] = 3
    again = row_hermite_form(mat_mul(t, m))
    assert again == h


@given(rect_matrices)
def test_lattice_basis_preserves_row_span(m):
    basis = lattice_basis_of_rows(m)
    assert rank_rational(basis if basis else [[0] * len(m[0])]) == rank_rational(m)
    # every original row lies in the integer span of the basis
    for row in m:
        if not basis:
            assert all(x == 0 for x in row)
            continue
        sol = solve_rational([list(col) for col in zip(*basis)], row)
        assert sol is not None
        assert all(x.denominator == 1 for x in sol)


@given(small_matrices, st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_solve_rational_solves(m, b):
    b = (b * 4)[: len(m)]
    x = solve_rational(m, b)
    if x is None:
        return
    for i in range(len(m)):
        assert sum(Fraction(m[i][j]) * x[j] for j in range(len(m))) == b[i]
