from fractions import Fraction

import numpy as np
import pytest

from framescale import exact


@pytest.mark.parametrize("seed", range(12))
def test_kernel_basis_against_numpy(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 6))
    n = int(rng.integers(2, 8))
    a = rng.integers(-6, 7, size=(m, n))
    rows = a.tolist()
    basis = exact.kernel_basis(rows)
    np_rank = np.linalg.matrix_rank(a)
    assert exact.rank_exact(rows) == np_rank
    assert len(basis) == n - np_rank
    for vec in basis:
        assert any(v != 0 for v in vec)
        for row in rows:
            assert sum(Fraction(rv) * xv for rv, xv in zip(row, vec)) == 0


def test_echelon_handles_rational_entries():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]]
    ech, pivots = exact.fraction_free_echelon(rows)
    assert len(pivots) == 1  # second row is half the first


def test_kernel_of_appended_diagonal_column():
    # Transformed columns of the standard basis of R^3 plus the diagonal
    # direction: every kernel vector must put weight zero on the fourth
    # column because its pairwise products are nonzero.
    r = 1 / np.sqrt(3.0)
    cols = [exact.f_vector_exact([Fraction(v) for v in vec])
            for vec in ([1, 0, 0], [0, 1, 0], [0, 0, 1],
                        [Fraction(r), Fraction(r), Fraction(r)])]
    rows = [[col[i] for col in cols] for i in range(5)]
    basis = exact.kernel_basis(rows)
    assert len(basis) == 1
    vec = basis[0]
    assert vec[3] == 0
    assert vec[0] == vec[1] == vec[2] != 0


def test_f_vector_exact_matches_float():
    import framescale as fs
    x = [Fraction(1), Fraction(2), Fraction(3)]
    assert exact.f_vector_exact(x) == [-3, -8, 2, 3, 6]
    xf = np.array([0.3, -1.7, 2.4, 0.9])
    got = exact.f_vector_exact([Fraction(v) for v in xf])
    np.testing.assert_allclose([float(v) for v in got], fs.f_vector(xf),
                               rtol=1e-15)


def test_solve_square_and_singular():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert exact.solve_square(a, [Fraction(3), Fraction(2)]) == \
        [Fraction(1), Fraction(1)]
    sing = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert exact.solve_square(sing, [Fraction(1), Fraction(1)]) is None


def test_polytope_vertices_of_simplex():
    a = [[Fraction(1), Fraction(1), Fraction(1)]]
    b = [Fraction(1)]
    verts = exact.polytope_vertices(a, b)
    assert sorted(tuple(v) for v in verts) == [
        (0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_polytope_vertices_infeasible():
    a = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    b = [Fraction(1), Fraction(2)]  # contradictory rows
    assert exact.polytope_vertices(a, b) == []


def test_polytope_vertices_negative_orthant_cut():
    # {u >= 0 : u1 - u2 = 0, u1 + u2 = 1} has the single vertex (1/2, 1/2).
    a = [[Fraction(1), Fraction(-1)], [Fraction(1), Fraction(1)]]
    b = [Fraction(0), Fraction(1)]
    verts = exact.polytope_vertices(a, b)
    assert verts == [[Fraction(1, 2), Fraction(1, 2)]]


def test_frame_to_fractions_roundtrip(onb_plus):
    cols = exact.frame_to_fractions(onb_plus)
    assert cols[0] == [1, 0]
    assert float(cols[2][0]) == onb_plus.matrix[0, 2]


def test_frame_to_fractions_override_shape_check(onb2):
    with pytest.raises(ValueError):
        exact.frame_to_fractions(onb2, rational=[[1, 0]])
