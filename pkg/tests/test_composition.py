import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import COL3, GRID22, max_abs, scale_of
from edmkit.composition import composed_sphere, kron_sum_edm
from edmkit.edm import check_edm, pairwise_sq_distances, tau
from edmkit.errors import NotEdm, TooLarge
from edmkit.generators import manhattan_grid, path_edm, random_spherical_edm
from edmkit.spherical import SphereInfo, classify, radius_sq, sphere_info


def product_configuration(X, Y):
    """Rows ``(x_j, y_i)`` with the second factor as the fast index."""
    m, n = len(X), len(Y)
    return np.hstack([np.repeat(X, n, axis=0), np.tile(Y, (m, 1))])


class TestKronSum:
    def test_two_paths(self):
        assert np.array_equal(kron_sum_edm(path_edm(2).matrix, path_edm(2).matrix), GRID22)

    @pytest.mark.parametrize("m,n", [(1, 1), (1, 4), (3, 2), (3, 4), (5, 5)])
    def test_equals_grid(self, m, n):
        assert np.array_equal(kron_sum_edm(path_edm(m).matrix, path_edm(n).matrix), manhattan_grid(m, n))

    def test_zero_factor(self):
        D2 = path_edm(3).matrix
        D = kron_sum_edm(np.zeros((2, 2)), D2)
        assert np.array_equal(D, np.kron(np.ones((2, 2)), D2))
        assert check_edm(D).embedding_dim == check_edm(D2).embedding_dim

    def test_product_configuration_oracle(self, rng):
        X, Y = rng.standard_normal((4, 2)), rng.standard_normal((3, 3))
        D = kron_sum_edm(pairwise_sq_distances(X), pairwise_sq_distances(Y))
        expected = pairwise_sq_distances(product_configuration(X, Y))
        assert max_abs(D - expected) <= 1e-12 * scale_of(expected)

    def test_non_edm_factor(self):
        with pytest.raises(NotEdm):
            kron_sum_edm([[0, 1, 9], [1, 0, 1], [9, 1, 0]], path_edm(2).matrix)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            kron_sum_edm(path_edm(5).matrix, path_edm(5).matrix, max_order=24)

    def test_non_spherical_factor(self):
        D = kron_sum_edm(COL3, path_edm(2).matrix)
        v = check_edm(D)
        assert v.is_edm and v.embedding_dim == 2
        assert v.rank_D - v.embedding_dim in (1, 2)

    @settings(max_examples=40, deadline=None)
    @given(
        m=st.integers(1, 8), n=st.integers(1, 8), r1=st.integers(1, 3), r2=st.integers(1, 3),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_dimension_additivity_and_gram(self, m, n, r1, r2, seed):
        rng = np.random.default_rng(seed)
        X, Y = rng.standard_normal((m, r1)), rng.standard_normal((n, r2))
        D1, D2 = pairwise_sq_distances(X), pairwise_sq_distances(Y)
        D = kron_sum_edm(D1, D2)
        assert check_edm(D).embedding_dim == check_edm(D1).embedding_dim + check_edm(D2).embedding_dim
        gram = np.kron(np.ones((m, m)), tau(D2)) + np.kron(tau(D1), np.ones((n, n)))
        assert max_abs(tau(D) - gram) <= 1e-12 * scale_of(D)


class TestComposedSphere:
    def test_two_paths(self):
        s = composed_sphere(sphere_info(0.25), sphere_info(0.25))
        assert s.radius_sq == 0.5 and s.min_shift == 1.0 and s.center is None

    def test_zero_radius(self):
        s = composed_sphere(SphereInfo(0.0, 0.0, np.zeros(0), 0.0), sphere_info(0.75))
        assert s.radius == pytest.approx(np.sqrt(0.75), rel=1e-15)

    def test_grid_3_4(self):
        s = composed_sphere(classify(path_edm(3).matrix).sphere, classify(path_edm(4).matrix).sphere)
        assert s.radius_sq == pytest.approx(1.25, rel=1e-12)

    def test_radius_law_random(self):
        for seed in range(30):
            rng = np.random.default_rng(seed)
            r1, r2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            D1 = random_spherical_edm(int(rng.integers(r1 + 1, 9)), r1, seed)
            D2 = random_spherical_edm(int(rng.integers(r2 + 1, 9)), r2, seed + 1000)
            D = kron_sum_edm(D1, D2)
            c = classify(D)
            assert c.spherical
            assert c.sphere.radius_sq == pytest.approx(radius_sq(D1) + radius_sq(D2), rel=1e-8)
