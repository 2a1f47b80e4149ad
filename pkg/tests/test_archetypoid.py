import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triway import oracle
from triway.archetypoid import ada, elbow, rss_curve, solve_alphas
from triway.threeway import project
from reference_data import MESSAGES_RSS_CURVE, small_instance

TRIANGLE = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]])


def triangle_cloud():
    """Triangle vertices plus interior convex combinations of them."""
    rng = np.random.default_rng(21)
    weights = rng.dirichlet(np.ones(3), size=6)
    return np.vstack([TRIANGLE, weights @ TRIANGLE])


class TestSolveAlphas:
    def test_archetypoid_reconstructs_itself(self):
        rng = np.random.default_rng(10)
        Y = rng.random((5, 3))
        alphas, rss = solve_alphas(Y, [0, 2, 4])
        np.testing.assert_allclose(alphas[2], [0, 1, 0], atol=1e-10)
        resid = Y[2] - alphas[2] @ Y[[0, 2, 4]]
        assert resid @ resid <= 1e-12

    def test_midpoint_splits_evenly(self):
        Y = np.array([[0.0, 0.0], [2.0, 2.0], [1.0, 1.0]])
        alphas, rss = solve_alphas(Y, [0, 1])
        np.testing.assert_allclose(alphas[2], [0.5, 0.5], atol=1e-8)
        assert rss <= 1e-12

    def test_matches_projected_gradient_referee(self):
        rng = np.random.default_rng(11)
        Y = rng.random((6, 2)) * 4
        indices = [0, 3, 5]
        alphas, rss = solve_alphas(Y, indices)
        _, rss_ref = oracle.simplex_lstsq_pg(Y[indices], Y)
        assert abs(rss - rss_ref) <= 1e-4 * (1.0 + rss_ref)

    def test_duplicate_indices_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            solve_alphas(np.eye(3), [0, 0])

    def test_index_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            solve_alphas(np.eye(3), [0, 5])

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_alpha_rows_on_the_simplex(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 8))
        k = int(rng.integers(1, n + 1))
        Y = rng.normal(size=(n, 2))
        indices = sorted(rng.choice(n, size=k, replace=False).tolist())
        alphas, _ = solve_alphas(Y, indices)
        assert alphas.min() >= -1e-12
        np.testing.assert_allclose(alphas.sum(axis=1), 1.0, atol=1e-6)


class TestAda:
    def test_all_rows_give_zero_rss(self):
        rng = np.random.default_rng(12)
        Y = rng.random((5, 2))
        result = ada(Y, 5)
        assert result.indices == (0, 1, 2, 3, 4)
        assert result.rss <= 1e-12

    def test_convex_hull_vertices_are_recovered(self):
        Y = triangle_cloud()
        result = ada(Y, 3)
        assert result.indices == (0, 1, 2)
        assert result.rss <= 1e-10

    def test_matches_exhaustive_on_small_instances(self):
        for seed in (0, 1, 2, 3, 4):
            Y, k = small_instance(seed)
            result = ada(Y, k)
            _, best = oracle.exhaustive_ada(Y, k)
            assert result.rss >= best - 1e-9 * (1.0 + best)
            assert result.rss == pytest.approx(best, rel=1e-6, abs=1e-9)

    def test_k_one_picks_global_center(self):
        rng = np.random.default_rng(13)
        Y = rng.random((7, 2))
        result = ada(Y, 1)
        totals = [((Y - Y[j]) ** 2).sum() for j in range(7)]
        assert result.indices[0] == int(np.argmin(totals))
        np.testing.assert_allclose(result.alphas, 1.0)

    def test_trace_strictly_decreasing(self):
        for seed in range(6):
            Y, k = small_instance(100 + seed)
            trace = ada(Y, k).trace
            assert all(b < a for a, b in zip(trace, trace[1:]))

    def test_converged_selection_admits_no_improving_swap(self):
        Y, k = small_instance(7)
        result = ada(Y, k)
        selected = set(result.indices)
        for out in result.indices:
            for cin in range(Y.shape[0]):
                if cin in selected:
                    continue
                _, rss = solve_alphas(Y, sorted(selected - {out} | {cin}))
                assert rss >= result.rss - 1e-9 * (1.0 + result.rss)

    def test_deterministic(self):
        Y, k = small_instance(8)
        r1, r2 = ada(Y, k), ada(Y, k)
        assert r1.indices == r2.indices
        assert r1.rss == r2.rss
        np.testing.assert_array_equal(r1.alphas, r2.alphas)

    def test_translation_and_scaling_equivariance(self):
        Y, k = small_instance(9)
        base = ada(Y, k)
        shifted = ada(Y + np.array([3.0, -7.0]), k)
        assert shifted.indices == base.indices
        np.testing.assert_allclose(shifted.alphas, base.alphas, atol=1e-5)
        assert shifted.rss == pytest.approx(base.rss, rel=1e-6, abs=1e-9)
        scaled = ada(4.0 * Y, k)
        assert scaled.indices == base.indices
        np.testing.assert_allclose(scaled.alphas, base.alphas, atol=1e-5)
        assert scaled.rss == pytest.approx(16.0 * base.rss, rel=1e-6, abs=1e-9)

    def test_k_out_of_range(self):
        with pytest.raises(ValueError, match="k"):
            ada(np.eye(3), 0)
        with pytest.raises(ValueError, match="k"):
            ada(np.eye(3), 4)

    def test_record(self):
        Y, k = small_instance(10)
        result = ada(Y, k)
        record = result.to_record([f"r{i}" for i in range(Y.shape[0])])
        assert record["k"] == k
        assert len(record["archetypoids"]) == k
        assert len(record["alphas"]) == Y.shape[0]


class TestRssCurve:
    def test_last_point_is_zero(self):
        rng = np.random.default_rng(14)
        Y = rng.random((4, 2))
        curve = rss_curve(Y, 4)
        assert [k for k, _ in curve] == [1, 2, 3, 4]
        assert curve[-1][1] <= 1e-12

    def test_nonincreasing_in_k(self):
        for seed in range(4):
            Y, _ = small_instance(200 + seed)
            curve = rss_curve(Y, Y.shape[0])
            values = [rss for _, rss in curve]
            assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))

    def test_messages_regression(self, messages):
        Y = project(messages).Y
        curve = rss_curve(Y, 4)
        for (k, rss), (k_ref, rss_ref) in zip(curve, MESSAGES_RSS_CURVE):
            assert k == k_ref
            assert rss == pytest.approx(rss_ref, rel=1e-9, abs=1e-9)
            # independent check: never below the exhaustive optimum
            _, best = oracle.exhaustive_ada(Y, k)
            assert rss >= best - 1e-9 * (1.0 + best)


class TestElbow:
    def test_single_sharp_bend(self):
        assert elbow([(1, 10.0), (2, 2.0), (3, 1.9), (4, 1.8)]).k == 2

    def test_linear_curve_has_no_elbow(self):
        result = elbow([(1, 10.0), (2, 8.0), (3, 6.0), (4, 4.0)])
        assert result.no_elbow
        assert result.k == 1

    def test_flat_curve_returns_one_with_flag(self):
        result = elbow([(1, 5.0), (2, 5.0), (3, 5.0)])
        assert result.no_elbow and result.k == 1

    def test_planted_bends_recovered(self):
        for seed in range(10):
            rng = np.random.default_rng(300 + seed)
            k_max = int(rng.integers(6, 12))
            k_star = int(rng.integers(2, k_max - 1))
            steep = float(rng.uniform(5.0, 20.0))
            shallow = float(rng.uniform(0.01, 0.2))
            value = 100.0 + float(rng.uniform(0.0, 50.0))
            curve = []
            for k in range(1, k_max + 1):
                curve.append((k, value))
                value -= steep if k < k_star else shallow
            result = elbow(curve)
            assert result.k == k_star and not result.no_elbow

    def test_validation(self):
        with pytest.raises(ValueError, match="length"):
            elbow([(1, 3.0), (2, 1.0)])
        with pytest.raises(ValueError, match="increasing"):
            elbow([(1, 3.0), (1, 2.0), (2, 1.0)])
