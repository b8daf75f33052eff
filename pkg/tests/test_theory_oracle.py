import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cift.composition import MixRatio, MixturePlan, SubsampleSeeded, sweep_features
from cift.errors import (
    ConfigError,
    InsufficientData,
    OverlappingSupports,
    ShapeMismatch,
    SignViolation,
    ZeroGradient,
)
from cift.theory_oracle import (
    CollapseSpec,
    GradientPair,
    SubDatasetSpec,
    build_staged_pools,
    c_diversity_of,
    collapse_critical_fraction,
    entropy_bits,
    generate_collapse_pools,
    gradient_interference,
    initial_gradients,
    initial_gradients_fd,
    mi_overlap_bound,
    mixture_joint,
    mixture_variance,
    mixture_variance_mc,
    normalized_mi_bruteforce,
    normalized_mi_closed_form,
    normalized_mi_of_joint,
    run_suites,
)


class TestNormalizedMi:
    def test_closed_form_point_masses(self):
        assert normalized_mi_closed_form(0.0) == 1.0

    def test_closed_form_substitution(self):
        assert normalized_mi_closed_form(4.0) == 0.5

    def test_uniform_two_by_two_bruteforce(self):
        # both sub-datasets uniform over 2 u-values and 2 v-values: all four
        # marginal entropies are 1 bit, C = 4, normalized MI = 0.5
        sub = SubDatasetSpec.uniform(2, 2)
        assert normalized_mi_bruteforce(sub, sub) == pytest.approx(0.5, abs=1e-12)

    def test_point_mass_bruteforce(self):
        sub = SubDatasetSpec((1.0,), (1.0,))
        assert normalized_mi_bruteforce(sub, sub) == pytest.approx(1.0, abs=1e-12)

    def test_uniform_four_bruteforce(self):
        sub = SubDatasetSpec.uniform(4, 4)
        # C = 8: closed form 4/12 = 1/3
        assert normalized_mi_bruteforce(sub, sub) == pytest.approx(1.0 / 3.0, abs=1e-9)

    @pytest.mark.parametrize("k", [2, 4, 8])
    @pytest.mark.parametrize("m", [2, 4, 8])
    def test_grid_agreement(self, k, m):
        sub1, sub2 = SubDatasetSpec.uniform(k, m), SubDatasetSpec.uniform(k, m)
        closed = normalized_mi_closed_form(c_diversity_of([sub1, sub2]))
        assert normalized_mi_bruteforce(sub1, sub2) == pytest.approx(closed, abs=1e-9)

    def test_asymmetric_marginals_still_agree(self):
        sub1 = SubDatasetSpec((0.5, 0.25, 0.25), (0.9, 0.1))
        sub2 = SubDatasetSpec((1.0,), (0.2, 0.3, 0.5))
        closed = normalized_mi_closed_form(c_diversity_of([sub1, sub2]))
        assert normalized_mi_bruteforce(sub1, sub2) == pytest.approx(closed, abs=1e-9)

    def test_overlapping_supports_rejected(self):
        shared = ("a", "b")
        sub1 = SubDatasetSpec((0.5, 0.5), (0.5, 0.5), shared, ("x", "y"))
        sub2 = SubDatasetSpec((0.5, 0.5), (0.5, 0.5), shared, ("p", "q"))
        with pytest.raises(OverlappingSupports):
            normalized_mi_bruteforce(sub1, sub2)

    def test_bad_distribution_rejected(self):
        with pytest.raises(ConfigError):
            SubDatasetSpec((0.5, 0.6), (1.0,))

    def test_entropy_bits_handles_zeros(self):
        assert entropy_bits([0.5, 0.5, 0.0]) == pytest.approx(1.0)


class TestOverlapBound:
    def test_consistency_at_zero_overlap_is_exact(self):
        for c in (0.0, 0.7, 2.0, 4.0, 9.25):
            assert mi_overlap_bound(c, 0.0) == normalized_mi_closed_form(c)

    def test_substitution(self):
        assert mi_overlap_bound(4.0, 2.0) == pytest.approx(1.0 / 3.0)

    def test_full_overlap_limit(self):
        assert mi_overlap_bound(7.3, 4.0) == 0.0

    def test_interleave_range_checked(self):
        with pytest.raises(ConfigError):
            mi_overlap_bound(1.0, 5.0)

    def test_measured_mi_under_bound_for_shifted_supports(self):
        # overlap the supports progressively; the measured normalized MI
        # must fall from the disjoint value toward 0 at full overlap
        k = 4
        u = (1.0 / k,) * k
        names = [f"s{j}" for j in range(2 * k)]
        disjoint = normalized_mi_closed_form(4 * np.log2(k))
        last = float("inf")
        for shift in (k, 2, 0):
            sub1 = SubDatasetSpec(u, u, tuple(names[:k]), tuple(names[:k]))
            sub2 = SubDatasetSpec(
                u, u, tuple(names[shift : shift + k]), tuple(names[shift : shift + k])
            )
            measured = normalized_mi_of_joint(mixture_joint([sub1, sub2]))
            assert measured <= disjoint + 1e-12
            assert measured <= last + 1e-12
            last = measured
        assert last == pytest.approx(0.0, abs=1e-12)


class TestMixtureVariance:
    def test_substitution(self):
        assert mixture_variance(0.0, 1.0, 2.0, 1.0) == pytest.approx(2.0)

    def test_equal_means(self):
        assert mixture_variance(3.0, 1.0, 3.0, 2.0) == pytest.approx(1.5)

    def test_monte_carlo_agreement(self):
        ident = mixture_variance(1.0, 0.5, -3.0, 2.0)
        mc = mixture_variance_mc(1.0, 0.5, -3.0, 2.0, n=1_000_000, seed=12)
        assert mc == pytest.approx(ident, rel=0.01)

    @settings(max_examples=100, deadline=None)
    @given(
        mu1=st.floats(-50, 50), mu2=st.floats(-50, 50),
        var1=st.floats(0, 100), var2=st.floats(0, 100),
    )
    def test_disparity_term_nonnegative(self, mu1, mu2, var1, var2):
        assert mixture_variance(mu1, var1, mu2, var2) >= 0.5 * (var1 + var2)


class TestInitialGradients:
    def test_identity_target_gives_minus_one(self):
        rng = np.random.default_rng(4)
        u = rng.normal(size=100)
        u = (u - u.mean()) / u.std()  # population-normalized: Cov(y, u) = 1
        y = u.copy()
        gu, gv = initial_gradients(u, rng.normal(size=(100, 2)), y)
        assert gu[0] == pytest.approx(-1.0, abs=1e-6)

    def test_independent_target_small_gradient(self):
        rng = np.random.default_rng(8)
        n = 100_000
        v = rng.normal(size=(n, 3))
        y = rng.normal(size=n)
        _, gv = initial_gradients(rng.normal(size=n), v, y)
        assert np.abs(gv).max() < 3.0 / np.sqrt(n)

    def test_constant_target_zero_gradients(self):
        rng = np.random.default_rng(1)
        gu, gv = initial_gradients(
            rng.normal(size=(50, 2)), rng.normal(size=(50, 3)), np.full(50, 2.5)
        )
        assert np.abs(gu).max() < 1e-10 and np.abs(gv).max() < 1e-10

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            initial_gradients(np.ones((4, 2)), np.ones((5, 2)), np.ones(4))

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_finite_differences(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(30, 200))
        u = rng.normal(size=(n, int(rng.integers(1, 5))))
        v = rng.normal(size=(n, int(rng.integers(1, 5))))
        y = u @ rng.normal(size=u.shape[1]) + v @ rng.normal(size=v.shape[1])
        gu, gv = initial_gradients(u, v, y)
        fu, fv = initial_gradients_fd(u, v, y)
        analytic = np.concatenate([gu, gv])
        fd = np.concatenate([fu, fv])
        assert np.linalg.norm(analytic - fd) <= 1e-5 * np.linalg.norm(analytic)


class TestGradientInterference:
    def test_collinear(self):
        g = np.array([1.0, 2.0, -1.0])
        res = gradient_interference(GradientPair(g, g, alpha=0.3))
        assert res.fidelity == pytest.approx(1.0, abs=1e-12)
        assert res.norm_sq_predicted == pytest.approx(float(g @ g), rel=1e-12)

    def test_destructive_at_half(self):
        g = np.array([2.0, -1.0])
        res = gradient_interference(GradientPair(g, -g, alpha=0.5))
        assert res.fidelity == pytest.approx(-1.0, abs=1e-12)
        assert res.norm_sq_predicted == pytest.approx(0.0, abs=1e-12)
        assert res.norm_sq_direct == pytest.approx(0.0, abs=1e-12)

    def test_random_high_dim_identity(self):
        rng = np.random.default_rng(99)
        gp = GradientPair(rng.normal(size=1024), rng.normal(size=1024), alpha=0.3)
        res = gradient_interference(gp)
        assert res.norm_sq_predicted == pytest.approx(res.norm_sq_direct, rel=1e-10)

    def test_zero_gradient_rejected(self):
        with pytest.raises(ZeroGradient):
            gradient_interference(GradientPair(np.zeros(3), np.ones(3), alpha=0.5))

    def test_alpha_range_checked(self):
        with pytest.raises(ConfigError):
            GradientPair(np.ones(2), np.ones(2), alpha=1.5)

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 10_000), alpha=st.floats(0.0, 1.0), dim=st.sampled_from([2, 64, 1024]))
    def test_identity_property(self, seed, alpha, dim):
        rng = np.random.default_rng(seed)
        gp = GradientPair(rng.normal(size=dim), rng.normal(size=dim), alpha)
        res = gradient_interference(gp)
        # compare relative to the computation's scale, not the (possibly
        # destructively cancelled) result
        scale = (1 - alpha) ** 2 * gp.g_real @ gp.g_real + alpha**2 * gp.g_synth @ gp.g_synth
        assert abs(res.norm_sq_predicted - res.norm_sq_direct) <= 1e-10 * max(scale, 1e-12)


class TestCollapse:
    def test_reference_fraction(self):
        point = collapse_critical_fraction(2.0, -1.0)
        assert point.alpha_dc == pytest.approx(2.0 / 3.0)
        assert point.ratio_dc == pytest.approx(2.0)

    def test_symmetric_case(self):
        point = collapse_critical_fraction(1.0, -1.0)
        assert point.alpha_dc == pytest.approx(0.5) and point.ratio_dc == pytest.approx(1.0)

    def test_strong_synthetic_case(self):
        assert collapse_critical_fraction(1.0, -3.0).alpha_dc == pytest.approx(0.25)

    def test_fraction_and_ratio_consistent(self):
        point = collapse_critical_fraction(1.7, -0.4)
        assert point.ratio_dc == pytest.approx(point.alpha_dc / (1 - point.alpha_dc))

    @pytest.mark.parametrize("mu_r,mu_s", [(2.0, 2.0), (-1.0, -2.0), (0.0, -1.0)])
    def test_sign_violation(self, mu_r, mu_s):
        with pytest.raises(SignViolation):
            collapse_critical_fraction(mu_r, mu_s)

    def test_spec_sign_violation(self):
        with pytest.raises(SignViolation):
            CollapseSpec(mu_real=2.0, mu_synth=2.0)

    def test_generation_deterministic(self):
        spec = CollapseSpec(mu_real=2.0, mu_synth=-1.0, d=4)
        a_real, a_synth = generate_collapse_pools(spec, 50, 60, seed=21)
        b_real, b_synth = generate_collapse_pools(spec, 50, 60, seed=21)
        assert a_real.data.tobytes() == b_real.data.tobytes()
        assert a_synth.data.tobytes() == b_synth.data.tobytes()
        assert a_real.rows == 50 and a_synth.rows == 60 and a_real.dims == 4

    def test_generation_needs_two_rows(self):
        with pytest.raises(InsufficientData):
            generate_collapse_pools(CollapseSpec(1.0, -1.0), 1, 5, seed=0)

    def test_pool_moments_roughly_match_spec(self):
        spec = CollapseSpec(mu_real=2.0, mu_synth=-1.0, d=6)
        real, synth = generate_collapse_pools(spec, 20_000, 20_000, seed=2)
        assert real.data[:, 0].mean() == pytest.approx(2.0, abs=0.05)
        assert synth.data[:, 0].mean() == pytest.approx(-1.0, abs=0.05)
        assert real.data[:, 1].std() == pytest.approx(1.0, abs=0.05)

    def test_mixture_mean_crosses_zero_at_alpha_dc(self):
        spec = CollapseSpec(mu_real=2.0, mu_synth=-1.0, d=2)
        n = 30_000
        real, synth = generate_collapse_pools(spec, n, n, seed=5)
        alpha = collapse_critical_fraction(2.0, -1.0).alpha_dc
        n_real = n // 2  # 1:2 blocks realize alpha = 2/3 with the full synth pool
        first_axis = np.concatenate([real.data[:n_real, 0], synth.data[:, 0]]).astype(np.float64)
        se = np.sqrt(((1 - alpha) + alpha) / first_axis.size)  # both sigmas are 1
        assert abs(first_axis.mean()) <= 3 * se

    def test_end_to_end_sweep_locates_collapse(self):
        spec = CollapseSpec(mu_real=2.0, mu_synth=-1.0, d=4)
        real, synth = generate_collapse_pools(spec, 4000, 4000, seed=13)
        plan = MixturePlan(
            ratios=tuple(MixRatio(12 - k, k) for k in range(12)),
            sampling=SubsampleSeeded(13),
        )
        report = sweep_features(real, synth, plan)
        assert report.decoherence_index is not None
        detected = report.points[report.decoherence_index].ratio.lam
        assert abs(detected - 2.0 / 3.0) <= 1.0 / 12.0 + 1e-12


class TestStagedPools:
    def test_targets_infeasible_raises(self):
        with pytest.raises(ConfigError):
            # second stage demands lower cumulative spread than stage one
            build_staged_pools([0.0, 0.0], [5.0, 0.1], block_rows=50)

    def test_nested_prefixes_hit_targets(self):
        mu = (0.79, 1.17, 0.85, 0.05, 0.30, 0.73)
        sigma = (5.55, 5.39, 5.17, 5.18, 5.10, 5.04)
        real, synth = build_staged_pools(mu, sigma, block_rows=100, seed=11)
        for j in range(6):
            col = np.concatenate([real.data[:, 0], synth.data[: 100 * j, 0]]).astype(np.float64)
            assert col.mean() == pytest.approx(mu[j], abs=1e-4)
            assert col.std(ddof=1) == pytest.approx(sigma[j], abs=1e-4)


class TestSuites:
    @pytest.mark.parametrize("name", ["prop1", "prop2", "prop3", "prop5", "prop6"])
    def test_suite_passes(self, name):
        cases = run_suites(name)
        assert cases and all(c.passed for c in cases), [
            c.name for c in cases if not c.passed
        ]

    def test_all_selector_concatenates(self):
        assert len(run_suites("all")) == sum(
            len(run_suites(n)) for n in ["prop1", "prop2", "prop3", "prop5", "prop6"]
        )

    def test_unknown_selector(self):
        with pytest.raises(ConfigError):
            run_suites("prop9")
