import json
import math
from pathlib import Path

import numpy as np
import pytest

from catlab.experiments import (ExperimentConfig, SamplerKind, boundary_points,
                                ci95_half_width, classify_target, dirichlet_state,
                                estimate_f, estimate_psucc, grid_targets,
                                kcopy_fraction, run_experiment, sample_catalyst)
from catlab.simplex import ProbVec, Seed

STATE_A = ProbVec(np.array([0.65, 0.2, 0.15]))
STATE_B = ProbVec(np.array([0.5, 0.4, 0.1]))

ROOT_SEED = 20260809


class TestSamplerKind:
    def test_parse(self):
        assert SamplerKind.parse("exponential") == SamplerKind("exponential")
        mk = SamplerKind.parse("multicopy:0.3:8")
        assert mk.r == 0.3 and mk.n_qubits == 8 and mk.dim(999) == 256

    def test_multicopy_validation(self):
        with pytest.raises(ValueError):
            SamplerKind("multicopy", r=0.5, n_qubits=4)
        with pytest.raises(ValueError):
            SamplerKind("rayleigh", r=0.2)
        with pytest.raises(ValueError):
            SamplerKind.parse("nonsense")


class TestSampleCatalyst:
    def test_multicopy_zero_is_a_point_mass(self):
        out = sample_catalyst(SamplerKind("multicopy", r=0.0, n_qubits=3), 0, Seed(1))
        expected = np.zeros(8)
        expected[0] = 1.0
        assert np.array_equal(out.entries, expected)

    def test_multicopy_is_a_product_power(self):
        out = sample_catalyst(SamplerKind("multicopy", r=0.25, n_qubits=2), 0, Seed(1))
        single = np.array([0.75, 0.25])
        assert np.allclose(out.entries, np.kron(single, single), atol=1e-15)

    def test_deterministic_per_seed(self):
        for kind in ("rayleigh", "uniform", "exponential"):
            a = sample_catalyst(SamplerKind(kind), 32, Seed(5, 9))
            b = sample_catalyst(SamplerKind(kind), 32, Seed(5, 9))
            assert np.array_equal(a.entries, b.entries)

    def test_normalization(self):
        out = sample_catalyst(SamplerKind("rayleigh"), 100, Seed(2))
        assert math.fsum(out.entries) == 1.0

    def test_exponential_matches_flat_simplex_marginal(self):
        # normalized exponentials are the flat simplex measure, whose single
        # coordinate follows Beta(1, d-1); one-sample KS test at the 1% level
        d = 10_000
        out = sample_catalyst(SamplerKind("exponential"), d, Seed(3))
        x = np.sort(out.entries)
        cdf = 1.0 - (1.0 - np.minimum(x, 1.0)) ** (d - 1)
        empirical = np.arange(1, d + 1) / d
        ks = np.max(np.abs(empirical - cdf))
        assert ks < 1.63 / math.sqrt(d)


class TestEstimatePsucc:
    def test_direct_conversion_always_succeeds(self):
        p = ProbVec(np.array([0.7, 0.2, 0.1]))
        q = ProbVec(np.array([0.5, 0.3, 0.2]))
        cfg = ExperimentConfig(seed_root=1, N_C=50, d_C=8, mu=0.0)
        assert estimate_psucc(p, q, cfg).p_succ == 1.0

    def test_identity_conversion(self):
        cfg = ExperimentConfig(seed_root=1, N_C=50, d_C=8, mu=0.0)
        assert estimate_psucc(STATE_A, STATE_A, cfg).p_succ == 1.0

    def test_pinned_anchor_plateau(self):
        # frozen at first run: with 256-level flat-simplex catalysts the
        # anchor conversion succeeds for every sampled catalyst
        cfg = ExperimentConfig(seed_root=ROOT_SEED)
        est = estimate_psucc(STATE_A, STATE_B, cfg)
        assert est.p_succ == 1.0 and est.cap_breaches == 0

    def test_monotone_in_allowed_error(self):
        cfg = ExperimentConfig(seed_root=7, N_C=40, d_C=16)
        rng = np.random.default_rng(11)
        for _ in range(10):
            x, y = rng.exponential(size=(2, 3))
            p, q = ProbVec(x / x.sum()), ProbVec(y / y.sum())
            values = [estimate_psucc(p, q, cfg, eps_c=eps).p_succ
                      for eps in (0.01, 0.05, 0.1, 0.2)]
            assert all(lo <= hi for lo, hi in zip(values, values[1:]))


def test_ci95_covers_known_bernoulli():
    rng = np.random.default_rng(42)
    theta, n = 0.3, 500
    covered = 0
    for _ in range(100):
        hits = int(rng.binomial(n, theta))
        p_hat = hits / n
        if abs(p_hat - theta) <= ci95_half_width(p_hat, n):
            covered += 1
    assert covered >= 93


class TestClassifyTarget:
    CFG = ExperimentConfig(seed_root=1)

    def test_gibbs_is_thermal(self):
        assert classify_target(STATE_A, ProbVec.uniform(3), self.CFG).label == "thermal"

    def test_anchor_is_catalytic_only(self):
        assert classify_target(STATE_A, STATE_B, self.CFG).label == "catalytic_only"

    def test_gibbs_source_reaches_nothing_else(self):
        cls = classify_target(ProbVec.uniform(3), STATE_B, self.CFG)
        assert cls.label == "unreachable"


class TestEstimateF:
    def test_gibbs_source_has_empty_activation_set(self):
        cfg = ExperimentConfig(seed_root=3, N_S=50, N_C=10, d_C=8)
        est = estimate_f(ProbVec.uniform(3), cfg)
        assert est.in_D == 0 and est.f is None

    def test_pure_source_has_empty_activation_set(self):
        cfg = ExperimentConfig(seed_root=3, N_S=50, N_C=10, d_C=8)
        est = estimate_f(ProbVec.point(3), cfg)
        assert est.in_D == 0 and est.f is None

    def test_counts_partition_samples(self):
        cfg = ExperimentConfig(seed_root=4, N_S=80, N_C=10, d_C=8)
        est = estimate_f(STATE_A, cfg)
        assert est.in_S + est.in_D + est.unreachable == est.sampled
        assert est.in_T == est.in_S + est.in_D

    def test_pinned_anchor_fraction(self):
        # frozen at first run: every activated target of the anchor source is
        # reached with probability >= 0.9 by 256-level random catalysts
        cfg = ExperimentConfig(seed_root=ROOT_SEED, N_C=200, N_S=500)
        est = estimate_f(STATE_A, cfg)
        assert est.f == 1.0
        assert (est.sampled, est.in_S, est.in_D) == (500, 158, 53)


class TestKcopyFraction:
    def test_pinned_curve(self):
        # frozen at first run; the share stays near zero because an activated
        # pair here must lower its smallest weight, which no exact copy
        # conversion can do (see the catalysis tests for the obstruction)
        cfg = ExperimentConfig(seed_root=ROOT_SEED, N_S=2000, k_max=8)
        points = kcopy_fraction(cfg)
        assert points[0].n_pairs == 70
        assert [round(pt.fraction, 6) for pt in points] == \
            [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.014286, 0.014286]

    def test_first_point_is_zero_and_curve_monotone(self):
        cfg = ExperimentConfig(seed_root=5, N_S=120, k_max=4)
        points = kcopy_fraction(cfg)
        assert points[0].fraction == 0.0
        fractions = [pt.fraction for pt in points]
        assert all(lo <= hi for lo, hi in zip(fractions, fractions[1:]))

    def test_requires_uniform_reference(self):
        cfg = ExperimentConfig(seed_root=5, N_S=10, energies=(0.0, 1.0, 2.0))
        with pytest.raises(ValueError, match="uniform"):
            kcopy_fraction(cfg)


class TestBoundaries:
    def test_boundary_points_are_valid_states(self):
        cfg = ExperimentConfig(seed_root=1)
        for which in ("S", "T"):
            pts = boundary_points(STATE_A, cfg, which, n_rays=32)
            assert len(pts) == 32
            for q in pts:
                assert min(q) >= -1e-12
                assert sum(q) == pytest.approx(1.0, abs=1e-9)

    def test_direct_set_inside_catalytic_set(self):
        cfg = ExperimentConfig(seed_root=1)
        center = np.full(3, 1 / 3)
        s_pts = boundary_points(STATE_A, cfg, "S", n_rays=16)
        t_pts = boundary_points(STATE_A, cfg, "T", n_rays=16)
        for s, t in zip(s_pts, t_pts):
            rs = np.linalg.norm(np.array(s) - center)
            rt = np.linalg.norm(np.array(t) - center)
            assert rs <= rt + 1e-9

    def test_grid_targets_cover_simplex(self):
        pts = grid_targets(0.1)
        assert len(pts) == 66  # compositions of 10 into 3 parts
        assert all(p.dim == 3 for p in pts)


class TestRunExperiment:
    def test_unknown_name(self, tmp_path):
        with pytest.raises(ValueError, match="unknown experiment"):
            run_experiment(ExperimentConfig(), "fig9", tmp_path)

    def test_summary_and_artifacts(self, tmp_path):
        cfg = ExperimentConfig(seed_root=6, N_C=20, N_S=30, d_C=8,
                               d_C_list=(4, 8), n_initial=2, k_max=2)
        summary = run_experiment(cfg, "fig2", tmp_path)
        assert summary["experiment"] == "fig2"
        assert (tmp_path / "fig2.csv").is_file()
        assert (tmp_path / "fig2_summary.json").is_file()
        header = (tmp_path / "fig2.csv").read_text().splitlines()[0]
        assert header == "distribution,d_C,p_succ,ci95,n_trials,seed"
        loaded = json.loads((tmp_path / "fig2_summary.json").read_text())
        assert loaded["config_digest"] == cfg.digest()

    @pytest.mark.parametrize("which", ["fig2", "fig3", "fig4", "fig5", "fig6"])
    def test_reruns_are_byte_identical(self, tmp_path, which):
        cfg = ExperimentConfig(seed_root=8, N_C=10, N_S=20, d_C=8,
                               d_C_list=(4, 8), n_initial=2, k_max=2,
                               multicopy_n_list=(2,), multicopy_r_list=(0.1, 0.3))
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        sum_a = run_experiment(cfg, which, out_a)
        sum_b = run_experiment(cfg, which, out_b)
        assert sum_a["outputs"] == sum_b["outputs"]
        for name in sum_a["outputs"]:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_config_json_round_trip(self):
        cfg = ExperimentConfig(seed_root=9, sampler=SamplerKind("rayleigh"),
                               d_C_list=(4, 16))
        again = ExperimentConfig.from_json_dict(cfg.to_json_dict())
        assert again == cfg
        assert again.digest() == cfg.digest()
