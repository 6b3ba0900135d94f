"""Spike detectors and the EDIS score against literal oracles."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrodyn import (
    EntropyTrajectory,
    SpikeConfig,
    SpikeStatus,
    burst_spike_count,
    edis,
    rebound_spike_count,
    simple_diff_spike_count,
    spike_report,
    spike_status_map,
)
from oracles import oracle_burst, oracle_diff, oracle_edis, oracle_rebound

EDIS_CFG = SpikeConfig(window_w=1, tau_burst=1.36, tau_rebound=1.33)

trajectories = st.lists(
    st.floats(min_value=0.0, max_value=8.0, allow_nan=False), min_size=1, max_size=40
)


def traj(values):
    return EntropyTrajectory.from_entropies(values)


class TestSpikeConfig:
    def test_defaults(self):
        cfg = SpikeConfig()
        assert cfg.window_w == 5
        assert cfg.tau_burst == 1.36
        assert cfg.tau_rebound == 1.33
        assert cfg.tau_diff == 0.7

    def test_validation(self):
        with pytest.raises(ValueError):
            SpikeConfig(window_w=0)
        with pytest.raises(ValueError):
            SpikeConfig(tau_burst=0.0)
        with pytest.raises(ValueError):
            SpikeConfig(tau_diff=-0.1)


class TestBurst:
    def test_constant_zero(self):
        assert burst_spike_count(traj([0.4] * 12), SpikeConfig()) == 0

    def test_ramp_three_windows(self):
        cfg = SpikeConfig(window_w=2, tau_burst=0.9)
        assert burst_spike_count(traj([0, 0.5, 1.0, 1.5, 2.0]), cfg) == 3

    def test_ramp_threshold_blocks(self):
        cfg = SpikeConfig(window_w=2, tau_burst=1.1)
        assert burst_spike_count(traj([0, 0.5, 1.0, 1.5, 2.0]), cfg) == 0

    def test_short_trajectory_zero(self):
        cfg = SpikeConfig(window_w=5)
        assert burst_spike_count(traj([0, 9, 9, 9, 9]), cfg) == 0


class TestRebound:
    def test_monotone_decreasing_zero(self):
        assert rebound_spike_count(traj([3.0, 2.0, 1.0, 0.5]), SpikeConfig()) == 0

    def test_single_event(self):
        cfg = SpikeConfig(tau_rebound=1.33)
        assert rebound_spike_count(traj([2.0, 0.1, 1.8]), cfg) == 1

    def test_double_event(self):
        cfg = SpikeConfig(tau_rebound=1.33)
        assert rebound_spike_count(traj([0.1, 1.6, 1.6]), cfg) == 2

    def test_running_min_excludes_current(self):
        # A deep drop is not itself a rebound even though it moves far from
        # the running min; only later upward moves count.
        cfg = SpikeConfig(tau_rebound=0.5)
        assert rebound_spike_count(traj([2.0, 0.1]), cfg) == 0


class TestDiff:
    def test_constant_zero(self):
        assert simple_diff_spike_count(traj([1.0] * 6), SpikeConfig()) == 0

    def test_both_directions_count(self):
        cfg = SpikeConfig(tau_diff=0.7)
        assert simple_diff_spike_count(traj([0, 1, 0.2]), cfg) == 2

    def test_below_threshold(self):
        cfg = SpikeConfig(tau_diff=0.7)
        assert simple_diff_spike_count(traj([0, 0.5, 1.0]), cfg) == 0


class TestEdis:
    def test_constant_zero(self):
        assert edis(traj([0.9] * 10), SpikeConfig()) == 0.0

    def test_fixture_value(self):
        # One burst (t=2) and one rebound (t=3); Var = 2.18/3.
        assert edis(traj([2.0, 0.1, 1.8]), EDIS_CFG) == pytest.approx(
            1.7266666666666666, abs=1e-12
        )

    def test_zero_iff_no_spikes(self):
        rng = np.random.default_rng(42)
        cfg = SpikeConfig()
        for _ in range(100):
            values = (rng.random(int(rng.integers(1, 50))) * 4).tolist()
            t = traj(values)
            score = edis(t, cfg)
            spikes = burst_spike_count(t, cfg) + rebound_spike_count(t, cfg)
            assert (score == 0.0) == (spikes == 0)

    def test_edis_at_least_combined_score(self):
        rng = np.random.default_rng(3)
        cfg = SpikeConfig()
        for _ in range(100):
            values = (rng.random(int(rng.integers(2, 50))) * 4).tolist()
            t = traj(values)
            report = spike_report(t, cfg)
            assert edis(t, cfg) >= report.combined_score


class TestOracleEquivalence:
    def test_seeded_random_trajectories(self):
        rng = np.random.default_rng(42)
        for _ in range(300):
            length = int(rng.integers(1, 64))
            values = (rng.random(length) * 5).tolist()
            w = int(rng.integers(1, 8))
            tau_b = float(rng.uniform(0.1, 2.5))
            tau_r = float(rng.uniform(0.1, 2.5))
            tau_d = float(rng.uniform(0.1, 2.5))
            cfg = SpikeConfig(window_w=w, tau_burst=tau_b, tau_rebound=tau_r, tau_diff=tau_d)
            t = traj(values)
            assert burst_spike_count(t, cfg) == oracle_burst(values, w, tau_b)
            assert rebound_spike_count(t, cfg) == oracle_rebound(values, tau_r)
            assert simple_diff_spike_count(t, cfg) == oracle_diff(values, tau_d)
            assert edis(t, cfg) == pytest.approx(
                oracle_edis(values, w, tau_b, tau_r), abs=1e-12
            )

    @given(trajectories, st.integers(min_value=1, max_value=6))
    def test_hypothesis_counts(self, values, w):
        cfg = SpikeConfig(window_w=w, tau_burst=0.9, tau_rebound=0.8, tau_diff=0.5)
        t = traj(values)
        assert burst_spike_count(t, cfg) == oracle_burst(values, w, 0.9)
        assert rebound_spike_count(t, cfg) == oracle_rebound(values, 0.8)
        assert simple_diff_spike_count(t, cfg) == oracle_diff(values, 0.5)


class TestDetectorProperties:
    def test_monotone_in_thresholds(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            values = (rng.random(int(rng.integers(2, 40))) * 4).tolist()
            t = traj(values)
            taus = [0.2, 0.5, 1.0, 1.5, 2.5]
            bursts = [
                burst_spike_count(t, SpikeConfig(window_w=3, tau_burst=tb))
                for tb in taus
            ]
            rebounds = [
                rebound_spike_count(t, SpikeConfig(tau_rebound=tr)) for tr in taus
            ]
            diffs = [
                simple_diff_spike_count(t, SpikeConfig(tau_diff=td)) for td in taus
            ]
            for series in (bursts, rebounds, diffs):
                assert all(a >= b for a, b in zip(series, series[1:]))

    def test_translation_invariance(self):
        rng = np.random.default_rng(12)
        cfg = SpikeConfig(window_w=2)
        for _ in range(50):
            values = (rng.random(int(rng.integers(2, 40))) * 3).tolist()
            shifted = [v + 1.75 for v in values]
            t0, t1 = traj(values), traj(shifted)
            assert burst_spike_count(t0, cfg) == burst_spike_count(t1, cfg)
            assert rebound_spike_count(t0, cfg) == rebound_spike_count(t1, cfg)
            assert simple_diff_spike_count(t0, cfg) == simple_diff_spike_count(t1, cfg)

    def test_appended_rebound_increases_edis(self):
        cfg = SpikeConfig(window_w=3, tau_burst=1.36, tau_rebound=1.33)
        base = [1.0, 0.6, 0.8, 0.7]
        before = edis(traj(base), cfg)
        assert before == 0.0
        extended = base + [0.7 + 1.4]
        after = edis(traj(extended), cfg)
        assert rebound_spike_count(traj(extended), cfg) == 1
        assert after > 0.0

    def test_determinism(self):
        values = list(np.random.default_rng(0).random(30) * 4)
        cfg = SpikeConfig()
        t = traj(values)
        assert edis(t, cfg) == edis(traj(values), cfg)
        assert spike_status_map(t, cfg) == spike_status_map(traj(values), cfg)


class TestStatusMap:
    def test_constant_all_none(self):
        statuses = spike_status_map(traj([0.5] * 8), SpikeConfig())
        assert set(statuses) == {SpikeStatus.NONE}

    def test_fixture_position_three_both(self):
        statuses = spike_status_map(traj([2.0, 0.1, 1.8]), EDIS_CFG)
        assert statuses == (SpikeStatus.NONE, SpikeStatus.NONE, SpikeStatus.BOTH)

    def test_rebound_only_flag_at_event(self):
        # Jump at position 4 rebounds but never bursts (window too long).
        cfg = SpikeConfig(window_w=6, tau_burst=5.0, tau_rebound=1.0)
        statuses = spike_status_map(traj([1.0, 0.8, 0.9, 2.2]), cfg)
        assert statuses[3] is SpikeStatus.REBOUND_ONLY
        assert all(s is SpikeStatus.NONE for s in statuses[:3])

    def test_flag_totals_match_counts(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            values = (rng.random(int(rng.integers(1, 50))) * 4).tolist()
            cfg = SpikeConfig(window_w=int(rng.integers(1, 6)))
            t = traj(values)
            statuses = spike_status_map(t, cfg)
            n_burst = sum(
                1 for s in statuses if s in (SpikeStatus.BURST_ONLY, SpikeStatus.BOTH)
            )
            n_rebound = sum(
                1
                for s in statuses
                if s in (SpikeStatus.REBOUND_ONLY, SpikeStatus.BOTH)
            )
            assert n_burst == burst_spike_count(t, cfg)
            assert n_rebound == rebound_spike_count(t, cfg)


class TestSpikeReport:
    def test_combined_score_exact(self):
        report = spike_report(traj([2.0, 0.1, 1.8]), EDIS_CFG)
        assert report.burst_count == 1
        assert report.rebound_count == 1
        assert report.combined_score == 1.0

    def test_invalid_combined_score_rejected(self):
        from entrodyn import SpikeReport

        with pytest.raises(ValueError):
            SpikeReport(
                burst_count=1,
                rebound_count=1,
                combined_score=0.75,
                per_token_status=(SpikeStatus.NONE,),
            )
