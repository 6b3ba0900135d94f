"""
Scoring one entropy trajectory
==============================

Walks a single response from raw token probabilities to its instability
score, printing every intermediate quantity.
"""

import numpy as np

from entrodyn import (
    EntropyTrajectory,
    SpikeConfig,
    burst_spike_count,
    edis,
    entropy_from_distribution,
    entropy_variance,
    mean_entropy,
    rebound_spike_count,
    simple_diff_spike_count,
)

# A token's entropy comes straight from its next-token distribution. All
# entropies in this package are in nats (natural log).
confident = [0.97, 0.01, 0.01, 0.01]
uncertain = [0.25, 0.25, 0.25, 0.25]
print("confident token:", entropy_from_distribution(confident), "nats")
print("uncertain token:", entropy_from_distribution(uncertain), "nats")

# Build a trajectory that settles, spikes hard, dips, and spikes again:
# the signature of a model repeatedly losing and regaining confidence.
rng = np.random.default_rng(7)
calm = rng.uniform(0.05, 0.25, size=30)
spike_up = [2.4, 2.6, 2.2]
dip = rng.uniform(0.05, 0.2, size=20)
spike_again = [2.1, 2.5]
tail = rng.uniform(0.05, 0.25, size=15)
values = np.concatenate([calm, spike_up, dip, spike_again, tail])

traj = EntropyTrajectory.from_entropies(values.tolist())
print("tokens:", len(traj))
print("mean entropy:", round(mean_entropy(traj), 4))
print("variance:", round(entropy_variance(traj), 4))

# Three spike counters, three views of the same instability:
#  - burst: entropy w tokens later jumped by more than tau_burst
#  - rebound: entropy climbed more than tau_rebound above its running minimum
#  - diff: adjacent tokens differ by more than tau_diff (cheapest proxy)
cfg = SpikeConfig()  # window 5, thresholds 1.36 / 1.33 / 0.7 nats
print("burst spikes:", burst_spike_count(traj, cfg))
print("rebound spikes:", rebound_spike_count(traj, cfg))
print("diff spikes:", simple_diff_spike_count(traj, cfg))

# EDIS folds the burst and rebound counts together and scales by variance:
# score = mean(burst, rebound) * (1 + variance). Flat trajectories score 0.
print("edis:", round(edis(traj, cfg), 4))

# A perfectly calm response scores exactly zero no matter the thresholds.
flat = EntropyTrajectory.from_entropies([0.1] * 60)
print("flat trajectory edis:", edis(flat, cfg))

# Thresholds are plain dataclass fields. Raise them above the largest swing
# in the trajectory and the very same response scores zero: the score only
# sees excursions bigger than the configured spike size.
loose = SpikeConfig(window_w=5, tau_burst=3.0, tau_rebound=3.0, tau_diff=3.0)
print("edis with 3-nat thresholds:", edis(traj, loose))
