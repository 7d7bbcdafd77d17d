"""
Criticality analysis of an evolving series
==========================================

The full diagnostic chain on a generated corpus: per-iteration entropy
trace, rolling structural-semantic correlation, and the sign-sustain
transition detector. On a synthetic corpus whose semantics stay coupled to
structure the detector reports no transition; feeding it a trace with an
engineered decoupling shows what a detection looks like.
"""

import numpy as np

from graphcrit import (EntropySample, GrowthConfig, build_trace, detect_transition,
                       grow, rolling_cross_correlation)
from graphcrit.dynamics import EntropyTrace

cfg = GrowthConfig(seed=11, n_iterations=250, nodes_per_iter=1,
                   edges_per_new_node=3, surprise_prob=0.12, n_centroids=8,
                   embed_dim=64, embed_noise=0.15)
run = grow(cfg)
trace = build_trace(run.series, run.embeddings, surprise_threshold=0.1)

print("entropy trace (every 50th iteration):")
print("  iter   s_struct   s_sem      D        alpha")
for i in range(0, len(trace), 50):
    s = trace.samples[i]
    print(f"  {s.iteration:>4d}   {s.s_struct:8.4f}  {s.s_sem:8.4f}  "
          f"{s.d_param:+8.4f}  {trace.alphas[i]:.3f}")

xcorr = rolling_cross_correlation(trace, window=50)
rs = [p.pearson_r for p in xcorr.points]
print(f"\nrolling correlation (window 50): min {min(rs):+.3f}, "
      f"max {max(rs):+.3f}, final {rs[-1]:+.3f}")
found = detect_transition(xcorr, sustain=10)
print(f"transition on this corpus: {found.transition_iteration}")

# an engineered decoupling: semantics track structure for 120 samples,
# then invert -- the detector localizes the flip
rng = np.random.default_rng(0)
base = rng.normal(3.0, 1.0, 240)
flipped = np.where(np.arange(240) < 120, base + 0.2, -2.0 * base + 11.0)
samples = tuple(EntropySample(iteration=i, s_struct=float(a), s_sem=float(b),
                              d_param=(a - b) / (a + b))
                for i, (a, b) in enumerate(zip(base, flipped)))
synthetic = EntropyTrace(samples=samples, n_edges=(1,) * 240,
                         n_surprising=(0,) * 240, surprise_threshold=0.1)
report = detect_transition(rolling_cross_correlation(synthetic, 50), sustain=10)
print(f"\nengineered flip at sample 120 -> detected at "
      f"{report.transition_iteration} "
      f"(pre mean r {report.pre_mean_r:+.3f}, post mean r {report.post_mean_r:+.3f})")
