"""Reconstruction error against multiplicative measurement noise on the C^7 frame.

    python scripts/noise_sweep.py --trials 200 --seed 3
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from gaborfusion.complex_core import indicator
from gaborfusion.fusion import build_gabor_fusion
from gaborfusion.phase_retrieval import MeasurementSet, measure, mod_phase_distance, reconstruct


@dataclass
class SweepConfig:
    trials: int = 100
    seed: int = 0
    levels: list = field(default_factory=lambda: [0.0, 1e-6, 1e-4, 1e-3, 1e-2, 3e-2])


def run(cfg):
    rows = np.array([indicator(7, [1, 2, 4]) / np.sqrt(3), indicator(7, [3])])
    F = build_gabor_fusion(rows, 1.0)
    rng = np.random.default_rng(cfg.seed)
    print(f"seed = {cfg.seed}, trials = {cfg.trials}")
    print(f"{'noise':>8} {'median':>10} {'p90':>10} {'max':>10}")
    for level in cfg.levels:
        d = []
        for _ in range(cfg.trials):
            x = rng.standard_normal(7) + 1j * rng.standard_normal(7)
            m = measure(x, F)
            noisy = MeasurementSet(m.values * (1 + level * rng.standard_normal(m.values.size)), m.index)
            x_hat = reconstruct(noisy, F, tol=np.inf).representative
            d.append(mod_phase_distance(x, x_hat) / np.linalg.norm(x))
        d = np.array(d)
        print(f"{level:8.0e} {np.median(d):10.3e} {np.quantile(d, 0.9):10.3e} {d.max():10.3e}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=SweepConfig.trials)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = p.parse_args()
    run(SweepConfig(trials=args.trials, seed=args.seed))
