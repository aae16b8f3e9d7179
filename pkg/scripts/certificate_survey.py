"""Survey tightness, certificate rank and the divisibility condition over small frames.

For each N and support size s the window stack is ``1_{0..s-1}/sqrt(s)`` plus
``delta_s``; the script prints the tight constant, the lifted rank and whether
``gcd(s, N) = 1``.

    python scripts/certificate_survey.py --max-n 9
"""

import argparse
from dataclasses import dataclass

import numpy as np

from gaborfusion.complex_core import indicator
from gaborfusion.fusion import build_gabor_fusion, is_tight
from gaborfusion.phase_retrieval import divisibility_condition, injectivity_certificate


@dataclass
class SurveyConfig:
    min_n: int = 3
    max_n: int = 9


def run(cfg):
    print(f"{'N':>3} {'s':>3} {'tight A':>9} {'rank':>9} {'condition':>10}")
    for n in range(cfg.min_n, cfg.max_n + 1):
        for s in range(1, n - 1):
            rows = np.array([indicator(n, range(s)) / np.sqrt(s), indicator(n, [s])])
            F = build_gabor_fusion(rows, 1.0)
            A = is_tight(F)
            cert = injectivity_certificate(F)
            print(f"{n:3d} {s:3d} {A:9.4g} {cert.rank:4d}/{cert.dimension:<4d} "
                  f"{str(divisibility_condition(n, s)):>10}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min-n", type=int, default=SurveyConfig.min_n)
    p.add_argument("--max-n", type=int, default=SurveyConfig.max_n)
    a = p.parse_args()
    run(SurveyConfig(a.min_n, a.max_n))
