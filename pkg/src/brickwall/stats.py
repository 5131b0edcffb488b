"""Monte-Carlo sampling of the random variable V_max(p).

Each trial gets its own derived seed (one SplitMix64 mix of
base_seed XOR trial index), so runs are reproducible and trials could be
farmed out in parallel without sharing a stream.  Results are recorded in
trial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .generate import iterate
from .joints import vertical_joints
from .rng import derive_seed
from .rules import RuleError, SubstitutionRule


@dataclass(frozen=True)
class VmaxStats:
    p: Fraction
    n: int
    trials: int
    base_seed: int
    samples: Tuple[int, ...]

    @property
    def min(self) -> int:
        return min(self.samples)

    @property
    def max(self) -> int:
        return max(self.samples)

    @property
    def mean(self) -> float:
        return sum(self.samples) / len(self.samples)

    def histogram(self) -> Dict[int, int]:
        hist: Dict[int, int] = {}
        for s in self.samples:
            hist[s] = hist.get(s, 0) + 1
        return dict(sorted(hist.items()))

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "n": self.n,
            "trials": self.trials,
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "histogram": {str(k): v for k, v in self.histogram().items()},
            "base_seed": self.base_seed,
        }


def sample_vmax(rule: SubstitutionRule, seed_type: str, n: int, p,
                trials: int = 100, base_seed: int = 0) -> VmaxStats:
    """Sample v_max of iterate(rule[p], seed_type, n) over independent trials.

    The rule must carry the parametric coin p; it is bound here.  p = 0 and
    p = 1 degenerate to deterministic choices, and every trial then yields
    the same pattern no matter the seed.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    p = Fraction(p)
    if not rule.is_parametric:
        raise RuleError(f"rule '{rule.name}' has no parameter p to sample over")
    bound = rule.bind(p)
    bound.get_type(seed_type)
    samples = []
    for k in range(trials):
        pattern = iterate(bound, seed_type, n, rng_seed=derive_seed(base_seed, k))
        samples.append(vertical_joints(pattern).v_max)
    return VmaxStats(p, n, trials, base_seed, tuple(samples))
