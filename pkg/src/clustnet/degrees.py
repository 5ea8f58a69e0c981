"""Degree-sequence sampling from truncated parametric families, and graphicality."""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate

from scipy.optimize import brentq

FAMILIES = ("poisson", "exponential", "scalefree")

# resample budget before giving up on a graphical draw
REALIZE_RETRIES = 100


class DegreeModelError(ValueError):
    pass


@dataclass(frozen=True)
class DistSpec:
    """A degree distribution on ``{1, ..., d_max}``.

    Only the parameter of the selected family is read: ``lam`` for
    Poisson, ``kappa`` for exponential, ``gamma`` for scale-free.
    ``d_max=None`` means ``n - 1`` at sampling time.
    """

    family: str
    lam: float = 5.0
    kappa: float = math.log(1.25)
    gamma: float = 2.0
    d_max: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DegreeModelError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "poisson" and not self.lam > 0:
            raise DegreeModelError(f"Poisson mean must be positive, got {self.lam}")
        if self.family == "exponential" and not self.kappa > 0:
            raise DegreeModelError(f"exponential rate must be positive, got {self.kappa}")
        if self.family == "scalefree" and not self.gamma > 1:
            raise DegreeModelError(f"power-law exponent must exceed 1, got {self.gamma}")
        if self.d_max is not None and self.d_max < 1:
            raise DegreeModelError(f"d_max must be >= 1, got {self.d_max}")

    def pmf(self, d_max: int) -> list[float]:
        """Normalized probabilities for degrees ``1..d_max`` (index 0 is degree 1)."""
        ds = range(1, d_max + 1)
        if self.family == "poisson":
            lam = self.lam
            logw = [d * math.log(lam) - lam - math.lgamma(d + 1) for d in ds]
        elif self.family == "exponential":
            logw = [-self.kappa * (d - 1) for d in ds]
        else:
            logw = [-self.gamma * math.log(d) for d in ds]
        top = max(logw)
        w = [math.exp(v - top) for v in logw]
        total = math.fsum(w)
        return [v / total for v in w]

    def mean(self, d_max: int) -> float:
        return math.fsum(d * p for d, p in enumerate(self.pmf(d_max), start=1))


def spec_for_mean(family: str, mean: float, d_max: int) -> DistSpec:
    """Solve the family parameter so the truncated pmf has the given mean."""
    if not 1.0 < mean < d_max:
        raise DegreeModelError(f"mean degree {mean} not attainable on 1..{d_max}")

    def make(p: float) -> DistSpec:
        if family == "poisson":
            return DistSpec(family, lam=p, d_max=d_max)
        if family == "exponential":
            return DistSpec(family, kappa=p, d_max=d_max)
        return DistSpec(family, gamma=p, d_max=d_max)

    if family == "poisson":
        lo, hi = 1e-9, float(d_max)
    elif family == "exponential":
        lo, hi = 1e-9, 50.0
    elif family == "scalefree":
        lo, hi = 1.0 + 1e-9, 50.0
    else:
        raise DegreeModelError(f"unknown family {family!r}")
    try:
        p = brentq(lambda v: make(v).mean(d_max) - mean, lo, hi, xtol=1e-12)
    except ValueError as exc:
        raise DegreeModelError(f"cannot reach mean {mean} for {family} on 1..{d_max}") from exc
    return make(p)


def is_realizable(seq) -> bool:
    """Erdős–Gallai test: even sum and the prefix inequalities on the sorted sequence."""
    d = sorted((int(v) for v in seq), reverse=True)
    if not d:
        return True
    if d[-1] < 0 or sum(d) % 2:
        return False
    n = len(d)
    if d[0] >= n:
        return False
    neg = [-v for v in d]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + d[i]
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        # d[k:split] are >= k and contribute k each; the rest contribute themselves
        split = max(k, bisect_right(neg, -k))
        rhs = k * (k - 1) + k * (split - k) + suffix[split]
        if prefix > rhs:
            return False
    return True


def sample_degree_sequence(spec: DistSpec, n: int, rng: random.Random) -> list[int]:
    """Draw ``n`` degrees, repair odd parity, and retry until graphical."""
    if n < 2:
        raise DegreeModelError(f"need at least 2 nodes, got {n}")
    d_max = spec.d_max if spec.d_max is not None else n - 1
    if d_max > n - 1:
        raise DegreeModelError(f"d_max={d_max} exceeds n-1={n - 1}")
    support = range(1, d_max + 1)
    cum = list(accumulate(spec.pmf(d_max)))
    for _ in range(REALIZE_RETRIES):
        seq = rng.choices(support, cum_weights=cum, k=n)
        if sum(seq) % 2:
            room = [i for i, d in enumerate(seq) if d < d_max]
            if not room:
                continue
            seq[rng.choice(room)] += 1
        if is_realizable(seq):
            return seq
    raise DegreeModelError(f"no graphical sequence after {REALIZE_RETRIES} draws")
