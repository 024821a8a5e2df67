"""Seeded random partitions and the statistics built on them.

Two measures: uniform over all partitions of n, and Plancherel
(dim^2 / n!).  Both samplers are exact, not approximate.  On top of
them sit limit-shape curves, the rescaled profile distance, and a few
small experiments that report aggregate statistics.
"""

import bisect
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import partitions as pt


class SeededRng:
    """Deterministic substream keyed by (seed, index).

    Identical seed and index give bit-identical draws, independent of
    how many other streams exist, so samples parallelize freely.
    """

    def __init__(self, seed, index=0):
        self.seed = int(seed)
        self.index = int(index)
        self._rng = random.Random("%d:%d" % (self.seed, self.index))

    def random(self):
        return self._rng.random()

    def randrange(self, n):
        return self._rng.randrange(n)

    def shuffle(self, xs):
        self._rng.shuffle(xs)


# ---------------------------------------------------------------------------
# exact samplers


def _p_table(n):
    """p(0), ..., p(n) from the pentagonal number recurrence."""
    return pt._pentagonal_table(n)


@lru_cache(maxsize=None)
def _sigma_table(n):
    """Divisor sums sigma(1), ..., sigma(n) by a sieve."""
    sig = [0] * (n + 1)
    for d in range(1, n + 1):
        for s in range(d, n + 1, d):
            sig[s] += d
    return sig


def uniform_sample(n, rng):
    """One partition of n, exactly uniform over all p(n) of them.

    Each round picks a part d with multiplicity j, weighted by
    d * p(n - j*d); the identity n*p(n) = sum of those weights makes
    the assembled multiset exactly uniform.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = _p_table(n)
    sigma = _sigma_table(n)
    parts = []
    while n > 0:
        # pick the total s = j*d first (weight sigma(s) p(n-s)), then a
        # divisor d of s with weight d; jointly that is d * p(n - j*d)
        target = rng.randrange(n * p[n])
        s = 0
        while target >= 0:
            s += 1
            target -= sigma[s] * p[n - s]
        t = rng.randrange(sigma[s])
        for d in range(1, s + 1):
            if s % d == 0:
                t -= d
                if t < 0:
                    parts.extend([d] * (s // d))
                    break
        n -= s
    return tuple(sorted(parts, reverse=True))


def plancherel_sample(n, rng):
    """Insertion shape of a uniform random permutation, so dim^2/n!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    perm = list(range(n))
    rng.shuffle(perm)
    return rsk_shape(perm)


def rsk_shape(word):
    """Shape of the row-insertion tableau of a word of distinct values."""
    rows = []
    for x in word:
        for row in rows:
            i = bisect.bisect_right(row, x)
            if i == len(row):
                row.append(x)
                x = None
                break
            row[i], x = x, row[i]
        if x is not None:
            rows.append([x])
    return tuple(len(r) for r in rows)


# ---------------------------------------------------------------------------
# limit shapes


_B = math.pi / (2 * math.sqrt(6))


@dataclass
class LimitShape:
    """A limit curve, Russian (rotated) or French coordinates."""

    tag: str

    def __call__(self, x):
        return limit_shape_eval(self, x)


PLANCHEREL_RUSSIAN = LimitShape("PlancherelRussian")
UNIFORM_RUSSIAN = LimitShape("UniformRussian")
UNIFORM_FRENCH = LimitShape("UniformFrench")


def limit_shape_eval(shape, x):
    """Evaluate the curve at x; raises on points outside its domain."""
    if shape.tag == "PlancherelRussian":
        if abs(x) >= 2:
            return abs(x)
        return (2 / math.pi) * (x * math.asin(x / 2) + math.sqrt(4 - x * x))
    if shape.tag == "UniformRussian":
        # (1/b) log(e^{bx} + e^{-bx}); the max keeps big |x| from overflowing
        a = abs(x)
        return a + math.log1p(math.exp(-2 * _B * a)) / _B
    if shape.tag == "UniformFrench":
        t = math.exp(-math.pi * x / math.sqrt(6))
        if x <= 0 or t >= 1:
            raise ValueError("french curve needs x > 0")
        return -math.sqrt(6) / math.pi * math.log(1 - t)
    raise ValueError("unknown limit shape %r" % shape.tag)


def russian_profile(lam, u):
    """Rotated boundary profile of lam at integer or real u, unscaled."""
    return u + 2 * sum(1 for i, r in enumerate(lam) if r - (i + 1) >= u)


def rescaled_sup_distance(lam, shape):
    """Sup distance between the 1/sqrt(n) profile of lam and the curve."""
    n = pt.size(lam)
    if n < 1:
        raise ValueError("need a nonempty partition")
    s = 1 / math.sqrt(n)
    if shape.tag == "UniformFrench":
        cols = pt.conjugate(lam)
        best = 0.0
        for j in range(1, lam[0] + 1):
            y = cols[j - 1] if j <= len(cols) else 0
            best = max(best, abs(y * s - limit_shape_eval(shape, j * s)))
        return best
    lo = -len(lam) - 1
    hi = lam[0] + 1
    best = 0.0
    for u in range(lo, hi + 1):
        best = max(best, abs(s * russian_profile(lam, u) - shape(s * u)))
    return best


# ---------------------------------------------------------------------------
# small shape statistics


def beta_sum_flexible(lam, beta):
    """Columns ascending a_1 <= ... <= a_k: a_1 = 1 and each a_k at most
    the ceiling of beta times the sum of the columns up to it."""
    if pt.size(lam) < 1:
        raise ValueError("need a nonempty partition")
    cols = sorted(pt.conjugate(lam))
    if cols[0] != 1:
        return False
    total = 0
    for a in cols:
        total += a
        if a > math.ceil(beta * total):
            return False
    return True


def descent_tail_count(lam, w):
    """How many i have lam_i - i >= w."""
    return sum(1 for i, r in enumerate(lam) if r - (i + 1) >= w)


def singleton_columns(lam):
    """Number of columns of size 1."""
    if not lam:
        return 0
    return lam[0] - (lam[1] if len(lam) > 1 else 0)


def wilson_interval(hits, trials, z=1.96):
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    p = hits / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


# ---------------------------------------------------------------------------
# experiments


@dataclass
class SampleReport:
    measure: str
    n: int
    samples: int
    seed: int
    stats: dict = field(default_factory=dict)


def draw(measure, n, seed, index):
    rng = SeededRng(seed, index)
    if measure == "uniform":
        return uniform_sample(n, rng)
    if measure == "plancherel":
        return plancherel_sample(n, rng)
    raise ValueError("unknown measure %r" % measure)


def sample_report(measure, n, samples, seed, shape=None):
    """Draw a batch and summarize it: frequency table at small n,
    rescaled row/column lengths, and distance to a limit curve."""
    freq = {}
    lengths = []
    heights = []
    dists = []
    singles = []
    for i in range(samples):
        lam = draw(measure, n, seed, i)
        if n <= 12:
            freq[lam] = freq.get(lam, 0) + 1
        root = math.sqrt(n) if n else 1.0
        lengths.append((lam[0] if lam else 0) / root)
        heights.append((len(lam)) / root)
        singles.append(singleton_columns(lam))
        if shape is not None and n >= 1:
            dists.append(rescaled_sup_distance(lam, shape))
    stats = {
        "mean_length": sum(lengths) / max(1, samples),
        "mean_height": sum(heights) / max(1, samples),
        "singleton_counts": singles,
    }
    if freq:
        stats["frequencies"] = {pt.format_partition(k): v for k, v in sorted(freq.items())}
    if dists:
        stats["sup_distances"] = dists
        stats["median_distance"] = sorted(dists)[len(dists) // 2]
    return SampleReport(measure, n, samples, seed, stats)


def experiment_flexibility(n, beta, samples, seed):
    """Empirical probability that a Plancherel partition is flexible."""
    hits = 0
    for i in range(samples):
        lam = plancherel_sample(n, SeededRng(seed, i))
        if beta_sum_flexible(lam, beta):
            hits += 1
    lo, hi = wilson_interval(hits, samples)
    rate = hits / samples if samples else 0.0
    return SampleReport(
        "plancherel",
        n,
        samples,
        seed,
        {"beta": beta, "pass_rate": rate, "wilson_low": lo, "wilson_high": hi},
    )


def experiment_coverage(m, measure, samples, seed, fallback=False):
    """How often the matching constructive split handles a random
    partition of m(m+1)/2, optionally retrying failures with the prover."""
    from . import decomp
    from .prover import Budget, prove_in_staircase_square

    n = pt.triangular(m)
    split = decomp.uniform_split if measure == "uniform" else decomp.plancherel_split
    ok = 0
    rescued = 0
    for i in range(samples):
        lam = draw(measure, n, seed, i)
        res = split(lam, m)
        if res.ok:
            ok += 1
        elif fallback:
            cert = prove_in_staircase_square(m, lam, budget=Budget(2000))
            if cert is not None:
                rescued += 1
    stats = {
        "split_rate": ok / samples if samples else 0.0,
        "split_successes": ok,
    }
    if fallback:
        stats["prover_rate"] = (ok + rescued) / samples if samples else 0.0
    return SampleReport(measure, n, samples, seed, stats)


def singleton_column_stats(n, samples, seed, measure="uniform"):
    """Distribution of the singleton-column count, rescaled by pi/sqrt(6n)."""
    scale = math.pi / math.sqrt(6 * n)
    vals = []
    for i in range(samples):
        lam = draw(measure, n, seed, i)
        vals.append(singleton_columns(lam) * scale)
    vals.sort()
    return SampleReport(
        measure,
        n,
        samples,
        seed,
        {"scaled_values": vals, "median": vals[len(vals) // 2] if vals else 0.0},
    )
