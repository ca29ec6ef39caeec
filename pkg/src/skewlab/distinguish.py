"""Square-code distinguishers and related structural tests.

A GSRS or GLRS code of dimension k > m is a direct sum of m GRS codes whose
locators coincide, so its square is much smaller than that of a random code
of the same size.  The naive distinguisher compares the observed square
dimension with both closed forms; the shortened variant first shortens the
code to pull larger dimensions back into the distinguishable range.
"""

from __future__ import annotations

import enum
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .evalcodes import random_gsrs_spec, gsrs_generator
from .fieldtower import Automorphism, DomainError, ExtField, make_field, theta_pow
from .matcodes import (
    BlockPartition,
    random_code,
    random_monomial_disguise,
    rank,
    shorten,
    square_dim,
)


class Decision(enum.Enum):
    StructuredGsrsLike = "StructuredGsrsLike"
    RandomLike = "RandomLike"
    Inconclusive = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    observed_dim: int
    expected_structured: int
    expected_random: int
    shortening_used: int = 0
    note: str = ""

    def line(self) -> str:
        """``decision observed expected_structured expected_random s``."""
        return (f"{self.decision} {self.observed_dim} {self.expected_structured} "
                f"{self.expected_random} {self.shortening_used}")


def expected_square_dims(n: int, k: int, m: int) -> tuple[int, int]:
    """(structured, random) square dimensions.

    Structured: min(k(k+1)/2, n) for k <= m, else min(k(m+1) - m(m+1)/2, n).
    Random: min(k(k+1)/2, n).
    """
    if not 1 <= k <= n or m < 1:
        raise DomainError("need 1 <= k <= n and m >= 1")
    rand = min(k * (k + 1) // 2, n)
    if k <= m:
        return rand, rand
    return min(k * (m + 1) - m * (m + 1) // 2, n), rand


def naive_range(n: int, m: int) -> tuple[int, float]:
    """Open interval (m+1, n/(m+1) + m/2) of distinguishable dimensions."""
    return m + 1, n / (m + 1) + m / 2


def shortened_bound(n: int, m: int) -> float:
    """Largest admissible dimension is strictly below n - (m^2 + 3m)/2."""
    return n - (m * m + 3 * m) / 2


def _compare(observed: int, n: int, k: int, m: int, s: int) -> Verdict:
    structured, rand = expected_square_dims(n, k, m)
    if structured == rand:
        return Verdict(Decision.Inconclusive, observed, structured, rand, s,
                       "structured and random expectations coincide")
    if observed == structured:
        return Verdict(Decision.StructuredGsrsLike, observed, structured, rand, s)
    if observed == rand:
        return Verdict(Decision.RandomLike, observed, structured, rand, s)
    return Verdict(Decision.Inconclusive, observed, structured, rand, s,
                   "observed dimension matches neither expectation")


def naive_distinguish(F: ExtField, G, m: int) -> Verdict:
    """Compare dim(C*C) with the structured and random predictions."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if rank(F, G) != k:
        raise DomainError("generator matrix is not of full rank")
    return _compare(square_dim(F, G), n, k, m, 0)


def canonical_order(G) -> np.ndarray:
    """Column indices sorted by their encoded entries (top row most significant)."""
    G = np.asarray(G, dtype=np.int64)
    return np.lexsort(G[::-1])


def shortened_distinguish(F: ExtField, G, m: int, s: int | None = None) -> Verdict:
    """Shorten at ``s`` canonical positions, then run the naive test.

    The default is s = k - m - 2, which needs m + 1 < k < n - (m^2+3m)/2.
    Outside that range (and with no explicit ``s``) the verdict is
    Inconclusive and the note reports the boundary.
    """
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if rank(F, G) != k:
        raise DomainError("generator matrix is not of full rank")
    if s is None:
        bound = shortened_bound(n, m)
        if not (m + 1 < k < bound):
            structured, rand = expected_square_dims(n, k, m)
            return Verdict(Decision.Inconclusive, square_dim(F, G), structured, rand, 0,
                           f"no valid shortening: need {m + 1} < k < {bound:g}, got k = {k}")
        s = k - m - 2
    if not 0 <= s < k:
        raise DomainError(f"shortening size must lie in [0, {k}), got {s}")
    if s == 0:
        return naive_distinguish(F, G, m)
    idx = canonical_order(G)[:s]
    S = shorten(F, G, idx)
    ks = S.shape[0]
    if ks == 0:
        raise DomainError("shortened code is zero")
    return _compare(square_dim(F, S), n - s, ks, m, s)


# ---------------------------------------------------------------------------
# rank-metric style tests


def overbeck_stack(theta: Automorphism, G, a, partition: BlockPartition, j: int):
    """Stack G, D_a(G), ..., D_a^j(G) with D_a(x) = theta(x) a blockwise.

    Returns ``(stacked, rank)``.  ``a`` holds one value per block of
    ``partition``.
    """
    F = theta.field
    G = np.asarray(G, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64).ravel()
    if not isinstance(partition, BlockPartition):
        partition = BlockPartition(tuple(partition))
    if partition.n != G.shape[1] or a.size != len(partition):
        raise DomainError("partition does not match the matrix and parameter vector")
    if j < 0:
        raise DomainError("j must be nonnegative")
    avec = np.repeat(a, partition.lengths)[None, :]
    layers = [G]
    cur = G
    for _ in range(j):
        cur = F.mul(theta_pow(theta, cur, 1), avec)
        layers.append(cur)
    M = np.vstack(layers)
    return M, rank(F, M)


def frobenius_sum_dim(F: ExtField, G) -> int:
    """dim(C + sigma(C)) for the q-Frobenius sigma applied entrywise."""
    G = np.asarray(G, dtype=np.int64)
    return rank(F, np.vstack([G, F.frobenius(G, 1)]))


# ---------------------------------------------------------------------------
# experiments


def field_for(q: int, m: int) -> ExtField:
    """F_{q^m} for a prime power q, using the canonical moduli."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                break
            return make_field(p, e, m)
    raise DomainError(f"q = {q} is not a prime power")


def admissible_shifts(m: int) -> list[int]:
    """s in [1, m) with gcd(s, m) = 1 (the sole choice m = 1 gives s = 0)."""
    from math import gcd

    if m == 1:
        return [0]
    return [s for s in range(1, m) if gcd(s, m) == 1]


def _gsrs_trial(F: ExtField, n: int, k: int, seed) -> int:
    rng = np.random.default_rng(seed)
    s = int(rng.choice(admissible_shifts(F.m)))
    spec = random_gsrs_spec(Automorphism(F, s), n, k, rng)
    G, _ = random_monomial_disguise(F, gsrs_generator(spec), rng)
    return square_dim(F, G)


def _random_trial(F: ExtField, n: int, k: int, seed) -> int:
    rng = np.random.default_rng(seed)
    return square_dim(F, random_code(F, n, k, rng))


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SKEWLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ExperimentRow:
    q: int
    m: int
    n: int
    k: int
    gsrs_dims: Counter
    random_dims: Counter

    @staticmethod
    def _fmt(h: Counter) -> str:
        if not h:
            return "-"
        if len(h) == 1:
            return str(next(iter(h)))
        return ",".join(f"{d}x{c}" for d, c in sorted(h.items()))

    def line(self) -> str:
        return (f"{self.q} {self.m} {self.n} {self.k} "
                f"{self._fmt(self.gsrs_dims)} {self._fmt(self.random_dims)}")


def experiment_row(q: int, m: int, n: int, k: int, trials: int, seed=0,
                   threads: int | None = None,
                   random_trials: int | None = None) -> ExperimentRow:
    """Square dimensions of disguised random GSRS codes and random codes.

    Each trial draws a fresh theta = sigma^s with gcd(s, m) = 1, fresh
    P-independent locators, nonzero multipliers and a random monomial
    disguise; a fresh random code of the same size is drawn alongside.
    Per-trial generators are spawned from ``seed`` so results do not
    depend on ``threads``.  ``random_trials`` (default ``trials``) sets
    the number of random codes separately.
    """
    if n > m * (q - 1):
        raise DomainError(f"n = {n} exceeds m(q-1) = {m * (q - 1)}")
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n")
    F = field_for(q, m)
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    rtrials = trials if random_trials is None else random_trials
    gs, rs = root.spawn(2)
    jobs = [(_gsrs_trial, c) for c in gs.spawn(trials)]
    jobs += [(_random_trial, c) for c in rs.spawn(rtrials)]
    threads = threads or default_threads()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            dims = list(pool.map(lambda job: job[0](F, n, k, job[1]), jobs))
    else:
        dims = [fn(F, n, k, ss) for fn, ss in jobs]
    return ExperimentRow(q, m, n, k, Counter(dims[:trials]), Counter(dims[trials:]))


#: (q, m, n, k) rows of the square-dimension experiment, n = m(q - 1) throughout.
SQUARE_EXPERIMENT_ROWS = (
    (16, 4, 60, 10), (16, 4, 60, 13), (16, 4, 60, 14),
    (16, 6, 90, 12), (16, 6, 90, 15), (16, 6, 90, 16),
    (64, 2, 126, 32), (64, 2, 126, 42), (64, 2, 126, 43),
    (64, 4, 252, 42), (64, 4, 252, 52), (64, 4, 252, 53),
    (64, 6, 378, 44), (64, 6, 378, 56), (64, 6, 378, 57),
)
