"""Monte Carlo cross-check: sample Gaussian block maxima, apply the power
transform and normalization, and test the empirical law against the exact
law and the Gumbel limit.

Normal variates come from the inverse CDF applied to a counter-based
(Philox) uniform stream, so a fixed (n, t, reps, seed) triple reproduces
byte-identical samples no matter how generation is chunked. Simulation
targets moderate n; the exact law covers huge n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import ndtri

from .errors import DomainError, ResourceError
from .exact_law import exact_cdf_values
from .norming import NormingConstants

# Hard budget on total normal draws per simulate call
MAX_TOTAL_DRAWS = 10 ** 10

# Replicates per generation chunk, sized so a chunk stays around 1e6 draws.
# Chunking is a memory knob only: values are identical for any chunk size.
_CHUNK_TARGET_DRAWS = 10 ** 6


@dataclass(frozen=True)
class SimSample:
    """Seeded sample of normalized powered block maxima, length ``reps``."""

    nc: NormingConstants
    reps: int
    seed: int
    values: np.ndarray


class KSResult(NamedTuple):
    statistic: float
    bound: float
    passed: bool


def simulate_block_maxima(nc: NormingConstants, reps: int, seed: int) -> SimSample:
    """Draw ``reps`` replicates of (|max of n normals|^t - d)/c.

    n must be integer-valued here (a block size); reps >= 1; seed is a
    64-bit unsigned key for the counter-based generator. Requests beyond
    ``MAX_TOTAL_DRAWS`` total draws are refused.
    """
    n_float = nc.n
    if n_float != int(n_float):
        raise DomainError(f"simulation needs an integer block size, got n={n_float!r}")
    n = int(n_float)
    reps = int(reps)
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    if not (0 <= int(seed) < 2 ** 64):
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    if reps * n > MAX_TOTAL_DRAWS:
        raise ResourceError(
            f"reps*n = {reps * n:.3g} exceeds the {MAX_TOTAL_DRAWS:.0e} draw budget"
        )
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    chunk_reps = max(1, _CHUNK_TARGET_DRAWS // n)
    out = np.empty(reps)
    pos = 0
    while pos < reps:
        k = min(chunk_reps, reps - pos)
        z = ndtri(rng.random((k, n)))
        out[pos:pos + k] = (np.abs(z.max(axis=1)) ** nc.t - nc.d) / nc.c
        pos += k
    return SimSample(nc=nc, reps=reps, seed=int(seed), values=out)


def _reference_cdf(sample: SimSample, reference: str, xs: np.ndarray) -> np.ndarray:
    if reference == "exact":
        return exact_cdf_values(sample.nc, xs)
    if reference == "limit":
        return np.exp(-np.exp(-xs))
    raise DomainError(f"reference must be 'exact' or 'limit', got {reference!r}")


def ks_check(sample: SimSample, reference: str, alpha: float) -> KSResult:
    """Kolmogorov-Smirnov distance of the sample against a reference CDF,
    with the distribution-free DKW band sqrt(ln(2/alpha)/(2*reps)).

    ``reference`` is 'exact' (the finite-n law) or 'limit' (Gumbel).
    Needs reps >= 1000 for the band to mean anything.
    """
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    if sample.reps < 1000:
        raise DomainError(f"ks_check needs reps >= 1000, got {sample.reps}")
    sv = np.sort(sample.values)
    ref = _reference_cdf(sample, reference, sv)
    n = sample.reps
    upper = np.arange(1, n + 1) / n - ref
    lower = ref - np.arange(0, n) / n
    d = float(max(upper.max(), lower.max()))
    bound = math.sqrt(math.log(2.0 / alpha) / (2.0 * n))
    return KSResult(statistic=d, bound=bound, passed=d <= bound)


def empirical_cdf(sample: SimSample, xs: np.ndarray) -> np.ndarray:
    """Empirical distribution of the sample at the given points."""
    sv = np.sort(sample.values)
    return np.searchsorted(sv, np.asarray(xs, dtype=float), side="right") / sample.reps
