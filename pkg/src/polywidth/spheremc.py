"""Uniform sampling on the unit sphere and Monte Carlo width estimators.

Points are drawn by normalizing standard Gaussian vectors.  Sampling is
chunked, and each chunk derives its own generator from (seed, chunk index),
so a sample is reproducible bit-for-bit and chunks may be generated in any
order or in parallel without changing the result.

Every estimator returns an Estimate carrying the value, its standard error,
the sample size and the seed; bare numbers are never reported.
"""

from dataclasses import dataclass

import numpy as np

from .polytope import Polytope, gauge_batch, polar_dual, support_batch

CHUNK_SIZE = 1 << 16
_NORM_FLOOR = 1e-12


@dataclass(frozen=True)
class SphereSample:
    """A batch of i.i.d. uniform unit vectors with seed provenance."""

    dim: int
    count: int
    seed: int
    points: np.ndarray

    def __post_init__(self):
        if self.points.shape != (self.count, self.dim):
            raise ValueError("points shape does not match (count, dim)")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo value with its standard error and provenance."""

    value: float
    std_error: float
    count: int
    seed: int

    def __post_init__(self):
        if self.count <= 0:
            raise ValueError("count must be positive")
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")


def _chunk_generator(seed, index):
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def sample_sphere(dim: int, count: int, seed: int) -> SphereSample:
    """Draw ``count`` i.i.d. uniform points on the unit sphere in R^dim."""
    if dim < 1 or count < 1:
        raise ValueError("dim and count must be at least 1")
    points = np.empty((count, dim))
    for index, start in enumerate(range(0, count, CHUNK_SIZE)):
        m = min(CHUNK_SIZE, count - start)
        rng = _chunk_generator(seed, index)
        block = rng.standard_normal((m, dim))
        norms = np.linalg.norm(block, axis=1)
        while (bad := norms < _NORM_FLOOR).any():
            block[bad] = rng.standard_normal((int(bad.sum()), dim))
            norms[bad] = np.linalg.norm(block[bad], axis=1)
        points[start:start + m] = block / norms[:, None]
    points.flags.writeable = False
    return SphereSample(dim, count, seed, points)


def _mean_estimate(values, seed) -> Estimate:
    n = values.size
    spread = float(values.std(ddof=1)) if n > 1 else 0.0
    return Estimate(float(values.mean()), spread / np.sqrt(n), n, seed)


def _fraction_estimate(hits, seed) -> Estimate:
    n = hits.size
    p = float(hits.mean())
    return Estimate(p, np.sqrt(p * (1.0 - p) / n), n, seed)


def gauge_series(p: Polytope, sample: SphereSample) -> np.ndarray:
    """Gauge value at every sampled direction, in sample order."""
    if p.dim != sample.dim:
        raise ValueError("sample dimension does not match polytope dimension")
    return gauge_batch(p, sample.points)


def support_series(p: Polytope, sample: SphereSample) -> np.ndarray:
    """Support value at every sampled direction, in sample order.

    Falls back to the gauge of the polar body when no vertex representation
    is stored, which is the same function.
    """
    if p.dim != sample.dim:
        raise ValueError("sample dimension does not match polytope dimension")
    if p.vrep is not None:
        return support_batch(p, sample.points)
    return gauge_batch(polar_dual(p), sample.points)


def mean_gauge(p: Polytope, sample: SphereSample) -> Estimate:
    """Spherical mean of the gauge: the width parameter M(P)."""
    return _mean_estimate(gauge_series(p, sample), sample.seed)


def mean_support(p: Polytope, sample: SphereSample) -> Estimate:
    """Spherical mean of the support function: the width parameter M*(P)."""
    return _mean_estimate(support_series(p, sample), sample.seed)


def product_from_series(g: np.ndarray, h: np.ndarray, seed: int) -> Estimate:
    """Estimate of mean(g) * mean(h) from two series sharing one sample.

    The standard error combines both spreads and their covariance by the
    delta method; the series are correlated, so the independent-sum formula
    would be biased low.
    """
    n = g.size
    gm, hm = g.mean(), h.mean()
    if n > 1:
        cov = np.cov(g, h, ddof=1)
        var = hm * hm * cov[0, 0] + gm * gm * cov[1, 1] + 2 * gm * hm * cov[0, 1]
        se = float(np.sqrt(max(var, 0.0) / n))
    else:
        se = 0.0
    return Estimate(float(gm * hm), se, n, seed)


def width_product(p: Polytope, sample: SphereSample) -> Estimate:
    """Product of the two mean widths, M(P) * M*(P), from one sample."""
    return product_from_series(gauge_series(p, sample),
                               support_series(p, sample), sample.seed)


def cap_measure(u, eps: float, sample: SphereSample) -> Estimate:
    """Empirical measure of the cap ``{theta : <theta, u> < eps}``.

    The standard error is binomial.  ``u`` must be a unit vector of the
    sample's dimension.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (sample.dim,):
        raise ValueError("u must have the sample dimension")
    if not np.isclose(np.linalg.norm(u), 1.0, atol=1e-9):
        raise ValueError("u must be a unit vector")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    return _fraction_estimate(sample.points @ u < eps, sample.seed)


def cap_lower_bound(dim: int, eps: float) -> float:
    """Concentration lower bound ``1 - exp(-dim * eps^2 / 2)`` for the cap measure."""
    return 1.0 - np.exp(-dim * eps * eps / 2.0)


def support_tail(p: Polytope, t: float, sample: SphereSample) -> Estimate:
    """Empirical fraction of directions whose support value exceeds ``t``."""
    if t <= 0:
        raise ValueError("t must be positive")
    return _fraction_estimate(_support_values(p, sample) > t, sample.seed)


def support_tail_bound(num_vertices: int, radius: float, dim: int, t: float) -> float:
    """Union-of-caps tail bound ``min(1, |V| exp(-dim (t/R)^2 / 2))``."""
    return float(min(1.0, num_vertices * np.exp(-0.5 * dim * (t / radius) ** 2)))
