"""Normalized-second-moment estimation and exact product composition.

The Monte Carlo estimator draws u uniform in [0,1)^n, decodes the coordinate
vector directly (x = uB has basis coordinates u), and averages the per-sample
statistic ||e||^2 / (n V^{2/n}).  Samples split across independent
counter-based substreams keyed by (seed, stream); partial sums merge in
stream order, so results are identical for any worker-thread count.

Rescaling a lattice by a power of two changes every intermediate quantity by
an exact power of two, including the n-th root of the determinant (computed
through its binary exponent), so estimates are bit-identical under such
rescalings with a shared seed.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernel import decode_batch
from .core import Lattice
from .cvp import context_for

CHUNK = 1 << 16
THREADS_ENV = "GLUEQUANT_THREADS"


def _nth_root(x: float, n: int) -> float:
    """x**(1/n) computed so that scaling x by 2**(k*n) scales the root by exactly 2**k."""
    m, e = math.frexp(x)
    q, r = divmod(e, n)
    return math.ldexp(math.ldexp(m, r) ** (1.0 / n), q)


def _stream_counts(samples: int, streams: int) -> list[int]:
    base, extra = divmod(samples, streams)
    return [base + (1 if j < extra else 0) for j in range(streams)]


def _stream_rng(seed: int, j: int) -> np.random.Generator:
    key = np.array([seed % 2**64, j], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _worker_count(streams: int) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return max(1, min(streams, os.cpu_count() or 1))


def _map_streams(fn, streams: int):
    workers = _worker_count(streams)
    if workers == 1 or streams == 1:
        return [fn(j) for j in range(streams)]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, range(streams)))


@dataclass(frozen=True)
class NsmEstimate:
    lattice_id: str
    samples: int
    g_hat: float
    sigma_hat: float
    seed: int
    streams: int

    def to_json(self) -> dict:
        return {
            "lattice_id": self.lattice_id,
            "samples": self.samples,
            "g_hat": self.g_hat,
            "sigma_hat": self.sigma_hat,
            "two_sigma": 2 * self.sigma_hat,
            "seed": self.seed,
            "streams": self.streams,
        }


@dataclass(frozen=True)
class CovarianceEstimate:
    matrix: np.ndarray
    samples: int
    max_offdiag_ratio: float
    diag_spread: float
    seed: int
    streams: int

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "samples": self.samples,
            "max_offdiag_ratio": self.max_offdiag_ratio,
            "diag_spread": self.diag_spread,
            "seed": self.seed,
            "streams": self.streams,
        }


def estimate_nsm(
    lattice: Lattice,
    samples: int,
    seed: int = 1,
    streams: int = 1,
    lattice_id: str | None = None,
) -> NsmEstimate:
    """Seeded Monte Carlo NSM estimate with a standard-error estimate."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if streams < 1:
        raise ValueError("streams must be >= 1")
    ctx = context_for(lattice)
    n = lattice.dimension
    upper = ctx.upper
    counts = _stream_counts(samples, streams)

    def run(j: int) -> tuple[float, float]:
        rng = _stream_rng(seed, j)
        remaining = counts[j]
        s1 = 0.0
        s2 = 0.0
        while remaining:
            k = min(CHUNK, remaining)
            u = rng.random((k, n))
            d, _ = decode_batch(upper, u)
            s1 += float(d.sum())
            s2 += float(d @ d)
            remaining -= k
        return s1, s2

    parts = _map_streams(run, streams)
    s1 = 0.0
    s2 = 0.0
    for a, b in parts:
        s1 += a
        s2 += b
    norm = _nth_root(lattice.det_gram, n)   # V^(2/n)
    mean_d = s1 / samples
    g_hat = mean_d / n / norm
    var_d = (s2 - samples * (mean_d * mean_d)) / (samples - 1)
    if var_d < 0.0:
        var_d = 0.0
    sigma_hat = math.sqrt(var_d / samples) / n / norm
    return NsmEstimate(
        lattice_id=lattice_id or lattice.name or "lattice",
        samples=samples,
        g_hat=g_hat,
        sigma_hat=sigma_hat,
        seed=seed,
        streams=streams,
    )


def estimate_covariance(
    lattice: Lattice,
    samples: int,
    seed: int = 1,
    streams: int = 1,
) -> CovarianceEstimate:
    """Second-moment matrix of the quantization error over the same sample streams."""
    n = lattice.dimension
    if samples < n + 1:
        raise ValueError("samples must be >= dimension + 1")
    if streams < 1:
        raise ValueError("streams must be >= 1")
    ctx = context_for(lattice)
    upper = ctx.upper
    basis = lattice.basis
    m = lattice.ambient_dim
    counts = _stream_counts(samples, streams)

    def run(j: int) -> np.ndarray:
        rng = _stream_rng(seed, j)
        remaining = counts[j]
        acc = np.zeros((m, m))
        while remaining:
            k = min(CHUNK, remaining)
            u = rng.random((k, n))
            _, w = decode_batch(upper, u, want_coords=True)
            err = (u - w) @ basis
            acc += err.T @ err
            remaining -= k
        return acc

    parts = _map_streams(run, streams)
    total = np.zeros((m, m))
    for p in parts:
        total += p
    mat = total / samples
    mat = (mat + mat.T) / 2
    diag = np.diag(mat)
    off = mat - np.diag(diag)
    max_off = float(np.max(np.abs(off))) if m > 1 else 0.0
    return CovarianceEstimate(
        matrix=mat,
        samples=samples,
        max_offdiag_ratio=max_off / float(diag.mean()),
        diag_spread=float(diag.max() / diag.min()) - 1.0,
        seed=seed,
        streams=streams,
    )


def product_nsm(n1: int, g1: float, v1: float, n2: int, g2: float, v2: float) -> float:
    """Exact NSM of a product from the component dimensions, NSMs, and volumes."""
    if min(n1, n2) < 1 or min(g1, g2, v1, v2) <= 0:
        raise ValueError("dimensions, NSMs, and volumes must be positive")
    num = n1 * g1 * v1 ** (2.0 / n1) + n2 * g2 * v2 ** (2.0 / n2)
    return num / ((n1 + n2) * (v1 * v2) ** (2.0 / (n1 + n2)))


def optimize_scale_with_z(n1: int, g1: float, v1: float) -> tuple[float, float]:
    """Best scale a for appending a one-dimensional lattice a*Z to a quantizer.

    The first-order condition equalizes the per-dimension normalized second
    moments of the two factors: a^2 = 12 g1 v1^(2/n1).
    """
    if n1 < 1 or g1 <= 0 or v1 <= 0:
        raise ValueError("inputs must be positive")
    x = g1 * v1 ** (2.0 / n1)
    a = math.sqrt(12.0 * x)
    combined = product_nsm(n1, g1, v1, 1, 1.0 / 12.0, a)
    return a, combined
