"""Voronoi-region geometry: relevant vectors, minimal vectors, packing and
covering figures, hole verification, and coset shell counts.

Relevant vectors come from the coset-midpoint method: for each nonzero class
c of L/2L, decode the midpoint c/2; the class contributes a +/- pair exactly
when the midpoint has two minimizers.  Squared-norm comparisons use a 1e-9
absolute tolerance; the catalog lattices have well-separated shells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernel import decode_batch
from .core import Lattice, coordinates
from .cvp import context_for, decode_coords, enum_coords
from .errors import DimensionTooLarge
from .glue import GlueVector

NORM_TOL = 1e-9
MAX_DIM = 16
_CHUNK = 1 << 15


def ball_volume(n: int, radius: float) -> float:
    """Volume of the n-ball of the given radius."""
    return math.pi ** (n / 2) * radius**n / math.gamma(n / 2 + 1)


@lru_cache(maxsize=32)
def _relevant_coords(lattice: Lattice) -> tuple[np.ndarray, np.ndarray]:
    """Integer coordinates of all Voronoi-relevant vectors plus their squared norms."""
    n = lattice.dimension
    if n > MAX_DIM:
        raise DimensionTooLarge(f"relevant vectors need 2^{n} closest-point calls")
    ctx = context_for(lattice)
    pairs = []
    for mask in range(1, 1 << n):
        eps = np.array([(mask >> b) & 1 for b in range(n)], dtype=float)
        y = eps / 2.0
        d, _ = decode_coords(ctx, y)
        coords, dists = enum_coords(ctx, y, d + NORM_TOL, limit=1 << 20)
        if coords.shape[0] == 2:
            for row, dd in zip(coords, dists):
                v = eps.astype(np.int64) - 2 * row
                pairs.append((4.0 * float(dd), tuple(v)))
    pairs.sort()
    coords = np.array([p[1] for p in pairs], dtype=np.int64).reshape(len(pairs), n)
    norms = np.array([p[0] for p in pairs])
    return coords, norms


def relevant_vectors(lattice: Lattice) -> np.ndarray:
    """All Voronoi-relevant (facet-defining) vectors, one row each."""
    coords, _ = _relevant_coords(lattice)
    return coords @ lattice.basis


def minimal_vectors(lattice: Lattice) -> tuple[float, int]:
    """(smallest nonzero squared norm, number of vectors attaining it)."""
    _, norms = _relevant_coords(lattice)
    mn = float(norms.min())
    kissing = int(np.sum(norms <= mn + NORM_TOL))
    return mn, kissing


def packing_density(lattice: Lattice) -> float:
    """Fraction of space covered by balls of the packing radius on lattice points."""
    mn, _ = minimal_vectors(lattice)
    return ball_volume(lattice.dimension, math.sqrt(mn) / 2) / lattice.volume


def thickness(lattice: Lattice, covering_radius: float) -> float:
    """Normalized covering volume for an asserted covering radius."""
    return ball_volume(lattice.dimension, covering_radius) / lattice.volume


def verify_hole(lattice: Lattice, candidate, expected_dist2: float) -> bool:
    """Whether the candidate sits at the expected squared distance from the lattice."""
    u, resid = coordinates(lattice, candidate)
    d, _ = decode_coords(context_for(lattice), u)
    return abs(d + resid * resid - expected_dist2) <= NORM_TOL


def covering_radius_sample_bound(lattice: Lattice, samples: int, seed: int) -> float:
    """Largest sampled point-to-lattice distance: a lower bound on the covering radius.

    Samples are uniform in the fundamental parallelepiped from a single
    counter-based stream, so the bound is nondecreasing as `samples` grows.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ctx = context_for(lattice)
    n = lattice.dimension
    rng = np.random.Generator(np.random.Philox(key=np.array([seed % 2**64, 0], dtype=np.uint64)))
    worst = 0.0
    remaining = samples
    while remaining:
        k = min(_CHUNK, remaining)
        u = rng.random((k, n))
        d, _ = decode_batch(ctx.upper, u)
        worst = max(worst, float(d.max()))
        remaining -= k
    return math.sqrt(worst)


def coset_shell_count(lattice: Lattice, glue: GlueVector, norm2: float) -> int:
    """Number of vectors in the coset glue+L with squared norm equal to norm2."""
    if norm2 <= 0:
        raise ValueError("norm2 must be positive")
    ctx = context_for(lattice)
    y = -np.array([float(c) for c in glue.coords])
    _, dists = enum_coords(ctx, y, norm2 + NORM_TOL, limit=10_000_000)
    return int(np.sum(np.abs(dists - norm2) <= NORM_TOL))


@dataclass(frozen=True)
class VoronoiSummary:
    relevant_count: int
    min_norm2: float
    kissing: int
    packing_radius: float
    packing_density: float
    covering_radius: float | None = None
    covering_radius_source: str | None = None   # "asserted" or "sampled"
    thickness: float | None = None

    def to_json(self) -> dict:
        return {
            "relevant_count": self.relevant_count,
            "min_norm2": self.min_norm2,
            "kissing": self.kissing,
            "packing_radius": self.packing_radius,
            "packing_density": self.packing_density,
            "covering_radius": self.covering_radius,
            "covering_radius_source": self.covering_radius_source,
            "thickness": self.thickness,
        }


def summarize(
    lattice: Lattice,
    covering_radius: float | None = None,
    covering_samples: int = 0,
    seed: int = 1,
) -> VoronoiSummary:
    """Facet, kissing, and density figures, with optional covering-radius data."""
    coords, norms = _relevant_coords(lattice)
    mn = float(norms.min())
    kissing = int(np.sum(norms <= mn + NORM_TOL))
    source = None
    thick = None
    if covering_radius is not None:
        source = "asserted"
        thick = thickness(lattice, covering_radius)
    elif covering_samples > 0:
        covering_radius = covering_radius_sample_bound(lattice, covering_samples, seed)
        source = "sampled"
    return VoronoiSummary(
        relevant_count=int(coords.shape[0]),
        min_norm2=mn,
        kissing=kissing,
        packing_radius=math.sqrt(mn) / 2,
        packing_density=ball_volume(lattice.dimension, math.sqrt(mn) / 2) / lattice.volume,
        covering_radius=covering_radius,
        covering_radius_source=source,
        thickness=thick,
    )
