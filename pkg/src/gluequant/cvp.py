"""Closest-vector queries and bounded-radius enumeration.

A DecoderContext caches the triangular factorization of the Gram matrix; all
searches run in basis-coordinate space, where the squared ambient distance
between real coordinates y and integer coordinates w is (y-w) gram (y-w)^T.
Boundary ties are broken deterministically: among minimizers, the integer
coordinate vector that is lexicographically smallest wins.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _kernel
from .core import Lattice, coordinates
from .errors import NotInSpan

TIE_EPS = 1e-9           # squared-distance tolerance for minimizer ties
DEFAULT_LIMIT = 10_000_000


class DecoderContext:
    """Immutable preprocessing for closest-point searches on one lattice."""

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        gram = lattice.gram
        try:
            lower = np.linalg.cholesky(gram)
        except np.linalg.LinAlgError:
            # Near-degenerate Gram: fall back to QR of the basis, gram = R^T R.
            _, r = np.linalg.qr(lattice.basis.T)
            signs = np.sign(np.diag(r))
            signs[signs == 0] = 1.0
            lower = (signs[:, None] * r).T
        self.lower = lower
        self.upper = np.ascontiguousarray(lower.T)


@lru_cache(maxsize=64)
def context_for(lattice: Lattice) -> DecoderContext:
    return DecoderContext(lattice)


class CvpResult(NamedTuple):
    point: np.ndarray      # closest lattice vector (ambient)
    coords: np.ndarray     # its integer coordinates
    dist2: float           # squared distance within the lattice span
    residual2: float       # squared off-span component of the query


def _coords_or_raise(ctx: DecoderContext, target, project: bool) -> tuple[np.ndarray, float]:
    y, resid = coordinates(ctx.lattice, target)
    if not project and resid >= 1e-9:
        raise NotInSpan(f"off-span residual {resid:.3e}; pass project=True to decode the projection")
    return y, resid


def closest_point(ctx: DecoderContext, target, project: bool = False) -> CvpResult:
    """Exact closest lattice point to an ambient target."""
    y, resid = _coords_or_raise(ctx, target, project)
    d, _ = _kernel.decode_one(ctx.upper, y)
    coords, dists = _kernel.enum_radius(ctx.upper, y, d + TIE_EPS, DEFAULT_LIMIT)
    order = sorted(range(len(dists)), key=lambda i: tuple(coords[i]))
    pick = order[0]
    w = coords[pick]
    return CvpResult(
        point=w @ ctx.lattice.basis,
        coords=w,
        dist2=float(dists[pick]),
        residual2=resid * resid,
    )


def all_closest_points(ctx: DecoderContext, target, project: bool = False) -> list[CvpResult]:
    """Every minimizer within the tie tolerance, in lexicographic coordinate order."""
    y, resid = _coords_or_raise(ctx, target, project)
    d, _ = _kernel.decode_one(ctx.upper, y)
    coords, dists = _kernel.enum_radius(ctx.upper, y, d + TIE_EPS, DEFAULT_LIMIT)
    order = sorted(range(len(dists)), key=lambda i: tuple(coords[i]))
    return [
        CvpResult(coords[i] @ ctx.lattice.basis, coords[i], float(dists[i]), resid * resid)
        for i in order
    ]


def enumerate_within(ctx: DecoderContext, center, radius2: float, limit: int = DEFAULT_LIMIT):
    """All lattice points p with ||p - center||^2 <= radius2 + 1e-9, each exactly once.

    Returns a list of (point, squared_distance) sorted by distance then
    lexicographic coordinates.
    """
    if radius2 <= 0:
        raise ValueError("radius2 must be positive")
    y, _ = _coords_or_raise(ctx, center, project=False)
    coords, dists = _kernel.enum_radius(ctx.upper, y, radius2 + 1e-9, limit)
    order = sorted(range(len(dists)), key=lambda i: (dists[i], tuple(coords[i])))
    basis = ctx.lattice.basis
    return [(coords[i] @ basis, float(dists[i])) for i in order]


def enum_coords(ctx: DecoderContext, y_coords, radius2: float, limit: int = DEFAULT_LIMIT):
    """Coordinate-space variant of enumerate_within returning (coords, dists) arrays."""
    return _kernel.enum_radius(ctx.upper, np.asarray(y_coords, float), radius2, limit)


def decode_coords(ctx: DecoderContext, y_coords) -> tuple[float, np.ndarray]:
    """Coordinate-space closest-point squared distance plus minimizing coordinates."""
    return _kernel.decode_one(ctx.upper, np.asarray(y_coords, float))
