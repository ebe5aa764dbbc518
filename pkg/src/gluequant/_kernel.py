"""Search-kernel backend selection and shared buffer management.

The compiled extension is used when available; set GLUEQUANT_FORCE_PYTHON_KERNEL=1
to force the pure-Python fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

import numpy as np

from .errors import TooManyPoints

if os.environ.get("GLUEQUANT_FORCE_PYTHON_KERNEL"):
    from . import _se_fallback as backend

    BACKEND = "python"
else:
    try:
        from . import _se_kernel as backend  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _se_fallback as backend

        BACKEND = "python"

_START_CAP = 256


def decode_batch(upper: np.ndarray, targets: np.ndarray, want_coords: bool = False):
    """Decode a batch of coordinate-space targets; returns (dists, coords or None)."""
    targets = np.ascontiguousarray(targets, dtype=float)
    k = targets.shape[0]
    dists = np.empty(k)
    if want_coords:
        coords = np.empty((k, upper.shape[0]), dtype=np.int64)
        backend.decode_batch_coords_raw(upper, targets, dists, coords)
        return dists, coords
    backend.decode_batch_raw(upper, targets, dists)
    return dists, None


def decode_one(upper: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    d, w = decode_batch(upper, np.asarray(target, float)[None, :], want_coords=True)
    return float(d[0]), w[0]


def enum_radius(upper: np.ndarray, target: np.ndarray, r2: float, limit: int):
    """All lattice points with squared distance <= r2 from target (coordinate space).

    Returns (coords, dists) unsorted; raises TooManyPoints when more than
    `limit` points qualify.
    """
    target = np.ascontiguousarray(target, dtype=float)
    n = upper.shape[0]
    cap = min(_START_CAP, max(int(limit), 1))
    while True:
        dists = np.empty(cap)
        coords = np.empty((cap, n), dtype=np.int64)
        cnt = backend.enum_radius_raw(upper, target, r2, dists, coords)
        if cnt >= 0:
            return coords[:cnt], dists[:cnt]
        if cap >= limit:
            raise TooManyPoints(f"more than {limit} lattice points within radius^2 {r2:g}")
        cap = min(cap * 2, int(limit))
