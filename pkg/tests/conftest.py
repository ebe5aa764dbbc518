"""Shared test oracles: brute-force CVP, box enumeration, and an LLL-style
reduction that tolerates dependent rows (cross-checks the HNF synthesis)."""

from __future__ import annotations

import numpy as np

from gluequant.core import Lattice, coordinates, make_lattice


def brute_force_closest(lattice: Lattice, target, halfwidth: int = 5):
    """Exhaustive CVP over an integer box around the rounded least-squares solution.

    Ties on squared distance (within 1e-9) break to the lexicographically
    smallest coordinate vector, matching the decoder contract.
    """
    u, _ = coordinates(lattice, target)
    center = np.rint(u).astype(np.int64)
    n = lattice.dimension
    axes = [np.arange(c - halfwidth, c + halfwidth + 1) for c in center]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    pts = grid @ lattice.basis
    d2 = np.sum((pts - np.asarray(target, float)) ** 2, axis=1)
    dmin = float(d2.min())
    mask = d2 <= dmin + 1e-9
    cands = grid[mask]
    dists = d2[mask]
    order = min(range(len(cands)), key=lambda i: tuple(cands[i]))
    return float(dists[order]), cands[order]


def brute_force_count_within(lattice: Lattice, center, radius2, halfwidth: int = 5):
    """Count lattice points within squared radius of a point by box enumeration."""
    u, _ = coordinates(lattice, center)
    c0 = np.rint(u).astype(np.int64)
    n = lattice.dimension
    axes = [np.arange(c - halfwidth, c + halfwidth + 1) for c in c0]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    pts = grid @ lattice.basis
    d2 = np.sum((pts - np.asarray(center, float)) ** 2, axis=1)
    return int(np.sum(d2 <= radius2 + 1e-9))


def random_lattice(rng: np.random.Generator, n: int, m: int | None = None) -> Lattice:
    """Random lattice for fuzzing, conditioned so the box oracle stays exhaustive."""
    m = m or n
    while True:
        b = rng.normal(size=(n, m)) + np.eye(n, m) * 2.0
        if np.linalg.cond(b) > 8.0:
            continue
        try:
            return make_lattice(b)
        except Exception:
            continue


def mlll_reduce(rows, delta: float = 0.75, max_iter: int = 200000) -> np.ndarray:
    """LLL-style reduction of possibly dependent integer rows.

    Row operations stay exact over the integers; Gram-Schmidt data is floating
    point.  Dependent vectors shrink to exact zero and are dropped, so the
    result is an independent basis of the integer row span.
    """
    b = [[int(x) for x in r] for r in rows]
    it = 0
    k = 1
    while k < len(b):
        it += 1
        if it > max_iter:
            raise RuntimeError("reduction did not terminate")
        prefix = [np.array(v, float) for v in b[: k + 1]]
        star: list[np.ndarray] = []
        mu = np.zeros((k + 1, k + 1))
        for i, v in enumerate(prefix):
            w = v.copy()
            for j in range(i):
                den = float(star[j] @ star[j])
                mu[i, j] = 0.0 if den < 1e-12 else float(v @ star[j]) / den
                w = w - mu[i, j] * star[j]
            star.append(w)
        reduced = False
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                reduced = True
        if reduced:
            continue
        if not any(b[k]):
            del b[k]
            k = max(min(k, len(b) - 1), 1)
            continue
        norm_k = float(star[k] @ star[k])
        if norm_k < 1e-9:
            b[k - 1], b[k] = b[k], b[k - 1]
            k = max(k - 1, 1)
            continue
        if norm_k >= (delta - mu[k, k - 1] ** 2) * float(star[k - 1] @ star[k - 1]):
            k += 1
        else:
            b[k - 1], b[k] = b[k], b[k - 1]
            k = max(k - 1, 1)
    return np.array(b, dtype=np.int64)
