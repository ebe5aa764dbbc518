"""Pure-Python twin of the compiled search kernels.

Depth-first zig-zag enumeration on an upper-triangular factor U of the Gram
matrix (gram = U^T U): the squared distance between real coordinates y and
integer coordinates w is ||U (y - w)||^2.  Candidates at each level are
visited in the order round(c), round(c)+s, round(c)-s, ... so the per-level
contribution never decreases and a failed bound check abandons the level.

This module must stay step-for-step identical to _se_kernel.pyx: same
expressions, same accumulation order, so both backends return bit-identical
results.
"""

from __future__ import annotations

import math

MAXN = 48


def _closest(u_rows, n, y, wbest):
    """Smallest ||U(y-w)||^2 over integer w; fills wbest with the minimizer."""
    dist_above = [0.0] * n
    cent = [0.0] * n
    wcur = [0.0] * n
    step = [0.0] * n
    best = math.inf
    i = n - 1
    cent[i] = y[i]
    wcur[i] = math.floor(y[i] + 0.5)
    step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
    while True:
        diff = cent[i] - wcur[i]
        t = u_rows[i][i] * diff
        d = dist_above[i] + t * t
        if d < best:
            if i == 0:
                best = d
                wbest[:] = wcur
                wcur[0] += step[0]
                step[0] = -step[0] - (1.0 if step[0] > 0.0 else -1.0)
            else:
                dist_above[i - 1] = d
                i -= 1
                row = u_rows[i]
                t = 0.0
                for j in range(i + 1, n):
                    t += row[j] * (y[j] - wcur[j])
                cent[i] = y[i] + t / row[i]
                wcur[i] = math.floor(cent[i] + 0.5)
                step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
        else:
            if i == n - 1:
                return best
            i += 1
            wcur[i] += step[i]
            step[i] = -step[i] - (1.0 if step[i] > 0.0 else -1.0)


def _enum(u_rows, n, y, r2, out_d, found, cap):
    """All integer w with ||U(y-w)||^2 <= r2; returns the count or -1 if cap is hit."""
    dist_above = [0.0] * n
    cent = [0.0] * n
    wcur = [0.0] * n
    step = [0.0] * n
    cnt = 0
    i = n - 1
    cent[i] = y[i]
    wcur[i] = math.floor(y[i] + 0.5)
    step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
    while True:
        diff = cent[i] - wcur[i]
        t = u_rows[i][i] * diff
        d = dist_above[i] + t * t
        if d <= r2:
            if i == 0:
                if cnt == cap:
                    return -1
                out_d[cnt] = d
                found.append([int(w) for w in wcur])
                cnt += 1
                wcur[0] += step[0]
                step[0] = -step[0] - (1.0 if step[0] > 0.0 else -1.0)
            else:
                dist_above[i - 1] = d
                i -= 1
                row = u_rows[i]
                t = 0.0
                for j in range(i + 1, n):
                    t += row[j] * (y[j] - wcur[j])
                cent[i] = y[i] + t / row[i]
                wcur[i] = math.floor(cent[i] + 0.5)
                step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
        else:
            if i == n - 1:
                return cnt
            i += 1
            wcur[i] += step[i]
            step[i] = -step[i] - (1.0 if step[i] > 0.0 else -1.0)


def _check_dim(n):
    if n > MAXN:
        raise ValueError(f"dimension {n} exceeds kernel limit {MAXN}")


def decode_batch_raw(upper, targets, out_dist):
    """Closest-point squared distances for each row of targets (basis coordinates)."""
    n = upper.shape[0]
    _check_dim(n)
    u_rows = upper.tolist()
    wbest = [0.0] * n
    for r, y in enumerate(targets.tolist()):
        out_dist[r] = _closest(u_rows, n, y, wbest)


def decode_batch_coords_raw(upper, targets, out_dist, out_coords):
    """As decode_batch_raw, also storing the integer coordinates of each minimizer."""
    n = upper.shape[0]
    _check_dim(n)
    u_rows = upper.tolist()
    wbest = [0.0] * n
    for r, y in enumerate(targets.tolist()):
        out_dist[r] = _closest(u_rows, n, y, wbest)
        for j in range(n):
            out_coords[r, j] = int(wbest[j])


def enum_radius_raw(upper, target, r2, out_dist, out_coords):
    """Fill buffers with all points within squared radius r2 of target; -1 if full."""
    n = upper.shape[0]
    _check_dim(n)
    u_rows = upper.tolist()
    cap = out_dist.shape[0]
    found: list[list[int]] = []
    cnt = _enum(u_rows, n, target.tolist(), r2, out_dist, found, cap)
    for r, row in enumerate(found):
        out_coords[r] = row
    return cnt
