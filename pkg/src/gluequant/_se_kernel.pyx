# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels: depth-first zig-zag enumeration on a triangular factor.

Mirrors _se_fallback.py step for step; keep the arithmetic expressions and
their order identical in both files so the backends return bit-identical
results (the build deliberately avoids fast-math and FMA contraction).
"""

from libc.math cimport INFINITY, floor

DEF MAXN = 48


cdef double _closest(const double* u, int n, const double* y, double* wbest) nogil:
    cdef double dist_above[MAXN]
    cdef double cent[MAXN]
    cdef double wcur[MAXN]
    cdef double step[MAXN]
    cdef double best = INFINITY
    cdef double diff, t, d
    cdef int i, j
    i = n - 1
    dist_above[i] = 0.0
    cent[i] = y[i]
    wcur[i] = floor(y[i] + 0.5)
    step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
    while True:
        diff = cent[i] - wcur[i]
        t = u[i * n + i] * diff
        d = dist_above[i] + t * t
        if d < best:
            if i == 0:
                best = d
                for j in range(n):
                    wbest[j] = wcur[j]
                wcur[0] += step[0]
                step[0] = -step[0] - (1.0 if step[0] > 0.0 else -1.0)
            else:
                dist_above[i - 1] = d
                i -= 1
                t = 0.0
                for j in range(i + 1, n):
                    t += u[i * n + j] * (y[j] - wcur[j])
                cent[i] = y[i] + t / u[i * n + i]
                wcur[i] = floor(cent[i] + 0.5)
                step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
        else:
            if i == n - 1:
                return best
            i += 1
            wcur[i] += step[i]
            step[i] = -step[i] - (1.0 if step[i] > 0.0 else -1.0)


cdef long long _enum(const double* u, int n, const double* y, double r2,
                     double* out_d, long long* out_w, long long cap) nogil:
    cdef double dist_above[MAXN]
    cdef double cent[MAXN]
    cdef double wcur[MAXN]
    cdef double step[MAXN]
    cdef double diff, t, d
    cdef long long cnt = 0
    cdef int i, j
    i = n - 1
    dist_above[i] = 0.0
    cent[i] = y[i]
    wcur[i] = floor(y[i] + 0.5)
    step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
    while True:
        diff = cent[i] - wcur[i]
        t = u[i * n + i] * diff
        d = dist_above[i] + t * t
        if d <= r2:
            if i == 0:
                if cnt == cap:
                    return -1
                out_d[cnt] = d
                for j in range(n):
                    out_w[cnt * n + j] = <long long> wcur[j]
                cnt += 1
                wcur[0] += step[0]
                step[0] = -step[0] - (1.0 if step[0] > 0.0 else -1.0)
            else:
                dist_above[i - 1] = d
                i -= 1
                t = 0.0
                for j in range(i + 1, n):
                    t += u[i * n + j] * (y[j] - wcur[j])
                cent[i] = y[i] + t / u[i * n + i]
                wcur[i] = floor(cent[i] + 0.5)
                step[i] = 1.0 if cent[i] >= wcur[i] else -1.0
        else:
            if i == n - 1:
                return cnt
            i += 1
            wcur[i] += step[i]
            step[i] = -step[i] - (1.0 if step[i] > 0.0 else -1.0)


def decode_batch_raw(const double[:, ::1] upper, const double[:, ::1] targets,
                     double[::1] out_dist):
    """Closest-point squared distances for each row of targets (basis coordinates)."""
    cdef int n = <int> upper.shape[0]
    if n > MAXN:
        raise ValueError(f"dimension {n} exceeds kernel limit {MAXN}")
    cdef Py_ssize_t k = targets.shape[0]
    cdef double wbest[MAXN]
    cdef const double* uptr = &upper[0, 0]
    cdef Py_ssize_t r
    with nogil:
        for r in range(k):
            out_dist[r] = _closest(uptr, n, &targets[r, 0], wbest)


def decode_batch_coords_raw(const double[:, ::1] upper, const double[:, ::1] targets,
                            double[::1] out_dist, long long[:, ::1] out_coords):
    """As decode_batch_raw, also storing the integer coordinates of each minimizer."""
    cdef int n = <int> upper.shape[0]
    if n > MAXN:
        raise ValueError(f"dimension {n} exceeds kernel limit {MAXN}")
    cdef Py_ssize_t k = targets.shape[0]
    cdef double wbest[MAXN]
    cdef const double* uptr = &upper[0, 0]
    cdef Py_ssize_t r
    cdef int j
    with nogil:
        for r in range(k):
            out_dist[r] = _closest(uptr, n, &targets[r, 0], wbest)
            for j in range(n):
                out_coords[r, j] = <long long> wbest[j]


def enum_radius_raw(const double[:, ::1] upper, const double[::1] target, double r2,
                    double[::1] out_dist, long long[:, ::1] out_coords):
    """Fill buffers with all points within squared radius r2 of target; -1 if full."""
    cdef int n = <int> upper.shape[0]
    if n > MAXN:
        raise ValueError(f"dimension {n} exceeds kernel limit {MAXN}")
    cdef long long cap = out_dist.shape[0]
    cdef long long cnt
    with nogil:
        cnt = _enum(&upper[0, 0], n, &target[0], r2, &out_dist[0], &out_coords[0, 0], cap)
    return cnt
