# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Must stay bit-for-bit identical to ``_kernels_py.py``."""
import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t XORSHIFT_MULT = 0x2545F4914F6CDD1DULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _splitmix64(uint64_t x) nogil:
    cdef uint64_t z = x + GOLDEN
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t _seed_state(uint64_t seed) nogil:
    cdef uint64_t s = _splitmix64(seed)
    if s == 0:
        return GOLDEN
    return s


cdef inline double _uniform(uint64_t* state) nogil:
    cdef uint64_t x = state[0]
    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    state[0] = x
    return <double>((x * XORSHIFT_MULT) >> 11) * INV_2_53


cdef inline int64_t _poisson(uint64_t* state, const double[::1] cdf) nogil:
    cdef double u = _uniform(state)
    cdef int64_t k = 0
    cdef int64_t kmax = cdf.shape[0] - 1
    while k < kmax and u >= cdf[k]:
        k += 1
    return k


def walk_trees(const int64_t[::1] offsets, const int64_t[::1] nbr, const int64_t[::1] eid,
               const double[::1] cumw, const double[::1] deg, int64_t start, seeds):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] seed_arr = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef const uint64_t[::1] sv = seed_arr
    cdef Py_ssize_t trials = sv.shape[0]
    out_arr = np.full((trials, n), -1, dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef Py_ssize_t t, k, lo, hi, s, i
    cdef int64_t v, w, remaining
    cdef uint64_t state
    cdef double target
    with nogil:
        for t in range(trials):
            state = _seed_state(sv[t])
            for i in range(n):
                seen[i] = 0
            seen[start] = 1
            remaining = n - 1
            v = start
            while remaining > 0:
                target = _uniform(&state) * deg[v]
                lo = offsets[v]
                hi = offsets[v + 1]
                s = hi - 1
                for k in range(lo, hi):
                    if target < cumw[k]:
                        s = k
                        break
                w = nbr[s]
                if not seen[w]:
                    seen[w] = 1
                    out[t, w] = eid[s]
                    remaining -= 1
                v = w
    return out_arr


def gw_bfs(state_in, int64_t max_depth, cdf_in, int64_t max_nodes):
    cdef uint64_t state = <uint64_t>state_in
    cdef const double[::1] cdf = np.ascontiguousarray(cdf_in, dtype=np.float64)
    offspring = []
    levels = [1]
    cdef int64_t width = 1, total = 1, nxt, k, d, i
    for d in range(max_depth):
        nxt = 0
        for i in range(width):
            k = _poisson(&state, cdf)
            offspring.append(k)
            nxt += k
        total += nxt
        if total > max_nodes:
            raise OverflowError("Galton-Watson tree exceeded max_nodes")
        levels.append(nxt)
        width = nxt
        if width == 0:
            break
    offspring.extend([0] * width)
    return np.asarray(offspring, dtype=np.int64), np.asarray(levels, dtype=np.int64), int(state)


def gw_level_sizes(seeds, int64_t max_depth, cdf_in, int64_t max_nodes):
    cdef const double[::1] cdf = np.ascontiguousarray(cdf_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] seed_arr = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef const uint64_t[::1] sv = seed_arr
    cdef Py_ssize_t trials = sv.shape[0]
    out_arr = np.zeros((trials, max_depth + 1), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t t
    cdef int64_t width, total, nxt, d, i
    cdef uint64_t state
    cdef bint overflow = 0
    with nogil:
        for t in range(trials):
            state = _seed_state(sv[t])
            width = 1
            total = 1
            out[t, 0] = 1
            for d in range(1, max_depth + 1):
                nxt = 0
                for i in range(width):
                    nxt += _poisson(&state, cdf)
                total += nxt
                if total > max_nodes:
                    overflow = 1
                    break
                out[t, d] = nxt
                width = nxt
                if width == 0:
                    break
            if overflow:
                break
    if overflow:
        raise OverflowError("Galton-Watson tree exceeded max_nodes")
    return out_arr
