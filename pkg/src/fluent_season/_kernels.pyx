# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled season-replicate kernel.

Must stay bit-identical with ``_kernels_py.season_counts``.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL
cdef uint64_t SALT_OUTCOME = 0x6F7574636F6D6573ULL
cdef uint64_t SALT_TIE = 0x7469656272656B73ULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * M1
    z = (z ^ (z >> 27)) * M2
    return z ^ (z >> 31)


cdef inline uint64_t derive(uint64_t key, uint64_t counter) noexcept nogil:
    return mix64(key + (counter + 1) * GOLDEN)


cdef inline double to_unit(uint64_t z) noexcept nogil:
    return <double>(z >> 11) * INV_2_53


cdef inline bint ahead(int a, int b, int64_t* pts, uint64_t* tk) noexcept nogil:
    if pts[a] != pts[b]:
        return pts[a] > pts[b]
    if tk[a] != tk[b]:
        return tk[a] < tk[b]
    return a < b


def season_counts(const double[::1] c1, const double[::1] c2,
                  const int64_t[::1] home, const int64_t[::1] away,
                  const uint64_t[::1] fixture_ids, const int64_t[::1] base_points,
                  uint64_t base_key, int64_t start, int64_t stop):
    """Simulate replicates ``start..stop-1``; return (rank_counts, outcome_counts).

    ``c1``/``c2`` are the cumulative home-win and home-win+draw thresholds
    of each remaining fixture.
    """
    cdef Py_ssize_t n_fix = c1.shape[0]
    cdef Py_ssize_t n_teams = base_points.shape[0]
    rank_counts_arr = np.zeros((n_teams, n_teams), dtype=np.int64)
    outcome_counts_arr = np.zeros((n_fix, 3), dtype=np.int64)
    cdef int64_t[:, ::1] rank_counts = rank_counts_arr
    cdef int64_t[:, ::1] outcome_counts = outcome_counts_arr

    cdef int64_t* pts = <int64_t*> malloc(n_teams * sizeof(int64_t))
    cdef uint64_t* tk = <uint64_t*> malloc(n_teams * sizeof(uint64_t))
    cdef int* order = <int*> malloc(n_teams * sizeof(int))
    if pts == NULL or tk == NULL or order == NULL:
        free(pts); free(tk); free(order)
        raise MemoryError()

    cdef int64_t r
    cdef Py_ssize_t f, t, i, j
    cdef uint64_t key, okey, tkey
    cdef double u
    cdef int cur

    try:
        with nogil:
            for r in range(start, stop):
                key = derive(base_key, <uint64_t> r)
                okey = mix64(key ^ SALT_OUTCOME)
                tkey = mix64(key ^ SALT_TIE)
                for t in range(n_teams):
                    pts[t] = base_points[t]
                    tk[t] = derive(tkey, <uint64_t> t)
                for f in range(n_fix):
                    u = to_unit(derive(okey, fixture_ids[f]))
                    if u < c1[f]:
                        pts[home[f]] += 3
                        outcome_counts[f, 0] += 1
                    elif u < c2[f]:
                        pts[home[f]] += 1
                        pts[away[f]] += 1
                        outcome_counts[f, 1] += 1
                    else:
                        pts[away[f]] += 3
                        outcome_counts[f, 2] += 1
                # insertion sort into finishing order
                for i in range(n_teams):
                    cur = <int> i
                    j = i
                    while j > 0 and ahead(cur, order[j - 1], pts, tk):
                        order[j] = order[j - 1]
                        j -= 1
                    order[j] = cur
                for i in range(n_teams):
                    rank_counts[order[i], i] += 1
    finally:
        free(pts)
        free(tk)
        free(order)
    return rank_counts_arr, outcome_counts_arr
