# cython: language_level=3
"""Compiled support-enumeration kernel; same contract as ``_kernels_py``."""

from libc.stdlib cimport free, malloc


def support_sum(int m, list tables, list rest_pows, list binom):
    cdef int d = len(tables)
    cdef int i, r, kk
    cdef int *k
    cdef int *rem
    cdef object total = 0
    cdef object f
    cdef list partial

    if d == 0:
        return rest_pows[m]
    k = <int *> malloc(d * sizeof(int))
    rem = <int *> malloc(d * sizeof(int))
    if k == NULL or rem == NULL:
        free(k)
        free(rem)
        raise MemoryError()
    try:
        partial = [None] * (d + 1)
        partial[0] = 1
        rem[0] = m
        k[0] = 0
        i = 0
        while True:
            r = rem[i]
            kk = k[i]
            f = (<list> tables[i])[kk]
            if f:
                partial[i + 1] = partial[i] * (<list> binom[r])[kk] * f
                if i == d - 1:
                    total += partial[d] * rest_pows[r - kk]
                else:
                    rem[i + 1] = r - kk
                    i += 1
                    k[i] = 0
                    continue
            # advance the odometer
            while i >= 0:
                k[i] += 1
                if k[i] <= rem[i]:
                    break
                i -= 1
            if i < 0:
                break
        return total
    finally:
        free(k)
        free(rem)
