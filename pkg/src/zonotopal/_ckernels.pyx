# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer elimination kernels (same contract as ``_pykernels``)."""


def bareiss_det(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    cdef list m, rk, ri
    if n == 0:
        return 1
    m = [list(row) for row in rows]
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = m[k]
        p = rk[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (p * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def ff_rref(rows, Py_ssize_t ncols):
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list pivots = []
    cdef list rr, ri
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        rr = m[r]
        p = rr[c]
        for i in range(nrows):
            if i == r:
                continue
            ri = m[i]
            a = ri[c]
            if a == 0:
                if p != prev:
                    for j in range(ncols):
                        if ri[j]:
                            ri[j] = (p * ri[j]) // prev
            else:
                for j in range(ncols):
                    ri[j] = (p * ri[j] - a * rr[j]) // prev
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots, prev
