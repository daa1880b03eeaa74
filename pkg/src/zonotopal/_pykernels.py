"""Pure-Python integer elimination kernels.

Fallback for the compiled ``_ckernels`` module; both expose the same
functions with identical semantics.  All inputs are lists of rows of Python
ints and are copied before being modified.
"""


def bareiss_det(rows):
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(row) for row in rows]
    sign = 1
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
        p = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (p * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def ff_rref(rows, ncols):
    """Fraction-free Gauss-Jordan reduction.

    Returns ``(m, pivots, d)``: every pivot row k has ``m[k][pivots[k]] == d``
    and the pivot columns are zero elsewhere, so ``m / d`` is the reduced row
    echelon form.  Rows past ``len(pivots)`` are zero.
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
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
