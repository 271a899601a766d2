# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython reduced row echelon form over exact rationals.

Same contract as valdef.linalg.reference.rref.  Entries are kept as
reduced (numerator, denominator) pairs of Python ints so the elimination
loop avoids Fraction's per-operation dispatch; results are converted back
to Fraction at the end.  Denominators stay positive throughout.
"""

from fractions import Fraction
from math import gcd

BACKEND = "cython"


def rref(rows):
    """Gauss-Jordan elimination; returns (reduced, pivots)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef Py_ssize_t r, c, i, j, sel
    cdef list nums = [], dens = []
    cdef list row, nrow, drow, pnum, pden
    cdef object x, n, d, f_n, f_d, g, a_n, a_d, b_n, b_d

    for row in [list(rr) for rr in rows]:
        nrow = []
        drow = []
        for x in row:
            f = Fraction(x)
            nrow.append(f.numerator)
            drow.append(f.denominator)
        nums.append(nrow)
        dens.append(drow)

    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        sel = -1
        for i in range(r, nrows):
            if (<list>nums[i])[c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            nums[r], nums[sel] = nums[sel], nums[r]
            dens[r], dens[sel] = dens[sel], dens[r]
        pnum = <list>nums[r]
        pden = <list>dens[r]
        # scale pivot row so the pivot entry becomes 1
        f_n = pnum[c]
        f_d = pden[c]
        for j in range(ncols):
            n = <object>pnum[j] * f_d
            d = <object>pden[j] * f_n
            if n == 0:
                pnum[j] = 0
                pden[j] = 1
                continue
            if d < 0:
                n = -n
                d = -d
            g = gcd(n, d)
            if g > 1:
                n //= g
                d //= g
            pnum[j] = n
            pden[j] = d
        # eliminate the pivot column from every other row
        for i in range(nrows):
            if i == r:
                continue
            nrow = <list>nums[i]
            drow = <list>dens[i]
            f_n = nrow[c]
            if f_n == 0:
                continue
            f_d = drow[c]
            for j in range(ncols):
                b_n = pnum[j]
                if b_n == 0:
                    continue
                # row_i[j] -= f * pivot_row[j]
                a_n = nrow[j]
                a_d = drow[j]
                b_d = <object>pden[j] * f_d
                b_n = b_n * f_n
                n = a_n * b_d - b_n * a_d
                d = a_d * b_d
                if n == 0:
                    nrow[j] = 0
                    drow[j] = 1
                    continue
                g = gcd(n, d)
                if g > 1:
                    n //= g
                    d //= g
                nrow[j] = n
                drow[j] = d
        pivots.append(c)
        r += 1

    out = []
    for i in range(nrows):
        nrow = <list>nums[i]
        drow = <list>dens[i]
        out.append(
            [Fraction(nrow[j], drow[j]) for j in range(ncols)]
        )
    return out, pivots
