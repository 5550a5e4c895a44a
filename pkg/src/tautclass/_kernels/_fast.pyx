# cython: language_level=3
"""Compiled twin of the pure-Python integer kernels.

Arithmetic stays on Python big ints (values overflow machine words
quickly under Bareiss), so the gain over the fallback comes from
compiled loop and indexing overhead, not from native arithmetic.
"""

BACKEND = "fast"


def det_int(rows):
    """Determinant of a square integer matrix, Bareiss fraction-free."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    if n == 0:
        return 1
    cdef list m = [list(r) for r in rows]
    cdef list row_i, row_k
    prev = 1
    for k in range(n - 1):
        row_k = <list> m[k]
        if row_k[k] == 0:
            for i in range(k + 1, n):
                if (<list> m[i])[k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
            row_k = <list> m[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = <list> m[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * (<list> m[n - 1])[n - 1]


def rank_int(rows, Py_ssize_t ncols):
    """Rank of an integer matrix via fraction-free echelon reduction."""
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, j, pivot_row
    cdef bint found
    cdef list row_i, row_r
    prev = 1
    for col in range(ncols):
        found = False
        pivot_row = 0
        for i in range(rank, nrows):
            if (<list> m[i])[col] != 0:
                pivot_row = i
                found = True
                break
        if not found:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        row_r = <list> m[rank]
        pivot = row_r[col]
        for i in range(rank + 1, nrows):
            row_i = <list> m[i]
            aic = row_i[col]
            for j in range(col + 1, ncols):
                row_i[j] = (pivot * row_i[j] - aic * row_r[j]) // prev
            row_i[col] = 0
        prev = pivot
        rank += 1
        if rank == nrows:
            break
    return rank
