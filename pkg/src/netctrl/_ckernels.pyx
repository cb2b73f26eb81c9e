# cython: language_level=3
"""Compiled kernels: bitmask connectivity, brute-force canonical codes,
Berkowitz characteristic polynomials and Bareiss rank in 64-bit integers.

Arithmetic kernels raise OverflowError instead of wrapping; callers fall back
to the arbitrary-precision Python versions in that case.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(int64_t a, int64_t b, int64_t *r) nogil
    bint add_ovf "__builtin_add_overflow"(int64_t a, int64_t b, int64_t *r) nogil
    bint sub_ovf "__builtin_sub_overflow"(int64_t a, int64_t b, int64_t *r) nogil


def is_connected_rows(rows, int n):
    cdef uint64_t r[64]
    cdef uint64_t seen = 1, frontier = 1, nxt, f, low, full
    cdef int i
    if n <= 0:
        return False
    if n > 64:
        raise ValueError("at most 64 vertices")
    for i in range(n):
        r[i] = <uint64_t>rows[i]
    full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n == 64 else ((<uint64_t>1 << n) - 1)
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & (~f + 1)
            nxt |= r[_ctz(low)]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


cdef inline int _ctz(uint64_t x) nogil:
    cdef int k = 0
    while not (x & 1):
        x >>= 1
        k += 1
    return k


cdef inline bint _next_perm(int *p, int lo, int n) nogil:
    # lexicographic next permutation of p[lo:n]
    cdef int i = n - 2, j, t
    while i >= lo and p[i] >= p[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    t = p[i]; p[i] = p[j]; p[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = p[i]; p[i] = p[j]; p[j] = t
        i += 1
        j -= 1
    return True


def canonical_code(rows, int n, int distinguished=-1):
    cdef uint64_t r[8]
    cdef int perm[8]
    cdef int i, j, k, lo, npairs
    cdef uint64_t code, best = 0, prefix
    cdef bint have = False, pruned
    if n > 8:
        raise ValueError("canonical codes need n <= 8")
    if n <= 1:
        return 0
    for i in range(n):
        r[i] = <uint64_t>rows[i]
    npairs = n * (n - 1) // 2
    if distinguished >= 0:
        perm[0] = distinguished
        k = 1
        for i in range(n):
            if i != distinguished:
                perm[k] = i
                k += 1
        lo = 1
    else:
        for i in range(n):
            perm[i] = i
        lo = 0
    while True:
        code = 0
        k = 0
        pruned = False
        for i in range(n):
            for j in range(i + 1, n):
                code = (code << 1) | ((r[perm[i]] >> perm[j]) & 1)
                k += 1
                if have:
                    prefix = best >> (npairs - k)
                    if code > prefix:
                        pruned = True
                        break
            if pruned:
                break
        if not pruned and (not have or code < best):
            best = code
            have = True
        if not _next_perm(perm, lo, n):
            break
    return int(best)


cdef int64_t *_load(m, int rows, int cols) except NULL:
    cdef int64_t *a = <int64_t *>malloc(max(1, rows * cols) * sizeof(int64_t))
    cdef int i, j
    if a == NULL:
        raise MemoryError()
    for i in range(rows):
        row = m[i]
        for j in range(cols):
            a[i * cols + j] = row[j]
    return a


def int_rank(m):
    cdef int rows = len(m), cols, r = 0, c, i, j, piv
    cdef int64_t *a
    cdef int64_t prev = 1, p, f, t1, t2, tmp
    if rows == 0:
        return 0
    cols = len(m[0])
    if cols == 0:
        return 0
    a = _load(m, rows, cols)
    try:
        for c in range(cols):
            piv = r
            while piv < rows and a[piv * cols + c] == 0:
                piv += 1
            if piv == rows:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = a[r * cols + j]
                    a[r * cols + j] = a[piv * cols + j]
                    a[piv * cols + j] = tmp
            p = a[r * cols + c]
            for i in range(r + 1, rows):
                f = a[i * cols + c]
                for j in range(c + 1, cols):
                    if mul_ovf(p, a[i * cols + j], &t1) or mul_ovf(f, a[r * cols + j], &t2) \
                            or sub_ovf(t1, t2, &tmp):
                        raise OverflowError("int64 overflow in Bareiss step")
                    a[i * cols + j] = tmp // prev
                a[i * cols + c] = 0
            prev = p
            r += 1
            if r == rows:
                break
        return r
    finally:
        free(a)


def charpoly(m):
    cdef int n = len(m), r, i, k, t
    cdef int64_t *a
    cdef int64_t *poly
    cdef int64_t *new
    cdef int64_t *first
    cdef int64_t *v
    cdef int64_t *w
    cdef int64_t s, prod
    if n == 0:
        return [1]
    a = _load(m, n, n)
    poly = <int64_t *>malloc((n + 1) * sizeof(int64_t))
    new = <int64_t *>malloc((n + 1) * sizeof(int64_t))
    first = <int64_t *>malloc((n + 1) * sizeof(int64_t))
    v = <int64_t *>malloc(n * sizeof(int64_t))
    w = <int64_t *>malloc(n * sizeof(int64_t))
    try:
        poly[0] = 1
        if sub_ovf(0, a[0], &poly[1]):
            raise OverflowError()
        for r in range(1, n):
            first[0] = 1
            if sub_ovf(0, a[r * n + r], &first[1]):
                raise OverflowError()
            for i in range(r):
                v[i] = a[i * n + r]
            for t in range(r):
                s = 0
                for k in range(r):
                    if mul_ovf(a[r * n + k], v[k], &prod) or add_ovf(s, prod, &s):
                        raise OverflowError()
                if sub_ovf(0, s, &first[t + 2]):
                    raise OverflowError()
                for i in range(r):
                    s = 0
                    for k in range(r):
                        if mul_ovf(a[i * n + k], v[k], &prod) or add_ovf(s, prod, &s):
                            raise OverflowError()
                    w[i] = s
                for i in range(r):
                    v[i] = w[i]
            for i in range(r + 2):
                s = 0
                for k in range(max(0, i - r - 1), min(i, r) + 1):
                    if mul_ovf(first[i - k], poly[k], &prod) or add_ovf(s, prod, &s):
                        raise OverflowError()
                new[i] = s
            for i in range(r + 2):
                poly[i] = new[i]
        return [int(poly[n - i]) for i in range(n + 1)]
    finally:
        free(a); free(poly); free(new); free(first); free(v); free(w)
