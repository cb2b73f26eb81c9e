"""Pure-Python reference kernels.

Same signatures and results as ``_ckernels``; arbitrary-precision throughout,
so these never raise ``OverflowError``.
"""
from __future__ import annotations

from itertools import permutations


def is_connected_rows(rows, n):
    if n == 0:
        return False
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def canonical_code(rows, n, distinguished=-1):
    """Lexicographically smallest upper-triangle bit string over relabelings.

    With ``distinguished >= 0`` only relabelings sending that vertex to
    position 0 are considered.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = None
    if distinguished >= 0:
        rest = [v for v in range(n) if v != distinguished]
        perms = ((distinguished,) + p for p in permutations(rest))
    else:
        perms = permutations(range(n))
    for perm in perms:
        code = 0
        for i, j in pairs:
            code = (code << 1) | ((rows[perm[i]] >> perm[j]) & 1)
            if best is not None and code > best >> (len(pairs) - 1 - _index(pairs, i, j, n)):
                break
        else:
            if best is None or code < best:
                best = code
    return best if best is not None else 0


def _index(pairs, i, j, n):
    # position of pair (i, j) in row-major upper-triangle order
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def charpoly(a):
    """Coefficients of det(xI - A), ascending degree, by Berkowitz's method."""
    n = len(a)
    if n == 0:
        return [1]
    poly = [1, -a[0][0]]  # descending
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        first = [1, -a[r][r]]
        v = col
        for _ in range(r):
            first.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(a[i][k] * v[k] for k in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = 0
            for k in range(max(0, i - r - 1), min(i, r) + 1):
                s += first[i - k] * poly[k]
            new.append(s)
        poly = new
    return poly[::-1]


def int_rank(m):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    if not m or not m[0]:
        return 0
    a = [list(r) for r in m]
    rows, cols = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(cols):
        piv = r
        while piv < rows and a[piv][c] == 0:
            piv += 1
        if piv == rows:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        ar = a[r]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, cols):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r
