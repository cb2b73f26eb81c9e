"""Exact matrix routines over the integers, the rationals and number fields."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm

from netctrl import kernels
from netctrl.exactalg.field import FieldElement, ModulusMismatch
from netctrl.exactalg.poly import IntegerPolynomial


class DimensionMismatch(ValueError):
    pass


class ZeroVector(ValueError):
    pass


def rational_rank(m) -> int:
    """Exact rank; rows are scaled to integers, then fraction-free elimination."""
    rows = []
    for row in m:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        rows.append([int(Fraction(x) * den) for x in row])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("ragged matrix")
    return kernels.int_rank(rows)


def char_poly(m) -> IntegerPolynomial:
    """det(xI - M) for a square integer matrix."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    return IntegerPolynomial(kernels.charpoly([[int(x) for x in r] for r in m]))


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in cols] for row in a]


def null_space(m, one=Fraction(1)):
    """Basis of the right null space by Gauss-Jordan elimination.

    Entries may be ints, Fractions or FieldElements of one field; ``one``
    fixes the field the result lives in. Each basis vector has a 1 at its
    free column and zeros at the other free columns.
    """
    if not m:
        return []
    ncols = len(m[0])
    zero = one - one
    a = [[one * x for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(a, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def null_space_over_field(m):
    """Null space of a matrix whose entries all lie in one number field."""
    field = None
    for row in m:
        for x in row:
            if not isinstance(x, FieldElement):
                raise ModulusMismatch("every entry must be a FieldElement")
            if field is None:
                field = x.field
            elif x.field != field:
                raise ModulusMismatch(f"{x.field!r} vs {field!r}")
    if field is None:
        raise ValueError("empty matrix")
    return null_space(m, one=field.one)


def verify_eigenpair(lap, lam, y) -> bool:
    """True iff ``lap @ y == lam * y`` holds coordinate-wise, exactly."""
    n = len(lap)
    if len(y) != n or any(len(r) != n for r in lap):
        raise DimensionMismatch(f"matrix is {n}x?, vector has length {len(y)}")
    if not any(y):
        raise ZeroVector("an eigenvector must be nonzero")
    for i in range(n):
        acc = -lam * y[i]
        for j, a in enumerate(lap[i]):
            if a:
                acc = acc + a * y[j]
        if acc:
            return False
    return True
