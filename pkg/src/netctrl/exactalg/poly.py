"""Integer and rational univariate polynomials.

Coefficient sequences are ascending (index = power of x). Rational
polynomials used in intermediate steps are plain lists of ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd, isqrt, lcm

import mpmath

MAX_FACTOR_DEGREE = 8
# graph-level callers (Laplacians up to 16 vertices) opt into a wider bound
GRAPH_FACTOR_DEGREE = 16


class PolynomialError(ValueError):
    pass


class BothZero(PolynomialError):
    pass


class DegreeTooLarge(PolynomialError):
    pass


@dataclass(frozen=True)
class IntegerPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, *roots):
        p = [1]
        for r in roots:
            p = _mul(p, [-r, 1])
        return cls(p)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def content(self):
        return reduce(gcd, self.coeffs, 0)

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content
        if self.leading < 0:
            c = -c
        return IntegerPolynomial(a // c for a in self.coeffs)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __mul__(self, other):
        return IntegerPolynomial(_mul(list(self.coeffs), list(other.coeffs)))

    def derivative(self):
        return IntegerPolynomial(i * a for i, a in enumerate(self.coeffs) if i)

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs, var="x"):
    """Render ascending coefficients as ``a0 + a1*x + a2*x^2`` (zero terms dropped)."""
    terms = []
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = var
        else:
            mono = f"{var}^{i}"
        a = Fraction(a)
        mag = abs(a)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_fmt_q(mag)}*{mono}"
        else:
            body = _fmt_q(mag)
        terms.append(("-" if a < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _fmt_q(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_poly(text, var="x"):
    """Inverse of :func:`format_poly`; returns ascending ``Fraction`` coefficients."""
    s = text.replace(" ", "")
    if s == "0":
        return []
    if s[0] not in "+-":
        s = "+" + s
    coeffs = {}
    i = 0
    while i < len(s):
        sign = -1 if s[i] == "-" else 1
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i + 1:j]
        i = j
        if var in term:
            head, _, tail = term.partition(var)
            power = int(tail[1:]) if tail.startswith("^") else 1
            coef = Fraction(head[:-1]) if head else Fraction(1)
        else:
            power, coef = 0, Fraction(term)
        coeffs[power] = coeffs.get(power, 0) + sign * coef
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = Fraction(v)
    return _trim(out)


# ---- rational coefficient list helpers -----------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _divmod(a, b):
    """Quotient and remainder of rational polynomials, ``b`` nonzero."""
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a = _trim(a)
    return _trim(q), a


def _rational_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return a


def to_integer_primitive(p) -> IntegerPolynomial:
    """Clear denominators of a rational polynomial; primitive, positive leading term."""
    p = [Fraction(x) for x in _trim(p)]
    if not p:
        return IntegerPolynomial(())
    den = reduce(lcm, (x.denominator for x in p), 1)
    return IntegerPolynomial(int(x * den) for x in p).primitive()


def _as_int_poly(p):
    return p if isinstance(p, IntegerPolynomial) else IntegerPolynomial(p)


def poly_gcd(p, q) -> IntegerPolynomial:
    """Primitive gcd over the rationals, positive leading coefficient."""
    p, q = _as_int_poly(p), _as_int_poly(q)
    if p.is_zero and q.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    return to_integer_primitive(_rational_gcd(list(p.coeffs), list(q.coeffs)))


def exact_quotient(p, q) -> IntegerPolynomial:
    """``p / q`` when ``q`` divides ``p`` with an integer quotient, else ``ValueError``."""
    quo, rem = _divmod(list(_as_int_poly(p).coeffs), list(_as_int_poly(q).coeffs))
    if rem or any(Fraction(c).denominator != 1 for c in quo):
        raise ValueError(f"{q} does not divide {p} over the integers")
    return IntegerPolynomial(int(c) for c in quo)


def divides(q, p) -> bool:
    _, rem = _divmod(list(_as_int_poly(p).coeffs), list(_as_int_poly(q).coeffs))
    return not rem


# ---- factorization ------------------------------------------------------

def _root_bound(p: IntegerPolynomial) -> int:
    """Integer upper bound on the modulus of every complex root (Fujiwara)."""
    c = p.coeffs
    m = p.degree
    lead = abs(c[-1])
    best = 0
    for k in range(1, m + 1):
        ratio = Fraction(abs(c[m - k]), lead)
        if k == m:
            ratio /= 2
        if ratio == 0:
            continue
        b = max(1, int(ratio ** (1 / k)))
        while Fraction(b) ** k < ratio:
            b += 1
        while b > 1 and Fraction(b - 1) ** k >= ratio:
            b -= 1
        best = max(best, b)
    return 2 * best


def _divisors(k):
    k = abs(k)
    small, large = [], []
    for d in range(1, isqrt(k) + 1):
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
    return small + large[::-1]


def _rational_root(p: IntegerPolynomial):
    """Some rational root ``num/den`` of ``p`` or ``None``."""
    c = p.coeffs
    if c[0] == 0:
        return (0, 1)
    m = p.degree
    bound = _root_bound(p)
    for den in _divisors(c[-1]):
        for num in range(-bound * den, bound * den + 1):
            if num == 0 or gcd(num, den) != 1 or c[0] % num:
                continue
            # den^m * p(num/den)
            acc = 0
            for k, a in enumerate(c):
                acc += a * num ** k * den ** (m - k)
            if acc == 0:
                return (num, den)
    return None


def squarefree_decomposition(p: IntegerPolynomial):
    """Yun's algorithm: list of (squarefree primitive factor, multiplicity)."""
    out = []
    a = list(p.coeffs)
    da = list(p.derivative().coeffs)
    b = _rational_gcd(a, da)
    c, _ = _divmod(a, b)
    d, _ = _divmod(da, b)
    d = _sub(d, _derive(c))
    i = 1
    while len(_trim(c)) > 1:
        g = _rational_gcd(c, d)
        if len(g) > 1:
            out.append((to_integer_primitive(g), i))
        c, _ = _divmod(c, g)
        d, _ = _divmod(d, g)
        d = _sub(d, _derive(c))
        i += 1
    return out


def _derive(p):
    return [i * a for i, a in enumerate(p) if i]


def _monic_transform(q: IntegerPolynomial) -> IntegerPolynomial:
    """``a^(m-1) q(y/a)`` for leading coefficient ``a``: monic with integer coefficients."""
    a, m = q.leading, q.degree
    return IntegerPolynomial(c * a ** (m - 1 - k) if k < m else 1 for k, c in enumerate(q.coeffs))


def _undo_monic(g: IntegerPolynomial, a: int) -> IntegerPolynomial:
    # g(a x), then primitive part
    return IntegerPolynomial(c * a ** k for k, c in enumerate(g.coeffs)).primitive()


def _enclosed_roots(q: IntegerPolynomial, dps: int):
    """Approximate roots with radii of pairwise-disjoint inclusion disks.

    Each disk |w - z| <= m |q(z)| / |q'(z)| contains a root; when the disks are
    disjoint each one holds exactly one root of the squarefree ``q``.
    """
    m = q.degree
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c) for c in reversed(q.coeffs)]
        roots = mpmath.polyroots(desc, maxsteps=400, extraprec=4 * dps)
        dq = q.derivative()
        radii = []
        slack = mpmath.mpf(10) ** (-(dps // 2))
        for z in roots:
            num = abs(mpmath.polyval(desc, z))
            den = abs(mpmath.polyval([mpmath.mpf(c) for c in reversed(dq.coeffs)], z))
            if den == 0:
                return None
            radii.append(m * num / den + slack)
        for i in range(m):
            for j in range(i + 1, m):
                if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                    return None
        return roots, radii


def _subset_candidate(roots, radii, subset, dps):
    """The unique integer polynomial a subset of roots could span, or ``None``."""
    with mpmath.workdps(dps):
        approx = [mpmath.mpc(1)]
        upper = [mpmath.mpf(1)]
        exact_mag = [mpmath.mpf(1)]
        for i in subset:
            z, r = roots[i], radii[i]
            approx = _mul_linear(approx, -z)
            upper = _mul_linear(upper, abs(z) + r)
            exact_mag = _mul_linear(exact_mag, abs(z))
        coeffs = []
        for a, hi, lo in zip(approx, upper, exact_mag):
            err = abs(hi) - abs(lo)
            if abs(a.imag) > err:
                return None
            nearest = int(mpmath.nint(a.real))
            if abs(a.real - nearest) > err:
                return None
            if err >= mpmath.mpf("0.5"):
                raise ArithmeticError("root enclosures too wide to decide the factor")
            coeffs.append(nearest)
        return IntegerPolynomial(coeffs)


def _mul_linear(p, c):
    # p(x) * (x + c), ascending coefficients; c may be negative or complex
    out = [0] * (len(p) + 1)
    for i, a in enumerate(p):
        out[i] += a * c
        out[i + 1] += a
    return out


def _split_squarefree(q: IntegerPolynomial):
    """Irreducible factors of a squarefree primitive polynomial without rational roots."""
    m = q.degree
    if m <= 3:
        return [q]
    a = q.leading
    monic = _monic_transform(q) if a != 1 else q
    for dps in (60, 120, 240):
        enc = _enclosed_roots(monic, dps)
        if enc is not None:
            break
    else:
        raise ArithmeticError(f"could not separate the roots of {q}")
    roots, radii = enc
    for k in range(2, m // 2 + 1):
        for subset in combinations(range(m), k):
            g = _subset_candidate(roots, radii, subset, dps)
            if g is None or not divides(g, monic):
                continue
            h = exact_quotient(monic, g)
            if a != 1:
                g, h = _undo_monic(g, a), _undo_monic(h, a)
            return _split_squarefree(g) + _split_squarefree(h)
    return [q]


def irreducible_factors(p, max_degree=MAX_FACTOR_DEGREE) -> list[IntegerPolynomial]:
    p = _as_int_poly(p)
    if p.is_zero:
        raise PolynomialError("cannot factor the zero polynomial")
    if p.degree > max_degree:
        raise DegreeTooLarge(f"degree {p.degree} exceeds {max_degree}")
    return list(_factor_cached(p))


@lru_cache(maxsize=8192)
def _factor_cached(p: IntegerPolynomial) -> tuple[IntegerPolynomial, ...]:
    return tuple(_irreducible_factors(p))


def _irreducible_factors(p: IntegerPolynomial) -> list[IntegerPolynomial]:
    """Factor over the rationals into primitive irreducible factors (with multiplicity).

    The product of the result equals ``p`` up to a rational unit. Linear
    factors come from the rational root theorem; higher-degree splits are
    found from certified root enclosures and confirmed by exact division.
    """
    p = p.primitive()
    factors = []
    while p.degree >= 1:
        root = _rational_root(p)
        if root is None:
            break
        num, den = root
        lin = IntegerPolynomial((-num, den))
        factors.append(lin)
        p = exact_quotient(p, lin)
    if p.degree >= 2:
        for part, mult in squarefree_decomposition(p):
            for f in _split_squarefree(part):
                factors.extend([f] * mult)
    factors.sort(key=_factor_key)
    return factors


def _factor_key(f):
    # linear factors by root, others by coefficients
    if f.degree == 1:
        return (1, (Fraction(-f.coeffs[0], f.coeffs[1]),))
    return (f.degree, f.coeffs)


def distinct_factors(p, max_degree=MAX_FACTOR_DEGREE) -> list[IntegerPolynomial]:
    seen = []
    for f in irreducible_factors(p, max_degree):
        if f not in seen:
            seen.append(f)
    return seen


def is_square(k: int) -> bool:
    return k >= 0 and isqrt(k) ** 2 == k
