"""Arithmetic in Q[x]/(f) for an irreducible integer polynomial f."""
from __future__ import annotations

from fractions import Fraction

from netctrl.exactalg.poly import IntegerPolynomial, _divmod, _mul, _trim, format_poly


class ModulusMismatch(ValueError):
    pass


class NumberField:
    """Q(λ) with λ a root of the irreducible ``modulus``."""

    def __init__(self, modulus: IntegerPolynomial):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus
        self.degree = modulus.degree
        lead = Fraction(modulus.leading)
        self._monic = [Fraction(c) / lead for c in modulus.coeffs]
        d = self.degree
        # x^k mod f for k = d .. 2d-2, as length-d coefficient lists
        self._reduce = []
        cur = [-c for c in self._monic[:d]]
        for _ in range(max(0, d - 1)):
            self._reduce.append(cur)
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            nxt = [a + top * b for a, b in zip(nxt, (-c for c in self._monic[:d]))]
            cur = nxt
        self.zero = FieldElement(self, (Fraction(0),) * d)
        self.one = self(1)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({self.modulus})"

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ModulusMismatch(f"{value.field!r} vs {self!r}")
            return value
        return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    @property
    def generator(self) -> "FieldElement":
        if self.degree == 1:
            return self(-Fraction(self.modulus.coeffs[0], self.modulus.coeffs[1]))
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def element(self, coeffs) -> "FieldElement":
        """Element from an arbitrary rational polynomial in the generator."""
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            _, c = _divmod(c, self._monic)
        c = list(c) + [Fraction(0)] * (self.degree - len(c))
        return FieldElement(self, tuple(c))

    def _mulreduce(self, a, b):
        d = self.degree
        prod = _mul(list(a), list(b))
        out = list(prod[:d]) + [Fraction(0)] * (d - min(d, len(prod)))
        for k in range(d, len(prod)):
            coef = prod[k]
            if coef:
                for i, r in enumerate(self._reduce[k - d]):
                    out[i] += coef * r
        return tuple(out)


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, c: tuple):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ModulusMismatch(f"{other.field!r} vs {self.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mulreduce(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid: s*self + t*f = g, g constant
        r0, r1 = list(self.field._monic), _trim(list(self.c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_sub_lists(s0, _mul(q, s1)))
        if not r1:
            raise ZeroDivisionError("zero divisor: modulus is not irreducible")
        inv = r1[0]
        return self.field.element([x / inv for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a / other for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        if isinstance(other, FieldElement):
            return self.field == other.field and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.c))

    @property
    def is_rational(self):
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.c[0]

    def __str__(self):
        return format_poly(self.c)

    def __repr__(self):
        return f"FieldElement({self} mod {self.field.modulus})"


def _sub_lists(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
