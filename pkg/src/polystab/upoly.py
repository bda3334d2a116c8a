"""Dense univariate polynomials over the rationals.

Coefficients are fractions.Fraction, index = degree, trailing zeros trimmed.
The zero polynomial has an empty coefficient tuple and degree -1.
"""

from fractions import Fraction
from math import gcd


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class UPoly:
    """Polynomial in one variable with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, deg, c=1):
        return cls((0,) * deg + (c,))

    @property
    def degree(self):
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return UPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly.constant(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, UPoly) else UPoly.constant(-_frac(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = UPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        # Horner's rule, exact when x is rational
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def divmod(self, other):
        """Exact rational polynomial division: self = q*other + r, deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        q = [Fraction(0)] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            if r[i] == 0:
                continue
            f = r[i] / lead
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                r[i - d + j] -= f * c
        return UPoly(q), UPoly(r[:d] if d > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def compose(self, other):
        """self(other(x)) by Horner over polynomials."""
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + UPoly.constant(c)
        return acc

    def shift(self, a):
        """p(x + a)."""
        return self.compose(UPoly((a, 1)))

    def primitive(self):
        """Integer coefficient list with content 1, same sign pattern as self.

        Returns (int_coeffs, scale) with self == scale * int_poly
        and scale a positive Fraction.
        """
        if not self.coeffs:
            return [], Fraction(1)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        return ints, Fraction(g, den)

    def cauchy_bound(self):
        """Rational B > 0 such that all real roots lie in [-B, B]."""
        if self.degree < 1:
            return Fraction(1)
        lead = abs(self.coeffs[-1])
        m = max((abs(c) for c in self.coeffs[:-1]), default=Fraction(0))
        return Fraction(1) + m / lead

    def even_part_in(self):
        """If only even powers appear, return q with self(x) = q(x^2), else None."""
        if any(c != 0 for i, c in enumerate(self.coeffs) if i % 2 == 1):
            return None
        return UPoly(self.coeffs[0::2])

    def serialize(self):
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def deserialize(cls, items):
        return cls(tuple(Fraction(s) for s in items))

    def pretty(self, var="k"):
        if not self.coeffs:
            return "0"
        out = ""
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                pw = var if i == 1 else f"{var}^{i}"
                body = pw if abs(c) == 1 else f"{abs(c)}*{pw}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"UPoly({self.pretty()})"


def poly_gcd(a, b):
    """Monic gcd over the rationals."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    lead = a.coeffs[-1]
    return a * (1 / lead)


def squarefree_part(p):
    """p / gcd(p, p'), sign preserved."""
    if p.degree < 1:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree < 1:
        return p
    q, r = p.divmod(g)
    assert r.is_zero()
    return q
