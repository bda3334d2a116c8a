"""Arbitrary precision real intervals with outward (directed) rounding.

Endpoints are dyadic rationals m * 2^e held as exact integers; every
operation rounds the lower endpoint toward -oo and the upper endpoint
toward +oo, so the true real value is always inside the returned interval.
Precision P is the mantissa bit budget per endpoint.
"""

from fractions import Fraction
from math import isqrt

DEFAULT_PREC = 256
MAX_PREC = 4096


class PrecisionExhausted(ArithmeticError):
    """Adaptive refinement hit the precision ceiling without converging."""


class NegativeRadicand(ArithmeticError):
    """Even root of an interval that is not certainly nonnegative."""


def _round_down(m, e, prec):
    # toward -infinity; Python >> floors, which is exactly what we need
    extra = m.bit_length() - prec
    if extra <= 0:
        return m, e
    return m >> extra, e + extra


def _round_up(m, e, prec):
    extra = m.bit_length() - prec
    if extra <= 0:
        return m, e
    return -((-m) >> extra), e + extra


def _icbrt(n):
    """Integer cube root of n >= 0: largest c with c^3 <= n."""
    if n < 0:
        raise ValueError("negative icbrt")
    if n == 0:
        return 0
    c = 1 << ((n.bit_length() + 2) // 3)
    while True:
        d = (2 * c + n // (c * c)) // 3
        if d >= c:
            break
        c = d
    while c * c * c > n:
        c -= 1
    while (c + 1) ** 3 <= n:
        c += 1
    return c


class RInterval:
    """Closed interval [lo_m*2^lo_e, hi_m*2^hi_e] with sound outward rounding."""

    __slots__ = ("lo_m", "lo_e", "hi_m", "hi_e", "prec")

    def __init__(self, lo_m, lo_e, hi_m, hi_e, prec=DEFAULT_PREC):
        self.lo_m, self.lo_e = _round_down(lo_m, lo_e, prec)
        self.hi_m, self.hi_e = _round_up(hi_m, hi_e, prec)
        self.prec = prec
        if self.lo() > self.hi():
            raise ValueError("empty interval")

    # --- constructors ---

    @classmethod
    def from_int(cls, n, prec=DEFAULT_PREC):
        return cls(n, 0, n, 0, prec)

    @classmethod
    def from_fraction(cls, fr, prec=DEFAULT_PREC):
        fr = Fraction(fr)
        p, q = fr.numerator, fr.denominator
        if q == 1:
            return cls(p, 0, p, 0, prec)
        s = prec + q.bit_length() + 2
        lo = (p << s) // q          # floor
        hi = -((-p << s) // q)      # ceil
        return cls(lo, -s, hi, -s, prec)

    @classmethod
    def from_fractions(cls, lo, hi, prec=DEFAULT_PREC):
        a = cls.from_fraction(lo, prec)
        b = cls.from_fraction(hi, prec)
        return cls(a.lo_m, a.lo_e, b.hi_m, b.hi_e, prec)

    # --- exact endpoint views ---

    def lo(self):
        return Fraction(self.lo_m) * Fraction(2) ** self.lo_e

    def hi(self):
        return Fraction(self.hi_m) * Fraction(2) ** self.hi_e

    def mid(self):
        return (self.lo() + self.hi()) / 2

    def width(self):
        return self.hi() - self.lo()

    def __repr__(self):
        lo, hi = self.lo(), self.hi()
        return f"RInterval[{float(lo)!r}, {float(hi)!r}; P={self.prec}]"

    # --- predicates ---

    def contains_zero(self):
        return self.lo() <= 0 <= self.hi()

    def is_positive(self):
        return self.lo() > 0

    def is_negative(self):
        return self.hi() < 0

    def certainly_lt(self, other):
        other = _coerce(other, self.prec)
        return self.hi() < other.lo()

    def certainly_gt(self, other):
        other = _coerce(other, self.prec)
        return self.lo() > other.hi()

    def contains(self, x):
        x = Fraction(x)
        return self.lo() <= x <= self.hi()

    def encloses(self, other):
        return self.lo() <= other.lo() and other.hi() <= self.hi()

    # --- arithmetic ---

    def _prec_with(self, other):
        return max(self.prec, getattr(other, "prec", 0))

    def __neg__(self):
        return RInterval(-self.hi_m, self.hi_e, -self.lo_m, self.lo_e, self.prec)

    def __add__(self, other):
        other = _coerce(other, self.prec)
        p = self._prec_with(other)
        lm, le = _dyadic_add(self.lo_m, self.lo_e, other.lo_m, other.lo_e)
        hm, he = _dyadic_add(self.hi_m, self.hi_e, other.hi_m, other.hi_e)
        return RInterval(lm, le, hm, he, p)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other, self.prec) + (-self)

    def __mul__(self, other):
        other = _coerce(other, self.prec)
        p = self._prec_with(other)
        cands = []
        for am, ae in ((self.lo_m, self.lo_e), (self.hi_m, self.hi_e)):
            for bm, be in ((other.lo_m, other.lo_e), (other.hi_m, other.hi_e)):
                cands.append((am * bm, ae + be))
        lo = min(cands, key=lambda t: Fraction(t[0]) * Fraction(2) ** t[1])
        hi = max(cands, key=lambda t: Fraction(t[0]) * Fraction(2) ** t[1])
        return RInterval(lo[0], lo[1], hi[0], hi[1], p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.prec)
        if other.contains_zero():
            raise ZeroDivisionError("interval denominator contains zero")
        return self * other._reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other, self.prec) / self

    def _reciprocal(self):
        p = self.prec
        s = p + 4
        out = []
        # 1/x is decreasing on either side of zero: 1/[a,b] = [1/b, 1/a]
        for m, e, up in ((self.hi_m, self.hi_e, False), (self.lo_m, self.lo_e, True)):
            num = 1 << (s + m.bit_length())
            if up:
                q = -((-num) // m)
            else:
                q = num // m
            out.append((q, -e - s - m.bit_length()))
        (lm, le), (hm, he) = out
        return RInterval(lm, le, hm, he, p)

    def __pow__(self, n):
        if n < 0:
            return (RInterval.from_int(1, self.prec) / self) ** (-n)
        if n == 0:
            return RInterval.from_int(1, self.prec)
        # even powers need the fold through zero handled by repeated mul,
        # which is already exact about sign cases
        result = RInterval.from_int(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self):
        if self.lo() < 0:
            raise NegativeRadicand(f"sqrt of interval reaching {float(self.lo())}")
        s = self.prec + 2
        out = []
        for m, e, up in ((self.lo_m, self.lo_e, False), (self.hi_m, self.hi_e, True)):
            if m == 0:
                out.append((0, 0))
                continue
            q, r = divmod(e, 2)
            a = m << (r + 2 * s)
            root = isqrt(a)
            if up and root * root != a:
                root += 1
            out.append((root, q - s))
        (lm, le), (hm, he) = out
        return RInterval(lm, le, hm, he, self.prec)

    def cbrt(self):
        """Real cube root, valid for either sign."""
        s = self.prec + 2
        out = []
        for m, e, up in ((self.lo_m, self.lo_e, False), (self.hi_m, self.hi_e, True)):
            if m == 0:
                out.append((0, 0))
                continue
            q, r = divmod(e, 3)
            a = abs(m) << (r + 3 * s)
            root = _icbrt(a)
            exact = root ** 3 == a
            if m > 0:
                if up and not exact:
                    root += 1
                out.append((root, q - s))
            else:
                # cbrt(-x) = -cbrt(x); directed rounding flips
                if not up and not exact:
                    root += 1
                out.append((-root, q - s))
        (lm, le), (hm, he) = out
        return RInterval(lm, le, hm, he, self.prec)

    def intersect(self, other):
        if self.lo() >= other.lo():
            lm, le = self.lo_m, self.lo_e
        else:
            lm, le = other.lo_m, other.lo_e
        if self.hi() <= other.hi():
            hm, he = self.hi_m, self.hi_e
        else:
            hm, he = other.hi_m, other.hi_e
        p = max(self.prec, other.prec)
        # stored mantissas already fit the precision budget, so the
        # constructor will not re-round and the result cannot widen
        return RInterval(lm, le, hm, he, p)

    # --- serialization: ["lo-hex", "hi-hex", prec] ---

    def to_json(self):
        return [_dyadic_hex(self.lo_m, self.lo_e), _dyadic_hex(self.hi_m, self.hi_e), self.prec]

    @classmethod
    def from_json(cls, triple):
        lo_s, hi_s, prec = triple
        lm, le = _parse_dyadic_hex(lo_s)
        hm, he = _parse_dyadic_hex(hi_s)
        return cls(lm, le, hm, he, int(prec))


def _coerce(x, prec):
    if isinstance(x, RInterval):
        return x
    if isinstance(x, int):
        return RInterval.from_int(x, prec)
    if isinstance(x, Fraction):
        return RInterval.from_fraction(x, prec)
    raise TypeError(f"cannot mix RInterval with {type(x).__name__}")


def _dyadic_add(am, ae, bm, be):
    # exact: align the exponents before adding mantissas
    if ae == be:
        return am + bm, ae
    if ae < be:
        return am + (bm << (be - ae)), ae
    return (am << (ae - be)) + bm, be


def _dyadic_hex(m, e):
    if m == 0:
        return "0x0p0"
    sign = "-" if m < 0 else ""
    return f"{sign}0x{abs(m):x}p{e}"


def _parse_dyadic_hex(s):
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    if not s.startswith("0x"):
        raise ValueError(f"bad dyadic literal {s!r}")
    mant, _, exp = s[2:].partition("p")
    m = int(mant, 16)
    e = int(exp)
    return (-m if neg else m), e


def adaptive(fn, prec=DEFAULT_PREC, max_prec=MAX_PREC, narrow_enough=None):
    """Evaluate fn(prec) -> RInterval at doubling precision until it narrows.

    Results at successive precisions are intersected, so the enclosure is
    monotone: doubling the budget can only shrink it.  narrow_enough is a
    predicate on the current interval; default stops at relative width
    2^-(prec/2) or absolute width 2^-prec for values near zero.
    """
    best = None
    p = prec
    while p <= max_prec:
        cur = fn(p)
        best = cur if best is None else best.intersect(cur)
        if narrow_enough is None:
            scale = max(abs(best.lo()), abs(best.hi()), Fraction(1))
            if best.width() <= scale * Fraction(1, 2 ** (prec // 2)):
                return best
        elif narrow_enough(best):
            return best
        p *= 2
    raise PrecisionExhausted(f"no convergence by {max_prec} bits")
