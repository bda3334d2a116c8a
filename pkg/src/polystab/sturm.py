"""Sturm chains and certified sign decisions for rational polynomials.

All counting is done on primitive integer polynomials with exact integer
evaluation at rational points, so every answer here is a proof, not an
approximation.
"""

from fractions import Fraction

from .upoly import UPoly, squarefree_part


class ZeroPolynomial(ValueError):
    """Sign or root questions about the identically zero polynomial."""


class SignViolation(Exception):
    """Raised when a claimed sign fails; carries an isolating interval."""

    def __init__(self, message, isolating=None, value_at_midpoint=None):
        super().__init__(message)
        self.isolating = isolating
        self.value_at_midpoint = value_at_midpoint


def int_primitive(p):
    """Primitive integer coefficient list, positive scaling only."""
    ints, _ = p.primitive()
    return ints


def eval_int_poly(coeffs, x):
    """Exact sign-faithful value of an integer polynomial at rational x.

    Returns the integer sum(c_i * num^i * den^(d-i)); same sign as p(x).
    """
    if not coeffs:
        return 0
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    d = len(coeffs) - 1
    acc = coeffs[d]
    dpow = 1
    for i in range(d - 1, -1, -1):
        dpow *= den
        acc = acc * num + coeffs[i] * dpow
    return acc


def _sign(v):
    return (v > 0) - (v < 0)


def sturm_chain(p):
    """Standard Sturm chain as primitive integer polynomials."""
    p0 = int_primitive(p)
    if not p0:
        raise ZeroPolynomial("sturm chain of zero polynomial")
    chain = [UPoly(p0)]
    dp = chain[0].derivative()
    if dp.is_zero():
        return [int_primitive(chain[0])]
    chain.append(UPoly(int_primitive(dp)))
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        ints = int_primitive(r)
        chain.append(UPoly([-c for c in ints]))
    return [[int(c) for c in q.coeffs] for q in chain]


def _variations(chain, x):
    last = 0
    var = 0
    for coeffs in chain:
        s = _sign(eval_int_poly(coeffs, x))
        if s == 0:
            continue
        if last and s != last:
            var += 1
        last = s
    return var


def sturm_count(p, a, b):
    """Number of distinct real roots of p in the half open interval (a, b]."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"need a < b, got {a} >= {b}")
    if p.is_zero():
        raise ZeroPolynomial("root count of zero polynomial")
    if p.degree == 0:
        return 0
    chain = sturm_chain(p)
    return _variations(chain, a) - _variations(chain, b)


def count_all_roots(p):
    """Number of distinct real roots of p."""
    if p.is_zero():
        raise ZeroPolynomial("root count of zero polynomial")
    if p.degree < 1:
        return 0
    B = p.cauchy_bound()
    return sturm_count(p, -B, B)


class SignCertificate:
    """Self-contained evidence that a polynomial has one sign on (a, b).

    Stores the primitive integer polynomial, the interval, the shrunken
    interval actually counted on, the root count (zero), and the sign at
    the midpoint.  verify() replays the whole argument from these fields.
    """

    def __init__(self, int_coeffs, a, b, shrunk_a, shrunk_b, sign, midpoint):
        self.int_coeffs = list(int_coeffs)
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.shrunk_a = Fraction(shrunk_a)
        self.shrunk_b = Fraction(shrunk_b)
        self.sign = sign
        self.midpoint = Fraction(midpoint)

    def to_json(self):
        return {
            "poly": [str(c) for c in self.int_coeffs],
            "interval": [f"{self.a}", f"{self.b}"],
            "counted_on": [f"{self.shrunk_a}", f"{self.shrunk_b}"],
            "sign": self.sign,
            "midpoint": f"{self.midpoint}",
        }

    @classmethod
    def from_json(cls, d):
        return cls(
            [int(c) for c in d["poly"]],
            Fraction(d["interval"][0]),
            Fraction(d["interval"][1]),
            Fraction(d["counted_on"][0]),
            Fraction(d["counted_on"][1]),
            d["sign"],
            Fraction(d["midpoint"]),
        )

    def verify(self):
        """Replay the certificate using only the stored fields."""
        p = UPoly(self.int_coeffs)
        if p.is_zero():
            return False
        if not (self.a <= self.shrunk_a < self.shrunk_b <= self.b):
            return False
        # roots may only hide at the original endpoints, inside must be clean
        if p.degree >= 1:
            n = sturm_count(p, self.shrunk_a, self.shrunk_b)
            if self.shrunk_b == self.b and eval_int_poly(self.int_coeffs, self.b) == 0:
                n -= 1  # a root exactly at b lies outside the open interval
            if n != 0:
                return False
        sm = _sign(eval_int_poly(self.int_coeffs, self.midpoint))
        if sm != self.sign or sm == 0:
            return False
        if not (self.shrunk_a < self.midpoint < self.shrunk_b):
            return False
        # endpoint gaps: p must not vanish inside (a, shrunk_a] or [shrunk_b, b)
        for lo, hi in ((self.a, self.shrunk_a), (self.shrunk_b, self.b)):
            if lo < hi and p.degree >= 1:
                k = sturm_count(p, lo, hi)
                if hi == self.b and eval_int_poly(self.int_coeffs, self.b) == 0:
                    k -= 1
                if k != 0:
                    return False
        return True


def isolate_root(p, a, b, target_width=None):
    """Shrink (a, b] by bisection to a small interval still containing a root."""
    a, b = Fraction(a), Fraction(b)
    if target_width is None:
        target_width = (b - a) / 2**20
    sf = squarefree_part(p)
    while b - a > target_width:
        m = (a + b) / 2
        if sturm_count(sf, a, m) > 0:
            b = m
        else:
            a = m
    return a, b


def certify_sign_open(p, a, b):
    """Certify that p has a constant nonzero sign on the open interval (a, b).

    Endpoint roots are tolerated: the count runs on the slightly shrunken
    closed subinterval, with the shrink epsilon = (b-a)/2^20 recorded in the
    certificate.  Raises SignViolation (with an isolating interval for some
    interior root, or the offending midpoint value) when the claim is false.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"need a < b, got {a} >= {b}")
    if p.is_zero():
        raise ZeroPolynomial("cannot certify sign of zero polynomial")
    mid = (a + b) / 2
    vm = p(mid)
    if vm == 0:
        raise SignViolation(
            f"polynomial vanishes at the midpoint {mid}",
            isolating=(mid, mid), value_at_midpoint=Fraction(0))
    ints = int_primitive(p)
    if p.degree == 0:
        return SignCertificate(ints, a, b, a, b, _sign(vm), mid)
    eps = (b - a) / 2**20
    sa, sb = a, b
    if eval_int_poly(ints, sa) == 0:
        sa = a + eps
    if eval_int_poly(ints, sb) == 0:
        sb = b - eps
    # post shrink, p(sa) != 0 and p(sb) != 0 unless sb == b; a root counted at
    # sb == b sits outside the open interval and is excused
    n_in = sturm_count(p, sa, sb)
    if sb == b and eval_int_poly(ints, b) == 0:
        n_in -= 1
    if n_in > 0:
        lo, hi = isolate_root(p, sa, sb)
        raise SignViolation(
            f"sign change inside ({a}, {b}): root isolated in [{lo}, {hi}]",
            isolating=(lo, hi), value_at_midpoint=vm)
    for lo, hi in ((a, sa), (sb, b)):
        if lo < hi:
            k = sturm_count(p, lo, hi)
            if hi == b and eval_int_poly(ints, b) == 0:
                k -= 1
            if k > 0:
                llo, lhi = isolate_root(p, lo, hi)
                raise SignViolation(
                    f"root near endpoint of ({a}, {b}): isolated in [{llo}, {lhi}]",
                    isolating=(llo, lhi), value_at_midpoint=vm)
    return SignCertificate(ints, a, b, sa, sb, _sign(vm), mid)


def certify_positive_ray(p, a):
    """Certify p > 0 on [a, oo) via a Cauchy bound for the far end."""
    a = Fraction(a)
    if p.is_zero():
        raise ZeroPolynomial("cannot certify sign of zero polynomial")
    if p.degree == 0:
        if p.coeffs[0] > 0:
            return SignCertificate(int_primitive(p), a, a + 1, a, a + 1, 1, a + Fraction(1, 2))
        raise SignViolation(f"constant {p.coeffs[0]} is not positive")
    if p.coeffs[-1] <= 0:
        raise SignViolation("leading coefficient not positive, cannot hold on a ray")
    va = p(a)
    if va <= 0:
        raise SignViolation(f"value {va} at ray base {a} is not positive",
                            isolating=(a, a), value_at_midpoint=va)
    B = p.cauchy_bound()
    if B <= a:
        # all roots are left of the base point already
        return SignCertificate(int_primitive(p), a, a + 1, a, a + 1, 1, a + Fraction(1, 2))
    n = sturm_count(p, a, B)
    if n > 0:
        lo, hi = isolate_root(p, a, B)
        raise SignViolation(
            f"root on the ray [{a}, oo): isolated in [{lo}, {hi}]",
            isolating=(lo, hi), value_at_midpoint=va)
    return SignCertificate(int_primitive(p), a, B, a, B, 1, (a + B) / 2)


def isolate_all_roots(p, a=None, b=None):
    """Disjoint isolating intervals (lo, hi], one distinct real root each."""
    if p.is_zero():
        raise ZeroPolynomial("roots of zero polynomial")
    sf = squarefree_part(p)
    if sf.degree < 1:
        return []
    B = sf.cauchy_bound()
    if a is None:
        a = -B
    if b is None:
        b = B
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        return []
    out = []
    stack = [(a, b, sturm_count(sf, a, b))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        m = (lo + hi) / 2
        nl = sturm_count(sf, lo, m)
        stack.append((lo, m, nl))
        stack.append((m, hi, n - nl))
    out.sort()
    return out


def refine_root(p, lo, hi, bits=64):
    """Bisect an isolating Sturm interval (lo, hi] until width <= (hi-lo)/2^bits."""
    lo, hi = Fraction(lo), Fraction(hi)
    sf = squarefree_part(p)
    target = (hi - lo) / 2**bits
    while hi - lo > target:
        m = (lo + hi) / 2
        if sturm_count(sf, lo, m) > 0:
            hi = m
        else:
            lo = m
    return lo, hi


def smallest_positive_root(p, bits=64):
    """Refined enclosure of the smallest root > 0, or None."""
    roots = [iv for iv in isolate_all_roots(p) if iv[1] > 0]
    for lo, hi in roots:
        if lo < 0 <= hi:
            # split at zero: does (0, hi] still contain it?
            if p(Fraction(0)) == 0:
                continue  # the root is 0 itself only if p(0)=0; else look right
            if sturm_count(squarefree_part(p), Fraction(0), hi) == 0:
                continue
            lo = Fraction(0)
        if hi <= 0:
            continue
        return refine_root(p, lo, hi, bits)
    return None
