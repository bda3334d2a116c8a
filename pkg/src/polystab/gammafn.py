"""Certified log-gamma and the spectral gamma-quotient residual.

Everything returns RInterval enclosures with proven error bounds:

* pi and ln 2 from integer-scaled Machin / atanh series with explicit tails,
* ln via argument reduction to [3/4, 3/2) and the atanh power series whose
  tail is bounded by a geometric series,
* ln-gamma by shifting the argument up until the Stirling series with exact
  Bernoulli numbers has a provably tiny first omitted term (which bounds the
  remainder for real positive arguments),
* expm1 by its Taylor series with a factorial tail bound.

No floating point is involved anywhere.
"""

from fractions import Fraction
from math import comb

from .interval import RInterval, DEFAULT_PREC

_F0 = Fraction(0)
_F1 = Fraction(1)


class GammaPole(ArithmeticError):
    """Gamma quotient evaluated where an argument may hit a pole."""


# --- Bernoulli numbers (exact) ---

_bern = [Fraction(1), Fraction(-1, 2)]


def bernoulli(m):
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    while len(_bern) <= m:
        k = len(_bern)
        if k % 2 == 1:
            _bern.append(_F0)
            continue
        # sum_{j=0}^{k} C(k+1, j) B_j = 0
        acc = _F0
        for j in range(k):
            bj = _bern[j]
            if bj:
                acc += comb(k + 1, j) * bj
        _bern.append(-acc / (k + 1))
    return _bern[m]


# --- pi and ln 2 ---

_pi_cache = {}
_ln2_cache = {}
_lntwopi_cache = {}


def _atan_inv_scaled(x, s):
    """Integer pair (lo, hi) with atan(1/x)*2^s in [lo*2^-s... actually [lo, hi] at scale 2^-s."""
    lo = hi = 0
    i = 0
    xp = x  # x^(2i+1)
    top = 1 << s
    while True:
        d = (2 * i + 1) * xp
        if d > top:
            break
        t = top // d  # floor, true term in [t, t+1)
        if i % 2 == 0:
            lo += t
            hi += t + 1
        else:
            lo -= t + 1
            hi -= t
        i += 1
        xp *= x * x
    # alternating series: remaining tail is below one unit at this scale
    return lo - 1, hi + 1


def pi_interval(prec=DEFAULT_PREC):
    """Machin: pi = 16 atan(1/5) - 4 atan(1/239)."""
    if prec in _pi_cache:
        return _pi_cache[prec]
    s = prec + 10
    lo5, hi5 = _atan_inv_scaled(5, s)
    lo239, hi239 = _atan_inv_scaled(239, s)
    lo = 16 * lo5 - 4 * hi239
    hi = 16 * hi5 - 4 * lo239
    out = RInterval(lo, -s, hi, -s, prec)
    _pi_cache[prec] = out
    return out


def ln2_interval(prec=DEFAULT_PREC):
    """ln 2 = 2 atanh(1/3) = 2 sum 1/((2i+1) 3^(2i+1))."""
    if prec in _ln2_cache:
        return _ln2_cache[prec]
    s = prec + 10
    lo = hi = 0
    i = 0
    xp = 3
    top = 1 << s
    while True:
        d = (2 * i + 1) * xp
        if d > top:
            break
        t = top // d
        lo += t
        hi += t + 1
        i += 1
        xp *= 9
    hi += 2  # geometric tail of the positive series is under 9/8 of a unit
    out = RInterval(2 * lo, -s, 2 * hi, -s, prec)
    _ln2_cache[prec] = out
    return out


def ln_two_pi_interval(prec=DEFAULT_PREC):
    if prec not in _lntwopi_cache:
        _lntwopi_cache[prec] = ln2_interval(prec) + ln_interval(pi_interval(prec), prec)
    return _lntwopi_cache[prec]


# --- ln and expm1 ---

def _ln_fraction(v, prec):
    """RInterval enclosure of ln(v) for an exact rational v > 0."""
    if v <= 0:
        raise ValueError(f"ln of nonpositive rational {v}")
    # reduce v = f * 2^j with f in [3/4, 3/2)
    j = v.numerator.bit_length() - v.denominator.bit_length()
    f = v / Fraction(2) ** j
    if f < Fraction(3, 4):
        f *= 2
        j -= 1
    elif f >= Fraction(3, 2):
        f /= 2
        j += 1
    # ln f = 2 atanh(u), u = (f-1)/(f+1), |u| <= 1/5
    u = (f - 1) / (f + 1)
    if u == 0:
        series = RInterval.from_int(0, prec)
    else:
        u2 = u * u
        tol = Fraction(1, 1 << (prec + 10))
        s = _F0
        upow = u
        i = 0
        while True:
            s += upow / (2 * i + 1)
            upow *= u2
            i += 1
            if abs(upow) / (2 * i + 1) < tol:
                break
        tail = abs(upow) / ((2 * i + 1) * (1 - u2))
        series = RInterval.from_fractions(2 * (s - tail), 2 * (s + tail), prec)
    out = series
    if j:
        out = out + j * ln2_interval(prec)
    return out


def ln_interval(x, prec=None):
    """Certified ln on a positive interval (ln is increasing)."""
    if prec is None:
        prec = x.prec
    if x.lo() <= 0:
        raise ValueError(f"ln of interval reaching {float(x.lo())}")
    lo = _ln_fraction(x.lo(), prec)
    hi = _ln_fraction(x.hi(), prec)
    return RInterval(lo.lo_m, lo.lo_e, hi.hi_m, hi.hi_e, prec)


def _expm1_fraction(v, prec):
    """RInterval enclosure of e^v - 1 for rational v with |v| < 2."""
    if abs(v) >= 2:
        raise ValueError("expm1 argument reduction not implemented for |v| >= 2")
    if v == 0:
        return RInterval.from_int(0, prec)
    tol = Fraction(1, 1 << (prec + 10))
    s = _F0
    t = _F1
    i = 0
    while True:
        i += 1
        t = t * v / i
        s += t
        if abs(t) < tol and i > 2 * abs(v) + 2:
            break
    # |tail| <= |t| * q / (1 - q) with q = |v|/(i+1) < 1/2 once i > 2|v|+1
    q = abs(v) / (i + 1)
    tail = abs(t) * q / (1 - q)
    return RInterval.from_fractions(s - tail, s + tail, prec)


def expm1_interval(x, prec=None):
    """Certified e^x - 1 on an interval (increasing in x)."""
    if prec is None:
        prec = x.prec
    lo = _expm1_fraction(x.lo(), prec)
    hi = _expm1_fraction(x.hi(), prec)
    return RInterval(lo.lo_m, lo.lo_e, hi.hi_m, hi.hi_e, prec)


# --- log-gamma ---

def _stirling_shift(prec):
    # first omitted Stirling term behaves like e^(-2 pi w); force it under 2^-(prec+16)
    return max(20, (prec + 16) // 9 + 2)


def lngamma_fraction(z, prec=DEFAULT_PREC):
    """RInterval enclosure of ln Gamma(z) for exact rational z > 0."""
    z = Fraction(z)
    if z <= 0:
        raise GammaPole(f"ln-gamma at nonpositive rational {z}")
    w0 = _stirling_shift(prec)
    j = max(0, -int((z - w0) // 1))  # smallest j with z + j >= w0
    w = z + j
    # Stirling: (w-1/2)ln w - w + ln(2 pi)/2 + sum B_2i/((2i)(2i-1) w^(2i-1))
    lnw = _ln_fraction(w, prec)
    acc = (RInterval.from_fraction(w - Fraction(1, 2), prec) * lnw
           - RInterval.from_fraction(w, prec)
           + ln_two_pi_interval(prec) * Fraction(1, 2))
    tol = Fraction(1, 1 << (prec + 10))
    s = _F0
    w2 = w * w
    wpow = w  # w^(2i-1)
    i = 1
    prev = None
    while True:
        t = bernoulli(2 * i) / ((2 * i) * (2 * i - 1) * wpow)
        if prev is not None and abs(t) >= abs(prev):
            # asymptotic series started diverging; remainder bound is |t|
            bound = abs(t)
            break
        s += t
        if abs(t) < tol:
            # remainder of the Stirling series is at most the first omitted term
            wpow *= w2
            bound = abs(bernoulli(2 * i + 2) / ((2 * i + 2) * (2 * i + 1) * wpow))
            break
        prev = t
        wpow *= w2
        i += 1
    acc = acc + RInterval.from_fractions(s - bound, s + bound, prec)
    # undo the shift: ln Gamma(z) = ln Gamma(z + j) - sum ln(z + i)
    for i in range(j):
        acc = acc - _ln_fraction(z + i, prec)
    return acc


def psi_fraction(z, prec=DEFAULT_PREC):
    """RInterval enclosure of digamma(z) for exact rational z > 0."""
    z = Fraction(z)
    if z <= 0:
        raise GammaPole(f"digamma at nonpositive rational {z}")
    w0 = _stirling_shift(prec)
    j = max(0, -int((z - w0) // 1))
    w = z + j
    lnw = _ln_fraction(w, prec)
    acc = lnw - RInterval.from_fraction(Fraction(1, 2) / w, prec)
    tol = Fraction(1, 1 << (prec + 10))
    s = _F0
    w2 = w * w
    wpow = w2  # w^(2i)
    i = 1
    prev = None
    while True:
        t = bernoulli(2 * i) / (2 * i * wpow)
        if prev is not None and abs(t) >= abs(prev):
            bound = abs(t)
            break
        s -= t
        if abs(t) < tol:
            wpow *= w2
            bound = abs(bernoulli(2 * i + 2) / ((2 * i + 2) * wpow))
            break
        prev = t
        wpow *= w2
        i += 1
    acc = acc + RInterval.from_fractions(s - bound, s + bound, prec)
    for i in range(j):
        acc = acc - RInterval.from_fraction(1 / (z + i), prec)
    return acc


def lngamma_interval(z, prec=None):
    """Certified ln Gamma over a positive interval.

    ln Gamma dips once (near 1.4616); monotonicity on the given interval is
    decided with certified digamma signs, and the non-monotone case falls
    back to a mean value bound.
    """
    if prec is None:
        prec = z.prec
    a, b = z.lo(), z.hi()
    if a <= 0:
        raise GammaPole(f"ln-gamma over interval reaching {float(a)}")
    la = lngamma_fraction(a, prec)
    if a == b:
        return la
    lb = lngamma_fraction(b, prec)
    # the dip of ln-gamma sits inside (1.46, 1.47)
    if b <= Fraction(146, 100):
        psi = psi_fraction(b, prec)
        if psi.hi() <= 0:  # decreasing on [a, b]
            return RInterval(lb.lo_m, lb.lo_e, la.hi_m, la.hi_e, prec)
    if a >= Fraction(147, 100):
        psi = psi_fraction(a, prec)
        if psi.lo() >= 0:  # increasing on [a, b]
            return RInterval(la.lo_m, la.lo_e, lb.hi_m, lb.hi_e, prec)
    # interval straddles the minimum: mean value theorem with |psi| bound
    pa = psi_fraction(a, prec)
    pb = psi_fraction(b, prec)
    slope = max(abs(pa.lo()), abs(pa.hi()), abs(pb.lo()), abs(pb.hi()))
    lo = min(la.lo(), lb.lo()) - (b - a) * slope
    hi = max(la.hi(), lb.hi())
    return RInterval.from_fractions(lo, hi, prec)


def gamma_quotient_residual(n, k, prec=DEFAULT_PREC):
    """Residual of the closed form spectral bound at the exponent threshold.

    For integer n and an interval enclosure of k strictly inside
    (0, (n-8)/2), computes expm1 of

        ln(1 + 8/k) + lnG(n/2 - k/2) + lnG(4 + k/2)
        - lnG(k/2) - lnG((n-8)/2 - k/2) - 2 [lnG((n+8)/4) - lnG((n-8)/4)]

    which is exactly LHS/RHS - 1 of the product identity under test.
    Raises GammaPole unless the domain condition is certain.
    """
    if not (k.lo() > 0 and k.hi() < Fraction(n - 8, 2)):
        raise GammaPole(
            f"k enclosure [{float(k.lo())}, {float(k.hi())}] not strictly inside "
            f"(0, {(n - 8) / 2})")
    # outward-round k down to the working precision so a very fine input
    # enclosure does not inflate every series denominator downstream
    k = RInterval(k.lo_m, k.lo_e, k.hi_m, k.hi_e, prec)
    half_k = k * Fraction(1, 2)
    arg1 = RInterval.from_fraction(Fraction(n, 2), prec) - half_k
    arg2 = RInterval.from_fraction(Fraction(4), prec) + half_k
    arg3 = half_k
    arg4 = RInterval.from_fraction(Fraction(n - 8, 2), prec) - half_k
    delta = (ln_interval(k + 8, prec) - ln_interval(k, prec)
             + lngamma_interval(arg1, prec) + lngamma_interval(arg2, prec)
             - lngamma_interval(arg3, prec) - lngamma_interval(arg4, prec)
             - 2 * (lngamma_fraction(Fraction(n + 8, 4), prec)
                    - lngamma_fraction(Fraction(n - 8, 4), prec)))
    return expm1_interval(delta, prec)
