"""Joseph-Lundgren stability exponents p_c(m, n) for orders m = 1..4.

Each order has a closed radical formula: square roots for m = 1, 2 and a
nested cube-root cascade for m = 3, 4.  Everything is evaluated in outward
rounded interval arithmetic, every even-root radicand is certified
nonnegative before the root is taken (exactly, when it is a polynomial in
n), and the quartic-order radical d(n) is validated a posteriori against
the spectral quartic, which also pins down the real cube-root branch.
"""

from fractions import Fraction

from .interval import (MAX_PREC, NegativeRadicand, PrecisionExhausted,
                       RInterval)
from .upoly import UPoly

THRESHOLDS = {1: 10, 2: 12, 3: 14, 4: 17}

# radical cascade for the order-4 exponent, polynomials in n.
# the n^15 coefficient of d1 is 25392; the display says 25396, which makes
# the final root miss the spectral quartic (see errata()).
CASCADE = {
    "d0": UPoly([2097152, 0, -1572864, 147456, -132096, 27648, 36928,
                 -5184, -396, 180, Fraction(-45, 4)]),
    "d1": UPoly([0, 0, 0, 0,
                 -16106127360, 2415919104, 14294188032, -3265265664,
                 -2620588032, 677117952, 135979008, -48427008, 1979904,
                 947712, -279456, 25392, 3888, -1056, Fraction(21, 8),
                 Fraction(303, 16), Fraction(-123, 128), Fraction(-33, 128),
                 Fraction(81, 2048), Fraction(-9, 4096),
                 Fraction(3, 65536)]),
    "d3": UPoly([0, 0, 128]),
    "d4": UPoly([Fraction(-8192, 3), 0, Fraction(4096, 3), -128,
                 Fraction(-584, 3), 16, 1, Fraction(-1, 2),
                 Fraction(1, 32)]),
    "d5": UPoly([Fraction(128, 3), 0, Fraction(40, 3)]),
}

# radical cascade for the order-3 exponent
TRI_CASCADE = {
    "D1": UPoly([-94976, 20736, 103104, -10368, -3024, 1296, -108]),
    "D2": UPoly([6131712, -3039232, -16644096, 4818944, 6915840, -1936384,
                 -690432, 251136, -30864, -4320, 1800, -216, 9]),
}


class _NotYet(ArithmeticError):
    """Sign or zero test unresolved at the current precision (retryable)."""


def _sqrt_certified(x, what):
    if x.hi() < 0:
        raise NegativeRadicand(f"{what} is negative")
    if x.lo() < 0:
        raise _NotYet(what)
    return x.sqrt()


def _refine(fn, prec=128, max_prec=MAX_PREC, narrow_enough=None):
    """Run fn(p) at doubling precision, intersecting successive enclosures.

    Retries when a sign test or interval division was unresolved; a
    certified negative radicand aborts immediately.
    """
    best = None
    p = prec
    while p <= max_prec:
        try:
            cur = fn(p)
        except (_NotYet, ZeroDivisionError):
            p *= 2
            continue
        best = cur if best is None else best.intersect(cur)
        if narrow_enough is None:
            scale = max(abs(best.lo()), abs(best.hi()), Fraction(1))
            if best.width() <= scale * Fraction(1, 2 ** 80):
                return best
        elif narrow_enough(best):
            return best
        p *= 2
    raise PrecisionExhausted(f"no convergence by {max_prec} bits")


def _d_once(n, p):
    """One interval pass through the order-4 cascade at fixed precision."""
    d1 = CASCADE["d1"](n)
    if d1 < 0:
        raise NegativeRadicand(f"d1({n}) = {d1} < 0")
    s1 = RInterval.from_fraction(d1, p).sqrt()
    d2 = (RInterval.from_fraction(CASCADE["d0"](n), p) + 12 * s1).cbrt()
    if d2.contains_zero():
        raise _NotYet("d2")
    d4 = RInterval.from_fraction(CASCADE["d4"](n), p)
    d5 = RInterval.from_fraction(CASCADE["d5"](n), p)
    d6 = d5 * Fraction(1, 2) + d2 * Fraction(1, 6) - d4 / d2
    s6 = _sqrt_certified(d6, "d6")
    if s6.contains_zero():
        raise _NotYet("sqrt(d6)")
    d7 = d5 - d2 * Fraction(1, 6) + d4 / d2
    inner = d7 + RInterval.from_fraction(CASCADE["d3"](n), p) / s6
    s_in = _sqrt_certified(inner, "d7 + d3/sqrt(d6)")
    rad = Fraction(n * n, 4) + 5 + s6 * Fraction(1, 2) - s_in * Fraction(1, 2)
    return _sqrt_certified(rad, "d^2")


def eval_d(n, prec=None, narrow_enough=None):
    """Interval enclosure of the order-4 radical d(n), n >= 18.

    prec=None refines adaptively (monotone: results at doubled precision
    are intersected); an integer prec does a single pass at that budget.
    """
    if n < 18:
        raise ValueError(f"d(n) needs n >= 18, got {n}")
    if prec is not None:
        try:
            return _d_once(n, prec)
        except (_NotYet, ZeroDivisionError) as exc:
            raise PrecisionExhausted(f"{exc} at {prec} bits") from exc
    return _refine(lambda p: _d_once(n, p), narrow_enough=narrow_enough)


def _tri_once(n, p):
    d2v = TRI_CASCADE["D2"](n)
    if d2v < 0:
        raise NegativeRadicand(f"D2({n}) = {d2v} < 0")
    s2 = RInterval.from_fraction(d2v, p).sqrt()
    d0 = -(RInterval.from_fraction(TRI_CASCADE["D1"](n), p) + 36 * s2).cbrt()
    if d0.contains_zero():
        raise _NotYet("D0")
    rad = (9 * n * n + 96 - (1536 + 1152 * n * n) / d0
           - d0 * Fraction(3, 2))
    return _sqrt_certified(rad, "D^2") * Fraction(1, 6)


def eval_D_tri(n, prec=None, narrow_enough=None):
    """Interval enclosure of the order-3 radical D(n), n >= 15."""
    if n < 15:
        raise ValueError(f"D(n) needs n >= 15, got {n}")
    if prec is not None:
        try:
            return _tri_once(n, prec)
        except (_NotYet, ZeroDivisionError) as exc:
            raise PrecisionExhausted(f"{exc} at {prec} bits") from exc
    return _refine(lambda p: _tri_once(n, p), narrow_enough=narrow_enough)


def sobolev(m, n):
    """Critical Sobolev exponent (n+2m)/(n-2m); every finite p_c sits
    strictly above it."""
    if n <= 2 * m:
        raise ValueError(f"need n > {2 * m}")
    return Fraction(n + 2 * m, n - 2 * m)


def _pc_once(m, n, p):
    if m == 1:
        num = (n - 2) ** 2 - 4 * n + 8 * RInterval.from_int(n - 1, p).sqrt()
        return num / ((n - 2) * (n - 10))
    if m == 2:
        w = RInterval.from_int(n * n - 8 * n + 32, p).sqrt()
        s = _sqrt_certified(n * n + 4 - n * w, "n^2+4-n*sqrt(n^2-8n+32)")
        return (n + 2 - s) / (n - 6 - s)
    if m == 3:
        d = _tri_once(n, p)
        return (n + 4 - 2 * d) / (n - 8 - 2 * d)
    d = _d_once(n, p)
    return (n + 6 - 2 * d) / (n - 10 - 2 * d)


def pc(m, n, prec=None):
    """Stability exponent for order m in dimension n.

    Returns the string "inf" at and below the order's threshold dimension
    (10, 12, 14, 17), an RInterval enclosure above it.
    """
    if m not in THRESHOLDS:
        raise ValueError(f"order must be 1..4, got {m}")
    if n < 2 * m + 1:
        raise ValueError(f"order {m} needs n >= {2 * m + 1}, got {n}")
    if n <= THRESHOLDS[m]:
        return "inf"
    if prec is not None:
        try:
            return _pc_once(m, n, prec)
        except (_NotYet, ZeroDivisionError) as exc:
            raise PrecisionExhausted(f"{exc} at {prec} bits") from exc
    return _refine(lambda p: _pc_once(m, n, p))


def pc_identity_order4():
    """(n+6-2d)/(n-10-2d) == 1 + 8/R1 with R1 = (n-10)/2 - d, verified by
    cross multiplication as rational functions of the symbol d."""
    from .bipoly import BiPoly
    x, nn = BiPoly.k(), BiPoly.n()        # x stands for the radical d
    lhs_num, lhs_den = nn + 6 - 2 * x, nn - 10 - 2 * x
    rhs_num = (nn - 10) * Fraction(1, 2) - x + 8
    rhs_den = (nn - 10) * Fraction(1, 2) - x
    return (lhs_num * rhs_den - rhs_num * lhs_den).is_zero()


def record(m, n, prec=None):
    """Exponent record: order, n, p_c, the defining radical, and the shifted
    roots R1, R2 it generates (orders 3 and 4)."""
    out = {"order": m, "n": n, "p_c": pc(m, n, prec), "radical": None,
           "R1": None, "R2": None, "precision": prec}
    if out["p_c"] == "inf":
        return out
    if m == 4:
        d = eval_d(n, prec)
        shift = Fraction(n - 10, 2)
    elif m == 3:
        d = eval_D_tri(n, prec)
        shift = Fraction(n - 8, 2)
    else:
        out["precision"] = out["p_c"].prec
        return out
    out["radical"] = d
    out["R1"] = shift - d
    out["R2"] = shift + d
    out["precision"] = out["p_c"].prec
    return out


_QUARTIC = []


def _quartic_coeffs():
    if not _QUARTIC:
        from .spectral import quartic_reduction
        _QUARTIC.extend(quartic_reduction()["quartic"])
    return _QUARTIC


def validate_root(n, width_target=Fraction(1, 10 ** 20)):
    """True iff the spectral quartic vanishes at t = d(n)^2 (enclosure of 0
    narrower than width_target) and R1 lands strictly inside (0, (n-8)/2).

    This is the a posteriori check that the cube root in the cascade picked
    the right branch and that d1's corrected coefficient is the true one.
    """
    if n < 18:
        raise ValueError(f"root validation needs n >= 18, got {n}")
    cn = [c(n) for c in _quartic_coeffs()]

    def fn(p):
        t = _d_once(n, p) ** 2
        acc = RInterval.from_fraction(cn[4], p)
        for c in reversed(cn[:4]):
            acc = acc * t + c
        return acc

    try:
        val = _refine(fn, prec=192,
                      narrow_enough=lambda iv: iv.width() < width_target)
    except PrecisionExhausted:
        return False
    if not (val.lo() <= 0 <= val.hi()):
        return False
    d = eval_d(n)
    r1_lo = Fraction(n - 10, 2) - d.hi()
    r1_hi = Fraction(n - 10, 2) - d.lo()
    return r1_lo > 0 and r1_hi < Fraction(n - 8, 2)


def certify_d_lt_sqrt(n_lo, n_hi, rel_bits=48):
    """Certify d(n) < sqrt(n) for every n in [n_lo, n_hi] by comparing
    directed endpoints; reports the d/sqrt(n) ratio at both ends.

    The cascade cancels ~3 log2(n) leading bits, so each n is refined
    adaptively to relative width 2^-rel_bits rather than at a fixed budget.
    """
    if n_lo > n_hi:
        raise ValueError(f"empty range {n_lo}..{n_hi}")
    if n_lo < 18:
        raise ValueError(f"d(n) needs n >= 18, got {n_lo}")

    def narrow(iv):
        return iv.lo() > 0 and iv.width() < iv.lo() * Fraction(1, 2 ** rel_bits)

    failures = []
    ratios = {}
    for n in range(n_lo, n_hi + 1):
        d = eval_d(n, None, narrow)
        rn = RInterval.from_int(n, 128).sqrt()
        if not d.hi() < rn.lo():
            failures.append(n)
        if n in (n_lo, n_hi):
            ratios[n] = d / rn
    return {"range": [n_lo, n_hi], "all_certified": not failures,
            "failures": failures, "ratios": ratios}


def errata():
    return [
        "the n^15 coefficient of d1 reads 25396 in the display; the root "
        "only satisfies the spectral quartic with 25392",
        "the order-3 radical display writes d_0(n) inside the square root "
        "where the cube-root quantity D_0 is meant",
    ]
