"""Stability exponents: radical cascades, thresholds, root validation."""

from fractions import Fraction

import pytest

from polystab import exponents as E
from polystab.interval import PrecisionExhausted, RInterval
from polystab.upoly import UPoly


def dec(s):
    return Fraction(s)


# independently computed reference decimals (high precision evaluation of
# the same radicals), trusted to ~1e-12 relative
FROZEN = {
    "d18": dec("3.77915075986195"),
    "d20": dec("4.07553574874693"),
    "R1_18": dec("0.220849240138052"),
    "R1_19": dec("0.568530706776"),
    "R1_20": dec("0.924464251253069"),
    "R1_30": dec("4.75512473445238"),
    "R1_60": dec("17.3647388330241"),
    (1, 11): dec("6.92202458682"),
    (2, 13): dec("28.1723798199"),
    (3, 15): dec("6158.31559271"),
    (3, 16): dec("18.4969784064"),
    (3, 20): dec("4.35787792918"),
    (4, 18): dec("37.223805864124"),
    (4, 19): dec("15.071359567142"),
    (4, 20): dec("9.6536607436754"),
    (4, 30): dec("2.6823954042756"),
    (4, 60): dec("1.4607037328304"),
}


def assert_close(iv, want, tol):
    assert iv.lo() - tol <= want <= iv.hi() + tol
    assert iv.width() < tol


def test_d_values():
    assert_close(E.eval_d(18), FROZEN["d18"], Fraction(1, 10 ** 12))
    assert_close(E.eval_d(20), FROZEN["d20"], Fraction(1, 10 ** 12))


def test_r1_values():
    for n in (18, 19, 20, 30, 60):
        d = E.eval_d(n)
        r1 = Fraction(n - 10, 2) - d.hi(), Fraction(n - 10, 2) - d.lo()
        want = FROZEN[f"R1_{n}"]
        assert r1[0] - Fraction(1, 10 ** 11) <= want <= r1[1] + Fraction(1, 10 ** 11)


def test_pc_frozen_decimals():
    for key, want in FROZEN.items():
        if not isinstance(key, tuple):
            continue
        m, n = key
        assert_close(E.pc(m, n), want, Fraction(1, 10 ** 9))


def test_pc_1_11_exact_form():
    # (37 + 8 sqrt(10)) / 9
    v = E.pc(1, 11)
    ref = (37 + 8 * RInterval.from_int(10, 256).sqrt()) * Fraction(1, 9)
    assert v.intersect(ref).width() >= 0  # nonempty intersection
    assert abs(v.mid() - ref.mid()) < Fraction(1, 10 ** 20)


def test_thresholds_exact():
    for m, thr in E.THRESHOLDS.items():
        for n in range(2 * m + 1, thr + 1):
            assert E.pc(m, n) == "inf"
        for n in range(thr + 1, thr + 6):
            v = E.pc(m, n)
            assert v != "inf" and v.lo() > 1


def test_above_sobolev():
    for m in (1, 2, 3, 4):
        for n in range(E.THRESHOLDS[m] + 1, 101):
            v = E.pc(m, n)
            assert v.lo() > E.sobolev(m, n), (m, n)


def test_usage_errors():
    with pytest.raises(ValueError):
        E.eval_d(17)
    with pytest.raises(ValueError):
        E.eval_D_tri(14)
    with pytest.raises(ValueError):
        E.pc(4, 8)          # below 2m+1
    with pytest.raises(ValueError):
        E.pc(5, 30)
    with pytest.raises(ValueError):
        E.certify_d_lt_sqrt(30, 20)
    with pytest.raises(ValueError):
        E.certify_d_lt_sqrt(10, 20)


def test_radicands_positive_exactly():
    # the polynomial radicands admit exact sign checks
    assert E.TRI_CASCADE["D2"](15) > 0
    for n in range(18, 200):
        assert E.CASCADE["d1"](n) > 0
    assert E.pc(3, 15).lo() > Fraction(19, 7)


def test_d_below_sqrt_n():
    d = E.eval_d(18)
    assert d.hi() ** 2 < 18
    out = E.certify_d_lt_sqrt(18, 60)
    assert out["all_certified"] and not out["failures"]
    r = out["ratios"][60]
    assert Fraction(1, 2) < r.lo() and r.hi() < 1


def test_monotone_refinement():
    loose = E.eval_d(20, 128)
    tight = E.eval_d(20)
    assert loose.lo() <= tight.lo() <= tight.hi() <= loose.hi()


def test_precision_exhaustion_single_shot():
    # 16 bits cannot separate the cascade's cancellations at large n
    with pytest.raises(PrecisionExhausted):
        E.eval_d(10 ** 8, 16)


def test_validate_root_samples():
    for n in (18, 19, 20, 50, 200):
        assert E.validate_root(n)
    with pytest.raises(ValueError):
        E.validate_root(17)


def test_validate_root_rejects_display_coefficient(monkeypatch):
    # with the displayed 25396 n^15 term the root misses the quartic
    bad = E.CASCADE["d1"] + UPoly.monomial(15, 4)
    monkeypatch.setitem(E.CASCADE, "d1", bad)
    assert not E.validate_root(18)


def test_pc_identity_order4():
    assert E.pc_identity_order4()


def test_record_shapes():
    rec = E.record(4, 20)
    assert rec["order"] == 4 and rec["n"] == 20
    assert abs(rec["R1"].mid() - FROZEN["R1_20"]) < Fraction(1, 10 ** 12)
    assert abs(rec["R2"].mid() - (5 + FROZEN["d20"])) < Fraction(1, 10 ** 12)
    assert rec["precision"] >= 128

    rec = E.record(4, 17)
    assert rec["p_c"] == "inf" and rec["radical"] is None

    rec = E.record(1, 11)
    assert rec["radical"] is None and rec["R1"] is None
    assert rec["p_c"].lo() > 6

    rec = E.record(3, 16)
    assert rec["R1"].lo() > 0


def test_d_cascade_mpmath_oracle():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 60

    def poly(p, n):
        v = p(n)
        return mpmath.mpf(v.numerator) / v.denominator

    def cbrt_real(x):
        return mpmath.sign(x) * mpmath.cbrt(abs(x))

    for n in (18, 25, 60):
        d0, d1 = poly(E.CASCADE["d0"], n), poly(E.CASCADE["d1"], n)
        d3, d4 = poly(E.CASCADE["d3"], n), poly(E.CASCADE["d4"], n)
        d5 = poly(E.CASCADE["d5"], n)
        d2 = cbrt_real(d0 + 12 * mpmath.sqrt(d1))
        d6 = d5 / 2 + d2 / 6 - d4 / d2
        d7 = d5 - d2 / 6 + d4 / d2
        d = mpmath.sqrt(mpmath.mpf(n * n) / 4 + 5 + mpmath.sqrt(d6) / 2
                        - mpmath.sqrt(d7 + d3 / mpmath.sqrt(d6)) / 2)
        got = E.eval_d(n)
        want = Fraction(mpmath.nstr(d, 40))
        assert got.lo() - Fraction(1, 10 ** 30) <= want
        assert want <= got.hi() + Fraction(1, 10 ** 30)


def test_tri_cascade_mpmath_oracle():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 60

    def poly(p, n):
        v = p(n)
        return mpmath.mpf(v.numerator) / v.denominator

    for n in (15, 16, 20, 40):
        d1, d2 = poly(E.TRI_CASCADE["D1"], n), poly(E.TRI_CASCADE["D2"], n)
        base = d1 + 36 * mpmath.sqrt(d2)
        d0 = -mpmath.sign(base) * mpmath.cbrt(abs(base))
        dd = mpmath.sqrt(9 * n * n + 96 - (1536 + 1152 * n * n) / d0
                         - mpmath.mpf(3) / 2 * d0) / 6
        want = Fraction(mpmath.nstr((n + 4 - 2 * dd) / (n - 8 - 2 * dd), 40))
        got = E.pc(3, n)
        assert got.lo() - Fraction(1, 10 ** 20) <= want
        assert want <= got.hi() + Fraction(1, 10 ** 20)


def test_errata_mentions_both_corrections():
    blob = " ".join(E.errata())
    assert "25396" in blob and "25392" in blob
    assert "D_0" in blob
