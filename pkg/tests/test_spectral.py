"""Spectral polynomial family: J construction, q values, W positivity
targets, the quartic reduction, and the transcendental Gamma crosscheck."""

import json
from fractions import Fraction

import pytest

from polystab import spectral
from polystab.bipoly import APoly2, BiPoly, substitute_bivariate
from polystab.gammafn import GammaPole
from polystab.interval import RInterval
from polystab.upoly import UPoly


@pytest.fixture(scope="module")
def jj():
    return spectral.build_J()


@pytest.fixture(scope="module")
def qq():
    return spectral.build_q()


@pytest.fixture(scope="module")
def ws(jj, qq):
    return spectral.build_W(jj, qq)


def test_j_dual_route_and_symmetry(jj):
    # build_J raises internally if the sphere-decomposition route disagrees
    assert set(jj) == {0, 1, 2, 3}
    assert spectral.j0_is_symmetric(jj)


def test_j3_stated_sum(jj):
    kk, nn = BiPoly.k(), BiPoly.n()
    stated = ((kk + 6) * (kk + 8 - nn) + (kk + 4) * (kk + 6 - nn)
              + kk * (kk + 2 - nn) + (kk + 2) * (kk + 4 - nn))
    assert -jj[3] == stated


def test_j0_vanishes_at_zero_and_matches_q0_on_axis(jj, qq):
    for n in (9, 10, 12, 17, 25, 60):
        assert jj[0].at_n(n)(0) == 0
        assert jj[0].at_n(n)(Fraction(n - 8, 2)) == qq[0](n)


def test_j_expansion_sympy_oracle(jj):
    sympy = pytest.importorskip("sympy")
    k, n, mu = sympy.symbols("k n mu")
    prod = sympy.prod(
        ((k + 2 * i) * (k + 2 * i + 2 - n) - mu) for i in range(4))
    poly = sympy.Poly(sympy.expand(prod), mu)
    for j in (0, 1, 2, 3):
        mine = sum(
            sympy.Rational(c.numerator, c.denominator) * k**kp * n**np
            for kp, cn in enumerate(jj[j].coeffs)
            for np, c in enumerate(cn.coeffs))
        assert sympy.expand(poly.coeff_monomial(mu**j) - mine) == 0


def test_q_values(qq):
    assert qq[0](10) == 11025
    # after sign simplification q0 collapses to a product of positives
    q = UPoly((Fraction(-4), Fraction(1, 2)))
    assert qq[0] == (q * (q + 2) * (q + 4) * (q + 6)) ** 2
    assert qq[4] == UPoly.constant(1)
    # q3 is twice the stated cross sum, which collapses to n^2 - 4n - 16
    assert qq[3](10) == 44
    assert qq[3].coeffs == (Fraction(-16), Fraction(-4), Fraction(1))


def test_w_matches_stated_expansions(ws):
    _, comparison = ws
    assert [row["status"] for row in comparison] == ["Match"] * 3


def test_w_spot_coefficients(ws):
    table, _ = ws
    assert table[3].coeffs[2].coeffs == (Fraction(-64), Fraction(4))
    assert table[1].coeffs[0].coeffs == (
        Fraction(-73728), Fraction(39936), Fraction(-6912), Fraction(384))
    assert table[2].coeffs[5] == UPoly.constant(6)


def test_w2_under_t_shift(ws):
    w2t = spectral.w_in_t(2, ws[0])
    assert w2t.terms[(0, 0)] == 554
    t8 = {i: c for (i, j), c in w2t.terms.items() if j == 8}
    assert t8 == {0: Fraction(3), 2: Fraction(-3, 2)}
    t7 = {i: c for (i, j), c in w2t.terms.items() if j == 7}
    assert t7 == {1: Fraction(-3), 3: Fraction(3)}


def test_w3_under_t_shift_full(ws):
    w3t = spectral.w_in_t(3, ws[0])
    assert w3t.terms == {
        (0, 0): Fraction(-140), (1, 1): Fraction(-20),
        (0, 2): Fraction(-34), (2, 2): Fraction(-4),
        (1, 3): Fraction(-4), (3, 3): Fraction(4),
        (0, 4): Fraction(8), (2, 4): Fraction(-2)}


def test_quartic_reduction(jj, qq):
    out = spectral.quartic_reduction(jj, qq)
    coeffs = out["quartic"]
    assert len(coeffs) == 5
    assert coeffs[4] == UPoly.constant(1)  # monic in t
    statuses = {row["symbol"]: row["status"] for row in out["comparison"]}
    assert statuses == {"t^0": "Match", "t^1": "Mismatch", "t^2": "Match",
                        "t^3": "Match", "t^4": "Match"}
    # the single mismatch is the known display slip: stated minus true = 21 n^3
    diff = next(r["diff"] for r in out["comparison"] if r["symbol"] == "t^1")
    assert diff == UPoly((0, 0, 0, Fraction(21)))
    # the stated constant term, coefficient for coefficient
    assert coeffs[0] == UPoly((81, 0, -109, 16, Fraction(115, 8), -2,
                               Fraction(-7, 16), Fraction(1, 16)))


def test_quartic_root_bracketing(jj, qq):
    # at n = 20 the reduction vanishes at t = d(20)^2 with
    # d(20) = 5 - R1(20) = 4.07553574874693
    coeffs = spectral.quartic_reduction(jj, qq)["quartic"]
    quart = UPoly(tuple(c(20) for c in coeffs))
    d = Fraction(407553574874693, 10 ** 14)
    lo, hi = d * d - Fraction(1, 10 ** 6), d * d + Fraction(1, 10 ** 6)
    assert quart(lo) * quart(hi) < 0


def test_odd_power_guard(jj, qq):
    # keeping the k prefactor (so the full k(pJ0 - q0)) breaks evenness
    target = BiPoly.k() * (spectral.p_j0() - BiPoly((qq[0],)))
    a, t = APoly2.var_a(), APoly2.var_t()
    shifted = substitute_bivariate(target, (t - 10) * Fraction(1, 2) - a, t)
    with pytest.raises(spectral.OddPowerResidue):
        spectral.even_a_coefficients(shifted)


def test_p_j0_ties_to_j0(jj):
    assert BiPoly.k() * spectral.p_j0() == (BiPoly.k() + 8) * jj[0]


def test_gamma_crosscheck_at_root():
    r = Fraction(924464251253069, 10 ** 15)  # R1(20)
    kenc = RInterval.from_fractions(r - Fraction(1, 10 ** 12),
                                    r + Fraction(1, 10 ** 12))
    res = spectral.gamma_crosscheck(20, kenc)
    assert res.lo() <= 0 <= res.hi()
    assert res.width() < Fraction(1, 10 ** 9)


def test_gamma_crosscheck_off_root():
    res = spectral.gamma_crosscheck(18, RInterval.from_fraction(Fraction(5, 2)))
    assert res.lo() > 0 or res.hi() < 0


def test_gamma_crosscheck_mpmath_oracle():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    n, k = 18, Fraction(5, 2)
    g = mpmath.gamma
    km = mpmath.mpf(k.numerator) / k.denominator
    lhs = (1 + 8 / km) * g((n - km) / 2) * g(4 + km / 2) \
        / (g(km / 2) * g((n - 8 - km) / 2))
    rhs = (g(mpmath.mpf(n + 8) / 4) / g(mpmath.mpf(n - 8) / 4)) ** 2
    want = Fraction(mpmath.nstr(lhs / rhs - 1, 30))
    res = spectral.gamma_crosscheck(n, RInterval.from_fraction(k))
    assert res.lo() <= want <= res.hi()


def test_gamma_crosscheck_guards():
    with pytest.raises(GammaPole):
        spectral.gamma_crosscheck(
            18, RInterval.from_fractions(Fraction(0), Fraction(1, 1000)))
    with pytest.raises(ValueError):
        spectral.gamma_crosscheck(17, RInterval.from_fraction(Fraction(5, 2)))


def test_dump_is_json_ready():
    d = spectral.dump()
    blob = json.dumps(d)
    assert json.loads(blob)["J0_symmetric"] is True
    statuses = [row["status"] for row in d["comparison"]]
    assert statuses.count("Mismatch") == 1
