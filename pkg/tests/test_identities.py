import random
from fractions import Fraction

import pytest

from polystab import identities as idn
from polystab.diffring import DiffExpr, term
from polystab.upoly import UPoly

ALL_IDS = [f"fd1-{j}" for j in range(1, 8)] + [f"fd2-{j}" for j in range(7)] \
    + ["sec6-A", "sec6-B"]

# stated records whose replay leaves a nonzero defect, frozen exactly
RESIDUALS = {
    "fd1-3": term(-3, 1, (1, 1)) + term(-3, 2, (1, 2)),
    "fd1-6": term(-1, 5, (3, 3)),
    "fd1-7": term(7, 6, (2, 5)) + term(-63, 5, (3, 3)) + term(420, 3, (2, 2)),
    "sec6-A": term(1, 7, (2, 6)) + term(-1, 7, (2, 7)) + term(1, 7, (3, 5))
        + term(-1, 7, (3, 6)) + term(7, 6, (2, 5)) + term(-7, 6, (2, 6)),
    "sec6-B": term(30, 4, (2, 3)) + term(60, 3, (2, 2)),
}

# weight map s -> coefficient of lam^(2s-1) (f^(s))^2 in the derived quad
CANONICAL_QUADS = {
    "fd1-1": {},
    "fd1-2": {1: -1},
    "fd1-3": {1: 3, 2: -1},
    "fd1-4": {1: -12, 2: 6},
    "fd1-5": {1: 60, 2: -40, 3: 1},
    "fd1-6": {1: -360, 2: 300, 3: -15},
    "fd1-7": {1: 2520, 2: -2520, 3: 189, 4: -1},
    "fd2-0": {1: -1},
    "fd2-1": {1: -1},
    "fd2-2": {2: 1},
    "fd2-3": {2: -2},
    "fd2-4": {2: 10, 3: -1},
    "fd2-5": {2: -60, 3: 9},
    "fd2-6": {2: 420, 3: -84, 4: 1},
}


def all_decompositions():
    for j in range(1, 8):
        yield idn.decompose(j, 1)
    for j in range(7):
        yield idn.decompose(j, 2)


def test_catalog_ids_and_shape():
    recs = idn.catalog()
    assert [r["id"] for r in recs] == ALL_IDS
    for r in recs:
        assert set(r) >= {"id", "lhs", "rhs_quadratic", "rhs_derivative_argument"}


def test_verify_statuses():
    for ident in ALL_IDS:
        res = idn.verify(ident)
        if ident in RESIDUALS:
            assert res == RESIDUALS[ident], ident
        else:
            assert res.is_zero(), f"{ident}: {res.pretty()}"


def test_verify_never_corrects():
    # replaying a residual-bearing record twice gives the same defect
    assert idn.verify("fd1-6") == RESIDUALS["fd1-6"]
    assert idn.verify("fd1-6") == RESIDUALS["fd1-6"]


def test_sec6_b_residual_is_an_exact_derivative():
    # the defect is d/dlam(15 lam^4 f''^2), so the identity family still
    # closes after moving one more term into the bracket
    assert RESIDUALS["sec6-B"] == term(15, 4, (2, 2)).d_dlam()


def test_decompose_reconstructs_all_fourteen():
    for rec in all_decompositions():
        assert idn.residual(rec).is_zero(), rec["id"]


def test_canonical_quads():
    for rec in all_decompositions():
        got = idn.quad_coefficients(rec["rhs_quadratic"])
        want = {s: Fraction(c) for s, c in CANONICAL_QUADS[rec["id"]].items()}
        assert got == want, rec["id"]


def test_match_flags():
    quad_off = {rec["id"] for rec in all_decompositions()
                if not rec["quad_matches_catalog"]}
    bracket_off = {rec["id"] for rec in all_decompositions()
                   if not rec["bracket_matches_catalog"]}
    assert quad_off == {"fd1-6"}
    assert bracket_off == {"fd1-3", "fd1-7"}


def test_fd1_6_quad_gap():
    rec = idn.decompose(6, 1)
    diff = rec["rhs_quadratic"] - idn.get("fd1-6")["rhs_quadratic"]
    assert diff == term(-1, 5, (3, 3))


def test_perturbed_record_reports_residual():
    rec = dict(idn.get("fd1-2"))
    rec["rhs_quadratic"] = term(-2, 1, (1, 1))
    assert idn.residual(rec) == term(1, 1, (1, 1))


def test_sampling_invariant():
    # f := random degree-10 polynomial with rational coefficients; both
    # sides must agree as exact polynomials, up to the frozen residual
    rng = random.Random(20260814)
    for rec in idn.catalog():
        cv = None
        if rec["id"].startswith("sec6"):
            cv = [Fraction(rng.randint(-6, 6), rng.randint(1, 5))
                  for _ in range(6)]
        for _ in range(3):
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 7))
                      for _ in range(11)]
            got = idn.sample_residual(rec, coeffs, cv)
            sym = idn.residual(rec)
            if cv is not None:
                sym = sym.substitute_constants(cv)
            assert got == idn.substitute_poly(sym, UPoly(coeffs)), rec["id"]
            if rec["id"] not in RESIDUALS:
                assert got.is_zero(), rec["id"]


def test_errors():
    with pytest.raises(idn.UnknownIdentity):
        idn.get("fd3-1")
    for j, ty in ((0, 1), (8, 1), (-1, 2), (7, 2), (3, 9)):
        with pytest.raises(idn.DegreeOutOfRange):
            idn.decompose(j, ty)


def test_sympy_oracle_generic_polynomial():
    # independent check: substitute a degree-10 polynomial with *symbolic*
    # coefficients, so zero means a genuine polynomial identity
    sympy = pytest.importorskip("sympy")
    lam = sympy.Symbol("lam")
    a = sympy.symbols("a0:11")
    cs = sympy.symbols("c0:6")
    f = sum(ai * lam**i for i, ai in enumerate(a))
    derivs = [sympy.expand(sympy.diff(f, lam, j)) for j in range(9)]

    def to_sympy(expr):
        out = sympy.Integer(0)
        for (m, fe, ce), c in expr.terms.items():
            t = sympy.Rational(c.numerator, c.denominator) * lam**m
            for j, e in enumerate(fe):
                t *= derivs[j] ** e
            for i, e in enumerate(ce):
                t *= cs[i] ** e
            out += t
        return out

    for rec in idn.catalog():
        lhs = to_sympy(rec["lhs"])
        rhs = to_sympy(rec["rhs_quadratic"]) \
            + sympy.diff(to_sympy(rec["rhs_derivative_argument"]), lam)
        want = to_sympy(idn.residual(rec))
        assert sympy.expand(lhs - rhs - want) == 0, rec["id"]
