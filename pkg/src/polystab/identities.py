"""Catalog and independent re-derivation of integration-by-parts identities.

Two families of lambda-derivative rewrites are catalogued exactly as stated:
type 1 turns lam^j f^(j) f^(1) and type 2 turns lam^(j+1) f^(j) f^(2) into a
combination of squares plus an exact d/dlam bracket; two longer composite
rewrites carry free constants c0..c5.  verify() replays a record and returns
its exact residual, never adjusting the record.  decompose() derives the
decomposition from scratch by repeated integration by parts, so the stated
and the derived forms can be compared term by term.
"""

from fractions import Fraction

from .diffring import MAX_DERIV, DiffExpr, diff_reduce, term
from .upoly import UPoly


class UnknownIdentity(KeyError):
    pass


class DegreeOutOfRange(ValueError):
    pass


def _fd1_lhs(j):
    # lam^j f^(j) f'; the j=1 member is stated without the lam factor
    if j == 1:
        return term(1, 0, (0, 1))
    return term(1, j, (j, 1))


def _fd2_lhs(j):
    # lam^(j+1) f^(j) f''
    return term(1, j + 1, (j, 2))


def _c(i):
    return DiffExpr.const(i)


def _catalog():
    records = []

    def add(ident, lhs, quad, bracket, source="stated"):
        records.append({
            "id": ident,
            "lhs": diff_reduce(lhs),
            "rhs_quadratic": diff_reduce(quad),
            "rhs_derivative_argument": diff_reduce(bracket),
            "source": source,
        })

    half = Fraction(1, 2)

    add("fd1-1", _fd1_lhs(1), DiffExpr.zero(), term(half, 0, (0, 0)))
    add("fd1-2", _fd1_lhs(2), term(-1, 1, (1, 1)), term(half, 2, (1, 1)))
    add("fd1-3", _fd1_lhs(3),
        term(3, 1, (1, 1)) + term(-1, 3, (2, 2)),
        term(1, 3, (2, 1)))
    add("fd1-4", _fd1_lhs(4),
        term(-12, 1, (1, 1)) + term(6, 3, (2, 2)),
        term(1, 4, (3, 1)) + term(-half, 4, (2, 2)) + term(-4, 3, (2, 1))
        + term(6, 2, (1, 1)))
    add("fd1-5", _fd1_lhs(5),
        term(60, 1, (1, 1)) + term(-40, 3, (2, 2)) + term(1, 5, (3, 3)),
        term(1, 5, (4, 1)) + term(-1, 5, (3, 2)) + term(-5, 4, (3, 1))
        + term(5, 4, (2, 2)) + term(20, 3, (2, 1)) + term(-30, 2, (1, 1)))
    add("fd1-6", _fd1_lhs(6),
        term(-360, 1, (1, 1)) + term(300, 3, (2, 2)) + term(-14, 5, (3, 3)),
        term(1, 6, (5, 1)) + term(-6, 5, (4, 1)) + term(12, 5, (3, 2))
        + term(30, 4, (3, 1)) + term(-45, 4, (2, 2)) + term(-120, 3, (2, 1))
        + term(180, 2, (1, 1)) + term(-1, 6, (4, 2)) + term(half, 6, (3, 3)))
    add("fd1-7", _fd1_lhs(7),
        term(2520, 1, (1, 1)) + term(-2520, 3, (2, 2)) + term(189, 5, (3, 3))
        + term(-1, 7, (4, 4)),
        term(1, 7, (6, 1)) + term(-7, 6, (5, 1)) + term(42, 5, (4, 1))
        + term(-84, 5, (3, 2)) + term(-210, 4, (3, 1)) + term(315, 4, (2, 2))
        + term(840, 3, (2, 1)) + term(-1260, 2, (1, 1)) + term(7, 6, (4, 2))
        + term(-7, 6, (3, 3)) + term(-1, 7, (5, 2)) + term(1, 7, (4, 3)))

    add("fd2-0", _fd2_lhs(0),
        term(-1, 1, (1, 1)),
        term(1, 1, (0, 1)) + term(-half, 0, (0, 0)))
    add("fd2-1", _fd2_lhs(1),
        term(-1, 1, (1, 1)),
        term(half, 2, (1, 1)))
    add("fd2-2", _fd2_lhs(2), term(1, 3, (2, 2)), DiffExpr.zero(),
        source="trivial")
    add("fd2-3", _fd2_lhs(3),
        term(-2, 3, (2, 2)),
        term(half, 4, (2, 2)))
    add("fd2-4", _fd2_lhs(4),
        term(10, 3, (2, 2)) + term(-1, 5, (3, 3)),
        term(1, 5, (3, 2)) + term(Fraction(-5, 2), 4, (2, 2)))
    add("fd2-5", _fd2_lhs(5),
        term(-60, 3, (2, 2)) + term(9, 5, (3, 3)),
        term(1, 6, (4, 2)) + term(-6, 5, (3, 2)) + term(15, 4, (2, 2))
        + term(-half, 6, (3, 3)))
    # the (7/2) lam^6 f''' f''' bracket entry appears twice in the stated
    # form; both occurrences are kept (they merge to 7).
    add("fd2-6", _fd2_lhs(6),
        term(420, 3, (2, 2)) + term(-84, 5, (3, 3)) + term(1, 7, (4, 4)),
        term(1, 7, (5, 2)) + term(-1, 7, (4, 3)) + term(Fraction(7, 2), 6, (3, 3))
        + term(-7, 6, (4, 2)) + term(42, 5, (3, 2)) + term(-105, 4, (2, 2))
        + term(Fraction(7, 2), 6, (3, 3)))

    lhs_a = (term(1, 7, (6, 2)) + _c(5) * term(1, 6, (5, 2))
             + _c(4) * term(1, 5, (4, 2)) + _c(3) * term(1, 4, (3, 2))
             + _c(2) * term(1, 3, (2, 2)) + _c(1) * term(1, 2, (1, 2))
             + _c(0) * term(1, 1, (0, 2)))
    quad_a = (term(1, 7, (4, 4))
              + (9 * _c(5) - _c(4) - 84) * term(1, 5, (3, 3))
              + (-60 * _c(5) + 10 * _c(4) - 2 * _c(3) + _c(2) + 420)
              * term(1, 3, (2, 2))
              - _c(0) * term(1, 1, (1, 1)) + _c(1) * term(1, 2, (1, 2)))
    bracket_a = (term(1, 7, (6, 2)) + term(-1, 7, (4, 3))
                 + (_c(5) - 7) * term(1, 6, (4, 2))
                 + (7 - half * _c(5)) * term(1, 6, (3, 3))
                 + (-6 * _c(5) + _c(4) + 42) * term(1, 5, (3, 2))
                 + (15 * _c(5) - Fraction(5, 2) * _c(4) + half * _c(3) - 105)
                 * term(1, 4, (2, 2))
                 + _c(0) * term(1, 1, (0, 1)) - half * _c(0) * term(1, 0, (0, 0)))
    add("sec6-A", lhs_a, quad_a, bracket_a)

    lhs_b = (term(-1, 7, (7, 1)) + (1 - _c(5)) * term(1, 6, (6, 1))
             + (2 * _c(5) - _c(4)) * term(1, 5, (5, 1))
             + (3 * _c(4) - _c(3)) * term(1, 4, (4, 1))
             + (4 * _c(3) - _c(2)) * term(1, 3, (3, 1))
             + (5 * _c(2) - _c(1)) * term(1, 2, (2, 1))
             + (6 * _c(1) - _c(0)) * term(1, 1, (1, 1))
             + 7 * _c(0) * term(1, 0, (0, 1)))
    quad_b = (term(1, 7, (4, 4))
              + (14 * _c(5) - _c(4) - 138) * term(1, 5, (3, 3))
              + (22 - _c(5)) * term(1, 6, (4, 3))
              + (-380 * _c(5) + 58 * _c(4) - 10 * _c(3) + _c(2) + 2820)
              * term(1, 3, (2, 2))
              + (6 * _c(1) - _c(0)) * term(1, 1, (1, 1))
              + (-480 * _c(5) + 96 * _c(4) - 24 * _c(3) + 8 * _c(2) - _c(1)
                 + 2880) * term(1, 2, (2, 1)))
    bracket_b = (term(-1, 7, (6, 1)) + term(1, 7, (5, 2)) + term(-1, 7, (4, 3))
                 + (8 - _c(5)) * term(1, 6, (5, 1))
                 + (_c(5) - 15) * term(1, 6, (4, 2))
                 - (14 * _c(5) - _c(4) - 138) * term(1, 5, (3, 2))
                 + (55 * _c(5) - Fraction(13, 2) * _c(4) + half * _c(3) - 480)
                 * term(1, 4, (2, 2))
                 + (8 * _c(5) - _c(4) - 48) * term(1, 5, (4, 1))
                 + (-40 * _c(5) + 8 * _c(4) - _c(3) + 240) * term(1, 4, (3, 1))
                 + (160 * _c(5) - 32 * _c(4) + 8 * _c(3) - _c(2) - 960)
                 * term(1, 3, (2, 1))
                 + Fraction(7, 2) * _c(0) * term(1, 0, (0, 0)))
    add("sec6-B", lhs_b, quad_b, bracket_b)

    return records


_CATALOG = None


def catalog():
    """All sixteen identity records, ids stable across runs."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _catalog()
    return list(_CATALOG)


def get(ident):
    for rec in catalog():
        if rec["id"] == ident:
            return rec
    raise UnknownIdentity(ident)


def residual(record):
    """lhs - quad - d/dlam(bracket), in canonical form."""
    return diff_reduce(record["lhs"] - record["rhs_quadratic"]
                       - record["rhs_derivative_argument"].d_dlam())


def verify(ident):
    """Replay a catalog record and return its exact residual.

    A zero residual means the stated identity holds; a nonzero residual is
    the exact defect of the stated form, reported verbatim.
    """
    return residual(get(ident))


def verdict(ident):
    res = verify(ident)
    return "Verified" if res.is_zero() else f"Residual({res.pretty()})"


def _fe(a, b):
    fe = [0] * 9
    fe[a] += 1
    fe[b] += 1
    return tuple(fe)


def eliminate_quadratic(expr):
    """Split a quadratic-in-f expression into (squares, d/dlam bracket).

    Mixed monomials lam^m f^(a) f^(b) with a >= b+2 are eliminated against
    d/dlam(lam^m f^(a-1) f^(b)); adjacent pairs a == b+1 resolve through the
    half-square rule.  Coefficients may carry the free ring constants.  The
    maximal derivative order present never increases and the term count at
    that order strictly drops, so the loop terminates.
    """
    work = diff_reduce(expr)
    bracket = DiffExpr.zero()
    for _ in range(400):
        groups = {}
        for (m, fe, ce), c in work.terms.items():
            if sum(fe) != 2:
                raise ValueError("expected a quadratic-in-f expression")
            orders = [o for o, e in enumerate(fe) for _ in range(e)]
            b, a = orders
            if a != b:
                groups.setdefault((a, b, m), []).append((ce, c))
        if not groups:
            return diff_reduce(work), diff_reduce(bracket)
        a, b, m = max(groups)
        parts = groups[(a, b, m)]
        if a >= b + 2:
            piece = DiffExpr({(m, _fe(a - 1, b), ce): c for ce, c in parts})
        else:
            piece = DiffExpr({(m, _fe(b, b), ce): Fraction(c) / 2
                              for ce, c in parts})
        bracket = bracket + piece
        work = work - piece.d_dlam()
    raise RuntimeError("integration-by-parts elimination did not terminate")


def decompose(j, type):
    """Derive the type-1 (lam^j f^(j) f') or type-2 (lam^(j+1) f^(j) f'')
    decomposition from scratch and compare it with the catalog entry.

    The returned record always satisfies lhs == quad + d/dlam(bracket)
    exactly; the match flags report whether the stated record agrees
    (brackets are compared modulo additive constants).
    """
    if type == 1:
        if not 1 <= j <= 7:
            raise DegreeOutOfRange(f"type-1 order {j} outside 1..7")
        lhs = _fd1_lhs(j)
        ident = f"fd1-{j}"
    elif type == 2:
        if not 0 <= j <= 6:
            raise DegreeOutOfRange(f"type-2 order {j} outside 0..6")
        lhs = _fd2_lhs(j)
        ident = f"fd2-{j}"
    else:
        raise DegreeOutOfRange(f"unknown decomposition type {type!r}")
    quad, bracket = eliminate_quadratic(lhs)
    cat = get(ident)
    diff = bracket - cat["rhs_derivative_argument"]
    return {
        "id": ident,
        "lhs": lhs,
        "rhs_quadratic": quad,
        "rhs_derivative_argument": bracket,
        "quad_matches_catalog": quad == cat["rhs_quadratic"],
        "bracket_matches_catalog": diff.d_dlam().is_zero(),
    }


def quad_coefficients(expr):
    """Map s -> coefficient of lam^(2s-1) (f^(s))^2 for a pure-squares quad."""
    out = {}
    for (m, fe, ce), c in expr.terms.items():
        orders = [o for o, e in enumerate(fe) for _ in range(e)]
        if any(ce) or len(orders) != 2 or orders[0] != orders[1]:
            raise ValueError("not a pure squares expression")
        s = orders[0]
        if m != 2 * s - 1:
            raise ValueError(f"unexpected weight lam^{m} on (f^({s}))^2")
        out[s] = c
    return out


def substitute_poly(expr, p):
    """Evaluate a constant-free DiffExpr at f := p(lam); returns a UPoly."""
    derivs = [p]
    for _ in range(MAX_DERIV):
        derivs.append(derivs[-1].derivative())
    out = UPoly.constant(0)
    for (m, fe, ce), c in expr.terms.items():
        if any(ce):
            raise ValueError("substitute the free constants first")
        q = UPoly.monomial(m, c)
        for jj, e in enumerate(fe):
            for _ in range(e):
                q = q * derivs[jj]
        out = out + q
    return out


def sample_residual(record, coeffs, const_values=None):
    """Substitute f := sum coeffs[i] lam^i into the record; return the
    polynomial lhs - quad - d/dlam(bracket).

    For a correct identity this is the zero polynomial for every sample.
    """
    lhs = record["lhs"]
    quad = record["rhs_quadratic"]
    bracket = record["rhs_derivative_argument"]
    if const_values is not None:
        lhs = lhs.substitute_constants(const_values)
        quad = quad.substitute_constants(const_values)
        bracket = bracket.substitute_constants(const_values)
    p = UPoly(coeffs)
    lhs_p = substitute_poly(lhs, p)
    rhs_p = substitute_poly(quad, p) + substitute_poly(bracket, p).derivative()
    return lhs_p - rhs_p
