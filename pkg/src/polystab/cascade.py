"""Coefficient families of the lambda-derivative quadratic forms.

Everything here is exact arithmetic in Q[k, n].  The radial-to-lambda
conversion is derived two independent ways (scaling recursion vs closed
binomial form), the sphere decomposition of the iterated Laplacian is
composed symbolically, and every assembled quadratic-form coefficient is
compared against a hard-coded transcription of its stated closed form.
Comparison mismatches are reported with exact difference polynomials, never
patched silently; the one stated coefficient known to disagree with its own
downstream expansion is corrected by machine derivation and logged.
"""

from fractions import Fraction

from .bipoly import BiPoly
from .diffring import DiffExpr, term
from .identities import eliminate_quadratic
from .upoly import UPoly


class OrderOutOfRange(ValueError):
    pass


class UnsupportedOrder(ValueError):
    pass


def _falling(base, count):
    """base(base-1)...(base-count+1) for UPoly/BiPoly/int base."""
    out = 1
    for s in range(count):
        out = out * (base - s)
    return out


def _rising_k(count):
    """k(k+1)...(k+count-1) as UPoly in k."""
    out = UPoly.constant(1)
    kk = UPoly.x()
    for s in range(count):
        out = out * (kk + UPoly.constant(s))
    return out


def radial_to_lambda(j):
    """Vector (c_0..c_j) of UPoly in k with
    d^j u/dr^j = sum_i c_i lam^i d^i u/dlam^i on the unit sphere.

    Derived from the scaling recursion (r d/dr acts on the basis element
    lam^i d^i/dlam^i as shift plus (i - k), and r^j d^j/dr^j is the falling
    factorial of r d/dr) and cross-checked against the closed binomial form
    c_i = (-1)^(j-i) C(j,i) k(k+1)...(k+j-i-1); both must agree.
    """
    if not 1 <= j <= 6:
        raise OrderOutOfRange(f"radial order {j} outside 1..6")
    kk = UPoly.x()

    # recursion route: apply (T - (j-1)) ... (T - 1) T to e_0,
    # where T(v)[i+1] += v[i], T(v)[i] += (i - k) v[i]
    vec = [UPoly.constant(1)]
    for s in reversed(range(j)):
        nxt = [UPoly() for _ in range(len(vec) + 1)]
        for i, v in enumerate(vec):
            nxt[i + 1] = nxt[i + 1] + v
            nxt[i] = nxt[i] + (UPoly.constant(i - s) - kk) * v
        vec = nxt

    closed = [UPoly.constant((-1) ** (j - i)) * Fraction(_binom(j, i))
              * _rising_k(j - i) for i in range(j + 1)]
    if vec != closed:
        raise RuntimeError(f"radial conversion routes disagree at order {j}")
    return vec


def _binom(nn, kk):
    out = 1
    for s in range(kk):
        out = out * (nn - s) // (s + 1)
    return out


# radial operators: {(derivative order, r power): UPoly in a}
def _op_mul(x, y):
    out = {}
    for (j, p), c in x.items():
        for (i, q), d in y.items():
            # c r^p d^j (d r^q d^i u): Leibniz over the r^q factor
            for s in range(j + 1):
                key = (j - s + i, p + q - s)
                val = c * d * Fraction(_binom(j, s)) * Fraction(_falling(q, s))
                out[key] = out.get(key, UPoly()) + val
    return {key: v for key, v in out.items() if not v.is_zero()}


def build_sphere_decomposition(m):
    """Generators G_0..G_m with Delta^m = sum_s Delta_theta^s G_s, where
    G_s collects every length-m word in L = d_rr + (a/r) d_r and the
    multiplier r^(-2), evaluated on the unit sphere.

    Returns a list of m+1 rows; row s maps derivative order -> UPoly in a.
    """
    if m not in (3, 4):
        raise UnsupportedOrder(f"sphere decomposition only built for 3, 4")
    lop = {(2, 0): UPoly.constant(1), (1, -1): UPoly((0, 1))}
    mult = {(0, -2): UPoly.constant(1)}
    # words[s] = sum of all operator words with s multiplier letters
    words = [{(0, 0): UPoly.constant(1)}]
    for _ in range(m):
        nxt = [dict() for _ in range(len(words) + 1)]
        for s, op in enumerate(words):
            for target, letter in ((s, lop), (s + 1, mult)):
                prod = _op_mul(letter, op)
                acc = nxt[target]
                for key, v in prod.items():
                    acc[key] = acc.get(key, UPoly()) + v
        words = [{key: v for key, v in row.items() if not v.is_zero()}
                 for row in nxt]
    rows = []
    for row in words:
        at1 = {}
        for (j, _p), c in row.items():
            at1[j] = at1.get(j, UPoly()) + c
        rows.append({j: c for j, c in at1.items() if not c.is_zero()})
    return rows


def _row_to_lambda(row):
    """Compose a generator row (order -> UPoly in a) with the radial
    conversion: coefficients g_j of sum_j g_j lam^j d^j u/dlam^j, as BiPoly
    in (k, n) after substituting a = n - 1."""
    orders = max(row) if row else 0
    out = [BiPoly() for _ in range(orders + 1)]
    for j, ca in row.items():
        cn = _a_to_n(ca)
        if j == 0:
            out[0] = out[0] + cn
            continue
        conv = radial_to_lambda(j)
        for i, ck in enumerate(conv):
            out[i] = out[i] + cn * _k_upoly_to_bipoly(ck)
    return out


def _a_to_n(p):
    """UPoly in a -> BiPoly constant in k, with a = n - 1."""
    shifted = p.compose(UPoly((-1, 1)))   # a := n - 1
    return BiPoly((shifted,))


def _k_upoly_to_bipoly(p):
    return BiPoly(tuple(UPoly.constant(c) for c in p.coeffs))


def _quadratic_family(gs):
    """Quadratic form of lam*G(f)*f'' + (7G(f) - lam dG/dlam(f))*f' for
    G = sum_j g_j lam^j f^(j), with the g_j given as ring elements.

    Returns ({s: DiffExpr coefficient of lam^(2s-1) (f^(s))^2}, bracket).
    """
    expr = DiffExpr.zero()
    for j, gj in enumerate(gs):
        expr = expr + gj * term(1, j + 1, (j, 2))
        expr = expr + (gj * (7 - j)) * term(1, j, (j, 1))
        expr = expr - gj * term(1, j + 1, (j + 1, 1))
    quad, bracket = eliminate_quadratic(expr)
    coeffs = {}
    for (m, fe, ce), c in quad.terms.items():
        s = next(o for o, e in enumerate(fe) if e)
        if m != 2 * s - 1:
            raise RuntimeError(f"unexpected square weight lam^{m} at s={s}")
        coeffs.setdefault(s, DiffExpr.zero())
        coeffs[s] = coeffs[s] + DiffExpr({(0, (0,) * 9, ce): c})
    return coeffs, bracket


def _consts_to_bipoly(expr, values):
    """Evaluate a constants-only DiffExpr at c_i := values[i] (BiPoly)."""
    out = BiPoly()
    for (m, fe, ce), c in expr.terms.items():
        if m or any(fe):
            raise ValueError("not a constants-only expression")
        p = BiPoly.constant(c)
        for i, e in enumerate(ce):
            for _ in range(e):
                p = p * values[i]
        out = out + p
    return out


def build_cascades():
    """Cascade table: generator rows, k_j/t_j/e_j (both construction routes
    must agree), and alpha, beta."""
    kk = BiPoly.k()
    nn = BiPoly.n()
    rows3 = build_sphere_decomposition(3)

    table = {
        "a": nn - 1,
        "aF0": rows3[0],
        "bF1": rows3[1],
        "vF2": rows3[2],
        "alpha": nn - 1 - 2 * kk,
        "beta": kk * (2 + kk - nn),
    }

    # route 1: compose generator rows with the radial conversion
    k_comp = _row_to_lambda(rows3[0])
    t_comp = [-g for g in _row_to_lambda(rows3[1])]  # F1 carries -t_j
    e_comp = _row_to_lambda(rows3[2])

    # route 2: the stated recursions, transcribed with a = n-1
    a6, a5, a4, a3, a2, a1 = (_a_to_n(rows3[0].get(j, UPoly()))
                              for j in (6, 5, 4, 3, 2, 1))
    r = [_k_upoly_to_bipoly(_rising_k(c)) for c in range(7)]
    k_rec = [
        r[6] * a6 - r[5] * a5 + r[4] * a4 - r[3] * a3 + r[2] * a2 - r[1] * a1,
        -6 * r[5] * a6 + 5 * r[4] * a5 - 4 * r[3] * a4 + 3 * r[2] * a3
        - 2 * r[1] * a2 + a1,
        15 * r[4] * a6 - 10 * r[3] * a5 + 6 * r[2] * a4 - 3 * r[1] * a3 + a2,
        -20 * r[3] * a6 + 10 * r[2] * a5 - 4 * r[1] * a4 + a3,
        15 * r[2] * a6 - 5 * r[1] * a5 + a4,
        -6 * r[1] * a6 + a5,
        a6,
    ]
    b4, b3, b2, b1, b0 = (_a_to_n(rows3[1].get(j, UPoly()))
                          for j in (4, 3, 2, 1, 0))
    t_rec = [
        -r[4] * b4 + r[3] * b3 - r[2] * b2 + r[1] * b1 - b0,
        4 * r[3] * b4 - 3 * r[2] * b3 + 2 * r[1] * b2 - b1,
        -6 * r[2] * b4 + 3 * r[1] * b3 - b2,
        4 * r[1] * b4 - b3,
        -b4,
    ]
    aa = table["a"]
    e_rec = [
        3 * r[2] - (3 * aa - 12) * kk + 26 - 6 * aa,
        -6 * kk + 3 * aa - 12,
        BiPoly.constant(3),
    ]
    for name, comp, rec in (("k", k_comp, k_rec), ("t", t_comp, t_rec),
                            ("e", e_comp, e_rec)):
        if comp != rec:
            raise RuntimeError(f"{name}_j cascade routes disagree")
        table[name] = comp
    return table


def build_quadratic_coeffs(table=None):
    """Extend the cascade table with A/a, B/b, C/c and the assembled sums.

    A_s, B_s, C_l are derived by running the generic quadratic family
    through the integration-by-parts engine and substituting the cascades;
    a_j, b_s, c_l are read from their stated alpha/beta expressions.
    """
    if table is None:
        table = build_cascades()
    kj, tj, ej = table["k"], table["t"], table["e"]
    consts = [DiffExpr.const(i) for i in range(6)]

    quadA, _ = _quadratic_family(consts + [DiffExpr.one()])
    table["A"] = {s: _consts_to_bipoly(quadA[s], kj[:6] + [BiPoly.constant(1)])
                  for s in quadA}
    quadB, _ = _quadratic_family(consts[:5])
    table["B"] = {s: _consts_to_bipoly(quadB[s], tj) for s in quadB}
    quadC, _ = _quadratic_family(consts[:3])
    table["C"] = {s: _consts_to_bipoly(quadC[s], ej) for s in quadC}

    al, be = table["alpha"], table["beta"]
    table["a_small"] = {
        4: BiPoly.constant(2),
        3: 2 * al ** 2 - 2 * al - 6 * be - 28,
        2: 2 * al ** 3 + (-16 - 2 * be) * al ** 2 + 16 * al + 6 * be ** 2
           + 32 * be + 40,
        1: -2 * al ** 3 + (2 * be + 8) * al ** 2 + (2 * be ** 2 - 8) * al
           - 2 * be ** 3 - 8 * be ** 2 - 8 * be,
    }
    table["b_small"] = {3: BiPoly.constant(2), 2: 14 - 2 * be, 1: -2 - 2 * be}
    # the lam (Delta_theta f')^2 slot is written c_2 in one later display;
    # stored here by slot index, with the discrepancy noted in errata()
    table["c_small"] = {2: BiPoly.constant(2), 1: 2 * al - 2 * be - 4}

    table["Aa"] = {s: table["A"][s] + table["a_small"][s] for s in range(1, 5)}
    table["Bb"] = {s: table["B"][s] + table["b_small"][s] for s in range(1, 4)}
    table["Cc"] = {s: table["C"][s] + table["c_small"][s] for s in range(1, 3)}
    return table


def _bp(rows):
    """BiPoly from k-degree-major rows of n-coefficient lists."""
    return BiPoly(tuple(UPoly(row) if isinstance(row, (list, tuple))
                        else UPoly.constant(row) for row in rows))


# stated closed forms, transcribed coefficient by coefficient
# (k-degree-major; inner lists are n-coefficients, constant first)
PRINTED = {
    "Aa1": _bp(([-6372, 4368, -940, 64], [-14040, 8428, -1576, 92],
                [-11196, 5408, -776, 32], [-4304, 1544, -152, 4],
                [-860, 208, -12], [-88, 12], [-4])),
    "Aa2": _bp(([5556, -2640, 380, -16], [6456, -2364, 232, -4],
                [2668, -656, 32], [464, -56], [28])),
    "Aa3": _bp(([-408, 96, -4], [-216, 28], [-28])),
    "Aa4": _bp(([4],)),
    "Bb1": _bp(([2644, -1012, 94], [2732, -850, 60], [994, -204, 6],
                [144, -12], [6])),
    "Bb2": _bp(([-544, 132, -6], [-292, 38], [-38])),
    "Bb3": _bp(([8],)),
    "C1": _bp(([-178, 30], [-72, 6], [-6])),
    "Cc2": _bp(([8],)),
    "A1": _bp(([-6390, 4398, -954, 66], [-14088, 8486, -1596, 94],
               [-11222, 5412, -768, 30], [-4272, 1492, -132, 2],
               [-818, 174, -6], [-72, 6], [-2])),
    "a1": _bp(([18, -30, 14, -2], [48, -58, 20, -2], [26, -4, -8, 2],
               [-32, 52, -20, 2], [-42, 34, -6], [-16, 6], [-2])),
}

# the stated A_s assembly formulas in terms of k_5..k_0 and k_6 = 1;
# A1's -2280 k_6 term disagrees with its own downstream expansion (the
# derivation gives -2880), so A1 here is expected to mismatch by 600
PRINTED_A_ASSEMBLY = {
    4: lambda kj: BiPoly.constant(2),
    3: lambda kj: 26 * kj[5] - 2 * kj[4] - 288 * kj[6],
    2: lambda kj: -440 * kj[5] + 68 * kj[4] - 12 * kj[3] + 2 * kj[2]
        + 3240 * kj[6],
    1: lambda kj: 480 * kj[5] - 96 * kj[4] + 24 * kj[3] - 8 * kj[2]
        + 6 * kj[1] - 2 * kj[0] - 2280 * kj[6],
}

PRINTED_B_ASSEMBLY = {
    3: lambda tj: -2 * tj[4],
    2: lambda tj: 2 * tj[2] - 12 * tj[3] + 68 * tj[4],
    1: lambda tj: -2 * tj[0] + 6 * tj[1] - 8 * tj[2] + 24 * tj[3]
        - 96 * tj[4],
}

PRINTED_C_ASSEMBLY = {
    2: lambda ej: 2 * ej[2],
    1: lambda ej: -2 * ej[0] + 6 * ej[1] - 8 * ej[2],
}


def compare_with_paper(table=None):
    """Coefficient-by-coefficient comparison of computed polynomials with
    their stated closed forms.

    Returns a list of {symbol, status, diff}; diff is the stated form minus
    the computed one (zero polynomial for a Match).
    """
    if table is None:
        table = build_quadratic_coeffs()
    computed = {
        "Aa1": table["Aa"][1], "Aa2": table["Aa"][2], "Aa3": table["Aa"][3],
        "Aa4": table["Aa"][4],
        "Bb1": table["Bb"][1], "Bb2": table["Bb"][2], "Bb3": table["Bb"][3],
        "C1": table["C"][1], "Cc2": table["Cc"][2],
        "A1": table["A"][1], "a1": table["a_small"][1],
    }
    out = []
    for symbol, printed in PRINTED.items():
        diff = printed - computed[symbol]
        out.append({"symbol": symbol,
                    "status": "Match" if diff.is_zero() else "Mismatch",
                    "diff": diff})
    kj6 = table["k"][:6] + [BiPoly.constant(1)]
    for s in range(4, 0, -1):
        diff = PRINTED_A_ASSEMBLY[s](kj6) - table["A"][s]
        out.append({"symbol": f"A{s}-assembly",
                    "status": "Match" if diff.is_zero() else "Mismatch",
                    "diff": diff})
    for s in range(3, 0, -1):
        diff = PRINTED_B_ASSEMBLY[s](table["t"]) - table["B"][s]
        out.append({"symbol": f"B{s}-assembly",
                    "status": "Match" if diff.is_zero() else "Mismatch",
                    "diff": diff})
    for s in range(2, 0, -1):
        diff = PRINTED_C_ASSEMBLY[s](table["e"]) - table["C"][s]
        out.append({"symbol": f"C{s}-assembly",
                    "status": "Match" if diff.is_zero() else "Mismatch",
                    "diff": diff})
    return out


def factor_checks(table=None):
    """Expand the stated factorizations of A_1 and a_1 and compare exactly.

    The a_1 product is stated without its leading constant; the check
    multiplies by the evident -2 (see errata()).
    """
    if table is None:
        table = build_quadratic_coeffs()
    kk, nn = BiPoly.k(), BiPoly.n()
    a1_fact = ((kk + 3) * (kk + 1) * (kk - (nn - 3)) * (kk - (nn - 5))
               * (-2 * kk ** 2 + (2 * nn - 48) * kk + 22 * nn - 142))
    small_fact = ((kk + 1) ** 2 * (kk - 1) * (kk - (nn - 3)) ** 2
                  * (kk - (nn - 1)))
    return {
        "A1_ok": a1_fact == table["A"][1],
        "a1_ok": -2 * small_fact == table["a_small"][1],
    }


def errata():
    """Transcription-level corrections established by the dual derivations."""
    return [
        "third-order radial conversion display pairs lam^2 with d^3/dlam^2;"
        " the derived coefficient belongs to lam^2 d^2/dlam^2",
        "A_1 assembly constant reads -2280 k_6; the derivation and the"
        " expanded A_1 both give -2880 k_6",
        "a_1 factorization is stated without its leading factor -2",
        "the positive lam (Delta_theta f')^2 coefficient 2*alpha-2*beta-4"
        " sits in the l=1 slot but is referred to as c_2 downstream",
    ]


def dump(table=None):
    """All tables as JSON-ready dicts (rational strings, k-degree-major)."""
    if table is None:
        table = build_quadratic_coeffs()

    def ser(p):
        return p.serialize()

    out = {
        "generators": {
            name: {str(j): [str(c) for c in poly.coeffs]
                   for j, poly in table[name].items()}
            for name in ("aF0", "bF1", "vF2")
        },
        "alpha": ser(table["alpha"]),
        "beta": ser(table["beta"]),
    }
    for fam in ("k", "t", "e"):
        out[fam] = [ser(p) for p in table[fam]]
    for fam in ("A", "B", "C", "a_small", "b_small", "c_small",
                "Aa", "Bb", "Cc"):
        out[fam] = {str(s): ser(p) for s, p in table[fam].items()}
    out["comparison"] = [
        {"symbol": row["symbol"], "status": row["status"],
         "diff": ser(row["diff"])}
        for row in compare_with_paper(table)
    ]
    out["factor_checks"] = factor_checks(table)
    out["errata"] = errata()
    return out
