"""Differential ring for boundary-term bookkeeping.

Elements are exact rational combinations of monomials

    lam^m * f^(j1) * f^(j2) * ... * c0^e0 * ... * c5^e5

where f^(j) is the j-th derivative symbol of a single generator f (orders 0
through 8), and c0..c5 are opaque constants (derivative zero) standing for
whatever scalars a calculation carries along.  d/dlam acts by the product
rule with (f^(j))' = f^(j+1).
"""

from fractions import Fraction

MAX_DERIV = 8
N_CONST = 6

_ZERO_F = (0,) * (MAX_DERIV + 1)
_ZERO_C = (0,) * N_CONST


class DerivativeOrderOverflow(ArithmeticError):
    """A derivative beyond f^(8) was requested."""


class DiffExpr:
    """Exact element of the ring Q[lam, f^(0..8), c0..c5]."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # key: (lam_exp, f_exps tuple, c_exps tuple) -> Fraction
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[key] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, _ZERO_F, _ZERO_C): 1})

    @classmethod
    def lam(cls, m=1):
        return cls({(m, _ZERO_F, _ZERO_C): 1})

    @classmethod
    def f(cls, j):
        if not 0 <= j <= MAX_DERIV:
            raise DerivativeOrderOverflow(f"f^({j}) outside supported orders 0..{MAX_DERIV}")
        fe = list(_ZERO_F)
        fe[j] = 1
        return cls({(0, tuple(fe), _ZERO_C): 1})

    @classmethod
    def const(cls, i):
        ce = list(_ZERO_C)
        ce[i] = 1
        return cls({(0, _ZERO_F, tuple(ce)): 1})

    @classmethod
    def scalar(cls, c):
        return cls({(0, _ZERO_F, _ZERO_C): Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, DiffExpr):
            return self.terms == other.terms
        return NotImplemented

    def __neg__(self):
        return DiffExpr({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            elif k in out:
                del out[k]
        return DiffExpr(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for (m1, f1, c1), a in self.terms.items():
            for (m2, f2, c2), b in other.terms.items():
                key = (m1 + m2,
                       tuple(x + y for x, y in zip(f1, f2)),
                       tuple(x + y for x, y in zip(c1, c2)))
                out[key] = out.get(key, Fraction(0)) + a * b
        return DiffExpr(out)

    __rmul__ = __mul__

    def d_dlam(self):
        """Derivation: lam' = 1, (f^(j))' = f^(j+1), constants killed."""
        out = DiffExpr()
        for (m, fe, ce), c in self.terms.items():
            if m:
                key = (m - 1, fe, ce)
                out = out + DiffExpr({key: c * m})
            for j, e in enumerate(fe):
                if not e:
                    continue
                if j + 1 > MAX_DERIV:
                    raise DerivativeOrderOverflow(
                        f"d/dlam needs f^({j + 1}), beyond the supported order")
                nfe = list(fe)
                nfe[j] -= 1
                nfe[j + 1] += 1
                out = out + DiffExpr({(m, tuple(nfe), ce): c * e})
        return out

    def total_f_degree(self):
        return max((sum(fe) for (_, fe, _) in self.terms), default=0)

    def substitute_constants(self, values):
        """Replace c_i by exact rationals; returns a new DiffExpr."""
        out = DiffExpr()
        for (m, fe, ce), c in self.terms.items():
            coeff = c
            for i, e in enumerate(ce):
                if e:
                    coeff = coeff * Fraction(values[i]) ** e
            out = out + DiffExpr({(m, fe, _ZERO_C): coeff})
        return out

    def pretty(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, fe, ce), c in sorted(self.terms.items(), reverse=True):
            bits = []
            if m:
                bits.append("lam" if m == 1 else f"lam^{m}")
            for j, e in enumerate(fe):
                if e:
                    base = f"f({j})"
                    bits.append(base if e == 1 else f"{base}^{e}")
            for i, e in enumerate(ce):
                if e:
                    base = f"c{i}"
                    bits.append(base if e == 1 else f"{base}^{e}")
            body = "*".join(bits) if bits else "1"
            parts.append(f"{c}*{body}" if c != 1 or not bits else body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"DiffExpr({self.pretty()})"


def _coerce(x):
    if isinstance(x, DiffExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return DiffExpr.scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} in DiffExpr arithmetic")


def diff_reduce(expr):
    """Canonical form: merged monomials, zero coefficients dropped.

    DiffExpr arithmetic already normalizes, so this is a stable re-pack; it
    is idempotent and two expressions are equal iff their reduced term maps
    are equal.
    """
    return DiffExpr(dict(expr.terms))


def term(coeff, lam=0, f_orders=(), consts=()):
    """Monomial builder: term(3, 2, (1, 1)) = 3*lam^2*f'(lam)*f'(lam)."""
    fe = [0] * (MAX_DERIV + 1)
    for j in f_orders:
        if not 0 <= j <= MAX_DERIV:
            raise DerivativeOrderOverflow(f"f^({j}) outside supported orders")
        fe[j] += 1
    ce = [0] * N_CONST
    for i in consts:
        ce[i] += 1
    return DiffExpr({(lam, tuple(fe), tuple(ce)): Fraction(coeff)})
