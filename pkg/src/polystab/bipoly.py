"""Bivariate polynomials for spectral weights: dense in k, coefficients in n.

BiPoly is the workhorse for everything of the form W(k, n).  APoly2 is a
sparse two variable polynomial used for substitutions like k = (n-10)/2 - a*t
with n = t^2, which turn a BiPoly into a polynomial in (a, t).
"""

from fractions import Fraction

from .upoly import UPoly, _frac


class BiPoly:
    """Polynomial in k whose coefficients are UPoly in n (index = k power)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, UPoly):
                cs.append(c)
            elif isinstance(c, (list, tuple)):
                cs.append(UPoly(c))
            else:
                cs.append(UPoly.constant(c))
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_dict(cls, d):
        """d maps k-power -> UPoly in n (or coefficient list)."""
        if not d:
            return cls()
        deg = max(d)
        cs = [UPoly()] * (deg + 1)
        for i, v in d.items():
            cs[i] = v if isinstance(v, UPoly) else UPoly(v) if isinstance(v, (list, tuple)) else UPoly.constant(v)
        return cls(cs)

    @classmethod
    def k(cls):
        return cls((UPoly(), UPoly.constant(1)))

    @classmethod
    def n(cls):
        return cls((UPoly((0, 1)),))

    @classmethod
    def constant(cls, c):
        return cls((UPoly.constant(c),))

    @property
    def degree_k(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return BiPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _to_bipoly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return BiPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_to_bipoly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _to_bipoly(other)
        if not self.coeffs or not other.coeffs:
            return BiPoly()
        out = [UPoly()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def at_n(self, n):
        """Freeze n to a rational: UPoly in k."""
        n = _frac(n)
        return UPoly(tuple(c(n) for c in self.coeffs))

    def at_k(self, k):
        """Freeze k to a rational: UPoly in n."""
        k = _frac(k)
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def __call__(self, k, n):
        return self.at_n(n)(_frac(k))

    def derivative_k(self):
        return BiPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def substitute_k(self, kpoly):
        """k := kpoly (BiPoly), eg a shift k -> k + (n-10)/2 done exactly."""
        acc = BiPoly()
        for c in reversed(self.coeffs):
            acc = acc * kpoly + BiPoly((c,))
        return acc

    def pretty(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            pw = "" if i == 0 else ("k" if i == 1 else f"k^{i}")
            body = c.pretty("n")
            if " " in body or c.degree > 0:
                body = f"({body})"
            parts.append(f"{body}*{pw}" if pw else body)
        return " + ".join(parts)

    def __repr__(self):
        return f"BiPoly({self.pretty()})"

    def serialize(self):
        return [c.serialize() for c in self.coeffs]

    @classmethod
    def deserialize(cls, items):
        return cls(tuple(UPoly.deserialize(it) for it in items))


def _to_bipoly(x):
    if isinstance(x, BiPoly):
        return x
    if isinstance(x, UPoly):
        return BiPoly((x,))
    if isinstance(x, (int, Fraction)):
        return BiPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as BiPoly")


class APoly2:
    """Sparse polynomial in (a, t) with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (i, j), c in terms.items():
                c = _frac(c)
                if c != 0:
                    self.terms[(i, j)] = c

    @classmethod
    def var_a(cls):
        return cls({(1, 0): 1})

    @classmethod
    def var_t(cls):
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, APoly2):
            return self.terms == other.terms
        return NotImplemented

    def __neg__(self):
        return APoly2({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = _to_apoly(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            elif k in out:
                del out[k]
        return APoly2(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_to_apoly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _to_apoly(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return APoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = APoly2.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, a, t):
        a, t = _frac(a), _frac(t)
        return sum((c * a**i * t**j for (i, j), c in self.terms.items()), Fraction(0))

    def degree_a(self):
        return max((i for i, _ in self.terms), default=-1)

    def coeff_of_a(self, i):
        """UPoly in t multiplying a^i."""
        pairs = {j: c for (ai, j), c in self.terms.items() if ai == i}
        if not pairs:
            return UPoly()
        out = [Fraction(0)] * (max(pairs) + 1)
        for j, c in pairs.items():
            out[j] = c
        return UPoly(out)

    def as_t_poly_of_a(self):
        """List of (a_power, UPoly in t)."""
        return [(i, self.coeff_of_a(i)) for i in range(self.degree_a() + 1)
                if not self.coeff_of_a(i).is_zero()]

    def pretty(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        parts = []
        for (i, j), c in items:
            vs = []
            if i:
                vs.append("a" if i == 1 else f"a^{i}")
            if j:
                vs.append("t" if j == 1 else f"t^{j}")
            body = "*".join(vs)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"APoly2({self.pretty()})"


def _to_apoly(x):
    if isinstance(x, APoly2):
        return x
    if isinstance(x, (int, Fraction)):
        return APoly2.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as APoly2")


def substitute_bivariate(w, k_sub, n_sub):
    """Substitute k := k_sub(a, t) and n := n_sub(a, t) into a BiPoly.

    k_sub and n_sub are APoly2.  Returns the exact APoly2 expansion; used to
    turn per-n weight families into two parameter polynomials like
    W((n-10)/2 - a*t, t^2).
    """
    acc = APoly2()
    for kp in range(len(w.coeffs) - 1, -1, -1):
        cn = w.coeffs[kp]
        # expand the n-polynomial coefficient at n := n_sub
        cacc = APoly2()
        for np in range(len(cn.coeffs) - 1, -1, -1):
            cacc = cacc * n_sub + APoly2.constant(cn.coeffs[np])
        acc = acc * k_sub + cacc
    return acc
