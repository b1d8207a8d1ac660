"""Exact arithmetic in Z[q, q^-1], quantum integers, and a rational-function
escape hatch used for change-of-basis coefficients.

Everything here is exact: coefficients are Python ints or Fractions, never
floats.  LaurentPoly instances are treated as immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class LaurentPoly:
    """Sparse Laurent polynomial in q with exact coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = v
        self.c = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def const(v):
        return LaurentPoly({0: v})

    @staticmethod
    def q_power(e, coeff=1):
        return LaurentPoly({e: coeff})

    # -- predicates / accessors ---------------------------------------

    def is_zero(self):
        return not self.c

    def coeff(self, e):
        return self.c.get(e, 0)

    def min_exp(self):
        if not self.c:
            raise ValueError("zero polynomial has no exponents")
        return min(self.c)

    def max_exp(self):
        if not self.c:
            raise ValueError("zero polynomial has no exponents")
        return max(self.c)

    def items(self):
        return sorted(self.c.items())

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = {e: -v for e, v in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            out = LaurentPoly.__new__(LaurentPoly)
            out.c = {e: v * other for e, v in self.c.items()}
            return out
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset((e, Fraction(v)) for e, v in self.c.items()))

    # -- special maps ---------------------------------------------------

    def bar(self):
        """The bar involution q -> q^-1."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = {-e: v for e, v in self.c.items()}
        return out

    def subs(self, q0):
        """Evaluate at an exact rational q0 != 0."""
        q0 = Fraction(q0)
        return sum((Fraction(v) * q0 ** e for e, v in self.c.items()), Fraction(0))

    def at_q1(self):
        return sum(self.c.values())

    def shifted(self, k):
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = {e + k: v for e, v in self.c.items()}
        return out

    def palindrome_shift(self):
        """If self(q) == q^s * self(1/q), return s; else None.

        For the graded dimension of a Frobenius algebra such an s exists
        (s = min_exp + max_exp).
        """
        if self.is_zero():
            return 0
        s = self.min_exp() + self.max_exp()
        for e, v in self.c.items():
            if self.c.get(s - e, 0) != v:
                return None
        return s

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e, v in sorted(self.c.items(), reverse=True):
            if e == 0:
                parts.append(f"{v}")
            elif e == 1:
                parts.append(f"{v}*q" if v != 1 else "q")
            else:
                parts.append(f"{v}*q^{e}" if v != 1 else f"q^{e}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {x!r} to LaurentPoly")


def qint(a, d=1):
    """Quantum integer [a] at q_i = q^d:  q_i^{a-1} + q_i^{a-3} + ... + q_i^{-a+1}."""
    if a < 0:
        return -qint(-a, d)
    return LaurentPoly({d * (a - 1 - 2 * t): 1 for t in range(a)})


def qfact(a, d=1):
    out = LaurentPoly.one()
    for t in range(2, a + 1):
        out = out * qint(t, d)
    return out


def qbinom(n, k, d=1):
    """Gaussian binomial [n choose k] at q_i = q^d (exact division)."""
    if k < 0 or k > n:
        return LaurentPoly.zero()
    num = qfact(n, d)
    den = qfact(k, d) * qfact(n - k, d)
    return exact_div(num, den)


def exact_div(num, den):
    """Divide Laurent polynomials, asserting zero remainder."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero()
    q, r = divmod_poly(num, den)
    if not r.is_zero():
        raise ValueError(f"inexact division: ({num!r}) / ({den!r})")
    return q


def divmod_poly(num, den):
    """Long division by the leading term; remainder has smaller spread."""
    quot = {}
    rem = dict(num.c)
    dmax = den.max_exp()
    dlead = den.c[dmax]
    dspread = dmax - den.min_exp()
    while rem:
        rmax = max(rem)
        if rmax - min(rem) < dspread:
            break
        cq = Fraction(rem[rmax], dlead) if not isinstance(rem[rmax], Fraction) else rem[rmax] / dlead
        if cq.denominator == 1:
            cq = int(cq)
        e = rmax - dmax
        quot[e] = quot.get(e, 0) + cq
        for de, dv in den.c.items():
            ee = de + e
            w = rem.get(ee, 0) - cq * dv
            if w:
                rem[ee] = w
            else:
                rem.pop(ee, None)
    return LaurentPoly(quot), LaurentPoly(rem)


# -- gcd machinery for RatFunc reduction --------------------------------


def _dense_int(p):
    """(coeff list, offset, content) with integer primitive coefficients."""
    lo, hi = p.min_exp(), p.max_exp()
    coeffs = [Fraction(p.c.get(e, 0)) for e in range(lo, hi + 1)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints, lo


def _int_poly_gcd(a, b):
    """Primitive gcd of two integer coefficient lists (constant term first)."""

    def prim(u):
        while u and u[-1] == 0:
            u.pop()
        g = 0
        for c in u:
            g = gcd(g, abs(c))
        if g > 1:
            u = [c // g for c in u]
        return u

    a, b = prim(list(a)), prim(list(b))
    while b:
        # pseudo-remainder of a by b
        d = len(b) - 1
        lead = b[-1]
        r = list(a)
        while len(r) - 1 >= d and r:
            if r[-1] == 0:
                r.pop()
                continue
            shift = len(r) - 1 - d
            c = r[-1]
            r = [lead * x for x in r]
            for i, bv in enumerate(b):
                r[shift + i] -= c * bv
            while r and r[-1] == 0:
                r.pop()
        a, b = b, prim(r)
    return a if a else [1]


def laurent_gcd(p1, p2):
    """gcd up to units (monomials and rationals); returns a primitive poly."""
    if p1.is_zero():
        return p2
    if p2.is_zero():
        return p1
    a, _ = _dense_int(p1)
    b, _ = _dense_int(p2)
    g = _int_poly_gcd(a, b)
    return LaurentPoly({i: c for i, c in enumerate(g)})


class RatFunc:
    """Element of Q(q) as a reduced fraction of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        num = _as_poly(num)
        den = LaurentPoly.one() if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = LaurentPoly.one()
        elif reduce:
            g = laurent_gcd(num, den)
            if not (len(g.c) == 1):
                num = exact_div(num, g)
                den = exact_div(den, g)
            # normalize: den has min_exp 0 and positive, integral content 1 lead
            k = den.min_exp()
            if k:
                den = den.shifted(-k)
                num = num.shifted(-k)
            lead = den.c[den.max_exp()]
            if not isinstance(lead, Fraction):
                lead = Fraction(lead)
            if lead != 1:
                inv = 1 / lead
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def zero():
        return RatFunc(LaurentPoly.zero(), reduce=False)

    @staticmethod
    def one():
        return RatFunc(LaurentPoly.one(), reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = _as_rat(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_as_rat(other))

    def __rsub__(self, other):
        return _as_rat(other) + (-self)

    def __mul__(self, other):
        other = _as_rat(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __eq__(self, other):
        other = _as_rat(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def bar(self):
        return RatFunc(self.num.bar(), self.den.bar())

    def to_laurent(self):
        """Convert back to a Laurent polynomial; the denominator must be a unit."""
        if self.num.is_zero():
            return LaurentPoly.zero()
        if len(self.den.c) != 1:
            q, r = divmod_poly(self.num, self.den)
            if r.is_zero():
                return q
            raise ValueError(f"not a Laurent polynomial: {self!r}")
        ((e, v),) = self.den.c.items()
        inv = Fraction(1, 1) / v
        if inv.denominator == 1:
            inv = int(inv)
        return self.num.shifted(-e) * inv

    def __repr__(self):
        if self.den == LaurentPoly.one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _as_rat(x):
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_poly(x), reduce=False)


# -- exact linear algebra -----------------------------------------------


def poly_matrix_rank(rows):
    """Rank over Q(q) of a matrix of LaurentPoly entries (Bareiss)."""
    m = [[_as_poly(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = LaurentPoly.one()
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not m[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(col + 1, ncols):
                m[i][j] = exact_div(m[r][col] * m[i][j] - m[i][col] * m[r][j], prev)
            m[i][col] = LaurentPoly.zero()
        prev = m[r][col]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def rational_matrix_rank(rows):
    """Rank of a matrix with int/Fraction entries by Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank
