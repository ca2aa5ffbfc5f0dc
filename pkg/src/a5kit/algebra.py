"""Exact univariate rational-function arithmetic over arbitrary-precision rationals.

Everything here is exact: coefficients are ``fractions.Fraction``, polynomials
are dense coefficient tuples, and a rational function is a pair of coprime
polynomials with a monic denominator.  That canonical form makes structural
equality coincide with equality in the function field, which the rest of the
package relies on for zero tests.

Laurent expansions are supported at t=0, at finite rational points, and at
t=infinity (implemented as an expansion in u=1/t), together with residues and
rational pole extraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Sequence

Rational = Fraction


class AlgebraError(Exception):
    """Base class for exact-arithmetic failures."""


class DivisionByZeroFunction(AlgebraError):
    """Division by the zero rational function."""


class UnsupportedPoint(AlgebraError):
    """Expansion requested at a point the exact engine cannot represent."""


class _Infinity:
    """Sentinel for the point t=infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"


INFINITY = _Infinity()


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _intpoly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Schoolbook product of dense integer coefficient lists (ascending powers).
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _intpoly_content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = _igcd(g, abs(x))
        if g == 1:
            break
    return g or 1


def _intpoly_primitive(c: Sequence[int]) -> list[int]:
    g = _intpoly_content(c)
    if c and c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _intpoly_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    # Pseudo-remainder of a by b over the integers; b must be nonzero.
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[-1] == 0:
            a.pop()
            continue
        la = a[-1]
        shift = da - db
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[shift + j] -= la * bj
        while a and a[-1] == 0:
            a.pop()
    return a


class Poly:
    """Dense univariate polynomial in t with Fraction coefficients.

    Coefficients are stored ascending; the highest stored coefficient is
    nonzero, and the zero polynomial is the empty tuple.  Instances are
    immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((_as_fraction(c),))

    @staticmethod
    def t() -> "Poly":
        return Poly((0, 1))

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def valuation(self) -> int:
        """Order of vanishing at t=0; the zero polynomial returns -1."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return -1

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{k}" if c != 1 else f"t^{k}")
        return "Poly(" + " + ".join(parts) + ")"

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        # Clear denominators so the convolution runs on plain integers.
        la, ia = self._int_form()
        lb, ib = other._int_form()
        prod = _intpoly_mul(ia, ib)
        scale = Fraction(1, la * lb)
        return Poly(tuple(c * scale for c in prod))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if c == 0:
            return Poly(())
        return Poly(tuple(x * c for x in self.coeffs))

    def _int_form(self) -> tuple[int, list[int]]:
        # (L, ints) with self == ints/L.
        L = 1
        for c in self.coeffs:
            L = L * c.denominator // _igcd(L, c.denominator)
        return L, [int(c * L) for c in self.coeffs]

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.leading()
        q = [Fraction(0)] * max(0, len(rem) - db)
        while len(rem) - 1 >= db:
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - 1 - db
            factor = rem[-1] / lb
            q[shift] = factor
            for j, bj in enumerate(other.coeffs):
                rem[shift + j] -= factor * bj
            rem.pop()
        return Poly(q), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise AlgebraError("division was not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    # -- calculus and substitutions -------------------------------------

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def evaluate(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_neg(self) -> "Poly":
        """p(-t)."""
        return Poly(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def taylor_shift(self, c) -> "Poly":
        """p(t + c) via repeated synthetic division by (t - c)."""
        c = _as_fraction(c)
        if c == 0 or self.is_zero():
            return self
        coeffs = list(self.coeffs)
        out = []
        for _ in range(len(coeffs)):
            acc = Fraction(0)
            for k in range(len(coeffs) - 1, -1, -1):
                acc = acc * c + coeffs[k]
                coeffs[k] = acc
            out.append(coeffs.pop(0))
        return Poly(out)

    def reversed_coeffs(self) -> "Poly":
        """t^deg * p(1/t); trims nothing else."""
        return Poly(tuple(reversed(self.coeffs)))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals, via a primitive pseudo-remainder sequence."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    fa = _intpoly_primitive(a._int_form()[1])
    fb = _intpoly_primitive(b._int_form()[1])
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        rem = _intpoly_pseudo_rem(fa, fb)
        fa, fb = fb, _intpoly_primitive(rem) if rem else []
    return Poly(fa).monic()


class RatFunc:
    """Rational function num/den in canonical form.

    Canonical means: den is monic, gcd(num, den) = 1, and the zero function is
    0/1.  Structural equality of canonical forms is field equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one()
        if den.is_zero():
            raise DivisionByZeroFunction("zero denominator")
        if num.is_zero():
            den = Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.leading()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(Poly.zero())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(Poly.one())

    @staticmethod
    def constant(c) -> "RatFunc":
        return RatFunc(Poly.constant(c))

    @staticmethod
    def t() -> "RatFunc":
        return RatFunc(Poly.t())

    @staticmethod
    def from_fraction(num_coeffs: Iterable, den_coeffs: Iterable) -> "RatFunc":
        return RatFunc(Poly(num_coeffs), Poly(den_coeffs))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r} / {self.den!r})"

    # -- field operations ----------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = poly_gcd(self.den, other.den)
        if g.degree == 0:
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        db = self.den.exact_div(g)
        dd = other.den.exact_div(g)
        return RatFunc(self.num * dd + other.num * db, db * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den) if not self.is_zero() else self

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num.exact_div(g1) if g1.degree > 0 else self.num
        d2 = other.den.exact_div(g1) if g1.degree > 0 else other.den
        n2 = other.num.exact_div(g2) if g2.degree > 0 else other.num
        d1 = self.den.exact_div(g2) if g2.degree > 0 else self.den
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                raise DivisionByZeroFunction("division by zero constant")
            return RatFunc(self.num.scale(Fraction(1) / c), self.den)
        if other.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        return self * RatFunc(other.den, other.num)

    def derivative(self) -> "RatFunc":
        """Quotient-rule derivative with respect to t, canonical."""
        if self.is_polynomial():
            return RatFunc(self.num.derivative(), self.den)
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def evaluate(self, x) -> Fraction:
        x = _as_fraction(x)
        dv = self.den.evaluate(x)
        if dv == 0:
            raise AlgebraError(f"evaluation at a pole: t={x}")
        return self.num.evaluate(x) / dv

    def compose_neg(self) -> "RatFunc":
        """f(-t)."""
        return RatFunc(self.num.compose_neg(), self.den.compose_neg())

    def is_odd(self) -> bool:
        """Whether f(-t) = -f(t) as canonical forms.  The zero function is odd."""
        return self.compose_neg() == -self

    def degree_at_infinity(self) -> int:
        """Order of growth at infinity: deg num - deg den.  Zero gives a large negative."""
        if self.is_zero():
            return -(10 ** 9)
        return self.num.degree - self.den.degree

    # -- serialization --------------------------------------------------

    def integer_form(self) -> tuple[list[int], list[int], int]:
        """(num_ints, den_ints, L): both lists are the canonical num and den
        scaled by the common denominator L of all their coefficients."""
        L = 1
        for c in (*self.num.coeffs, *self.den.coeffs):
            L = L * c.denominator // _igcd(L, c.denominator)
        return ([int(c * L) for c in self.num.coeffs],
                [int(c * L) for c in self.den.coeffs], L)

    @staticmethod
    def from_integer_form(num_ints: Sequence[int], den_ints: Sequence[int]) -> "RatFunc":
        return RatFunc(Poly(num_ints), Poly(den_ints))


class LaurentSeries:
    """Truncated Laurent expansion at 0, a finite rational point, or infinity.

    For finite points the stored coefficients run exponent-ascending from
    ``min_exponent`` through ``order``; at infinity they run descending from
    the leading exponent down to ``-order`` (so ``min_exponent == -order``).
    A zero function stores an empty coefficient list.
    """

    __slots__ = ("point", "min_exponent", "order", "coefficients")

    def __init__(self, point, min_exponent: int, order: int, coefficients):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "min_exponent", min_exponent)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coefficients", tuple(coefficients))

    def __setattr__(self, *a):
        raise AttributeError("LaurentSeries is immutable")

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, exponent: int) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if self.point is INFINITY:
            top = self.min_exponent + len(self.coefficients) - 1
            idx = top - exponent
        else:
            idx = exponent - self.min_exponent
        if 0 <= idx < len(self.coefficients):
            return self.coefficients[idx]
        return Fraction(0)

    def items(self) -> list[tuple[int, Fraction]]:
        """(exponent, coefficient) pairs in storage order."""
        if self.is_zero():
            return []
        if self.point is INFINITY:
            top = self.min_exponent + len(self.coefficients) - 1
            return [(top - k, c) for k, c in enumerate(self.coefficients)]
        return [(self.min_exponent + k, c) for k, c in enumerate(self.coefficients)]

    def nonzero_items(self) -> list[tuple[int, Fraction]]:
        return [(e, c) for e, c in self.items() if c != 0]

    def __repr__(self):
        terms = ", ".join(f"{e}: {c}" for e, c in self.nonzero_items()) or "0"
        return f"LaurentSeries(at {self.point!r}; {{{terms}}})"


def _series_div(num: Sequence[Fraction], den: Sequence[Fraction], count: int) -> list[Fraction]:
    # Power-series quotient; den[0] must be nonzero.
    d0 = den[0]
    out = []
    for k in range(count):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


DEFAULT_ORDER = 12


def laurent_expand(f: RatFunc, point, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """Laurent expansion of f at the given point, through the requested order.

    At a finite point c the window is [valuation, order]; at infinity it runs
    from the leading exponent down to t^-order.  The point must be INFINITY or
    an exact rational; anything else raises UnsupportedPoint.
    """
    if point is INFINITY:
        if f.is_zero():
            return LaurentSeries(point, 0, order, ())
        n, d = f.num, f.den
        # f(1/u) = u^(deg d - deg n) * rev(n)(u) / rev(d)(u)
        rn = list(reversed(n.coeffs))
        rd = list(reversed(d.coeffs))
        top = n.degree - d.degree  # leading exponent in t
        count = top + order + 1
        if count <= 0:
            return LaurentSeries(point, -order, order, ())
        series = _series_div(rn, rd, count)
        return LaurentSeries(point, -order, order, series)
    try:
        c = _as_fraction(point)
    except TypeError:
        raise UnsupportedPoint(f"cannot expand at {point!r}; supply an exact rational shift")
    if f.is_zero():
        return LaurentSeries(c, 0, order, ())
    n = f.num if c == 0 else f.num.taylor_shift(c)
    d = f.den if c == 0 else f.den.taylor_shift(c)
    vn, vd = n.valuation(), d.valuation()
    val = vn - vd
    if order < val:
        return LaurentSeries(c, val, order, ())
    ns = list(n.coeffs[vn:])
    ds = list(d.coeffs[vd:])
    series = _series_div(ns, ds, order - val + 1)
    return LaurentSeries(c, val, order, series)


def residue(f: RatFunc, point) -> Fraction:
    """Residue at 0 or a finite rational point; at infinity the convention is
    -(coefficient of 1/t in the expansion at infinity)."""
    if point is INFINITY:
        return -laurent_expand(f, INFINITY, 1).coefficient(-1)
    c = _as_fraction(point)
    if f.is_zero():
        return Fraction(0)
    n = f.num if c == 0 else f.num.taylor_shift(c)
    d = f.den if c == 0 else f.den.taylor_shift(c)
    val = n.valuation() - d.valuation()
    if val >= 0:
        return Fraction(0)
    shifted = RatFunc(n, d)
    return laurent_expand(shifted, 0, -1 if val <= -1 else 0).coefficient(-1)


# -- rational roots of denominators -----------------------------------------


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division plus Pollard-Brent rho."""
    factors: dict[int, int] = {}
    n = abs(n)
    if n <= 1:
        return factors
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while p * p <= n and p < 1 << 20:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += wheel[w]
        w = (w + 1) % 8
    if n > 1:
        for q in _rho_split(n):
            factors[q] = factors.get(q, 0) + 1
    return factors


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_split(n: int) -> list[int]:
    if n == 1:
        return []
    if _is_probable_prime(n):
        return [n]
    # Pollard-Brent with deterministic restarts.
    for c in range(1, 50):
        x, y, d = 2, 2, 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = _igcd(abs(x - y), n)
        if d != n:
            return sorted(_rho_split(d) + _rho_split(n // d))
    raise AlgebraError(f"failed to factor {n} while extracting rational roots")


def _divisors(factors: dict[int, int], cap: int = 1 << 20) -> list[int]:
    divs = [1]
    for p, e in factors.items():
        grown = []
        pk = 1
        for _ in range(e + 1):
            grown.extend(d * pk for d in divs)
            pk *= p
        divs = grown
        if len(divs) > cap:
            raise AlgebraError("too many divisor candidates for rational-root search")
    return divs


def rational_roots(p: Poly) -> dict[Fraction, int]:
    """All rational roots of p with multiplicities (exact)."""
    roots: dict[Fraction, int] = {}
    if p.degree <= 0:
        return roots
    _, ints = p._int_form()
    ints = _intpoly_primitive(ints)
    # Strip the root at zero first.
    z = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        z += 1
    if z:
        roots[Fraction(0)] = z
    if len(ints) <= 1:
        return roots
    num_divs = _divisors(_factorize(ints[0]))
    den_divs = _divisors(_factorize(ints[-1]))
    p1 = sum(ints)
    pm1 = sum(c if k % 2 == 0 else -c for k, c in enumerate(ints))
    candidates = set()
    for a in num_divs:
        for b in den_divs:
            if _igcd(a, b) != 1:
                continue
            for r in (Fraction(a, b), Fraction(-a, b)):
                # A root r = a/b requires (a - b) | p(1) and (a + b) | p(-1).
                if p1 != 0 and r.numerator != r.denominator and \
                        p1 % (r.numerator - r.denominator) != 0:
                    continue
                if pm1 != 0 and r.numerator != -r.denominator and \
                        pm1 % (r.numerator + r.denominator) != 0:
                    continue
                candidates.add(r)
    work = [Fraction(c) for c in ints]
    for r in sorted(candidates):
        mult = 0
        while len(work) > 1:
            val = Fraction(0)
            for c in reversed(work):
                val = val * r + c
            if val != 0:
                break
            # Synthetic division by (t - r).
            new = [Fraction(0)] * (len(work) - 1)
            acc = Fraction(0)
            for k in range(len(work) - 1, 0, -1):
                acc = acc * r + work[k]
                new[k - 1] = acc
            work = new
            mult += 1
        if mult:
            roots[r] = mult
    return roots


class PoleSupport:
    """Rational roots of a denominator plus a flag for leftover factors."""

    __slots__ = ("rational_poles", "has_irrational_factor")

    def __init__(self, rational_poles: dict[Fraction, int], has_irrational_factor: bool):
        object.__setattr__(self, "rational_poles", dict(rational_poles))
        object.__setattr__(self, "has_irrational_factor", has_irrational_factor)

    def __setattr__(self, *a):
        raise AttributeError("PoleSupport is immutable")

    def locations(self) -> set[Fraction]:
        return set(self.rational_poles)

    def __repr__(self):
        return (f"PoleSupport({sorted(self.rational_poles.items())}, "
                f"irrational={self.has_irrational_factor})")


def pole_support(f: RatFunc) -> PoleSupport:
    """Exact rational poles of f (roots of the canonical denominator) and a
    flag marking whether a nonconstant factor with no rational root remains."""
    den = f.den
    if den.degree <= 0:
        return PoleSupport({}, False)
    roots = rational_roots(den)
    covered = sum(roots.values())
    return PoleSupport(roots, covered < den.degree)
