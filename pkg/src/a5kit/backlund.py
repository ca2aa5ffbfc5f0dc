"""Solutions of the six-component system and the group action on them.

A Solution is six rational functions (f_0, ..., f_5) together with a parameter
tuple.  The system couples them through six first-order equations; residual()
returns the left-minus-right side of each as an exact rational function, so a
tuple solves the system exactly when all six residuals are the zero function.

The group acts birationally: the reflection s_i sends f_{i+1} to
f_{i+1} + alpha_i/f_i and f_{i-1} to f_{i-1} - alpha_i/f_i, fixing the rest,
and transforms the parameters through the reflection on tuples.  When f_i is
identically zero, s_i acts as the identity on both functions and parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import Poly, RatFunc, _as_fraction
from .weyl import Generator, Params, TransformWord, act_params


class BacklundError(Exception):
    pass


@dataclass(frozen=True)
class Solution:
    """Six rational functions indexed mod 6, plus their parameter tuple."""

    f: tuple[RatFunc, RatFunc, RatFunc, RatFunc, RatFunc, RatFunc]
    params: Params

    def __post_init__(self):
        if len(self.f) != 6:
            raise BacklundError("a solution carries exactly six functions")
        object.__setattr__(self, "f", tuple(self.f))

    def component(self, i: int) -> RatFunc:
        return self.f[i % 6]

    def __repr__(self):
        return f"Solution(f={list(self.f)!r}, params={self.params!r})"


def _quadratic_part(f: tuple[RatFunc, ...], i: int) -> RatFunc:
    # f_{i+1}f_{i+2} + f_{i+1}f_{i+4} + f_{i+3}f_{i+4}
    #   - f_{i+2}f_{i+3} - f_{i+2}f_{i+5} - f_{i+4}f_{i+5}
    g = lambda k: f[(i + k) % 6]
    return (g(1) * g(2) + g(1) * g(4) + g(3) * g(4)
            - g(2) * g(3) - g(2) * g(5) - g(4) * g(5))


def residual(s: Solution) -> tuple[RatFunc, ...]:
    """The six equation residuals, canonical; all zero iff s solves the system."""
    t_half = RatFunc(Poly([0, Fraction(1, 2)]))
    a = s.params
    out = []
    for i in range(6):
        fi = s.f[i]
        lhs = t_half * fi.derivative()
        lin = Fraction(1, 2) - a[i + 2] - a[i + 4]
        rhs = fi * _quadratic_part(s.f, i) + fi * lin \
            + (s.f[(i + 2) % 6] + s.f[(i + 4) % 6]) * a[i]
        out.append(lhs - rhs)
    return tuple(out)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failure: Optional[str] = None

    def __bool__(self):
        return self.ok


def _residuals_vanish(s: Solution) -> Optional[int]:
    """Index of the first nonzero residual, or None if all vanish.

    Decided exactly by evaluation: each residual is a rational function whose
    numerator degree over the common denominator is bounded, so vanishing at
    more sample points than the bound forces the zero function.
    """
    a = s.params
    t_half = Fraction(1, 2)
    nums = [f.num for f in s.f]
    dens = [f.den for f in s.f]
    bound = 3 + sum(max(n.degree, 0) + max(d.degree, 0) for n, d in zip(nums, dens))
    # Sample integer points avoiding all denominator roots.
    points: list[Fraction] = []
    x = 1
    while len(points) <= bound:
        fx = Fraction(x)
        if all(d.evaluate(fx) != 0 for d in dens):
            points.append(fx)
        x += 1
    first_bad: Optional[int] = None
    for i in range(6):
        fi_num, fi_den = nums[i], dens[i]
        dnum = fi_num.derivative() * fi_den - fi_num * fi_den.derivative()
        dden = fi_den * fi_den
        lin = t_half - a[i + 2] - a[i + 4]
        ok = True
        for x in points:
            vals = [nums[j].evaluate(x) / dens[j].evaluate(x) for j in range(6)]
            g = lambda k: vals[(i + k) % 6]
            quad = (g(1) * g(2) + g(1) * g(4) + g(3) * g(4)
                    - g(2) * g(3) - g(2) * g(5) - g(4) * g(5))
            deriv = dnum.evaluate(x) / dden.evaluate(x)
            res = t_half * x * deriv - vals[i] * (quad + lin) \
                - a[i] * (g(2) + g(4))
            if res != 0:
                ok = False
                break
        if not ok:
            first_bad = i
            break
    return first_bad


def verify_solution(s: Solution) -> VerificationReport:
    """Exact check: normalizations, the six equations, and oddness.

    The report names the first violated identity.
    """
    t = RatFunc.t()
    if s.f[0] + s.f[2] + s.f[4] != t:
        return VerificationReport(False, "normalization f0+f2+f4")
    if s.f[1] + s.f[3] + s.f[5] != t:
        return VerificationReport(False, "normalization f1+f3+f5")
    bad = _residuals_vanish(s)
    if bad is not None:
        return VerificationReport(False, f"residual equation {bad}")
    for i, fi in enumerate(s.f):
        if not fi.is_odd():
            return VerificationReport(False, f"oddness f{i}")
    return VerificationReport(True)


def act_solution(s: Solution, g: Generator) -> Solution:
    """Apply one generator to a solution (and its parameters)."""
    if g.tag == "pi":
        return Solution(tuple(s.f[(j + 1) % 6] for j in range(6)),
                        act_params(s.params, g))
    if g.tag == "pi^-1":
        return Solution(tuple(s.f[(j - 1) % 6] for j in range(6)),
                        act_params(s.params, g))
    i = g.index
    fi = s.f[i]
    if fi.is_zero():
        # Identity transformation: functions and parameters both fixed.
        return s
    delta = RatFunc.constant(s.params[i]) / fi
    out = list(s.f)
    out[(i + 1) % 6] = s.f[(i + 1) % 6] + delta
    out[(i - 1) % 6] = s.f[(i - 1) % 6] - delta
    return Solution(tuple(out), act_params(s.params, g))


def act_solution_word(s: Solution, w: TransformWord) -> Solution:
    for g in w:
        s = act_solution(s, g)
    return s


# -- the five explicit polynomial seed families ------------------------------


def _zero6() -> list[RatFunc]:
    return [RatFunc.zero() for _ in range(6)]


def seed_a1(anchor: int = 0, a=Fraction(1, 2)) -> Solution:
    """f_i = f_{i+1} = t with alpha_i + alpha_{i+1} = 1, the rest zero."""
    a = _as_fraction(a)
    f = _zero6()
    f[anchor % 6] = RatFunc.t()
    f[(anchor + 1) % 6] = RatFunc.t()
    al = [Fraction(0)] * 6
    al[anchor % 6] = a
    al[(anchor + 1) % 6] = 1 - a
    return Solution(tuple(f), Params(tuple(al)))


def seed_a2(anchor: int = 0, a=Fraction(1, 2)) -> Solution:
    """f_i = f_{i+3} = t with alpha_i + alpha_{i+3} = 1, the rest zero."""
    a = _as_fraction(a)
    f = _zero6()
    f[anchor % 6] = RatFunc.t()
    f[(anchor + 3) % 6] = RatFunc.t()
    al = [Fraction(0)] * 6
    al[anchor % 6] = a
    al[(anchor + 3) % 6] = 1 - a
    return Solution(tuple(f), Params(tuple(al)))


def seed_a3(anchor: int = 0, a=Fraction(1, 3)) -> Solution:
    """f_i = f_{i+1} = f_{i+2} = t, f_{i+4} = -t; parameters
    (a, 1-a, a, 0, -a, 0) anchored at i."""
    a = _as_fraction(a)
    f = _zero6()
    t = RatFunc.t()
    f[anchor % 6] = t
    f[(anchor + 1) % 6] = t
    f[(anchor + 2) % 6] = t
    f[(anchor + 4) % 6] = -t
    al = [Fraction(0)] * 6
    al[anchor % 6] = a
    al[(anchor + 1) % 6] = 1 - a
    al[(anchor + 2) % 6] = a
    al[(anchor + 4) % 6] = -a
    return Solution(tuple(f), Params(tuple(al)))


def seed_b(anchor: int = 0, a=Fraction(1, 4)) -> Solution:
    """Four consecutive components t/2; parameters (a, 1/2-a, a, 1/2-a, 0, 0)
    anchored at i."""
    a = _as_fraction(a)
    f = _zero6()
    half_t = RatFunc(Poly([0, Fraction(1, 2)]))
    for k in range(4):
        f[(anchor + k) % 6] = half_t
    al = [Fraction(0)] * 6
    al[anchor % 6] = a
    al[(anchor + 1) % 6] = Fraction(1, 2) - a
    al[(anchor + 2) % 6] = a
    al[(anchor + 3) % 6] = Fraction(1, 2) - a
    return Solution(tuple(f), Params(tuple(al)))


def seed_c(a=Fraction(1, 6)) -> Solution:
    """All six components t/3; parameters alternate (a, 1/3-a)."""
    a = _as_fraction(a)
    third_t = RatFunc(Poly([0, Fraction(1, 3)]))
    f = [third_t] * 6
    al = [a, Fraction(1, 3) - a] * 3
    return Solution(tuple(f), Params(tuple(al)))


SEED_BUILDERS = {
    "A1": seed_a1,
    "A2": seed_a2,
    "A3": seed_a3,
    "B": seed_b,
    "C": lambda anchor=0, a=Fraction(1, 6): seed_c(a),
}
