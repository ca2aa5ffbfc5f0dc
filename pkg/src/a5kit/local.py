"""Local analysis of solutions: pole patterns, residue tables, and the
auxiliary function H.

A rational solution is pinned down by its leading behaviour at t=infinity
(five possible patterns), its pole pattern at t=0 (regular, a pair, or a
quadruple), and half-integer residue data at finite nonzero poles.  The
averaged Hamiltonian H packages the same information into two constants
(h_inf_0 at infinity, h_0_0 at zero) whose gap is an integer obstruction:
6*(h_0_0 - h_inf_0) must be zero or a negative integer whenever a rational
solution exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (
    INFINITY,
    LaurentSeries,
    Poly,
    RatFunc,
    laurent_expand,
    pole_support,
    poly_gcd,
    rational_roots,
    residue,
)
from .backlund import Solution
from .weyl import Params


class LocalAnalysisError(Exception):
    pass


class PatternMismatch(LocalAnalysisError):
    """Observed local data fits none of the admissible patterns."""


# -- leading behaviour at infinity -------------------------------------------

INFINITY_KINDS = ("A1", "A2", "A3", "B", "C")


@dataclass(frozen=True)
class InfinityType:
    kind: str  # one of INFINITY_KINDS
    anchor: int = 0  # unused for C

    def __post_init__(self):
        if self.kind not in INFINITY_KINDS:
            raise LocalAnalysisError(f"unknown infinity kind {self.kind!r}")
        object.__setattr__(self, "anchor", self.anchor % 6)


def _slope_template(kind: str, anchor: int) -> tuple[Fraction, ...]:
    s = [Fraction(0)] * 6
    i = anchor % 6
    if kind == "A1":
        s[i] = s[(i + 1) % 6] = Fraction(1)
    elif kind == "A2":
        s[i] = s[(i + 3) % 6] = Fraction(1)
    elif kind == "A3":
        s[i] = s[(i + 1) % 6] = s[(i + 2) % 6] = Fraction(1)
        s[(i + 4) % 6] = Fraction(-1)
    elif kind == "B":
        for k in range(4):
            s[(i + k) % 6] = Fraction(1, 2)
    else:  # C
        s = [Fraction(1, 3)] * 6
    return tuple(s)


def _leading_slopes(s: Solution) -> tuple[Fraction, ...]:
    slopes = []
    for f in s.f:
        if f.is_zero():
            slopes.append(Fraction(0))
            continue
        d = f.num.degree - f.den.degree
        if d > 1:
            raise PatternMismatch("component grows faster than t at infinity")
        slopes.append(f.num.leading() if d == 1 else Fraction(0))
    return tuple(slopes)


def infinity_type(s: Solution) -> InfinityType:
    """Detect which of the five leading patterns at infinity the solution has."""
    slopes = _leading_slopes(s)
    for kind in INFINITY_KINDS:
        anchors = (0,) if kind == "C" else range(6)
        for i in anchors:
            if slopes == _slope_template(kind, i):
                return InfinityType(kind, i)
    raise PatternMismatch(f"leading coefficients {slopes} fit no admissible pattern")


def infinity_residue_table(p: Params, ty: InfinityType) -> tuple[Fraction, ...]:
    """Predicted coefficient of 1/t at infinity for each component."""
    i = ty.anchor
    out = [Fraction(0)] * 6
    a = p
    if ty.kind == "A1":
        out[i] = -(a[i + 2] + a[i + 4])
        out[(i + 1) % 6] = a[i + 3] + a[i + 5]
        out[(i + 2) % 6] = a[i + 2]
        out[(i + 3) % 6] = -a[i + 3]
        out[(i + 4) % 6] = a[i + 4]
        out[(i + 5) % 6] = -a[i + 5]
    elif ty.kind == "A2":
        out[i] = a[i + 2] - a[i + 4]
        out[(i + 1) % 6] = a[i + 1]
        out[(i + 2) % 6] = -a[i + 2]
        out[(i + 3) % 6] = a[i + 5] - a[i + 1]
        out[(i + 4) % 6] = a[i + 4]
        out[(i + 5) % 6] = -a[i + 5]
    elif ty.kind == "A3":
        out[i] = -a[i + 2] - 2 * a[i + 3] - a[i + 4]
        out[(i + 1) % 6] = -a[i + 3] + a[i + 5]
        out[(i + 2) % 6] = a[i] + a[i + 4] + 2 * a[i + 5]
        out[(i + 3) % 6] = a[i + 3]
        out[(i + 4) % 6] = -a[i] + a[i + 2] + 2 * a[i + 3] - 2 * a[i + 5]
        out[(i + 5) % 6] = -a[i + 5]
    elif ty.kind == "B":
        out[i] = a[i + 1] - a[i + 3] - 2 * a[i + 4] - a[i + 5]
        out[(i + 1) % 6] = -a[i] + a[i + 2] - a[i + 4]
        out[(i + 2) % 6] = -a[i + 1] + a[i + 3] + a[i + 5]
        out[(i + 3) % 6] = a[i] - a[i + 2] + a[i + 4] + 2 * a[i + 5]
        out[(i + 4) % 6] = 2 * a[i + 4]
        out[(i + 5) % 6] = -2 * a[i + 5]
    else:  # C
        for j in range(6):
            out[j] = 2 * a[j + 1] + a[j + 2] - a[j + 4] - 2 * a[j + 5]
    return tuple(out)


def observed_infinity_residues(s: Solution) -> tuple[Fraction, ...]:
    """Coefficient of 1/t at infinity for each component, computed exactly."""
    return tuple(laurent_expand(f, INFINITY, 1).coefficient(-1) for f in s.f)


# -- pole pattern at t = 0 ---------------------------------------------------


@dataclass(frozen=True)
class ZeroPattern:
    kind: str  # "regular" | "pair" | "quad"
    anchor: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("regular", "pair", "quad"):
            raise LocalAnalysisError(f"unknown zero-pattern kind {self.kind!r}")
        if self.kind != "regular":
            object.__setattr__(self, "anchor", self.anchor % 6)


@dataclass(frozen=True)
class ZeroData:
    pattern: ZeroPattern
    observed: tuple[Fraction, ...]
    predicted: tuple[Fraction, ...]


def predicted_zero_residues(p: Params, zp: ZeroPattern) -> tuple[Fraction, ...]:
    """Residues at t=0 implied by the pattern.

    For the quadruple pattern the two pair residues satisfy r_i + r_{i+3} =
    -sum(alpha) = -1, which makes the prediction identical at the anchor and
    at anchor+3.
    """
    out = [Fraction(0)] * 6
    if zp.kind == "regular":
        return tuple(out)
    i = zp.anchor
    if zp.kind == "pair":
        r = p[i + 1] - p[i + 3] - p[i + 5]
        out[i] = r
        out[(i + 2) % 6] = -r
    else:
        r = p[i + 1] - p[i + 3] - 2 * p[i + 4] - p[i + 5]
        q = -p[i] - 2 * p[i + 1] - p[i + 2] + p[i + 4]
        out[i] = r
        out[(i + 2) % 6] = -r
        out[(i + 3) % 6] = q
        out[(i + 5) % 6] = -q
    return tuple(out)


def _zero_valuations(s: Solution) -> tuple[int, ...]:
    vals = []
    for f in s.f:
        if f.is_zero():
            vals.append(10 ** 9)
        else:
            vals.append(f.num.valuation() - f.den.valuation())
    return tuple(vals)


def zero_pattern(s: Solution) -> ZeroData:
    """Detect the pole pattern at t=0 and compare residues with the predicted
    parameter formulas."""
    vals = _zero_valuations(s)
    poles = frozenset(j for j in range(6) if vals[j] < 0)
    observed = tuple(residue(f, 0) for f in s.f)
    if not poles:
        pat = ZeroPattern("regular")
        return ZeroData(pat, observed, predicted_zero_residues(s.params, pat))
    if any(vals[j] < -1 for j in poles):
        raise PatternMismatch("pole of order > 1 at t=0")
    for i in range(6):
        if poles == frozenset({i, (i + 2) % 6}):
            pat = ZeroPattern("pair", i)
            pred = predicted_zero_residues(s.params, pat)
            if pred != observed:
                raise PatternMismatch(
                    f"pair pole at 0 with residues {observed} off the predicted {pred}")
            return ZeroData(pat, observed, pred)
    quad_anchors = [i for i in range(6)
                    if poles == frozenset({i, (i + 2) % 6, (i + 3) % 6, (i + 5) % 6})]
    for i in quad_anchors:
        pat = ZeroPattern("quad", i)
        pred = predicted_zero_residues(s.params, pat)
        if pred == observed:
            return ZeroData(pat, observed, pred)
    raise PatternMismatch(f"pole set {sorted(poles)} at t=0 fits no admissible pattern")


def residue_integrality_check(s: Solution) -> bool:
    """Whether (1/t coefficient at infinity) - (residue at 0) is an integer
    for every component."""
    at_inf = observed_infinity_residues(s)
    at_zero = tuple(residue(f, 0) for f in s.f)
    return all((c - r).denominator == 1 for c, r in zip(at_inf, at_zero))


# -- finite nonzero poles ----------------------------------------------------

POLE_CASE_LABELS = ("pair_i", "pair_ii", "quad_i", "quad_ii", "quad_iii")

_CASE_RESIDUES = {
    "pair_i": {0: Fraction(1, 2), 2: Fraction(-1, 2)},
    "pair_ii": {0: Fraction(-1, 2), 2: Fraction(1, 2)},
    "quad_i": {0: Fraction(-1, 2), 2: Fraction(1, 2), 3: Fraction(-1, 2), 5: Fraction(1, 2)},
    "quad_ii": {0: Fraction(-3, 2), 2: Fraction(3, 2), 3: Fraction(1, 2), 5: Fraction(-1, 2)},
    "quad_iii": {0: Fraction(1, 2), 2: Fraction(-1, 2), 3: Fraction(-3, 2), 5: Fraction(3, 2)},
}

# Residue of H at a pole of this shape, divided by the pole location.
CASE_H_RATIO = {
    "pair_i": Fraction(1, 6),
    "pair_ii": Fraction(1, 12),
    "quad_i": Fraction(1, 6),
    "quad_ii": Fraction(5, 12),
    "quad_iii": Fraction(5, 12),
}


@dataclass(frozen=True)
class FinitePoleCase:
    location: Fraction
    label: str  # one of POLE_CASE_LABELS
    anchor: int
    residues: tuple[Fraction, ...] = field(default=(), compare=False)


def finite_pole_cases(s: Solution) -> list[FinitePoleCase]:
    """Classify every finite nonzero pole of the solution by its residue
    pattern.  All pole locations must be exact rationals."""
    locations: set[Fraction] = set()
    for f in s.f:
        sup = pole_support(f)
        if sup.has_irrational_factor:
            raise LocalAnalysisError(
                "a component has poles at non-rational points; the half-integer "
                "residue patterns can only be read off at exact rational locations")
        for c, mult in sup.rational_poles.items():
            if c != 0:
                if mult > 1:
                    raise PatternMismatch(f"pole of order {mult} at t={c}")
                locations.add(c)
    cases = []
    for c in sorted(locations):
        polevec = []
        resvec = []
        for f in s.f:
            if f.is_zero() or f.den.evaluate(c) != 0:
                polevec.append(False)
                resvec.append(Fraction(0))
            else:
                polevec.append(True)
                resvec.append(residue(f, c))
        poleset = frozenset(j for j in range(6) if polevec[j])
        matched = None
        for label in POLE_CASE_LABELS:
            template = _CASE_RESIDUES[label]
            for i in range(6):
                expected_set = frozenset((i + k) % 6 for k in template)
                if poleset != expected_set:
                    continue
                if all(resvec[(i + k) % 6] == v for k, v in template.items()):
                    matched = FinitePoleCase(c, label, i, tuple(resvec))
                    break
            if matched:
                break
        if matched is None:
            raise PatternMismatch(
                f"pole at t={c} with residues {resvec} matches no admissible case")
        cases.append(matched)
    return cases


# -- the auxiliary function H -------------------------------------------------


def _hamiltonian_quadratic_coeff(p: Params, i: int) -> list[tuple[int, int, Fraction]]:
    """(a, b, coeff) terms of the quadratic part of the i-th Hamiltonian."""
    a = p
    third = Fraction(1, 3)
    return [
        ((i + 0) % 6, (i + 1) % 6, third * (a[i + 1] + 2 * a[i + 2] + a[i + 4] - a[i + 5])),
        ((i + 1) % 6, (i + 2) % 6, third * (a[i + 1] + 2 * a[i + 2] + 3 * a[i + 3] + a[i + 4] + 2 * a[i + 5])),
        ((i + 2) % 6, (i + 3) % 6, -third * (2 * a[i + 1] + a[i + 2] - a[i + 4] + a[i + 5])),
        ((i + 3) % 6, (i + 4) % 6, third * (a[i + 1] - a[i + 2] + a[i + 4] + 2 * a[i + 5])),
        ((i + 4) % 6, (i + 5) % 6, -third * (2 * a[i + 1] + a[i + 2] + 3 * a[i + 3] + 2 * a[i + 4] + a[i + 5])),
        ((i + 5) % 6, (i + 0) % 6, third * (a[i + 1] - a[i + 2] - 2 * a[i + 4] - a[i + 5])),
        ((i + 0) % 6, (i + 3) % 6, third * (a[i + 1] - a[i + 2] + a[i + 4] - a[i + 5])),
        ((i + 1) % 6, (i + 4) % 6, third * (a[i + 1] + 2 * a[i + 2] + a[i + 4] + 2 * a[i + 5])),
        ((i + 2) % 6, (i + 5) % 6, -third * (2 * a[i + 1] + a[i + 2] + 2 * a[i + 4] + a[i + 5])),
    ]


def hamiltonian(s: Solution) -> RatFunc:
    """The averaged Hamiltonian H of a solution, as an exact rational function.

    H is the mean of the six shifted Hamiltonians; the quartic sum is shared
    and the quadratic coefficients are accumulated per product before any
    polynomial multiplication happens.
    """
    f = s.f
    pair_products: dict[tuple[int, int], RatFunc] = {}

    def product(a: int, b: int) -> RatFunc:
        key = (min(a, b), max(a, b))
        if key not in pair_products:
            pair_products[key] = f[key[0]] * f[key[1]]
        return pair_products[key]

    quartic = RatFunc.zero()
    for j in range(6):
        quartic = quartic + product(j, (j + 1) % 6) * product((j + 2) % 6, (j + 3) % 6)
    weights: dict[tuple[int, int], Fraction] = {}
    for i in range(6):
        for a, b, coeff in _hamiltonian_quadratic_coeff(s.params, i):
            key = (min(a, b), max(a, b))
            weights[key] = weights.get(key, Fraction(0)) + coeff
    quad = RatFunc.zero()
    for key, w in weights.items():
        if w != 0:
            quad = quad + product(*key) * w
    return quartic + quad * Fraction(1, 6)


@dataclass(frozen=True)
class HamiltonianData:
    h_inf_4: Fraction
    h_inf_2: Fraction
    h_inf_0: Fraction
    h_0_m2: Fraction
    h_0_0: Fraction
    finite_pole_residue_ratios: tuple[tuple[Fraction, Fraction], ...]
    pair_counts: dict[Fraction, int]
    ratios_complete: bool

    def gap_times_six(self) -> Fraction:
        return 6 * (self.h_0_0 - self.h_inf_0)


H_RATIOS = (Fraction(1, 6), Fraction(1, 12), Fraction(5, 12))


def hamiltonian_data(s: Solution, H: Optional[RatFunc] = None) -> HamiltonianData:
    """Laurent constants of H at infinity and zero plus the residue-ratio
    split of its finite poles.

    Finite poles are grouped by the ratio residue/location without extracting
    roots: for each admissible ratio e the factor of the denominator carrying
    exactly the poles with that ratio is gcd(D, N - e*t*D'), so the three
    factors must multiply back to the full (squarefree) denominator.
    """
    if H is None:
        H = hamiltonian(s)
    at_inf = laurent_expand(H, INFINITY, 0)
    at_zero = laurent_expand(H, 0, 0)
    num, den = H.num, H.den
    v = den.valuation()
    core = den if v == 0 else den.exact_div(Poly([0, 1] if v == 1 else [0] * v + [1]))
    ratios: list[tuple[Fraction, Fraction]] = []
    counts: dict[Fraction, int] = {}
    complete = True
    if core.degree > 0:
        if poly_gcd(core, core.derivative()).degree > 0:
            raise LocalAnalysisError("H has a finite pole of order > 1 outside t=0")
        dden = den.derivative()
        matched = Poly.one()
        tpoly = Poly([0, 1])
        for eps in H_RATIOS:
            g = poly_gcd(core, num - tpoly * dden * eps)
            if g.degree > 0:
                counts[eps] = g.degree // 2
                matched = matched * g
                for c in sorted(rational_roots(g)):
                    ratios.append((c, eps))
        complete = matched.monic() == core.monic()
    return HamiltonianData(
        h_inf_4=at_inf.coefficient(4),
        h_inf_2=at_inf.coefficient(2),
        h_inf_0=at_inf.coefficient(0),
        h_0_m2=at_zero.coefficient(-2),
        h_0_0=at_zero.coefficient(0),
        finite_pole_residue_ratios=tuple(ratios),
        pair_counts=counts,
        ratios_complete=complete,
    )


# -- constant terms of H from parameters alone --------------------------------


@dataclass(frozen=True)
class TypeBInvariants:
    beta: Fraction
    gamma: Fraction
    epsilon: Fraction
    phi: Fraction

    @staticmethod
    def from_params(p: Params, anchor: int) -> "TypeBInvariants":
        i = anchor
        return TypeBInvariants(
            beta=-p[i] + p[i + 2] - p[i + 4],
            gamma=-p[i + 1] + p[i + 3] + p[i + 5],
            epsilon=2 * p[i + 4],
            phi=-2 * p[i + 5],
        )


@dataclass(frozen=True)
class TypeCInvariants:
    x: Fraction
    y: Fraction
    z: Fraction
    w: Fraction

    @staticmethod
    def from_params(p: Params) -> "TypeCInvariants":
        return TypeCInvariants(
            x=p[2] - p[4], y=p[3] - p[5], z=p[0] - p[4], w=p[1] - p[5])

    @property
    def chi(self) -> Fraction:
        return self.x + self.y + self.z + self.w


def h_constant_at_infinity(p: Params, ty: InfinityType) -> Fraction:
    """The constant term of H at infinity, per detected leading pattern."""
    i = ty.anchor
    a = p
    if ty.kind == "A1":
        return (-Fraction(1, 6) * (2 * a[i + 2] + a[i + 3] + a[i + 4] + 2 * a[i + 5])
                + a[i + 2] * a[i + 3] + a[i + 4] * a[i + 5] + a[i + 2] * a[i + 5])
    if ty.kind == "A2":
        return (a[i + 1] * a[i + 2] + a[i + 4] * a[i + 5]
                + Fraction(1, 6) * (-a[i + 1] - a[i + 2] - a[i + 4] - a[i + 5]))
    if ty.kind == "A3":
        return (Fraction(1, 6) * (-1 + a[i + 1] - 3 * a[i + 3] - a[i + 4] - 3 * a[i + 5])
                + a[i + 3] * (a[i] + a[i + 4] + a[i + 5])
                + a[i + 5] * (a[i + 2] + a[i + 3] + a[i + 4]))
    if ty.kind == "B":
        inv = TypeBInvariants.from_params(p, i)
        return (Fraction(1, 12) * (inv.beta - inv.gamma)
                + Fraction(1, 6) * (inv.phi - inv.epsilon)
                + Fraction(1, 4) * (inv.beta ** 2 + inv.gamma ** 2)
                - Fraction(1, 2) * inv.epsilon * inv.phi)
    inv = TypeCInvariants.from_params(p)
    x, y, z, w = inv.x, inv.y, inv.z, inv.w
    return Fraction(1, 3) * (2 * x * x + 2 * y * y + 2 * z * z + 2 * w * w
                             + x * y - 2 * y * z + z * w - 2 * y * w + x * w - 2 * x * z)


def h_constant_at_zero(p: Params, zp: ZeroPattern) -> Fraction:
    """The constant term of H at zero, per pole pattern there.

    The quadruple-pole value is symmetric under anchor -> anchor+3 once the
    parameters sum to 1, so either anchor reading gives the same constant.
    """
    if zp.kind == "regular":
        return Fraction(0)
    i = zp.anchor
    if zp.kind == "pair":
        return (Fraction(1, 3) * p[i + 1]
                + (Fraction(1, 6) - p[i + 1]) * (p[i + 3] + p[i + 5]))
    return (Fraction(1, 6)
            + (p[i + 1] - p[i + 4]) * (p[i] + p[i + 1] + p[i + 2] - Fraction(1, 2)))


@dataclass(frozen=True)
class ObstructionResult:
    status: str  # "admissible_regular" | "admissible_with_finite_poles" | "violated"
    d: Fraction  # 6*(h_0_0 - h_inf_0)
    m: Optional[int] = None  # number of sixths in the deficit, when admissible


def obstruction_check(p: Params, ty: InfinityType, zp: ZeroPattern) -> ObstructionResult:
    """Evaluate the integer obstruction 6*(h_0_0 - h_inf_0) for the given
    leading pattern and zero pattern."""
    d = 6 * (h_constant_at_zero(p, zp) - h_constant_at_infinity(p, ty))
    if d == 0:
        return ObstructionResult("admissible_regular", d)
    if d.denominator == 1 and d < 0:
        return ObstructionResult("admissible_with_finite_poles", d, int(-d))
    return ObstructionResult("violated", d)


# -- unique formal expansion at infinity --------------------------------------


class AnsatzError(LocalAnalysisError):
    pass


def _affine_zero(n: int = 6):
    return (Fraction(0), (Fraction(0),) * n)


def _affine_const(c: Fraction):
    return (c, (Fraction(0),) * 6)


def _affine_add(u, v):
    return (u[0] + v[0], tuple(a + b for a, b in zip(u[1], v[1])))


def _affine_scale(u, c: Fraction):
    return (u[0] * c, tuple(a * c for a in u[1]))


def _solve_affine_system(equations) -> tuple[Fraction, ...]:
    """Solve a consistent linear system given as affine forms equal to zero;
    raises AnsatzError unless the solution is unique."""
    rows = [[*vec, const] for const, vec in equations]
    n = 6
    pivots = []
    r = 0
    for col in range(n):
        pivot = None
        for k in range(r, len(rows)):
            if rows[k][col] != 0:
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                factor = rows[k][col]
                rows[k] = [x - factor * y for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    for k in range(r, len(rows)):
        if rows[k][n] != 0:
            raise AnsatzError("inconsistent linear system in the formal expansion")
    if len(pivots) < n:
        raise AnsatzError("singular linear system: the formal expansion is not unique")
    sol = [Fraction(0)] * n
    for row, col in zip(rows, pivots):
        sol[col] = -row[n]
    return tuple(sol)


def expand_solution_ansatz(p: Params, ty: InfinityType, order: int) -> tuple[LaurentSeries, ...]:
    """The unique formal Laurent solution at infinity with the leading
    behaviour of the given type, through t^-order.

    Coefficients are found order by order: at each depth the six new
    coefficients enter the equations linearly (products of two unknowns fall
    below the matched power), and the resulting system, together with the two
    normalization constraints, must have exactly one solution.
    """
    if order < 1:
        raise AnsatzError("order must be at least 1")
    sigma = _slope_template(ty.kind, ty.anchor)
    # known[j][m] is the coefficient of t^-m of f_j, for m < current step.
    known: list[list[Fraction]] = [[] for _ in range(6)]

    def coeff(j: int, e: int, step: int):
        """Affine form for the coefficient of t^e in f_j at the given step."""
        if e == 1:
            return _affine_const(sigma[j])
        if e > 1 or e < -step:
            return _affine_zero()
        m = -e
        if m < step:
            return _affine_const(known[j][m])
        vec = [Fraction(0)] * 6
        vec[j] = Fraction(1)
        return (Fraction(0), tuple(vec))

    def triple_coeff(i: int, a: int, b: int, power: int, step: int):
        """Affine coefficient of t^power in f_i * f_a * f_b."""
        total = _affine_zero()
        for e1 in range(1, -(step + 1), -1):
            c1 = coeff(i, e1, step)
            if c1[0] == 0 and not any(c1[1]):
                continue
            for e2 in range(1, -(step + 1), -1):
                e3 = power - e1 - e2
                if e3 > 1 or e3 < -step:
                    continue
                c2 = coeff(a, e2, step)
                if c2[0] == 0 and not any(c2[1]):
                    continue
                c3 = coeff(b, e3, step)
                if c3[0] == 0 and not any(c3[1]):
                    continue
                # At most one factor may be an unknown; cross terms of two
                # unknowns sit at strictly lower powers, so guard and multiply.
                parts = [c1, c2, c3]
                consts = [u[0] for u in parts]
                vecs = [u[1] for u in parts]
                term_const = consts[0] * consts[1] * consts[2]
                term_vec = [Fraction(0)] * 6
                for idx in range(3):
                    others = consts[:idx] + consts[idx + 1:]
                    factor = others[0] * others[1]
                    if factor != 0:
                        for jj in range(6):
                            term_vec[jj] += vecs[idx][jj] * factor
                total = _affine_add(total, (term_const, tuple(term_vec)))
        return total

    def residual_coeff(i: int, power: int, step: int):
        """Affine coefficient of t^power in the i-th equation residual."""
        # (t/2) f_i' contributes (1/2)sigma_i at power 1 and (-m/2)u_{i,m} at power -m.
        acc = _affine_zero()
        if power == 1:
            acc = _affine_add(acc, _affine_const(sigma[i] * Fraction(1, 2)))
        m = -power
        if 0 <= m <= step:
            acc = _affine_add(acc, _affine_scale(coeff(i, power, step), Fraction(-m, 2)))
        quad_terms = [((i + 1) % 6, (i + 2) % 6, 1), ((i + 1) % 6, (i + 4) % 6, 1),
                      ((i + 3) % 6, (i + 4) % 6, 1), ((i + 2) % 6, (i + 3) % 6, -1),
                      ((i + 2) % 6, (i + 5) % 6, -1), ((i + 4) % 6, (i + 5) % 6, -1)]
        for a, b, sign in quad_terms:
            term = triple_coeff(i, a, b, power, step)
            acc = _affine_add(acc, _affine_scale(term, Fraction(-sign)))
        lin = Fraction(1, 2) - p[i + 2] - p[i + 4]
        acc = _affine_add(acc, _affine_scale(coeff(i, power, step), -lin))
        acc = _affine_add(acc, _affine_scale(coeff((i + 2) % 6, power, step), -p[i]))
        acc = _affine_add(acc, _affine_scale(coeff((i + 4) % 6, power, step), -p[i]))
        return acc

    # Leading balance: the t^3 coefficients are pure slope cubics and must vanish.
    for i in range(6):
        c = residual_coeff(i, 3, 0)
        if c[0] != 0:
            raise AnsatzError(f"leading slopes fail the cubic balance in equation {i}")
    if sum(sigma[j] for j in (0, 2, 4)) != 1 or sum(sigma[j] for j in (1, 3, 5)) != 1:
        raise AnsatzError("leading slopes violate the normalizations")

    for step in range(order + 1):
        equations = []
        for i in range(6):
            equations.append(residual_coeff(i, 2 - step, step))
        for parity in (0, 1):
            vec = [Fraction(0)] * 6
            const = Fraction(0)
            for j in (parity, parity + 2, parity + 4):
                vec[j] = Fraction(1)
            equations.append((const, tuple(vec)))
        sol = _solve_affine_system(equations)
        for j in range(6):
            known[j].append(sol[j])

    out = []
    for j in range(6):
        coeffs = [sigma[j]] + known[j]
        out.append(LaurentSeries(INFINITY, -order, order, coeffs))
    return tuple(out)


# -- assembled diagnostic report ----------------------------------------------


@dataclass(frozen=True)
class LocalReport:
    infinity: InfinityType
    zero: ZeroData
    finite_cases: Optional[tuple[FinitePoleCase, ...]]
    finite_case_error: Optional[str]
    hdata: HamiltonianData
    obstruction: ObstructionResult
    residues_integral: bool


def diagnose(s: Solution) -> LocalReport:
    """Full local analysis of a verified solution."""
    ty = infinity_type(s)
    zd = zero_pattern(s)
    cases: Optional[tuple[FinitePoleCase, ...]]
    err: Optional[str]
    try:
        cases = tuple(finite_pole_cases(s))
        err = None
    except LocalAnalysisError as exc:
        cases = None
        err = str(exc)
    hdata = hamiltonian_data(s)
    obs = obstruction_check(s.params, ty, zd.pattern)
    return LocalReport(
        infinity=ty,
        zero=zd,
        finite_cases=cases,
        finite_case_error=err,
        hdata=hdata,
        obstruction=obs,
        residues_integral=residue_integrality_check(s),
    )
