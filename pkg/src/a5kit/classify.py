"""Executable existence criteria and solution synthesis.

For each of the three solution types there is a finite list of arithmetic
conditions on the parameter tuple (integrality and congruence constraints).
A deterministic scanner reports the first matching condition; a matched tuple
is then driven to a standard parameter family by an explicit word (integer
shift schedules plus short frozen cleanup words), the family's polynomial seed
is instantiated, and the inverse word transports the seed back to the input
parameters, yielding a verified rational solution.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .algebra import _as_fraction
from .backlund import (
    Solution,
    act_solution_word,
    seed_a1,
    seed_a2,
    seed_b,
    seed_c,
    verify_solution,
)
from .local import (
    infinity_type,
    obstruction_check,
    residue_integrality_check,
    zero_pattern,
)
from .weyl import (
    PI,
    PI_INV,
    S,
    Params,
    TransformWord,
    act_params_word,
    parse_word,
    shift_power_word,
    shift_word,
)


class ClassifierError(Exception):
    pass


class NoSeedError(ClassifierError):
    """The standard family carries no rational solution to seed from."""


class ReductionError(ClassifierError):
    pass


class SynthesisMismatch(ClassifierError):
    pass


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _frac(x: Fraction) -> Fraction:
    return x - x.numerator // x.denominator


class _Cyc:
    """Cyclic read-only view of a 6-tuple of Fractions."""

    __slots__ = ("vals",)

    def __init__(self, vals):
        self.vals = tuple(vals)

    def __getitem__(self, i):
        return self.vals[i % 6]


@dataclass(frozen=True)
class ConditionId:
    theorem: str  # "A" | "B" | "C"
    index: int
    anchor: Optional[int] = None
    recipe: Optional[str] = None  # for C conditions 1..4: "i" | "ii" | "iii"
    congruence_witness: Optional[tuple] = None


# -- Type A conditions --------------------------------------------------------


def _a_clauses(p, index: int, i: int) -> tuple[Fraction, ...]:
    if index == 1:
        return (p[i + 2], p[i + 3], p[i + 4], p[i + 5])
    if index == 2:
        return (p[i + 1], p[i + 2], p[i + 4], p[i + 5])
    if index == 3:
        return (p[i + 3], p[i + 5], p[i] + p[i + 4], p[i] - p[i + 2])
    if index == 4:
        return (p[i + 3] + p[i + 4], p[i + 4] + p[i + 5],
                p[i] + p[i + 1], p[i] - p[i + 4])
    return (p[i] + p[i + 1], p[i] + p[i + 5], p[i + 2] + p[i + 3],
            p[i + 3] + p[i + 4], p[i] + p[i + 3])


def iter_conditions_A(p) -> Iterator[ConditionId]:
    """All matches of the five Type-A integrality conditions, scanned with the
    condition index ascending and the anchor ascending."""
    for index in range(1, 6):
        for i in range(6):
            if all(_frac(v) == 0 for v in _a_clauses(p, index, i)):
                yield ConditionId("A", index, i)


# -- Type B conditions --------------------------------------------------------

_B11_PATTERNS = (
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    (Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0)),
)


def _b_case(p, index: int, i: int):
    """(guards, integrality clauses, parity pair) for conditions 1..10."""
    beta = -p[i] + p[i + 2] - p[i + 4]
    gamma = -p[i + 1] + p[i + 3] + p[i + 5]
    if index == 1:
        return (), (beta, gamma, 2 * p[i + 4], -2 * p[i + 5]), (beta, gamma)
    if index == 2:
        g2 = p[i + 1] + p[i + 3] + p[i + 5]
        return (p[i + 1],), (beta, g2, 2 * p[i + 4], -2 * p[i + 5]), (beta, g2)
    if index == 3:
        b2 = -p[i] - p[i + 2] - p[i + 4]
        return (p[i + 2],), (b2, gamma, 2 * p[i + 4], -2 * p[i + 5]), (b2, gamma)
    if index == 4:
        g2 = -p[i + 1] - p[i + 3] + p[i + 5]
        return (p[i + 3],), (beta, g2, 2 * p[i + 3] + 2 * p[i + 4], -2 * p[i + 5]), (beta, g2)
    if index == 5:
        b2 = p[i + 1] - p[i + 3] - p[i + 5]
        return (p[i + 4],), (b2, beta, 2 * p[i + 3] + 2 * p[i + 4], -2 * p[i + 4]), \
            (p[i + 1] - p[i + 3] - 2 * p[i + 4] - p[i + 5], beta)
    if index == 6:
        b2 = p[i] - p[i + 2] + p[i + 4] + 2 * p[i + 5]
        return (p[i + 5],), (gamma, b2, -2 * p[i + 5], -2 * p[i] - 2 * p[i + 5]), (gamma, b2)
    if index == 7:
        b2 = p[i] + p[i + 2] - p[i + 4]
        return (p[i],), (b2, gamma, 2 * p[i + 4], -2 * p[i] - 2 * p[i + 5]), (b2, gamma)
    if index == 8:
        b2 = -p[i + 1] - p[i + 3] - 2 * p[i + 4] - p[i + 5]
        return (p[i + 1], p[i + 4]), (b2, beta, 2 * p[i + 3] + 2 * p[i + 4], 2 * p[i + 4]), (b2, beta)
    if index == 9:
        b2 = -p[i] - p[i + 2] - p[i + 4] - 2 * p[i + 5]
        g2 = -p[i + 1] + p[i + 3] - p[i + 5]
        return (p[i + 2], p[i + 5]), (b2, g2, -2 * p[i + 5], -2 * p[i] - 2 * p[i + 5]), (b2, g2)
    b2 = p[i] + p[i + 2] - p[i + 4]
    g2 = -p[i + 1] - p[i + 3] + p[i + 5]
    return (p[i + 3], p[i]), (b2, g2, 2 * p[i + 3] + 2 * p[i + 4], -2 * p[i] - 2 * p[i + 5]), (b2, g2)


def iter_conditions_B(p, *, guards: bool = True, parity: bool = True) -> Iterator[ConditionId]:
    """All matches of the eleven Type-B conditions, in scan order.  The guard
    and parity flags exist so the orbit search can use the integrality part as
    a congruence-class filter."""
    for index in range(1, 12):
        for i in range(6):
            if index == 11:
                for pat_idx, pat in enumerate(_B11_PATTERNS):
                    if all(_frac(p[i + k] - pat[k]) == 0 for k in range(6)):
                        yield ConditionId("B", 11, i, congruence_witness=(pat_idx,))
                        break
                continue
            g, ints, pair = _b_case(p, index, i)
            if guards and any(x == 0 for x in g):
                continue
            if any(_frac(v) != 0 for v in ints):
                continue
            if parity and (pair[0] + pair[1]).numerator % 2 != 0:
                continue
            yield ConditionId("B", index, i)


# -- Type C conditions --------------------------------------------------------

_C5_PATTERNS = (
    (1, -1, 1, 1, 0, 1),
    (1, 0, -1, -1, 0, 1),
    (1, 0, 1, 0, 1, 0),
)

_THIRD = Fraction(1, 3)


def _reflect(vals: list[Fraction], j: int) -> None:
    x = vals[j % 6]
    vals[j % 6] = -x
    vals[(j - 1) % 6] += x
    vals[(j + 1) % 6] += x


def _hat_tuple(p, k: int, recipe: str, *, guards: bool) -> Optional[_Cyc]:
    """The regularized parameter view for the recipe, or None if a
    nonvanishing guard fails."""
    if recipe == "i":
        return p if isinstance(p, _Cyc) else _Cyc(tuple(p[j] for j in range(6)))
    if guards and p[k + 1] == 0:
        return None
    vals = [p[j] for j in range(6)]
    _reflect(vals, k + 1)
    if recipe == "iii":
        if guards and p[k + 4] == 0:
            return None
        _reflect(vals, k + 4)
    return _Cyc(vals)


def iter_conditions_C(p, *, guards: bool = True, congruences: bool = True) -> Iterator[ConditionId]:
    """All matches of the five Type-C conditions, scanned with the condition
    index ascending, then the anchor, then the regularization recipe."""
    for index in range(1, 6):
        for k in range(6):
            if index == 5:
                for pat_idx, pat in enumerate(_C5_PATTERNS):
                    for sign in (1, -1):
                        if all(_frac(p[k + j] - sign * pat[j] * _THIRD) == 0 for j in range(6)):
                            yield ConditionId("C", 5, k, congruence_witness=(pat_idx, sign))
                continue
            for recipe in ("i", "ii", "iii"):
                ph = _hat_tuple(p, k, recipe, guards=guards)
                if ph is None:
                    continue
                x = ph[k + 2] - ph[k + 4]
                y = ph[k + 3] - ph[k + 5]
                z = ph[k] - ph[k + 4]
                w = ph[k + 1] - ph[k + 5]
                fr = (_frac(x), _frac(y), _frac(z), _frac(w))
                if index in (1, 3):
                    if fr != (0, 0, 0, 0):
                        continue
                elif index == 2:
                    if fr != (_frac(-_THIRD), _THIRD, _THIRD, _frac(-_THIRD)):
                        continue
                else:
                    if fr != (_THIRD, _frac(-_THIRD), _frac(-_THIRD), _THIRD):
                        continue
                chi = x + y + z + w
                if congruences:
                    if chi.denominator != 1:
                        continue
                    if index in (1, 2) and chi.numerator % 3 != 0:
                        continue
                    if index in (3, 4) and (chi.numerator + 1) % 3 != 0:
                        continue
                witness = (int(chi),) if chi.denominator == 1 else None
                yield ConditionId("C", index, k, recipe, congruence_witness=witness)


def check_conditions_A(p: Params) -> Optional[ConditionId]:
    return next(iter_conditions_A(p), None)


def check_conditions_B(p: Params) -> Optional[ConditionId]:
    return next(iter_conditions_B(p), None)


def check_conditions_C(p: Params) -> Optional[ConditionId]:
    return next(iter_conditions_C(p), None)


_CHECKERS = {"A": iter_conditions_A, "B": iter_conditions_B, "C": iter_conditions_C}


# -- standard forms -------------------------------------------------------------

FAMILIES = ("A_i", "A_ii", "B1", "B2", "B3", "C1", "C2", "C3", "C4")


@dataclass(frozen=True)
class StandardForm:
    family: str
    free_parameter: Fraction

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ClassifierError(f"unknown family {self.family!r}")
        object.__setattr__(self, "free_parameter", _as_fraction(self.free_parameter))

    def instantiate(self) -> Params:
        x = self.free_parameter
        half, third = Fraction(1, 2), Fraction(1, 3)
        shapes = {
            "A_i": (x, 1 - x, 0, 0, 0, 0),
            "A_ii": (x, 0, 0, 1 - x, 0, 0),
            "B1": (x, half - x, x, half - x, 0, 0),
            "B2": (half, 0, half, x, 0, -x),
            "B3": (x, 0, 1 - x, 0, 0, 0),
            "C1": (x, third - x, x, third - x, x, third - x),
            "C2": (third - x, third, third, x, 0, 0),
            "C3": (x, 0, 0, 1 - x, 0, 0),
            "C4": (x, third, third, third - x, 0, 0),
        }
        return Params.of(*shapes[self.family])


_FREE_SLOT = {"A_i": 0, "A_ii": 0, "B1": 0, "B2": 3, "B3": 0,
              "C1": 4, "C2": 3, "C3": 0, "C4": 0}


def _match_family(q: Params) -> Optional[StandardForm]:
    for family in FAMILIES:
        sf = StandardForm(family, q[_FREE_SLOT[family]])
        if sf.instantiate().alpha == q.alpha:
            return sf
    return None


# Frozen cleanup words for the sixteen normalized Type-B cases, keyed by
# (beta, gamma, epsilon, phi) in {0,1}^4.
_B_CASE_WORDS = {
    (0, 0, 0, 0): ("B1", ""),
    (0, 0, 0, 1): ("B1", "s0 s1 s0 T2"),
    (0, 0, 1, 0): ("B1", "s1 s3 pi"),
    (0, 0, 1, 1): ("B1", "s1 s5 s0 s1"),
    (0, 1, 0, 0): ("B3", "s1 pi"),
    (0, 1, 0, 1): ("B2", "s0 s3 s5 T1 T2 T4"),
    (0, 1, 1, 0): ("B2", "s1 pi^-1 pi^-1 T3"),
    (0, 1, 1, 1): ("B2", "s0 s3 s5 s0 T2 T4"),
    (1, 0, 0, 0): ("B3", "s1 pi T1"),
    (1, 0, 0, 1): ("B2", "s0 s3 s5 T1 T2"),
    (1, 0, 1, 0): ("B2", "s0 s1 s3 s5 s0"),
    (1, 0, 1, 1): ("B2", "s0 s3 s5 s0 T2"),
    (1, 1, 0, 0): ("B1", "T2"),
    (1, 1, 0, 1): ("B1", "s0 s1 s0 T2 T6"),
    (1, 1, 1, 0): ("B1", "s1 s3 pi T6"),
    (1, 1, 1, 1): ("B1", "s1 s5 s0 s1 T6"),
}

# Normalized Type-C cases keyed by (chi, n): the (u, v, z, w) representative
# the shifts aim for, the standard family reached, and the cleanup word.
_C_CASE_DATA = {
    (0, 0): ((Fraction(0), Fraction(0), Fraction(0), Fraction(0)), "C1", ""),
    (0, -1): ((Fraction(-1, 3), Fraction(1, 3), Fraction(1, 3), Fraction(-1, 3)), "C1", "s1 s2 s1"),
    (-1, 0): ((Fraction(0), Fraction(-1), Fraction(0), Fraction(0)), "C1", "s3 s2 s4 s3"),
    (-1, 1): ((Fraction(1, 3), Fraction(-1, 3), Fraction(-1, 3), Fraction(-2, 3)), "C1", "s0 s1 s0"),
    (0, 1): ((Fraction(1, 3), Fraction(-1, 3), Fraction(-1, 3), Fraction(1, 3)), "C2", "s0 s3"),
    (-1, -1): ((Fraction(-1, 3), Fraction(-2, 3), Fraction(1, 3), Fraction(-1, 3)), "C2", "s0 s3 s2 T6^-1"),
    (1, 0): ((Fraction(0), Fraction(1), Fraction(0), Fraction(0)), "C3", "s1 s5 s0"),
    (1, 1): ((Fraction(1, 3), Fraction(2, 3), Fraction(-1, 3), Fraction(1, 3)), "C4", "s1 s5 s0 s1"),
    (1, -1): ((Fraction(2, 3), Fraction(1, 3), Fraction(1, 3), Fraction(-1, 3)), "C4", "s1 s4 pi"),
}

# Sum-1 representatives of the three half-integer patterns of condition B-11
# and their cleanup words to the B1 family.
_B11_REPS = (
    ((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(0), Fraction(0)), "s1"),
    ((Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(0)), "s1 s3"),
    ((Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0)), ""),
)

# Sum-1 representatives of the six third-integer patterns of condition C-5
# (pattern index, sign) and their cleanup words to the C1 family.
_C5_REPS = {
    (0, 1): ((Fraction(1, 3), Fraction(-1, 3), Fraction(1, 3), Fraction(1, 3), Fraction(0), Fraction(1, 3)), "s1"),
    (0, -1): ((Fraction(2, 3), Fraction(1, 3), Fraction(2, 3), Fraction(-1, 3), Fraction(0), Fraction(-1, 3)), "s3 s2 T6"),
    (1, 1): ((Fraction(1, 3), Fraction(0), Fraction(2, 3), Fraction(-1, 3), Fraction(0), Fraction(1, 3)), "s3 s4"),
    (1, -1): ((Fraction(2, 3), Fraction(0), Fraction(1, 3), Fraction(1, 3), Fraction(0), Fraction(-1, 3)), "s5 s4"),
    (2, 1): ((Fraction(1, 3), Fraction(0), Fraction(1, 3), Fraction(0), Fraction(1, 3), Fraction(0)), ""),
    (2, -1): ((Fraction(2, 3), Fraction(0), Fraction(-1, 3), Fraction(0), Fraction(2, 3), Fraction(0)), "s0 s2 s1 T6^-1"),
}


def _rotation_word(k: int) -> TransformWord:
    k %= 6
    if k == 0:
        return TransformWord()
    if k <= 3:
        return TransformWord((PI,) * k)
    return TransformWord((PI_INV,) * (6 - k))


def _shift_schedule_to(p: Params, target: tuple[Fraction, ...]) -> TransformWord:
    """A word of shift operators mapping p to the target tuple; the difference
    must be an integer vector summing to zero."""
    v = [t - a for t, a in zip(target, p.alpha)]
    if any(not _is_int(x) for x in v) or sum(v) != 0:
        raise ReductionError(f"target {target} not reachable by shifts from {p}")
    c = [0] * 7
    c[1] = int(v[0])
    for j in range(1, 6):
        c[j + 1] = int(v[j]) + c[j]
    if c[6] != 0:
        raise ReductionError("shift schedule inconsistency")
    word = TransformWord()
    for i in range(1, 7):
        if c[i]:
            word = word + shift_power_word(i, c[i])
    return word


def _apply_and_extend(p: Params, word: TransformWord, more: TransformWord):
    new_word = word + more
    return act_params_word(p, new_word), new_word


def _reduce_A(p: Params, cond: ConditionId):
    i = cond.anchor
    word = _rotation_word(i)
    q = act_params_word(p, word)
    if cond.index in (1, 2):
        q, word = _apply_and_extend(p, word, shift_power_word(6, -int(q[5])))
        q, word = _apply_and_extend(p, word, shift_power_word(4, int(q[4])))
        if cond.index == 1:
            q, word = _apply_and_extend(p, word, shift_power_word(3, int(q[3])))
            q, word = _apply_and_extend(p, word, shift_power_word(2, int(q[2])))
        else:
            q, word = _apply_and_extend(p, word, shift_power_word(3, -int(q[2])))
            q, word = _apply_and_extend(p, word, shift_power_word(1, int(q[1])))
    elif cond.index == 3:
        q, word = _apply_and_extend(p, word, shift_power_word(4, -int(q[3])))
        q, word = _apply_and_extend(p, word, shift_power_word(5, int(q[5])))
        q, word = _apply_and_extend(p, word, shift_power_word(1, -int(q[0] + q[4])))
        q, word = _apply_and_extend(p, word, shift_power_word(2, int(q[2] + q[4])))
        # q is now (a, 1-a, a, 0, -a, 0); a short word moves it into A_ii.
        if q[0] != 0:
            q, word = _apply_and_extend(p, word, parse_word("s4 s3 s5 s4 pi^-1 pi^-1"))
    else:
        # Conditions 4 and 5 regularize to one of 1..3 within a short word.
        from .weyl import orbit_search
        hit = orbit_search(
            p,
            lambda r: any(c.index <= 3 for c in iter_conditions_A(r)),
            max_depth=3,
            include_shifts=False,
        )
        if hit is None:
            raise ReductionError("no orbit route from condition 4/5 data to conditions 1-3")
        r, u = hit
        inner = next(c for c in iter_conditions_A(r) if c.index <= 3)
        sf, w2 = _reduce_A(r, inner)
        return sf, u + w2
    sf = _match_family(q)
    if sf is None or sf.family not in ("A_i", "A_ii"):
        raise ReductionError(f"Type A reduction landed off-family at {q}")
    return sf, word


def _reduce_B(p: Params, cond: ConditionId):
    i = cond.anchor
    if cond.index == 11:
        rep, cleanup = _B11_REPS[cond.congruence_witness[0]]
        word = _rotation_word(i)
        q = act_params_word(p, word)
        q, word = _apply_and_extend(p, word, _shift_schedule_to(q, rep))
        if cleanup:
            q, word = _apply_and_extend(p, word, parse_word(cleanup))
        sf = _match_family(q)
        if sf is None or sf.family != "B1":
            raise ReductionError(f"half-integer reduction landed off-family at {q}")
        return sf, word
    reflections = {1: (), 2: (1,), 3: (2,), 4: (3,), 5: (4,), 6: (5,), 7: (0,),
                   8: (1, 4), 9: (2, 5), 10: (3, 0)}[cond.index]
    word = TransformWord(tuple(S[(i + r) % 6] for r in reflections)) + _rotation_word(i)
    q = act_params_word(p, word)
    beta = -q[0] + q[2] - q[4]
    gamma = -q[1] + q[3] + q[5]
    if not all(_is_int(v) for v in (beta, gamma, 2 * q[4], 2 * q[5])):
        raise ReductionError("regularized tuple lost the half-integer data")
    eps_rep = 0 if _is_int(q[4]) else 1
    q, word = _apply_and_extend(p, word, shift_power_word(4, int(q[4] - Fraction(eps_rep, 2))))
    phi_rep = 0 if _is_int(q[5]) else 1
    q, word = _apply_and_extend(p, word, shift_power_word(6, int(-Fraction(phi_rep, 2) - q[5])))
    beta = -q[0] + q[2] - q[4]
    beta_rep = int(beta) % 2
    kb = (int(beta) - beta_rep) // 2
    q, word = _apply_and_extend(p, word, shift_power_word(1, kb) + shift_power_word(2, kb))
    gamma = -q[1] + q[3] + q[5]
    gamma_rep = int(gamma) % 2
    kg = (int(gamma) - gamma_rep) // 2
    q, word = _apply_and_extend(p, word, shift_power_word(2, kg) + shift_power_word(3, kg))
    key = (beta_rep, gamma_rep, eps_rep, phi_rep)
    family, cleanup = _B_CASE_WORDS[key]
    if cleanup:
        q, word = _apply_and_extend(p, word, parse_word(cleanup))
    sf = _match_family(q)
    if sf is None or sf.family != family:
        raise ReductionError(f"Type B case {key} landed off-family at {q}")
    return sf, word


def _reduce_C(p: Params, cond: ConditionId):
    k = cond.anchor
    if cond.index == 5:
        rep, cleanup = _C5_REPS[cond.congruence_witness]
        word = _rotation_word(k)
        q = act_params_word(p, word)
        q, word = _apply_and_extend(p, word, _shift_schedule_to(q, rep))
        if cleanup:
            q, word = _apply_and_extend(p, word, parse_word(cleanup))
        sf = _match_family(q)
        if sf is None or sf.family != "C1":
            raise ReductionError(f"third-integer reduction landed off-family at {q}")
        return sf, word
    recipe_word = {
        "i": TransformWord(),
        "ii": TransformWord((S[(k + 1) % 6],)),
        "iii": TransformWord((S[(k + 1) % 6], S[(k + 4) % 6])),
    }[cond.recipe]
    word = recipe_word + _rotation_word(k)
    q = act_params_word(p, word)
    u, v, z, w = q[2] - q[4], q[3] - q[5], q[0] - q[4], q[1] - q[5]
    chi = u + v + z + w
    chi_target = 0 if cond.index in (1, 2) else -1
    n = {1: 0, 2: -1, 3: 0, 4: 1}[cond.index]
    if not _is_int(chi) or (int(chi) - chi_target) % 3 != 0:
        raise ReductionError("chi congruence lost on the way to the standard form")
    q, word = _apply_and_extend(p, word, shift_power_word(4, (chi_target - int(chi)) // 3))
    rep, family, cleanup = _C_CASE_DATA[(chi_target, n)]
    u, v, z, w = q[2] - q[4], q[3] - q[5], q[0] - q[4], q[1] - q[5]
    du, dv, dz, dw = rep[0] - u, rep[1] - v, rep[2] - z, rep[3] - w
    if any(not _is_int(x) for x in (du, dv, dz, dw)) or du + dv + dz + dw != 0:
        raise ReductionError("invariant normalization is not an integer move")
    c3 = -int(dv)
    c2 = c3 - int(du)
    c1 = int(dz)
    if int(dw) != c2 - c1:
        raise ReductionError("inconsistent shift solve for the C invariants")
    extra = shift_power_word(1, c1) + shift_power_word(2, c2) + shift_power_word(3, c3)
    q, word = _apply_and_extend(p, word, extra)
    if cleanup:
        q, word = _apply_and_extend(p, word, parse_word(cleanup))
    sf = _match_family(q)
    if sf is None or sf.family != family:
        raise ReductionError(f"Type C case ({chi_target},{n}) landed off-family at {q}")
    return sf, word


def reduce_to_standard(p: Params, ty: str, cond: ConditionId):
    """A word driving p to an instantiated standard family for the matched
    condition; act_params_word(p, word) equals the returned form."""
    if ty == "A":
        sf, word = _reduce_A(p, cond)
    elif ty == "B":
        sf, word = _reduce_B(p, cond)
    elif ty == "C":
        sf, word = _reduce_C(p, cond)
    else:
        raise ClassifierError(f"unknown type {ty!r}")
    if act_params_word(p, word).alpha != sf.instantiate().alpha:
        raise ReductionError("reduction word does not reproduce the standard form")
    return sf, word


def seed_solution(sf: StandardForm) -> Solution:
    """The explicit polynomial solution attached to a standard family; raises
    NoSeedError for the families with no rational solution of their type."""
    x = sf.free_parameter
    if sf.family == "A_i":
        return seed_a1(0, x)
    if sf.family == "A_ii":
        return seed_a2(0, x)
    if sf.family == "B1":
        return seed_b(0, x)
    if sf.family == "C1":
        return seed_c(x)
    hints = {
        "B2": "the family (1/2, 0, 1/2, a, 0, -a) has four-pole solutions only at "
              "half-integer a, where it reduces to the symmetric half family",
        "B3": "the family (a, 0, 1-a, 0, 0, 0) has four-pole solutions only at "
              "half-integer a, where it reduces to the symmetric half family",
        "C2": "the family (1/3-a, 1/3, 1/3, a, 0, 0) carries no six-pole rational solution",
        "C3": "the family (a, 0, 0, 1-a, 0, 0) carries no six-pole rational solution",
        "C4": "the family (a, 1/3, 1/3, 1/3-a, 0, 0) carries no six-pole rational solution",
    }
    raise NoSeedError(f"no seed for family {sf.family}: {hints[sf.family]}")


def synthesize_solution(p: Params, sf: StandardForm, w: TransformWord) -> Solution:
    """Transport the family seed back along the inverse word; the result has
    parameters exactly p and passes verification."""
    if act_params_word(p, w).alpha != sf.instantiate().alpha:
        raise SynthesisMismatch("word does not map the parameters to the standard form")
    seed = seed_solution(sf)
    sol = act_solution_word(seed, w.inverse())
    if sol.params.alpha != p.alpha:
        raise SynthesisMismatch(
            f"identity-branch divergence along {w.to_text()!r}: "
            f"got {sol.params}, wanted {p}")
    rep = verify_solution(sol)
    if not rep.ok:
        raise SynthesisMismatch(f"synthesized tuple fails verification: {rep.failure}")
    return sol


# -- bounded orbit search with congruence-class pruning -------------------------


def _int_class_matches(cls: tuple[int, ...], D: int) -> dict[str, bool]:
    """Guard-free condition scans on a congruence class mod 6D, in scaled
    integer arithmetic.

    Every clause except the nonvanishing guards is a function of the
    parameters mod 6 (integrality, mod-2 parity of the paired sums, and the
    mod-3 congruence of chi), so with values stored as alpha*D reduced mod 6D
    the tests below agree exactly with the Fraction scanners.
    """
    M = 6 * D
    q = cls

    def at(i):
        return q[i % 6]

    a_ok = False
    for index in range(1, 6):
        for i in range(6):
            if index == 1:
                cl = (at(i + 2), at(i + 3), at(i + 4), at(i + 5))
            elif index == 2:
                cl = (at(i + 1), at(i + 2), at(i + 4), at(i + 5))
            elif index == 3:
                cl = (at(i + 3), at(i + 5), at(i) + at(i + 4), at(i) - at(i + 2))
            elif index == 4:
                cl = (at(i + 3) + at(i + 4), at(i + 4) + at(i + 5),
                      at(i) + at(i + 1), at(i) - at(i + 4))
            else:
                cl = (at(i) + at(i + 1), at(i) + at(i + 5), at(i + 2) + at(i + 3),
                      at(i + 3) + at(i + 4), at(i) + at(i + 3))
            if all(v % D == 0 for v in cl):
                a_ok = True
                break
        if a_ok:
            break

    b_ok = False
    for i in range(6):
        beta = -at(i) + at(i + 2) - at(i + 4)
        gamma = -at(i + 1) + at(i + 3) + at(i + 5)
        cases = (
            ((beta, gamma, 2 * at(i + 4), 2 * at(i + 5)), (beta, gamma)),
            ((beta, at(i + 1) + at(i + 3) + at(i + 5), 2 * at(i + 4), 2 * at(i + 5)),
             (beta, at(i + 1) + at(i + 3) + at(i + 5))),
            ((-at(i) - at(i + 2) - at(i + 4), gamma, 2 * at(i + 4), 2 * at(i + 5)),
             (-at(i) - at(i + 2) - at(i + 4), gamma)),
            ((beta, -at(i + 1) - at(i + 3) + at(i + 5),
              2 * at(i + 3) + 2 * at(i + 4), 2 * at(i + 5)),
             (beta, -at(i + 1) - at(i + 3) + at(i + 5))),
            ((at(i + 1) - at(i + 3) - at(i + 5), beta,
              2 * at(i + 3) + 2 * at(i + 4), 2 * at(i + 4)),
             (at(i + 1) - at(i + 3) - 2 * at(i + 4) - at(i + 5), beta)),
            ((gamma, at(i) - at(i + 2) + at(i + 4) + 2 * at(i + 5),
              2 * at(i + 5), 2 * at(i) + 2 * at(i + 5)),
             (gamma, at(i) - at(i + 2) + at(i + 4) + 2 * at(i + 5))),
            ((at(i) + at(i + 2) - at(i + 4), gamma, 2 * at(i + 4),
              2 * at(i) + 2 * at(i + 5)),
             (at(i) + at(i + 2) - at(i + 4), gamma)),
            ((-at(i + 1) - at(i + 3) - 2 * at(i + 4) - at(i + 5), beta,
              2 * at(i + 3) + 2 * at(i + 4), 2 * at(i + 4)),
             (-at(i + 1) - at(i + 3) - 2 * at(i + 4) - at(i + 5), beta)),
            ((-at(i) - at(i + 2) - at(i + 4) - 2 * at(i + 5),
              -at(i + 1) + at(i + 3) - at(i + 5), 2 * at(i + 5),
              2 * at(i) + 2 * at(i + 5)),
             (-at(i) - at(i + 2) - at(i + 4) - 2 * at(i + 5),
              -at(i + 1) + at(i + 3) - at(i + 5))),
            ((at(i) + at(i + 2) - at(i + 4), -at(i + 1) - at(i + 3) + at(i + 5),
              2 * at(i + 3) + 2 * at(i + 4), 2 * at(i) + 2 * at(i + 5)),
             (at(i) + at(i + 2) - at(i + 4), -at(i + 1) - at(i + 3) + at(i + 5))),
        )
        for ints, pair in cases:
            if all(v % D == 0 for v in ints) and ((pair[0] + pair[1]) // D) % 2 == 0:
                b_ok = True
                break
        if b_ok:
            break
        for pat in _B11_PATTERNS:
            if all((2 * at(i + k) - int(2 * pat[k]) * D) % (2 * D) == 0 for k in range(6)):
                b_ok = True
                break
        if b_ok:
            break

    c_ok = False
    for k in range(6):
        for recipe in ("i", "ii", "iii"):
            h = [at(j) for j in range(6)]
            if recipe in ("ii", "iii"):
                j = (k + 1) % 6
                x = h[j]
                h[j] = -x
                h[(j - 1) % 6] += x
                h[(j + 1) % 6] += x
            if recipe == "iii":
                j = (k + 4) % 6
                x = h[j]
                h[j] = -x
                h[(j - 1) % 6] += x
                h[(j + 1) % 6] += x
            xx = h[(k + 2) % 6] - h[(k + 4) % 6]
            yy = h[(k + 3) % 6] - h[(k + 5) % 6]
            zz = h[k] - h[(k + 4) % 6]
            ww = h[(k + 1) % 6] - h[(k + 5) % 6]
            chi = xx + yy + zz + ww
            if all(v % D == 0 for v in (xx, yy, zz, ww)):
                if (chi // D) % 3 in (0, 2):
                    c_ok = True
                    break
            if 3 * (xx % D) == 2 * D and 3 * (yy % D) == D and \
                    3 * (zz % D) == D and 3 * (ww % D) == 2 * D:
                if chi % D == 0 and (chi // D) % 3 == 0:
                    c_ok = True
                    break
            if 3 * (xx % D) == D and 3 * (yy % D) == 2 * D and \
                    3 * (zz % D) == 2 * D and 3 * (ww % D) == D:
                if chi % D == 0 and ((chi // D) + 1) % 3 == 0:
                    c_ok = True
                    break
        if c_ok:
            break
    if not c_ok:
        for k in range(6):
            for pat in _C5_PATTERNS:
                for sign in (1, -1):
                    if all((3 * at(k + j) - sign * pat[j] * D) % (3 * D) == 0
                           for j in range(6)):
                        c_ok = True
    return {"A": a_ok, "B": b_ok, "C": c_ok}


def _class_moves(cls: tuple, M: int, D: int) -> list[tuple]:
    """Images of a congruence class mod M = 6D under all twenty orbit moves.

    Reflections are applied unconditionally (the identity branch only adds a
    self-loop), so the class graph over-approximates reachability, which keeps
    the pruning below conservative."""
    out = []
    for i in range(6):
        lst = list(cls)
        x = lst[i]
        lst[i] = (-x) % M
        lst[(i - 1) % 6] = (lst[(i - 1) % 6] + x) % M
        lst[(i + 1) % 6] = (lst[(i + 1) % 6] + x) % M
        out.append(tuple(lst))
    out.append(cls[1:] + cls[:1])
    out.append(cls[-1:] + cls[:-1])
    for i in range(6):
        lst = list(cls)
        lst[(i - 1) % 6] = (lst[(i - 1) % 6] + D) % M
        lst[i] = (lst[i] - D) % M
        out.append(tuple(lst))
        lst = list(cls)
        lst[(i - 1) % 6] = (lst[(i - 1) % 6] - D) % M
        lst[i] = (lst[i] + D) % M
        out.append(tuple(lst))
    return out


def _class_distances(start: tuple, D: int, max_depth: int, wanted: set[str]):
    """Distance, per wanted type, from every class reachable within max_depth
    class-moves to the nearest class whose guard-free scan matches."""
    M = 6 * D
    classes = {start: 0}
    frontier = deque([(start, 0)])
    while frontier:
        c, d = frontier.popleft()
        if d >= max_depth:
            continue
        for nc in _class_moves(c, M, D):
            if nc not in classes:
                classes[nc] = d + 1
                frontier.append((nc, d + 1))
    matches = {c: _int_class_matches(c, D) for c in classes}
    dist = {ty: {} for ty in wanted}
    for ty in wanted:
        frontier = deque()
        for c in classes:
            if matches[c][ty]:
                dist[ty][c] = 0
                frontier.append((c, 0))
        while frontier:
            c, d = frontier.popleft()
            for nc in _class_moves(c, M, D):
                if nc in classes and nc not in dist[ty]:
                    dist[ty][nc] = d + 1
                    frontier.append((nc, d + 1))
    return dist


def _orbit_scan(p: Params, wanted: set[str], max_depth: int) -> dict:
    """One bounded breadth-first enumeration of the group orbit, recording the
    first node matching each still-missing type condition.

    Nodes are integer tuples (parameters scaled by their common denominator D)
    and congruence classes live mod 6D, where every clause except the
    nonvanishing guards is decidable.  A node is expanded only while some
    still-missing type has a matching class within the remaining depth.
    """
    found: dict[str, tuple[Params, TransformWord]] = {}
    if not wanted or max_depth <= 0:
        return found
    from math import gcd
    D = 1
    for a in p.alpha:
        D = D * a.denominator // gcd(D, a.denominator)
    M = 6 * D
    start = tuple(int(a * D) for a in p.alpha)
    cls0 = tuple(v % M for v in start)
    dist = _class_distances(cls0, D, max_depth, wanted)

    int_moves = []
    for i in range(6):
        def refl(t, i=i):
            if t[i] == 0:
                return t
            out = list(t)
            out[i] = -t[i]
            out[(i - 1) % 6] += t[i]
            out[(i + 1) % 6] += t[i]
            return tuple(out)
        int_moves.append((refl, (S[i],)))
    int_moves.append((lambda t: t[1:] + t[:1], (PI,)))
    int_moves.append((lambda t: t[-1:] + t[:-1], (PI_INV,)))
    for i in range(1, 7):
        def shift(t, i=i, D=D):
            out = list(t)
            out[(i - 1) % 6] += D
            out[i % 6] -= D
            return tuple(out)
        def unshift(t, i=i, D=D):
            out = list(t)
            out[(i - 1) % 6] -= D
            out[i % 6] += D
            return tuple(out)
        int_moves.append((shift, tuple(shift_word(i))))
        int_moves.append((unshift, tuple(shift_word(i).inverse())))

    def useful(t6, depth: int) -> bool:
        cls = tuple(v % M for v in t6)
        budget = max_depth - depth
        for ty in wanted:
            if ty in found:
                continue
            d = dist[ty].get(cls)
            if d is not None and d <= budget:
                return True
        return False

    def scan_node(t6, letters) -> None:
        cls = tuple(v % M for v in t6)
        for ty in wanted:
            if ty in found or dist[ty].get(cls) != 0:
                continue
            vals = tuple(Fraction(v, D) for v in t6)
            if next(_CHECKERS[ty](_Cyc(vals)), None) is not None:
                found[ty] = (Params.of(*vals), TransformWord(letters))

    seen = {start}
    frontier = deque()
    if useful(start, 0):
        frontier.append((start, (), 0))
    while frontier and len(found) < len(wanted):
        node, word, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for fn, letters in int_moves:
            q = fn(node)
            if q in seen:
                continue
            seen.add(q)
            nw = word + letters
            scan_node(q, nw)
            if len(found) == len(wanted):
                return found
            if useful(q, depth + 1):
                frontier.append((q, nw, depth + 1))
    return found


# -- end-to-end classification ---------------------------------------------------


@dataclass(frozen=True)
class TypeVerdict:
    exists: bool
    verdict: str  # "exists" | "none (bounded)"
    matched: Optional[ConditionId] = None
    via_orbit: Optional[TransformWord] = None


@dataclass(frozen=True)
class ClassificationReport:
    input: Params
    verdicts: dict
    standard: Optional[tuple]
    solution: Optional[Solution]
    seed_used: str
    checks: dict
    orbit_depth: int


DEFAULT_CLASSIFY_DEPTH = 4


def _env_orbit_depth() -> int:
    raw = os.environ.get("A5KIT_ORBIT_DEPTH")
    if raw is None:
        return DEFAULT_CLASSIFY_DEPTH
    try:
        return max(0, int(raw))
    except ValueError:
        return DEFAULT_CLASSIFY_DEPTH


def _try_synthesis(p: Params, ty: str, base: Params, prefix: TransformWord):
    """Attempt reduction+synthesis along every matching condition of the type,
    in scan order, collecting failures."""
    errors = []
    for cond in _CHECKERS[ty](base):
        try:
            sf, w = reduce_to_standard(base, ty, cond)
            sol = synthesize_solution(p, sf, prefix + w)
            return cond, sf, prefix + w, sol, errors
        except ClassifierError as exc:
            errors.append((cond, str(exc)))
            continue
    return None, None, None, None, errors


def classify(p: Params, orbit_depth: Optional[int] = None) -> ClassificationReport:
    """Decide existence of rational solutions of each type and synthesize one.

    Each type's literal condition scan runs on p itself; when it fails, a
    bounded orbit search (default depth 4; A5KIT_ORBIT_DEPTH overrides) looks
    for a transformed tuple that matches.  A verdict of "none (bounded)" only
    asserts that the bounded search was exhausted.
    """
    if orbit_depth is None:
        orbit_depth = _env_orbit_depth()
    direct = {ty: next(_CHECKERS[ty](p), None) for ty in ("A", "B", "C")}
    missing = {ty for ty, c in direct.items() if c is None}
    orbit_hits = _orbit_scan(p, missing, orbit_depth) if missing else {}

    verdicts: dict[str, TypeVerdict] = {}
    for ty in ("A", "B", "C"):
        if direct[ty] is not None:
            verdicts[ty] = TypeVerdict(True, "exists", matched=direct[ty])
        elif ty in orbit_hits:
            q, u = orbit_hits[ty]
            verdicts[ty] = TypeVerdict(True, "exists",
                                       matched=next(_CHECKERS[ty](q)), via_orbit=u)
        else:
            verdicts[ty] = TypeVerdict(False, "none (bounded)")

    standard = None
    solution = None
    seed_used = "none"
    failures: list[str] = []
    for ty in ("A", "B", "C"):
        if not verdicts[ty].exists:
            continue
        if verdicts[ty].via_orbit is not None:
            base = act_params_word(p, verdicts[ty].via_orbit)
            prefix = verdicts[ty].via_orbit
        else:
            base, prefix = p, TransformWord()
        cond, sf, word, sol, errs = _try_synthesis(p, ty, base, prefix)
        failures.extend(f"{ty}{c.index}@{c.anchor}: {msg}" for c, msg in errs)
        if sol is not None:
            standard = (sf, word)
            solution = sol
            seed_used = f"{sf.family} at {sf.free_parameter}"
            break
    if solution is None and any(v.exists for v in verdicts.values()):
        raise ClassifierError(
            "conditions matched but synthesis failed on every route; trace: "
            + "; ".join(failures))

    checks: dict = {}
    if solution is not None:
        ty_detected = infinity_type(solution)
        zd = zero_pattern(solution)
        checks = {
            "residue_integrality": residue_integrality_check(solution),
            "infinity_type": ty_detected,
            "obstruction": obstruction_check(p, ty_detected, zd.pattern),
        }
    return ClassificationReport(
        input=p,
        verdicts=verdicts,
        standard=standard,
        solution=solution,
        seed_used=seed_used,
        checks=checks,
        orbit_depth=orbit_depth,
    )
