"""The extended affine Weyl group acting on six-tuples of parameters.

Generators are the six reflections s_0..s_5 and the rotation pi.  A reflection
s_i negates alpha_i and adds the old alpha_i to both neighbours; pi rotates the
tuple so that the new alpha_j is the old alpha_{j+1}.  Indices live in Z/6Z and
every action preserves the normalization sum(alpha) = 1.

A TransformWord stores generators in application order: the first letter acts
first.  The shift operator T_i (i = 1..6) is the six-letter word whose action
is the unit translation alpha_{i-1} -> alpha_{i-1}+1, alpha_i -> alpha_i-1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .algebra import _as_fraction


class WeylError(Exception):
    pass


@dataclass(frozen=True)
class Params:
    """Parameter tuple (alpha_0, ..., alpha_5) with sum equal to 1."""

    alpha: tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        vals = tuple(_as_fraction(a) for a in self.alpha)
        if len(vals) != 6:
            raise WeylError("parameter tuple must have six entries")
        if sum(vals) != 1:
            raise WeylError(f"parameters must sum to 1, got {sum(vals)}")
        object.__setattr__(self, "alpha", vals)

    @staticmethod
    def of(*alpha) -> "Params":
        if len(alpha) == 1 and isinstance(alpha[0], (tuple, list)):
            alpha = tuple(alpha[0])
        return Params(tuple(_as_fraction(a) for a in alpha))

    def __getitem__(self, i: int) -> Fraction:
        return self.alpha[i % 6]

    def __iter__(self):
        return iter(self.alpha)

    def __repr__(self):
        return "Params(" + ", ".join(str(a) for a in self.alpha) + ")"


# Generator tags.  S0..S5 are the reflections; PI rotates forward
# (new alpha_j = old alpha_{j+1}) and PI_INV is its inverse.
@dataclass(frozen=True)
class Generator:
    tag: str  # "s" | "pi" | "pi^-1"
    index: int = 0  # meaningful for reflections only

    def __post_init__(self):
        if self.tag not in ("s", "pi", "pi^-1"):
            raise WeylError(f"unknown generator tag {self.tag!r}")
        object.__setattr__(self, "index", self.index % 6)

    def inverse(self) -> "Generator":
        if self.tag == "pi":
            return Generator("pi^-1")
        if self.tag == "pi^-1":
            return Generator("pi")
        return self

    def __repr__(self):
        if self.tag == "s":
            return f"s{self.index}"
        return self.tag


S = tuple(Generator("s", i) for i in range(6))
PI = Generator("pi")
PI_INV = Generator("pi^-1")


class TransformWord:
    """A sequence of generators, applied left to right (first letter first)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Generator] = ()):
        object.__setattr__(self, "letters", tuple(letters))

    def __setattr__(self, *a):
        raise AttributeError("TransformWord is immutable")

    def inverse(self) -> "TransformWord":
        return TransformWord(tuple(g.inverse() for g in reversed(self.letters)))

    def __add__(self, other: "TransformWord") -> "TransformWord":
        return TransformWord(self.letters + other.letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, TransformWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"TransformWord({self.to_text()!r})"

    def to_text(self) -> str:
        return " ".join(_format_letter(g) for g in self.letters)

    @staticmethod
    def from_text(text: str) -> "TransformWord":
        return parse_word(text)


def _format_letter(g: Generator) -> str:
    if g.tag == "s":
        return f"s{g.index}"
    return g.tag


def parse_word(text: str) -> TransformWord:
    """Parse whitespace-separated tokens s0..s5, pi, pi^-1, T1..T6 and
    T1^-1..T6^-1 into a word of plain generators (shift macros expand)."""
    letters: list[Generator] = []
    for pos, token in enumerate(text.split()):
        if token == "pi":
            letters.append(PI)
        elif token == "pi^-1":
            letters.append(PI_INV)
        elif len(token) == 2 and token[0] == "s" and token[1].isdigit():
            idx = int(token[1])
            if idx > 5:
                raise WeylError(f"bad reflection index in token {token!r} (position {pos})")
            letters.append(S[idx])
        elif token[0] == "T":
            body = token[1:]
            inv = body.endswith("^-1")
            if inv:
                body = body[:-3]
            if not body.isdigit() or not 1 <= int(body) <= 6:
                raise WeylError(f"bad shift token {token!r} (position {pos})")
            w = shift_word(int(body))
            letters.extend(w.inverse() if inv else w)
        else:
            raise WeylError(f"unrecognized word token {token!r} (position {pos})")
    return TransformWord(letters)


def act_params(p: Params, g: Generator) -> Params:
    """Apply one generator to a parameter tuple."""
    a = p.alpha
    if g.tag == "pi":
        return Params(tuple(a[(j + 1) % 6] for j in range(6)))
    if g.tag == "pi^-1":
        return Params(tuple(a[(j - 1) % 6] for j in range(6)))
    i = g.index
    out = list(a)
    out[i] = -a[i]
    out[(i - 1) % 6] = a[(i - 1) % 6] + a[i]
    out[(i + 1) % 6] = a[(i + 1) % 6] + a[i]
    return Params(tuple(out))


def act_params_word(p: Params, w: TransformWord) -> Params:
    for g in w:
        p = act_params(p, g)
    return p


# The six-letter words realizing the unit shifts.  Letters are in application
# order; T_1 applies pi first, then s5, s4, s3, s2, s1 -- this is the order
# that produces T_i(alpha_{i-1}) = alpha_{i-1} + 1 and T_i(alpha_i) = alpha_i - 1.
_SHIFT_WORDS = {
    1: (PI, S[5], S[4], S[3], S[2], S[1]),
    2: (S[1], PI, S[5], S[4], S[3], S[2]),
    3: (S[2], S[1], PI, S[5], S[4], S[3]),
    4: (S[3], S[2], S[1], PI, S[5], S[4]),
    5: (S[4], S[3], S[2], S[1], PI, S[5]),
    6: (S[5], S[4], S[3], S[2], S[1], PI),
}


def shift_word(i: int) -> TransformWord:
    """The word for the shift operator T_i, i in 1..6."""
    if i not in _SHIFT_WORDS:
        raise WeylError(f"shift operator index must be 1..6, got {i}")
    return TransformWord(_SHIFT_WORDS[i])


def shift_power_word(i: int, k: int) -> TransformWord:
    """T_i^k as an expanded word (k may be negative or zero)."""
    if k == 0:
        return TransformWord()
    base = shift_word(i)
    if k < 0:
        base = base.inverse()
        k = -k
    letters: list[Generator] = []
    for _ in range(k):
        letters.extend(base)
    return TransformWord(letters)


DEFAULT_ORBIT_DEPTH = 8

# One search move: a short word treated as a single BFS step.
_BASIC_MOVES: tuple[TransformWord, ...] = tuple(
    [TransformWord((g,)) for g in (*S, PI, PI_INV)]
)


def orbit_moves(include_shifts: bool = True) -> tuple[TransformWord, ...]:
    moves = list(_BASIC_MOVES)
    if include_shifts:
        for i in range(1, 7):
            moves.append(shift_word(i))
            moves.append(shift_word(i).inverse())
    return tuple(moves)


def orbit_search(
    p: Params,
    target_predicate: Callable[[Params], bool],
    max_depth: int = DEFAULT_ORBIT_DEPTH,
    include_shifts: bool = True,
) -> Optional[tuple[Params, TransformWord]]:
    """Breadth-first search over the group orbit of p.

    Moves are the eight plain generators plus, optionally, the twelve shift
    macros T_i and their inverses (each counting as one level of depth).
    Returns the first node satisfying the predicate together with the word
    reaching it, or None when the bounded search is exhausted.
    """
    if max_depth < 0:
        raise WeylError("max_depth must be nonnegative")
    if target_predicate(p):
        return p, TransformWord()
    moves = orbit_moves(include_shifts)
    seen = {p.alpha}
    frontier: deque[tuple[Params, tuple[Generator, ...], int]] = deque()
    frontier.append((p, (), 0))
    while frontier:
        node, word, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for mv in moves:
            q = act_params_word(node, mv)
            if q.alpha in seen:
                continue
            seen.add(q.alpha)
            new_word = word + mv.letters
            if target_predicate(q):
                return q, TransformWord(new_word)
            frontier.append((q, new_word, depth + 1))
    return None
