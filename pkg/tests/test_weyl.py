from collections import deque
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from a5kit.weyl import (
    PI,
    PI_INV,
    S,
    Params,
    TransformWord,
    WeylError,
    act_params,
    act_params_word,
    orbit_search,
    parse_word,
    shift_power_word,
    shift_word,
)


def params_strategy():
    entry = st.fractions(min_value=-4, max_value=4, max_denominator=5)
    return st.builds(
        lambda head: Params.of(*head, 1 - sum(head)),
        st.tuples(entry, entry, entry, entry, entry))


class TestGenerators:
    def test_reflection_example(self):
        p = Params.of(F(1, 2), F(1, 2), 0, 0, 0, 0)
        assert act_params(p, S[0]).alpha == (F(-1, 2), 1, 0, 0, 0, F(1, 2))

    def test_reflection_with_zero_is_identity(self):
        p = Params.of(F(1, 3), F(1, 3), 0, F(1, 3), 0, 0)
        assert act_params(p, S[2]) == p

    def test_rotation(self):
        p = Params.of(2, 3, -4, 5, -6, 1)
        assert act_params(p, PI).alpha == (3, -4, 5, -6, 1, 2)
        assert act_params(act_params(p, PI), PI_INV) == p

    @given(params_strategy(), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_involution(self, p, i):
        assert act_params(act_params(p, S[i]), S[i]) == p

    @given(params_strategy())
    @settings(max_examples=30, deadline=None)
    def test_rotation_order_six(self, p):
        q = p
        for _ in range(6):
            q = act_params(q, PI)
        assert q == p

    @given(params_strategy(), st.integers(0, 5), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_distant_reflections_commute(self, p, i, j):
        if j % 6 not in ((i - 1) % 6, (i + 1) % 6, i % 6):
            a = act_params(act_params(p, S[i]), S[j])
            b = act_params(act_params(p, S[j]), S[i])
            assert a == b

    @given(params_strategy(), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_sum_preserved(self, p, i):
        for g in (S[i], PI, PI_INV):
            assert sum(act_params(p, g).alpha) == 1


class TestWords:
    def test_empty_word_is_identity(self):
        p = Params.of(F(1, 7), 0, 0, F(6, 7), 0, 0)
        assert act_params_word(p, TransformWord()) == p

    def test_rotation_cancel(self):
        p = Params.of(F(1, 7), 0, 0, F(6, 7), 0, 0)
        assert act_params_word(p, TransformWord((PI, PI_INV))) == p

    def test_inverse_reverses_and_flips(self):
        w = parse_word("s0 pi s3 pi^-1")
        assert w.inverse().to_text() == "pi s3 pi^-1 s0"

    @given(params_strategy())
    @settings(max_examples=30, deadline=None)
    def test_word_inverse_round_trip(self, p):
        w = parse_word("s1 pi T3 s5 pi^-1")
        assert act_params_word(act_params_word(p, w), w.inverse()) == p

    def test_parse_rejects_garbage(self):
        with pytest.raises(WeylError):
            parse_word("s9")
        with pytest.raises(WeylError):
            parse_word("T7")
        with pytest.raises(WeylError):
            parse_word("frob")

    def test_text_round_trip(self):
        w = parse_word("s0 s5 pi pi^-1")
        assert parse_word(w.to_text()) == w


class TestShifts:
    def test_t1_on_unit_tuple(self):
        p = Params.of(0, 1, 0, 0, 0, 0)
        assert act_params_word(p, shift_word(1)).alpha == (1, 0, 0, 0, 0, 0)

    @given(params_strategy(), st.integers(1, 6))
    @settings(max_examples=60, deadline=None)
    def test_shift_contract(self, p, i):
        q = act_params_word(p, shift_word(i))
        expected = list(p.alpha)
        expected[(i - 1) % 6] += 1
        expected[i % 6] -= 1
        assert q.alpha == tuple(expected)

    @given(params_strategy(), st.integers(1, 6), st.integers(1, 6))
    @settings(max_examples=30, deadline=None)
    def test_shifts_commute(self, p, i, j):
        a = act_params_word(act_params_word(p, shift_word(i)), shift_word(j))
        b = act_params_word(act_params_word(p, shift_word(j)), shift_word(i))
        assert a == b

    def test_shift_power(self):
        p = Params.of(0, 1, 0, 0, 0, 0)
        q = act_params_word(p, shift_power_word(1, -2))
        assert q.alpha == (-2, 3, 0, 0, 0, 0)
        assert len(shift_power_word(1, 0)) == 0

    def test_bad_index(self):
        with pytest.raises(WeylError):
            shift_word(7)


class TestOrbitSearch:
    def test_immediate_hit(self):
        p = Params.of(0, 1, 0, 0, 0, 0)
        node, word = orbit_search(p, lambda q: True, 0)
        assert node == p and len(word) == 0

    def test_zero_tail_predicate(self):
        p = Params.of(0, 1, 0, 0, 0, 0)
        hit = orbit_search(p, lambda q: all(q[i] == 0 for i in (2, 3, 4, 5)), 0)
        assert hit is not None

    def test_reaches_unit_shift_target(self):
        # breadth-first oracle: replay the search by hand at depth 6 over the
        # plain generators and confirm the library result is reachable
        p = Params.of(0, 1, 0, 0, 0, 0)
        target = (F(1), F(0), F(0), F(0), F(0), F(0))
        hit = orbit_search(p, lambda q: q.alpha == target, 6)
        assert hit is not None
        node, word = hit
        assert node.alpha == target
        assert act_params_word(p, word).alpha == target
        assert len(word) <= len(shift_word(1))

        gens = [*S, PI, PI_INV]
        seen = {p.alpha}
        frontier = deque([(p, 0)])
        reached = False
        while frontier:
            q, d = frontier.popleft()
            if q.alpha == target:
                reached = True
                break
            if d == 6:
                continue
            for g in gens:
                r = act_params(q, g)
                if r.alpha not in seen:
                    seen.add(r.alpha)
                    frontier.append((r, d + 1))
        assert reached

    def test_exhaustion_returns_none(self):
        p = Params.of(F(1, 5), F(1, 5), F(1, 5), F(1, 5), F(1, 5), 0)
        assert orbit_search(p, lambda q: q.alpha == (9, 9, 9, 9, 9, -44), 1) is None

    def test_negative_depth_rejected(self):
        with pytest.raises(WeylError):
            orbit_search(Params.of(1, 0, 0, 0, 0, 0), lambda q: True, -1)


def test_params_validation():
    with pytest.raises(WeylError):
        Params.of(1, 2, 3, 4, 5, 6)
    with pytest.raises(WeylError):
        Params.of(1, 0, 0)
