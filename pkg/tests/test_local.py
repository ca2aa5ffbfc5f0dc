import random
from fractions import Fraction as F

import pytest

from a5kit.algebra import INFINITY, Poly, RatFunc, laurent_expand, residue
from a5kit.backlund import (
    SEED_BUILDERS,
    Solution,
    act_solution,
    act_solution_word,
    seed_a1,
    seed_a2,
    seed_b,
    seed_c,
)
from a5kit.local import (
    AnsatzError,
    InfinityType,
    PatternMismatch,
    ZeroPattern,
    diagnose,
    expand_solution_ansatz,
    finite_pole_cases,
    h_constant_at_infinity,
    h_constant_at_zero,
    hamiltonian,
    hamiltonian_data,
    infinity_residue_table,
    infinity_type,
    observed_infinity_residues,
    obstruction_check,
    predicted_zero_residues,
    residue_integrality_check,
    zero_pattern,
)
from a5kit.weyl import PI, PI_INV, S, Params, TransformWord


def s0_image():
    return act_solution(seed_a1(0, F(1, 2)), S[0])


def random_solutions(count, seed=20240817, max_len=8):
    rng = random.Random(seed)
    alphabet = [*S, PI, PI_INV]
    out = []
    for _ in range(count):
        name = rng.choice(sorted(SEED_BUILDERS))
        a = F(rng.randint(-3, 4), rng.choice([1, 2, 3, 5]))
        base = (SEED_BUILDERS[name](anchor=rng.randrange(6), a=a)
                if name != "C" else SEED_BUILDERS[name](a=a))
        word = TransformWord([rng.choice(alphabet) for _ in range(rng.randint(0, max_len))])
        out.append(act_solution_word(base, word))
    return out


class TestInfinityType:
    def test_seed_detection(self):
        assert infinity_type(seed_a1(0, F(1, 2))) == InfinityType("A1", 0)
        assert infinity_type(seed_a2(0, F(1, 2))) == InfinityType("A2", 0)
        assert infinity_type(seed_b(2, F(1, 3))).kind == "B"
        assert infinity_type(seed_c(F(0))).kind == "C"

    def test_no_match_raises(self):
        bad = Solution((RatFunc.t(), RatFunc.t(), RatFunc.t(),
                        RatFunc.zero(), -2 * RatFunc.t(), RatFunc.zero()),
                       Params.of(1, 0, 0, 0, 0, 0))
        with pytest.raises(PatternMismatch):
            infinity_type(bad)

    def test_residue_table_a1(self):
        p = Params.of(F(-1, 2), 1, 0, 0, 0, F(1, 2))
        table = infinity_residue_table(p, InfinityType("A1", 0))
        assert table == (0, F(1, 2), 0, 0, 0, F(-1, 2))

    def test_residue_table_vanishes_on_families(self):
        pb = seed_b(0, F(1, 5)).params
        assert infinity_residue_table(pb, InfinityType("B", 0)) == (0,) * 6
        pc = seed_c(F(0)).params
        assert infinity_residue_table(pc, InfinityType("C", 0)) == (0,) * 6

    def test_observed_equals_predicted_on_random_words(self):
        for sol in random_solutions(40):
            ty = infinity_type(sol)
            assert observed_infinity_residues(sol) == infinity_residue_table(sol.params, ty)


class TestZeroPattern:
    def test_regular(self):
        zd = zero_pattern(seed_a1(0, F(1, 2)))
        assert zd.pattern == ZeroPattern("regular")
        assert zd.predicted == (0,) * 6

    def test_pair_on_reflected_seed(self):
        zd = zero_pattern(s0_image())
        assert zd.pattern == ZeroPattern("pair", 5)
        assert zd.observed == (0, F(1, 2), 0, 0, 0, F(-1, 2))
        assert zd.predicted == zd.observed

    def test_quad_formula_correction(self):
        # quadruple poles: the paired residues satisfy r_i + r_{i+3} = -1
        found = 0
        for sol in random_solutions(120, seed=11):
            zd = zero_pattern(sol)
            if zd.pattern.kind != "quad":
                continue
            found += 1
            i = zd.pattern.anchor
            assert zd.observed[i] + zd.observed[(i + 3) % 6] == -1
            assert zd.observed == predicted_zero_residues(sol.params, zd.pattern)
        assert found > 0

    def test_integrality_check(self):
        assert residue_integrality_check(seed_a1(0, F(1, 2)))
        assert residue_integrality_check(s0_image())

    def test_integrality_fails_on_artificial_tuple(self):
        t = RatFunc.t()
        third = RatFunc.constant(F(1, 3)) / t
        fake = Solution((t, t + third, RatFunc.zero(), RatFunc.zero(),
                         RatFunc.zero(), -third),
                        Params.of(F(1, 2), F(1, 2), 0, 0, 0, 0))
        assert not residue_integrality_check(fake)


class TestFinitePoles:
    def test_polynomial_seeds_have_none(self):
        assert finite_pole_cases(seed_b(0, F(1, 7))) == []

    def test_pair_case_detection(self):
        # drive a pole into the finite plane: reflections against a component
        # vanishing at +-1 create case-one pole pairs
        sol = act_solution_word(
            seed_a1(0, F(1, 2)),
            TransformWord((S[0], S[1])))
        cases = finite_pole_cases(sol)
        for case in cases:
            assert case.label in ("pair_i", "pair_ii", "quad_i", "quad_ii", "quad_iii")

    def test_half_integer_residues_on_random_words(self):
        checked = 0
        for sol in random_solutions(50, seed=5):
            try:
                cases = finite_pole_cases(sol)
            except Exception:
                continue  # irrational pole locations are legitimately rejected
            for case in cases:
                checked += 1
                nonzero = [r for r in case.residues if r != 0]
                assert all(2 * r.denominator in (2, 4) or r.denominator <= 2 for r in nonzero)
                assert all(r.denominator in (1, 2) for r in nonzero)
        assert checked > 0


class TestHamiltonian:
    def test_seed_h_is_polynomial(self):
        H = hamiltonian(seed_a1(0, F(1, 3)))
        assert H.is_polynomial()
        data = hamiltonian_data(seed_a1(0, F(1, 3)))
        assert data.h_inf_0 == 0 and data.h_0_0 == 0

    def test_s0_image_constants(self):
        data = hamiltonian_data(s0_image())
        assert data.h_inf_0 == F(-1, 6)
        assert data.h_0_0 == F(-1, 6)
        assert data.ratios_complete

    def test_constants_match_formulas_on_random_words(self):
        for sol in random_solutions(40, seed=6):
            data = hamiltonian_data(sol)
            ty = infinity_type(sol)
            zd = zero_pattern(sol)
            assert data.h_inf_0 == h_constant_at_infinity(sol.params, ty)
            assert data.h_0_0 == h_constant_at_zero(sol.params, zd.pattern)
            assert data.ratios_complete
            total = sum(2 * eps * n for eps, n in data.pair_counts.items())
            assert data.h_inf_0 - total == data.h_0_0
            d = data.gap_times_six()
            assert d.denominator == 1 and d <= 0

    def test_quad_h00_agrees_with_four_pole_families(self):
        # the symmetric half-integer family with a quadruple pole at zero has
        # h_0_0 = a^2 - a/2 + 1/6; the all-thirds family has 2a^2 - 2a/3 + 2/9
        for a in (F(3, 7), F(-2, 5), F(5, 3)):
            p = Params.of(F(1, 2), 0, F(1, 2), a, 0, -a)
            for anchor in (2, 5):
                got = h_constant_at_zero(p, ZeroPattern("quad", anchor))
                assert got == a * a - a / 2 + F(1, 6)
            q = Params.of(F(1, 3) - a, F(1, 3), F(1, 3), a, 0, 0)
            for anchor in (2, 5):
                got = h_constant_at_zero(q, ZeroPattern("quad", anchor))
                assert got == 2 * a * a - 2 * a / 3 + F(2, 9)


class TestObstruction:
    def test_regular_case(self):
        p = Params.of(F(1, 2), F(1, 2), 0, 0, 0, 0)
        r = obstruction_check(p, InfinityType("A1", 0), ZeroPattern("regular"))
        assert r.status == "admissible_regular" and r.d == 0

    def test_one_third_contradiction(self):
        # the forced pole pattern against the two-pole family gives d = 2
        p = Params.of(F(1, 5), F(4, 5), 0, 0, 0, 0)
        r = obstruction_check(p, InfinityType("A1", 1), ZeroPattern("pair", 0))
        assert r.status == "violated" and r.d == 2

    def test_one_sixth_contradiction(self):
        # the four-pole family against a pair at zero gives d = 1
        a = F(1, 5)
        p = Params.of(a, F(1, 2) - a, a, F(1, 2) - a, 0, 0)
        r = obstruction_check(p, InfinityType("B", 1), ZeroPattern("pair", 4))
        assert r.status == "violated" and r.d == 1

    def test_admissible_with_poles(self):
        sol = act_solution_word(seed_a1(0, F(1, 2)), TransformWord((S[0], S[1])))
        rep = diagnose(sol)
        if rep.obstruction.d < 0:
            assert rep.obstruction.status == "admissible_with_finite_poles"
            assert rep.obstruction.m == -rep.obstruction.d


class TestAnsatz:
    def test_reproduces_reflected_seed(self):
        sol = s0_image()
        series = expand_solution_ansatz(sol.params, InfinityType("A1", 0), 5)
        for j in range(6):
            exact = laurent_expand(sol.f[j], INFINITY, 5)
            for e in range(1, -6, -1):
                assert series[j].coefficient(e) == exact.coefficient(e)

    def test_type_c_point(self):
        p = Params.of(0, F(1, 3), 0, F(1, 3), 0, F(1, 3))
        series = expand_solution_ansatz(p, InfinityType("C", 0), 5)
        for j in range(6):
            assert series[j].coefficient(1) == F(1, 3)
            for e in range(0, -6, -1):
                assert series[j].coefficient(e) == 0

    def test_first_order_matches_residue_table(self):
        for p, ty in [
            (Params.of(F(-1, 2), 1, 0, 0, 0, F(1, 2)), InfinityType("A1", 0)),
            (Params.of(F(1, 3), 0, 0, F(2, 3), 0, 0), InfinityType("A2", 0)),
            (seed_b(0, F(1, 7)).params, InfinityType("B", 0)),
        ]:
            series = expand_solution_ansatz(p, ty, 3)
            table = infinity_residue_table(p, ty)
            for j in range(6):
                assert series[j].coefficient(-1) == table[j]

    def test_matches_exact_solutions_to_order_ten(self):
        for sol in random_solutions(8, seed=14, max_len=6):
            ty = infinity_type(sol)
            series = expand_solution_ansatz(sol.params, ty, 10)
            for j in range(6):
                exact = laurent_expand(sol.f[j], INFINITY, 10)
                for e in range(1, -11, -1):
                    assert series[j].coefficient(e) == exact.coefficient(e)

    def test_order_must_be_positive(self):
        with pytest.raises(AnsatzError):
            expand_solution_ansatz(seed_c(F(0)).params, InfinityType("C", 0), 0)


def test_diagnose_summary():
    rep = diagnose(s0_image())
    assert rep.infinity == InfinityType("A1", 0)
    assert rep.zero.pattern == ZeroPattern("pair", 5)
    assert rep.finite_cases == ()
    assert rep.obstruction.status == "admissible_regular"
    assert rep.residues_integral
