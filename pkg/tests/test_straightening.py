"""Quantum straightening: pair rules, confluence, conservation laws."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from qfock import LaurentPoly, normal_form, straighten_pair
from qfock.straightening import (
    clear_caches,
    expansion_index_sums,
    rule_name,
    _first_disordered,
)
from qfock.wedges import compose, coord_of, decompose, index_less


def lp(terms):
    return LaurentPoly(terms)


GRIDS = [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (4, 2), (3, 3)]


class TestPairRule:
    def test_ordered_input_rejected(self):
        with pytest.raises(ValueError):
            straighten_pair(5, 1, 2, 2)

    def test_equal_pair_vanishes(self):
        assert straighten_pair(3, 3, 2, 2) == []
        assert straighten_pair(-5, -5, 3, 2) == []

    @pytest.mark.parametrize("n,l", GRIDS)
    def test_output_is_ordered_and_conserves_the_letter_sum(self, n, l):
        rng = random.Random(99)
        for _ in range(200):
            p2 = rng.randint(-20, 20)
            p1 = rng.randint(p2, 20)
            for (x, y), coeff in straighten_pair(p2, p1, n, l):
                assert x > y
                assert x + y == p1 + p2
                assert not coeff.is_zero()

    def test_rule_dispatch(self):
        # n=2, l=2: components and residues of small plain indices.
        # k=1 -> (a=1,b=1), k=3 -> (a=1,b=2), k=2 -> (a=2,b=1), k=5 -> (a=1,b=1)
        assert rule_name(1, 5, 2, 2) == "R1"   # same b, gamma = 0
        assert rule_name(1, 2, 2, 2) == "R2"   # same b, gamma != 0
        assert rule_name(1, 3, 2, 2) == "R3"   # diff b, gamma = 0
        assert rule_name(2, 3, 2, 2) == "R4"   # diff b, gamma != 0

    def test_same_letter_swap_scalars(self):
        # The four rules give the pure swap term coefficients -1, -q^-1, q, 1.
        assert dict(straighten_pair(1, 5, 2, 2))[(5, 1)] == lp({0: -1})
        assert dict(straighten_pair(1, 2, 2, 2))[(2, 1)] == lp({-1: -1})
        assert dict(straighten_pair(1, 3, 2, 2))[(3, 1)] == lp({1: 1})
        assert dict(straighten_pair(2, 3, 2, 2))[(3, 2)] == lp({0: 1})

    def test_level_one_pair_example(self):
        # n=2, l=1: normalizing (1, 4) = -q^-1 (4,1) + (q^-2 - 1)(3,2).
        assert normal_form((1, 4), 2, 1) == {
            (4, 1): lp({-1: -1}),
            (3, 2): lp({-2: 1, 0: -1}),
        }

    def test_cross_component_pair_examples(self):
        # Residue-matched cross-component pair (R3) with live tails at n=2, l=2:
        # letters far enough apart that both ladders contribute.
        assert dict(straighten_pair(1, 11, 2, 2)) == {
            (11, 1): lp({1: 1}),
            (9, 3): lp({2: 1, 0: -1}),
            (7, 5): lp({3: 1, 1: -1}),
        }
        # Residue-mismatched cross-component pair (R4) with live tails.
        assert dict(straighten_pair(2, 11, 2, 2)) == {
            (11, 2): lp({0: 1}),
            (8, 5): lp({1: 1, -1: -1}),
            (9, 4): lp({1: 1, -1: -1}),
            (7, 6): lp({2: 1, 0: -2, -2: 1}),
        }
        # Nearby letters truncate every tail: pure swap terms.
        assert dict(straighten_pair(1, 3, 2, 2)) == {(3, 1): lp({1: 1})}
        assert dict(straighten_pair(2, 3, 2, 2)) == {(3, 2): lp({0: 1})}


def random_word(rng, n, l, length, lo=-12, hi=12):
    return tuple(rng.randint(lo, hi) for _ in range(length))


class TestNormalForm:
    def test_empty_and_singleton(self):
        assert normal_form((), 2, 2) == {(): LaurentPoly.one()}
        assert normal_form((7,), 2, 2) == {(7,): LaurentPoly.one()}

    def test_ordered_word_is_fixed(self):
        word = (9, 4, 1, -3)
        assert normal_form(word, 2, 2) == {word: LaurentPoly.one()}

    @pytest.mark.parametrize("n,l", GRIDS)
    def test_adjacent_repeats_annihilate_under_every_strategy(self, n, l):
        # Words containing an adjacent equal pair vanish; with the repeat at
        # the far end of the word every strategy must still reach zero.
        rng = random.Random(n * 100 + l)
        for _ in range(30):
            word = random_word(rng, n, l, rng.randint(1, 3))
            x = rng.randint(-12, 12)
            dup = word + (x, x) if rng.random() < 0.5 else (x, x) + word
            for strategy in ("leftmost", "rightmost", "insert"):
                assert normal_form(dup, n, l, strategy=strategy) == {}

    def test_separated_repeats_need_not_vanish(self):
        # The calculus is only adjacently antisymmetric: a repeated letter
        # with another letter in between can normalize to something nonzero.
        exp = normal_form((4, 7, 4), 2, 1)
        assert exp == {(6, 5, 4): lp({-2: 1, 0: -1})}

    @pytest.mark.parametrize("n,l", GRIDS)
    def test_strategies_agree(self, n, l):
        rng = random.Random(n * 10 + l)
        for _ in range(40):
            word = random_word(rng, n, l, rng.randint(2, 5))
            left = normal_form(word, n, l, strategy="leftmost")
            right = normal_form(word, n, l, strategy="rightmost")
            ins = normal_form(word, n, l, strategy="insert")
            assert left == right == ins

    @pytest.mark.parametrize("n,l", GRIDS)
    def test_result_is_ordered_and_conserves_index_sums(self, n, l):
        rng = random.Random(n * 7 + l)
        for _ in range(40):
            word = random_word(rng, n, l, rng.randint(2, 5))
            exp = normal_form(word, n, l)
            for w, coeff in exp.items():
                assert all(x > y for x, y in zip(w, w[1:]))
                assert not coeff.is_zero()
            assert expansion_index_sums(exp) <= {sum(word)}

    def test_index_sum_conserved_on_1000_random_words(self):
        rng = random.Random(1000)
        for _ in range(1000):
            n = rng.randint(2, 3)
            l = rng.randint(1, 3)
            word = random_word(rng, n, l, rng.randint(2, 4), lo=-9, hi=9)
            assert expansion_index_sums(normal_form(word, n, l)) <= {sum(word)}

    def test_rewriting_is_linear_over_prefixes(self):
        # normal_form(u + w) = sum over normal_form(w) terms of
        # normal_form(u + term); rewriting is a two-sided ideal.
        n, l = 2, 2
        word = (2, 5, 3)
        whole = normal_form(word, n, l)
        acc: dict = {}
        for w, p in normal_form(word[1:], n, l).items():
            for w2, p2 in normal_form(word[:1] + w, n, l).items():
                cur = acc.get(w2, LaurentPoly.zero()) + p * p2
                if cur:
                    acc[w2] = cur
                else:
                    acc.pop(w2, None)
        assert acc == whole

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValueError):
            normal_form((1, 2), 2, 2, strategy="sideways")

    def test_step_budget_enforced(self):
        with pytest.raises(RuntimeError):
            normal_form((-8, -4, 0, 4, 8), 2, 2, step_budget=3, _memo={})

    def test_trace_reports_each_rewrite(self):
        steps = []
        normal_form((1, 4), 2, 1, trace=steps.append, _memo={})
        assert steps
        assert all({"rule", "pair", "terms"} <= set(s) for s in steps)
        assert steps[0]["rule"] == "R2" and steps[0]["pair"] == [1, 4]

    def test_first_disordered_helper(self):
        assert _first_disordered((3, 1, 2), "leftmost") == 1
        assert _first_disordered((1, 3, 2, 4), "leftmost") == 0
        assert _first_disordered((1, 3, 2, 4), "rightmost") == 2
        assert _first_disordered((3, 2, 1), "leftmost") is None


class TestCommutationOracle:
    """Single-power commutation across a saturated run.

    Moving one letter of component b2 leftwards across a full consecutive
    run of t letters in component b1 < b2 (letters sharing its residue
    class and sitting at consecutive coordinates at or above it) yields
    exactly one ordered word, with coefficient a single power of q.
    """

    @pytest.mark.parametrize("t", [1, 2, 3])
    @pytest.mark.parametrize("n,l", [(2, 2), (3, 2), (2, 3)])
    def test_single_power_commutation(self, t, n, l):
        for a in range(1, n + 1):
            # Run X = u^(b1)_{a}, u^(b1)_{a-n}, ..., t letters, b1 = 1;
            # then one letter u^(b2)_{a} with b2 = 2 (same residue, below).
            run = [compose(a, 1, m, n, l) for m in range(t)]
            tail = compose(a, 2, t - 1, n, l)
            word = tuple(run) + (tail,)
            exp = normal_form(word, n, l)
            assert len(exp) == 1
            (w, coeff), = exp.items()
            assert sorted(w, reverse=True) == sorted(word, reverse=True)
            terms = list(coeff.items())
            assert len(terms) == 1
            assert abs(terms[0][1]) == 1

    def test_commuted_coefficient_is_q_to_the_crossing_count(self):
        # One residue-matched crossing contributes exactly q.
        n, l = 2, 2
        word = (compose(1, 1, 0, n, l), compose(1, 2, 0, n, l))  # (1, 3)
        exp = normal_form(word, n, l)
        assert exp == {(3, 1): lp({1: 1})}


class TestMemoIsolation:
    def test_private_memo_does_not_leak(self):
        clear_caches()
        memo = {}
        normal_form((1, 4), 2, 1, _memo=memo)
        assert memo  # the private memo was used
        again = normal_form((1, 4), 2, 1, _memo={})
        assert again == normal_form((1, 4), 2, 1)
