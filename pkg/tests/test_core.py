"""Kernel tests: every expected value is either pinned from a worked
example or computed by an independent brute-force oracle in this file."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from syracuse.core import (
    BudgetExceededError,
    jcf,
    jcf_closed_form,
    jcf_iter,
    ord2,
    reversal,
    reversal_natural,
    step,
    syracuse_sequence,
)


def brute_trajectory(n, budget=10**6):
    """Independent step-by-step oracle; does not share code with the kernel."""
    terms = [n]
    while terms[-1] != 1 and len(terms) <= budget:
        v = terms[-1]
        terms.append(3 * v + 1 if v % 2 else v // 2)
    return terms


def brute_ord2(n):
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    return e


odd_numbers = st.integers(min_value=1, max_value=10**9).map(lambda n: 2 * n - 1)


class TestOrd2:
    @pytest.mark.parametrize("n,expected", [(40, 3), (1, 0), (1024, 10)])
    def test_examples(self, n, expected):
        assert ord2(n) == expected

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            ord2(0)

    @given(st.integers(min_value=1, max_value=10**12))
    def test_matches_brute_force(self, n):
        assert ord2(n) == brute_ord2(n)


class TestStep:
    @pytest.mark.parametrize("n,expected", [(13, 40), (40, 20), (1, 4)])
    def test_examples(self, n, expected):
        assert step(n) == expected

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            step(0)


class TestJcf:
    @pytest.mark.parametrize("n,expected", [(41, (31, 2)), (13, (5, 3)), (1, (1, 2))])
    def test_examples(self, n, expected):
        assert jcf(n) == expected

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            jcf(10)

    @given(odd_numbers)
    def test_equals_one_odd_step_plus_halvings(self, n):
        value, alpha = jcf(n)
        v = step(n)
        halvings = 0
        while v % 2 == 0:
            v = step(v)
            halvings += 1
        assert (v, halvings) == (value, alpha)
        assert value % 2 == 1


class TestJcfIter:
    def test_example_13(self):
        exp = jcf_iter(13, 2)
        assert exp.values == (5, 1)
        assert exp.alphas == (3, 4)
        assert exp.halted

    def test_trivial(self):
        exp = jcf_iter(1, 1)
        assert exp.values == (1,) and exp.alphas == (2,) and exp.halted

    def test_27_reaches_one_in_41_jumps(self):
        # oracle: count odd terms before 1 in the raw trajectory
        odd_jumps = sum(1 for t in brute_trajectory(27)[:-1] if t % 2 == 1)
        assert odd_jumps == 41
        exp = jcf_iter(27, 41)
        assert exp.i == 41 and exp.values[-1] == 1

    def test_stops_early_at_one(self):
        exp = jcf_iter(13, 50)
        assert exp.values == (5, 1) and exp.halted

    def test_budget_exhaustion_is_distinct(self):
        with pytest.raises(BudgetExceededError):
            jcf_iter(27, 41, budget=10)


class TestClosedForm:
    @pytest.mark.parametrize(
        "n,alphas,expected",
        [
            (13, [3], Fraction(5)),
            (13, [3, 4], Fraction(1)),
            (13, [1], Fraction(20)),  # wrong alpha: even, non-reduced value
        ],
    )
    def test_examples(self, n, alphas, expected):
        assert jcf_closed_form(n, alphas) == expected

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            jcf_closed_form(13, [])

    @given(st.integers(min_value=1, max_value=5000).map(lambda n: 2 * n - 1))
    def test_matches_iteration_on_true_prefixes(self, n):
        exp = jcf_iter(n, 10**6)
        for i in range(1, exp.i + 1):
            assert jcf_closed_form(n, exp.alphas[:i]) == exp.values[i - 1]

    @given(st.integers(min_value=1, max_value=5000).map(lambda n: 2 * n - 1))
    def test_positive_remainder_identity(self, n):
        exp = jcf_iter(n, 10**6)
        i = exp.i
        total = sum(exp.alphas)
        remainder = exp.values[-1] * 2**total - 3**i * n
        assert remainder > 0
        value = jcf_closed_form(n, exp.alphas)
        assert value == Fraction(3**i * n + remainder, 2**total)

    def test_wrong_alpha_can_be_non_integer(self):
        assert jcf_closed_form(13, [2]) == Fraction(10)  # even, so not a jump value
        assert jcf_closed_form(13, [4]) == Fraction(5, 2)


class TestSyracuseSequence:
    def test_example_13(self):
        trace = syracuse_sequence(13)
        assert trace.terms == (13, 40, 20, 10, 5, 16, 8, 4, 2, 1)
        assert trace.flight_time == 9
        assert trace.max_value == 40
        assert trace.halted

    def test_one(self):
        trace = syracuse_sequence(1)
        assert trace.terms == (1,) and trace.flight_time == 0 and trace.halted

    def test_27_against_oracle(self):
        oracle = brute_trajectory(27)
        trace = syracuse_sequence(27)
        assert list(trace.terms) == oracle
        assert trace.flight_time == 111
        assert trace.max_value == 9232

    def test_budget_exhaustion_sets_halted_false(self):
        trace = syracuse_sequence(27, budget=10)
        assert not trace.halted and trace.flight_time == 10

    @given(st.integers(min_value=1, max_value=3000))
    def test_suffix_property(self, n):
        trace = syracuse_sequence(n)
        j = len(trace.terms) // 2
        assert syracuse_sequence(trace.terms[j]).terms == trace.terms[j:]

    @given(st.integers(min_value=1, max_value=3000))
    def test_one_appears_exactly_once(self, n):
        trace = syracuse_sequence(n)
        assert trace.halted
        assert trace.terms.count(1) == 1 and trace.terms[-1] == 1
        assert min(trace.terms) >= 1


class TestReversal:
    @pytest.mark.parametrize(
        "n,k,expected",
        [(17, 1, Fraction(11)), (17, 2, Fraction(67, 3)), (13, 2, Fraction(17))],
    )
    def test_examples(self, n, k, expected):
        assert reversal(n, k) == expected

    def test_natural_helper(self):
        assert reversal_natural(17, 1) == 11
        assert reversal_natural(17, 2) is None
        assert reversal_natural(13, 2) == 17

    @given(st.integers(min_value=1, max_value=20000).map(lambda n: 2 * n - 1))
    def test_round_trip(self, n):
        if n % 3 == 0:
            return
        for k in range(1, 31):
            m = reversal_natural(n, k)
            if m is not None:
                assert jcf(m) == (n, k)
