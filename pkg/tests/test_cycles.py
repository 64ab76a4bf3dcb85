"""Ascendancy, cycle-equation and cycle-detection tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syracuse.core import jcf, step
from syracuse.cycles import (
    Ascendant,
    AscendancySearchExhausted,
    CycleEquationInstance,
    ascendancy_bruteforce,
    ascendancy_closed,
    class1_exponent,
    cycle_equation_denominator,
    cycle_equation_n,
    detect_cycle,
    reduce_cycle,
    scan_cycle_equations,
    scan_to_csv,
)

involved_odds = (
    st.integers(min_value=0, max_value=3000)
    .map(lambda m: 2 * m + 1)
    .filter(lambda n: n % 3 != 0)
)


class TestAscendancyBruteforce:
    def test_a5(self):
        assert [a.value for a in ascendancy_bruteforce(5, 2, 30)] == [13, 53]

    def test_a1(self):
        ascendants = ascendancy_bruteforce(1, 3, 30)
        assert [a.value for a in ascendants] == [1, 5, 85]
        assert [a.exponent for a in ascendants] == [2, 4, 8]  # 21 = mu_6(1) excluded

    def test_a17(self):
        assert ascendancy_bruteforce(17, 1, 30) == [Ascendant(value=11, exponent=1)]

    def test_exhaustion_reported(self):
        with pytest.raises(AscendancySearchExhausted):
            ascendancy_bruteforce(5, 50, k_max=20)

    @given(involved_odds)
    def test_members_are_preimages_in_order(self, n):
        ascendants = ascendancy_bruteforce(n, 5, k_max=60)
        values = [a.value for a in ascendants]
        assert values == sorted(values)
        for a in ascendants:
            assert jcf(a.value) == (n, a.exponent)
            assert a.value % 3 != 0


class TestAscendancyClosed:
    def test_examples(self):
        assert [a.value for a in ascendancy_closed(5, 2)] == [13, 53]
        assert [a.value for a in ascendancy_closed(1, 3)] == [1, 5, 85]

    def test_equals_bruteforce(self):
        assert ascendancy_closed(7, 3) == ascendancy_bruteforce(7, 3, 40)

    def test_exponent_mapping(self):
        # the geometric-sum index m corresponds to reversal exponent 2m+2
        assert [class1_exponent(m) for m in range(4)] == [2, 4, 6, 8]
        for m in range(6):
            n = 13
            k = class1_exponent(m)
            candidate = (4 ** (m + 1) - 1) // 3 + 2 ** (2 * m + 3) * ((n - 1) // 6)
            assert candidate == ((1 << k) * n - 1) // 3 or (((1 << k) * n - 1) % 3 != 0)

    @given(involved_odds)
    @settings(max_examples=60)
    def test_oracle_equality(self, n):
        closed = ascendancy_closed(n, 10, cross_check=False)
        assert closed == ascendancy_bruteforce(n, 10, k_max=closed[-1].exponent + 1)


class TestNonTransitivity:
    def test_witness_triple(self):
        assert ascendancy_bruteforce(13, 1, 10)[0].value == 17
        a5 = ascendancy_bruteforce(5, 2, 10)
        assert a5[0].value == 13
        assert 17 not in {a.value for a in a5} and a5[1].value > 17


class TestCycleEquation:
    def test_trivial_instance(self):
        inst = CycleEquationInstance(class_r=1, alphas=(2,), m=0)
        assert cycle_equation_n(inst) == Fraction(0)
        assert cycle_equation_denominator(inst) == 10  # 18 - 8

    @pytest.mark.parametrize(
        "class_r,alphas,m",
        [(1, (1,), 0), (5, (1,), 1)],
    )
    def test_non_integer_examples(self, class_r, alphas, m):
        n = cycle_equation_n(CycleEquationInstance(class_r, alphas, m))
        assert n.denominator != 1 or n < 0

    @given(
        st.sampled_from([1, 5]),
        st.lists(st.integers(1, 6), min_size=1, max_size=5),
        st.integers(0, 10),
    )
    def test_denominator_never_zero(self, class_r, alphas, m):
        inst = CycleEquationInstance(class_r, tuple(alphas), m)
        assert cycle_equation_denominator(inst) != 0
        cycle_equation_n(inst)  # total on its domain


class TestScan:
    def test_small_grid_genuine_hits_are_trivial_cycle(self):
        result = scan_cycle_equations(3, 10, 10)
        assert result.genuine
        for hit in result.genuine:
            assert hit.value == 1
            assert hit.instance.class_r == 1
            assert set(hit.instance.alphas) == {2} and hit.instance.m == 0
        assert result.artifacts  # integer hits that fail reconstruction exist

    def test_artifact_example(self):
        # class 1, alphas (2,), m=1 solves to n=8 but 37 is not a preimage of 49
        result = scan_cycle_equations(1, 2, 1)
        artifacts = {
            (h.instance.class_r, h.instance.alphas, h.instance.m): h
            for h in result.artifacts
        }
        hit = artifacts[(1, (2,), 1)]
        assert hit.n == 8 and not hit.genuine

    def test_csv_shape(self):
        result = scan_cycle_equations(2, 6, 6)
        lines = scan_to_csv(result).strip().splitlines()
        assert lines[0] == "class,i,alphas,m,n_numerator,n_denominator,genuine"
        assert len(lines) == len(result.hits) + 1
        for row in lines[1:]:
            fields = row.split(",")
            assert fields[0] in ("1", "5") and fields[6] in ("true", "false")


class TestDetectCycle:
    def test_example_13(self):
        rec = detect_cycle(13)
        assert (rec.theta, rec.s, rec.members) == (7, 3, (4, 2, 1))

    def test_one(self):
        rec = detect_cycle(1)
        assert (rec.theta, rec.s, rec.members) == (0, 3, (1, 4, 2))

    def test_reduce(self):
        assert reduce_cycle((4, 2, 1, 4, 2, 1)) == (4, 2, 1)
        assert reduce_cycle((4, 2, 1)) == (4, 2, 1)
        assert reduce_cycle((5, 5, 5)) == (5,)

    def test_budget_returns_none(self):
        assert detect_cycle(27, budget=5) is None

    @given(st.integers(min_value=1, max_value=5000))
    @settings(max_examples=80)
    def test_period_law(self, n):
        rec = detect_cycle(n)
        assert rec is not None
        v = rec.members[0]
        for _ in range(rec.s):
            v = step(v)
        assert v == rec.members[0]
        for d in range(1, rec.s):
            if rec.s % d == 0:
                u = rec.members[0]
                for _ in range(d):
                    u = step(u)
                assert u != rec.members[0]
        assert len(set(rec.members)) == rec.s


class TestTraceAscendancy:
    @given(involved_odds)
    @settings(max_examples=60)
    def test_predecessor_is_recorded_preimage(self, n):
        from syracuse.core import jcf_iter, reversal_natural

        exp = jcf_iter(n, 10**6)
        prev = n
        for alpha, value in zip(exp.alphas, exp.values):
            assert reversal_natural(value, alpha) == prev
            assert prev % 3 != 0
            prev = value
