"""Closed-form bound evaluators: pinned values, identities, orderings.

Every pinned number below was recomputed by hand from the displayed
formulas; the evaluators must reproduce them as exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, sqrt

import pytest

from g31x.bounds import (
    EXACT_FINITE,
    LOWER_MAIN,
    UPPER_MAIN,
    BoundInputs,
    BoundValue,
    crossover_check,
    crossover_threshold,
    formula1_upper,
    formula2_lower,
    lemma_caps,
    peeling_total_lower,
    thm1_case3_bounds,
    thm1_case4_main,
    thm1_case12_main,
    thm2_lower_main,
    thm3_pt1_upper_main,
    thm3_pt2_lower_main,
    thm3_pt3_lower_main,
    thm3_pt4_lower,
    thm4_lower_main,
)


def inp_for_c(n: int, c: Fraction, **kw) -> BoundInputs:
    """Inputs whose complement density is exactly c; c * C(n,3) must be integral."""
    top = comb(n, 3)
    l = top - int(c * top)
    assert Fraction(top - l, top) == c
    return BoundInputs(n=n, l=l, **kw)


class TestInputs:
    def test_validation(self):
        with pytest.raises(ValueError):
            BoundInputs(n=2, l=0)
        with pytest.raises(ValueError):
            BoundInputs(n=6, l=-1)
        with pytest.raises(ValueError):
            BoundInputs(n=6, l=comb(6, 3) + 1)
        with pytest.raises(ValueError):
            BoundInputs(n=6, l=5, rho=7)
        with pytest.raises(ValueError):
            BoundInputs(n=6, l=5, rho=-1)
        with pytest.raises(ValueError):
            BoundInputs(n=6, l=5, alpha=-1)

    def test_density_and_alpha_proxy(self):
        assert BoundInputs(n=10, l=0).c == 1
        assert BoundInputs(n=10, l=comb(10, 3)).c == 0
        assert BoundInputs(n=10, l=60).c == Fraction(1, 2)
        assert BoundInputs(n=10, l=5).alpha_used == 10
        assert BoundInputs(n=10, l=5, alpha=4).alpha_used == 4

    def test_value_kinds(self):
        inp = BoundInputs(n=10, l=60, rho=3)
        assert thm2_lower_main(inp).kind == LOWER_MAIN
        assert thm3_pt1_upper_main(inp).kind == UPPER_MAIN
        assert thm3_pt4_lower(inp).kind == EXACT_FINITE
        assert peeling_total_lower(inp).kind == EXACT_FINITE
        v = thm2_lower_main(inp)
        assert isinstance(v, BoundValue) and v.name == "thm2_lo"
        assert v.as_float == float(v.value)


class TestSparseAndMiddle:
    def test_thm1_case12(self):
        assert thm1_case12_main(BoundInputs(n=10, l=100, alpha=10)).value == 500
        assert thm1_case12_main(BoundInputs(n=6, l=20, alpha=4)).value == 50
        # alpha defaults to the proxy n
        assert thm1_case12_main(BoundInputs(n=10, l=100)).value == 500

    def test_thm1_case3(self):
        lo, hi = thm1_case3_bounds(BoundInputs(n=10, l=100, alpha=10))
        assert (lo.value, hi.value) == (1000, 5000)
        lo, hi = thm1_case3_bounds(BoundInputs(n=100, l=1000, alpha=100))
        assert (lo.value, hi.value) == (10000, 50000)
        assert hi.value == 5 * lo.value

    def test_alpha_zero_rejected(self):
        bad = BoundInputs(n=10, l=5, alpha=0)
        for fn in (thm1_case12_main, thm1_case3_bounds, thm3_pt1_upper_main):
            with pytest.raises(ValueError):
                fn(bad)

    def test_thm2(self):
        assert thm2_lower_main(BoundInputs(n=100, l=10000)).value == 1_500_000
        assert thm2_lower_main(BoundInputs(n=10, l=100)).value == 1500

    def test_thm3_part1(self):
        assert thm3_pt1_upper_main(BoundInputs(n=10, l=100, alpha=10)).value == 4500
        # exactly three times the matching lower term at alpha = n
        inp = BoundInputs(n=50, l=7777)
        assert thm3_pt1_upper_main(inp).value == 3 * thm2_lower_main(inp).value


class TestDenseRegime:
    def test_thm1_case4(self):
        assert thm1_case4_main(inp_for_c(10, Fraction(0))).value == Fraction(10**5, 8)
        assert thm1_case4_main(inp_for_c(10, Fraction(1))).value == Fraction(-(10**5), 9)
        assert thm1_case4_main(BoundInputs(n=10, l=60)).value == Fraction(10**5, 288)

    def test_thm3_part2(self):
        assert thm3_pt2_lower_main(inp_for_c(10, Fraction(0))).value == 0
        assert thm3_pt2_lower_main(inp_for_c(20, Fraction(0))).value == 200_000

    def test_thm3_part3(self):
        assert thm3_pt3_lower_main(inp_for_c(10, Fraction(0))).value == 0
        got = thm3_pt3_lower_main(BoundInputs(n=100, l=113190))
        assert BoundInputs(n=100, l=113190).c == Fraction(3, 10)
        assert got.value == 472_500_000

    def test_thm3_part4(self):
        assert thm3_pt4_lower(inp_for_c(10, Fraction(1, 2))).value == 0
        assert thm3_pt4_lower(inp_for_c(20, Fraction(0))).value == 200_000

    def test_formulas(self):
        assert formula1_upper(inp_for_c(10, Fraction(1, 2))).value == 3125
        assert formula1_upper(inp_for_c(10, Fraction(1))).value == 0
        assert formula2_lower(inp_for_c(10, Fraction(1))).value == 0
        for n in (10, 20, 56):
            for num in range(0, 11):
                inp = inp_for_c(n, Fraction(num, 10))
                assert formula1_upper(inp).value == 3 * formula2_lower(inp).value

    def test_orderings_on_grid(self):
        # p2 - p3 = (c^2/9)(1 - 10/n) n^5/8 >= 0 once n >= 10
        for n in (20, 50, 101):
            for num in range(0, 10):
                inp = inp_for_c(n, Fraction(num, 10))
                assert formula2_lower(inp).value <= formula1_upper(inp).value
                assert thm3_pt3_lower_main(inp).value <= thm3_pt2_lower_main(inp).value
                assert thm2_lower_main(inp).value <= thm3_pt1_upper_main(inp).value


class TestDiameterCapped:
    def test_thm4_pinned(self):
        got = thm4_lower_main(BoundInputs(n=100, l=20000, rho=10))
        assert got.value == 4 * 10**6 * Fraction(239, 120)

    def test_thm4_rho_zero_is_twice_l_sq_over_n(self):
        for n, l in ((10, 100), (25, 2000), (7, 35)):
            inp = BoundInputs(n=n, l=l, rho=0)
            assert thm4_lower_main(inp).value == Fraction(2 * l**2, n)
            assert thm4_lower_main(inp).value == Fraction(4, 3) * thm2_lower_main(inp).value

    def test_thm4_vanishes_when_rho_cubed_is_12l(self):
        assert thm4_lower_main(BoundInputs(n=10, l=18, rho=6)).value == 0

    def test_thm4_requires_rho_and_positive_l(self):
        with pytest.raises(ValueError):
            thm4_lower_main(BoundInputs(n=10, l=10))
        with pytest.raises(ValueError):
            thm4_lower_main(BoundInputs(n=10, l=0, rho=3))
        with pytest.raises(ValueError):
            peeling_total_lower(BoundInputs(n=10, l=0, rho=3))

    def test_peeling_total_offset(self):
        # thm4 and the peeling total differ by exactly 90 n l + 6 l
        for n, l, rho in ((10, 100, 3), (12, 200, 0), (30, 4000, 11)):
            inp = BoundInputs(n=n, l=l, rho=rho)
            diff = thm4_lower_main(inp).value - peeling_total_lower(inp).value
            assert diff == 90 * n * l + 6 * l

    def test_peeling_total_sign(self):
        # nonpositive exactly when l <= 45 n^2 + 3 n + rho^3 / 12
        for n, rho in ((10, 0), (10, 6), (14, 14)):
            cut = Fraction(45 * n**2 + 3 * n) + Fraction(rho**3, 12)
            for l in range(1, comb(n, 3) + 1, 37):
                v = peeling_total_lower(BoundInputs(n=n, l=l, rho=rho)).value
                assert (v <= 0) == (l <= cut)

    def test_large_l_arithmetic_outside_typed_inputs(self):
        # the displayed n=10, l=10^4 sample sits outside the l <= C(10,3)
        # domain the typed inputs enforce; check the raw arithmetic directly
        n, l, rho = 10, 10**4, 0
        with pytest.raises(ValueError):
            BoundInputs(n=n, l=l, rho=rho)
        inner = 2 - Fraction(rho**3, 6 * l) - Fraction(90 * n**2, l) - Fraction(6 * n, l)
        assert Fraction(l**2, n) * inner == 10_940_000


class TestLemmaCaps:
    def test_pinned(self):
        assert lemma_caps(10, 6) == (Fraction(3500), Fraction(2036))
        assert lemma_caps(6, 0) == (Fraction(1260), Fraction(720))

    def test_validation(self):
        with pytest.raises(ValueError):
            lemma_caps(2, 0)
        with pytest.raises(ValueError):
            lemma_caps(10, 11)

    def test_first_cap_vacuous_up_to_212(self):
        # C(n,3) <= 35 n^2 holds exactly for n <= 212
        assert comb(211, 3) <= lemma_caps(211, 0)[0]
        assert comb(212, 3) <= lemma_caps(212, 0)[0]
        assert comb(213, 3) - lemma_caps(213, 0)[0] == 71


class TestCrossover:
    def test_endpoints(self):
        assert crossover_check(inp_for_c(100, Fraction(0)))
        assert not crossover_check(inp_for_c(100, Fraction(1)))

    def test_threshold(self):
        x = crossover_threshold()
        assert abs(x - 0.486) <= 1e-3
        # the large-n limit point is 3 sqrt(10) - 9
        assert abs(x - (3 * sqrt(10) - 9)) < 1e-6

    def test_threshold_bad_alpha(self):
        with pytest.raises(ValueError):
            crossover_threshold(alpha=0)
