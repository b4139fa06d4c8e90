"""Closed-form bound evaluators for r(l), the minimum induced edge count.

Every evaluator is a pure function of (n, l, rho, alpha) in exact rational
arithmetic; floats appear only when callers ask for them.  Main terms are
evaluated with any vanishing h/o(1) corrections set to zero.  alpha is an
input; the customary proxy is alpha = n.

Kinds: lower_main and upper_main mark asymptotic main terms, exact_finite
marks expressions stated for finite n as they are evaluated here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

LOWER_MAIN = "lower_main"
UPPER_MAIN = "upper_main"
EXACT_FINITE = "exact_finite"


@dataclass(frozen=True)
class BoundInputs:
    n: int
    l: int
    rho: Optional[int] = None
    alpha: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        if not 0 <= self.l <= comb(self.n, 3):
            raise ValueError(f"need 0 <= l <= C(n,3), got l={self.l}, n={self.n}")
        if self.rho is not None and not 0 <= self.rho <= self.n:
            raise ValueError(f"need 0 <= rho <= n, got rho={self.rho}")
        if self.alpha is not None and self.alpha < 0:
            raise ValueError(f"need alpha >= 0, got {self.alpha}")

    @property
    def c(self) -> Fraction:
        """Complement density: 1 - l / C(n,3).  Always in [0, 1]."""
        top = comb(self.n, 3)
        return Fraction(top - self.l, top)

    @property
    def alpha_used(self) -> int:
        return self.n if self.alpha is None else self.alpha


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: Fraction
    kind: str

    @property
    def as_float(self) -> float:
        return float(self.value)


def _need_alpha(inp: BoundInputs) -> int:
    a = inp.alpha_used
    if a == 0:
        raise ValueError("alpha must be positive for this bound")
    return a


def _need_rho(inp: BoundInputs) -> int:
    if inp.rho is None:
        raise ValueError("rho is required for this bound")
    return inp.rho


def thm1_case12_main(inp: BoundInputs) -> BoundValue:
    """l^2 / (2 alpha); sparse-regime lower main term."""
    a = _need_alpha(inp)
    return BoundValue("thm1_c12", Fraction(inp.l**2, 2 * a), LOWER_MAIN)


def thm1_case3_bounds(inp: BoundInputs) -> tuple[BoundValue, BoundValue]:
    """(l^2 / alpha, 5 l^2 / alpha); the two-sided middle-regime pair."""
    a = _need_alpha(inp)
    lo = BoundValue("thm1_c3_lo", Fraction(inp.l**2, a), LOWER_MAIN)
    hi = BoundValue("thm1_c3_hi", Fraction(5 * inp.l**2, a), UPPER_MAIN)
    return lo, hi


def thm1_case4_main(inp: BoundInputs) -> BoundValue:
    """n^5 (1/8 - c/4 + c^2/72); dense-regime lower main term."""
    c = inp.c
    val = inp.n**5 * (Fraction(1, 8) - c / 4 + c * c / 72)
    return BoundValue("thm1_c4", val, LOWER_MAIN)


def thm2_lower_main(inp: BoundInputs) -> BoundValue:
    """3 l^2 / (2 n); the all-regime lower main term."""
    return BoundValue("thm2_lo", Fraction(3 * inp.l**2, 2 * inp.n), LOWER_MAIN)


def thm3_pt1_upper_main(inp: BoundInputs) -> BoundValue:
    """9 l^2 / (2 alpha); upper main term, 3x the matching lower bound."""
    a = _need_alpha(inp)
    return BoundValue("thm3_p1_hi", Fraction(9 * inp.l**2, 2 * a), UPPER_MAIN)


def thm3_pt2_lower_main(inp: BoundInputs) -> BoundValue:
    """(n^5/8)(1 - 2c + c^2/3 - 10/n + 20c/n - 10c^2/(3n))."""
    n, c = inp.n, inp.c
    inner = (1 - 2 * c + c * c / 3 - Fraction(10, n) + Fraction(20, n) * c
             - Fraction(10, 3 * n) * c * c)
    return BoundValue("thm3_p2_lo", Fraction(n**5, 8) * inner, LOWER_MAIN)


def thm3_pt3_lower_main(inp: BoundInputs) -> BoundValue:
    """(n^5/8)(1 - 2c + 2c^2/9 - 10/n + 20c/n - 20c^2/(9n))."""
    n, c = inp.n, inp.c
    inner = (1 - 2 * c + 2 * c * c / 9 - Fraction(10, n) + Fraction(20, n) * c
             - Fraction(20, 9 * n) * c * c)
    return BoundValue("thm3_p3_lo", Fraction(n**5, 8) * inner, LOWER_MAIN)


def thm3_pt4_lower(inp: BoundInputs) -> BoundValue:
    """(n^5/8)(1 - 2c - 10/n + 20c/n); finite-n form, no c^2 term."""
    n, c = inp.n, inp.c
    inner = 1 - 2 * c - Fraction(10, n) + Fraction(20, n) * c
    return BoundValue("thm3_p4_lo", Fraction(n**5, 8) * inner, EXACT_FINITE)


def formula1_upper(inp: BoundInputs) -> BoundValue:
    """(n^5/8)(1 - c)^2; upper main term in complement-density form."""
    n, c = inp.n, inp.c
    return BoundValue("f1_hi", Fraction(n**5, 8) * (1 - c) ** 2, UPPER_MAIN)


def formula2_lower(inp: BoundInputs) -> BoundValue:
    """(n^5/8)(1 - c)^2 / 3; exactly one third of the matching upper term."""
    n, c = inp.n, inp.c
    return BoundValue("f2_lo", Fraction(n**5, 8) * (1 - c) ** 2 / 3, LOWER_MAIN)


def thm4_lower_main(inp: BoundInputs) -> BoundValue:
    """(l^2/n)(2 - rho^3/(6l)); the diameter-capped lower main term."""
    rho = _need_rho(inp)
    if inp.l == 0:
        raise ValueError("l must be positive for this bound")
    val = Fraction(inp.l**2, inp.n) * (2 - Fraction(rho**3, 6 * inp.l))
    return BoundValue("thm4_lo", val, LOWER_MAIN)


def peeling_total_lower(inp: BoundInputs) -> BoundValue:
    """(l^2/n)(2 - rho^3/(6l) - 90n^2/l - 6n/l); finite-n peeling total."""
    rho = _need_rho(inp)
    if inp.l == 0:
        raise ValueError("l must be positive for this bound")
    n, l = inp.n, inp.l
    inner = 2 - Fraction(rho**3, 6 * l) - Fraction(90 * n**2, l) - Fraction(6 * n, l)
    return BoundValue("peel_total_lo", Fraction(l**2, n) * inner, EXACT_FINITE)


def lemma_caps(n: int, rho: int) -> tuple[Fraction, Fraction]:
    """(35 n^2, rho^3/6 + 20 n^2) as exact rationals."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 0 <= rho <= n:
        raise ValueError(f"need 0 <= rho <= n, got {rho}")
    return Fraction(35 * n**2), Fraction(rho**3, 6) + 20 * n**2


def _crossover_margin(n: int, c: Fraction, alpha: int) -> Fraction:
    lhs = Fraction(n**5, 8) * (1 - 2 * c - Fraction(10, n) + Fraction(20, n) * c)
    rhs = (c * comb(n, 3)) ** 2 / Fraction(2 * alpha)
    return lhs - rhs


def crossover_check(inp: BoundInputs) -> bool:
    """Whether the diameter-free dense lower bound beats l^2/(2 alpha) at
    cardinality c * C(n,3):

        (n^5/8)(1 - 2c - 10/n + 20c/n)  >=  (c C(n,3))^2 / (2 alpha)

    Exact rationals at the finite n given.  Holds for small c, fails near
    c = 1; the boundary sits near c = 0.4868 for large n.
    """
    return _crossover_margin(inp.n, inp.c, _need_alpha(inp)) >= 0


def crossover_threshold(n: int = 10**6, tol: float = 1e-7,
                        alpha: Optional[int] = None) -> float:
    """Root of the crossover margin in c, by bisection on [0, 1]."""
    a = n if alpha is None else alpha
    if a <= 0:
        raise ValueError("alpha must be positive")
    lo, hi = Fraction(0), Fraction(1)
    if _crossover_margin(n, lo, a) < 0:
        return 0.0
    width = Fraction(tol)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _crossover_margin(n, mid, a) >= 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)
