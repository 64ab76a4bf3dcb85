"""Exact arithmetic kernel for the Syracuse (3x+1) dynamics.

Everything works on plain Python integers or `fractions.Fraction`; no
floating point anywhere. The step map is pure (it does not halt at 1);
halting is a property of `syracuse_sequence`, so the same kernel serves
cycle detection with halting disabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

DEFAULT_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    """A step budget ran out before the computation finished."""

    def __init__(self, start: int, budget: int):
        super().__init__(f"step budget {budget} exhausted while iterating from {start}")
        self.start = start
        self.budget = budget


def ord2(n: int) -> int:
    """Largest e such that 2**e divides n. Requires n >= 1."""
    if n < 1:
        raise ValueError(f"ord2 requires n >= 1, got {n}")
    return (n & -n).bit_length() - 1


def step(n: int) -> int:
    """One transformation: 3n+1 if n is odd, n/2 if n is even.

    Pure map on positive integers; step(1) = 4.
    """
    if n < 1:
        raise ValueError(f"step requires n >= 1, got {n}")
    return 3 * n + 1 if n & 1 else n >> 1


def jcf(n: int) -> tuple[int, int]:
    """Odd-to-odd jump: returns ((3n+1) / 2**alpha, alpha) with alpha = ord2(3n+1).

    Compresses one odd step and all following even steps; the value is odd.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"jcf requires an odd n >= 1, got {n}")
    m = 3 * n + 1
    a = ord2(m)
    return m >> a, a


@dataclass(frozen=True)
class JcfExpansion:
    """Recorded iteration of the odd-to-odd jump from `start`.

    `alphas[p]` is the 2-adic valuation consumed by jump p+1 and
    `values[p]` the (odd) value after it. `halted` is set when 1 was
    reached, which stops the iteration early.
    """

    start: int
    alphas: tuple[int, ...]
    values: tuple[int, ...]
    halted: bool

    def __post_init__(self) -> None:
        if len(self.alphas) != len(self.values):
            raise ValueError("alphas and values must have equal length")

    @property
    def i(self) -> int:
        return len(self.alphas)


def jcf_iter(n: int, i: int, budget: int = DEFAULT_BUDGET) -> JcfExpansion:
    """Iterate the odd-to-odd jump up to i times, recording alphas and values.

    Stops early (with halted=True) once the value 1 is produced. Raises
    BudgetExceededError when the elementary-step budget (one per odd step
    plus one per halving) runs out first.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"jcf_iter requires an odd n >= 1, got {n}")
    if i < 1:
        raise ValueError(f"jcf_iter requires i >= 1, got {i}")
    alphas: list[int] = []
    values: list[int] = []
    v = n
    spent = 0
    for _ in range(i):
        v, a = jcf(v)
        spent += 1 + a
        if spent > budget:
            raise BudgetExceededError(n, budget)
        alphas.append(a)
        values.append(v)
        if v == 1:
            break
    return JcfExpansion(start=n, alphas=tuple(alphas), values=tuple(values), halted=values[-1] == 1)


def jcf_closed_form(n: int, alphas: Sequence[int]) -> Fraction:
    """Evaluate the nested-jump closed form for the given alpha vector, exactly.

    With i = len(alphas) and prefix sums C_j = alphas[0] + ... + alphas[j-1]
    (empty sum 0), returns

        (3**i * n + sum_{j=0}^{i-1} 3**(i-1-j) * 2**C_j) / 2**C_i

    as a Fraction. The result equals the i-th jump value exactly when
    `alphas` is the true valuation vector of the trajectory; for any other
    vector the quotient is still well defined (and typically not an odd
    integer), which is why the return type is a rational, not an int.
    """
    if not alphas:
        raise ValueError("alphas must be nonempty")
    if any(a < 1 for a in alphas):
        raise ValueError(f"alphas must be positive, got {list(alphas)}")
    num = n
    shift = 0
    for a in alphas:
        num = 3 * num + (1 << shift)
        shift += a
    return Fraction(num, 1 << shift)


@dataclass(frozen=True)
class SyracuseTrace:
    """Ordered trajectory of one start value.

    terms[0] == start and terms[j+1] == step(terms[j]). When halted, the
    last term is 1 and 1 occurs exactly once. flight_time counts the
    transformations applied, i.e. len(terms) - 1.
    """

    start: int
    terms: tuple[int, ...]
    flight_time: int
    max_value: int
    halted: bool
    budget: int


def syracuse_sequence(n: int, budget: int = DEFAULT_BUDGET) -> SyracuseTrace:
    """Trajectory of n, halting at the first occurrence of 1 or at the budget.

    Budget exhaustion sets halted=False instead of looping forever.
    """
    if n < 1:
        raise ValueError(f"syracuse_sequence requires n >= 1, got {n}")
    terms = [n]
    v = n
    peak = n
    halted = v == 1
    while not halted and len(terms) <= budget:
        v = 3 * v + 1 if v & 1 else v >> 1
        terms.append(v)
        if v > peak:
            peak = v
        if v == 1:
            halted = True
    return SyracuseTrace(
        start=n,
        terms=tuple(terms),
        flight_time=len(terms) - 1,
        max_value=peak,
        halted=halted,
        budget=budget,
    )


def reversal(n: int, k: int) -> Fraction:
    """Candidate jump preimage (2**k * n - 1) / 3, as an exact rational."""
    if n < 1:
        raise ValueError(f"reversal requires n >= 1, got {n}")
    if k < 1:
        raise ValueError(f"reversal requires k >= 1, got {k}")
    return Fraction((1 << k) * n - 1, 3)


def reversal_natural(n: int, k: int) -> int | None:
    """The reversal value when it is an odd natural number, else None."""
    m = (1 << k) * n - 1
    if m % 3 != 0:
        return None
    v = m // 3
    return v if v >= 1 and v % 2 == 1 else None
