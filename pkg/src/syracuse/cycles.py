"""Ascendancy sets, cycle-equation scanning and cycle detection.

The ascendancy of an involved odd N is the ordered set of involved odd
numbers whose jump image is N. A brute-force generator (scan the reversal
exponents) is the ground truth; the closed generator produces the same
list from parity and mod-3 conditions without trial division and raises
if the two ever disagree.

The cycle-equation scanner evaluates the two displayed rational solutions
of "i-th jump value equals m-th ascendant" over a bounded grid, keeps the
nonnegative integer hits, and re-validates each end-to-end before calling
it genuine; raw integrality alone is reported as an index-convention
artifact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from io import StringIO
from typing import Iterator

from .core import DEFAULT_BUDGET, jcf, reversal_natural, step

__all__ = [
    "Ascendant",
    "AscendancySearchExhausted",
    "AscendancyMismatchError",
    "ascendancy_bruteforce",
    "ascendancy_closed",
    "class1_exponent",
    "CycleEquationInstance",
    "cycle_equation_n",
    "cycle_equation_denominator",
    "ScanHit",
    "ScanResult",
    "scan_cycle_equations",
    "scan_to_csv",
    "CycleRecord",
    "detect_cycle",
    "reduce_cycle",
]


@dataclass(frozen=True)
class Ascendant:
    """A jump preimage mu_k(N) = value together with its exponent k."""

    value: int
    exponent: int


class AscendancySearchExhausted(RuntimeError):
    """k_max was exhausted before `count` ascendants were found."""


class AscendancyMismatchError(RuntimeError):
    """Closed-form ascendancy disagreed with brute force."""

    def __init__(self, n: int, closed: list[Ascendant], brute: list[Ascendant]):
        super().__init__(f"ascendancy generators disagree for N={n}")
        self.n = n
        self.closed = closed
        self.brute = brute


def _require_involved_odd(n: int) -> None:
    if n < 1 or n % 2 == 0 or n % 3 == 0:
        raise ValueError(f"expected an involved odd number, got {n}")


def ascendancy_bruteforce(n: int, count: int, k_max: int = 200) -> list[Ascendant]:
    """First `count` involved odd preimages of n, by scanning exponents.

    Values come out in increasing exponent order, hence increasing in value.
    """
    _require_involved_odd(n)
    found: list[Ascendant] = []
    for k in range(1, k_max + 1):
        v = reversal_natural(n, k)
        if v is not None and v % 3 != 0:
            found.append(Ascendant(value=v, exponent=k))
            if len(found) == count:
                return found
    raise AscendancySearchExhausted(
        f"found only {len(found)} of {count} ascendants of {n} with k <= {k_max}"
    )


def class1_exponent(m: int) -> int:
    """Reversal exponent for the m-th closed-form candidate in class 1+6n.

    The geometric-sum candidate indexed by m corresponds to k = 2m + 2;
    this mapping is encoded here once and tested, never assumed elsewhere.
    """
    return 2 * m + 2


def _closed_candidates(n: int) -> Iterator[Ascendant]:
    """Closed-form ascendant stream for an involved odd n, no trial division.

    Class 1+6n0: even exponents k = 2m+2; the member is divisible by 3
    exactly when (n0 - m) = 1 mod 3, so those m are skipped.
    Class 5+6n0: odd exponents k; skipped exactly when (k - n0) = 1 mod 3.
    """
    r = n % 6
    n0 = (n - r) // 6
    en = n0 % 3
    if r == 1:
        for m in itertools.count(0):
            if (en - m) % 3 == 1:
                continue
            value = (4 ** (m + 1) - 1) // 3 + (1 << (2 * m + 3)) * n0
            yield Ascendant(value=value, exponent=class1_exponent(m))
    else:
        for k in itertools.count(1, 2):
            if (k - en) % 3 == 1:
                continue
            j = (k - 1) // 2
            value = 3 * 4**j + (4**j - 1) // 3 + (1 << (k + 1)) * n0
            yield Ascendant(value=value, exponent=k)


def ascendancy_closed(n: int, count: int, cross_check: bool = True) -> list[Ascendant]:
    """First `count` ascendants of n from the closed parity/mod-3 conditions.

    With cross_check (the default) the result is compared against
    ascendancy_bruteforce and AscendancyMismatchError carries both lists
    on any disagreement.
    """
    _require_involved_odd(n)
    closed = list(itertools.islice(_closed_candidates(n), count))
    if cross_check:
        k_max = max((a.exponent for a in closed), default=1) + 1
        brute = ascendancy_bruteforce(n, count, k_max=k_max)
        if closed != brute:
            raise AscendancyMismatchError(n, closed, brute)
    return closed


@dataclass(frozen=True)
class CycleEquationInstance:
    """Parameters (class, alpha vector, ascendant index) of one cycle equation."""

    class_r: int
    alphas: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if self.class_r not in (1, 5):
            raise ValueError(f"class_r must be 1 or 5, got {self.class_r}")
        if not self.alphas or any(a < 1 for a in self.alphas):
            raise ValueError(f"alphas must be nonempty positive, got {self.alphas}")
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")

    @property
    def i(self) -> int:
        return len(self.alphas)


def _jump_sum(alphas: tuple[int, ...]) -> int:
    """sum_{j=0}^{i-1} 3**(i-1-j) * 2**(alphas[0]+..+alphas[j-1])."""
    acc = 0
    shift = 0
    for a in alphas:
        acc = 3 * acc + (1 << shift)
        shift += a
    return acc


def cycle_equation_denominator(inst: CycleEquationInstance) -> int:
    """6*3**i - 2**(sum+m+1) (class 1) or 6*3**i - 3*2**(sum+m+1) (class 5).

    Never zero: equality would force a power of 3 to be even.
    """
    s = sum(inst.alphas)
    if inst.class_r == 1:
        return 6 * 3**inst.i - (1 << (s + inst.m + 1))
    return 6 * 3**inst.i - 3 * (1 << (s + inst.m + 1))


def _claimed_ascendant(inst: CycleEquationInstance, n: int) -> int:
    """Right-hand side of the equation: the displayed m-th ascendant value."""
    if inst.class_r == 1:
        return (4 ** (inst.m + 1) - 1) // 3 + (1 << (inst.m + 1)) * n
    return 5 * (1 << inst.m) + 3 * (1 << (inst.m + 1)) * n


def cycle_equation_n(inst: CycleEquationInstance) -> Fraction:
    """Exact rational n solving the displayed equation for this instance."""
    s = sum(inst.alphas)
    jump = _jump_sum(inst.alphas)
    if inst.class_r == 1:
        geo = (4 ** (inst.m + 1) - 1) // 3
        numerator = (1 << s) * geo - 3**inst.i - jump
    else:
        numerator = 5 * (1 << (s + inst.m)) - 5 * 3**inst.i - jump
    return Fraction(numerator, cycle_equation_denominator(inst))


@dataclass(frozen=True)
class ScanHit:
    """An integer solution of a cycle equation, with its validation verdict."""

    instance: CycleEquationInstance
    n: int
    value: int
    genuine: bool
    reason: str


@dataclass(frozen=True)
class ScanResult:
    i_max: int
    alpha_sum_max: int
    m_max: int
    hits: tuple[ScanHit, ...]

    @property
    def genuine(self) -> tuple[ScanHit, ...]:
        return tuple(h for h in self.hits if h.genuine)

    @property
    def artifacts(self) -> tuple[ScanHit, ...]:
        return tuple(h for h in self.hits if not h.genuine)


def _true_alpha_prefix(n: int, i: int) -> tuple[tuple[int, ...], int]:
    """Alpha vector of i jumps from n (halting disabled) and the i-th value."""
    v = n
    alphas = []
    for _ in range(i):
        v, a = jcf(v)
        alphas.append(a)
    return tuple(alphas), v


def _reconstruct(inst: CycleEquationInstance, n: int) -> tuple[bool, str]:
    """End-to-end validation of an integer hit.

    Genuine means: N = class + 6n is an odd natural whose true alpha
    vector matches the instance, whose i-th jump value equals the claimed
    ascendant, and that ascendant really is a jump preimage of N with the
    claimed exponent.
    """
    big_n = inst.class_r + 6 * n
    if big_n < 1 or big_n % 2 == 0 or big_n % 3 == 0:
        return False, f"N={big_n} is not an involved odd number"
    alphas, endpoint = _true_alpha_prefix(big_n, inst.i)
    if alphas != inst.alphas:
        return False, f"true alpha prefix {list(alphas)} differs from instance"
    claimed = _claimed_ascendant(inst, n)
    if endpoint != claimed:
        return False, f"jump endpoint {endpoint} differs from claimed ascendant {claimed}"
    k = class1_exponent(inst.m) if inst.class_r == 1 else inst.m
    if claimed < 1 or claimed % 2 == 0 or claimed % 3 == 0:
        return False, f"claimed ascendant {claimed} is not an involved odd number"
    value, alpha = jcf(claimed)
    if value != big_n or alpha != k:
        return False, (
            f"claimed ascendant {claimed} jumps to ({value}, alpha={alpha}), "
            f"not to ({big_n}, alpha={k})"
        )
    return True, "reconstructs end-to-end"


def _alpha_vectors(i: int, alpha_sum_max: int) -> Iterator[tuple[int, ...]]:
    """All vectors of i positive integers with sum <= alpha_sum_max."""

    def rec(remaining: int, left: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield prefix
            return
        for a in range(1, remaining - (left - 1) + 1):
            yield from rec(remaining - a, left - 1, prefix + (a,))

    yield from rec(alpha_sum_max, i, ())


def scan_cycle_equations(i_max: int, alpha_sum_max: int, m_max: int) -> ScanResult:
    """Every grid instance whose n is a nonnegative integer, validated.

    Grid points are independent; output is sorted by instance tuple so it
    is deterministic however the scan is scheduled.
    """
    if i_max < 1 or alpha_sum_max < 1 or m_max < 1:
        raise ValueError("scan bounds must be >= 1")
    hits: list[ScanHit] = []
    for class_r in (1, 5):
        for i in range(1, i_max + 1):
            for alphas in _alpha_vectors(i, alpha_sum_max):
                for m in range(m_max + 1):
                    inst = CycleEquationInstance(class_r=class_r, alphas=alphas, m=m)
                    n = cycle_equation_n(inst)
                    if n.denominator != 1 or n < 0:
                        continue
                    genuine, reason = _reconstruct(inst, int(n))
                    hits.append(
                        ScanHit(
                            instance=inst,
                            n=int(n),
                            value=class_r + 6 * int(n),
                            genuine=genuine,
                            reason=reason,
                        )
                    )
    hits.sort(key=lambda h: (h.instance.class_r, h.instance.i, h.instance.alphas, h.instance.m))
    return ScanResult(i_max=i_max, alpha_sum_max=alpha_sum_max, m_max=m_max, hits=tuple(hits))


def scan_to_csv(result: ScanResult) -> str:
    """CSV rows (class, i, alphas, m, n numerator/denominator, genuine flag)."""
    out = StringIO()
    out.write("class,i,alphas,m,n_numerator,n_denominator,genuine\n")
    for h in result.hits:
        alphas = ";".join(str(a) for a in h.instance.alphas)
        out.write(
            f"{h.instance.class_r},{h.instance.i},{alphas},{h.instance.m},"
            f"{h.n},1,{str(h.genuine).lower()}\n"
        )
    return out.getvalue()


@dataclass(frozen=True)
class CycleRecord:
    """A detected cycle: entry index theta, period s, ordered members."""

    theta: int
    s: int
    members: tuple[int, ...]


def reduce_cycle(members: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Reduce a cycle to its minimal period."""
    members = tuple(members)
    n = len(members)
    for d in range(1, n + 1):
        if n % d == 0 and all(members[i] == members[i % d] for i in range(n)):
            return members[:d]
    return members


def detect_cycle(n: int, budget: int = DEFAULT_BUDGET) -> CycleRecord | None:
    """First repeated value under the pure step map (halting disabled).

    Returns the irreducible cycle, or None when the budget runs out; the
    latter never claims a cycle does not exist, only absence within budget.
    """
    if n < 1:
        raise ValueError(f"detect_cycle requires n >= 1, got {n}")
    seen: dict[int, int] = {}
    trail: list[int] = []
    v = n
    for _ in range(budget + 1):
        if v in seen:
            members = reduce_cycle(tuple(trail[seen[v] :]))
            return CycleRecord(theta=seen[v], s=len(members), members=members)
        seen[v] = len(trail)
        trail.append(v)
        v = step(v)
    return None
