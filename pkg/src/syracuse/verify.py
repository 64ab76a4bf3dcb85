"""Statement-by-statement empirical checks and the batch oneness verifier.

verify_statement runs one registered check and returns a reproducible
VerificationReport. batch_verify confirms every integer in a range
reaches 1 (full-trace mode) or some value below its start (drop-below
mode, sound for ascending contiguous ranges), with a chunked kernel that
is vectorized for the drop cutoff and memoized for full traces; chunk
summaries merge associatively so worker count never changes any report
field except throughput.
"""

from __future__ import annotations

import csv
import inspect
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from io import StringIO
from typing import Callable, Iterable

import numpy as np

from .core import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    jcf,
    jcf_closed_form,
    jcf_iter,
    reversal_natural,
    step,
    syracuse_sequence,
)
from .cycles import ascendancy_bruteforce, ascendancy_closed, detect_cycle, reduce_cycle
from .forms import FORMS, is_involved, involved_by_search
from .routes import (
    CongruenceChain,
    Triplet,
    enumerate_all_anchors,
    enumerate_increasing_routes,
    enumerate_increasing_triplets,
    route_witness,
    triplet_is_increasing,
)

__all__ = [
    "VerificationReport",
    "UnknownStatementError",
    "registered_statements",
    "verify_statement",
    "report_to_json",
    "BatchConfig",
    "BatchReport",
    "batch_verify",
    "batch_report_to_json",
    "CensusReport",
    "flight_census",
    "census_to_csv",
]

MEMO_CAP = 1 << 24


# ---------------------------------------------------------------------------
# statement checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one registered check; reproducible given its parameters."""

    statement_id: str
    parameters: dict
    passed: bool
    witnesses: tuple
    elapsed: float = field(compare=False, default=0.0)


class UnknownStatementError(ValueError):
    def __init__(self, statement_id: str, known: Iterable[str]):
        super().__init__(
            f"unknown statement id {statement_id!r}; registered: {', '.join(known)}"
        )


def _check_suffix(n_max: int = 300, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """Trajectory of any term equals the suffix of the full trajectory."""
    bad = []
    for n in range(1, n_max + 1):
        trace = syracuse_sequence(n, budget)
        if not trace.halted:
            bad.append({"n": n, "problem": "budget exhausted"})
            continue
        for j in range(1, len(trace.terms)):
            sub = syracuse_sequence(trace.terms[j], budget)
            if sub.terms != trace.terms[j:]:
                bad.append({"n": n, "index": j})
                break
    return not bad, bad


def _check_closed_form(n_max: int = 2000, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """Closed form equals the iterated jump on every true alpha prefix."""
    bad = []
    for n in range(1, n_max + 1, 2):
        if n % 3 == 0:
            continue
        exp = jcf_iter(n, budget, budget=budget)
        for i in range(1, exp.i + 1):
            value = jcf_closed_form(n, exp.alphas[:i])
            if value != exp.values[i - 1]:
                bad.append({"n": n, "prefix": i, "closed_form": str(value)})
                break
    return not bad, bad


def _check_preimage_oneness(
    n_max: int = 1000, count: int = 3, budget: int = DEFAULT_BUDGET
) -> tuple[bool, list]:
    """If a number reaches 1, each of its first ascendants reaches 1 too."""
    bad = []
    for n in range(1, n_max + 1, 2):
        if n % 3 == 0:
            continue
        if not syracuse_sequence(n, budget).halted:
            bad.append({"n": n, "problem": "budget exhausted"})
            continue
        for asc in ascendancy_bruteforce(n, count, k_max=80):
            if not syracuse_sequence(asc.value, budget).halted:
                bad.append({"n": n, "ascendant": asc.value})
    return not bad, bad


def _check_even_involvement(n_max: int = 10**4) -> tuple[bool, list]:
    """Odd-step images land in class 4 mod 6; even classifier matches the oracle."""
    bad = []
    for x in range(1, n_max + 1, 2):
        if (3 * x + 1) % 6 != 4:
            bad.append({"odd": x, "image": 3 * x + 1})
    for n in range(2, n_max + 1, 2):
        if is_involved(n) != involved_by_search(n):
            bad.append({"even": n})
    return not bad, bad


def _check_class3_not_involved(n_max: int = 10**4) -> tuple[bool, list]:
    """Odd multiples of 3 admit no jump preimage, and jumps never produce them."""
    bad = []
    for n in range(3, n_max + 1, 6):
        if is_involved(n) or involved_by_search(n):
            bad.append({"n": n})
    for n in range(1, n_max + 1, 2):
        if jcf(n)[0] % 6 == 3:
            bad.append({"n": n, "image": jcf(n)[0]})
    return not bad, bad


def _triplet_domain() -> list[Triplet]:
    return [
        Triplet(a, b, c)
        for a in range(5)
        for b in range(3)
        for c in range(3)
        if a + b + c >= 1
    ]


def _check_triplet_laws() -> tuple[bool, list]:
    """(n,0,0) is increasing for n<=4; c=0 below n=4; monotone trade laws."""
    bad = []
    for n in range(1, 5):
        if not triplet_is_increasing(Triplet(n, 0, 0)):
            bad.append({"triplet": (n, 0, 0)})
    for t in enumerate_increasing_triplets():
        if t.n < 4 and t.c > 0:
            bad.append({"triplet": (t.a, t.b, t.c), "problem": "c > 0 below n = 4"})
    domain = {(t.a, t.b, t.c) for t in _triplet_domain()}
    for t in _triplet_domain():
        ups = [(t.a + 1, t.b - 1, t.c), (t.a + 1, t.b, t.c - 1), (t.a, t.b + 1, t.c - 1)]
        if triplet_is_increasing(t):
            for u in ups:
                if u in domain and not triplet_is_increasing(Triplet(*u)):
                    bad.append({"triplet": (t.a, t.b, t.c), "derived": u})
        downs = [(t.a - 1, t.b + 1, t.c), (t.a - 1, t.b, t.c + 1), (t.a, t.b - 1, t.c + 1)]
        if not triplet_is_increasing(t):
            for u in downs:
                if u in domain and triplet_is_increasing(Triplet(*u)):
                    bad.append({"triplet": (t.a, t.b, t.c), "derived": u})
    return not bad, bad


def _check_route_bounds() -> tuple[bool, list]:
    """Increasing routes have at most one c-visit and length at most 7."""
    bad = []
    trips = enumerate_increasing_triplets()
    if max(t.c for t in trips) != 1:
        bad.append({"problem": "max c is not 1"})
    if max(t.n for t in trips) != 7:
        bad.append({"problem": "max length is not 7"})
    for t in _triplet_domain():
        if t.n == 8 and triplet_is_increasing(t):
            bad.append({"triplet": (t.a, t.b, t.c), "problem": "length 8 increases"})
    for anchor in FORMS:
        for route in enumerate_increasing_routes(anchor, max_len=8):
            if route.length > 7:
                bad.append({"route": route.labels()})
    return not bad, bad


def _check_route_witnesses(
    witness_bound: int = 10**6, chains: int = 1000, seed: int = 0
) -> tuple[bool, list]:
    """Every enumerated route is realized by a concrete odd start whose
    scalar lies in the composed congruence class; chain closed form fuzz."""
    bad = []
    for anchor, routes in enumerate_all_anchors().items():
        for route in routes:
            witness = route_witness(route, bound=witness_bound)
            if witness is None:
                bad.append({"route": route.labels(), "problem": "no witness"})
    rng = random.Random(seed)
    for _ in range(chains):
        length = rng.randint(1, 6)
        moduli = tuple(rng.choice((2, 4, 8)) for _ in range(length))
        residues = tuple(rng.randrange(m) for m in moduli)
        chain = CongruenceChain(moduli=moduli, residues=residues)
        k_last = rng.randrange(0, 1 << 20)
        if chain.closed_form(k_last) != chain.substitute(k_last):
            bad.append({"moduli": moduli, "residues": residues, "k": k_last})
    return not bad, bad


def _check_cycle_reduction(n_max: int = 200, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """Detected cycles are irreducible: period s and no proper divisor period.

    Note: the projector exponent reading "s-1" is ambiguous in places;
    the period tested here is s, the member count.
    """
    bad = []
    if reduce_cycle((4, 2, 1, 4, 2, 1)) != (4, 2, 1):
        bad.append({"problem": "reduce_cycle failed on a doubled cycle"})
    for n in range(1, n_max + 1):
        rec = detect_cycle(n, budget)
        if rec is None:
            bad.append({"n": n, "problem": "no cycle within budget"})
            continue
        v = rec.members[0]
        for _ in range(rec.s):
            v = step(v)
        if v != rec.members[0]:
            bad.append({"n": n, "problem": "period law fails"})
        for d in range(1, rec.s):
            if rec.s % d == 0:
                u = rec.members[0]
                for _ in range(d):
                    u = step(u)
                if u == rec.members[0]:
                    bad.append({"n": n, "problem": f"proper period {d}"})
    return not bad, bad


def _check_unique_cycle(n_max: int = 10**4, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """Every detected cycle is a rotation of (4, 2, 1)."""
    bad = []
    for n in range(1, n_max + 1):
        rec = detect_cycle(n, budget)
        if rec is None or rec.s != 3 or set(rec.members) != {1, 2, 4}:
            bad.append({"n": n, "cycle": None if rec is None else rec.members})
    return not bad, bad


def _check_trace_ascendancy(n_max: int = 2000, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """Each odd term's predecessor is its preimage at the recorded alpha."""
    bad = []
    for n in range(1, n_max + 1, 2):
        if n % 3 == 0:
            continue
        exp = jcf_iter(n, budget, budget=budget)
        prev = n
        for a, v in zip(exp.alphas, exp.values):
            if reversal_natural(v, a) != prev or prev % 3 == 0:
                bad.append({"n": n, "term": v, "alpha": a})
                break
            prev = v
    return not bad, bad


def _check_non_transitive() -> tuple[bool, list]:
    """17 is an ascendant of 13 and 13 of 5, yet 17 is not an ascendant of 5."""
    a13 = ascendancy_bruteforce(13, 1, k_max=10)
    a5 = ascendancy_bruteforce(5, 2, k_max=10)
    ok = (
        a13[0].value == 17
        and a5[0].value == 13
        and 17 not in {a.value for a in a5}
        and a5[1].value > 17
    )
    return ok, [{"witness": (17, 13, 5)}]


def _check_disjoint_ascendancies(n_max: int = 2000, count: int = 10) -> tuple[bool, list]:
    """First-`count` ascendancy lists of distinct numbers never intersect."""
    owner: dict[int, int] = {}
    bad = []
    for n in range(1, n_max + 1, 2):
        if n % 3 == 0:
            continue
        for asc in ascendancy_bruteforce(n, count, k_max=120):
            if asc.value in owner:
                bad.append({"value": asc.value, "owners": (owner[asc.value], n)})
            owner[asc.value] = n
    return not bad, bad


def _check_ascendancy_closed(n_max: int = 2000, count: int = 10) -> tuple[bool, list]:
    """Closed-form ascendancy generator equals brute force."""
    bad = []
    for n in range(1, n_max + 1, 2):
        if n % 3 == 0:
            continue
        closed = ascendancy_closed(n, count, cross_check=False)
        k_max = closed[-1].exponent + 1
        if closed != ascendancy_bruteforce(n, count, k_max=k_max):
            bad.append({"n": n})
    return not bad, bad


def _check_finite_maximum(n_max: int = 10**4, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """Halted traces have a finite maximum bounding the member count."""
    report = flight_census(1, n_max, budget=budget)
    return not report.card_violations, list(report.card_violations)


def _check_no_repetition(n_max: int = 10**4, budget: int = DEFAULT_BUDGET) -> tuple[bool, list]:
    """No value repeats before 1 in a halted trace."""
    report = flight_census(1, n_max, budget=budget)
    return not report.distinct_violations, list(report.distinct_violations)


_REGISTRY: dict[str, tuple[Callable[..., tuple[bool, list]], dict]] = {
    "1.1": (_check_suffix, {"n_max": 300}),
    "1.2": (_check_closed_form, {"n_max": 2000}),
    "1.4": (_check_preimage_oneness, {"n_max": 1000}),
    "1.6": (_check_even_involvement, {"n_max": 10**4}),
    "1.7": (_check_class3_not_involved, {"n_max": 10**4}),
    "2.3": (_check_triplet_laws, {}),
    "2.4": (_check_route_bounds, {}),
    "2.5": (_check_route_witnesses, {"witness_bound": 10**6, "chains": 1000, "seed": 0}),
    "3.1": (_check_cycle_reduction, {"n_max": 200}),
    "3.2": (_check_unique_cycle, {"n_max": 10**4}),
    "3.5": (_check_trace_ascendancy, {"n_max": 2000}),
    "3.6": (_check_non_transitive, {}),
    "3.7": (_check_disjoint_ascendancies, {"n_max": 2000}),
    "3.8": (_check_ascendancy_closed, {"n_max": 2000}),
    "4.1": (_check_finite_maximum, {"n_max": 10**4}),
    "4.2": (_check_no_repetition, {"n_max": 10**4}),
}


def registered_statements() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def verify_statement(statement_id: str, **params: object) -> VerificationReport:
    """Run one registered check; unknown ids are rejected with the known list.

    Parameters the check does not take (e.g. a range for a fixed-witness
    check) are dropped; the report records what was actually used.
    """
    if statement_id not in _REGISTRY:
        raise UnknownStatementError(statement_id, _REGISTRY)
    fn, defaults = _REGISTRY[statement_id]
    accepted = inspect.signature(fn).parameters
    merged = {k: v for k, v in {**defaults, **params}.items() if k in accepted}
    started = time.perf_counter()
    passed, witnesses = fn(**merged)
    return VerificationReport(
        statement_id=statement_id,
        parameters=merged,
        passed=passed,
        witnesses=tuple(witnesses),
        elapsed=time.perf_counter() - started,
    )


def report_to_json(report: VerificationReport) -> str:
    payload = {
        "statement": report.statement_id,
        "parameters": report.parameters,
        "passed": report.passed,
        "witnesses": list(report.witnesses),
        "elapsed": report.elapsed,
    }
    return json.dumps(payload, sort_keys=True, default=str)


# ---------------------------------------------------------------------------
# batch verification
# ---------------------------------------------------------------------------

_INT64_GUARD = (1 << 62) // 3  # values above this leave the vector kernel


@dataclass(frozen=True)
class BatchConfig:
    """Parameters of one batch run; the report is a pure function of these."""

    lo: int
    hi: int
    workers: int = 1
    cutoff: str = "drop-below-start"  # or "full-trace"
    sieve: bool = False
    budget: int = DEFAULT_BUDGET
    chunk_size: int = 1 << 22
    collect_drops: bool = False

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < self.lo:
            raise ValueError(f"need 1 <= lo <= hi, got [{self.lo}, {self.hi}]")
        if self.cutoff not in ("drop-below-start", "full-trace"):
            raise ValueError(f"unknown cutoff {self.cutoff!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.collect_drops and self.hi - self.lo > 10**6:
            raise ValueError("drop collection is for instrumented small ranges only")


@dataclass(frozen=True)
class BatchReport:
    """Aggregated outcome: every N in range reached 1 or fell below its start."""

    lo: int
    hi: int
    verified_count: int
    max_flight_time: int
    max_flight_argmax: int
    max_excursion: int
    max_excursion_argmax: int
    cutoff: str
    throughput: float = field(compare=False, default=0.0)
    elapsed: float = field(compare=False, default=0.0)
    drops: tuple[tuple[int, int], ...] | None = None


@dataclass
class _Summary:
    count: int = 0
    max_fl: int = -1
    max_fl_n: int = -1
    max_pk: int = -1
    max_pk_n: int = -1
    drops: list | None = None

    def note_flight(self, n: int, fl: int) -> None:
        if fl > self.max_fl or (fl == self.max_fl and n < self.max_fl_n):
            self.max_fl, self.max_fl_n = fl, n

    def note_peak(self, n: int, pk: int) -> None:
        if pk > self.max_pk or (pk == self.max_pk and n < self.max_pk_n):
            self.max_pk, self.max_pk_n = pk, n

    def note(self, n: int, fl: int, pk: int) -> None:
        self.note_flight(n, fl)
        self.note_peak(n, pk)

    def merge(self, other: "_Summary") -> None:
        self.count += other.count
        if other.max_fl > self.max_fl or (
            other.max_fl == self.max_fl and other.max_fl_n < self.max_fl_n
        ):
            self.max_fl, self.max_fl_n = other.max_fl, other.max_fl_n
        if other.max_pk > self.max_pk or (
            other.max_pk == self.max_pk and other.max_pk_n < self.max_pk_n
        ):
            self.max_pk, self.max_pk_n = other.max_pk, other.max_pk_n
        if other.drops is not None:
            if self.drops is None:
                self.drops = []
            self.drops.extend(other.drops)


def _drop_stats_scalar(n: int, budget: int) -> tuple[int, int, int]:
    """(steps, peak, landing) until the trajectory falls below n; oracle path."""
    if n == 1:
        return 0, 1, 1
    v, fl, pk = n, 0, n
    while v >= n:
        v = 3 * v + 1 if v & 1 else v >> 1
        fl += 1
        if v > pk:
            pk = v
        if fl > budget:
            raise BudgetExceededError(n, budget)
    return fl, pk, v


def _note_vector(summary: _Summary, ns: np.ndarray, fl: np.ndarray, pk: np.ndarray) -> None:
    if len(ns) == 0:
        return
    best_fl = int(fl.max())
    summary.note_flight(int(ns[fl == best_fl].min()), best_fl)
    best_pk = int(pk.max())
    summary.note_peak(int(ns[pk == best_pk].min()), best_pk)


def _drop_chunk(lo: int, hi: int, budget: int, sieve: bool, collect: bool) -> _Summary:
    """Drop-below-start summary for [lo, hi] (numpy kernel)."""
    s = _Summary(drops=[] if collect else None)
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    s.count = len(ns)
    if lo <= 1 <= hi:
        s.note(1, 0, 1)  # 1 is confirmed by equality with 1
        if collect:
            s.drops.append((1, 1))
    evens = ns[ns % 2 == 0]
    if sieve:
        # skip non-involved evens: their oneness follows from N/2, which
        # precedes them in ascending order
        evens = evens[evens % 6 == 4]
    if len(evens):
        _note_vector(s, evens, np.ones(len(evens), np.int64), evens)
        if collect:
            s.drops.extend((int(n), int(n) >> 1) for n in ns[ns % 2 == 0])
    m1 = ns[(ns % 4 == 1) & (ns > 1)]
    if len(m1):
        # n -> 3n+1 -> (3n+1)/2 -> (3n+1)/4 < n: three steps, peak 3n+1
        _note_vector(s, m1, np.full(len(m1), 3, np.int64), 3 * m1 + 1)
        if collect:
            s.drops.extend((int(n), (3 * int(n) + 1) >> 2) for n in m1)
    start = ns[ns % 4 == 3]
    v = start.copy()
    fl = np.zeros(len(start), np.int64)
    pk = start.copy()
    live_start = start
    steps = 0
    while len(v):
        big = v > _INT64_GUARD
        if big.any():
            for j in np.nonzero(big)[0]:
                dfl, dpk, land = _drop_stats_scalar(int(live_start[j]), budget)
                s.note(int(live_start[j]), dfl, dpk)
                if collect:
                    s.drops.append((int(live_start[j]), land))
            keep = ~big
            v, fl, pk, live_start = v[keep], fl[keep], pk[keep], live_start[keep]
            if not len(v):
                break
        odd = (v & 1).astype(bool)
        v = np.where(odd, 3 * v + 1, v >> 1)
        fl += 1
        np.maximum(pk, v, out=pk)
        steps += 1
        if steps > budget:
            raise BudgetExceededError(int(live_start[0]), budget)
        done = v < live_start
        if done.any():
            _note_vector(s, live_start[done], fl[done], pk[done])
            if collect:
                s.drops.extend(
                    (int(a), int(b)) for a, b in zip(live_start[done], v[done])
                )
            keep = ~done
            v, fl, pk, live_start = v[keep], fl[keep], pk[keep], live_start[keep]
    return s


def _flight_peak_memod(
    n: int, memo: dict[int, tuple[int, int]], budget: int, cap: int
) -> tuple[int, int]:
    """Full flight time and trace maximum of n, memoized below the cap."""
    path: list[int] = []
    v = n
    while v != 1 and v not in memo:
        path.append(v)
        v = 3 * v + 1 if v & 1 else v >> 1
        if len(path) > budget:
            raise BudgetExceededError(n, budget)
    fl, pk = (0, 1) if v == 1 else memo[v]
    for u in reversed(path):
        fl += 1
        if u > pk:
            pk = u
        if len(memo) < cap:
            memo[u] = (fl, pk)
    return fl, pk


def _full_chunk(lo: int, hi: int, budget: int, sieve: bool, collect: bool) -> _Summary:
    """Full-trace summary for [lo, hi] (scalar kernel with per-worker memo)."""
    s = _Summary(drops=[] if collect else None)
    memo: dict[int, tuple[int, int]] = {}
    for n in range(lo, hi + 1):
        s.count += 1
        if sieve and n % 2 == 0 and n % 6 != 4:
            if collect:
                s.drops.append((n, n >> 1))
            continue  # oneness established via the forward image n/2
        fl, pk = _flight_peak_memod(n, memo, budget, MEMO_CAP)
        s.note(n, fl, pk)
        if collect:
            s.drops.append((n, 1))
    return s


def _run_chunk(args: tuple) -> _Summary:
    lo, hi, cutoff, budget, sieve, collect = args
    if cutoff == "drop-below-start":
        return _drop_chunk(lo, hi, budget, sieve, collect)
    return _full_chunk(lo, hi, budget, sieve, collect)


def batch_verify(config: BatchConfig) -> BatchReport:
    """Confirm every N in [lo, hi] reaches 1 (full-trace) or falls below its
    start (drop-below-start; inductively sound for ascending ranges).

    Budget exhaustion on any N raises BudgetExceededError carrying that N
    as witness; nothing is silently skipped.
    """
    started = time.perf_counter()
    chunks = []
    a = config.lo
    while a <= config.hi:
        b = min(a + config.chunk_size - 1, config.hi)
        chunks.append((a, b, config.cutoff, config.budget, config.sieve, config.collect_drops))
        a = b + 1
    total = _Summary(drops=[] if config.collect_drops else None)
    if config.workers == 1 or len(chunks) == 1:
        for ch in chunks:
            total.merge(_run_chunk(ch))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for summary in pool.map(_run_chunk, chunks):
                total.merge(summary)
    elapsed = time.perf_counter() - started
    return BatchReport(
        lo=config.lo,
        hi=config.hi,
        verified_count=total.count,
        max_flight_time=total.max_fl,
        max_flight_argmax=total.max_fl_n,
        max_excursion=total.max_pk,
        max_excursion_argmax=total.max_pk_n,
        cutoff=config.cutoff,
        throughput=total.count / elapsed if elapsed > 0 else 0.0,
        elapsed=elapsed,
        drops=tuple(sorted(total.drops)) if total.drops is not None else None,
    )


def batch_report_to_json(report: BatchReport) -> str:
    payload = {
        "lo": report.lo,
        "hi": report.hi,
        "verified_count": report.verified_count,
        "max_flight_time": report.max_flight_time,
        "max_flight_argmax": report.max_flight_argmax,
        "max_excursion": report.max_excursion,
        "max_excursion_argmax": report.max_excursion_argmax,
        "cutoff": report.cutoff,
        "throughput": report.throughput,
        "elapsed": report.elapsed,
    }
    return json.dumps(payload, sort_keys=True)


# ---------------------------------------------------------------------------
# flight census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusReport:
    """Flight-time histogram plus the counting-bound checks.

    card_violations lists N whose member count exceeds the trace maximum;
    distinct_violations lists N with a repeated pre-1 term.
    """

    lo: int
    hi: int
    histogram: tuple[tuple[int, int], ...]
    max_flight: int
    max_flight_argmax: int
    card_violations: tuple[dict, ...]
    distinct_violations: tuple[dict, ...]


def flight_census(lo: int, hi: int, budget: int = DEFAULT_BUDGET) -> CensusReport:
    """Histogram of flight times over [lo, hi] with per-trace bound checks."""
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    hist: dict[int, int] = {}
    card_bad: list[dict] = []
    distinct_bad: list[dict] = []
    max_fl, max_fl_n = -1, -1
    for n in range(lo, hi + 1):
        trace = syracuse_sequence(n, budget)
        if not trace.halted:
            raise BudgetExceededError(n, budget)
        hist[trace.flight_time] = hist.get(trace.flight_time, 0) + 1
        if trace.flight_time > max_fl:
            max_fl, max_fl_n = trace.flight_time, n
        if len(trace.terms) > trace.max_value:
            card_bad.append({"n": n, "card": len(trace.terms), "max": trace.max_value})
        if len(set(trace.terms)) != len(trace.terms):
            distinct_bad.append({"n": n})
    return CensusReport(
        lo=lo,
        hi=hi,
        histogram=tuple(sorted(hist.items())),
        max_flight=max_fl,
        max_flight_argmax=max_fl_n,
        card_violations=tuple(card_bad),
        distinct_violations=tuple(distinct_bad),
    )


def census_to_csv(report: CensusReport) -> str:
    out = StringIO()
    writer = csv.writer(out)
    writer.writerow(["lo", "hi", "flight_time", "count"])
    for flight, count in report.histogram:
        writer.writerow([report.lo, report.hi, flight, count])
    return out.getvalue()
