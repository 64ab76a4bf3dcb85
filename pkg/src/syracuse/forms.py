"""Residue-class calculus for the 3x+1 dynamics.

Involvement classification mod 6, the decomposition of involved odd numbers
into the eight forms r + 6(q + 4k) (r in {1,5}, q in 0..3), the one-jump
transition map between those forms, and ruler-sequence statistics over the
involved even numbers.

The transition graph is *derived from arithmetic*: every edge is computed
by evaluating the jump on sample members of a residue class and then
validated against the jump for every k up to a configurable bound. A
hand-derived reference table is kept as data purely so the builder can
report rows of it that disagree with arithmetic (there are three known
divergences; see REFERENCE_TABLES).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .core import jcf, ord2

__all__ = [
    "OddForm",
    "FormDecomposition",
    "FormEdge",
    "FormGraphReport",
    "FormGraphError",
    "FORMS",
    "form_class",
    "CLASS_ALPHA",
    "CLASS_MODULUS",
    "is_involved",
    "involvement",
    "involved_by_search",
    "odd_form_of",
    "form_step",
    "build_form_graph",
    "form_graph",
    "form_graph_report",
    "parse_form",
    "graph_to_dot",
    "graph_to_json",
    "edges_from_json",
    "filtered_ruler",
    "ruler_stats",
    "RulerReport",
]


@dataclass(frozen=True, order=True)
class OddForm:
    """One of the eight odd residue classes r + 6(q + 4k) mod 24."""

    r: int
    q: int

    def __post_init__(self) -> None:
        if self.r not in (1, 5) or self.q not in (0, 1, 2, 3):
            raise ValueError(f"no such odd form: r={self.r}, q={self.q}")

    def label(self) -> str:
        return f"{self.r}+6(4k)" if self.q == 0 else f"{self.r}+6({self.q}+4k)"

    def value(self, k: int) -> int:
        return self.r + 6 * (self.q + 4 * k)


FORMS: tuple[OddForm, ...] = tuple(OddForm(r, q) for r in (1, 5) for q in range(4))

# a-forms consume exactly one halving per jump, b-forms exactly two,
# c-forms three or more (exactly three on one parity of k).
_A_FORMS = frozenset({OddForm(1, 1), OddForm(1, 3), OddForm(5, 1), OddForm(5, 3)})
_B_FORMS = frozenset({OddForm(1, 0), OddForm(5, 2)})
_C_FORMS = frozenset({OddForm(1, 2), OddForm(5, 0)})

CLASS_ALPHA = {"a": 1, "b": 2, "c": 3}
CLASS_MODULUS = {"a": 2, "b": 4, "c": 8}


def form_class(form: OddForm) -> str:
    """Variation class of a form: 'a', 'b' or 'c'."""
    if form in _A_FORMS:
        return "a"
    if form in _B_FORMS:
        return "b"
    return "c"


_LABEL_RE = re.compile(r"^([15])\+6\((?:([123])\+)?4k\)$")


def parse_form(text: str) -> OddForm:
    """Parse a form label like '5+6(3+4k)' or a bare 'r,q' pair."""
    s = text.strip().replace(" ", "")
    m = _LABEL_RE.match(s)
    if m:
        return OddForm(int(m.group(1)), int(m.group(2) or 0))
    if "," in s:
        r, q = s.split(",", 1)
        return OddForm(int(r), int(q))
    raise ValueError(f"cannot parse form {text!r}")


@dataclass(frozen=True)
class FormDecomposition:
    """An involved odd value written as r + 6(q + 4k)."""

    r: int
    q: int
    k: int
    value: int

    @property
    def form(self) -> OddForm:
        return OddForm(self.r, self.q)


def is_involved(n: int) -> bool:
    """True when n can be reached inside the algorithm.

    Odd numbers are involved iff not divisible by 3; even numbers iff
    congruent to 4 mod 6 (the image class of every odd step).
    """
    if n < 1:
        raise ValueError(f"is_involved requires n >= 1, got {n}")
    if n % 2 == 1:
        return n % 3 != 0
    return n % 6 == 4


def involvement(n: int) -> tuple[bool, int]:
    """(is_involved(n), n mod 6) for report output."""
    return is_involved(n), n % 6


def involved_by_search(n: int, k_max: int = 40) -> bool:
    """Brute-force involvement oracle, independent of the classifier.

    Odd n: search k <= k_max for a jump preimage (2**k n - 1)/3 that is an
    odd natural. Even n: test whether (n-1)/3 is an odd natural.
    """
    if n < 1:
        raise ValueError(f"involved_by_search requires n >= 1, got {n}")
    if n % 2 == 0:
        m = n - 1
        return m % 3 == 0 and (m // 3) % 2 == 1
    for k in range(1, k_max + 1):
        m = (1 << k) * n - 1
        if m % 3 == 0 and (m // 3) % 2 == 1:
            return True
    return False


def odd_form_of(n: int) -> FormDecomposition:
    """Unique decomposition of an involved odd number into r + 6(q + 4k)."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"odd_form_of requires an odd n >= 1, got {n}")
    if n % 3 == 0:
        raise ValueError(f"{n} is divisible by 3 and admits no form decomposition")
    r = n % 6
    m = (n - r) // 6
    return FormDecomposition(r=r, q=m % 4, k=m // 4, value=n)


@dataclass(frozen=True)
class FormEdge:
    """One row of the form-transition map.

    For every k with k = residue mod modulus, the jump sends
    src.value(k) to dst.value(next_k(k)) consuming exactly `alpha`
    halvings, where next_k(k) = k_mul * (k - residue)//modulus + k_add.
    """

    src: OddForm
    dst: OddForm
    modulus: int
    residue: int
    k_mul: int
    k_add: int
    alpha: int

    def applies(self, k: int) -> bool:
        return k % self.modulus == self.residue

    def next_k(self, k: int) -> int:
        if not self.applies(k):
            raise ValueError(f"edge {self.describe()} does not apply to k={k}")
        return self.k_mul * ((k - self.residue) // self.modulus) + self.k_add

    def describe(self) -> str:
        return (
            f"{self.src.label()} -> {self.dst.label()} "
            f"[k={self.residue} mod {self.modulus}, alpha={self.alpha}]"
        )


class FormGraphError(RuntimeError):
    """The derived transition map disagreed with direct arithmetic."""


def _arith_step(form: OddForm, k: int) -> tuple[FormDecomposition, int]:
    v, a = jcf(form.value(k))
    return odd_form_of(v), a


def form_step(
    d: FormDecomposition, mode: str = "arithmetic"
) -> tuple[FormDecomposition, int] | None:
    """One jump at the form level.

    arithmetic mode evaluates the jump on d.value and re-decomposes; it is
    total. table mode applies the matching transition edge; for a c-form
    whose k-parity forces alpha >= 4 there is no edge and None is returned
    (a signal, not a failure).
    """
    if mode == "arithmetic":
        return _arith_step(d.form, d.k)
    if mode != "table":
        raise ValueError(f"unknown mode {mode!r}")
    for edge in form_graph():
        if edge.src == d.form and edge.applies(d.k):
            k2 = edge.next_k(d.k)
            return FormDecomposition(edge.dst.r, edge.dst.q, k2, edge.dst.value(k2)), edge.alpha
    return None


# Hand-derived transition tables kept as data for cross-checking only.
# Rows are (residue, (dst_r, dst_q), k_add); the slope of the within-row
# affine map is `slope` for all rows of a table. Three rows are known to
# disagree with arithmetic and are reported by build_form_graph:
#   * the 5+6(4k) table is keyed by even residues mod 8, yet alpha = 3
#     demands odd k;
#   * its images are claimed to lie in class 1+6n, while the jump value
#     2+9k (k odd) is congruent to 5 mod 6;
#   * the 1+6(3+4k) row for k = 2 mod 4 prints k' = 6k''+3 where
#     arithmetic gives 6k''+4.
REFERENCE_TABLES: dict[OddForm, tuple[int, int, tuple[tuple[int, tuple[int, int], int], ...]]] = {
    OddForm(1, 0): (4, 3, ((0, (1, 0), 0), (1, (1, 3), 0), (2, (1, 2), 1), (3, (1, 1), 2))),
    OddForm(1, 1): (4, 6, ((0, (5, 1), 0), (1, (5, 3), 1), (2, (5, 1), 3), (3, (5, 3), 4))),
    OddForm(1, 2): (8, 3, ((0, (5, 0), 0), (2, (5, 3), 0), (4, (5, 2), 1), (6, (5, 1), 2))),
    OddForm(1, 3): (4, 6, ((0, (5, 0), 1), (1, (5, 2), 2), (2, (5, 0), 3), (3, (5, 2), 5))),
    OddForm(5, 0): (8, 3, ((0, (1, 1), 0), (2, (1, 0), 1), (4, (1, 3), 1), (6, (1, 2), 2))),
    OddForm(5, 1): (4, 6, ((0, (5, 2), 0), (1, (5, 0), 2), (2, (5, 2), 3), (3, (5, 0), 5))),
    OddForm(5, 2): (4, 3, ((0, (1, 2), 0), (1, (1, 1), 1), (2, (1, 0), 2), (3, (1, 3), 2))),
    OddForm(5, 3): (4, 6, ((0, (5, 1), 1), (1, (5, 3), 2), (2, (5, 1), 4), (3, (5, 3), 5))),
}


@dataclass(frozen=True)
class FormGraphReport:
    """Validated transition edges plus reference-table divergence notes."""

    edges: tuple[FormEdge, ...]
    validated_to: int
    divergences: tuple[str, ...]


def _derive_edges() -> list[FormEdge]:
    edges: list[FormEdge] = []
    for form in FORMS:
        cls = form_class(form)
        m = CLASS_MODULUS[cls]
        want_alpha = CLASS_ALPHA[cls]
        for rho in range(m):
            d0, a0 = _arith_step(form, rho)
            d1, a1 = _arith_step(form, rho + m)
            if cls == "c" and (a0 != 3 or a1 != 3):
                continue  # wrong k-parity: alpha >= 4, outside the table domain
            if a0 != want_alpha or a1 != want_alpha or d0.form != d1.form:
                raise FormGraphError(
                    f"{form.label()} k={rho} mod {m}: inconsistent class behaviour"
                )
            edges.append(
                FormEdge(
                    src=form,
                    dst=d0.form,
                    modulus=m,
                    residue=rho,
                    k_mul=d1.k - d0.k,
                    k_add=d0.k,
                    alpha=want_alpha,
                )
            )
    return edges


def _validate_edges(edges: Iterable[FormEdge], k_to: int) -> None:
    for edge in edges:
        for k in range(edge.residue, k_to + 1, edge.modulus):
            d, a = _arith_step(edge.src, k)
            if d.form != edge.dst or d.k != edge.next_k(k) or a != edge.alpha:
                raise FormGraphError(
                    f"edge {edge.describe()} disagrees with arithmetic at k={k}: "
                    f"got {d.form.label()} k'={d.k} alpha={a}"
                )


def _reference_divergences(edges: tuple[FormEdge, ...]) -> list[str]:
    notes: list[str] = []
    by_src: dict[OddForm, list[FormEdge]] = {}
    for e in edges:
        by_src.setdefault(e.src, []).append(e)
    for form in FORMS:
        ref_mod, ref_slope, rows = REFERENCE_TABLES[form]
        derived = by_src[form]
        # Refine derived edges to the reference modulus before comparing.
        refined: dict[int, tuple[OddForm, int, int]] = {}
        for e in derived:
            for rho in range(e.residue, ref_mod, e.modulus):
                lift = (rho - e.residue) // e.modulus  # within-class offset
                refined[rho] = (e.dst, ref_slope, e.k_mul * lift + e.k_add)
        ref_residues = {row[0] for row in rows}
        if ref_residues != set(refined):
            notes.append(
                f"{form.label()}: reference table keyed by k mod {ref_mod} in "
                f"{sorted(ref_residues)} but arithmetic admits alpha={CLASS_ALPHA[form_class(form)]} "
                f"exactly for k in {sorted(refined)}"
            )
        ref_classes = {r for _, (r, _q), _ in rows}
        arith_classes = {e.dst.r for e in derived}
        if ref_classes != arith_classes:
            notes.append(
                f"{form.label()}: reference table lists images in class(es) "
                f"{sorted(ref_classes)}+6n but arithmetic lands in {sorted(arith_classes)}+6n"
            )
        if ref_residues != set(refined) or ref_classes != arith_classes:
            continue  # row-level comparison is meaningless once the keying diverges
        for rho, (dst_r, dst_q), add in rows:
            dst, slope, k_add = refined[rho]
            if (dst.r, dst.q) != (dst_r, dst_q) or add != k_add:
                notes.append(
                    f"{form.label()} row k={rho} mod {ref_mod}: reference gives "
                    f"{OddForm(dst_r, dst_q).label()} with k'={slope}k''+{add}, arithmetic "
                    f"gives {dst.label()} with k'={slope}k''+{k_add}"
                )
    return notes


def build_form_graph(validate_to: int = 200) -> FormGraphReport:
    """Derive the 24-edge transition map, validate it, and report divergences.

    Construction fails loudly (FormGraphError) if any derived edge
    disagrees with the jump arithmetic for some k <= validate_to.
    """
    edges = _derive_edges()
    if len(edges) != 24:
        raise FormGraphError(f"expected 24 edges, derived {len(edges)}")
    _validate_edges(edges, validate_to)
    return FormGraphReport(
        edges=tuple(edges),
        validated_to=validate_to,
        divergences=tuple(_reference_divergences(tuple(edges))),
    )


@lru_cache(maxsize=1)
def form_graph_report() -> FormGraphReport:
    return build_form_graph()


def form_graph() -> tuple[FormEdge, ...]:
    """The validated transition map (24 edges), cached."""
    return form_graph_report().edges


def graph_to_dot(
    edges: Iterable[FormEdge], highlight: Iterable[FormEdge] = (), name: str = "syracuse_forms"
) -> str:
    """Render edges as a DOT digraph; highlighted edges are drawn in red."""
    marked = set(highlight)
    lines = [f"digraph {name} {{"]
    for form in FORMS:
        lines.append(f'  "{form.label()}";')
    for e in edges:
        attrs = [f'label="k≡{e.residue}[{e.modulus}], α={e.alpha}"']
        if e in marked:
            attrs.append("color=red")
        lines.append(f'  "{e.src.label()}" -> "{e.dst.label()}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(edges: Iterable[FormEdge]) -> str:
    payload = [
        {
            "from": [e.src.r, e.src.q],
            "to": [e.dst.r, e.dst.q],
            "modulus": e.modulus,
            "residue": e.residue,
            "k_mul": e.k_mul,
            "k_add": e.k_add,
            "alpha": e.alpha,
        }
        for e in edges
    ]
    return json.dumps(payload, sort_keys=True)


def edges_from_json(text: str) -> tuple[FormEdge, ...]:
    return tuple(
        FormEdge(
            src=OddForm(*item["from"]),
            dst=OddForm(*item["to"]),
            modulus=item["modulus"],
            residue=item["residue"],
            k_mul=item["k_mul"],
            k_add=item["k_add"],
            alpha=item["alpha"],
        )
        for item in json.loads(text)
    )


def filtered_ruler(count: int) -> Iterator[int]:
    """2-adic valuations of the first `count` kept involved even numbers.

    Walks the even numbers 4 + 6n and drops those whose odd-step preimage
    (N-1)/3 = 2n+1 is congruent to 3 mod 6 (i.e. n = 1 mod 3): such an N
    arises only from a non-involved odd number. The kept subsequence of
    valuations starts 2, 4, 1, 1, 3, 2, 1, 1, ...
    """
    produced = 0
    n = 0
    while produced < count:
        if n % 3 != 1:
            yield ord2(4 + 6 * n)
            produced += 1
        n += 1


@dataclass(frozen=True)
class RulerReport:
    """Empirical single- and double-halving densities over the kept evens."""

    count: int
    ones: int
    twos: int
    fraction_ord1: Fraction
    fraction_ord2: Fraction


def ruler_stats(count: int) -> RulerReport:
    """Fraction of the first `count` kept involved evens with ord2 = 1 and = 2."""
    if count < 1000:
        raise ValueError(f"ruler_stats requires count >= 1000, got {count}")
    ones = twos = 0
    for v in filtered_ruler(count):
        if v == 1:
            ones += 1
        elif v == 2:
            twos += 1
    return RulerReport(
        count=count,
        ones=ones,
        twos=twos,
        fraction_ord1=Fraction(ones, count),
        fraction_ord2=Fraction(twos, count),
    )
