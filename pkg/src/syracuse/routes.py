"""Closed-walk search over the eight-form transition graph.

Exact enumeration of the (a,b,c) visit-count triplets that make a closed
walk increasing, depth-first enumeration of the increasing routes
themselves, composition of the per-step congruence conditions into a
single residue class for the anchor scalar k0, and witness search.

A hand-derived route catalog is bundled as data; `compare_with_catalog`
reports which of its entries the validated graph realizes, which it
cannot (four entries rest on transitions the c-form arithmetic rules
out), and which valid routes the catalog misses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .forms import (
    FORMS,
    FormDecomposition,
    FormEdge,
    OddForm,
    form_class,
    form_graph,
    form_step,
    graph_to_dot,
    parse_form,
)

__all__ = [
    "Triplet",
    "Route",
    "CongruenceChain",
    "RouteConditionError",
    "TRIPLET_BOUNDS",
    "triplet_is_increasing",
    "enumerate_increasing_triplets",
    "enumerate_increasing_routes",
    "enumerate_all_anchors",
    "rotation_class",
    "k0_chain",
    "route_witness",
    "HAND_CATALOG",
    "CatalogComparison",
    "compare_with_catalog",
    "route_to_dict",
    "routes_to_json",
    "routes_to_dot",
]

# Per-class visit bounds under the visit-once rule: four a-forms, two
# b-forms, two c-forms.
TRIPLET_BOUNDS = (4, 2, 2)

MAX_ROUTE_LENGTH = 7


@dataclass(frozen=True, order=True)
class Triplet:
    """Visit counts of a-, b- and c-forms along a closed walk."""

    a: int
    b: int
    c: int

    @property
    def n(self) -> int:
        return self.a + self.b + self.c

    @property
    def weight(self) -> int:
        """Total halvings consumed: a + 2b + 3c."""
        return self.a + 2 * self.b + 3 * self.c


def triplet_is_increasing(t: Triplet) -> bool:
    """Exact integer test 3**n > 2**(a+2b+3c); no floating point."""
    return 3**t.n > 2**t.weight


def enumerate_increasing_triplets() -> tuple[Triplet, ...]:
    """All increasing triplets with 0<=a<=4, 0<=b<=2, 0<=c<=2, n>=1, sorted."""
    amax, bmax, cmax = TRIPLET_BOUNDS
    found = [
        t
        for a in range(amax + 1)
        for b in range(bmax + 1)
        for c in range(cmax + 1)
        if (t := Triplet(a, b, c)).n >= 1 and triplet_is_increasing(t)
    ]
    return tuple(sorted(found, key=lambda t: (t.n, t.a, t.b, t.c)))


@dataclass(frozen=True)
class Route:
    """A closed walk in the form graph visiting each form at most once."""

    steps: tuple[FormEdge, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("a route needs at least one step")
        nodes = [s.src for s in self.steps]
        for prev, nxt in zip(self.steps, self.steps[1:]):
            if prev.dst != nxt.src:
                raise ValueError("route steps do not compose")
        if self.steps[-1].dst != nodes[0]:
            raise ValueError("route is not a closed walk")
        if len(set(nodes)) != len(nodes):
            raise ValueError("route visits a form twice")

    @property
    def anchor(self) -> OddForm:
        return self.steps[0].src

    @property
    def forms(self) -> tuple[OddForm, ...]:
        return tuple(s.src for s in self.steps)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def triplet(self) -> Triplet:
        counts = {"a": 0, "b": 0, "c": 0}
        for f in self.forms:
            counts[form_class(f)] += 1
        return Triplet(counts["a"], counts["b"], counts["c"])

    @property
    def variation(self) -> Fraction:
        t = self.triplet
        return Fraction(3**t.n, 2**t.weight)

    def variation_str(self) -> str:
        t = self.triplet
        return f"3^{t.n}/2^{t.weight}"

    def labels(self) -> tuple[str, ...]:
        """Form labels along the walk, anchor repeated at the end."""
        return tuple(f.label() for f in self.forms) + (self.anchor.label(),)


def _form_key(f: OddForm) -> tuple[int, int]:
    return (f.r, f.q)


def enumerate_increasing_routes(
    anchor: OddForm, graph: tuple[FormEdge, ...] | None = None, max_len: int = MAX_ROUTE_LENGTH
) -> list[Route]:
    """All increasing closed walks anchored at `anchor`.

    Depth-first over the validated graph with the visit-once rule and the
    length bound; a walk is kept iff its exact variation exceeds 1.
    Output order is lexicographic in the visited form sequence, so it is
    deterministic regardless of search scheduling.
    """
    edges = graph if graph is not None else form_graph()
    out: dict[OddForm, list[FormEdge]] = {}
    for e in edges:
        out.setdefault(e.src, []).append(e)
    for lst in out.values():
        lst.sort(key=lambda e: _form_key(e.dst))

    found: list[Route] = []

    def walk(node: OddForm, path: list[FormEdge], visited: set[OddForm]) -> None:
        for e in out.get(node, ()):
            if e.dst == anchor:
                candidate = Route(steps=tuple(path) + (e,))
                if triplet_is_increasing(candidate.triplet):
                    found.append(candidate)
            if len(path) + 1 < max_len and e.dst not in visited and e.dst != anchor:
                visited.add(e.dst)
                path.append(e)
                walk(e.dst, path, visited)
                path.pop()
                visited.remove(e.dst)

    walk(anchor, [], {anchor})
    found.sort(key=lambda r: tuple(_form_key(f) for f in r.forms))
    return found


def enumerate_all_anchors(
    graph: tuple[FormEdge, ...] | None = None, max_len: int = MAX_ROUTE_LENGTH
) -> dict[OddForm, list[Route]]:
    """Per-anchor enumeration over all eight forms, in canonical form order."""
    return {f: enumerate_increasing_routes(f, graph, max_len) for f in FORMS}


def rotation_class(route: Route) -> tuple[OddForm, ...]:
    """Canonical representative of the route's node cycle under rotation."""
    nodes = route.forms
    rotations = [nodes[i:] + nodes[:i] for i in range(len(nodes))]
    return min(rotations, key=lambda seq: tuple(_form_key(f) for f in seq))


class RouteConditionError(RuntimeError):
    """A step's congruence condition set is empty; the route is unrealizable."""


@dataclass(frozen=True)
class CongruenceChain:
    """Nested congruence conditions k_{j-1} = r_j + m_j * k_j on the anchor scalar.

    The closed form k0 = k_L * prod(m) + sum_j r_j * prod(m_1..m_{j-1})
    equals sequential substitution, and k0 = k0_residue mod modulus is the
    exact class of anchor scalars that follow the route.
    """

    moduli: tuple[int, ...]
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.moduli) != len(self.residues):
            raise ValueError("moduli and residues must have equal length")
        for m, r in zip(self.moduli, self.residues):
            if m < 2 or not 0 <= r < m:
                raise ValueError(f"bad congruence pair r={r} mod {m}")

    @property
    def modulus(self) -> int:
        return prod(self.moduli)

    @property
    def k0_residue(self) -> int:
        return self.closed_form(0)

    def closed_form(self, k_last: int) -> int:
        acc = k_last * self.modulus
        scale = 1
        for m, r in zip(self.moduli, self.residues):
            acc += r * scale
            scale *= m
        return acc

    def substitute(self, k_last: int) -> int:
        """Sequential substitution, innermost first; oracle for closed_form."""
        k = k_last
        for m, r in zip(reversed(self.moduli), reversed(self.residues)):
            k = r + m * k
        return k


def k0_chain(route: Route) -> CongruenceChain:
    """Compose each step's (modulus, residue) condition with the affine
    next-k maps into the congruence class of k0 guaranteeing the route."""
    c, mod = 0, 1
    for edge in reversed(route.steps):
        if mod > 1:
            g = gcd(edge.k_mul, mod)
            if (c - edge.k_add) % g != 0:
                raise RouteConditionError(
                    f"empty condition set at step {edge.describe()}"
                )
            t0 = (pow(edge.k_mul // g, -1, mod // g) * ((c - edge.k_add) // g)) % (mod // g)
        else:
            t0 = 0
        c = edge.residue + edge.modulus * t0
        mod *= edge.modulus
    # Express the class in mixed radix over the per-step moduli.
    moduli = tuple(e.modulus for e in route.steps)
    residues = []
    rem = c
    for m in moduli:
        residues.append(rem % m)
        rem //= m
    chain = CongruenceChain(moduli=moduli, residues=tuple(residues))
    assert chain.k0_residue == c and chain.modulus == mod
    return chain


def _follows_route(route: Route, k0: int) -> bool:
    d = FormDecomposition(route.anchor.r, route.anchor.q, k0, route.anchor.value(k0))
    for edge in route.steps:
        nxt = form_step(d, mode="arithmetic")
        assert nxt is not None
        d2, alpha = nxt
        if d2.form != edge.dst or alpha != edge.alpha or d2.k != edge.next_k(d.k):
            return False
        d = d2
    return True


def route_witness(route: Route, bound: int = 10**6) -> int | None:
    """Smallest odd N <= bound whose trajectory realizes the route.

    Scans k0 through the chain's congruence class, instantiates
    N = anchor.value(k0) and confirms the form path step by step.
    """
    chain = k0_chain(route)
    k0 = chain.k0_residue
    while route.anchor.value(k0) <= bound:
        if _follows_route(route, k0):
            return route.anchor.value(k0)
        k0 += chain.modulus
    return None


# Hand-derived catalog of increasing routes, bundled verbatim as label
# paths (anchor repeated at the end). Serves as a cross-check baseline:
# four entries are not realizable on the validated graph and show up in
# the comparison report with the offending transition.
HAND_CATALOG: dict[str, tuple[tuple[str, ...], ...]] = {
    "1+6(4k)": (
        ("1+6(4k)", "1+6(1+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)"),
    ),
    "1+6(1+4k)": (
        ("1+6(1+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(1+4k)"),
        ("1+6(1+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)", "1+6(1+4k)"),
        ("1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(1+4k)"),
        ("1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)", "1+6(1+4k)"),
    ),
    "1+6(2+4k)": (),
    "1+6(3+4k)": (
        ("1+6(3+4k)", "5+6(2+4k)", "1+6(3+4k)"),
    ),
    "5+6(4k)": (),
    "5+6(1+4k)": (
        ("5+6(1+4k)", "5+6(2+4k)", "1+6(4k)", "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)"),
        (
            "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)", "1+6(3+4k)", "5+6(4k)",
            "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)",
        ),
        ("5+6(1+4k)", "5+6(2+4k)", "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)"),
        (
            "5+6(1+4k)", "5+6(2+4k)", "1+6(3+4k)", "5+6(2+4k)",
            "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)",
        ),
    ),
    "5+6(2+4k)": (
        ("5+6(2+4k)", "1+6(4k)", "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)"),
        ("5+6(2+4k)", "1+6(4k)", "1+6(1+4k)", "5+6(1+4k)", "5+6(2+4k)"),
        ("5+6(2+4k)", "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)"),
        ("5+6(2+4k)", "1+6(1+4k)", "5+6(1+4k)", "5+6(2+4k)"),
        ("5+6(2+4k)", "1+6(3+4k)", "5+6(2+4k)"),
    ),
    "5+6(3+4k)": (
        ("5+6(3+4k)", "5+6(3+4k)"),
        ("5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)", "1+6(1+4k)", "5+6(3+4k)"),
        (
            "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)", "1+6(3+4k)",
            "5+6(4k)", "1+6(1+4k)", "5+6(3+4k)",
        ),
        ("5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(1+4k)", "5+6(3+4k)"),
        (
            "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(3+4k)", "5+6(2+4k)",
            "1+6(1+4k)", "5+6(3+4k)",
        ),
    ),
}


@dataclass(frozen=True)
class CatalogComparison:
    """Outcome of checking the hand catalog against the enumeration.

    matched: catalog entries found in the enumeration (as Routes);
    unrealizable: catalog entries no valid route can match, with a reason;
    extras: enumerated routes absent from the catalog.
    """

    matched: tuple[Route, ...]
    unrealizable: tuple[tuple[tuple[str, ...], str], ...]
    extras: tuple[Route, ...]


def _catalog_entry_reason(path: tuple[str, ...]) -> str:
    """Why a catalog label path cannot be a route on the validated graph."""
    nodes = [parse_form(lbl) for lbl in path[:-1]]
    if len(set(nodes)) != len(nodes):
        dup = next(f for f in nodes if nodes.count(f) > 1)
        return f"visits {dup.label()} twice"
    adjacency = {(e.src, e.dst) for e in form_graph()}
    hops = list(zip(nodes, nodes[1:] + [parse_form(path[-1])]))
    for src, dst in hops:
        if (src, dst) not in adjacency:
            return f"no transition {src.label()} -> {dst.label()} in the validated graph"
    return "closed walk exists but is not increasing"


def compare_with_catalog(
    enumerated: dict[OddForm, list[Route]] | None = None,
) -> CatalogComparison:
    per_anchor = enumerated if enumerated is not None else enumerate_all_anchors()
    by_labels = {r.labels(): r for routes in per_anchor.values() for r in routes}
    matched: list[Route] = []
    unrealizable: list[tuple[tuple[str, ...], str]] = []
    catalog_paths = set()
    for paths in HAND_CATALOG.values():
        for path in paths:
            catalog_paths.add(path)
            route = by_labels.get(path)
            if route is not None:
                matched.append(route)
            else:
                unrealizable.append((path, _catalog_entry_reason(path)))
    extras = [r for labels, r in sorted(by_labels.items()) if labels not in catalog_paths]
    return CatalogComparison(
        matched=tuple(matched),
        unrealizable=tuple(unrealizable),
        extras=tuple(extras),
    )


def route_to_dict(route: Route) -> dict:
    chain = k0_chain(route)
    t = route.triplet
    return {
        "anchor": route.anchor.label(),
        "steps": [
            {
                "from": s.src.label(),
                "to": s.dst.label(),
                "modulus": s.modulus,
                "residue": s.residue,
                "alpha": s.alpha,
            }
            for s in route.steps
        ],
        "triplet": [t.a, t.b, t.c],
        "variation": route.variation_str(),
        "k0": {
            "moduli": list(chain.moduli),
            "residues": list(chain.residues),
            "residue": chain.k0_residue,
            "modulus": chain.modulus,
        },
    }


def routes_to_json(routes: list[Route]) -> str:
    return json.dumps([route_to_dict(r) for r in routes], sort_keys=True)


def routes_to_dot(route: Route) -> str:
    """The form graph as DOT with the route's edges highlighted."""
    return graph_to_dot(form_graph(), highlight=route.steps, name="syracuse_route")
