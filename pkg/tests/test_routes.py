"""Route machinery tests: triplet enumeration with the exact increase
test, closed-walk search soundness, congruence-chain composition, witness
search, and the hand-catalog comparison."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from syracuse.core import jcf
from syracuse.forms import OddForm, odd_form_of
from syracuse.routes import (
    HAND_CATALOG,
    CongruenceChain,
    Triplet,
    compare_with_catalog,
    enumerate_all_anchors,
    enumerate_increasing_routes,
    enumerate_increasing_triplets,
    k0_chain,
    rotation_class,
    route_to_dict,
    route_witness,
    routes_to_json,
    triplet_is_increasing,
)

# The deduplicated hand list of increasing triplets; it misses (1,1,0),
# which its own derivation for n=2 establishes.
HAND_TRIPLETS = {
    (1, 0, 0), (2, 0, 0), (2, 1, 0), (3, 0, 0), (4, 0, 0), (3, 1, 0),
    (3, 0, 1), (2, 2, 0), (4, 1, 0), (4, 0, 1), (3, 2, 0), (4, 1, 1),
    (4, 2, 0), (4, 2, 1),
}

triplets_domain = st.tuples(
    st.integers(0, 4), st.integers(0, 2), st.integers(0, 2)
).filter(lambda t: sum(t) >= 1)


class TestTriplets:
    @pytest.mark.parametrize(
        "t,expected",
        [((4, 2, 1), True), ((4, 2, 2), False), ((1, 0, 0), True),
         ((2, 0, 0), True), ((3, 0, 0), True), ((4, 0, 0), True)],
    )
    def test_examples(self, t, expected):
        assert triplet_is_increasing(Triplet(*t)) is expected

    def test_enumeration(self):
        trips = {(t.a, t.b, t.c) for t in enumerate_increasing_triplets()}
        assert len(trips) == 15
        assert trips == HAND_TRIPLETS | {(1, 1, 0)}

    @given(triplets_domain)
    def test_exact_test_agrees_with_decimal_threshold(self, raw):
        t = Triplet(*raw)
        # weight/n < 1.59 compared without floats: 100*weight < 159*n
        assert triplet_is_increasing(t) == (100 * t.weight < 159 * t.n)

    @given(triplets_domain)
    def test_monotone_trade_laws(self, raw):
        a, b, c = raw
        if not triplet_is_increasing(Triplet(a, b, c)):
            return
        for a2, b2, c2 in [(a + 1, b - 1, c), (a + 1, b, c - 1), (a, b + 1, c - 1)]:
            if 0 <= a2 <= 4 and 0 <= b2 <= 2 and 0 <= c2 <= 2:
                assert triplet_is_increasing(Triplet(a2, b2, c2))

    def test_no_increasing_triplet_below_n4_uses_c(self):
        for t in enumerate_increasing_triplets():
            if t.n < 4:
                assert t.c == 0


class TestRouteEnumeration:
    def test_per_anchor_counts(self):
        # Counts on the validated graph; the bundled hand catalog differs
        # on three anchors (see compare_with_catalog and the README).
        per = enumerate_all_anchors()
        by_label = {f.label(): len(rs) for f, rs in per.items()}
        assert by_label == {
            "1+6(4k)": 2,
            "1+6(1+4k)": 4,
            "1+6(2+4k)": 0,
            "1+6(3+4k)": 1,
            "5+6(4k)": 0,
            "5+6(1+4k)": 4,
            "5+6(2+4k)": 5,
            "5+6(3+4k)": 3,
        }

    def test_soundness_invariants(self):
        for anchor, routes in enumerate_all_anchors().items():
            for r in routes:
                assert r.steps[-1].dst == anchor == r.anchor
                assert len(set(r.forms)) == r.length <= 7
                assert triplet_is_increasing(r.triplet)
                assert r.triplet.c <= 1
                t = r.triplet
                assert r.variation == Fraction(3**t.n, 2**t.weight) > 1

    def test_self_loop_route(self):
        routes = enumerate_increasing_routes(OddForm(5, 3))
        loops = [r for r in routes if r.length == 1]
        assert len(loops) == 1
        assert loops[0].triplet == Triplet(1, 0, 0)
        assert loops[0].variation == Fraction(3, 2)

    def test_deterministic_order(self):
        a = enumerate_increasing_routes(OddForm(5, 2))
        b = enumerate_increasing_routes(OddForm(5, 2))
        assert [r.labels() for r in a] == [r.labels() for r in b]
        keys = [tuple((f.r, f.q) for f in r.forms) for r in a]
        assert keys == sorted(keys)

    def test_no_length_eight_route_even_if_allowed(self):
        for anchor in (OddForm(1, 0), OddForm(5, 2), OddForm(5, 3)):
            for r in enumerate_increasing_routes(anchor, max_len=8):
                assert r.length <= 7


class TestCatalogComparison:
    def test_catalog_has_twenty_entries(self):
        from syracuse.forms import FORMS

        assert sum(len(v) for v in HAND_CATALOG.values()) == 20
        counts = tuple(len(HAND_CATALOG[f.label()]) for f in FORMS)
        assert counts == (1, 4, 0, 1, 0, 4, 5, 5)

    def test_sixteen_realizable_four_not(self):
        cmp = compare_with_catalog()
        assert len(cmp.matched) == 16
        assert len(cmp.unrealizable) == 4
        reasons = [reason for _path, reason in cmp.unrealizable]
        assert sum("no transition 5+6(4k) -> 1+6(1+4k)" in r for r in reasons) == 2
        assert sum("visits 5+6(2+4k) twice" in r for r in reasons) == 2

    def test_extras_are_sound_routes(self):
        cmp = compare_with_catalog()
        assert len(cmp.extras) == 3
        for r in cmp.extras:
            assert triplet_is_increasing(r.triplet)
            assert len(set(r.forms)) == r.length
        extra_labels = {r.labels() for r in cmp.extras}
        # the catalog's one-route anchor has a second valid route through 5+6(3+4k)
        assert (
            "1+6(4k)", "1+6(1+4k)", "5+6(3+4k)", "5+6(1+4k)", "5+6(2+4k)", "1+6(4k)"
        ) in extra_labels

    def test_rotation_classes_of_extras_are_cataloged_elsewhere(self):
        # every extra is a rotation of a route the catalog lists under
        # another anchor, so the catalog misses anchorings, not cycles
        per = enumerate_all_anchors()
        cmp = compare_with_catalog(per)
        matched_classes = {rotation_class(r) for r in cmp.matched}
        for r in cmp.extras:
            assert rotation_class(r) in matched_classes


class TestCongruenceChain:
    def test_single_step(self):
        chain = CongruenceChain(moduli=(4,), residues=(0,))
        assert chain.closed_form(5) == 20
        assert chain.substitute(5) == 20

    def test_two_steps(self):
        chain = CongruenceChain(moduli=(4, 4), residues=(0, 0))
        assert chain.closed_form(3) == 48  # 16 * k2
        assert chain.substitute(3) == 48

    @given(
        st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=6),
        st.integers(0, 10**6),
        st.randoms(use_true_random=False),
    )
    def test_closed_form_equals_substitution(self, moduli, k_last, rng):
        residues = tuple(rng.randrange(m) for m in moduli)
        chain = CongruenceChain(moduli=tuple(moduli), residues=residues)
        assert chain.closed_form(k_last) == chain.substitute(k_last)

    def test_seeded_fuzz(self):
        rng = random.Random(20240131)
        for _ in range(1000):
            moduli = tuple(rng.choice((2, 4, 8)) for _ in range(rng.randint(1, 6)))
            residues = tuple(rng.randrange(m) for m in moduli)
            chain = CongruenceChain(moduli=moduli, residues=residues)
            k = rng.randrange(1 << 16)
            assert chain.closed_form(k) == chain.substitute(k)


class TestK0AndWitness:
    def test_self_loop_witness_47(self):
        route = [r for r in enumerate_increasing_routes(OddForm(5, 3)) if r.length == 1][0]
        chain = k0_chain(route)
        assert (chain.moduli, chain.residues) == ((2,), (1,))  # k0 must be odd
        assert route_witness(route) == 47
        value, _ = jcf(47)
        assert odd_form_of(value).form == OddForm(5, 3)

    def test_short_route_witness_is_odd_k0(self):
        route = enumerate_increasing_routes(OddForm(1, 3))[0]
        chain = k0_chain(route)
        assert chain.k0_residue % 2 == 1
        witness = route_witness(route, bound=10**4)
        assert witness is not None and witness < 10**4
        k0 = odd_form_of(witness).k
        assert k0 % chain.modulus == chain.k0_residue

    def test_every_route_has_witness_following_it(self):
        for anchor, routes in enumerate_all_anchors().items():
            for route in routes:
                witness = route_witness(route, bound=10**6)
                assert witness is not None
                # replay the jump chain and confirm the form path
                d = odd_form_of(witness)
                for edge in route.steps:
                    value, alpha = jcf(d.value)
                    d = odd_form_of(value)
                    assert d.form == edge.dst and alpha == edge.alpha


class TestRouteExports:
    def test_json_round_trip_parses(self):
        routes = enumerate_increasing_routes(OddForm(5, 2))
        payload = json.loads(routes_to_json(routes))
        assert len(payload) == 5
        for item, route in zip(payload, routes):
            assert item == route_to_dict(route)
            assert item["variation"] == route.variation_str()
            t = route.triplet
            assert item["variation"] == f"3^{t.n}/2^{t.weight}"
