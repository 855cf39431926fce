import itertools

import pytest

from finsem.errors import (
    CycleError,
    NotJoinPreserving,
    NotMonotone,
    StructureNotPreserved,
    TooLarge,
    UnknownElement,
)
from finsem.order import (
    FinPoset,
    FinSet,
    LATTICE_ISO_VARIANTS,
    MonotoneMap,
    PlotkinAlgebra,
    SubsetOf,
    all_lattices,
    all_posets,
    antichain,
    chain,
    down_closure,
    downsets,
    enumerate_structure_maps,
    iter_posets,
    lattice_element_to_map,
    lattice_map_to_element,
    make_poset,
    poset_canonical_key,
    powerset_lattice,
    right_adjoint,
    up_closure,
    upsets,
)


def brute_monotone_two_count(poset):
    """Independent oracle: count monotone 0/1 functions by brute force."""
    count = 0
    for values in itertools.product((0, 1), repeat=len(poset)):
        f = dict(zip(poset.elements, values))
        if all(
            f[x] <= f[y]
            for x in poset
            for y in poset
            if poset.leq(x, y)
        ):
            count += 1
    return count


class TestMakePoset:
    def test_singleton(self):
        p = make_poset(["a"])
        assert p.elements == ("a",)
        assert p.leq("a", "a")

    def test_two_chain_closure(self):
        p = make_poset(["a", "b"], [("a", "b")])
        assert p.leq("a", "b") and not p.leq("b", "a")

    def test_transitive_closure(self):
        p = make_poset("abc", [("a", "b"), ("b", "c")])
        assert p.leq("a", "c")

    def test_cycle_rejected(self):
        with pytest.raises(CycleError):
            make_poset("abc", [("a", "b"), ("b", "c"), ("c", "a")])

    def test_unknown_element(self):
        with pytest.raises(UnknownElement):
            make_poset("ab", [("a", "z")])

    def test_non_transitive_direct_input(self):
        with pytest.raises(ValueError):
            FinPoset(FinSet("abc"), [("a", "b"), ("b", "c")])


class TestUpsetsDownsets:
    def test_two_chain(self):
        p = chain("ab")
        u = upsets(p)
        assert set(u.elements) == {frozenset(), frozenset("b"), frozenset("ab")}
        # a 3-chain
        assert u.bottom() == frozenset() and u.top() == frozenset("ab")

    def test_antichain_gives_boolean(self):
        u = upsets(antichain("ab"))
        assert len(u) == 4

    def test_boolean_lattice_as_poset(self):
        b2 = powerset_lattice(FinSet([1, 2]))
        assert len(upsets(b2)) == 6 == brute_monotone_two_count(b2)

    @pytest.mark.parametrize("poset", all_posets(4), ids=repr)
    def test_upset_count_matches_monotone_maps(self, poset):
        assert len(upsets(poset)) == brute_monotone_two_count(poset)

    def test_downsets_two_chain(self):
        d = downsets(chain("ab"))
        assert set(d.elements) == {frozenset(), frozenset("a"), frozenset("ab")}

    def test_downsets_antichain3(self):
        assert len(downsets(antichain("abc"))) == 8

    @pytest.mark.parametrize("poset", all_posets(4), ids=repr)
    def test_complement_reverses_order(self, poset):
        full = poset.carrier.as_frozenset()
        u = upsets(poset)
        d = downsets(poset)
        complements = {x: full - x for x in u.elements}
        assert set(complements.values()) == set(d.elements)
        for a in u.elements:
            for b in u.elements:
                assert u.leq(a, b) == d.leq(complements[b], complements[a])

    def test_cap(self):
        with pytest.raises(TooLarge):
            upsets(antichain(range(9)))


class TestClosures:
    def test_down_closure_cases(self):
        p = chain("ab")
        assert down_closure(p, frozenset()).members == frozenset()
        assert down_closure(p, {"b"}).members == frozenset("ab")
        q = antichain("ab")
        assert down_closure(q, {"b"}).members == frozenset("b")
        assert up_closure(p, {"a"}).members == frozenset("ab")

    def test_subset_kind_validation(self):
        p = chain("ab")
        SubsetOf(p, {"b"}, "upset")
        with pytest.raises(StructureNotPreserved):
            SubsetOf(p, {"a"}, "upset")
        with pytest.raises(UnknownElement):
            SubsetOf(p, {"z"})


class TestMonotoneMap:
    def test_validation(self):
        p = chain("ab")
        two = chain((0, 1))
        MonotoneMap.from_dict(p, two, {"a": 0, "b": 1})
        with pytest.raises(NotMonotone):
            MonotoneMap.from_dict(p, two, {"a": 1, "b": 0})

    def test_call_and_compose(self):
        p = chain("ab")
        two = chain((0, 1))
        f = MonotoneMap.from_dict(p, two, {"a": 0, "b": 1})
        g = MonotoneMap.from_dict(two, two, {0: 1, 1: 1})
        assert g.after(f)("a") == 1


class TestRightAdjoint:
    def test_identity(self):
        b2 = powerset_lattice(FinSet("xy"))
        ident = MonotoneMap.from_callable(b2, b2, lambda a: a)
        assert right_adjoint(ident).graph == ident.graph

    def test_constant_bottom(self):
        two = chain((0, 1))
        f = MonotoneMap.from_dict(two, two, {0: 0, 1: 0})
        adj = right_adjoint(f)
        assert adj.as_dict() == {0: 1, 1: 1}

    def test_direct_image_of_relation(self):
        xs = FinSet("ab")
        ys = FinSet("uv")
        rel = {("a", "u"), ("b", "u"), ("b", "v")}
        px, py = powerset_lattice(xs), powerset_lattice(ys)
        image = lambda a: frozenset(y for (x, y) in rel if x in a)
        f = MonotoneMap.from_callable(px, py, image)
        adj = right_adjoint(f)
        for b in py.elements:
            largest = frozenset(x for x in xs if image(frozenset({x})) <= b)
            assert adj(b) == largest

    def test_rejects_non_join_preserving(self):
        b2 = powerset_lattice(FinSet("xy"))
        top = b2.top()
        with pytest.raises(NotJoinPreserving):
            right_adjoint(MonotoneMap.from_callable(b2, b2, lambda a: top))


def qualifying_maps(lattice, variant):
    """All 0/1 assignments passing the variant's structure conditions."""
    from finsem.order import _variant_ok

    out = []
    for values in itertools.product((0, 1), repeat=len(lattice)):
        phi = dict(zip(lattice.elements, values))
        if _variant_ok(lattice, phi, variant):
            out.append(phi)
    return out


class TestLatticeElementIso:
    def test_two_chain_identity_map(self):
        two = chain((0, 1))
        phi = {0: 0, 1: 1}
        assert lattice_map_to_element(two, phi, "join_to_2") == 0

    def test_top_classifies(self):
        b2 = powerset_lattice(FinSet("xy"))
        phi = lattice_element_to_map(b2, b2.top(), "join_to_2")
        assert phi[b2.top()] == 0
        assert all(phi[x] == 0 for x in b2.elements)

    @pytest.mark.parametrize("lattice", all_lattices(5), ids=repr)
    @pytest.mark.parametrize("variant", LATTICE_ISO_VARIANTS)
    def test_round_trips_exhaustive(self, lattice, variant):
        for phi in qualifying_maps(lattice, variant):
            a = lattice_map_to_element(lattice, phi, variant)
            assert lattice_element_to_map(lattice, a, variant) == phi
        for a in lattice.elements:
            phi = lattice_element_to_map(lattice, a, variant)
            assert lattice_map_to_element(lattice, phi, variant) == a

    def test_structure_not_preserved(self):
        b2 = powerset_lattice(FinSet("xy"))
        bad = {x: 1 for x in b2.elements}  # sends bottom to 1
        with pytest.raises(StructureNotPreserved):
            lattice_map_to_element(b2, bad, "join_to_2")


def brute_force_maps(dom, cod, predicate):
    """Oracle: filter every function graph by the predicate."""
    out = []
    for graph in itertools.product(cod.elements, repeat=len(dom)):
        mapping = dict(zip(dom.elements, graph))
        if predicate(mapping):
            out.append(graph)
    return out


def _is_monotone(dom, cod, g):
    return all(
        cod.leq(g[x], g[y]) for x in dom for y in dom if dom.leq(x, y)
    )


SELECTOR_PREDICATES = {
    "monotone": lambda dom, cod, g: _is_monotone(dom, cod, g),
    "join-preserving": lambda dom, cod, g: (
        g[dom.bottom()] == cod.bottom()
        and all(
            g[dom.join(x, y)] == cod.join(g[x], g[y])
            for x in dom for y in dom
        )
    ),
    "meet-preserving": lambda dom, cod, g: (
        g[dom.top()] == cod.top()
        and all(
            g[dom.meet(x, y)] == cod.meet(g[x], g[y])
            for x in dom for y in dom
        )
    ),
    "join+top": lambda dom, cod, g: (
        SELECTOR_PREDICATES["join-preserving"](dom, cod, g)
        and g[dom.top()] == cod.top()
    ),
    "meet+top": lambda dom, cod, g: SELECTOR_PREDICATES["meet-preserving"](dom, cod, g),
    "preframe+0": lambda dom, cod, g: (
        SELECTOR_PREDICATES["meet-preserving"](dom, cod, g)
        and g[dom.bottom()] == cod.bottom()
    ),
    "frame": lambda dom, cod, g: (
        SELECTOR_PREDICATES["join-preserving"](dom, cod, g)
        and SELECTOR_PREDICATES["meet-preserving"](dom, cod, g)
    ),
}


class TestEnumerateStructureMaps:
    def test_monotone_chain_to_two(self):
        assert len(enumerate_structure_maps(chain("ab"), chain((0, 1)), "monotone")) == 3

    def test_meet_preserving_count_matches_brute_force(self):
        b2 = powerset_lattice(FinSet([1, 2]))
        p1 = powerset_lattice(FinSet([1]))
        fast = enumerate_structure_maps(b2, p1, "meet-preserving")
        slow = brute_force_maps(
            b2, p1, lambda g: SELECTOR_PREDICATES["meet-preserving"](b2, p1, g)
        )
        assert len(fast) == len(slow) == 4

    def test_join_preserving_powerset_matches_relations(self):
        b2 = powerset_lattice(FinSet([1, 2]))
        assert len(enumerate_structure_maps(b2, b2, "join-preserving")) == 16

    @pytest.mark.parametrize("selector", sorted(SELECTOR_PREDICATES))
    def test_complete_and_duplicate_free(self, selector):
        lattices = [
            powerset_lattice(FinSet("x")),
            powerset_lattice(FinSet("xy")),
            upsets(chain("abc")),
        ]
        for dom in lattices:
            for cod in lattices:
                fast = enumerate_structure_maps(dom, cod, selector)
                graphs = {m.graph for m in fast}
                assert len(graphs) == len(fast)
                slow = brute_force_maps(
                    dom, cod,
                    lambda g: SELECTOR_PREDICATES[selector](dom, cod, g),
                )
                assert graphs == {
                    tuple(g[x] for x in dom.elements)
                    for g in (dict(zip(dom.elements, s)) for s in slow)
                }

    def test_budget_enforced(self):
        b3 = powerset_lattice(FinSet("abc"))
        with pytest.raises(TooLarge):
            enumerate_structure_maps(b3, b3, "monotone", budget=100)

    def test_plotkin_hom_selector_matches_brute_force(self):
        alg = PlotkinAlgebra.over(upsets(chain("a")))
        maps = enumerate_structure_maps(alg, alg, "plotkin-hom")
        # brute force over all monotone endomaps of the lens poset
        slow = []
        for graph in brute_force_maps(
            alg.poset, alg.poset,
            lambda g: _is_monotone(alg.poset, alg.poset, g),
        ):
            g = dict(zip(alg.poset.elements, graph))
            if g[alg.zero] != alg.zero or g[alg.one] != alg.one:
                continue
            if g[alg.mix] != alg.mix:
                continue
            if all(
                g[alg.amalg(s, t)] == alg.amalg(g[s], g[t])
                for s in alg.poset for t in alg.poset
            ):
                slow.append(graph)
        assert {m.graph for m in maps} == set(slow)


class TestFiniteDirectedCompleteness:
    @pytest.mark.parametrize("poset", all_posets(4), ids=repr)
    def test_directed_subsets_have_a_maximum(self, poset):
        # finite posets double as dcpos: any directed subset peaks
        for members in poset.carrier.subsets():
            if not members:
                continue
            directed = all(
                any(poset.leq(a, c) and poset.leq(b, c) for c in members)
                for a in members
                for b in members
            )
            if directed:
                assert any(
                    all(poset.leq(b, a) for b in members) for a in members
                )


class TestPosetInventory:
    def test_naturally_labelled_counts(self):
        assert sum(1 for _ in iter_posets(3)) == 7
        assert sum(1 for _ in iter_posets(2)) == 2

    def test_iso_classes(self):
        assert len(all_posets(3)) == 9  # sizes 0..3: 1 + 1 + 2 + 5
        assert len([p for p in all_posets(4) if len(p) == 4]) == 16

    def test_lattice_count(self):
        assert len(all_lattices(5)) == 10

    def test_canonical_key_invariant(self):
        p = make_poset("ab", [("a", "b")])
        q = make_poset("uv", [("v", "u")])
        assert poset_canonical_key(p) == poset_canonical_key(q)
