"""The reduced-walk groupoid.

Reduction is cross-checked against a naive rewriter that deletes backtrack
patterns in every possible order; agreement on all orders is exactly the
confluence claim the stack pass relies on.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from homcx import (
    NotClosed,
    ReducedWalk,
    SourceTargetMismatch,
    Walk,
    all_reduced_walks,
    closed_reduced_walks_at,
    concat_walks,
    cycle_graph,
    edge_walk,
    is_cyclically_reduced,
    is_f_tight,
    map_walk,
    path_graph,
    petersen_graph,
    pushed_walk,
    reduce_walk,
    reduced_walks_from,
    trivial_walk,
    walk_inverse,
    walk_product,
    GraphHom,
    Graph,
)

C5 = cycle_graph(5)
PET = petersen_graph()


def all_normal_forms(vertices):
    """Apply single backtrack deletions in every order; collect the dead ends."""
    out = set()
    stack = [tuple(vertices)]
    seen = set()
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        spots = [i for i in range(len(v) - 2) if v[i] == v[i + 2]]
        if not spots:
            out.add(v)
        for i in spots:
            stack.append(v[:i] + v[i + 2:])
    return out


def random_walk_strategy(G, max_len):
    def build(draw):
        x = draw(st.integers(0, G.n - 1))
        verts = [x]
        for _ in range(draw(st.integers(0, max_len))):
            verts.append(draw(st.sampled_from(G.neighbors(verts[-1]))))
        return Walk(G, verts)
    return st.composite(build)()


class TestReduction:
    def test_stack_pass_matches_every_deletion_order(self):
        # exhaustive over all walks of length <= 6 in C5 starting anywhere
        frontier = [(s,) for s in range(5)]
        for _ in range(6):
            frontier = [w + (y,) for w in frontier for y in C5.neighbors(w[-1])]
            for v in frontier:
                forms = all_normal_forms(v)
                assert len(forms) == 1
                assert reduce_walk(Walk(C5, v)).vertices == forms.pop()

    @given(random_walk_strategy(PET, 8))
    @settings(max_examples=80, deadline=None)
    def test_confluence_on_petersen(self, w):
        forms = all_normal_forms(w.vertices)
        assert forms == {reduce_walk(w).vertices}

    def test_reduced_walk_constructor_rejects_backtracks(self):
        with pytest.raises(ValueError):
            ReducedWalk(C5, (0, 1, 0))
        assert ReducedWalk(C5, (0, 1, 2)).is_reduced()

    def test_endpoints_survive_reduction(self):
        w = Walk(C5, (0, 1, 2, 1, 0, 4))
        r = reduce_walk(w)
        assert (r.source, r.target) == (w.source, w.target)
        assert r.vertices == (0, 4)


class TestGroupoid:
    def test_identity_and_inverse(self):
        xi = ReducedWalk(C5, (0, 1, 2, 3))
        e0, e3 = trivial_walk(C5, 0), trivial_walk(C5, 3)
        assert walk_product(e0, xi) == xi
        assert walk_product(xi, e3) == xi
        assert walk_product(xi, walk_inverse(xi)) == e0
        assert walk_product(walk_inverse(xi), xi) == e3

    def test_mismatched_endpoints_rejected(self):
        with pytest.raises(SourceTargetMismatch):
            concat_walks(ReducedWalk(C5, (0, 1)), ReducedWalk(C5, (2, 3)))

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_associativity(self, data):
        a = data.draw(random_walk_strategy(PET, 6))
        b_verts = [a.target]
        for _ in range(data.draw(st.integers(0, 6))):
            b_verts.append(data.draw(st.sampled_from(PET.neighbors(b_verts[-1]))))
        b = Walk(PET, b_verts)
        c_verts = [b.target]
        for _ in range(data.draw(st.integers(0, 6))):
            c_verts.append(data.draw(st.sampled_from(PET.neighbors(c_verts[-1]))))
        c = Walk(PET, c_verts)
        ra, rb, rc = reduce_walk(a), reduce_walk(b), reduce_walk(c)
        assert walk_product(walk_product(ra, rb), rc) == walk_product(ra, walk_product(rb, rc))

    def test_inverse_reverses_products(self):
        a = ReducedWalk(C5, (0, 1, 2))
        b = ReducedWalk(C5, (2, 3, 4))
        assert walk_inverse(walk_product(a, b)) == walk_product(walk_inverse(b), walk_inverse(a))


class TestEnumeration:
    def test_counts_match_naive_filter(self):
        # every walk, filtered for the no-backtrack property
        for G, source, L in [(C5, 0, 5), (path_graph(4), 1, 4)]:
            naive = set()
            frontier = [(source,)]
            for _ in range(L + 1):
                naive.update(v for v in frontier if all(v[i] != v[i + 2] for i in range(len(v) - 2)))
                frontier = [w + (y,) for w in frontier for y in G.neighbors(w[-1])]
            got = reduced_walks_from(G, source, L)
            assert {w.vertices for w in got} == naive
            assert [w.vertices for w in got] == sorted(naive, key=lambda v: (len(v), v))

    def test_closed_walks_in_c5_come_in_multiples_of_five(self):
        lengths = sorted(w.length for w in closed_reduced_walks_at(C5, 0, 10))
        assert lengths == [0, 5, 5, 10, 10]

    def test_all_reduced_walks_window_count(self):
        assert len(all_reduced_walks(C5, 1)) == 15  # 5 trivial + 10 oriented edges


class TestMappings:
    def test_pushed_walk_reduces_the_image(self):
        C6, C3 = cycle_graph(6), cycle_graph(3)
        flat = GraphHom(C6, C3, (0, 1, 0, 1, 0, 1))
        w = ReducedWalk(C6, (0, 1, 2, 3))
        assert map_walk(flat, w).vertices == (0, 1, 0, 1)
        assert pushed_walk(flat, w).vertices == (0, 1)

    def test_cyclic_reduction_and_tightness(self):
        tri = Walk(cycle_graph(3), (0, 1, 2, 0))
        assert is_cyclically_reduced(tri)
        seam = Walk(C5, (0, 1, 2, 1, 0))
        assert not is_cyclically_reduced(seam)
        with pytest.raises(NotClosed):
            is_cyclically_reduced(Walk(C5, (0, 1)))

        C6, C3 = cycle_graph(6), cycle_graph(3)
        wind = GraphHom(C6, C3, (0, 1, 2, 0, 1, 2))
        flat = GraphHom(C6, C3, (0, 1, 0, 1, 0, 1))
        hexagon = Walk(C6, (0, 1, 2, 3, 4, 5, 0))
        assert is_f_tight(wind, hexagon)
        assert not is_f_tight(flat, hexagon)
