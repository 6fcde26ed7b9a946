"""The poset of set-valued homomorphisms between two graphs.

A set-valued homomorphism assigns each vertex of G a nonempty set of vertices
of H so that every cross pair along an edge of G is an edge of H. Ordered by
pointwise inclusion, these form the face poset whose order complex realizes
the space of homomorphisms G -> H. Connected components are discovered by
single-element moves: adding or removing one image vertex at a time, which
reaches exactly the elements connected through comparability zigzags.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ExplosionGuard, InvariantViolation, NotHomomorphism
from .graphs import Graph, GraphHom, graph_to_json, is_square_free
from .homology import OrderComplex, betti_numbers, complex_from_chains

DEFAULT_CAP = 200_000


class SetValuedHom:
    """A pointwise-nonempty set assignment whose cross pairs are all edges."""

    __slots__ = ("domain", "codomain", "sets", "_hash")

    def __init__(self, domain, codomain, sets):
        sets = tuple(frozenset(s) for s in sets)
        if len(sets) != domain.n:
            raise NotHomomorphism("one set per domain vertex is required")
        for u, s in enumerate(sets):
            if not s:
                raise NotHomomorphism(f"empty set at vertex {u}")
            for x in s:
                if not (0 <= x < codomain.n):
                    raise NotHomomorphism(f"image vertex {x!r} out of range")
        for u, v in domain.edges:
            for x in sets[u]:
                for y in sets[v]:
                    if not codomain.has_edge(x, y):
                        raise NotHomomorphism(
                            f"pair ({x}, {y}) across edge ({u}, {v}) is not an edge"
                        )
        self.domain = domain
        self.codomain = codomain
        self.sets = sets
        self._hash = hash((domain, codomain, self.key()))

    def key(self):
        return tuple(tuple(sorted(s)) for s in self.sets)

    def leq(self, other):
        """Pointwise inclusion."""
        return all(a <= b for a, b in zip(self.sets, other.sets))

    def is_singleton(self):
        return all(len(s) == 1 for s in self.sets)

    def as_graph_hom(self):
        if not self.is_singleton():
            raise NotHomomorphism("not singleton-valued")
        return GraphHom(self.domain, self.codomain, (min(s) for s in self.sets))

    @classmethod
    def from_graph_hom(cls, f):
        return cls(f.domain, f.codomain, ({x} for x in f.mapping))

    def norm(self):
        return sum(len(s) for s in self.sets)

    def __eq__(self, other):
        return (
            isinstance(other, SetValuedHom)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.sets == other.sets
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SetValuedHom({self.key()})"

    def to_json(self):
        return {"sets": [list(s) for s in self.key()]}


def hom_adjacent(f, g):
    """Do two singleton elements differ at exactly one vertex?"""
    fm = f.mapping if isinstance(f, GraphHom) else f.as_graph_hom().mapping
    gm = g.mapping if isinstance(g, GraphHom) else g.as_graph_hom().mapping
    return sum(a != b for a, b in zip(fm, gm)) == 1


def post_compose(k, phi):
    """Apply a homomorphism k: H -> K to every image set of phi."""
    if k.domain != phi.codomain:
        raise NotHomomorphism("composition mismatch: k must start where phi lands")
    return SetValuedHom(
        phi.domain, k.codomain, (frozenset(k(x) for x in s) for s in phi.sets)
    )


def enumerate_graph_homs(G, H, cap=DEFAULT_CAP, first_only=False):
    """All homomorphisms G -> H by backtracking, in lexicographic mapping order.

    Vertices are assigned in breadth-first order so each new vertex is
    constrained by an already-assigned neighbor whenever possible.
    """
    order = []
    seen = [False] * G.n
    for start in range(G.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in G.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    assignment = [None] * G.n
    out = []

    def extend(k):
        if k == len(order):
            out.append(GraphHom(G, H, list(assignment)))
            if len(out) > cap:
                raise ExplosionGuard(f"more than {cap} homomorphisms")
            return bool(first_only)
        u = order[k]
        candidates = None
        for v in G.neighbors(u):
            if assignment[v] is not None:
                nbrs = set(H.neighbors(assignment[v]))
                candidates = nbrs if candidates is None else candidates & nbrs
        if candidates is None:
            candidates = range(H.n)
        for x in sorted(candidates):
            assignment[u] = x
            if extend(k + 1):
                return True
            assignment[u] = None
        return False

    extend(0)
    out.sort(key=lambda f: f.mapping)
    return out


def has_hom(G, H):
    return bool(enumerate_graph_homs(G, H, first_only=True))


@dataclass(frozen=True)
class HomPoset:
    """A set of set-valued homomorphisms, closed under comparability zigzags."""

    elements: tuple
    index: dict = field(repr=False)

    @classmethod
    def from_elements(cls, elements):
        elements = tuple(sorted(elements, key=lambda e: e.key()))
        return cls(elements, {e: i for i, e in enumerate(elements)})

    def __len__(self):
        return len(self.elements)

    def leq(self, i, j):
        return self.elements[i].leq(self.elements[j])

    def singletons(self):
        return [e for e in self.elements if e.is_singleton()]

    def strict_upsets(self):
        """greater[i] = indices strictly above element i."""
        n = len(self.elements)
        greater = [[] for _ in range(n)]
        for i, j in itertools.permutations(range(n), 2):
            if self.elements[i] != self.elements[j] and self.leq(i, j):
                greater[i].append(j)
        return [sorted(g) for g in greater]


def _single_moves(element, square_free_target):
    """All elements one set-element away from this one (either direction)."""
    G, H = element.domain, element.codomain
    sets = element.sets
    out = []
    for u in range(G.n):
        s = sets[u]
        if len(s) >= 2:
            for x in sorted(s):
                out.append(
                    SetValuedHom(
                        G, H, sets[:u] + (s - {x},) + sets[u + 1 :]
                    )
                )
        for x in range(H.n):
            if x in s:
                continue
            if square_free_target and s:
                # growing u to two or more values forces all its neighbors
                # to carry one common singleton
                nbr_sets = [sets[v] for v in G.neighbors(u)]
                if nbr_sets and (
                    any(len(t) != 1 for t in nbr_sets) or len(set().union(*nbr_sets)) != 1
                ):
                    continue
            if all(sets[v] <= frozenset(H.neighbors(x)) for v in G.neighbors(u)):
                out.append(
                    SetValuedHom(G, H, sets[:u] + (s | {x},) + sets[u + 1 :])
                )
    return out


def enumerate_component(G, H, f, cap=DEFAULT_CAP):
    """The full poset component of the homomorphism f, found by BFS."""
    if isinstance(f, GraphHom):
        start = SetValuedHom.from_graph_hom(f)
    else:
        start = f
    square_free_target = is_square_free(H)
    seen = {start}
    queue = [start]
    while queue:
        current = queue.pop()
        for nxt in _single_moves(current, square_free_target):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise ExplosionGuard(f"component exceeded the cap of {cap}")
                queue.append(nxt)
    return HomPoset.from_elements(seen)


def order_complex(P, cap=DEFAULT_CAP):
    """Chains of the poset, as an abstract simplicial complex."""
    return complex_from_chains(len(P), P.strict_upsets(), cap=cap)


def component_betti(P, max_dim=2, cap=DEFAULT_CAP):
    return betti_numbers(order_complex(P, cap=cap), max_dim)


@dataclass(frozen=True)
class ComponentSummary:
    poset: HomPoset
    betti: tuple
    k2_factoring: bool
    representative: GraphHom

    def to_json(self):
        return {
            "betti": list(self.betti),
            "homs": len(self.poset.singletons()),
            "k2_factoring": self.k2_factoring,
            "representative": {"mapping": list(self.representative.mapping)},
            "size": len(self.poset),
        }


def component_census(G, H, cap=DEFAULT_CAP, max_dim=2):
    """Every component of the homomorphism poset, with homology and markers.

    Components are listed by their lexicographically least homomorphism.
    """
    homs = enumerate_graph_homs(G, H, cap=cap)
    summaries = []
    assigned = set()
    for f in homs:
        if f in assigned:
            continue
        P = enumerate_component(G, H, f, cap=cap)
        members = [s.as_graph_hom() for s in P.singletons()]
        assigned.update(members)
        rep = min(members, key=lambda h: h.mapping)
        summaries.append(
            ComponentSummary(
                poset=P,
                betti=component_betti(P, max_dim=max_dim, cap=cap),
                k2_factoring=any(h.factors_through_edge() for h in members),
                representative=rep,
            )
        )
    summaries.sort(key=lambda s: s.representative.mapping)
    total = sum(len(s.poset.singletons()) for s in summaries)
    if total != len(homs):
        raise InvariantViolation(
            "components do not partition the homomorphism set"
        )
    return summaries


def census_report(G, H, cap=DEFAULT_CAP, max_dim=2):
    summaries = component_census(G, H, cap=cap, max_dim=max_dim)
    return {
        "components": [s.to_json() for s in summaries],
        "graph_meta": {"codomain": graph_to_json(H), "domain": graph_to_json(G)},
    }
