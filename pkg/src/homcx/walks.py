"""Walks in a graph and the reduced-walk algebra.

A walk is a nonempty vertex sequence with consecutive vertices adjacent. A
walk is reduced when it never backtracks (no x, y, x pattern). Reduced walks
compose like groupoid elements: concatenate, then cancel backtracking from
the seam. Length-zero walks act as identities and reversal is inversion.
"""

from __future__ import annotations

from .errors import NotClosed, SourceTargetMismatch
from .graphs import Graph, GraphHom


class Walk:
    """A walk in a fixed ambient graph, stored as its vertex sequence."""

    __slots__ = ("graph", "vertices", "_hash")

    def __init__(self, graph, vertices):
        vertices = tuple(vertices)
        if not vertices:
            raise ValueError("a walk needs at least one vertex")
        for x in vertices:
            if not (0 <= x < graph.n):
                raise ValueError(f"vertex {x!r} out of range")
        for a, b in zip(vertices, vertices[1:]):
            if not graph.has_edge(a, b):
                raise ValueError(f"({a}, {b}) is not an edge, so this is not a walk")
        self.graph = graph
        self.vertices = vertices
        self._hash = hash((graph, vertices))

    @property
    def source(self):
        return self.vertices[0]

    @property
    def target(self):
        return self.vertices[-1]

    @property
    def length(self):
        return len(self.vertices) - 1

    def is_closed(self):
        return self.source == self.target

    def is_reduced(self):
        v = self.vertices
        return all(v[i] != v[i + 2] for i in range(len(v) - 2))

    def __eq__(self, other):
        return (
            isinstance(other, Walk)
            and self.graph == other.graph
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}{self.vertices}"


class ReducedWalk(Walk):
    """A walk with no backtracking anywhere."""

    __slots__ = ()

    def __init__(self, graph, vertices):
        super().__init__(graph, vertices)
        v = self.vertices
        for i in range(len(v) - 2):
            if v[i] == v[i + 2]:
                raise ValueError(f"backtrack at position {i}: {v[i:i + 3]}")


def trivial_walk(graph, x):
    """The length-zero walk sitting at x."""
    return ReducedWalk(graph, (x,))


def edge_walk(graph, x, y):
    return ReducedWalk(graph, (x, y))


def reduce_walk(walk):
    """Fully cancel backtracking.

    One left-to-right stack pass suffices: deleting an x, y, x pattern never
    creates an earlier one that the stack has not already seen, and every
    deletion order reaches this same normal form.
    """
    stack = []
    for x in walk.vertices:
        if len(stack) >= 2 and stack[-2] == x:
            stack.pop()
        else:
            stack.append(x)
    return ReducedWalk(walk.graph, stack)


def concat_walks(a, b):
    """Plain concatenation (no cancellation). Endpoints must meet."""
    if a.graph != b.graph:
        raise ValueError("walks live in different graphs")
    if a.target != b.source:
        raise SourceTargetMismatch(
            f"cannot append a walk starting at {b.source} after one ending at {a.target}"
        )
    return Walk(a.graph, a.vertices + b.vertices[1:])


def walk_product(a, b):
    """Groupoid product of reduced walks: concatenate, then reduce."""
    return reduce_walk(concat_walks(a, b))


def walk_inverse(w):
    """Reversal. Reduced walks stay reduced."""
    return type(w)(w.graph, tuple(reversed(w.vertices)))


def map_walk(f, walk):
    """Push a walk through a homomorphism, vertex by vertex. No reduction."""
    if walk.graph != f.domain:
        raise ValueError("walk does not live in the domain of the homomorphism")
    return Walk(f.codomain, tuple(f(x) for x in walk.vertices))


def pushed_walk(f, walk):
    """reduce(f(walk)): the image walk in reduced form."""
    return reduce_walk(map_walk(f, walk))


def is_cyclically_reduced(walk):
    """Reduced, length at least 3, and no backtracking across the seam either.

    Writing the walk as x_0, ..., x_k with x_k = x_0, the seam condition is
    x_{k-1} != x_1 (the wrap of the usual no-backtrack rule).
    """
    if not walk.is_closed():
        raise NotClosed(f"walk from {walk.source} to {walk.target} is not closed")
    if walk.length < 3 or not walk.is_reduced():
        return False
    return walk.vertices[-2] != walk.vertices[1]


def is_f_tight(f, walk):
    """Does the image of this closed walk stay cyclically reduced under f?"""
    if not walk.is_closed():
        raise NotClosed("tightness is only defined for closed walks")
    return is_cyclically_reduced(map_walk(f, walk))


# ---------------------------------------------------------------------------
# enumeration helpers


def reduced_walks_from(graph, source, max_len):
    """All reduced walks starting at source with length <= max_len.

    Ordered by (length, vertex sequence).
    """
    out = []
    frontier = [(source,)]
    level = 0
    while frontier and level <= max_len:
        out.extend(frontier)
        nxt = []
        for w in frontier:
            for y in graph.neighbors(w[-1]):
                if len(w) >= 2 and w[-2] == y:
                    continue
                nxt.append(w + (y,))
        frontier = nxt
        level += 1
    out.sort(key=lambda w: (len(w), w))
    return [ReducedWalk(graph, w) for w in out]


def all_reduced_walks(graph, max_len):
    """All reduced walks of length <= max_len from every source, sorted."""
    out = []
    for s in graph.vertices():
        out.extend(reduced_walks_from(graph, s, max_len))
    out.sort(key=lambda w: (w.length, w.vertices))
    return out


def closed_reduced_walks_at(graph, base, max_len):
    """All closed reduced walks at base with length <= max_len, sorted."""
    return [w for w in reduced_walks_from(graph, base, max_len) if w.target == base]
