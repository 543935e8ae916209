"""Pure simplicial complexes stored as facet lists.

A complex is the sorted tuple of its facets; every other face is derived on
demand and memoized on the instance. Vertex labels are non-negative integers.
"""
from __future__ import annotations

from functools import cached_property
from itertools import combinations
from math import comb

from .errors import (
    DuplicateVertexInFacet,
    EmptyInput,
    FaceNotPresent,
    NonUniformDimension,
    WrongDimension,
)

Simplex = tuple  # strictly increasing tuple of vertex labels


def simplex(vertices) -> Simplex:
    return tuple(sorted(vertices))


class Complex:
    """Immutable pure simplicial complex.

    Equality and hashing use the canonical (lexicographically sorted) facet
    tuple, so two complexes are equal iff they have the same labelled facets.
    """

    def __init__(self, facets):
        fs = tuple(sorted({simplex(f) for f in facets}))
        if not fs:
            raise EmptyInput("complex has no facets")
        self.facets = fs
        self.dim = len(fs[0]) - 1

    def __eq__(self, other):
        return isinstance(other, Complex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        body = ", ".join("".join(map(str, f)) if all(v < 10 for v in f) else str(f)
                         for f in self.facets[:6])
        more = ", ..." if len(self.facets) > 6 else ""
        return f"Complex(dim={self.dim}, f={len(self.facets)}: {body}{more})"

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, face):
        return simplex(face) in self.faces(len(face) - 1)

    @cached_property
    def facet_set(self) -> frozenset:
        return frozenset(self.facets)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for f in self.facets for v in f}))

    def faces(self, k: int) -> frozenset:
        """All k-dimensional faces (k = -1 gives the empty face)."""
        cache = self.__dict__.setdefault("_faces", {})
        if k not in cache:
            if k < -1 or k > self.dim:
                cache[k] = frozenset()
            else:
                cache[k] = frozenset(s for f in self.facets for s in combinations(f, k + 1))
        return cache[k]

    @cached_property
    def edges(self) -> frozenset:
        return self.faces(1)

    @cached_property
    def neighbors(self) -> dict:
        nb = {v: set() for v in self.vertices}
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return {v: frozenset(s) for v, s in nb.items()}

    @cached_property
    def facets_by_vertex(self) -> dict:
        out = {v: [] for v in self.vertices}
        for f in self.facets:
            for v in f:
                out[v].append(f)
        return {v: tuple(fs) for v, fs in out.items()}

    def facets_containing(self, face) -> list:
        face = simplex(face)
        if not face:
            return list(self.facets)
        cands = self.facets_by_vertex.get(face[0], ())
        rest = set(face[1:])
        return [f for f in cands if rest.issubset(f)]

    def relabel(self, mapping) -> "Complex":
        return Complex(tuple(mapping.get(v, v) for v in f) for f in self.facets)

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)


def from_facets(rows) -> Complex:
    """Validate raw rows and build a complex.

    >>> from_facets([[1, 2, 3], [1, 2, 4]]).facets
    ((1, 2, 3), (1, 2, 4))
    """
    rows = [list(r) for r in rows]
    if not rows:
        raise EmptyInput("no facets given")
    size = None
    for i, row in enumerate(rows):
        if len(set(row)) != len(row):
            raise DuplicateVertexInFacet(i)
        if not row:
            raise EmptyInput(f"row {i} is empty")
        if size is None:
            size = len(row)
        elif len(row) != size:
            raise NonUniformDimension(i)
    return Complex(rows)


def f_vector(c: Complex) -> tuple:
    return tuple(len(c.faces(k)) for k in range(-1, c.dim + 1))


def g2_invariant(c: Complex) -> int:
    d = c.dim
    fv = f_vector(c)
    return fv[2] - (d + 1) * fv[1] + comb(d + 2, 2)


def euler_characteristic(c: Complex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(f_vector(c)[1:]))


def _require_face(c, sigma):
    sigma = simplex(sigma)
    if sigma and sigma not in c.faces(len(sigma) - 1):
        raise FaceNotPresent(f"{sigma} is not a face")
    return sigma


def link_of(c: Complex, sigma) -> Complex:
    sigma = _require_face(c, sigma)
    if len(sigma) - 1 >= c.dim:
        raise WrongDimension("link of a facet is empty")
    s = set(sigma)
    return Complex(tuple(v for v in f if v not in s) for f in c.facets_containing(sigma))


def star_of(c: Complex, sigma) -> Complex:
    sigma = _require_face(c, sigma)
    return Complex(c.facets_containing(sigma))


def skeleton_graph(c: Complex) -> tuple:
    """Vertex tuple and sorted edge tuple of the 1-skeleton."""
    return c.vertices, tuple(sorted(c.edges))


def is_boundary_of_simplex(c: Complex) -> bool:
    return len(c.vertices) == c.dim + 2 and len(c.facets) == c.dim + 2


def missing_tetrahedra(c: Complex) -> list:
    """Vertex 4-sets absent from a 3-complex whose four triangles are present."""
    if c.dim != 3:
        raise WrongDimension("missing tetrahedra need a 3-dimensional complex")
    tris = c.faces(2)
    nb = c.neighbors
    out = []
    for tri in sorted(tris):
        a, b, e = tri
        for w in nb[a] & nb[b] & nb[e]:
            if w <= e:
                continue
            quad = (a, b, e, w)
            if quad in c.facet_set:
                continue
            if (a, b, w) in tris and (a, e, w) in tris and (b, e, w) in tris:
                out.append(quad)
    return sorted(out)


def missing_triangles(c: Complex) -> list:
    """Vertex 3-sets whose three edges are present but the triangle is not."""
    nb = c.neighbors
    tris = c.faces(2)
    out = []
    for a, b in sorted(c.edges):
        for w in nb[a] & nb[b]:
            if w > b and (a, b, w) not in tris:
                out.append((a, b, w))
    return sorted(out)


# -- isomorphism -----------------------------------------------------------

def _refine_colours(complexes):
    """Joint colour refinement of vertices on several complexes.

    Initial colour is (vertex degree, facet degree, link f-vector); each round
    appends the multiset of facet colour-profiles around a vertex.
    """
    colours = []
    for c in complexes:
        col = {}
        for v in c.vertices:
            fv = f_vector(link_of(c, (v,))) if c.dim >= 1 else ()
            col[v] = (len(c.neighbors[v]), len(c.facets_by_vertex[v]), fv)
        colours.append(col)
    palette = {}

    def compress(cols):
        keys = sorted({k for col in cols for k in col.values()}, key=repr)
        palette.clear()
        palette.update({k: i for i, k in enumerate(keys)})
        return [{v: palette[k] for v, k in col.items()} for col in cols]

    colours = compress(colours)
    n_classes = len(palette)
    while True:
        nxt = []
        for c, col in zip(complexes, colours):
            new = {}
            for v in c.vertices:
                prof = sorted(tuple(sorted(col[u] for u in f if u != v))
                              for f in c.facets_by_vertex[v])
                new[v] = (col[v], tuple(prof))
            nxt.append(new)
        colours = compress(nxt)
        if len(palette) == n_classes:
            return colours
        n_classes = len(palette)


def is_isomorphic(a: Complex, b: Complex):
    """Return a vertex bijection carrying facets of ``a`` onto facets of ``b``.

    Returns ``None`` when no such bijection exists. The search backtracks over
    refined colour classes, extending the map along the 1-skeleton and
    rejecting any partial map that breaks adjacency or facet membership.
    """
    if a.dim != b.dim or f_vector(a) != f_vector(b):
        return None
    ca, cb = _refine_colours([a, b])
    if sorted(ca.values()) != sorted(cb.values()):
        return None
    by_colour = {}
    for v in b.vertices:
        by_colour.setdefault(cb[v], []).append(v)
    class_size = {k: len(vs) for k, vs in by_colour.items()}

    # visit order: rarest colour first, then grow along edges
    order = []
    seen = set()
    remaining = sorted(a.vertices, key=lambda v: (class_size[ca[v]], v))
    while len(order) < len(remaining):
        start = next(v for v in remaining if v not in seen)
        seen.add(start)
        frontier = [start]
        while frontier:
            v = min(frontier, key=lambda u: (class_size[ca[u]], u))
            frontier.remove(v)
            order.append(v)
            for u in sorted(a.neighbors[v]):
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)

    facets_b = b.facet_set
    mapping = {}
    used = set()

    def consistent(v, w):
        for u, x in mapping.items():
            if (u in a.neighbors[v]) != (x in b.neighbors[w]):
                return False
        for f in a.facets_by_vertex[v]:
            if all(u == v or u in mapping for u in f):
                img = simplex(w if u == v else mapping[u] for u in f)
                if img not in facets_b:
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in by_colour[ca[v]]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(sorted(mapping.items()))
    return None


def check_certificate(a: Complex, b: Complex, mapping) -> bool:
    if set(mapping) != set(a.vertices) or sorted(mapping.values()) != list(b.vertices):
        return False
    return a.relabel(mapping) == b
