"""Recognition on surfaces and 3-pseudomanifolds.

Normality, closed-surface classification, stacked-sphere reduction, and the
separation / band tests for cycles drawn in a vertex link. The last part is
the search for the edge whose unfolding removes an RP2 singularity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .complex import (
    Complex,
    euler_characteristic,
    g2_invariant,
    is_boundary_of_simplex,
    link_of,
    simplex,
)
from .errors import (
    CycleEdgeMissing,
    NoWitness,
    NotClosedSurface,
    NotNormal,
    PreconditionViolated,
    WrongDimension,
)


@dataclass(frozen=True)
class SurfaceClass:
    connected: bool
    chi: int
    orientable: bool
    name: str
    betti1_mod2: int


@dataclass(frozen=True)
class NormalityReport:
    is_pure: bool
    every_ridge_in_two_facets: bool
    strongly_connected: bool
    all_vertex_links_closed_connected_surfaces: bool
    is_pseudomanifold: bool
    is_normal: bool
    per_vertex: dict = field(default_factory=dict)


class BandType(str, enum.Enum):
    ANNULUS = "annulus"
    MOEBIUS = "moebius"


# -- small graph helpers ---------------------------------------------------

class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted(sorted(v) for v in out.values())


def ridge_map(c: Complex) -> dict:
    """Map each codimension-one face to the facets containing it."""
    out = {}
    for f in c.facets:
        for i in range(len(f)):
            out.setdefault(f[:i] + f[i + 1:], []).append(f)
    return out


def dual_components(facets, forbidden=frozenset()) -> list:
    """Components of the dual graph; adjacency across ``forbidden`` ridges is cut."""
    uf = _UnionFind(facets)
    seen = {}
    for f in facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1:]
            if r in forbidden:
                continue
            if r in seen:
                uf.union(seen[r], f)
            else:
                seen[r] = f
    return uf.classes()


def _is_single_cycle(link: Complex) -> bool:
    if link.dim != 1:
        return False
    deg = {}
    for a, b in link.facets:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(d == 2 for d in deg.values()) and len(dual_components_vertices(link)) == 1


def dual_components_vertices(c: Complex) -> list:
    uf = _UnionFind(c.vertices)
    for f in c.facets:
        for v in f[1:]:
            uf.union(f[0], v)
    return uf.classes()


# -- surfaces --------------------------------------------------------------

def closed_surface_defect(s: Complex):
    """Reason ``s`` is not a closed connected surface, or None."""
    if s.dim != 2 or not s.is_pure():
        return "not a pure 2-dimensional complex"
    for edge, tris in ridge_map(s).items():
        if len(tris) != 2:
            return f"edge {edge} lies in {len(tris)} triangles"
    for v in s.vertices:
        if not _is_single_cycle(link_of(s, (v,))):
            return f"link of vertex {v} is not a single cycle"
    if len(dual_components(s.facets)) != 1:
        return "disconnected"
    return None


def orient(s: Complex):
    """Consistent orientation of a closed surface or ``None``.

    Propagates orientations through the dual graph breadth-first. The result
    maps each triangle to a vertex triple whose cyclic order is its orientation;
    two triangles sharing an edge traverse it in opposite directions.
    """
    ridges = ridge_map(s)
    oriented = {}
    for start in s.facets:
        if start in oriented:
            continue
        oriented[start] = start
        queue = [start]
        while queue:
            tri = queue.pop()
            a, b, e = oriented[tri]
            for u, v in ((a, b), (b, e), (e, a)):
                for other in ridges[simplex((u, v))]:
                    if other == tri:
                        continue
                    w = next(x for x in other if x not in (u, v))
                    want = (v, u, w)  # must run v -> u
                    if other in oriented:
                        if not _same_cycle(oriented[other], want):
                            return None
                    else:
                        oriented[other] = want
                        queue.append(other)
    return oriented


def _same_cycle(p, q):
    i = q.index(p[0])
    return q[i:] + q[:i] == tuple(p)


def classify_surface(s: Complex) -> SurfaceClass:
    reason = closed_surface_defect(s)
    if reason is not None:
        raise NotClosedSurface(reason)
    chi = euler_characteristic(s)
    orientable = orient(s) is not None
    if orientable:
        g = (2 - chi) // 2
        name = {0: "sphere", 1: "torus"}.get(g, f"orientable-genus-{g}")
    else:
        k = 2 - chi
        name = {1: "RP2", 2: "klein"}.get(k, f"nonorientable-genus-{k}")
    return SurfaceClass(True, chi, orientable, name, 2 - chi)


def check_normal_pseudomanifold(c: Complex) -> NormalityReport:
    if c.dim not in (2, 3):
        raise WrongDimension("normality is checked for dimension 2 or 3")
    pure = c.is_pure()
    ridges = ridge_map(c)
    two = all(len(fs) == 2 for fs in ridges.values())
    strong = len(dual_components(c.facets)) == 1
    pseudo = pure and two and strong
    per_vertex = {}
    links_ok = True
    for v in c.vertices:
        lk = link_of(c, (v,))
        if c.dim == 3:
            if closed_surface_defect(lk) is None:
                per_vertex[v] = classify_surface(lk)
            else:
                links_ok = False
        elif not _is_single_cycle(lk):
            links_ok = False
    return NormalityReport(pure, two, strong, links_ok, pseudo, pseudo and links_ok, per_vertex)


def singular_vertices(c: Complex) -> list:
    report = check_normal_pseudomanifold(c)
    if c.dim != 3 or not report.is_normal:
        raise NotNormal("singular vertices need a normal 3-pseudomanifold")
    return [(v, sc) for v, sc in sorted(report.per_vertex.items()) if sc.name != "sphere"]


def g2_minimal_witnesses(c: Complex) -> list:
    report = check_normal_pseudomanifold(c)
    if c.dim != 3 or not report.is_normal:
        raise NotNormal("g2-minimality needs a normal 3-pseudomanifold")
    g = g2_invariant(c)
    return [v for v in c.vertices if g2_invariant(link_of(c, (v,))) == g]


def is_stacked_sphere(c: Complex) -> bool:
    """Greedy inverse stacking: delete a degree d+1 vertex, restore its facet."""
    if c.dim not in (2, 3):
        raise WrongDimension("stacked-sphere test supports dimension 2 or 3")
    d = c.dim
    while not is_boundary_of_simplex(c):
        for v in c.vertices:
            nb = c.neighbors[v]
            if len(nb) != d + 1:
                continue
            star = c.facets_by_vertex[v]
            missing = simplex(nb)
            if len(star) == d + 1 and missing not in c.facet_set:
                c = Complex([f for f in c.facets if v not in f] + [missing])
                break
        else:
            return False
    return True


# -- cycles in surfaces ----------------------------------------------------

def cycle_edges(cyc) -> list:
    n = len(cyc)
    return [simplex((cyc[i], cyc[(i + 1) % n])) for i in range(n)]


def _check_cycle(s: Complex, cyc):
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise CycleEdgeMissing("a cycle needs at least three distinct vertices")
    for e in cycle_edges(cyc):
        if e not in s.edges:
            raise CycleEdgeMissing(f"edge {e} is not in the surface")


def cycle_separates(s: Complex, cyc) -> bool:
    _check_cycle(s, cyc)
    return len(dual_components(s.facets, frozenset(cycle_edges(cyc)))) > 1


def _fan_sides(s: Complex, v, prev, nxt):
    """Split the triangles around ``v`` into the two sides of prev-v-nxt."""
    fan = s.facets_by_vertex[v]
    blocked = {simplex((v, prev)), simplex((v, nxt))}
    uf = _UnionFind(fan)
    by_edge = {}
    for tri in fan:
        for u in tri:
            if u == v:
                continue
            e = simplex((v, u))
            if e in blocked:
                continue
            if e in by_edge:
                uf.union(by_edge[e], tri)
            else:
                by_edge[e] = tri
    return {tri: uf.find(tri) for tri in fan}


def cycle_band(s: Complex, cyc) -> BandType:
    """Walk once around ``cyc`` carrying a side marker.

    At every cycle vertex the surrounding triangles fall into two sides of the
    path through it; the marker is the side of the triangle we arrive in. The
    band is a Moebius strip iff the marker comes back on the other side.
    """
    _check_cycle(s, cyc)
    n = len(cyc)
    sides = [_fan_sides(s, cyc[i], cyc[i - 1], cyc[(i + 1) % n]) for i in range(n)]
    first_edge = simplex((cyc[0], cyc[1]))
    tri = min(t for t in s.facets_by_vertex[cyc[0]] if set(first_edge) <= set(t))
    start_side = sides[0][tri]
    for i in range(1, n + 1):
        j = i % n
        side = sides[j][tri]
        nxt_edge = set(simplex((cyc[j], cyc[(j + 1) % n])))
        if j == 0:
            return BandType.ANNULUS if side == start_side else BandType.MOEBIUS
        tri = next(t for t in s.facets_by_vertex[cyc[j]]
                   if nxt_edge <= set(t) and sides[j][t] == side)
    raise AssertionError("unreachable")


# -- edge-folding witness --------------------------------------------------

def _is_orientable_piece(tris) -> bool:
    """Orientability of a triangulated surface with boundary, by propagation."""
    oriented = {}
    by_edge = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            by_edge.setdefault(e, []).append(t)
    for start in tris:
        if start in oriented:
            continue
        oriented[start] = start
        queue = [start]
        while queue:
            tri = queue.pop()
            a, b, e = oriented[tri]
            for u, v in ((a, b), (b, e), (e, a)):
                for other in by_edge[simplex((u, v))]:
                    if other == tri:
                        continue
                    w = next(x for x in other if x not in (u, v))
                    want = (v, u, w)
                    if other in oriented:
                        if not _same_cycle(oriented[other], want):
                            return False
                    else:
                        oriented[other] = want
                        queue.append(other)
    return True


def _interior_edges(tris):
    count = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            count[e] = count.get(e, 0) + 1
    return sorted(e for e, k in count.items() if k == 2)


def band_without_vertex(c: Complex, v, t) -> list:
    """Triangles of the link of ``v`` that avoid ``t``."""
    return [tri for tri in link_of(c, (v,)).facets if t not in tri]


def cut_to_noncut_band(tris) -> list:
    """Cut a Moebius band along cut edges until every interior edge is non-cut.

    Cutting always keeps the non-orientable side; the disc side is dropped.
    Edges are cut in increasing order.
    """
    tris = sorted(tris)
    while True:
        for e in _interior_edges(tris):
            comps = dual_components(tris, frozenset([e]))
            if len(comps) == 1:
                continue
            keep = [p for p in comps if not _is_orientable_piece(p)]
            if len(keep) != 1:
                raise PreconditionViolated(f"cutting along {e} does not leave one Moebius band")
            tris = keep[0]
            break
        else:
            return tris


def find_efold_witness(c: Complex, t, v) -> tuple:
    """Find a non-cut edge xy of lk(v) - st(t) spanning a Moebius missing tetrahedron.

    Returns ``(x, y)`` with ``x < y`` such that ``xyvt`` is a missing
    tetrahedron of ``c``, both ``x`` and ``y`` are non-singular, and the triangle
    boundary ``t-x-y`` has a Moebius neighbourhood in the link of ``v``.
    """
    if t == v:
        raise PreconditionViolated("t and v must differ")
    report = check_normal_pseudomanifold(c)
    if c.dim != 3 or not report.is_normal:
        raise PreconditionViolated("input is not a normal 3-pseudomanifold")
    if v not in report.per_vertex or report.per_vertex[v].name != "RP2":
        raise PreconditionViolated(f"link of {v} is not RP2")
    if t not in c.neighbors[v]:
        raise PreconditionViolated(f"{t} and {v} are not adjacent")
    lk_v = link_of(c, (v,))
    band = band_without_vertex(c, v, t)
    band_vertices = {x for tri in band for x in tri}
    interior = sorted(x for x in band_vertices if t not in lk_v.neighbors[x])
    if interior:
        raise PreconditionViolated(
            f"lk({v}) minus the star of {t} has interior vertices {interior}"
            " (no interior vertex is possible when G(c) = G(st(t)))")
    if not graph_in_star(c, t):
        raise PreconditionViolated(f"graph of the complex is not the graph of st({t})")
    singular = {x for x, sc in report.per_vertex.items() if sc.name != "sphere"}
    final = cut_to_noncut_band(band)
    tris = c.faces(2)
    for x, y in _interior_edges(final):
        if x in singular or y in singular:
            continue
        quad = simplex((x, y, v, t))
        if quad in c.facet_set:
            continue
        if not all(simplex(q) in tris for q in ((x, y, v), (x, y, t), (x, v, t), (y, v, t))):
            continue
        if cycle_band(lk_v, (t, x, y)) != BandType.MOEBIUS:
            continue
        return (x, y)
    raise NoWitness(f"no edge-folding witness for v={v}, t={t}")


def graph_in_star(c: Complex, t) -> bool:
    """True iff every vertex and edge of ``c`` lies in the star of ``t``."""
    star_vertices = c.neighbors[t] | {t}
    if set(c.vertices) != star_vertices:
        return False
    tris = c.faces(2)
    return all(t in e or simplex((t,) + e) in tris for e in c.edges)
