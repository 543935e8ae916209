"""Inverse calculus: cutting along missing tetrahedra and decomposition trees.

A missing tetrahedron's boundary is a 2-sphere in the complex. Cutting along
it and capping the two resulting boundary spheres undoes a connected sum, a
vertex folding or an edge folding, depending on which of its four vertices
have links separated by the opposite triangle. The decomposition pipeline
chains these cuts into a replayable tree whose leaves are simplex boundaries
and one-vertex suspensions of surfaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .complex import (
    Complex,
    f_vector,
    g2_invariant,
    is_boundary_of_simplex,
    is_isomorphic,
    link_of,
    missing_tetrahedra,
    missing_triangles,
    simplex,
)
from .constructions import (
    FoldingSpec,
    edge_folding,
    glue_along,
    one_vertex_suspension,
    vertex_folding,
)
from .errors import (
    MalformedCut,
    NotG2Minimal,
    NotMissing,
    NotNormal,
    PreconditionViolated,
    ReplayMismatch,
    TheoremViolation,
    UnsupportedProfile,
)
from .surfaces import (
    BandType,
    _UnionFind,
    check_normal_pseudomanifold,
    cycle_band,
    cycle_separates,
    dual_components,
    find_efold_witness,
    graph_in_star,
    is_stacked_sphere,
    ridge_map,
    singular_vertices,
)


@dataclass(frozen=True)
class MissingTetra:
    verts: tuple
    sep: dict
    band: dict

    @property
    def nonseparating(self) -> tuple:
        return tuple(a for a in self.verts if not self.sep[a])


@dataclass(frozen=True)
class CutOutcome:
    """Result of cutting along a missing tetrahedron and capping.

    ``variant`` is one of ``split``, ``vertex_unfold``, ``edge_unfold`` and
    ``handle``. For a split, ``complexes`` holds both summands (each capped
    with the tetrahedron itself, original labels kept). For an unfolding,
    ``complexes`` holds the single unfolded complex and ``spec`` is the folding
    that maps it back onto the input.
    """

    variant: str
    tetra: tuple
    complexes: tuple = ()
    spec: FoldingSpec | None = None

    @property
    def fixed(self) -> tuple:
        return self.spec.fixed if self.spec else ()


def analyze_missing_tetra(c: Complex, sigma) -> MissingTetra:
    sigma = simplex(sigma)
    if not _is_missing(c, sigma):
        raise NotMissing(f"{sigma} is not a missing tetrahedron")
    sep, band = {}, {}
    for a in sigma:
        lk = link_of(c, (a,))
        cyc = [b for b in sigma if b != a]
        sep[a] = cycle_separates(lk, cyc)
        if not sep[a]:
            band[a] = cycle_band(lk, cyc)
    return MissingTetra(sigma, sep, band)


def _is_missing(c, sigma):
    if len(sigma) != 4 or c.dim != 3 or sigma in c.facet_set:
        return False
    tris = c.faces(2)
    return all(tri in tris for tri in combinations(sigma, 3))


def cut_and_cap(c: Complex, mt: MissingTetra) -> CutOutcome:
    sigma = mt.verts
    if not _is_missing(c, sigma):
        raise NotMissing(f"{sigma} is not a missing tetrahedron")
    sset = set(sigma)
    boundary = set(combinations(sigma, 3))
    ridges = ridge_map(c)

    # corners (facet, vertex of sigma) joined through uncut triangles
    corners = _UnionFind()
    for f in c.facets:
        for a in sset.intersection(f):
            corners.add((f, a))
    for tri, fs in ridges.items():
        if tri in boundary or len(fs) != 2:
            continue
        for a in sset.intersection(tri):
            corners.union((fs[0], a), (fs[1], a))

    # incidences (boundary triangle, facet) joined along arcs around sigma's edges
    incid = _UnionFind()
    for tri in boundary:
        if len(ridges[tri]) != 2:
            raise MalformedCut(f"triangle {tri} is not in exactly two facets")
        for f in ridges[tri]:
            incid.add((tri, f))
    # around an edge joining two non-separating vertices the sides swap, so
    # both caps contain that edge; those arcs are checked after the split
    swapped = []
    for e in combinations(sigma, 2):
        arcs = _UnionFind(c.facets_containing(e))
        for f in c.facets_containing(e):
            for tri in combinations(f, 3):
                if set(e) <= set(tri) and tri not in boundary:
                    for g in ridges[tri]:
                        arcs.union(f, g)
        ends = [(tri, f) for tri in boundary if set(e) <= set(tri) for f in ridges[tri]]
        for i, p in enumerate(ends):
            for q in ends[i + 1:]:
                if p[0] != q[0] and arcs.find(p[1]) == arcs.find(q[1]):
                    if mt.sep[e[0]] or mt.sep[e[1]]:
                        incid.union(p, q)
                    else:
                        swapped.append((p, q))
    sides = incid.classes()
    if len(sides) != 2 or any(len(s) != 4 for s in sides):
        raise MalformedCut(f"boundary of {sigma} does not cut into two spheres")
    if any(incid.find(p) == incid.find(q) for p, q in swapped):
        raise MalformedCut(f"sides of {sigma} do not swap across its fixed edge")

    caps = []
    for side in sides:
        cap = {}
        for tri, f in side:
            for a in tri:
                cls = corners.find((f, a))
                if cap.setdefault(a, cls) != cls:
                    raise MalformedCut(f"inconsistent corner classes at {a}")
        caps.append(cap)
    for a in sigma:
        split = caps[0][a] != caps[1][a]
        n_classes = len({corners.find((f, a)) for f in c.facets_by_vertex[a]})
        if split != mt.sep[a] or n_classes != (2 if split else 1):
            raise MalformedCut(f"corner classes at {a} disagree with separation data")

    # corner classes get provisional negative labels until the cut is classified
    prov, origin = {}, {}
    for (f, a) in corners.parent:
        root = corners.find((f, a))
        if root not in prov:
            prov[root] = -1 - len(prov)
            origin[prov[root]] = a
    caps = [{a: prov[cls] for a, cls in cap.items()} for cap in caps]

    def cut_facet(f):
        return simplex(prov[corners.find((f, v))] if v in sset else v for v in f)

    pieces = [cut_facet(f) for f in c.facets] + [simplex(cap.values()) for cap in caps]
    comps = dual_components(pieces)
    nonsep = mt.nonseparating

    if len(comps) == 2:
        if nonsep:
            raise MalformedCut("a split needs every vertex separating")
        out = []
        for comp in comps:
            out.append(Complex(tuple(origin.get(v, v) for v in p) for p in comp))
        out.sort(key=lambda k: k.facets)
        if g2_invariant(out[0]) + g2_invariant(out[1]) != g2_invariant(c):
            raise MalformedCut("g2 is not additive over the split")
        return CutOutcome("split", sigma, tuple(out))

    if not nonsep:
        return CutOutcome("handle", sigma)
    if len(nonsep) == 1 and mt.band[nonsep[0]] == BandType.ANNULUS:
        variant, drop = "vertex_unfold", 6
    elif len(nonsep) == 2 and all(mt.band[a] == BandType.MOEBIUS for a in nonsep):
        variant, drop = "edge_unfold", 3
    else:
        bands = {a: mt.band[a].value for a in nonsep}
        raise TheoremViolation(f"unmatched cut data at {sigma}: non-separating {bands}")

    # the copy holding the smallest facet keeps the label, the other is fresh
    fresh = max(c.vertices) + 1
    label = {}
    for a in sigma:
        if caps[0][a] == caps[1][a]:
            label[caps[0][a]] = a
            continue
        owner = {}
        for f in c.facets_by_vertex[a]:
            owner.setdefault(prov[corners.find((f, a))], f)
        first, second = sorted((caps[0][a], caps[1][a]), key=lambda k: owner[k])
        label[first] = a
        label[second] = fresh
        fresh += 1

    def relabel(p):
        return simplex(label.get(v, v) for v in p)

    out = Complex(relabel(p) for p in pieces)
    cap1 = [label[caps[0][a]] for a in sigma]
    cap2 = [label[caps[1][a]] for a in sigma]
    if simplex(cap2) < simplex(cap1):
        cap1, cap2 = cap2, cap1
    spec = FoldingSpec.make(cap1, cap2, dict(zip(cap1, cap2)),
                            "vertex" if variant == "vertex_unfold" else "edge")
    if g2_invariant(out) != g2_invariant(c) - drop:
        raise MalformedCut(f"{variant} does not lower g2 by {drop}")
    return CutOutcome(variant, sigma, (out,), spec)


def cut_along(c: Complex, sigma) -> CutOutcome:
    return cut_and_cap(c, analyze_missing_tetra(c, sigma))


# -- decomposition trees ---------------------------------------------------

@dataclass
class Leaf:
    kind: str  # boundary_simplex | suspension | unrecognized
    complex: Complex
    surface: Complex | None = None
    apex: int | None = None
    poles: tuple | None = None
    note: str = ""


@dataclass
class Node:
    op: str  # split | subdivision_undo | vertex_unfold | edge_unfold
    complex: Complex
    children: tuple
    facet: tuple = ()
    spec: FoldingSpec | None = None


@dataclass
class DecompositionTree:
    root: object
    witness: int | None = None
    notes: list = field(default_factory=list)

    def nodes(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            if isinstance(n, Node):
                stack.extend(reversed(n.children))

    def leaves(self) -> list:
        return [n for n in self.nodes() if isinstance(n, Leaf)]

    def summary(self) -> dict:
        ops = [n.op for n in self.nodes() if isinstance(n, Node)]
        leaves = self.leaves()
        return {
            "witness": self.witness,
            "vertex_foldings": ops.count("vertex_unfold"),
            "edge_foldings": ops.count("edge_unfold"),
            "connected_sums": ops.count("split") + ops.count("subdivision_undo"),
            "subdivisions": ops.count("subdivision_undo"),
            "leaves": len(leaves),
            "boundary_simplex_leaves": sum(lf.kind == "boundary_simplex" for lf in leaves),
            "suspension_leaves": sum(lf.kind == "suspension" for lf in leaves),
            "unrecognized_leaves": sum(lf.kind == "unrecognized" for lf in leaves),
        }

    def g2_ledger(self) -> tuple:
        """(g2 of root, sum over leaves + 6 per vertex unfold + 3 per edge unfold)."""
        s = self.summary()
        total = sum(g2_invariant(lf.complex) for lf in self.leaves())
        total += 6 * s["vertex_foldings"] + 3 * s["edge_foldings"]
        return g2_invariant(self.root.complex), total


def _bd4_leaf(c):
    return Leaf("boundary_simplex", c)


def recognize_suspension(c: Complex):
    """Find poles (x, y) with ``c`` equal to a one-vertex suspension.

    Returns ``(surface, apex, poles)`` where ``surface`` is lk(x) with y renamed
    to the fresh label ``apex``, so that
    ``one_vertex_suspension(surface, apex, poles) == c``; otherwise None.
    """
    if c.dim < 2:
        return None
    apex = max(c.vertices) + 1
    links = {}
    for x, y in sorted(c.edges):
        for v in (x, y):
            if v not in links:
                links[v] = link_of(c, (v,))
        if f_vector(links[x]) != f_vector(links[y]):
            continue
        surface = links[x].relabel({y: apex})
        try:
            rebuilt = one_vertex_suspension(surface, apex, (x, y))
        except Exception:
            continue
        if rebuilt == c and is_isomorphic(links[x], links[y]) is not None:
            return surface, apex, (x, y)
    return None


def _supported_profile(c, t, sing):
    names = dict(sing)
    rp2_others = sum(1 for v, sc in sing if v != t and sc.name == "RP2")
    n = len(names)
    return n <= 2 or (n == 3 and rp2_others >= 1) or (n == 4 and rp2_others >= 2)


def _require_minimal(c, t):
    report = check_normal_pseudomanifold(c)
    if c.dim != 3 or not report.is_normal:
        raise NotNormal("decomposition needs a normal 3-pseudomanifold")
    if g2_invariant(c) != g2_invariant(link_of(c, (t,))):
        raise NotG2Minimal(f"g2 of the complex differs from g2 of lk({t})")


def _check_induced_triangles(c, t):
    tris = c.faces(2)
    for tri in missing_triangles(c):
        edges = combinations(tri, 2)
        if not all(t in e or simplex((t,) + e) in tris for e in edges):
            raise TheoremViolation(f"induced 3-cycle {tri} is not in st({t})")


@dataclass(frozen=True)
class ReductionStep:
    op: str  # subdivision_undo | split
    before: Complex
    after: Complex
    facet: tuple
    removed: Complex  # the boundary simplex or stacked summand split off


def _reduce_steps(c, t):
    _require_minimal(c, t)
    sing = singular_vertices(c)
    if not _supported_profile(c, t, sing):
        raise UnsupportedProfile(f"singular profile {[(v, s.name) for v, s in sing]}")
    _check_induced_triangles(c, t)
    steps = []
    while True:
        outside = [v for v in c.vertices if v != t and v not in c.neighbors[t]]
        if not outside:
            break
        v = outside[0]
        lk = link_of(c, (v,))
        if not is_stacked_sphere(lk):
            raise TheoremViolation(f"link of {v} outside st({t}) is not a stacked sphere")
        if is_boundary_of_simplex(lk):
            sigma = lk.vertices
            if sigma in c.facet_set:
                raise TheoremViolation(f"{sigma} already a facet next to {v}")
            after = Complex([f for f in c.facets if v not in f] + [sigma])
            removed = Complex(combinations(simplex(sigma + (v,)), 4))
            steps.append(ReductionStep("subdivision_undo", c, after, sigma, removed))
            c = after
            continue
        singular = {u for u, _ in singular_vertices(c)}
        tris = c.faces(2)
        candidates = [tri for tri in missing_triangles(lk)
                      if tri in tris and len(singular.intersection(tri)) <= 2]
        if not candidates:
            raise TheoremViolation(f"no usable missing tetrahedron at {v}")
        sigma = simplex(candidates[0] + (v,))
        out = cut_along(c, sigma)
        if out.variant != "split":
            raise TheoremViolation(f"cut at {sigma} is a {out.variant}, expected a split")
        keep, other = out.complexes
        if t not in keep.vertices:
            keep, other = other, keep
        if g2_invariant(other) != 0 or not is_stacked_sphere(other):
            raise TheoremViolation(f"summand split off at {sigma} is not a stacked sphere")
        steps.append(ReductionStep("split", c, keep, sigma, other))
        c = keep
    if not graph_in_star(c, t):
        raise TheoremViolation(f"graph of the reduced complex is not the graph of st({t})")
    return c, steps


def reduce_to_star(c: Complex, t) -> tuple:
    """Undo facet subdivisions and stacked summands away from ``t``.

    Returns ``(reduced, split_off, undone)``: the reduced complex whose graph is
    the graph of st(t), the stacked spheres split off, and the undone
    subdivisions as ``(vertex, facet)`` pairs.
    """
    reduced, steps = _reduce_steps(c, t)
    split_off = [s.removed for s in steps if s.op == "split"]
    undone = [(next(v for v in s.removed.vertices if v not in s.facet), s.facet)
              for s in steps if s.op == "subdivision_undo"]
    return reduced, split_off, undone


@dataclass(frozen=True)
class EdgeUnfoldRecord:
    vertex: int
    witness_edge: tuple
    tetra: tuple
    before: Complex
    after: Complex
    spec: FoldingSpec


def _rp2_others(c, t):
    return [v for v, sc in singular_vertices(c) if v != t and sc.name == "RP2"]


def _betti(c, v):
    return check_normal_pseudomanifold(c).per_vertex[v].betti1_mod2


def strip_rp2_singularities(c: Complex, t) -> tuple:
    """Edge-unfold RP2 singularities until two singular vertices remain."""
    report = check_normal_pseudomanifold(c)
    if c.dim != 3 or not report.is_normal:
        raise PreconditionViolated("input is not a normal 3-pseudomanifold")
    if g2_invariant(c) != g2_invariant(link_of(c, (t,))):
        raise PreconditionViolated(f"complex is not g2-minimal with respect to {t}")
    if not graph_in_star(c, t):
        raise PreconditionViolated(f"graph of the complex is not the graph of st({t})")
    records = []
    while len(singular_vertices(c)) > 2:
        rp2 = _rp2_others(c, t)
        if not rp2:
            raise PreconditionViolated("more than two singular vertices but no RP2 one besides t")
        v = rp2[0]
        x, y = find_efold_witness(c, t, v)
        sigma = simplex((x, y, v, t))
        out = cut_along(c, sigma)
        if out.variant != "edge_unfold" or set(out.fixed) != {t, v}:
            raise TheoremViolation(f"cut at {sigma} is not an edge unfolding at {t}{v}")
        after = out.complexes[0]
        if g2_invariant(link_of(after, (v,))) != 0:
            raise TheoremViolation(f"{v} is still singular after unfolding")
        if len(_rp2_others(after, t)) != len(rp2) - 1:
            raise TheoremViolation("edge unfolding did not remove exactly one RP2 singularity")
        if _betti(after, t) != _betti(c, t) - 1:
            raise TheoremViolation(f"betti number of lk({t}) did not drop by one")
        if not graph_in_star(after, t):
            raise TheoremViolation(f"graph condition lost after unfolding at {t}{v}")
        records.append(EdgeUnfoldRecord(v, (x, y), sigma, c, after, out.spec))
        c = after
    return c, records


def _decompose(c, t, budget, notes) -> object:
    if is_boundary_of_simplex(c):
        return _bd4_leaf(c)
    if budget[0] <= 0:
        return Leaf("unrecognized", c, note="iteration cap reached")
    vertex_cut = None
    for sigma in missing_tetrahedra(c):
        try:
            out = cut_along(c, sigma)
        except TheoremViolation as exc:
            notes.append(f"skipped {sigma}: {exc}")
            continue
        if out.variant == "handle":
            raise TheoremViolation(
                f"handle detected at {sigma}; impossible for a g2-minimal complex")
        if out.variant == "split":
            budget[0] -= 1
            children = []
            for side in out.complexes:
                if t in side.vertices:
                    children.append(_decompose(side, t, budget, notes))
                else:
                    if not is_stacked_sphere(side):
                        notes.append(f"summand at {sigma} away from {t} is not stacked")
                    children.append(_decompose(side, side.vertices[0], budget, notes))
            return Node("split", c, tuple(children), facet=sigma)
        if out.variant == "vertex_unfold" and vertex_cut is None:
            vertex_cut = out
    found = recognize_suspension(c)
    if found is not None:
        surface, apex, poles = found
        return Leaf("suspension", c, surface=surface, apex=apex, poles=poles)
    if vertex_cut is not None:
        budget[0] -= 1
        child = _decompose(vertex_cut.complexes[0], t, budget, notes)
        return Node("vertex_unfold", c, (child,), spec=vertex_cut.spec)
    return Leaf("unrecognized", c, note="no split, unfolding or suspension structure")


def decompose_two_singular(c: Complex, t) -> DecompositionTree:
    """Greedy split / vertex-unfold loop down to suspension and simplex leaves.

    The caller vouches that ``c`` is g2-minimal with respect to ``t``; a
    handle found along the way therefore raises TheoremViolation.
    """
    notes = []
    root = _decompose(c, t, [len(c.facets)], notes)
    return DecompositionTree(root, t, notes)


def choose_witness(c: Complex):
    from .surfaces import g2_minimal_witnesses

    witnesses = g2_minimal_witnesses(c)
    if not witnesses:
        raise NotG2Minimal("no vertex link attains the g2 of the complex")
    return max(witnesses, key=lambda v: (g2_invariant(link_of(c, (v,))), -v))


def decompose_full(c: Complex) -> DecompositionTree:
    report = check_normal_pseudomanifold(c)
    if c.dim != 3 or not report.is_normal:
        raise NotNormal("decomposition needs a normal 3-pseudomanifold")
    t = choose_witness(c)
    reduced, steps = _reduce_steps(c, t)
    stripped, records = strip_rp2_singularities(reduced, t)
    fragment = decompose_two_singular(stripped, t)
    node = fragment.root
    for rec in reversed(records):
        node = Node("edge_unfold", rec.before, (node,), spec=rec.spec)
    for step in reversed(steps):
        if step.op == "subdivision_undo":
            side = _bd4_leaf(step.removed)
        else:
            side = decompose_two_singular(step.removed, step.removed.vertices[0]).root
        node = Node(step.op, step.before, (node, side), facet=step.facet)
    tree = DecompositionTree(node, t, fragment.notes)
    root_g2, ledger = tree.g2_ledger()
    if root_g2 != ledger:
        raise TheoremViolation(f"g2 ledger mismatch: {root_g2} != {ledger}")
    return tree


# -- replay ----------------------------------------------------------------

def _replay(n) -> Complex:
    if isinstance(n, Leaf):
        if n.kind == "suspension":
            out = one_vertex_suspension(n.surface, n.apex, n.poles)
        else:
            out = n.complex
    elif n.op in ("split", "subdivision_undo"):
        a, b = (_replay(ch) for ch in n.children)
        out = glue_along(a, b, n.facet)
    elif n.op == "vertex_unfold":
        out = vertex_folding(_replay(n.children[0]), n.spec)
    elif n.op == "edge_unfold":
        out = edge_folding(_replay(n.children[0]), n.spec, strict=False)
    else:
        raise ReplayMismatch(f"unknown operation {n.op}")
    if out != n.complex and is_isomorphic(out, n.complex) is None:
        what = n.kind if isinstance(n, Leaf) else n.op
        raise ReplayMismatch(f"replayed {what} does not match its record")
    return out


def replay(tree: DecompositionTree) -> Complex:
    """Apply the recorded forward operations from the leaves up."""
    return _replay(tree.root)


def verify_tree(tree: DecompositionTree) -> dict:
    """Replay and return an isomorphism certificate onto the recorded root."""
    out = replay(tree)
    cert = is_isomorphic(out, tree.root.complex)
    if cert is None:
        raise ReplayMismatch("replay is not isomorphic to the recorded root")
    return cert
