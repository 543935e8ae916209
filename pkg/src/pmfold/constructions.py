"""Forward operations: simplex boundaries, suspensions, sums and foldings."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

from .complex import Complex, g2_invariant, link_of, simplex, euler_characteristic
from .errors import (
    BadDimension,
    FacetMissing,
    LabelClash,
    NotAdmissible,
    NotNormalResult,
    PoleCollision,
    VertexNotPresent,
)
from .surfaces import check_normal_pseudomanifold


@dataclass(frozen=True)
class FoldingSpec:
    """Two facets, a bijection between them, and its fixed set.

    ``psi`` is stored as sorted ``(source, image)`` pairs over all vertices of
    ``sigma1``; fixed vertices map to themselves.
    """

    sigma1: tuple
    sigma2: tuple
    psi: tuple
    kind: str  # "vertex" or "edge"

    @property
    def fixed(self) -> tuple:
        return simplex(set(self.sigma1) & set(self.sigma2))

    @property
    def mapping(self) -> dict:
        return dict(self.psi)

    @classmethod
    def make(cls, sigma1, sigma2, psi, kind=None):
        sigma1, sigma2 = simplex(sigma1), simplex(sigma2)
        psi = dict(psi)
        for x in set(sigma1) & set(sigma2):
            psi.setdefault(x, x)
        if kind is None:
            kind = {1: "vertex", 2: "edge"}.get(len(set(sigma1) & set(sigma2)), "invalid")
        return cls(sigma1, sigma2, tuple(sorted(psi.items())), kind)


@dataclass(frozen=True)
class GluingSpec:
    facet_a: tuple
    facet_b: tuple
    phi: tuple  # sorted (vertex of facet_a, vertex of facet_b) pairs

    @classmethod
    def make(cls, facet_a, facet_b, phi=None):
        facet_a, facet_b = simplex(facet_a), simplex(facet_b)
        if phi is None:
            phi = dict(zip(facet_a, facet_b))
        return cls(facet_a, facet_b, tuple(sorted(dict(phi).items())))


def boundary_simplex(d: int) -> Complex:
    if d < 1:
        raise BadDimension("boundary simplex needs d >= 1")
    return Complex(combinations(range(1, d + 3), d + 1))


def one_vertex_suspension(k: Complex, v, poles) -> Complex:
    """One-vertex suspension of ``k`` at ``v`` with new vertices ``poles``.

    Facets: ``xy * tau`` for tau a facet of lk(v, k), and ``x * sigma``,
    ``y * sigma`` for facets sigma of k avoiding v. The vertex v disappears.
    """
    x, y = poles
    if v not in k.vertices:
        raise VertexNotPresent(f"{v} is not a vertex")
    if x == y or x in k.vertices or y in k.vertices:
        raise PoleCollision(f"poles {poles} must be distinct fresh labels")
    lk = link_of(k, (v,))
    out = [tau + (x, y) for tau in lk.facets]
    for sigma in k.facets:
        if v not in sigma:
            out.append(sigma + (x,))
            out.append(sigma + (y,))
    return Complex(out)


def connected_sum(a: Complex, b: Complex, g: GluingSpec) -> Complex:
    """Glue ``b`` to ``a`` along ``phi: facet_a -> facet_b`` and drop the facet.

    Vertices of ``b`` outside ``facet_b`` keep their labels unless these clash
    with ``a``; clashing ones move to fresh labels above both vertex sets.
    """
    if g.facet_a not in a.facet_set:
        raise FacetMissing(f"{g.facet_a} is not a facet of the first complex")
    if g.facet_b not in b.facet_set:
        raise FacetMissing(f"{g.facet_b} is not a facet of the second complex")
    phi = dict(g.phi)
    if sorted(phi) != list(g.facet_a) or sorted(phi.values()) != list(g.facet_b):
        raise LabelClash("phi must be a bijection facet_a -> facet_b")
    if a.dim != b.dim:
        raise LabelClash("summands must have equal dimension")
    relabel = {w: u for u, w in phi.items()}
    fresh = max(max(a.vertices), max(b.vertices)) + 1
    taken = set(a.vertices)
    for w in b.vertices:
        if w in relabel:
            continue
        if w in taken:
            relabel[w] = fresh
            fresh += 1
        else:
            relabel[w] = w
    glued = [f for f in a.facets if f != g.facet_a]
    glued += [simplex(relabel[w] for w in f) for f in b.facets if f != g.facet_b]
    return Complex(glued)


def glue_along(a: Complex, b: Complex, facet) -> Complex:
    """Connected sum along a facet shared verbatim by ``a`` and ``b``.

    The two vertex sets may only meet in ``facet``; labels are kept.
    """
    facet = simplex(facet)
    if set(a.vertices) & set(b.vertices) != set(facet):
        raise LabelClash("summands must meet exactly in the gluing facet")
    return connected_sum(a, b, GluingSpec.make(facet, facet))


def facet_subdivision(c: Complex, sigma, label=None) -> Complex:
    sigma = simplex(sigma)
    if sigma not in c.facet_set:
        raise FacetMissing(f"{sigma} is not a facet")
    if label is None:
        label = max(c.vertices) + 1
    elif label in c.vertices:
        raise LabelClash(f"{label} is already a vertex")
    cone = [simplex(face + (label,)) for face in combinations(sigma, len(sigma) - 1)]
    return Complex([f for f in c.facets if f != sigma] + cone)


# -- foldings --------------------------------------------------------------

def admissibility_violation(c: Complex, spec: FoldingSpec):
    """Return an offending path for an inadmissible spec, else None."""
    fixed = set(spec.fixed)
    psi = spec.mapping
    nb = c.neighbors
    for y in spec.sigma1:
        if y in fixed:
            continue
        z = psi[y]
        if z in nb[y]:
            return (y, z)
        for w in sorted(nb[y] & nb[z]):
            if w not in fixed:
                return (y, w, z)
        if spec.kind == "vertex" and not fixed <= (nb[y] & nb[z]):
            return (y, z)
    return None


def _validate(c: Complex, spec: FoldingSpec, kind: str):
    if spec.sigma1 not in c.facet_set or spec.sigma2 not in c.facet_set:
        raise FacetMissing("both folding facets must be facets of the complex")
    want = 1 if kind == "vertex" else 2
    if spec.kind != kind or len(spec.fixed) != want:
        raise NotAdmissible(f"{kind} folding needs facets meeting in {want} vertices")
    psi = spec.mapping
    if sorted(psi) != list(spec.sigma1) or sorted(psi.values()) != list(spec.sigma2):
        raise NotAdmissible("psi must be a bijection sigma1 -> sigma2")
    if any(psi[x] != x for x in spec.fixed):
        raise NotAdmissible("psi must fix the shared vertices")
    path = admissibility_violation(c, spec)
    if path is not None:
        raise NotAdmissible("forbidden short path", path)


def _merge_map(spec: FoldingSpec) -> dict:
    merge = {}
    for y, z in spec.psi:
        if y != z:
            merge[y] = merge[z] = min(y, z)
    return merge


def folded_facet(spec: FoldingSpec) -> tuple:
    """The missing tetrahedron left behind where sigma1 and sigma2 were identified."""
    merge = _merge_map(spec)
    return simplex(merge.get(v, v) for v in spec.sigma1)


def _identify(c: Complex, spec: FoldingSpec) -> Complex:
    merge = _merge_map(spec)
    out = []
    for f in c.facets:
        if f in (spec.sigma1, spec.sigma2):
            continue
        out.append(simplex(merge.get(v, v) for v in f))
    if any(len(set(f)) != len(f) for f in out) or len(set(out)) != len(out):
        raise NotAdmissible("identification collapses a facet")
    return Complex(out)


def vertex_folding(c: Complex, spec: FoldingSpec) -> Complex:
    _validate(c, spec, "vertex")
    out = _identify(c, spec)
    assert g2_invariant(out) == g2_invariant(c) + comb(c.dim + 1, 2)
    x = spec.fixed[0]
    assert (euler_characteristic(link_of(out, (x,)))
            == euler_characteristic(link_of(c, (x,))) - 2)
    return out


def edge_folding(c: Complex, spec: FoldingSpec, strict: bool = True) -> Complex:
    """Edge folding; with ``strict`` a non-normal result raises NotNormalResult."""
    _validate(c, spec, "edge")
    out = _identify(c, spec)
    assert g2_invariant(out) == g2_invariant(c) + comb(c.dim, 2)
    for x in spec.fixed:
        assert (euler_characteristic(link_of(out, (x,)))
                == euler_characteristic(link_of(c, (x,))) - 1)
    if strict and not check_normal_pseudomanifold(out).is_normal:
        raise NotNormalResult(f"edge folding at {spec.fixed} is not normal")
    return out


def fold(c: Complex, spec: FoldingSpec, strict: bool = True) -> Complex:
    if spec.kind == "vertex":
        return vertex_folding(c, spec)
    return edge_folding(c, spec, strict=strict)


def enumerate_admissible_foldings(c: Complex, kind: str, anchor=None) -> list:
    """All admissible folding specs of ``kind`` over unordered facet pairs.

    ``anchor`` restricts the fixed set: a vertex must belong to it, a tuple
    must equal it.
    """
    want = {"vertex": 1, "edge": 2}[kind]
    if isinstance(anchor, int):
        anchor_test = lambda fixed: anchor in fixed  # noqa: E731
    elif anchor is not None:
        anchor_set = tuple(sorted(anchor))
        anchor_test = lambda fixed: fixed == anchor_set  # noqa: E731
    else:
        anchor_test = lambda fixed: True  # noqa: E731
    out = []
    facets = c.facets
    for i, f1 in enumerate(facets):
        for f2 in facets[i + 1:]:
            fixed = simplex(set(f1) & set(f2))
            if len(fixed) != want or not anchor_test(fixed):
                continue
            free1 = [v for v in f1 if v not in fixed]
            free2 = [v for v in f2 if v not in fixed]
            for perm in permutations(free2):
                psi = dict(zip(free1, perm))
                spec = FoldingSpec.make(f1, f2, psi, kind)
                if admissibility_violation(c, spec) is None:
                    out.append(spec)
    return sorted(out, key=lambda s: (s.sigma1, s.sigma2, s.psi))
