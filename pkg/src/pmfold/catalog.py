"""Named example complexes, built deterministically from the forward calculus.

Foldings need room: two facets through the fixed vertices whose free vertices
are pairwise far apart. The ``_tower`` helper makes that room by repeatedly
subdividing a facet through a kept vertex, which leaves the g2 invariant and
every singularity untouched.
"""
from __future__ import annotations

from functools import cache

from .complex import Complex, simplex
from .constructions import (
    FoldingSpec,
    GluingSpec,
    boundary_simplex,
    connected_sum,
    edge_folding,
    enumerate_admissible_foldings,
    facet_subdivision,
    one_vertex_suspension,
    vertex_folding,
)
from .errors import NotNormalResult


def _tower(c: Complex, facet, keep, depth: int) -> Complex:
    f = simplex(facet)
    for _ in range(depth):
        new = max(c.vertices) + 1
        c = facet_subdivision(c, f, new)
        rest = [v for v in f if v != keep]
        f = simplex([keep, new] + rest[-2:])
    return c


def _first_normal_edge_folding(c: Complex, anchor) -> tuple:
    for spec in enumerate_admissible_foldings(c, "edge", anchor):
        try:
            return spec, edge_folding(c, spec)
        except NotNormalResult:
            continue
    raise LookupError(f"no normal edge folding anchored at {anchor}")


@cache
def bd4() -> Complex:
    return boundary_simplex(3)


@cache
def rp26() -> Complex:
    """Six-vertex real projective plane."""
    return Complex([(1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 5, 6),
                    (2, 3, 5), (2, 3, 6), (2, 4, 6), (3, 4, 5), (4, 5, 6)])


@cache
def torus7() -> Complex:
    """Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    tris = []
    for i in range(7):
        tris.append(tuple(1 + (i + k) % 7 for k in (0, 1, 3)))
        tris.append(tuple(1 + (i + k) % 7 for k in (0, 2, 3)))
    return Complex(tris)


@cache
def sph5() -> Complex:
    return facet_subdivision(boundary_simplex(2), (1, 2, 3))


@cache
def susp() -> Complex:
    """One-vertex suspension of RP26 at vertex 1 with poles 7 and 8."""
    return one_vertex_suspension(rp26(), 1, (7, 8))


@cache
def stack6() -> Complex:
    return facet_subdivision(bd4(), (1, 2, 3, 4))


@cache
def chain() -> Complex:
    """Stacked sphere: eight boundary simplices summed along two arms at vertex 1.

    A straight chain of four summands has too few vertices for any vertex
    folding, so the arms are three and four summands long.
    """
    c = _tower(bd4(), (1, 2, 3, 4), 1, 3)
    return _tower(c, (1, 2, 3, 5), 1, 4)


@cache
def vfold1_construction() -> tuple:
    parent = chain()
    spec = enumerate_admissible_foldings(parent, "vertex", 1)[0]
    return parent, spec, vertex_folding(parent, spec)


def vfold1() -> Complex:
    return vfold1_construction()[2]


@cache
def susp_far() -> Complex:
    """SUSP with a nested pair of subdivisions on a facet away from pole 7."""
    c = facet_subdivision(susp(), (2, 3, 5, 8), 9)
    return facet_subdivision(c, (2, 3, 5, 9), 10)


@cache
def susp_sub() -> Complex:
    """SUSP with subdivision towers along 2-7 and 3-7, plus a far nested pair.

    The towers (vertices 9..16) make edge foldings at 27 and 37 admissible;
    vertices 17 and 18 sit outside the star of 7.
    """
    c = susp()
    for facet, new in [((2, 4, 7, 8), 9), ((2, 4, 7, 9), 10),
                       ((2, 3, 5, 7), 11), ((2, 3, 7, 11), 12),
                       ((3, 4, 5, 7), 13), ((3, 4, 7, 13), 14),
                       ((3, 6, 7, 8), 15), ((3, 6, 7, 15), 16),
                       ((2, 3, 5, 8), 17), ((2, 3, 5, 17), 18)]:
        c = facet_subdivision(c, facet, new)
    return c


@cache
def efold1_construction() -> tuple:
    parent = susp_sub()
    spec, out = _first_normal_edge_folding(parent, (2, 7))
    return parent, spec, out


def efold1() -> Complex:
    return efold1_construction()[2]


@cache
def efold2_construction() -> tuple:
    parent = efold1()
    spec, out = _first_normal_edge_folding(parent, (3, 7))
    return parent, spec, out


def efold2() -> Complex:
    return efold2_construction()[2]


@cache
def susp_towers() -> Complex:
    """SUSP with two depth-3 towers at pole 7, room for a vertex folding."""
    c = _tower(susp(), (2, 4, 7, 8), 7, 3)
    return _tower(c, (4, 5, 6, 7), 7, 3)


@cache
def vfold_susp_construction() -> tuple:
    parent = susp_towers()
    spec = enumerate_admissible_foldings(parent, "vertex", 7)[0]
    return parent, spec, vertex_folding(parent, spec)


def vfold_susp() -> Complex:
    return vfold_susp_construction()[2]


@cache
def twin_susp() -> Complex:
    """Two copies of SUSP summed so that each pole meets a non-pole.

    g2 is 6 while every vertex link has g2 at most 3, so no vertex witnesses
    g2-minimality.
    """
    g = GluingSpec.make((2, 3, 5, 7), (2, 3, 5, 8), {2: 8, 3: 3, 5: 5, 7: 2})
    return connected_sum(susp(), susp(), g)


FIXTURES = {
    "BD4": bd4,
    "RP26": rp26,
    "T7": torus7,
    "SPH5": sph5,
    "SUSP": susp,
    "STACK6": stack6,
    "CHAIN": chain,
    "VFOLD1": vfold1,
    "SUSP_FAR": susp_far,
    "SUSP_SUB": susp_sub,
    "EFOLD1": efold1,
    "EFOLD2": efold2,
    "SUSP_TOWERS": susp_towers,
    "VFOLD_SUSP": vfold_susp,
    "TWIN_SUSP": twin_susp,
}


def fixture(name: str) -> Complex:
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def folding_spec_of(name: str) -> FoldingSpec | None:
    """The folding that produced a folded fixture, else None."""
    built = {"VFOLD1": vfold1_construction, "EFOLD1": efold1_construction,
             "EFOLD2": efold2_construction, "VFOLD_SUSP": vfold_susp_construction}
    return built[name.upper()]()[1] if name.upper() in built else None
