from itertools import combinations, permutations

import pytest

from oracles import brute_f_vector, brute_isomorphic, brute_missing_tetrahedra, nx_isomorphic, shuffled
from pmfold import (
    Complex,
    check_certificate,
    f_vector,
    from_facets,
    g2_invariant,
    is_isomorphic,
    link_of,
    missing_tetrahedra,
    skeleton_graph,
    star_of,
)
from pmfold import catalog
from pmfold.errors import (
    DuplicateVertexInFacet,
    EmptyInput,
    FaceNotPresent,
    NonUniformDimension,
    WrongDimension,
)

BD4 = catalog.bd4()
RP26 = catalog.rp26()
SUSP = catalog.susp()
STACK6 = catalog.stack6()

# values below were produced by the brute-force vertex-subset scans in oracles.py
SUSP_MISSING = [(2, 3, 7, 8), (2, 6, 7, 8), (3, 5, 7, 8), (4, 5, 7, 8), (4, 6, 7, 8)]
FIXTURE_F_VECTORS = {
    "BD4": (1, 5, 10, 10, 5),
    "RP26": (1, 6, 15, 10),
    "T7": (1, 7, 21, 14),
    "SPH5": (1, 5, 9, 6),
    "SUSP": (1, 7, 21, 30, 15),
    "STACK6": (1, 6, 14, 16, 8),
    "CHAIN": (1, 12, 38, 52, 26),
    "VFOLD1": (1, 9, 32, 48, 24),
    "SUSP_FAR": (1, 9, 29, 42, 21),
    "SUSP_SUB": (1, 17, 61, 90, 45),
    "EFOLD1": (1, 15, 56, 86, 43),
    "EFOLD2": (1, 13, 51, 82, 41),
    "SUSP_TOWERS": (1, 13, 45, 66, 33),
    "VFOLD_SUSP": (1, 10, 39, 62, 31),
    "TWIN_SUSP": (1, 10, 36, 56, 28),
}


class TestFromFacets:
    def test_bd4(self):
        c = from_facets([list(s) for s in combinations(range(1, 6), 4)])
        assert c == BD4
        assert c.dim == 3

    def test_rp26(self):
        rows = [[1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 6], [1, 5, 6],
                [2, 3, 5], [2, 3, 6], [2, 4, 6], [3, 4, 5], [4, 5, 6]]
        c = from_facets(rows)
        assert c == RP26 and c.dim == 2

    def test_sorts_and_dedups(self):
        c = from_facets([[3, 2, 1], [1, 2, 3], [4, 2, 1]])
        assert c.facets == ((1, 2, 3), (1, 2, 4))

    def test_mixed_dimension(self):
        with pytest.raises(NonUniformDimension) as exc:
            from_facets([[1, 2, 3], [1, 2, 3, 4]])
        assert exc.value.row == 1

    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateVertexInFacet) as exc:
            from_facets([[1, 2, 3], [1, 2, 2]])
        assert exc.value.row == 1

    def test_empty(self):
        with pytest.raises(EmptyInput):
            from_facets([])


class TestCounts:
    def test_f_vectors(self):
        assert f_vector(BD4) == (1, 5, 10, 10, 5)
        assert f_vector(RP26) == (1, 6, 15, 10)
        assert f_vector(SUSP) == (1, 7, 21, 30, 15)

    @pytest.mark.parametrize("name", sorted(FIXTURE_F_VECTORS))
    def test_fixture_f_vectors_match_brute_force(self, name):
        c = catalog.fixture(name)
        assert f_vector(c) == FIXTURE_F_VECTORS[name] == brute_f_vector(c)

    def test_g2(self):
        assert g2_invariant(BD4) == 0
        assert g2_invariant(RP26) == 3
        assert g2_invariant(SUSP) == 3

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_g2_of_simplex_boundary(self, d):
        from pmfold import boundary_simplex
        assert g2_invariant(boundary_simplex(d)) == 0


class TestLinkStar:
    def test_link_of_rp26_vertex(self):
        lk = link_of(RP26, (1,))
        assert lk.facets == ((2, 4), (2, 5), (3, 4), (3, 6), (5, 6))

    def test_link_of_bd4_edge(self):
        assert link_of(BD4, (1, 2)).facets == ((3, 4), (3, 5), (4, 5))

    def test_link_of_susp_pole(self):
        assert link_of(SUSP, (7,)) == RP26.relabel({1: 8})

    def test_link_missing_face(self):
        with pytest.raises(FaceNotPresent):
            link_of(RP26, (1, 2, 3))

    def test_link_of_facet(self):
        with pytest.raises(WrongDimension):
            link_of(BD4, (1, 2, 3, 4))

    def test_stars(self):
        assert star_of(BD4, (1,)).facets == ((1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5))
        assert star_of(RP26, (1,)).facets == ((1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 5, 6))
        assert set(star_of(SUSP, (7, 8)).facets) == {
            (2, 4, 7, 8), (3, 4, 7, 8), (3, 6, 7, 8), (5, 6, 7, 8), (2, 5, 7, 8)}

    @pytest.mark.parametrize("name", ["SUSP", "EFOLD1", "VFOLD1"])
    def test_star_is_join_with_link(self, name):
        c = catalog.fixture(name)
        for face in list(c.faces(0)) + sorted(c.faces(1))[:20]:
            lk = link_of(c, face)
            joined = {tuple(sorted(face + tau)) for tau in lk.facets}
            assert joined == set(star_of(c, face).facets)


class TestSkeleton:
    def test_complete_graphs(self):
        for c, n in ((BD4, 5), (SUSP, 7), (RP26, 6)):
            verts, edges = skeleton_graph(c)
            assert len(verts) == n
            assert set(edges) == set(combinations(verts, 2))
        assert len(skeleton_graph(SUSP)[1]) == 21


class TestMissingTetrahedra:
    def test_bd4_none(self):
        assert missing_tetrahedra(BD4) == []

    def test_stack6(self):
        assert missing_tetrahedra(STACK6) == [(1, 2, 3, 4)]

    def test_susp(self):
        assert missing_tetrahedra(SUSP) == SUSP_MISSING == brute_missing_tetrahedra(SUSP)

    def test_wrong_dimension(self):
        with pytest.raises(WrongDimension):
            missing_tetrahedra(RP26)


class TestIsomorphism:
    def test_relabelled_bd4(self):
        for perm in permutations(range(1, 6)):
            other = BD4.relabel(dict(zip(range(1, 6), perm)))
            cert = is_isomorphic(BD4, other)
            assert cert is not None and check_certificate(BD4, other, cert)

    def test_rp26_to_pole_link(self):
        lk = link_of(SUSP, (7,))
        cert = is_isomorphic(RP26, lk)
        assert check_certificate(RP26, lk, cert)
        # the identity-with-1-renamed map is a valid certificate
        expected = {v: v for v in RP26.vertices} | {1: 8}
        assert check_certificate(RP26, lk, expected)

    def test_different_f_vectors(self):
        assert is_isomorphic(BD4, STACK6) is None

    def test_rp26_vs_other_six_vertex_surface(self):
        # same f-vector, but edge 14 now lies in three triangles
        broken = Complex(list(RP26.facets[:-1]) + [(1, 4, 6)])
        assert is_isomorphic(RP26, broken) is None
        assert brute_isomorphic(RP26, broken) is None

    @pytest.mark.parametrize("name", ["RP26", "T7", "SPH5", "BD4", "STACK6", "SUSP"])
    def test_agrees_with_exhaustive_search(self, name):
        c = catalog.fixture(name)
        for seed in range(3):
            other, _ = shuffled(c, seed)
            assert (is_isomorphic(c, other) is not None) == (brute_isomorphic(c, other) is not None)

    @pytest.mark.parametrize("pair", [("EFOLD1", "EFOLD1"), ("SUSP_SUB", "SUSP_SUB"),
                                      ("VFOLD_SUSP", "SUSP_TOWERS"), ("CHAIN", "STACK6")])
    def test_agrees_with_networkx(self, pair):
        a = catalog.fixture(pair[0])
        b, _ = shuffled(catalog.fixture(pair[1]), 7)
        cert = is_isomorphic(a, b)
        assert (cert is not None) == nx_isomorphic(a, b)
        if cert is not None:
            assert check_certificate(a, b, cert)

    def test_symmetric(self):
        other, _ = shuffled(SUSP, 3)
        fwd = is_isomorphic(SUSP, other)
        back = is_isomorphic(other, SUSP)
        assert check_certificate(other, SUSP, {w: v for v, w in fwd.items()})
        assert back is not None

    def test_deterministic(self):
        other, _ = shuffled(catalog.efold1(), 11)
        assert is_isomorphic(catalog.efold1(), other) == is_isomorphic(catalog.efold1(), other)
