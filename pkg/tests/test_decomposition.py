import pytest

from oracles import handle_fixture
from pmfold import (
    BandType,
    Complex,
    analyze_missing_tetra,
    check_normal_pseudomanifold,
    connected_sum,
    cut_along,
    decompose_full,
    decompose_two_singular,
    enumerate_admissible_foldings,
    facet_subdivision,
    fold,
    folded_facet,
    g2_invariant,
    graph_in_star,
    is_isomorphic,
    is_stacked_sphere,
    link_of,
    recognize_suspension,
    reduce_to_star,
    replay,
    singular_vertices,
    star_of,
    strip_rp2_singularities,
    verify_tree,
)
from pmfold import catalog
from pmfold.decomposition import Leaf, Node, _betti, choose_witness
from pmfold.errors import NotG2Minimal, NotMissing, NotNormal, PreconditionViolated, ReplayMismatch, TheoremViolation

BD4 = catalog.bd4()
SUSP = catalog.susp()

TREE_SUMMARIES = {
    # name: (edge foldings, vertex foldings, connected sums, simplex leaves, suspension leaves)
    "STACK6": (0, 0, 1, 2, 0),
    "SUSP": (0, 0, 0, 0, 1),
    "SUSP_FAR": (0, 0, 2, 2, 1),
    "SUSP_SUB": (0, 0, 10, 10, 1),
    "EFOLD1": (1, 0, 10, 10, 1),
    "EFOLD2": (2, 0, 10, 10, 1),
    "VFOLD_SUSP": (0, 1, 6, 6, 1),
    "VFOLD1": (0, 1, 7, 8, 0),
}


class TestMissingTetra:
    def test_stack6_split(self):
        mt = analyze_missing_tetra(catalog.stack6(), (1, 2, 3, 4))
        assert all(mt.sep.values()) and mt.nonseparating == ()
        out = cut_along(catalog.stack6(), (1, 2, 3, 4))
        assert out.variant == "split"
        assert sorted(c.vertices for c in out.complexes) == [(1, 2, 3, 4, 5), (1, 2, 3, 4, 6)]
        assert all(is_isomorphic(c, BD4) is not None for c in out.complexes)

    def test_susp_missing_tetra_flags(self):
        mt = analyze_missing_tetra(SUSP, (2, 3, 7, 8))
        assert mt.sep == {2: True, 3: True, 7: False, 8: False}
        assert mt.band == {7: BandType.MOEBIUS, 8: BandType.MOEBIUS}

    def test_not_missing(self):
        with pytest.raises(NotMissing):
            analyze_missing_tetra(SUSP, (2, 3, 5, 7))
        with pytest.raises(NotMissing):
            analyze_missing_tetra(BD4, (1, 2, 3, 6))

    def test_vertex_unfold_of_vfold1(self):
        parent, spec, folded = catalog.vfold1_construction()
        sigma = folded_facet(spec)
        mt = analyze_missing_tetra(folded, sigma)
        assert mt.nonseparating == (1,) and mt.band[1] == BandType.ANNULUS
        out = cut_along(folded, sigma)
        assert out.variant == "vertex_unfold" and out.fixed == (1,)
        assert is_isomorphic(out.complexes[0], parent) is not None
        assert fold(out.complexes[0], out.spec) == folded

    def test_edge_unfold_of_efold1(self):
        parent, spec, folded = catalog.efold1_construction()
        out = cut_along(folded, folded_facet(spec))
        assert out.variant == "edge_unfold" and set(out.fixed) == {2, 7}
        assert is_isomorphic(out.complexes[0], parent) is not None
        assert fold(out.complexes[0], out.spec, strict=False) == folded

    def test_handle_cut(self):
        c = handle_fixture()
        assert check_normal_pseudomanifold(c).is_normal
        mt = analyze_missing_tetra(c, (1, 2, 3, 4))
        assert all(mt.sep.values())
        assert cut_along(c, (1, 2, 3, 4)).variant == "handle"


class TestSuspensionRecognition:
    def test_susp(self):
        surface, apex, poles = recognize_suspension(SUSP)
        assert poles == (7, 8)
        assert is_isomorphic(surface, catalog.rp26()) is not None

    def test_bd4_is_a_suspension_of_a_triangle_boundary(self):
        assert recognize_suspension(BD4) is not None

    def test_stack6_suspends_a_sphere(self):
        surface, _, poles = recognize_suspension(catalog.stack6())
        assert poles == (1, 2) and is_stacked_sphere(surface)

    def test_cross_polytope_is_not(self):
        octa = Complex([(a, b, c, d) for a in (1, 2) for b in (3, 4) for c in (5, 6) for d in (7, 8)])
        assert recognize_suspension(octa) is None


class TestReduce:
    def test_susp_far(self):
        reduced, split_off, undone = reduce_to_star(catalog.susp_far(), 7)
        assert reduced == SUSP
        assert undone == [(9, (2, 3, 5, 8))]
        assert len(split_off) == 1 and is_isomorphic(split_off[0], BD4) is not None

    def test_susp_is_fixed(self):
        reduced, split_off, undone = reduce_to_star(SUSP, 7)
        assert reduced == SUSP and split_off == [] and undone == []

    def test_susp_sub(self):
        reduced, split_off, undone = reduce_to_star(catalog.susp_sub(), 7)
        assert len(split_off) == 1 and undone == [(17, (2, 3, 5, 8))]
        assert 17 not in reduced.vertices and 18 not in reduced.vertices

    @pytest.mark.parametrize("name", ["SUSP_FAR", "SUSP_SUB", "EFOLD1", "EFOLD2", "VFOLD_SUSP"])
    def test_postconditions(self, name):
        c = catalog.fixture(name)
        t = choose_witness(c)
        reduced, split_off, _ = reduce_to_star(c, t)
        assert reduced.edges == star_of(reduced, (t,)).edges
        assert graph_in_star(reduced, t)
        assert g2_invariant(reduced) == g2_invariant(c)
        for s in split_off:
            assert is_stacked_sphere(s) and g2_invariant(s) == 0

    def test_not_minimal(self):
        with pytest.raises(NotG2Minimal):
            reduce_to_star(catalog.twin_susp(), 7)

    def test_not_normal(self):
        with pytest.raises(NotNormal):
            reduce_to_star(Complex([(1, 2, 3, 4), (1, 2, 3, 5)]), 1)


class TestStrip:
    def test_efold1(self):
        reduced = reduce_to_star(catalog.efold1(), 7)[0]
        stripped, records = strip_rp2_singularities(reduced, 7)
        assert [r.vertex for r in records] == [2]
        assert records[0].witness_edge == (3, 5)
        assert len(singular_vertices(stripped)) == 2

    def test_efold2_betti_drop(self):
        reduced = reduce_to_star(catalog.efold2(), 7)[0]
        stripped, records = strip_rp2_singularities(reduced, 7)
        assert [(r.vertex, r.witness_edge) for r in records] == [(2, (4, 9)), (3, (4, 5))]
        diffs = [_betti(r.before, 7) - _betti(r.before, 8) for r in records]
        diffs.append(_betti(stripped, 7) - _betti(stripped, 8))
        assert diffs == [2, 1, 0]

    def test_two_singular_is_untouched(self):
        stripped, records = strip_rp2_singularities(SUSP, 7)
        assert stripped == SUSP and records == []

    def test_graph_condition_required(self):
        with pytest.raises(PreconditionViolated):
            strip_rp2_singularities(catalog.susp_far(), 7)


class TestDecompose:
    @pytest.mark.parametrize("name", sorted(TREE_SUMMARIES))
    def test_summary(self, name):
        tree = decompose_full(catalog.fixture(name))
        s = tree.summary()
        got = (s["edge_foldings"], s["vertex_foldings"], s["connected_sums"],
               s["boundary_simplex_leaves"], s["suspension_leaves"])
        assert got == TREE_SUMMARIES[name]
        assert s["unrecognized_leaves"] == 0

    @pytest.mark.parametrize("name", sorted(TREE_SUMMARIES))
    def test_ledger_and_replay(self, name):
        c = catalog.fixture(name)
        tree = decompose_full(c)
        root, total = tree.g2_ledger()
        assert root == total == g2_invariant(c)
        cert = verify_tree(tree)
        assert is_isomorphic(replay(tree), c) is not None
        assert set(cert) == set(c.vertices)

    def test_suspension_leaf_is_rp2(self):
        tree = decompose_full(catalog.efold1())
        (leaf,) = [lf for lf in tree.leaves() if lf.kind == "suspension"]
        assert is_isomorphic(leaf.surface, catalog.rp26()) is not None

    def test_witness_choice(self):
        assert decompose_full(catalog.efold2()).witness == 7
        assert decompose_full(catalog.stack6()).witness == 1

    def test_twin_susp_rejected(self):
        with pytest.raises(NotG2Minimal):
            decompose_full(catalog.twin_susp())

    def test_handle_raises(self):
        with pytest.raises(TheoremViolation, match="handle"):
            decompose_two_singular(handle_fixture(), 1)

    def test_tampered_tree(self):
        # swap one summand for a subdivided copy; the glued result gains a vertex
        tree = decompose_full(catalog.stack6())
        root = tree.root
        other = root.children[1].complex
        bad_child = Leaf("boundary_simplex", facet_subdivision(other, other.facets[-1], 20))
        tree.root = Node(root.op, root.complex, (root.children[0], bad_child), facet=root.facet)
        with pytest.raises(ReplayMismatch):
            verify_tree(tree)

    def test_relabelled_leaf_still_verifies(self):
        tree = decompose_full(catalog.stack6())
        root = tree.root
        moved = Leaf("boundary_simplex", root.children[1].complex.relabel({6: 9}))
        tree.root = Node(root.op, root.complex, (root.children[0], moved), facet=root.facet)
        assert verify_tree(tree) is not None


def test_round_trip_on_search_found_specs():
    seen = {"vertex": 0, "edge": 0}
    for name in ("CHAIN", "SUSP_SUB"):
        c = catalog.fixture(name)
        for kind in ("vertex", "edge"):
            for spec in enumerate_admissible_foldings(c, kind):
                folded = fold(c, spec, strict=False)
                if not check_normal_pseudomanifold(folded).is_normal:
                    continue
                out = cut_along(folded, folded_facet(spec))
                assert out.variant == f"{kind}_unfold"
                assert is_isomorphic(out.complexes[0], c) is not None
                seen[kind] += 1
    assert seen["vertex"] >= 5 and seen["edge"] >= 5
