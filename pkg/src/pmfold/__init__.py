"""Normal 3-pseudomanifolds with few singularities: construction and decomposition."""
from .complex import (
    Complex,
    check_certificate,
    euler_characteristic,
    f_vector,
    from_facets,
    g2_invariant,
    is_boundary_of_simplex,
    is_isomorphic,
    link_of,
    missing_tetrahedra,
    missing_triangles,
    skeleton_graph,
    star_of,
)
from .constructions import (
    FoldingSpec,
    GluingSpec,
    boundary_simplex,
    connected_sum,
    edge_folding,
    enumerate_admissible_foldings,
    facet_subdivision,
    fold,
    folded_facet,
    glue_along,
    one_vertex_suspension,
    vertex_folding,
)
from .decomposition import (
    CutOutcome,
    DecompositionTree,
    Leaf,
    MissingTetra,
    Node,
    analyze_missing_tetra,
    cut_along,
    cut_and_cap,
    decompose_full,
    decompose_two_singular,
    recognize_suspension,
    reduce_to_star,
    replay,
    strip_rp2_singularities,
    verify_tree,
)
from .errors import PmfoldError
from .surfaces import (
    BandType,
    check_normal_pseudomanifold,
    classify_surface,
    cycle_band,
    cycle_separates,
    find_efold_witness,
    g2_minimal_witnesses,
    graph_in_star,
    is_stacked_sphere,
    singular_vertices,
)

__version__ = "0.1.0"
