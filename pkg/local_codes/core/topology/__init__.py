"""
Chain complexes: CSS codes, cell complexes, subdivisions, duality and nerves.
"""

from .code import (
    CodeReport,
    CssCode,
    check_graph,
    code_from_complex,
    cycle_matrix,
    direct_sum,
    hamming_matrix,
    hypergraph_product,
    ldpc_degree,
    quotient_dimension,
    repetition_matrix,
    report,
    steane_code,
    toric_code,
    validate,
)
from .complex import (
    CellComplex,
    CellKind,
    ChainVector,
    Lineage,
    Simplex,
    SystoleResult,
    cosystole,
    cubical_torus,
    cycle,
    is_closed_manifold,
    octahedron,
    random_surface_complex,
    simplex,
    systole,
    triangle_boundary,
    triangulated_torus,
    wedge_of_circles,
)
from .duality import (
    DualChain,
    Projection,
    apply_dual_boundary,
    coboundary_of,
    dual_boundary,
    dual_chain,
    is_boundary,
    project_to_triangulation,
    same_homology_class,
    subdivide_chain,
)
from .nerve import (
    ComplexPoint,
    Cover,
    LipschitzEstimate,
    NerveMapPoint,
    lipschitz_estimate,
    make_point,
    nerve_complex,
    nerve_map,
    nerve_vertex_map,
    partition_of_unity,
    random_point,
    star_cover,
    unhit_nerve_simplices,
    vertex_point,
)
from .subdivision import (
    PullbackResult,
    barycentric_subdivide,
    check_simplicial_map,
    edgewise_subdivide,
    subdivide_pullback,
    touched_simplices,
)

__all__ = [
    "CellComplex",
    "CellKind",
    "ChainVector",
    "CodeReport",
    "ComplexPoint",
    "Cover",
    "CssCode",
    "DualChain",
    "Lineage",
    "LipschitzEstimate",
    "NerveMapPoint",
    "Projection",
    "PullbackResult",
    "Simplex",
    "SystoleResult",
    "apply_dual_boundary",
    "barycentric_subdivide",
    "check_graph",
    "check_simplicial_map",
    "coboundary_of",
    "code_from_complex",
    "cosystole",
    "cubical_torus",
    "cycle",
    "cycle_matrix",
    "direct_sum",
    "dual_boundary",
    "dual_chain",
    "edgewise_subdivide",
    "hamming_matrix",
    "hypergraph_product",
    "is_boundary",
    "is_closed_manifold",
    "ldpc_degree",
    "lipschitz_estimate",
    "make_point",
    "nerve_complex",
    "nerve_map",
    "nerve_vertex_map",
    "octahedron",
    "partition_of_unity",
    "project_to_triangulation",
    "quotient_dimension",
    "random_point",
    "random_surface_complex",
    "repetition_matrix",
    "report",
    "same_homology_class",
    "simplex",
    "star_cover",
    "steane_code",
    "subdivide_chain",
    "subdivide_pullback",
    "systole",
    "touched_simplices",
    "toric_code",
    "triangle_boundary",
    "triangulated_torus",
    "unhit_nerve_simplices",
    "validate",
    "vertex_point",
    "wedge_of_circles",
]
