"""Normalized vertex and hyperedge Laplacians of hypergraphs with real coefficients."""

from .errors import HypergraphError
from .hypergraph import Hyperedge, Hypergraph, build_hypergraph, from_incidence
from .operators import (
    OperatorBundle,
    apply_L,
    apply_LH,
    boundary,
    build_operators,
    coboundary,
    scalar_product_H,
    scalar_product_V,
)
from .spectral import (
    Spectrum,
    ZeroMultiplicities,
    rayleigh_hyperedge,
    rayleigh_vertex,
    spectrum_hyperedge,
    spectrum_vertex,
    zero_multiplicities,
)
from .structure import (
    bipartition,
    eigenvalue_upper_bounds,
    interlacing_report,
    lambda_max_analysis,
    min_nonzero_sandwich,
)
from .symmetry import (
    Automorphism,
    Motif,
    constant_eigenvalue,
    duplicated_motif_eigenpairs,
    find_vertex_relations,
    induced_laplacian,
    involution_split,
    localized_eigenpair,
    quotient_hypergraph,
    symmetry_eigenspace_split,
    verify_automorphism,
)
from .kernel import (
    check_balancing,
    elementary_modes,
    kernel_basis_hyperedges,
    kernel_basis_vertices,
)
from .document import parse, serialize

__version__ = "0.1.0"
