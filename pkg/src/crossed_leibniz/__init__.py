"""Exact cohomology and deformation theory of crossed homomorphisms
between finite-dimensional Leibniz algebras."""

from crossed_leibniz.linalg import (
    Scalar,
    as_matrix,
    format_scalar,
    kernel_basis,
    parse_scalar,
    rank,
    solve,
)
from crossed_leibniz.algebra import (
    ActionPair,
    LeibnizAlgebra,
    LeibnizGRepresentation,
    Report,
    semidirect_product,
    twisted_semidirect_product,
    validate_leibniz,
    validate_leibniz_g_representation,
    validate_representation,
)
from crossed_leibniz.cochains import (
    Cochain,
    DgLaContext,
    balavoine_bracket,
    delta_leib_twisted,
    delta_leibniz,
    derived_bracket,
    diamond_k,
    differential_d,
    differential_dH,
    lift_cochain,
    shuffles,
)
from crossed_leibniz.crossed import (
    CrossedHom,
    CrossedHomMorphism,
    check_crossed_hom,
    check_graph_embedding,
    check_hat_iso,
    check_morphism,
    induced_action,
    induced_representation,
    mc_residual,
    twisted_mc_residual,
)
from crossed_leibniz.cohomology import (
    CochainComplexSlice,
    CohomologyReport,
    cohomology,
    complex_slice,
    differential_matrix,
    is_coboundary,
    solve_coboundary,
)
from crossed_leibniz.deformation import (
    FormalMap,
    NijenhuisWitness,
    ObstructionClass,
    check_equivalence,
    check_formal_deformation,
    check_linear_deformation,
    cocycle_to_infinitesimal,
    extend_deformation,
    nijenhuis_check,
    obstruction,
    rigidity_witness,
    trivial_deformation_from_nijenhuis,
)

__version__ = "0.1.0"
