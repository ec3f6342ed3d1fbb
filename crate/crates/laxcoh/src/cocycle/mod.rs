//! Geometric 2-cocycles, coboundaries, invariance, locality and the level
//! structure of local cocycles.

pub mod checks;
pub mod evaluator;
pub mod functional;
pub mod geometric;
pub mod levels;
pub mod table;

pub use checks::{
    check_antisymmetry, check_cocycle_identity, check_l_invariance, connection_independence_witness,
    difference_functional, extend_to_dg, integrand_regularity, invariance_defects, InvarianceDefect, InvarianceSample,
};
pub use evaluator::{central_extension_bracket, cocycle_identity_value, extension_jacobi, Cocycle, ExtendedElement};
pub use functional::LinearFunctional;
pub use geometric::{
    gamma1, gamma1_integrand, gamma2, gamma2_integrand, gamma2_with_connection, weak_point_residues, WeakResidues,
};
pub use levels::{
    cartan_multiple, gl_cross_vanishing, level_recursion_check, nonbound_witness, psi_form, tables_independent,
    NonboundWitness, PsiForm,
};
pub use table::{CocycleTable, LevelBounds, TableJson, DEFAULT_TABLE_DEGREE};
