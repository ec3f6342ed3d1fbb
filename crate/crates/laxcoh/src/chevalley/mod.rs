//! Chevalley bases, their lifts to the Lax algebra, and normalization of
//! local cocycles.

pub mod lift;
pub mod normalize;
pub mod recursions;
pub mod roots;
pub mod uniqueness;

pub use lift::{coroot_ratio_witness, lift_check, ChevIndex, LiftedBasis};
pub use normalize::{check_normalized, normalize, HigherTerm, Normalization, DEFAULT_NORMALIZATION_DEGREE};
pub use recursions::{coroot_pair_constant, root_constants, verify_recursions, RootConstants};
pub use roots::{cartan_basis, Root, RootSystem, RootSystemJson};
pub use uniqueness::{
    compare_normalized, normalized_coboundary_check, reference_value, uniqueness_driver, Comparison, UniquenessOutcome,
};
