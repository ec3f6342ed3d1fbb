//! Lax operator algebras: flavors, Tyurin data, membership, homogeneous
//! subspaces and the almost-graded structure.

pub mod algebra;
pub mod basis;
pub mod flavor;
pub mod grading;
pub mod membership;
pub mod tyurin;

pub use algebra::{Decomposition, HomogeneousSpace, LaxAlgebra, LaxElement};
pub use basis::GradedBasis;
pub use flavor::{Flavor, FlavorKind};
pub use membership::{
    check_membership, ConstraintCertificate, ConstraintViolation, LocalRule, ViolationKind, WeakWitness,
};
pub use tyurin::TyurinData;
