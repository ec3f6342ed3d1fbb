//! Function and vector-field algebras, connection forms and the
//! covariant-derivative action on the Lax algebra.

pub mod axioms;
pub mod covariant;
pub mod d1;
pub mod form;
pub mod kn;

pub use covariant::{covariant_derivative, nabla, pole_cancellation, PoleCancellation};
pub use form::{
    build_connection, connection_family, minimal_connection, minimal_family, ConnectionFamily, ConnectionForm,
};
pub use kn::{kn_brackets, kn_function, kn_vector_field, VectorField};
