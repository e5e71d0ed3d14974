//! Combinatorial and homological invariants of moment-angle complexes,
//! quasitoric manifolds and arrangement complements, computed exactly.

pub mod arrangements;
pub mod combinatorics;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod faces;
pub mod linalg;
pub mod polynomial;
pub mod quasitoric;
pub mod reproduce;
pub mod tor;

pub use complex::{Face, SimplicialComplex};
pub use error::{Error, Result};
pub use polynomial::GradedPolynomial;
