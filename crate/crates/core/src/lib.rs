//! Exact computation and brute-force certification of the codimension of
//! the locus of hypersurfaces containing a complete-intersection cycle.
//!
//! The crate is layered bottom-up:
//!
//! - [`field`], [`monomial`], [`poly`], [`linalg`], [`graded`]: exact
//!   arithmetic over F_p and linear algebra inside one graded piece S_m.
//! - [`koszul`]: closed-form Hilbert-function combinatorics of complete
//!   intersections.
//! - [`oracle`]: explicit random complete intersections and rank-based
//!   verification of every closed form.
//! - [`verify`]: seeded campaigns that run all oracle checks on a profile.
//! - [`interchange`]: the JSON polynomial interchange format.

pub mod error;
pub mod field;
pub mod graded;
pub mod interchange;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use graded::{graded_span, GradedBasis};
pub use koszul::{ChiOracle, MultidegreeProfile};
pub use monomial::{monomials_of_degree, Monomial, MonomialBasis};
pub use poly::Poly;
