//! Scalars, monomials, sparse vectors, text forms and exact linear algebra.

pub mod linalg;
pub mod monomial;
pub mod scalar;
pub mod text;
pub mod vector;

pub use linalg::{kernel_basis, kernel_of_images, rank, same_span, Echelon};
pub use monomial::{enumerate_monomials, GenVar, Monomial, VarKind};
pub use scalar::Scalar;
pub use text::{format_vec, parse_vec, vec_from_json, vec_to_json, VarStyle};
pub use vector::ModVec;
