//! Exact computations with Whittaker modules of the Weyl vertex algebra.

pub mod algebra;
pub mod error;
pub mod finite;
pub mod ops;
pub mod quotient;
pub mod random;
pub mod suites;
pub mod weyl;
pub mod winf;

pub use algebra::{format_vec, parse_vec, GenVar, ModVec, Monomial, Scalar, VarKind};
pub use error::{Error, Result};
pub use ops::{act_word, parse_word, Op};
pub use quotient::{project, QuotVec};
pub use weyl::{GlOp, WhittakerFrame};
pub use winf::FieldOp;
pub use suites::{run_suite, SuiteConfig, SuiteReport, SUITES};
