//! Exact computation of centers, derivation algebras, centroids and inner
//! derivations for finite-dimensional algebras given by structure constants.
//!
//! Coefficients live in ℚ(i)(a): rational functions in one formal parameter
//! `a` over the Gaussian rationals. Dimensions for parametric algebras are
//! generic, valid away from an explicitly reported exceptional locus.
//!
//! ```
//! use nilalg_core::{invariants, StructureConstants};
//!
//! let alg = StructureConstants::parse("dim 2\ne1*e1 = e2").unwrap();
//! assert!(alg.check_associative().is_empty());
//! assert_eq!(alg.nilindex(), Some(3));
//! assert_eq!(invariants::derivation_algebra(&alg).dim(), 2);
//! ```

pub mod catalog;
pub mod invariants;
pub mod render;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod structconst;
pub mod text;

pub use scalar::{GaussianRational, Poly, Rational, Scalar, ScalarError};
pub use solver::{ExceptionalLocus, Matrix, MatrixSubspace, SolverError};
pub use structconst::{StructError, StructureConstants, Vector};
pub use text::ParseError;
