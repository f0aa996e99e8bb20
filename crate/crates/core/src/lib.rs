//! Best approximation in max-plus semimodules under Hilbert's projective
//! metric, and two solvers for two-sided max-plus inequality systems.
//!
//! All routines are generic over a [`Scalar`] payload: `i64` and
//! [`num_rational::Rational64`] are exact, `f64` is approximate.
//!
//! ```
//! use tropical_approx::{HalfSpace, RowVector, TropicalVector};
//!
//! // h2 ≥ h1 in three dimensions
//! let h: HalfSpace<i64> = HalfSpace::new(
//!     RowVector::parse_tokens("-inf 0 -inf")?,
//!     RowVector::parse_tokens("0 -inf -inf")?,
//! )?;
//! let x = TropicalVector::parse_tokens("2 1 0")?;
//! assert_eq!(h.project(&x)?, TropicalVector::parse_tokens("1 1 0")?);
//! assert_eq!(h.distance(&x)?.to_string(), "1");
//! # Ok::<(), tropical_approx::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod extreal;
pub mod format;
pub mod halfspace;
pub mod linalg;
pub mod metric;
pub mod oracle;
pub mod scalar;
pub mod semimodule;
pub mod solvers;

pub use error::{Error, Result};
pub use extreal::{ExtendedReal, Finite, NegInf, PosInf};
pub use halfspace::{BestApprox, BestApproxSet, CanonicalHalfSpace, Classification, FaceBox, HalfSpace, Sector};
pub use linalg::{RowVector, TropicalMatrix, TropicalVector};
pub use metric::{
    anti_distance, hilbert_distance, part_of, reduce_problem, restrict, supports, IndexSet, PartDescriptor,
    Reduction, Supports,
};
pub use scalar::Scalar;
pub use semimodule::GeneratedSemimodule;
pub use solvers::{
    cyclic_solve, feasibility, power_solve, sandwich_check, Feasibility, InequalitySystem, IterationTrace,
    Method, SolveOptions, SolveReport, SolveStatus,
};
