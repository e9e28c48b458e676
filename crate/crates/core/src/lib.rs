//! Numerical toolkit for the fourth-order Dirichlet-Neumann problem on the
//! unit disk: explicit kernel evaluation, quadrature, the solution operator,
//! sharp growth/gradient/univalence bounds, and a verification harness that
//! tests every bound against manufactured solutions.

pub mod bounds;
pub mod error;
pub mod kernel;
pub mod problems;
pub mod quadrature;
pub mod solver;
pub mod verify;

pub use bounds::{BoundParams, LandauResult};
pub use error::{Error, Result};
pub use problems::{BihPolynomial, BoundaryTrace, ProblemData, Provenance, SourceData};
pub use quadrature::{DiskIntegral, PolarGrid, QuadConfig};
pub use solver::{JacobianSummary, PointEval, Solver};
pub use verify::{CheckRecord, Suite, VerificationReport};
