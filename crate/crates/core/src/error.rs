use num_complex::Complex64;

/// Errors surfaced by kernel evaluation, quadrature and the solver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point must lie strictly inside the unit disk, got |z| = {0}")]
    OutsideDisk(f64),
    #[error("argument must lie in the closed unit disk, got |z| = {0}")]
    OutsideClosedDisk(f64),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("integrand returned a non-finite value at node {node}")]
    NonFiniteSample { node: Complex64 },
    #[error("kernel derivative is undefined on the diagonal zeta = z")]
    DiagonalPoint,
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("no sign change for the univalence-radius equation in [0, 1): {0}")]
    NoBracket(String),
    #[error("degenerate bound parameters: L4 = 0, univalence radius undefined")]
    DegenerateParams,
    #[error("invalid problem specification: {0}")]
    ProblemSpec(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
