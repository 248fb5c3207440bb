use std::fmt;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, GllError>;

/// Errors raised by the toolkit.
///
/// Numeric routines never return non-finite values silently: every domain
/// violation or convergence failure is reported through this type.
#[derive(Debug, thiserror::Error)]
pub enum GllError {
    /// An argument is outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter vector violates the family invariants.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The requested closed form does not exist for these parameters.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// An iterative routine exhausted its budget without meeting tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// A regression model is infeasible for some observation.
    #[error("infeasible model: {0}")]
    Infeasible(String),

    /// A finite quantity overflowed the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Malformed or out-of-range input data.
    #[error("data error: {0}")]
    Data(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Raised when a closed-form expression printed for this family disagrees
/// with direct quadrature of the defining integral. The quadrature value is
/// authoritative; the diagnostic records both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormDiscrepancy {
    /// Which closed form disagreed, e.g. `"shannon-entropy-p1"`.
    pub quantity: &'static str,
    pub closed_form: f64,
    pub numeric: f64,
}

impl ClosedFormDiscrepancy {
    pub fn delta(&self) -> f64 {
        self.closed_form - self.numeric
    }
}

impl fmt::Display for ClosedFormDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "closed-form-discrepancy[{}]: closed={:.12e} numeric={:.12e}",
            self.quantity, self.closed_form, self.numeric
        )
    }
}
