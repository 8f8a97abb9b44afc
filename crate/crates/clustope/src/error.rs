use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants that end in `Violation` or `Mismatch` are falsifiers: they fire only
/// if an identity being checked does not hold, or two independent routes disagree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not sign-skew-symmetric at ({i},{j}): b_ij={bij}, b_ji={bji}")]
    NotSignSkewSymmetric {
        i: usize,
        j: usize,
        bij: String,
        bji: String,
    },
    #[error("mutation path leaves sign-skew-symmetric matrices at step {step} (direction {k}): {source}")]
    TsssFailure {
        step: usize,
        k: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("polynomial is not homogeneous: terms {first} and {second} have different degrees")]
    NotHomogeneous { first: String, second: String },
    #[error("expansion exceeds the term limit of {limit} (set CLUSTER_MAX_TERMS to raise it)")]
    TermLimit { limit: usize },
    #[error("g-vector recurrence gives different answers for the two signs: {0}")]
    RecurrenceMismatch(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("re-expression is not a Laurent polynomial with coefficients in Z[Y]: {0}")]
    NotALaurentPolynomial(String),
    #[error("negative coefficient a_{index} = {value} while rebuilding a section")]
    NegativeA { index: usize, value: String },
    #[error("degenerate lattice geometry: {0}")]
    NonLattice(String),
    #[error("point {0:?} is not in the polytope")]
    PointOutside(Vec<i64>),
    #[error("empty polytope")]
    EmptyPolytope,
    #[error("c-vector {0} is zero, sign undefined")]
    SignUndefined(usize),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("edge correlation is ambiguous: {0}")]
    CorrelationAmbiguous(String),
    #[error("no facet contains the given edges: {0}")]
    FacetNotFound(String),
    #[error("2-face test failed: {0}")]
    FaceTestFailure(String),
    #[error("compatibility degree depends on the cluster: {0}")]
    WellDefinednessViolation(String),
    #[error("variable {0} is not in the catalog")]
    VariableNotInCatalog(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("freezing check failed: {0}")]
    ConnectivityViolation(String),
    #[error("fan containment failed: {0}")]
    ContainmentViolation(String),
    #[error("enumeration stopped at the bound after {seeds} seeds")]
    DepthExceeded { seeds: usize },
    #[error("integer overflow in exact geometry")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the variants that signal a falsified identity or route disagreement.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::RecurrenceMismatch(_)
                | Error::RouteMismatch(_)
                | Error::IdentityViolation(_)
                | Error::WellDefinednessViolation(_)
                | Error::ConnectivityViolation(_)
                | Error::ContainmentViolation(_)
                | Error::InvariantViolation(_)
        )
    }
}

pub(crate) fn check_index(k: usize, n: usize) -> Result<()> {
    if k >= n {
        Err(Error::IndexOutOfRange { index: k, n })
    } else {
        Ok(())
    }
}
