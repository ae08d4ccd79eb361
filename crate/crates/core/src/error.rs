use thiserror::Error;

/// Errors raised while parsing potentials, building matrices, or running
/// numerical checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("f <= 2+{margin} at x={x} (f = {value})")]
    FloorViolation { x: f64, value: f64, margin: f64 },

    #[error("jump point {0} outside (0,1)")]
    JumpOutsideUnitInterval(f64),

    #[error("overlapping pieces: [{a_lo}, {a_hi}] and [{b_lo}, {b_hi}]")]
    OverlappingPieces {
        a_lo: f64,
        a_hi: f64,
        b_lo: f64,
        b_hi: f64,
    },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("x={x} outside domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("potential has jump discontinuities; use the jump prediction instead")]
    HasJumps,

    #[error("adaptive quadrature did not converge on [{a}, {b}]")]
    QuadratureDiverged { a: f64, b: f64 },

    #[error("non-positive pivot r_{k} = {value}; matrix is not positive definite")]
    NonPositivePivot { k: usize, value: f64 },

    #[error("matrix order {n} exceeds the eigensolver cap {cap}")]
    EigenCapExceeded { n: usize, cap: usize },

    #[error("need at least {needed} usable records for a fit, found {found}")]
    TooFewRecords { found: usize, needed: usize },

    #[error("n={n}: {source}")]
    AtOrder {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::QuadratureDiverged { .. }
            | Error::NonPositivePivot { .. }
            | Error::TooFewRecords { .. } => true,
            Error::AtOrder { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    /// Process exit code: 2 for validation errors, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            3
        } else {
            2
        }
    }

    pub(crate) fn at_order(self, n: usize) -> Error {
        Error::AtOrder {
            n,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
