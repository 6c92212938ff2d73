use thiserror::Error;

/// Errors raised by construction, evaluation and the numerical checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {re}{im:+}i lies outside the open unit disc")]
    OutsideDisc { re: f64, im: f64 },

    #[error("point {re}{im:+}i is not on the unit circle")]
    NotOnCircle { re: f64, im: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("infeasible geometry: {0}")]
    InfeasibleGeometry(String),

    #[error("zero list is empty")]
    EmptyZeros,

    #[error("atom list is invalid: {0}")]
    InvalidAtoms(String),

    #[error("evaluation point is within {distance:e} of the atom at angle {theta}")]
    AtomCollision { theta: f64, distance: f64 },

    #[error("boundary point at angle {angle} is within {exclusion} of spectrum point at angle {spectrum_angle}")]
    SpectrumProximity {
        angle: f64,
        spectrum_angle: f64,
        exclusion: f64,
    },

    #[error("truncation insufficient at radius {radius}: error bound {bound}")]
    InsufficientTruncation { radius: f64, bound: f64 },

    #[error("need at least {needed} zeros, got {got}")]
    TooFewZeros { needed: usize, got: usize },

    #[error("moduli are not strictly increasing at index {index}")]
    NonStrictModuli { index: usize },

    #[error("atom ordering condition violated: {0}")]
    AtomOrdering(String),

    #[error("every sample point falls inside the exclusion arcs")]
    AllPointsExcluded,

    #[error("unsupported function description: {0}")]
    UnsupportedSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
