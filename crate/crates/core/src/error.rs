use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid deformation parameter q = {0}: need q > 0, q != 1")]
    InvalidQ(f64),
    #[error("invalid tolerances: need 0 < tol_zero <= tol_rel < 1 (got tol_rel={tol_rel}, tol_zero={tol_zero})")]
    InvalidTolerance { tol_rel: f64, tol_zero: f64 },
    #[error("not a half-integer: {0}")]
    NotHalfInteger(String),
    #[error("invalid spin l = {0}")]
    InvalidSpin(String),
    #[error("invalid highest weight (r, s) = ({r}, {s})")]
    InvalidHighestWeight { r: String, s: String },
    #[error("m = {m} out of range for r = {r}")]
    OutOfRange { r: String, m: String },
    #[error("x = {x} is not in the spectrum on V_m")]
    NotInSpectrum { x: String },
    #[error("negative radicand {value:e} beyond tolerance")]
    NegativeRadicand { value: f64 },
    #[error("no terminating numerator parameter in 4phi3")]
    DivergentSeries,
    #[error("denominator Pochhammer vanishes at surviving term {term}")]
    PoleInDenominator { term: usize },
    #[error("transition matrix not unitary: |U*U - 1| = {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("wall at {wall} is closer than 3 to the window edge K = {window}")]
    WallTooCloseToWindow { wall: String, window: String },
    #[error("ladder condition violated: {0}")]
    TagConditionViolated(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("star pattern {class} matched on {component} but Hermiticity residual is {residual:e}")]
    CertificationFailed { component: String, class: String, residual: f64 },
    #[error("not equivalent: {0}")]
    NotEquivalent(String),
    #[error("intertwiner is singular (condition number {cond:e})")]
    SingularIntertwiner { cond: f64 },
    #[error("equivalence failed: {0}")]
    EquivalenceFailed(String),
    #[error("matrix file: {0}")]
    MatrixFile(String),
}
