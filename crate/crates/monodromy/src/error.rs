use thiserror::Error;

#[derive(Debug, Error)]
pub enum MonodromyError {
    #[error("resonant or invalid input: {0}")]
    ResonantInput(String),
    #[error("series argument outside the unit disk and continuation disabled")]
    DivergentArgument,
    #[error("sigma must lie in (-rho_1, 0)")]
    SigmaOutOfRange,
    #[error("quadrature truncation bound violated: {0}")]
    TruncationBoundViolated(String),
    #[error("adaptive step size underflow during path integration")]
    StepSizeUnderflow,
    #[error("basis matching at the base point is ill-conditioned")]
    BasisMatchingIllConditioned,
    #[error("working precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error(transparent)]
    Exact(#[from] exactalg::ExactError),
}
