use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Error)]
pub enum ExactError {
    #[error("division by a jet whose constant term vanishes within precision")]
    DivisionByZeroJet,
    #[error("logarithm of a jet whose constant term vanishes within precision")]
    LogOfZeroJet,
    #[error("jet operands have mismatched order ({0} vs {1})")]
    JetOrderMismatch(usize, usize),
    #[error("a substitution made a denominator identically zero")]
    DenominatorVanishesIdentically,
    #[error("unbound variable `{0}` in substitution")]
    UnboundVariable(String),
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("division by zero")]
    DivisionByZero,
}
