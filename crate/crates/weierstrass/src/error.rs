use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeierstrassError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("functional-invariant degree bounds violated: deg g2 = {deg_g2}, deg g3 = {deg_g3}, bounds ({bound_g2}, {bound_g3})")]
    DegreeBoundViolated {
        deg_g2: u32,
        deg_g3: u32,
        bound_g2: String,
        bound_g3: String,
    },
    #[error("ramification points coincide (a = b)")]
    RamificationCollision,
    #[error("minimality reduction did not terminate")]
    NonMinimalUnresolved,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error(transparent)]
    Exact(#[from] exactalg::ExactError),
}
