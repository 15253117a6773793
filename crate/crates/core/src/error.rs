use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(α)")]
    DivisionByZero,
    #[error("degenerate alphabet: p and q must differ (got p = q = {0})")]
    DegenerateAlphabet(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource cap exceeded: {what} = {value} > {cap}")]
    ResourceLimit { what: &'static str, value: u64, cap: u64 },
    #[error("degenerate quadrilateral: corners are collinear")]
    DegenerateQuad,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unknown deformation '{0}' (expected none, equal or integer)")]
    UnknownDeformation(String),
    #[error("no coset representative found within search radius {radius}")]
    CosetNotFound { radius: i64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap(what: &'static str, value: u64, cap: u64) -> Result<()> {
    if value > cap {
        Err(Error::ResourceLimit { what, value, cap })
    } else {
        Ok(())
    }
}
