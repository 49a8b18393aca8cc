use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coordinate sits on a chart singularity (χ or θ at 0 or π).
    #[error("{name} = {value} is outside the open interval (0, π)")]
    Domain { name: &'static str, value: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input violates a structural constraint of the separated ansatz.
    #[error("constraint violation: {0}")]
    Constraint(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Rejects coordinates at the poles of the spherical chart.
pub(crate) fn check_open_angle(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 && value < std::f64::consts::PI {
        Ok(())
    } else {
        Err(Error::Domain { name, value })
    }
}
