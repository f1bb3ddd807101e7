use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a closed form.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("adaptive quadrature did not converge on [{lo}, {hi}] (tolerance {tol:e})")]
    Quadrature { lo: f64, hi: f64, tol: f64 },

    /// Case II needs the inner radius r1 - 1 to exceed the needle-distance cap.
    #[error("case II infeasible: r1 - 1 = {r1_minus_1} is not greater than a = {a}")]
    CaseIIInfeasible { r1_minus_1: f64, a: f64 },

    #[error("every point of the search box is case-II infeasible")]
    EmptyFeasibleSet,

    #[error("predicate has the same value at both ends of [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Fails with a domain error unless every value is finite.
pub(crate) fn ensure_finite(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        if !v.is_finite() {
            return Err(domain(format!("{name} must be finite, got {v}")));
        }
    }
    Ok(())
}
