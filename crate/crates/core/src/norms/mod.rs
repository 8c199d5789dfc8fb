//! Norm functionals on band-limited functions.
//!
//! Norms computed from Fourier coefficients alone are exact. Integral norms
//! use Haar quadrature: even exponents are polynomial integrands and get an
//! exact rule, other exponents are refined by band doubling, and the sup norm
//! is a grid maximum with the identity node pinned. Every value carries a
//! [`Certification`] saying which of these applies.

mod dyadic;
mod lp;
mod sequence;
mod spec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::SpectralFunction;
use crate::settings::Settings;

pub use dyadic::{besov_norm, beurling_norm, beurling_r_norm, dyadic_blocks, tl_norm, DyadicBlock};
pub use lp::{lp_norm, sobolev_norm, sup_norm};
pub use sequence::{seq_lp_norm, wiener_norm};
pub use spec::NormSpec;

/// How far a computed norm can be trusted, from strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Closed form in the coefficients, or a quadrature exact for the integrand.
    Exact,
    /// Sup norm of a positive-type function, attained at the identity.
    IdentityPinned,
    /// Refined until the relative change dropped below the tolerance.
    Refined,
    /// Refinement stopped at the node cap or the refinement limit.
    Unconverged,
    /// Grid maximum after local search; a lower bound for the sup norm.
    GridLowerBound,
}

impl Certification {
    pub fn weakest(self, other: Self) -> Self {
        self.max(other)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Certification::Exact => "exact",
            Certification::IdentityPinned => "exact (identity-pinned)",
            Certification::Refined => "refined",
            Certification::Unconverged => "refinement capped",
            Certification::GridLowerBound => "grid-certified lower bound",
        }
    }
}

impl std::fmt::Display for Certification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub certification: Certification,
    /// Size of the largest quadrature grid used; 0 for coefficient-only norms.
    pub nodes: usize,
}

impl NormValue {
    pub(crate) fn exact(value: f64) -> Self {
        NormValue {
            value,
            certification: Certification::Exact,
            nodes: 0,
        }
    }
}

/// Evaluates the norm described by `spec`.
pub fn norm(f: &SpectralFunction, spec: &NormSpec, settings: &Settings) -> Result<NormValue> {
    spec.validate()?;
    match *spec {
        NormSpec::Lp { p } => lp_norm(f, p, settings),
        NormSpec::SeqLp { p } => Ok(NormValue::exact(seq_lp_norm(f, p)?)),
        NormSpec::Sobolev { r, p } => sobolev_norm(f, r, p, settings),
        NormSpec::Besov { r, p, q } => besov_norm(f, r, p, q, settings),
        NormSpec::TriebelLizorkin { r, p, q } => tl_norm(f, r, p, q, settings),
        NormSpec::Wiener { beta } => Ok(NormValue::exact(wiener_norm(f, beta)?)),
        NormSpec::Beurling { beta } => Ok(NormValue::exact(beurling_norm(f, beta)?)),
        NormSpec::BeurlingR { r, beta } => Ok(NormValue::exact(beurling_r_norm(f, r, beta)?)),
    }
}

/// Checks `x` lies in `(0, inf]`.
pub(crate) fn check_exponent(name: &str, x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        Err(Error::InvalidParameter(format!("{name} must lie in (0, inf], got {x}")))
    } else {
        Ok(())
    }
}

/// `l^q` aggregate of nonnegative terms; `q = inf` gives the maximum.
pub(crate) fn lq_sum(terms: impl IntoIterator<Item = f64>, q: f64) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let m = terms.iter().copied().fold(0.0, f64::max);
    if m == 0.0 || q.is_infinite() {
        return m;
    }
    let s: f64 = terms.iter().map(|&t| (t / m).powf(q)).sum();
    m * s.powf(1.0 / q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lq_sum_cases() {
        assert_eq!(lq_sum([3.0, 4.0], 2.0), 5.0);
        assert_eq!(lq_sum([3.0, 4.0], f64::INFINITY), 4.0);
        assert_eq!(lq_sum([1.0, 2.0, 3.0], 1.0), 6.0);
        assert_eq!(lq_sum(std::iter::empty(), 2.0), 0.0);
        assert_eq!(lq_sum([0.0, 0.0], 0.5), 0.0);
        assert!((lq_sum([1.0, 1.0], 0.5) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn certification_order() {
        assert_eq!(
            Certification::Exact.weakest(Certification::Refined),
            Certification::Refined
        );
        assert_eq!(
            Certification::GridLowerBound.weakest(Certification::IdentityPinned),
            Certification::GridLowerBound
        );
        assert_eq!(
            serde_json::to_string(&Certification::IdentityPinned).unwrap(),
            "\"identity-pinned\""
        );
    }

    #[test]
    fn exponent_validation() {
        assert!(check_exponent("p", 0.0).is_err());
        assert!(check_exponent("p", -1.0).is_err());
        assert!(check_exponent("p", f64::NAN).is_err());
        assert!(check_exponent("p", f64::INFINITY).is_ok());
    }
}
