use super::{check_exponent, lq_sum};
use crate::error::Result;
use crate::fourier::SpectralFunction;

/// `l^p` norm on the dual: `(sum d^{p(2/p - 1/2)} ||F(xi)||_HS^p)^{1/p}`, and
/// `sup d^{-1/2} ||F(xi)||_HS` at `p = inf`.
pub fn seq_lp_norm(f: &SpectralFunction, p: f64) -> Result<f64> {
    check_exponent("p", p)?;
    let terms = f.iter().map(|(xi, c)| (xi.dim() as f64).powf(2.0 / p - 0.5) * c.norm());
    Ok(lq_sum(terms, p))
}

/// Wiener `A^beta` norm; the same weights as [`seq_lp_norm`] at `p = beta`.
pub fn wiener_norm(f: &SpectralFunction, beta: f64) -> Result<f64> {
    seq_lp_norm(f, beta)
}
