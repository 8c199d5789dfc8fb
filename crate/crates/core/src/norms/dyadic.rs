use std::collections::BTreeMap;

use num_complex::Complex64;

use super::lp::{integrate_power, is_even, lp_norm};
use super::{check_exponent, lq_sum, Certification, NormValue};
use crate::error::{Error, Result};
use crate::fourier::SpectralFunction;
use crate::groups::RepIndex;
use crate::parallel;
use crate::settings::Settings;

/// Support indices with `2^s <= <xi> < 2^{s+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicBlock {
    pub s: u32,
    pub reps: Vec<RepIndex>,
}

/// Nonempty dyadic blocks of the support, in increasing `s`.
pub fn dyadic_blocks(f: &SpectralFunction) -> Vec<DyadicBlock> {
    let mut map: BTreeMap<u32, Vec<RepIndex>> = BTreeMap::new();
    for xi in f.support() {
        map.entry(xi.dyadic_block()).or_default().push(xi.clone());
    }
    map.into_iter().map(|(s, reps)| DyadicBlock { s, reps }).collect()
}

fn block_parts(f: &SpectralFunction) -> Vec<(u32, SpectralFunction)> {
    dyadic_blocks(f)
        .into_iter()
        .map(|b| (b.s, f.filter(|xi| b.reps.binary_search(xi).is_ok())))
        .collect()
}

/// Besov `B^r_{p,q}`: `l^q` over `s` of `2^{sr} ||block_s f||_p`.
pub fn besov_norm(f: &SpectralFunction, r: f64, p: f64, q: f64, settings: &Settings) -> Result<NormValue> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    check_r(r)?;
    let parts = block_parts(f);
    let norms = parallel::map_slice(&parts, |(_, g)| lp_norm(g, p, settings));
    let mut cert = Certification::Exact;
    let mut nodes = 0;
    let mut terms = Vec::with_capacity(parts.len());
    for ((s, _), v) in parts.iter().zip(norms) {
        let v = v?;
        cert = cert.weakest(v.certification);
        nodes = nodes.max(v.nodes);
        terms.push(2f64.powf(*s as f64 * r) * v.value);
    }
    Ok(NormValue {
        value: lq_sum(terms, q),
        certification: cert,
        nodes,
    })
}

/// Triebel-Lizorkin `F^r_{p,q}`: `L^p` norm of the pointwise `l^q` aggregate
/// of `2^{sr} |block_s f(x)|`, on one grid shared by all blocks.
pub fn tl_norm(f: &SpectralFunction, r: f64, p: f64, q: f64, settings: &Settings) -> Result<NormValue> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    check_r(r)?;
    if p.is_infinite() {
        return Err(Error::InvalidParameter("Triebel-Lizorkin norm needs p < inf".into()));
    }
    let parts: Vec<SpectralFunction> = block_parts(f)
        .into_iter()
        .map(|(s, g)| g.scaled(Complex64::from(2f64.powf(s as f64 * r))))
        .collect();
    if parts.is_empty() {
        return Ok(NormValue::exact(0.0));
    }
    if parts.len() == 1 {
        return lp_norm(&parts[0], p, settings);
    }
    integrate_power(
        &parts,
        p,
        p == q && is_even(p),
        |v| lq_sum(v.iter().copied(), q),
        settings,
    )
}

/// Tail suprema `S_s = sup_{<xi> >= 2^s} d^{-1/2} ||F(xi)||_HS` for every `s`
/// up to the last nonempty block.
fn tail_sups(f: &SpectralFunction) -> Vec<f64> {
    let mut per_block: BTreeMap<u32, f64> = BTreeMap::new();
    for (xi, c) in f.iter() {
        let v = c.norm() / (xi.dim() as f64).sqrt();
        if v > 0.0 {
            let e = per_block.entry(xi.dyadic_block()).or_insert(0.0);
            *e = e.max(v);
        }
    }
    let Some(&last) = per_block.keys().last() else {
        return Vec::new();
    };
    let mut out = vec![0.0; last as usize + 1];
    let mut run = 0.0f64;
    for s in (0..=last).rev() {
        run = run.max(per_block.get(&s).copied().unwrap_or(0.0));
        out[s as usize] = run;
    }
    out
}

/// `A^{*,beta}`: `(sum_s 2^{ns} S_s^beta)^{1/beta}`, computed as
/// [`beurling_r_norm`] at `r = 1 / beta`.
pub fn beurling_norm(f: &SpectralFunction, beta: f64) -> Result<f64> {
    check_exponent("beta", beta)?;
    beurling_r_norm(f, 1.0 / beta, beta)
}

/// `A_r^{*,beta}`: `(sum_s (2^{rns} S_s)^beta)^{1/beta}`; the supremum over
/// `s` at `beta = inf`.
pub fn beurling_r_norm(f: &SpectralFunction, r: f64, beta: f64) -> Result<f64> {
    check_exponent("beta", beta)?;
    check_r(r)?;
    let n = f.group().dim() as f64;
    let terms = tail_sups(f)
        .into_iter()
        .enumerate()
        .map(|(s, sup)| 2f64.powf(r * n * s as f64) * sup);
    Ok(lq_sum(terms, beta))
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("r must be finite, got {r}")))
    }
}
