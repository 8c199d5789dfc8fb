use std::collections::BTreeMap;

use super::report::{InequalityReport, Instance, SupportInfo};
use crate::error::{Error, Result};
use crate::fourier::{pointwise_power_raw, SpectralFunction};
use crate::groups::weyl_count;
use crate::norms::{lp_norm, Certification, NormValue};
use crate::settings::Settings;

/// Tolerance when every norm involved is exact.
pub const TOL_EXACT: f64 = 1e-9;
/// Tolerance when a refined or grid-searched norm is involved.
pub const TOL_REFINED: f64 = 1e-6;

/// Smallest integer `>= p/2`, and 1 for `p <= 2`.
pub fn rho_of(p: f64) -> Result<u32> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("rho needs 0 < p < inf, got {p}")));
    }
    Ok((p / 2.0).ceil().max(1.0) as u32)
}

pub(crate) fn tol_for(values: &[&NormValue]) -> f64 {
    if values
        .iter()
        .all(|v| matches!(v.certification, Certification::Exact | Certification::IdentityPinned))
    {
        TOL_EXACT
    } else {
        TOL_REFINED
    }
}

fn check_pair(p: f64, q: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite() && p < q) {
        return Err(Error::Precondition(format!(
            "Nikolskii check needs 0 < p < q <= inf, got p={p}, q={q}"
        )));
    }
    Ok(())
}

/// `sum d^2` over the support of `T^rho` at the threshold and its /10, x10
/// neighbours.
fn support_counts(t: &SpectralFunction, rho: u32, settings: &Settings) -> Result<[u64; 3]> {
    let power = pointwise_power_raw(t, rho, settings.max_nodes)?;
    let thr = settings.support_threshold;
    Ok([
        power.support_weight_at(thr),
        power.support_weight_at(thr / 10.0),
        power.support_weight_at(thr * 10.0),
    ])
}

/// Norms and supports shared between the checks of one polynomial.
struct Cache<'a> {
    t: &'a SpectralFunction,
    settings: &'a Settings,
    norms: BTreeMap<u64, NormValue>,
    supports: BTreeMap<u32, [u64; 3]>,
}

impl<'a> Cache<'a> {
    fn new(t: &'a SpectralFunction, settings: &'a Settings) -> Self {
        Cache {
            t,
            settings,
            norms: BTreeMap::new(),
            supports: BTreeMap::new(),
        }
    }

    fn norm(&mut self, p: f64) -> Result<NormValue> {
        if let Some(v) = self.norms.get(&p.to_bits()) {
            return Ok(v.clone());
        }
        let v = lp_norm(self.t, p, self.settings)?;
        self.norms.insert(p.to_bits(), v.clone());
        Ok(v)
    }

    fn support(&mut self, rho: u32) -> Result<[u64; 3]> {
        if let Some(v) = self.supports.get(&rho) {
            return Ok(*v);
        }
        let v = support_counts(self.t, rho, self.settings)?;
        self.supports.insert(rho, v);
        Ok(v)
    }

    fn support_bound(&mut self, p: f64, q: f64, instance: Instance) -> Result<InequalityReport> {
        check_pair(p, q)?;
        let rho = rho_of(p)?;
        let (np, nq) = (self.norm(p)?, self.norm(q)?);
        let counts = self.support(rho)?;
        let e = 1.0 / p - 1.0 / q;
        let tol = tol_for(&[&np, &nq]);
        let rhs_at = |count: u64| (count as f64).powf(e) * np.value;
        let mut report = InequalityReport::le("nikolskii/support", instance, nq.value, rhs_at(counts[0]), tol)
            .with_notes(norm_notes(&np, &nq));
        let verdict = |count: u64| InequalityReport::le("", Instance::default(), nq.value, rhs_at(count), tol).holds;
        report.support = Some(SupportInfo {
            rho,
            threshold: self.settings.support_threshold,
            count: counts[0],
            count_tight: counts[1],
            count_loose: counts[2],
            verdict_stable: verdict(counts[1]) == report.holds && verdict(counts[2]) == report.holds,
        });
        Ok(report)
    }

    fn weyl_bound(&mut self, p: f64, q: f64, bound: f64, instance: Instance) -> Result<InequalityReport> {
        check_pair(p, q)?;
        if let Some(xi) = self.t.support().find(|xi| !xi.within(bound)) {
            return Err(Error::Precondition(format!("support index {xi} lies beyond L={bound}")));
        }
        let rho = rho_of(p)?;
        let (np, nq) = (self.norm(p)?, self.norm(q)?);
        let counts = self.support(rho)?;
        let group = self.t.group();
        let n_l = weyl_count(group, bound)?;
        let n_rho_l = weyl_count(group, rho as f64 * bound)?;
        let rhs = (n_rho_l as f64).powf(1.0 / p - 1.0 / q) * np.value;
        let notes = format!(
            "{}; support {} <= N(L) {} <= N(rho L) {}",
            norm_notes(&np, &nq),
            counts[0],
            n_l,
            n_rho_l
        );
        Ok(InequalityReport::le("nikolskii/weyl", instance, nq.value, rhs, tol_for(&[&np, &nq])).with_notes(notes))
    }
}

fn norm_notes(np: &NormValue, nq: &NormValue) -> String {
    format!(
        "lhs norm {} ({} nodes), rhs norm {} ({} nodes)",
        nq.certification, nq.nodes, np.certification, np.nodes
    )
}

fn instance_for(t: &SpectralFunction, p: f64, q: f64) -> Instance {
    let mut i = Instance::new(t.group());
    i.p = Some(p);
    i.q = Some(q);
    i
}

/// Checks `||T||_q <= (sum_{supp T^rho} d^2)^{1/p - 1/q} ||T||_p`.
pub fn nikolskii_check(t: &SpectralFunction, p: f64, q: f64, settings: &Settings) -> Result<InequalityReport> {
    Cache::new(t, settings).support_bound(p, q, instance_for(t, p, q))
}

/// Same inequality with the support count replaced by `N(rho L)`, for `T`
/// supported in `<xi> <= L`.
pub fn nikolskii_weyl_check(
    t: &SpectralFunction,
    p: f64,
    q: f64,
    bound: f64,
    settings: &Settings,
) -> Result<InequalityReport> {
    let mut i = instance_for(t, p, q);
    i.bandlimit = Some(bound);
    Cache::new(t, settings).weyl_bound(p, q, bound, i)
}

/// Support-count and Weyl-count reports for every pair, in pair order, evaluating each
/// norm and each support once. `base` supplies the shared instance fields.
pub fn nikolskii_pairs(
    t: &SpectralFunction,
    pairs: &[(f64, f64)],
    bound: f64,
    base: &Instance,
    settings: &Settings,
) -> Result<Vec<(InequalityReport, InequalityReport)>> {
    let mut cache = Cache::new(t, settings);
    pairs
        .iter()
        .map(|&(p, q)| {
            let mut i = base.clone();
            i.p = Some(p);
            i.q = Some(q);
            i.bandlimit = Some(bound);
            Ok((cache.support_bound(p, q, i.clone())?, cache.weyl_bound(p, q, bound, i)?))
        })
        .collect()
}
