//! Analysis and synthesis between grid values and spectral coefficients.
//!
//! A [`SpectralFunction`] is the finitely supported map `xi -> f^(xi)` with
//! `f^(xi) = int f(x) xi(x)^* dx`; synthesis evaluates
//! `f(x) = sum d_xi Tr(f^(xi) xi(x))` at quadrature nodes.

mod io;
mod transform;

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::wigner::SmallD;
use crate::groups::{enumerate_dual, GroupElement, GroupId, QuadratureRule, RepIndex, DEFAULT_MAX_NODES};

pub use io::{read_spectral, write_spectral, SPECTRAL_FORMAT_HEADER};

/// Entries below this fraction of the largest coefficient entry are zeroed
/// after analysis.
pub const DEFAULT_SUPPORT_THRESHOLD: f64 = 1e-12;

pub type Coeff = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFunction {
    group: GroupId,
    coeffs: BTreeMap<RepIndex, Coeff>,
}

impl SpectralFunction {
    pub fn zero(group: GroupId) -> Self {
        SpectralFunction {
            group,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `(index, matrix)` pairs; later duplicates overwrite earlier ones.
    pub fn from_coeffs(group: GroupId, items: impl IntoIterator<Item = (RepIndex, Coeff)>) -> Result<Self> {
        let mut f = Self::zero(group);
        for (xi, c) in items {
            f.insert(xi, c)?;
        }
        Ok(f)
    }

    /// Single torus character `e^{i k.x}` scaled by `c`.
    pub fn torus_mode(group: GroupId, k: Vec<i64>, c: Complex64) -> Result<Self> {
        Self::from_coeffs(group, [(RepIndex::Torus(k), DMatrix::from_element(1, 1, c))])
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn insert(&mut self, xi: RepIndex, c: Coeff) -> Result<()> {
        self.group.validate_index(&xi)?;
        let d = xi.dim();
        if c.nrows() != d || c.ncols() != d {
            return Err(Error::ShapeMismatch {
                index: xi.to_string(),
                expected: d,
                rows: c.nrows(),
                cols: c.ncols(),
            });
        }
        self.coeffs.insert(xi, c);
        Ok(())
    }

    pub fn get(&self, xi: &RepIndex) -> Option<&Coeff> {
        self.coeffs.get(xi)
    }

    /// Coefficients in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&RepIndex, &Coeff)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every stored coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.iter().all(|z| *z == Complex64::new(0.0, 0.0)))
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &RepIndex> {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.iter().any(|z| *z != Complex64::new(0.0, 0.0)))
            .map(|(k, _)| k)
    }

    /// `sum d_xi^2` over the support.
    pub fn support_weight(&self) -> u64 {
        self.support().map(|xi| (xi.dim() * xi.dim()) as u64).sum()
    }

    /// Largest `<xi>` in the support; 1 for the zero function.
    pub fn max_weight(&self) -> f64 {
        self.support().map(|xi| xi.weight()).fold(1.0, f64::max)
    }

    /// Largest entry modulus over all coefficients.
    pub fn max_entry(&self) -> f64 {
        self.coeffs
            .values()
            .flat_map(|c| c.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        self.map_coeffs(|_, c| c * s)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RepIndex, &Coeff) -> Coeff) -> Self {
        SpectralFunction {
            group: self.group,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), f(k, c))).collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&RepIndex) -> bool) -> Self {
        SpectralFunction {
            group: self.group,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Entrywise sum; both operands must live on the same group.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidParameter(format!(
                "cannot add {} and {}",
                self.group, other.group
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.coeffs
                .entry(k.clone())
                .and_modify(|a| *a += c)
                .or_insert_with(|| c.clone());
        }
        Ok(out)
    }

    /// Zeroes entries below `threshold * max_entry` and drops empty blocks.
    pub fn cleaned(&self, threshold: f64) -> Self {
        let cut = threshold * self.max_entry();
        let mut out = Self::zero(self.group);
        for (k, c) in &self.coeffs {
            let c = c.map(|z| {
                if z.norm() < cut || z.norm() == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    z
                }
            });
            if c.iter().any(|z| z.norm() > 0.0) {
                out.coeffs.insert(k.clone(), c);
            }
        }
        out
    }

    /// `sum d_xi^2` over indices with some entry `>= threshold * max_entry`.
    pub fn support_weight_at(&self, threshold: f64) -> u64 {
        let cut = threshold * self.max_entry();
        self.coeffs
            .iter()
            .filter(|(_, c)| c.iter().any(|z| z.norm() >= cut && z.norm() > 0.0))
            .map(|(k, _)| (k.dim() * k.dim()) as u64)
            .sum()
    }

    /// Pointwise value `sum d Tr(f^(xi) xi(x))` at an arbitrary element.
    pub fn eval(&self, x: &GroupElement) -> Complex64 {
        match x {
            GroupElement::Torus(t) => self
                .coeffs
                .iter()
                .map(|(k, c)| {
                    let RepIndex::Torus(k) = k else { unreachable!() };
                    let phase: f64 = k.iter().zip(t).map(|(&a, &b)| a as f64 * b).sum();
                    c[(0, 0)] * Complex64::cis(phase)
                })
                .sum(),
            GroupElement::Su2 { alpha, beta, gamma } => {
                let Some(top) = self.coeffs.keys().last() else {
                    return Complex64::new(0.0, 0.0);
                };
                let RepIndex::Su2 { two_l: t } = top else {
                    unreachable!()
                };
                let small = SmallD::new(*t, *beta);
                self.coeffs
                    .iter()
                    .map(|(k, c)| {
                        let RepIndex::Su2 { two_l } = k else { unreachable!() };
                        let dm = crate::groups::wigner::big_d_from(&small, *two_l, *alpha, *gamma);
                        (c * dm).trace() * (*two_l as f64 + 1.0)
                    })
                    .sum()
            }
        }
    }

    /// True when every coefficient is Hermitian positive semidefinite; then
    /// `|f(x)| <= f(e)` everywhere.
    pub fn is_positive_type(&self) -> bool {
        self.coeffs.values().all(|c| {
            let herm = (c - c.adjoint()).iter().all(|z| z.norm() <= 1e-12 * (1.0 + c.norm()));
            if !herm {
                return false;
            }
            if c.nrows() == 1 {
                return c[(0, 0)].re >= 0.0;
            }
            let h = (c + c.adjoint()) * Complex64::new(0.5, 0.0);
            let eig = h.symmetric_eigenvalues();
            eig.iter().all(|&v| v >= -1e-12 * (1.0 + c.norm()))
        })
    }
}

/// Function values on the nodes of a quadrature rule.
#[derive(Clone, Debug)]
pub struct GridFunction {
    rule: Arc<QuadratureRule>,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(rule: Arc<QuadratureRule>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != rule.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} nodes but {} values were given",
                rule.len(),
                values.len()
            )));
        }
        Ok(GridFunction { rule, values })
    }

    /// Samples a closure at every node.
    pub fn from_fn(rule: Arc<QuadratureRule>, f: impl Fn(&GroupElement) -> Complex64 + Sync + Send) -> Self {
        let r = rule.clone();
        let values = crate::parallel::map_range(rule.len(), move |i| f(&r.node(i)));
        GridFunction { rule, values }
    }

    pub fn rule(&self) -> &Arc<QuadratureRule> {
        &self.rule
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// `int f dx` by the rule (sequential, fixed order).
    pub fn integral(&self) -> Complex64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v * self.rule.weight(i))
            .sum()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64 + Sync + Send) -> Self {
        GridFunction {
            rule: self.rule.clone(),
            values: crate::parallel::map_slice(&self.values, |v| f(*v)),
        }
    }
}

/// Fourier coefficients for every `<xi> <= bound`.
///
/// The result is exact when `f` is band-limited by `f.rule().bandlimit()`;
/// the rule must therefore reach at least `bound`.
pub fn analyze(f: &GridFunction, bound: f64) -> Result<SpectralFunction> {
    Ok(analyze_raw(f, bound)?.cleaned(DEFAULT_SUPPORT_THRESHOLD))
}

/// [`analyze`] without the support cleanup.
pub fn analyze_raw(f: &GridFunction, bound: f64) -> Result<SpectralFunction> {
    let rule = f.rule();
    if rule.bandlimit() < bound * (1.0 - 1e-12) {
        return Err(Error::BandLimit(format!(
            "analysis up to <xi> <= {bound} needs a rule with band limit >= {bound}, got {}",
            rule.bandlimit()
        )));
    }
    let reps = enumerate_dual(rule.group(), bound)?;
    transform::analyze(rule, &f.values, &reps)
}

/// Evaluates `F` at every node of `rule`.
pub fn synthesize(f: &SpectralFunction, rule: &Arc<QuadratureRule>) -> Result<GridFunction> {
    if f.group() != rule.group() {
        return Err(Error::InvalidParameter(format!(
            "function on {} cannot be synthesized on a {} rule",
            f.group(),
            rule.group()
        )));
    }
    if !f.support().all(|xi| xi.within(rule.bandlimit())) {
        return Err(Error::BandLimit(format!(
            "support reaches <xi> = {:.6} beyond the rule band limit {}",
            f.max_weight(),
            rule.bandlimit()
        )));
    }
    let values = transform::synthesize(rule, f);
    Ok(GridFunction {
        rule: rule.clone(),
        values,
    })
}

/// Dirichlet kernel: identity coefficients for every `<xi> <= bound`.
pub fn dirichlet(group: GroupId, bound: f64) -> Result<SpectralFunction> {
    let reps = enumerate_dual(group, bound)?;
    SpectralFunction::from_coeffs(
        group,
        reps.into_iter().map(|xi| {
            let d = xi.dim();
            (xi, DMatrix::identity(d, d))
        }),
    )
}

/// `S_L f`: restriction to `<xi> <= bound`.
pub fn partial_sum(f: &SpectralFunction, bound: f64) -> SpectralFunction {
    f.filter(|xi| xi.within(bound))
}

/// Spectral coefficients of the pointwise power `T^rho`, uncleaned.
pub fn pointwise_power_raw(t: &SpectralFunction, rho: u32, max_nodes: usize) -> Result<SpectralFunction> {
    if rho == 0 {
        return Err(Error::InvalidParameter("rho must be a positive integer".into()));
    }
    if t.support().next().is_none() {
        return Ok(SpectralFunction::zero(t.group()));
    }
    let band = rho as f64 * t.max_weight();
    let rule = Arc::new(QuadratureRule::new(t.group(), band, max_nodes)?);
    let g = synthesize(t, &rule)?;
    let powered = g.map(|v| {
        let mut acc = v;
        for _ in 1..rho {
            acc *= v;
        }
        acc
    });
    analyze_raw(&powered, band)
}

/// Spectral coefficients of `T^rho`, cleaned at [`DEFAULT_SUPPORT_THRESHOLD`].
pub fn pointwise_power(t: &SpectralFunction, rho: u32) -> Result<SpectralFunction> {
    Ok(pointwise_power_raw(t, rho, DEFAULT_MAX_NODES)?.cleaned(DEFAULT_SUPPORT_THRESHOLD))
}

/// Smallest rule that synthesizes `f` and integrates `|f|^2` exactly.
pub fn rule_for(f: &SpectralFunction, oversample: f64, max_nodes: usize) -> Result<Arc<QuadratureRule>> {
    Ok(Arc::new(QuadratureRule::new(
        f.group(),
        (f.max_weight() * oversample).max(1.0),
        max_nodes,
    )?))
}
