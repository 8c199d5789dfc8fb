use std::sync::Arc;

use num_complex::Complex64;

use super::{check_exponent, Certification, NormValue};
use crate::error::{Error, Result};
use crate::fourier::{synthesize, SpectralFunction};
use crate::groups::{GroupElement, GroupId, QuadratureRule};
use crate::parallel;
use crate::settings::Settings;

const CHUNK: usize = 4096;
const POLISH_SEEDS: usize = 4;

/// `L^p(G)` norm against normalized Haar measure.
///
/// `p = 2` comes from the coefficients; other even `p` are integrated
/// exactly; other finite `p` refine the grid until the
/// relative change is below `settings.refine_tol`; `p = inf` goes to
/// [`sup_norm`].
pub fn lp_norm(f: &SpectralFunction, p: f64, settings: &Settings) -> Result<NormValue> {
    check_exponent("p", p)?;
    if p.is_infinite() {
        return sup_norm(f, settings);
    }
    if p == 2.0 {
        let sq: f64 = f.iter().map(|(xi, c)| xi.dim() as f64 * c.norm_squared()).sum();
        return Ok(NormValue::exact(sq.sqrt()));
    }
    integrate_power(std::slice::from_ref(f), p, is_even(p), |v| v[0], settings)
}

/// `||(1 - L)^{r/2} f||_p`: coefficients scaled by `<xi>^r`.
pub fn sobolev_norm(f: &SpectralFunction, r: f64, p: f64, settings: &Settings) -> Result<NormValue> {
    if !r.is_finite() {
        return Err(Error::InvalidParameter(format!("r must be finite, got {r}")));
    }
    let g = f.map_coeffs(|xi, c| c * Complex64::from(xi.weight().powf(r)));
    lp_norm(&g, p, settings)
}

pub(crate) fn is_even(p: f64) -> bool {
    p.fract() == 0.0 && (p as u64).is_multiple_of(2) && p <= 64.0
}

/// `(int g(x)^p dx)^{1/p}` with `g(x) = agg(|parts_0(x)|, |parts_1(x)|, ...)`.
///
/// With `exact` set the integrand is a trigonometric polynomial of band
/// `(p / 2) L` and one rule suffices.
pub(crate) fn integrate_power(
    parts: &[SpectralFunction],
    p: f64,
    exact: bool,
    agg: impl Fn(&[f64]) -> f64 + Sync,
    settings: &Settings,
) -> Result<NormValue> {
    let group = parts[0].group();
    if parts.iter().all(SpectralFunction::is_zero) {
        return Ok(NormValue::exact(0.0));
    }
    let band = parts.iter().map(SpectralFunction::max_weight).fold(1.0, f64::max);
    if exact {
        let rule = QuadratureRule::new(group, band * p / 2.0, settings.max_nodes)?;
        let nodes = rule.len();
        return Ok(NormValue {
            value: power_mean(parts, &Arc::new(rule), p, &agg)?,
            certification: Certification::Exact,
            nodes,
        });
    }
    let mut band = band * (p / 2.0).ceil().max(1.0);
    let rule = QuadratureRule::new(group, band, settings.max_nodes)?;
    let mut nodes = rule.len();
    let mut prev = power_mean(parts, &Arc::new(rule), p, &agg)?;
    for _ in 0..settings.max_refinements {
        band *= 2.0;
        let rule = match QuadratureRule::new(group, band, settings.max_nodes) {
            Ok(r) => r,
            Err(Error::ResourceCap { .. }) => break,
            Err(e) => return Err(e),
        };
        nodes = rule.len();
        let cur = power_mean(parts, &Arc::new(rule), p, &agg)?;
        if (cur - prev).abs() <= settings.refine_tol * cur.abs().max(f64::MIN_POSITIVE) {
            return Ok(NormValue {
                value: cur,
                certification: Certification::Refined,
                nodes,
            });
        }
        prev = cur;
    }
    Ok(NormValue {
        value: prev,
        certification: Certification::Unconverged,
        nodes,
    })
}

fn power_mean(
    parts: &[SpectralFunction],
    rule: &Arc<QuadratureRule>,
    p: f64,
    agg: &(impl Fn(&[f64]) -> f64 + Sync),
) -> Result<f64> {
    let grids = parts
        .iter()
        .map(|f| synthesize(f, rule).map(|g| g.into_values()))
        .collect::<Result<Vec<_>>>()?;
    let n = rule.len();
    let pointwise: Vec<f64> = parallel::map_range(n, |i| {
        let mods: Vec<f64> = grids.iter().map(|g| g[i].norm()).collect();
        agg(&mods)
    });
    let top = pointwise.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(0.0);
    }
    // fixed-size chunks summed in order keep the result independent of threads
    let partial: Vec<f64> = parallel::map_range(n.div_ceil(CHUNK), |c| {
        (c * CHUNK..((c + 1) * CHUNK).min(n))
            .map(|i| rule.weight(i) * (pointwise[i] / top).powf(p))
            .sum()
    });
    Ok(top * partial.iter().sum::<f64>().powf(1.0 / p))
}

/// `sup |f|`.
///
/// For positive-type `f` (every coefficient Hermitian PSD) the maximum is
/// `f(e)` and the value is exact. Otherwise it is the maximum over an
/// oversampled grid, improved by a compass search from the best nodes, and
/// is a lower bound.
pub fn sup_norm(f: &SpectralFunction, settings: &Settings) -> Result<NormValue> {
    let group = f.group();
    if f.is_zero() {
        return Ok(NormValue::exact(0.0));
    }
    let at_identity = f.eval(&GroupElement::identity(group)).norm();
    if f.is_positive_type() {
        return Ok(NormValue {
            value: at_identity,
            certification: Certification::IdentityPinned,
            nodes: 1,
        });
    }
    let l = f.max_weight();
    let rule = match QuadratureRule::new(group, 2.0 * l, settings.max_nodes) {
        Err(Error::ResourceCap { .. }) => QuadratureRule::new(group, l, settings.max_nodes)?,
        other => other?,
    };
    let rule = Arc::new(rule);
    let values: Vec<f64> = synthesize(f, &rule)?.values().iter().map(|z| z.norm()).collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order.truncate(POLISH_SEEDS);
    let step = rule.spacing();
    let polished = parallel::map_slice(&order, |&i| compass_max(f, params_of(&rule.node(i)), &step));
    let best = polished
        .into_iter()
        .chain(std::iter::once(values[0]))
        .chain(std::iter::once(at_identity))
        .fold(0.0, f64::max);
    Ok(NormValue {
        value: best,
        certification: Certification::GridLowerBound,
        nodes: rule.len(),
    })
}

fn params_of(x: &GroupElement) -> Vec<f64> {
    match x {
        GroupElement::Torus(t) => t.clone(),
        GroupElement::Su2 { alpha, beta, gamma } => vec![*alpha, *beta, *gamma],
    }
}

fn element_of(group: GroupId, v: &[f64]) -> GroupElement {
    match group {
        GroupId::Torus(_) => GroupElement::Torus(v.to_vec()),
        GroupId::Su2 => GroupElement::Su2 {
            alpha: v[0],
            beta: v[1],
            gamma: v[2],
        },
    }
}

/// Coordinate pattern search maximizing `|f|`. The Euler formulas are valid
/// for any real angles, so no wrapping is needed.
fn compass_max(f: &SpectralFunction, mut x: Vec<f64>, spacing: &[f64]) -> f64 {
    let group = f.group();
    let eval = |x: &[f64]| f.eval(&element_of(group, x)).norm();
    let mut best = eval(&x);
    let mut h: Vec<f64> = spacing.iter().map(|s| s / 2.0).collect();
    for _ in 0..400 {
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += sign * h[i];
                let v = eval(&y);
                if v > best {
                    best = v;
                    x = y;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            h.iter_mut().for_each(|s| *s *= 0.5);
            if h.iter().all(|&s| s < 1e-10) {
                break;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::fourier::dirichlet;
    use crate::groups::RepIndex;
    use nalgebra::DMatrix;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn torus1(modes: &[(i64, Complex64)]) -> SpectralFunction {
        SpectralFunction::from_coeffs(
            GroupId::Torus(1),
            modes
                .iter()
                .map(|&(k, v)| (RepIndex::Torus(vec![k]), DMatrix::from_element(1, 1, v))),
        )
        .unwrap()
    }

    #[test]
    fn single_mode_has_unit_norm_for_every_p() {
        let f = torus1(&[(3, Complex64::new(0.6, 0.8))]);
        let s = Settings::default();
        for p in [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 7.0, f64::INFINITY] {
            let v = lp_norm(&f, p, &s).unwrap();
            assert!((v.value - 1.0).abs() < 1e-12, "p={p}: {v:?}");
        }
    }

    #[test]
    fn l2_matches_quadrature() {
        let mut f = dirichlet(GroupId::Su2, 3.0).unwrap();
        f.insert(
            RepIndex::Su2 { two_l: 3 },
            DMatrix::from_fn(4, 4, |i, j| Complex64::new(i as f64 - 1.0, j as f64 * 0.5)),
        )
        .unwrap();
        let s = Settings::default();
        let direct = lp_norm(&f, 2.0, &s).unwrap().value;
        let grid = integrate_power(std::slice::from_ref(&f), 2.0, true, |v| v[0], &s).unwrap();
        assert!(
            (direct - grid.value).abs() < 1e-10 * direct,
            "{direct} vs {}",
            grid.value
        );
    }

    #[test]
    fn dirichlet_values() {
        let d = dirichlet(GroupId::Torus(1), 2.0).unwrap();
        let s = Settings::default();
        let two = lp_norm(&d, 2.0, &s).unwrap();
        assert!((two.value - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(two.certification, Certification::Exact);
        let sup = lp_norm(&d, f64::INFINITY, &s).unwrap();
        assert!((sup.value - 3.0).abs() < 1e-12);
        assert_eq!(sup.certification, Certification::IdentityPinned);
    }

    #[test]
    fn one_plus_exp_has_l1_norm_four_over_pi() {
        let f = torus1(&[(0, c(1.0)), (1, c(1.0))]);
        let v = lp_norm(&f, 1.0, &Settings::default()).unwrap();
        assert!((v.value - 4.0 / PI).abs() < 1e-6, "{v:?}");
        assert_eq!(v.certification, Certification::Refined);
    }

    #[test]
    fn even_p_matches_closed_form() {
        // |1 + e^{ix}|^4 = (2 + 2cos x)^2 has mean 6
        let f = torus1(&[(0, c(1.0)), (1, c(1.0))]);
        let v = lp_norm(&f, 4.0, &Settings::default()).unwrap();
        assert!((v.value - 6f64.powf(0.25)).abs() < 1e-13);
    }

    #[test]
    fn sup_of_non_positive_type_function() {
        // 1 - e^{ix}: |f| = 2|sin(x/2)|, max 2 at x = pi
        let f = torus1(&[(0, c(1.0)), (1, c(-1.0))]);
        let v = sup_norm(&f, &Settings::default()).unwrap();
        assert!((v.value - 2.0).abs() < 1e-12);
        assert_eq!(v.certification, Certification::GridLowerBound);
        // e^{ix} + e^{i sqrt-ish}: off-grid maximum found by polishing
        let g = torus1(&[(1, c(1.0)), (2, Complex64::from_polar(1.0, 0.7))]);
        let v = sup_norm(&g, &Settings::default()).unwrap();
        assert!((v.value - 2.0).abs() < 1e-9, "{v:?}");
    }

    #[test]
    fn su2_sup_polish() {
        // Wigner coefficient with maximum modulus 1 away from the identity
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = c(0.5);
        let f = SpectralFunction::from_coeffs(GroupId::Su2, [(RepIndex::Su2 { two_l: 1 }, m)]).unwrap();
        let v = sup_norm(&f, &Settings::default()).unwrap();
        assert!((v.value - 1.0).abs() < 1e-9, "{v:?}");
    }

    #[test]
    fn sobolev_single_mode() {
        let f = torus1(&[(3, c(1.0))]);
        let s = Settings::default();
        for r in [-1.0, 0.0, 0.5, 2.0] {
            let v = sobolev_norm(&f, r, 3.0, &s).unwrap();
            assert!((v.value - 10f64.powf(r / 2.0)).abs() < 1e-9 * 10f64.powf(r / 2.0));
        }
        let half = SpectralFunction::from_coeffs(GroupId::Su2, [(RepIndex::Su2 { two_l: 1 }, DMatrix::identity(2, 2))])
            .unwrap();
        assert!((sobolev_norm(&half, 2.0, 2.0, &s).unwrap().value - 3.5).abs() < 1e-12);
    }

    #[test]
    fn refinement_respects_cap() {
        let f = torus1(&[(0, c(1.0)), (1, c(1.0))]);
        let s = Settings {
            max_nodes: 20,
            ..Settings::default()
        };
        let v = lp_norm(&f, 1.0, &s).unwrap();
        assert_eq!(v.certification, Certification::Unconverged);
        assert!(v.nodes <= 20);
    }

    #[test]
    fn zero_and_bad_exponent() {
        let z = SpectralFunction::zero(GroupId::Su2);
        assert_eq!(lp_norm(&z, 3.0, &Settings::default()).unwrap().value, 0.0);
        assert!(lp_norm(&z, 0.0, &Settings::default()).is_err());
    }
}
