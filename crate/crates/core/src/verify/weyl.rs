use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{weyl_count, GroupId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square residual of the log-log fit.
    pub residual: f64,
    /// Empirical `C_0 = exp(intercept)`.
    pub c0: f64,
}

/// Least-squares line through `(x_i, y_i)`; returns slope, intercept and RMS
/// residual.
pub fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Fits `log N(L) = log C_0 + slope log L`.
pub fn weyl_fit(group: GroupId, grid: &[f64]) -> Result<WeylFit> {
    if grid.len() < 5 || grid.windows(2).any(|w| w[1] <= w[0]) || grid[grid.len() - 1] < 10.0 {
        return Err(Error::InvalidParameter(
            "Weyl fit needs an increasing grid of at least 5 points reaching L >= 10".into(),
        ));
    }
    let x: Vec<f64> = grid.iter().map(|l| l.ln()).collect();
    let y = grid
        .iter()
        .map(|&l| Ok((weyl_count(group, l)? as f64).ln()))
        .collect::<Result<Vec<f64>>>()?;
    let (slope, intercept, residual) = least_squares(&x, &y);
    Ok(WeylFit {
        slope,
        intercept,
        residual,
        c0: intercept.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(a: u32, b: u32, step: u32) -> Vec<f64> {
        (a..=b).step_by(step as usize).map(f64::from).collect()
    }

    #[test]
    fn exact_line() {
        let (s, i, r) = least_squares(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((s - 2.0).abs() < 1e-15 && (i - 1.0).abs() < 1e-15 && r < 1e-15);
    }

    #[test]
    fn slopes_match_dimension() {
        let t1 = weyl_fit(GroupId::Torus(1), &range(10, 100, 5)).unwrap();
        assert!((t1.slope - 1.0).abs() < 0.05, "{t1:?}");
        let t2 = weyl_fit(GroupId::Torus(2), &range(10, 60, 5)).unwrap();
        assert!((t2.slope - 2.0).abs() < 0.1, "{t2:?}");
        let su2 = weyl_fit(GroupId::Su2, &range(10, 40, 5)).unwrap();
        assert!((su2.slope - 3.0).abs() < 0.2, "{su2:?}");
    }

    #[test]
    fn degenerate_grids() {
        assert!(weyl_fit(GroupId::Su2, &[10.0, 20.0]).is_err());
        assert!(weyl_fit(GroupId::Su2, &[1.0, 2.0, 3.0, 4.0, 5.0]).is_err());
        assert!(weyl_fit(GroupId::Su2, &[10.0, 12.0, 11.0, 13.0, 14.0]).is_err());
    }
}
