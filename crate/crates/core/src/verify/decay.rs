use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{partial_sum, SpectralFunction};
use crate::groups::weyl_count;
use crate::norms::{lp_norm, NormValue};
use crate::settings::Settings;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    #[serde(rename = "L")]
    pub bandlimit: f64,
    /// `N(L)`.
    pub count: u64,
    /// `||S_L f||_q`.
    pub norm: NormValue,
    /// `N(L)^{1/q - 1/p} ||S_L f||_q`.
    pub a: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decay {
    pub points: Vec<DecayPoint>,
    /// `(sum_k (k^{1-1/p+1/q} sup_{N(L)>=k} ||S_L f||_q / N(L))^p / k)^{1/p}`
    /// over `k <= N(max L)`, with the supremum taken over the grid only.
    pub weighted_sum: f64,
}

/// `a_L = N(L)^{1/q - 1/p} ||S_L f||_q` along `grid`.
pub fn corollary_decay(f: &SpectralFunction, p: f64, q: f64, grid: &[f64], settings: &Settings) -> Result<Decay> {
    if !(p >= 1.0 && p < q && 1.0 / p > 1.0 / q + 0.5) {
        return Err(Error::Precondition(format!(
            "decay needs 1 <= p < q <= inf and 1/p > 1/q + 1/2, got p={p}, q={q}"
        )));
    }
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty L grid".into()));
    }
    let points = grid
        .iter()
        .map(|&l| {
            let count = weyl_count(f.group(), l)?;
            let norm = lp_norm(&partial_sum(f, l), q, settings)?;
            let a = (count as f64).powf(1.0 / q - 1.0 / p) * norm.value;
            Ok(DecayPoint {
                bandlimit: l,
                count,
                norm,
                a,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let kmax = points.iter().map(|pt| pt.count).max().unwrap_or(0);
    let e = 1.0 - 1.0 / p + 1.0 / q;
    let mut total = 0.0;
    for k in 1..=kmax {
        let sup = points
            .iter()
            .filter(|pt| pt.count >= k)
            .map(|pt| pt.norm.value / pt.count as f64)
            .fold(0.0, f64::max);
        let kf = k as f64;
        total += (kf.powf(e) * sup).powf(p) / kf;
    }
    Ok(Decay {
        points,
        weighted_sum: total.powf(1.0 / p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::dirichlet;
    use crate::groups::GroupId;

    #[test]
    fn band_limited_input_decays_like_n() {
        let f = dirichlet(GroupId::Torus(1), 2.0).unwrap();
        let grid = [2.0, 4.0, 8.0];
        let d = corollary_decay(&f, 1.0, f64::INFINITY, &grid, &Settings::default()).unwrap();
        for pt in &d.points {
            assert!((pt.a - 3.0 / pt.count as f64).abs() < 1e-12);
        }
        assert!(d.points.windows(2).all(|w| w[1].a < w[0].a));
        assert!(d.weighted_sum.is_finite() && d.weighted_sum > 0.0);
    }

    #[test]
    fn precondition() {
        let f = dirichlet(GroupId::Torus(1), 2.0).unwrap();
        let s = Settings::default();
        assert!(matches!(
            corollary_decay(&f, 2.0, f64::INFINITY, &[2.0], &s),
            Err(Error::Precondition(_))
        ));
        assert!(corollary_decay(&f, 0.5, f64::INFINITY, &[2.0], &s).is_err());
        assert!(corollary_decay(&f, 1.0, 2.5, &[2.0], &s).is_ok());
        assert!(corollary_decay(&f, 1.0, 2.0, &[2.0], &s).is_err());
    }
}
