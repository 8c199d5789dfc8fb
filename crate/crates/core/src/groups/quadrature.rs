//! Haar quadrature rules that are exact on products of matrix coefficients.
//!
//! A rule with band limit `L*` integrates `xi_ij(x) conj(eta_kl(x))` exactly
//! for all `<xi>, <eta> <= L*`.
//!
//! * Torus `T^n`: uniform tensor grid with `2 ceil(L*) + 1` points per axis.
//! * SU(2): with `2l_max` the largest `2l` inside the band, a uniform alpha grid
//!   of `2l_max + 1` points on `[0, 2pi)`, a uniform gamma grid of
//!   `2 (2l_max) + 1` points on `[0, 4pi)` and `ceil(l_max) + 1` Gauss-Radau
//!   nodes in `cos(beta)` with the fixed node at `beta = 0`.
//!
//! Node 0 is always the identity element.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use super::{max_frequency, GroupElement, GroupId};
use crate::error::{Error, Result};

/// Default cap on the number of quadrature nodes a single rule may have.
pub const DEFAULT_MAX_NODES: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Layout {
    /// `points` per axis, row-major with the last axis fastest.
    Torus { n: usize, points: usize },
    /// Node order: beta (slowest), alpha, gamma (fastest).
    Su2 {
        alpha_points: usize,
        gamma_points: usize,
        /// Gauss-Radau nodes as angles, beta[0] = 0.
        beta: Vec<f64>,
        /// Normalized to sum to one.
        beta_weights: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    group: GroupId,
    bandlimit: f64,
    layout: Layout,
}

/// Builds a rule with the default node cap.
pub fn quadrature(group: GroupId, bandlimit: f64) -> Result<QuadratureRule> {
    QuadratureRule::new(group, bandlimit, DEFAULT_MAX_NODES)
}

impl QuadratureRule {
    pub fn new(group: GroupId, bandlimit: f64, max_nodes: usize) -> Result<Self> {
        if bandlimit.is_nan() || bandlimit < 1.0 {
            return Err(Error::BandLimitTooSmall(bandlimit));
        }
        if !bandlimit.is_finite() {
            return Err(Error::InvalidParameter("band limit must be finite".into()));
        }
        let layout = match group {
            GroupId::Torus(n) => {
                let points = 2 * bandlimit.ceil() as usize + 1;
                let needed = (points as u128).pow(n as u32);
                check_cap(needed, max_nodes)?;
                Layout::Torus { n: n as usize, points }
            }
            GroupId::Su2 => {
                let t = max_frequency(group, bandlimit) as usize;
                let alpha_points = t + 1;
                let gamma_points = 2 * t + 1;
                let radau = t.div_ceil(2) + 1;
                check_cap((alpha_points * gamma_points * radau) as u128, max_nodes)?;
                let (x, w) = gauss_radau_upper(radau);
                Layout::Su2 {
                    alpha_points,
                    gamma_points,
                    beta: x.iter().map(|&c| c.clamp(-1.0, 1.0).acos()).collect(),
                    beta_weights: w.iter().map(|&v| v / 2.0).collect(),
                }
            }
        };
        Ok(QuadratureRule {
            group,
            bandlimit,
            layout,
        })
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn bandlimit(&self) -> f64 {
        self.bandlimit
    }

    pub(crate) fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        match &self.layout {
            Layout::Torus { n, points } => points.pow(*n as u32),
            Layout::Su2 {
                alpha_points,
                gamma_points,
                beta,
                ..
            } => alpha_points * gamma_points * beta.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the identity element in the node sequence.
    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn node(&self, i: usize) -> GroupElement {
        match &self.layout {
            Layout::Torus { n, points } => {
                let mut rest = i;
                let mut t = vec![0.0; *n];
                for axis in (0..*n).rev() {
                    t[axis] = 2.0 * PI * (rest % points) as f64 / *points as f64;
                    rest /= points;
                }
                GroupElement::Torus(t)
            }
            Layout::Su2 {
                alpha_points,
                gamma_points,
                beta,
                ..
            } => {
                let c = i % gamma_points;
                let a = (i / gamma_points) % alpha_points;
                let b = i / (gamma_points * alpha_points);
                GroupElement::Su2 {
                    alpha: 2.0 * PI * a as f64 / *alpha_points as f64,
                    beta: beta[b],
                    gamma: 4.0 * PI * c as f64 / *gamma_points as f64,
                }
            }
        }
    }

    pub fn weight(&self, i: usize) -> f64 {
        match &self.layout {
            Layout::Torus { .. } => 1.0 / self.len() as f64,
            Layout::Su2 {
                alpha_points,
                gamma_points,
                beta_weights,
                ..
            } => beta_weights[i / (gamma_points * alpha_points)] / (alpha_points * gamma_points) as f64,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.len()).map(|i| self.node(i))
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }

    /// Rough node spacing per parameter, used to seed local searches.
    pub(crate) fn spacing(&self) -> Vec<f64> {
        match &self.layout {
            Layout::Torus { n, points } => vec![2.0 * PI / *points as f64; *n],
            Layout::Su2 {
                alpha_points,
                gamma_points,
                beta,
                ..
            } => vec![
                2.0 * PI / *alpha_points as f64,
                PI / beta.len() as f64,
                4.0 * PI / *gamma_points as f64,
            ],
        }
    }
}

fn check_cap(needed: u128, cap: usize) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::ResourceCap { needed, cap })
    } else {
        Ok(())
    }
}

/// Legendre `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64, f64) {
    // returns (P_n, P_{n-1}, P_n')
    if n == 0 {
        return (1.0, 0.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = if (1.0 - x * x).abs() > 1e-300 {
        n as f64 * (p0 - x * p1) / (1.0 - x * x)
    } else {
        0.0
    };
    (p1, p0, dp)
}

/// Gauss-Radau rule on `[-1, 1]` with the fixed node at `x = +1`; exact for
/// polynomials of degree `2k - 2`. Nodes are returned in decreasing order
/// (so `x[0] = 1`), weights sum to 2.
pub(crate) fn gauss_radau_upper(k: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(k >= 1);
    if k == 1 {
        return (vec![1.0], vec![2.0]);
    }
    // Golub-Welsch on the monic Legendre Jacobi matrix with the last diagonal
    // entry modified so that +1 is an eigenvalue.
    let b = |j: usize| {
        let j = j as f64;
        j * j / (4.0 * j * j - 1.0)
    };
    let (mut pm, mut p) = (0.0f64, 1.0f64);
    for j in 0..k - 1 {
        let next = p - if j == 0 { 0.0 } else { b(j) * pm };
        pm = p;
        p = next;
    }
    // p = monic p_{k-1}(1), pm = monic p_{k-2}(1)
    let last = 1.0 - b(k - 1) * pm / p;
    let mut jac = DMatrix::<f64>::zeros(k, k);
    for j in 1..k {
        let off = b(j).sqrt();
        jac[(j - 1, j)] = off;
        jac[(j, j - 1)] = off;
    }
    jac[(k - 1, k - 1)] = last;
    let eig = SymmetricEigen::new(jac);
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| b.partial_cmp(a).unwrap());
    nodes[0] = 1.0;
    // Newton polish of the interior nodes on q = P_{k-1} - P_k
    for x in nodes.iter_mut().skip(1) {
        for _ in 0..50 {
            let (pk, pk1, dpk) = legendre(k, *x);
            let (_, _, dpk1) = legendre(k - 1, *x);
            let q = pk1 - pk;
            let dq = dpk1 - dpk;
            let step = q / dq;
            *x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
    }
    let kk = (k * k) as f64;
    let weights: Vec<f64> = nodes
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if i == 0 {
                2.0 / kk
            } else {
                let (_, pk1, _) = legendre(k, x);
                (1.0 + x) / (kk * pk1 * pk1)
            }
        })
        .collect();
    (nodes, weights)
}
