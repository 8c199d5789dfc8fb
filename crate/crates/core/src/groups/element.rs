use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GroupId;
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;
const FOUR_PI: f64 = 4.0 * PI;

/// A point of the group in its angle parameterization.
///
/// Torus: one angle per axis in `[0, 2pi)`. SU(2): Euler angles
/// `alpha in [0, 2pi)`, `beta in [0, pi]`, `gamma in [0, 4pi)`; the doubled
/// `gamma` range covers SU(2) rather than SO(3).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GroupElement {
    Torus(Vec<f64>),
    Su2 { alpha: f64, beta: f64, gamma: f64 },
}

impl GroupElement {
    pub fn identity(group: GroupId) -> Self {
        match group {
            GroupId::Torus(n) => GroupElement::Torus(vec![0.0; n as usize]),
            GroupId::Su2 => GroupElement::Su2 {
                alpha: 0.0,
                beta: 0.0,
                gamma: 0.0,
            },
        }
    }

    pub fn validate(&self, group: GroupId) -> Result<()> {
        let in_range = |v: f64, hi: f64, closed: bool| v >= 0.0 && if closed { v <= hi } else { v < hi };
        match (group, self) {
            (GroupId::Torus(n), GroupElement::Torus(t)) => {
                if t.len() != n as usize {
                    return Err(Error::AngleOutOfRange(format!(
                        "expected {n} torus angles, got {}",
                        t.len()
                    )));
                }
                if let Some(a) = t.iter().find(|&&a| !in_range(a, TWO_PI, false)) {
                    return Err(Error::AngleOutOfRange(format!("torus angle {a} not in [0, 2pi)")));
                }
                Ok(())
            }
            (GroupId::Su2, GroupElement::Su2 { alpha, beta, gamma }) => {
                if !in_range(*alpha, TWO_PI, false) {
                    return Err(Error::AngleOutOfRange(format!("alpha {alpha} not in [0, 2pi)")));
                }
                if !in_range(*beta, PI, true) {
                    return Err(Error::AngleOutOfRange(format!("beta {beta} not in [0, pi]")));
                }
                if !in_range(*gamma, FOUR_PI, false) {
                    return Err(Error::AngleOutOfRange(format!("gamma {gamma} not in [0, 4pi)")));
                }
                Ok(())
            }
            _ => Err(Error::AngleOutOfRange(format!("{self:?} is not an element of {group}"))),
        }
    }

    /// Wraps arbitrary real angles into the canonical ranges.
    pub fn normalized(&self) -> Self {
        match self {
            GroupElement::Torus(t) => GroupElement::Torus(t.iter().map(|a| wrap(*a, TWO_PI)).collect()),
            GroupElement::Su2 { .. } => Self::from_su2_matrix(&self.su2_matrix()),
        }
    }

    /// The defining 2x2 unitary (the spin-1/2 representation) in the basis
    /// ordered `m = +1/2, -1/2`.
    pub fn su2_matrix(&self) -> Matrix2<Complex64> {
        let GroupElement::Su2 { alpha, beta, gamma } = *self else {
            panic!("su2_matrix called on a torus element");
        };
        let (s, c) = (beta / 2.0).sin_cos();
        let ea = Complex64::cis(-alpha / 2.0);
        let eg = Complex64::cis(-gamma / 2.0);
        Matrix2::new(
            ea * eg * c,
            -ea * eg.conj() * s,
            ea.conj() * eg * s,
            ea.conj() * eg.conj() * c,
        )
    }

    /// Recovers Euler angles from an SU(2) matrix.
    pub fn from_su2_matrix(u: &Matrix2<Complex64>) -> Self {
        let a = u[(0, 0)];
        let c = u[(1, 0)];
        let beta = 2.0 * c.norm().atan2(a.norm());
        const TINY: f64 = 1e-300;
        let (mut alpha, mut gamma) = if c.norm() <= TINY {
            (0.0, -2.0 * a.arg())
        } else if a.norm() <= TINY {
            (0.0, -2.0 * c.arg())
        } else {
            (c.arg() - a.arg(), -a.arg() - c.arg())
        };
        // shifting both alpha and gamma by 2pi leaves the matrix unchanged
        let k = (alpha / TWO_PI).floor();
        alpha -= k * TWO_PI;
        gamma -= k * TWO_PI;
        if alpha >= TWO_PI {
            alpha -= TWO_PI;
            gamma -= TWO_PI;
        }
        GroupElement::Su2 {
            alpha,
            beta: beta.clamp(0.0, PI),
            gamma: wrap(gamma, FOUR_PI),
        }
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Torus(a), GroupElement::Torus(b)) => {
                GroupElement::Torus(a.iter().zip(b).map(|(x, y)| wrap(x + y, TWO_PI)).collect())
            }
            (GroupElement::Su2 { .. }, GroupElement::Su2 { .. }) => {
                Self::from_su2_matrix(&(self.su2_matrix() * other.su2_matrix()))
            }
            _ => panic!("compose: mismatched groups"),
        }
    }
}

pub(crate) fn wrap(v: f64, period: f64) -> f64 {
    let r = v.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let x = GroupElement::Su2 {
            alpha: 1.1,
            beta: 0.7,
            gamma: 9.5,
        };
        let y = GroupElement::from_su2_matrix(&x.su2_matrix());
        let (
            GroupElement::Su2 { alpha, beta, gamma },
            GroupElement::Su2 {
                alpha: a2,
                beta: b2,
                gamma: g2,
            },
        ) = (&x, &y)
        else {
            unreachable!()
        };
        assert!((alpha - a2).abs() < 1e-12 && (beta - b2).abs() < 1e-12 && (gamma - g2).abs() < 1e-12);
    }

    #[test]
    fn identity_and_ranges() {
        let e = GroupElement::identity(GroupId::Su2);
        assert!((e.su2_matrix() - Matrix2::identity()).norm() < 1e-15);
        assert!(e.validate(GroupId::Su2).is_ok());
        let bad = GroupElement::Su2 {
            alpha: 0.0,
            beta: 4.0,
            gamma: 0.0,
        };
        assert!(bad.validate(GroupId::Su2).is_err());
        assert!(GroupElement::Torus(vec![7.0]).validate(GroupId::Torus(1)).is_err());
        assert!(GroupElement::Torus(vec![1.0]).validate(GroupId::Torus(2)).is_err());
    }

    #[test]
    fn degenerate_beta_recovers_matrix() {
        for beta in [0.0, PI] {
            let x = GroupElement::Su2 {
                alpha: 2.0,
                beta,
                gamma: 3.0,
            };
            let y = GroupElement::from_su2_matrix(&x.su2_matrix());
            assert!((x.su2_matrix() - y.su2_matrix()).norm() < 1e-12);
            assert!(y.validate(GroupId::Su2).is_ok());
        }
    }
}
