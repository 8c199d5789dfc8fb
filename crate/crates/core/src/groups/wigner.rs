//! Wigner matrices for SU(2).
//!
//! Small-d values `d^l_{mn}(beta)` are generated for every `(m, n)` pair by
//! the three-term recurrence in `l`
//!
//! ```text
//! d^{l+1}_{mn} = (l+1)(2l+1) / sqrt(((l+1)^2 - m^2)((l+1)^2 - n^2))
//!              * [ (cos b - mn / (l(l+1))) d^l_{mn}
//!                  - sqrt((l^2 - m^2)(l^2 - n^2)) / (l(2l+1)) d^{l-1}_{mn} ]
//! ```
//!
//! seeded at `l0 = max(|m|, |n|)` where the Wigner sum has a single term.
//! Everything is indexed in half-units (`two_l = 2l`, `two_m = 2m`). Matrix
//! rows and columns run over `m = l, l-1, ..., -l`, so the spin-1/2 block is
//! exactly the defining 2x2 matrix of [`GroupElement::su2_matrix`].
//!
//! [`GroupElement::su2_matrix`]: super::GroupElement::su2_matrix

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `d^l(beta)` for every `two_l` in `0..=two_l_max`; entry `(i, k)` of block
/// `two_l` is `d^l_{m_i m_k}` with `m_i = l - i`.
#[derive(Clone, Debug)]
pub struct SmallD {
    blocks: Vec<Vec<f64>>,
}

impl SmallD {
    pub fn new(two_l_max: u32, beta: f64) -> Self {
        let t = two_l_max as i64;
        let mut blocks: Vec<Vec<f64>> = (0..=t).map(|tl| vec![0.0; ((tl + 1) * (tl + 1)) as usize]).collect();
        let (s, c) = (beta / 2.0).sin_cos();
        let cb = beta.cos();
        for two_m in -t..=t {
            for two_n in -t..=t {
                if (two_m - two_n).rem_euclid(2) != 0 {
                    continue;
                }
                let start = two_m.abs().max(two_n.abs());
                let m = two_m as f64 / 2.0;
                let n = two_n as f64 / 2.0;
                let mut prev = 0.0;
                let mut cur = seed(start, two_m, two_n, c, s);
                let mut tj = start;
                loop {
                    let d = (tj + 1) as usize;
                    let row = ((tj - two_m) / 2) as usize;
                    let col = ((tj - two_n) / 2) as usize;
                    blocks[tj as usize][row * d + col] = cur;
                    if tj + 2 > t {
                        break;
                    }
                    let j = tj as f64 / 2.0;
                    let j1 = j + 1.0;
                    let lead = j1 * (2.0 * j + 1.0) / ((j1 * j1 - m * m) * (j1 * j1 - n * n)).sqrt();
                    let next = if tj == 0 {
                        lead * cb * cur
                    } else {
                        let damp = ((j * j - m * m) * (j * j - n * n)).max(0.0).sqrt() / (j * (2.0 * j + 1.0));
                        lead * ((cb - m * n / (j * j1)) * cur - damp * prev)
                    };
                    prev = cur;
                    cur = next;
                    tj += 2;
                }
            }
        }
        SmallD { blocks }
    }

    pub fn two_l_max(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    /// `d^l_{mn}` in half-units; zero outside the valid range.
    #[inline]
    pub fn get(&self, two_l: u32, two_m: i64, two_n: i64) -> f64 {
        let tl = two_l as i64;
        if two_m.abs() > tl || two_n.abs() > tl || (tl - two_m) % 2 != 0 || (tl - two_n) % 2 != 0 {
            return 0.0;
        }
        let d = (tl + 1) as usize;
        self.blocks[two_l as usize][((tl - two_m) / 2) as usize * d + ((tl - two_n) / 2) as usize]
    }

    pub fn block(&self, two_l: u32) -> DMatrix<f64> {
        let d = two_l as usize + 1;
        DMatrix::from_row_slice(d, d, &self.blocks[two_l as usize])
    }
}

/// `d^{l0}_{mn}` at `l0 = max(|m|, |n|)`.
fn seed(two_j: i64, two_m: i64, two_n: i64, c: f64, s: f64) -> f64 {
    let half = |x: i64| (x / 2) as i32;
    if two_m == two_j {
        let b = binomial(two_j, (two_j + two_n) / 2).sqrt();
        let sign = if half(two_j - two_n) % 2 == 0 { 1.0 } else { -1.0 };
        sign * b * c.powi(half(two_j + two_n)) * s.powi(half(two_j - two_n))
    } else if two_m == -two_j {
        binomial(two_j, (two_j + two_n) / 2).sqrt() * c.powi(half(two_j - two_n)) * s.powi(half(two_j + two_n))
    } else if two_n == two_j {
        binomial(two_j, (two_j + two_m) / 2).sqrt() * c.powi(half(two_j + two_m)) * s.powi(half(two_j - two_m))
    } else {
        // two_n == -two_j
        let sign = if half(two_j + two_m) % 2 == 0 { 1.0 } else { -1.0 };
        sign * binomial(two_j, (two_j + two_m) / 2).sqrt() * c.powi(half(two_j - two_m)) * s.powi(half(two_j + two_m))
    }
}

fn binomial(n: i64, k: i64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Full Wigner matrix `D^l_{mn} = e^{-i m alpha} d^l_{mn}(beta) e^{-i n gamma}`.
pub fn wigner_big_d(two_l: u32, alpha: f64, beta: f64, gamma: f64) -> DMatrix<Complex64> {
    let small = SmallD::new(two_l, beta);
    big_d_from(&small, two_l, alpha, gamma)
}

pub(crate) fn big_d_from(small: &SmallD, two_l: u32, alpha: f64, gamma: f64) -> DMatrix<Complex64> {
    let d = two_l as usize + 1;
    let tl = two_l as i64;
    DMatrix::from_fn(d, d, |i, k| {
        let two_m = tl - 2 * i as i64;
        let two_n = tl - 2 * k as i64;
        let phase = -(two_m as f64) * alpha / 2.0 - (two_n as f64) * gamma / 2.0;
        Complex64::cis(phase) * small.get(two_l, two_m, two_n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    fn factorial(n: i64) -> f64 {
        (1..=n).fold(1.0, |a, k| a * k as f64)
    }

    /// Explicit Wigner sum, independent of the recurrence.
    fn wigner_sum(two_j: i64, two_m: i64, two_n: i64, beta: f64) -> f64 {
        // d^j_{mn} = sum_k (-1)^(m-n+k) sqrt((j+m)!(j-m)!(j+n)!(j-n)!)
        //   / ((j+n-k)! k! (m-n+k)! (j-m-k)!) c^(2j+n-m-2k) s^(m-n+2k)
        let jpm = (two_j + two_m) / 2;
        let jmm = (two_j - two_m) / 2;
        let jpn = (two_j + two_n) / 2;
        let jmn = (two_j - two_n) / 2;
        let mmn = (two_m - two_n) / 2;
        let pre = (factorial(jpm) * factorial(jmm) * factorial(jpn) * factorial(jmn)).sqrt();
        let (s, c) = (beta / 2.0).sin_cos();
        (0..=two_j)
            .filter(|&k| jpn - k >= 0 && mmn + k >= 0 && jmm - k >= 0)
            .map(|k| {
                let sign = if (mmn + k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                sign * pre / (factorial(jpn - k) * factorial(k) * factorial(mmn + k) * factorial(jmm - k))
                    * c.powi((jpn + jmm - 2 * k) as i32)
                    * s.powi((mmn + 2 * k) as i32)
            })
            .sum()
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for &beta in &[
            0.0,
            0.3,
            1.1,
            std::f64::consts::FRAC_PI_2,
            2.4,
            3.0,
            std::f64::consts::PI,
        ] {
            let table = SmallD::new(16, beta);
            for two_j in 0..=16i64 {
                for two_m in (-two_j..=two_j).step_by(2) {
                    for two_n in (-two_j..=two_j).step_by(2) {
                        let want = wigner_sum(two_j, two_m, two_n, beta);
                        let got = table.get(two_j as u32, two_m, two_n);
                        assert!(
                            (want - got).abs() < 1e-11,
                            "j={two_j}/2 m={two_m}/2 n={two_n}/2 beta={beta}: {want} vs {got}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spin_half_is_defining_matrix() {
        let beta = 0.9;
        let t = SmallD::new(1, beta);
        assert!((t.get(1, 1, 1) - (beta / 2.0).cos()).abs() < 1e-15);
        assert!((t.get(1, 1, -1) + (beta / 2.0).sin()).abs() < 1e-15);
        let x = GroupElement::Su2 {
            alpha: 0.4,
            beta,
            gamma: 5.0,
        };
        let d = wigner_big_d(1, 0.4, beta, 5.0);
        let u = x.su2_matrix();
        for i in 0..2 {
            for k in 0..2 {
                assert!((d[(i, k)] - u[(i, k)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn high_degree_stays_orthogonal() {
        // d^l(beta) is a real orthogonal matrix
        let t = SmallD::new(120, 1.234);
        for two_l in [60u32, 99, 120] {
            let b = t.block(two_l);
            let err = (&b * b.transpose() - DMatrix::identity(b.nrows(), b.nrows()))
                .abs()
                .max();
            assert!(err < 1e-10, "2l={two_l}: {err}");
        }
    }
}
