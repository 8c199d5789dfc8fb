//! Separable transform kernels.
//!
//! Torus: axis-by-axis contraction between the dense coefficient box
//! `[-K, K]^n` and the uniform grid. SU(2): for each Radau beta node, the
//! coefficients are folded with `d^l(beta)` into a `(m, n)` table that is then
//! contracted against the gamma and alpha phases. Work is split over rows /
//! beta slices; every sum runs in a fixed order so the output does not depend
//! on the thread count.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::SpectralFunction;
use crate::error::Result;
use crate::groups::wigner::SmallD;
use crate::groups::Layout;
use crate::groups::{GroupId, QuadratureRule, RepIndex};
use crate::parallel;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `e^{sign * 2 pi i num / den}` with `num` reduced mod `den` first.
#[inline]
fn root(num: i64, den: i64, sign: f64) -> Complex64 {
    let r = num.rem_euclid(den);
    Complex64::cis(sign * 2.0 * PI * r as f64 / den as f64)
}

/// Contracts one axis of a row-major array with `table` (`new x old`).
fn contract_axis(data: &[Complex64], dims: &[usize], axis: usize, table: &[Complex64], new: usize) -> Vec<Complex64> {
    let outer: usize = dims[..axis].iter().product();
    let old = dims[axis];
    let inner: usize = dims[axis + 1..].iter().product();
    let mut out = vec![ZERO; outer * new * inner];
    let per_outer = |o: usize, chunk: &mut [Complex64]| {
        for j in 0..new {
            let row = &mut chunk[j * inner..(j + 1) * inner];
            let trow = &table[j * old..(j + 1) * old];
            for (k, &t) in trow.iter().enumerate() {
                if t == ZERO {
                    continue;
                }
                let src = &data[(o * old + k) * inner..(o * old + k + 1) * inner];
                for (r, s) in row.iter_mut().zip(src) {
                    *r += t * s;
                }
            }
        }
    };
    if outer == 1 && inner >= 64 {
        // split over output rows instead
        parallel::fill_chunks(&mut out, inner, |j, row| {
            let trow = &table[j * old..(j + 1) * old];
            for (k, &t) in trow.iter().enumerate() {
                let src = &data[k * inner..(k + 1) * inner];
                for (r, s) in row.iter_mut().zip(src) {
                    *r += t * s;
                }
            }
        });
    } else {
        parallel::fill_chunks(&mut out, new * inner, per_outer);
    }
    out
}

pub(super) fn synthesize(rule: &QuadratureRule, f: &SpectralFunction) -> Vec<Complex64> {
    match (rule.group(), rule.layout()) {
        (GroupId::Torus(_), Layout::Torus { n, points }) => torus_synthesize(*n, *points, f),
        (GroupId::Su2, Layout::Su2 { .. }) => su2_synthesize(rule, f),
        _ => unreachable!("rule layout does not match its group"),
    }
}

pub(super) fn analyze(rule: &QuadratureRule, values: &[Complex64], reps: &[RepIndex]) -> Result<SpectralFunction> {
    match (rule.group(), rule.layout()) {
        (GroupId::Torus(_), Layout::Torus { n, points }) => torus_analyze(rule.group(), *n, *points, values, reps),
        (GroupId::Su2, Layout::Su2 { .. }) => su2_analyze(rule, values, reps),
        _ => unreachable!("rule layout does not match its group"),
    }
}

fn torus_max_freq<'a>(keys: impl Iterator<Item = &'a RepIndex>) -> i64 {
    keys.map(|k| match k {
        RepIndex::Torus(v) => v.iter().map(|x| x.abs()).max().unwrap_or(0),
        _ => 0,
    })
    .max()
    .unwrap_or(0)
}

fn box_offset(k: &[i64], kmax: i64) -> usize {
    let side = (2 * kmax + 1) as usize;
    k.iter().fold(0usize, |acc, &x| acc * side + (x + kmax) as usize)
}

fn torus_synthesize(n: usize, points: usize, f: &SpectralFunction) -> Vec<Complex64> {
    let kmax = torus_max_freq(f.iter().map(|(k, _)| k));
    let side = (2 * kmax + 1) as usize;
    let mut cube = vec![ZERO; side.pow(n as u32)];
    for (k, c) in f.iter() {
        let RepIndex::Torus(k) = k else { unreachable!() };
        cube[box_offset(k, kmax)] = c[(0, 0)];
    }
    let m = points as i64;
    let table: Vec<Complex64> = (0..m)
        .flat_map(|j| (0..side as i64).map(move |k| root((k - kmax) * j, m, 1.0)))
        .collect();
    let mut dims = vec![side; n];
    for axis in 0..n {
        cube = contract_axis(&cube, &dims, axis, &table, points);
        dims[axis] = points;
    }
    cube
}

fn torus_analyze(
    group: GroupId,
    n: usize,
    points: usize,
    values: &[Complex64],
    reps: &[RepIndex],
) -> Result<SpectralFunction> {
    let kmax = torus_max_freq(reps.iter());
    let side = (2 * kmax + 1) as usize;
    let m = points as i64;
    let scale = 1.0 / points as f64;
    let table: Vec<Complex64> = (0..side as i64)
        .flat_map(|k| (0..m).map(move |j| root((k - kmax) * j, m, -1.0) * scale))
        .collect();
    let mut dims = vec![points; n];
    let mut data = values.to_vec();
    for axis in 0..n {
        data = contract_axis(&data, &dims, axis, &table, side);
        dims[axis] = side;
    }
    SpectralFunction::from_coeffs(
        group,
        reps.iter().map(|k| {
            let RepIndex::Torus(v) = k else { unreachable!() };
            (k.clone(), DMatrix::from_element(1, 1, data[box_offset(v, kmax)]))
        }),
    )
}

struct Su2Grid<'a> {
    alpha_points: usize,
    gamma_points: usize,
    beta: &'a [f64],
    beta_weights: &'a [f64],
}

fn su2_grid(rule: &QuadratureRule) -> Su2Grid<'_> {
    let Layout::Su2 {
        alpha_points,
        gamma_points,
        beta,
        beta_weights,
    } = rule.layout()
    else {
        unreachable!()
    };
    Su2Grid {
        alpha_points: *alpha_points,
        gamma_points: *gamma_points,
        beta,
        beta_weights,
    }
}

fn two_l_of(k: &RepIndex) -> u32 {
    match k {
        RepIndex::Su2 { two_l } => *two_l,
        _ => unreachable!(),
    }
}

/// Phase tables `e^{-i n gamma_c}` (`[c][n + T]`) and `e^{-i m alpha_a}` (`[a][m + T]`).
fn su2_phases(grid: &Su2Grid, t: i64, sign: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let w = (2 * t + 1) as usize;
    let mg = grid.gamma_points as i64;
    let ma = grid.alpha_points as i64;
    let mut eg = vec![ZERO; grid.gamma_points * w];
    for c in 0..mg {
        for two_n in -t..=t {
            // (n) * 4 pi c / M_gamma = 2 pi * two_n * c / M_gamma
            eg[c as usize * w + (two_n + t) as usize] = root(two_n * c, mg, -sign);
        }
    }
    let mut ea = vec![ZERO; grid.alpha_points * w];
    for a in 0..ma {
        for two_m in -t..=t {
            // m * 2 pi a / M_alpha = 2 pi * two_m * a / (2 M_alpha)
            ea[a as usize * w + (two_m + t) as usize] = root(two_m * a, 2 * ma, -sign);
        }
    }
    (eg, ea)
}

fn su2_synthesize(rule: &QuadratureRule, f: &SpectralFunction) -> Vec<Complex64> {
    let grid = su2_grid(rule);
    let t = f.iter().map(|(k, _)| two_l_of(k)).max().unwrap_or(0) as i64;
    let w = (2 * t + 1) as usize;
    let (eg, ea) = su2_phases(&grid, t, 1.0);
    let blocks: Vec<(u32, &DMatrix<Complex64>)> = f.iter().map(|(k, c)| (two_l_of(k), c)).collect();
    let slice = grid.alpha_points * grid.gamma_points;
    let mut out = vec![ZERO; slice * grid.beta.len()];
    parallel::fill_chunks(&mut out, slice, |b, chunk| {
        let small = SmallD::new(t as u32, grid.beta[b]);
        // G[m][n] = sum_l d F^l[r(n)][c(m)] d^l_{mn}
        let mut g = vec![ZERO; w * w];
        for &(tl, c) in &blocks {
            let d = tl as usize + 1;
            let til = tl as i64;
            for r in 0..d {
                let two_n = til - 2 * r as i64;
                for col in 0..d {
                    let two_m = til - 2 * col as i64;
                    let v = c[(r, col)];
                    if v == ZERO {
                        continue;
                    }
                    g[(two_m + t) as usize * w + (two_n + t) as usize] += v * (d as f64 * small.get(tl, two_m, two_n));
                }
            }
        }
        // H[m][c] = sum_n G[m][n] e^{-i n gamma_c}
        let mg = grid.gamma_points;
        let mut h = vec![ZERO; w * mg];
        for m in 0..w {
            let grow = &g[m * w..(m + 1) * w];
            if grow.iter().all(|z| *z == ZERO) {
                continue;
            }
            for c in 0..mg {
                let erow = &eg[c * w..(c + 1) * w];
                h[m * mg + c] = grow.iter().zip(erow).map(|(a, b)| a * b).sum();
            }
        }
        // f[a][c] = sum_m e^{-i m alpha_a} H[m][c]
        for a in 0..grid.alpha_points {
            let row = &mut chunk[a * mg..(a + 1) * mg];
            for m in 0..w {
                let e = ea[a * w + m];
                let hrow = &h[m * mg..(m + 1) * mg];
                for (r, x) in row.iter_mut().zip(hrow) {
                    *r += e * x;
                }
            }
        }
    });
    out
}

fn su2_analyze(rule: &QuadratureRule, values: &[Complex64], reps: &[RepIndex]) -> Result<SpectralFunction> {
    let grid = su2_grid(rule);
    let t = reps.iter().map(two_l_of).max().unwrap_or(0) as i64;
    let w = (2 * t + 1) as usize;
    let (eg, ea) = su2_phases(&grid, t, -1.0);
    let ma = grid.alpha_points;
    let mg = grid.gamma_points;
    let slice = ma * mg;
    let two_ls: Vec<u32> = reps.iter().map(two_l_of).collect();
    let partials: Vec<Vec<Complex64>> = parallel::map_range(grid.beta.len(), |b| {
        let vals = &values[b * slice..(b + 1) * slice];
        let scale = grid.beta_weights[b] / slice as f64;
        // P[a][n] = sum_c f[a][c] e^{i n gamma_c}
        let mut p = vec![ZERO; ma * w];
        for a in 0..ma {
            let frow = &vals[a * mg..(a + 1) * mg];
            for n in 0..w {
                p[a * w + n] = frow.iter().enumerate().map(|(c, v)| v * eg[c * w + n]).sum();
            }
        }
        // A[m][n] = sum_a e^{i m alpha_a} P[a][n]
        let mut amat = vec![ZERO; w * w];
        for a in 0..ma {
            for m in 0..w {
                let e = ea[a * w + m] * scale;
                let prow = &p[a * w..(a + 1) * w];
                let arow = &mut amat[m * w..(m + 1) * w];
                for (x, y) in arow.iter_mut().zip(prow) {
                    *x += e * y;
                }
            }
        }
        let small = SmallD::new(t as u32, grid.beta[b]);
        let mut flat = Vec::new();
        for &tl in &two_ls {
            let d = tl as usize + 1;
            let til = tl as i64;
            for r in 0..d {
                let two_n = til - 2 * r as i64;
                for col in 0..d {
                    let two_m = til - 2 * col as i64;
                    flat.push(amat[(two_m + t) as usize * w + (two_n + t) as usize] * small.get(tl, two_m, two_n));
                }
            }
        }
        flat
    });
    let total = partials.first().map_or(0, |v| v.len());
    let mut acc = vec![ZERO; total];
    for part in &partials {
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
    }
    let mut offset = 0;
    SpectralFunction::from_coeffs(
        rule.group(),
        reps.iter().map(|k| {
            let d = k.dim();
            // flat is row-major over (r, col)
            let m = DMatrix::from_row_slice(d, d, &acc[offset..offset + d * d]);
            offset += d * d;
            (k.clone(), m)
        }),
    )
}
