use std::f64::consts::PI;

use lieharm::groups::matrix_coefficient;
use lieharm::{enumerate_dual, quadrature, rep_info, weyl_count, GroupElement, GroupId, RepIndex};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn su2_element() -> impl Strategy<Value = GroupElement> {
    (0.0..2.0 * PI, 0.0..=PI, 0.0..4.0 * PI).prop_map(|(alpha, beta, gamma)| GroupElement::Su2 { alpha, beta, gamma })
}

fn torus_element(n: usize) -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec(0.0..2.0 * PI, n).prop_map(GroupElement::Torus)
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `d^{1/2}` and `d^1` in closed form.
fn small_d_closed_form(two_l: u32, beta: f64) -> DMatrix<f64> {
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    match two_l {
        1 => DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
        2 => {
            let (cb, sb) = (beta.cos(), beta.sin());
            let r = std::f64::consts::FRAC_1_SQRT_2;
            DMatrix::from_row_slice(
                3,
                3,
                &[
                    (1.0 + cb) / 2.0,
                    -sb * r,
                    (1.0 - cb) / 2.0,
                    sb * r,
                    cb,
                    -sb * r,
                    (1.0 - cb) / 2.0,
                    sb * r,
                    (1.0 + cb) / 2.0,
                ],
            )
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn su2_matrices_are_unitary(x in su2_element(), two_l in 0u32..12) {
        let xi = RepIndex::Su2 { two_l };
        let u = matrix_coefficient(GroupId::Su2, &xi, &x).unwrap();
        let d = xi.dim();
        let err = max_abs(&(&u * u.adjoint() - DMatrix::identity(d, d)));
        prop_assert!(err < 1e-11, "2l={} err={}", two_l, err);
    }

    #[test]
    fn su2_homomorphism(x in su2_element(), y in su2_element(), two_l in 0u32..10) {
        let xi = RepIndex::Su2 { two_l };
        let g = GroupId::Su2;
        let lhs = matrix_coefficient(g, &xi, &x.compose(&y)).unwrap();
        let rhs = matrix_coefficient(g, &xi, &x).unwrap() * matrix_coefficient(g, &xi, &y).unwrap();
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-10);
    }

    #[test]
    fn torus_homomorphism(x in torus_element(2), y in torus_element(2), k in proptest::collection::vec(-20i64..20, 2)) {
        let xi = RepIndex::Torus(k);
        let g = GroupId::Torus(2);
        let lhs = matrix_coefficient(g, &xi, &x.compose(&y)).unwrap();
        let rhs = matrix_coefficient(g, &xi, &x).unwrap() * matrix_coefficient(g, &xi, &y).unwrap();
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }

    #[test]
    fn euler_angles_round_trip_through_matrices(x in su2_element()) {
        let back = GroupElement::from_su2_matrix(&x.su2_matrix());
        let err = (back.su2_matrix() - x.su2_matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-12);
    }

    #[test]
    fn low_spin_matches_closed_form(beta in 0.0..=PI, alpha in 0.0..2.0 * PI, gamma in 0.0..4.0 * PI) {
        for two_l in [1u32, 2] {
            let x = GroupElement::Su2 { alpha, beta, gamma };
            let u = matrix_coefficient(GroupId::Su2, &RepIndex::Su2 { two_l }, &x).unwrap();
            let d = small_d_closed_form(two_l, beta);
            let t = two_l as f64;
            for i in 0..=two_l as usize {
                for j in 0..=two_l as usize {
                    let m = t / 2.0 - i as f64;
                    let n = t / 2.0 - j as f64;
                    let want = Complex64::cis(-m * alpha - n * gamma) * d[(i, j)];
                    prop_assert!((u[(i, j)] - want).norm() < 1e-12, "2l={} ({},{})", two_l, i, j);
                }
            }
        }
    }

    #[test]
    fn weyl_count_is_monotone(a in 1.0f64..30.0, b in 1.0f64..30.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for g in [GroupId::Torus(1), GroupId::Torus(2), GroupId::Torus(3), GroupId::Su2] {
            prop_assert!(weyl_count(g, lo).unwrap() <= weyl_count(g, hi).unwrap());
        }
    }
}

#[test]
fn weyl_count_at_one_is_one() {
    for g in [GroupId::Torus(1), GroupId::Torus(2), GroupId::Torus(3), GroupId::Su2] {
        assert_eq!(weyl_count(g, 1.0).unwrap(), 1);
        assert_eq!(enumerate_dual(g, 1.0).unwrap(), vec![g.trivial_rep()]);
    }
}

#[test]
fn weyl_count_matches_brute_force() {
    for l in [1.0f64, 1.5, 2.0, 3.3, 7.0, 12.5, 20.0] {
        let k2 = l * l - 1.0;
        let r = l.ceil() as i64;
        let t1 = (-r..=r).filter(|&a| (a * a) as f64 <= k2 + 1e-9).count() as u64;
        let t2 = (-r..=r)
            .flat_map(|a| (-r..=r).map(move |b| a * a + b * b))
            .filter(|&s| s as f64 <= k2 + 1e-9)
            .count() as u64;
        // SU(2): l(l+1) <= L^2 - 1 with d = 2l + 1
        let su2: u64 = (0..200u64)
            .filter(|&t| (t as f64 / 2.0) * (t as f64 / 2.0 + 1.0) <= k2 + 1e-9)
            .map(|t| (t + 1) * (t + 1))
            .sum();
        assert_eq!(weyl_count(GroupId::Torus(1), l).unwrap(), t1, "L={l}");
        assert_eq!(weyl_count(GroupId::Torus(2), l).unwrap(), t2, "L={l}");
        assert_eq!(weyl_count(GroupId::Su2, l).unwrap(), su2, "L={l}");
    }
}

#[test]
fn enumeration_agrees_with_weyl_count() {
    for g in [GroupId::Torus(1), GroupId::Torus(2), GroupId::Torus(3), GroupId::Su2] {
        for &l in &[1.0, 2.0, 4.5, 9.0] {
            let reps = enumerate_dual(g, l).unwrap();
            let n: u64 = reps.iter().map(|xi| (xi.dim() * xi.dim()) as u64).sum();
            assert_eq!(n, weyl_count(g, l).unwrap());
            assert!(reps.windows(2).all(|w| w[0] < w[1]));
            assert!(reps.iter().all(|xi| rep_info(g, xi).unwrap().weight <= l + 1e-12));
        }
    }
}

#[test]
fn casimir_values() {
    let info = rep_info(GroupId::Su2, &RepIndex::Su2 { two_l: 3 }).unwrap();
    assert_eq!(info.dim, 4);
    assert!((info.casimir - 3.75).abs() < 1e-15);
    assert!((info.weight - 4.75f64.sqrt()).abs() < 1e-15);
    let info = rep_info(GroupId::Torus(2), &RepIndex::Torus(vec![2, -1])).unwrap();
    assert_eq!(info.casimir, 5.0);
}

/// `int xi_ij conj(eta_kl) dx = delta / d_xi` by an exact rule.
fn orthonormality(g: GroupId, bound: f64) -> f64 {
    let rule = quadrature(g, bound).unwrap();
    let reps = enumerate_dual(g, bound).unwrap();
    let nodes: Vec<_> = rule.nodes().collect();
    let w = rule.weights();
    let values: Vec<Vec<DMatrix<Complex64>>> = reps
        .iter()
        .map(|xi| nodes.iter().map(|x| matrix_coefficient(g, xi, x).unwrap()).collect())
        .collect();
    let mut worst = 0.0f64;
    for (a, xi) in reps.iter().enumerate() {
        for (b, eta) in reps.iter().enumerate() {
            for i in 0..xi.dim() {
                for j in 0..xi.dim() {
                    for k in 0..eta.dim() {
                        for l in 0..eta.dim() {
                            let s: Complex64 = (0..nodes.len())
                                .map(|n| values[a][n][(i, j)] * values[b][n][(k, l)].conj() * w[n])
                                .sum();
                            let want = if a == b && i == k && j == l {
                                1.0 / xi.dim() as f64
                            } else {
                                0.0
                            };
                            worst = worst.max((s - want).norm());
                        }
                    }
                }
            }
        }
    }
    worst
}

#[test]
fn peter_weyl_orthonormality() {
    assert!(orthonormality(GroupId::Torus(1), 6.0) < 1e-10);
    assert!(orthonormality(GroupId::Torus(2), 3.0) < 1e-10);
    assert!(orthonormality(GroupId::Su2, 2.5) < 1e-10);
}

#[test]
fn quadrature_nodes_are_valid_elements() {
    for g in [GroupId::Torus(1), GroupId::Torus(3), GroupId::Su2] {
        let rule = quadrature(g, 5.0).unwrap();
        assert!(rule.nodes().all(|x| x.validate(g).is_ok()));
    }
}
