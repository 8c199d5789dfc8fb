//! Concrete compact groups: the flat tori `T^1..T^3` and `SU(2)`.
//!
//! Every irreducible representation class carries an exact rational weight:
//! `<xi>^2 = 1 + lambda` where `lambda = |k|^2` on the torus and
//! `lambda = l(l+1)` on SU(2). We store `4 * <xi>^2` as an integer so that
//! band-limit and dyadic-block membership never depend on rounding.

mod element;
mod quadrature;
pub(crate) use quadrature::Layout;
pub mod wigner;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use element::GroupElement;
pub use quadrature::{quadrature, QuadratureRule, DEFAULT_MAX_NODES};

/// Laplacian normalization on SU(2): `lambda = SU2_CASIMIR_SCALE * l(l+1)`.
/// Only the value 1 is supported by the exact-weight arithmetic below; the
/// constant exists so the choice is visible in one place.
pub const SU2_CASIMIR_SCALE: u64 = 1;

/// Highest torus dimension supported.
pub const MAX_TORUS_DIM: u8 = 3;

/// Serialized in its text form, `torus:N` or `su2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupId {
    Torus(u8),
    Su2,
}

impl GroupId {
    pub fn torus(n: u8) -> Result<Self> {
        if (1..=MAX_TORUS_DIM).contains(&n) {
            Ok(GroupId::Torus(n))
        } else {
            Err(Error::UnsupportedGroup(format!(
                "torus dimension {n} (supported: 1..={MAX_TORUS_DIM})"
            )))
        }
    }

    /// Manifold dimension `n = dim G`.
    pub fn dim(&self) -> usize {
        match self {
            GroupId::Torus(n) => *n as usize,
            GroupId::Su2 => 3,
        }
    }

    pub fn trivial_rep(&self) -> RepIndex {
        match self {
            GroupId::Torus(n) => RepIndex::Torus(vec![0; *n as usize]),
            GroupId::Su2 => RepIndex::Su2 { two_l: 0 },
        }
    }

    pub fn validate_index(&self, xi: &RepIndex) -> Result<()> {
        match (self, xi) {
            (GroupId::Torus(n), RepIndex::Torus(k)) if k.len() == *n as usize => Ok(()),
            (GroupId::Su2, RepIndex::Su2 { .. }) => Ok(()),
            _ => Err(Error::MalformedIndex(format!("{xi} is not a representation of {self}"))),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Torus(n) => write!(f, "torus:{n}"),
            GroupId::Su2 => write!(f, "su2"),
        }
    }
}

impl From<GroupId> for String {
    fn from(g: GroupId) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for GroupId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("su2") {
            return Ok(GroupId::Su2);
        }
        match s.split_once(':') {
            Some((kind, n)) if kind.eq_ignore_ascii_case("torus") => {
                let n: u8 = n
                    .parse()
                    .map_err(|_| Error::parse("group := torus:N | su2", format!("bad torus dimension {n:?}")))?;
                GroupId::torus(n)
            }
            _ => Err(Error::parse("group := torus:N | su2", format!("unknown group {s:?}"))),
        }
    }
}

/// Label of an irreducible representation class.
///
/// Derived ordering is the canonical dual order: lexicographic on torus
/// tuples, increasing `2l` on SU(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RepIndex {
    Torus(Vec<i64>),
    Su2 { two_l: u32 },
}

impl RepIndex {
    /// `4 <xi>^2 = 4 (1 + lambda)`, exact.
    pub fn weight_sq_x4(&self) -> u64 {
        match self {
            RepIndex::Torus(k) => 4 + 4 * k.iter().map(|&x| (x * x) as u64).sum::<u64>(),
            RepIndex::Su2 { two_l } => {
                let t = *two_l as u64;
                4 + SU2_CASIMIR_SCALE * t * (t + 2)
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            RepIndex::Torus(_) => 1,
            RepIndex::Su2 { two_l } => *two_l as usize + 1,
        }
    }

    pub fn weight(&self) -> f64 {
        (self.weight_sq_x4() as f64 / 4.0).sqrt()
    }

    /// `<xi> <= bound`, decided on the exact integer `4 <xi>^2`.
    pub fn within(&self, bound: f64) -> bool {
        weight_x4_within(self.weight_sq_x4(), bound)
    }

    /// Dyadic block `s` with `2^s <= <xi> < 2^(s+1)`.
    pub fn dyadic_block(&self) -> u32 {
        dyadic_block_of(self.weight_sq_x4())
    }
}

impl fmt::Display for RepIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepIndex::Torus(k) => {
                let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            RepIndex::Su2 { two_l } => {
                if two_l % 2 == 0 {
                    write!(f, "{}", two_l / 2)
                } else {
                    write!(f, "{two_l}/2")
                }
            }
        }
    }
}

impl RepIndex {
    /// Parses the `Display` form for the given group.
    pub fn parse_for(group: GroupId, s: &str) -> Result<Self> {
        const RULE: &str = "index := int(,int)* | l | 2l/2";
        match group {
            GroupId::Torus(n) => {
                let k: std::result::Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse()).collect();
                let k = k.map_err(|_| Error::parse(RULE, format!("bad torus index {s:?}")))?;
                if k.len() != n as usize {
                    return Err(Error::parse(RULE, format!("torus index {s:?} needs {n} components")));
                }
                Ok(RepIndex::Torus(k))
            }
            GroupId::Su2 => {
                let two_l = match s.split_once('/') {
                    Some((num, "2")) => {
                        let t: u32 = num.parse().map_err(|_| Error::parse(RULE, format!("bad spin {s:?}")))?;
                        if t.is_multiple_of(2) {
                            return Err(Error::parse(RULE, format!("{s:?} is not in lowest terms")));
                        }
                        t
                    }
                    Some(_) => return Err(Error::parse(RULE, format!("bad spin {s:?}"))),
                    None => {
                        2 * s
                            .parse::<u32>()
                            .map_err(|_| Error::parse(RULE, format!("bad spin {s:?}")))?
                    }
                };
                Ok(RepIndex::Su2 { two_l })
            }
        }
    }
}

pub(crate) fn weight_x4_within(w4: u64, bound: f64) -> bool {
    // a few ulps of slack so that bound = sqrt(w) computed in floating point still admits w
    (w4 as f64) <= 4.0 * bound * bound * (1.0 + 8.0 * f64::EPSILON)
}

pub(crate) fn dyadic_block_of(w4: u64) -> u32 {
    // largest s with 4^(s+1) <= 4 <xi>^2
    let mut s = 0u32;
    let mut next = 16u64;
    while next <= w4 {
        s += 1;
        next = next.saturating_mul(4);
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepInfo {
    pub dim: usize,
    pub casimir: f64,
    pub weight: f64,
}

pub fn rep_info(group: GroupId, xi: &RepIndex) -> Result<RepInfo> {
    group.validate_index(xi)?;
    let w4 = xi.weight_sq_x4();
    Ok(RepInfo {
        dim: xi.dim(),
        casimir: (w4 - 4) as f64 / 4.0,
        weight: xi.weight(),
    })
}

fn check_bound(bound: f64) -> Result<()> {
    if bound.is_nan() || bound < 1.0 {
        Err(Error::BandLimitTooSmall(bound))
    } else {
        Ok(())
    }
}

/// Largest `|k_i|` that can occur with `<k> <= bound`, or largest `2l` on SU(2).
pub(crate) fn max_frequency(group: GroupId, bound: f64) -> u32 {
    match group {
        GroupId::Torus(_) => {
            let mut k = ((bound * bound - 1.0).max(0.0)).sqrt().floor() as u64;
            while !weight_x4_within(4 + 4 * k * k, bound) && k > 0 {
                k -= 1;
            }
            while weight_x4_within(4 + 4 * (k + 1) * (k + 1), bound) {
                k += 1;
            }
            k as u32
        }
        GroupId::Su2 => {
            let mut t = 0u64;
            while weight_x4_within(4 + SU2_CASIMIR_SCALE * (t + 1) * (t + 3), bound) {
                t += 1;
            }
            t as u32
        }
    }
}

/// All representation classes with `<xi> <= bound`, in canonical order.
pub fn enumerate_dual(group: GroupId, bound: f64) -> Result<Vec<RepIndex>> {
    check_bound(bound)?;
    let kmax = max_frequency(group, bound) as i64;
    let mut out = Vec::new();
    match group {
        GroupId::Torus(n) => {
            let n = n as usize;
            let mut k = vec![-kmax; n];
            loop {
                let xi = RepIndex::Torus(k.clone());
                if xi.within(bound) {
                    out.push(xi);
                }
                // lexicographic odometer, last axis fastest
                let mut axis = n;
                loop {
                    if axis == 0 {
                        return Ok(out);
                    }
                    axis -= 1;
                    if k[axis] < kmax {
                        k[axis] += 1;
                        break;
                    }
                    k[axis] = -kmax;
                }
            }
        }
        GroupId::Su2 => {
            out.extend((0..=kmax as u32).map(|two_l| RepIndex::Su2 { two_l }));
            Ok(out)
        }
    }
}

/// Weyl counting function `N(L) = sum_{<xi> <= L} d_xi^2`.
pub fn weyl_count(group: GroupId, bound: f64) -> Result<u64> {
    check_bound(bound)?;
    let kmax = max_frequency(group, bound) as i64;
    Ok(match group {
        GroupId::Torus(n) => {
            // count lattice points |k|^2 <= K by summing over the first n-1 axes
            let limit_x4 = |rest: i64| weight_x4_within(4 + 4 * rest as u64, bound);
            fn count(n: usize, used: i64, kmax: i64, ok: &dyn Fn(i64) -> bool) -> u64 {
                if n == 0 {
                    return ok(used) as u64;
                }
                (-kmax..=kmax)
                    .filter(|k| ok(used + k * k))
                    .map(|k| count(n - 1, used + k * k, kmax, ok))
                    .sum()
            }
            count(n as usize, 0, kmax, &limit_x4)
        }
        GroupId::Su2 => (0..=kmax as u64).map(|t| (t + 1) * (t + 1)).sum(),
    })
}

/// The unitary matrix `xi(x)`.
pub fn matrix_coefficient(group: GroupId, xi: &RepIndex, x: &GroupElement) -> Result<DMatrix<Complex64>> {
    group.validate_index(xi)?;
    x.validate(group)?;
    match (xi, x) {
        (RepIndex::Torus(k), GroupElement::Torus(t)) => {
            let phase: f64 = k.iter().zip(t).map(|(&ki, &ti)| ki as f64 * ti).sum();
            Ok(DMatrix::from_element(1, 1, Complex64::cis(phase)))
        }
        (RepIndex::Su2 { two_l }, GroupElement::Su2 { alpha, beta, gamma }) => {
            Ok(wigner::wigner_big_d(*two_l, *alpha, *beta, *gamma))
        }
        _ => Err(Error::MalformedIndex(format!("{xi} does not match element {x:?}"))),
    }
}
