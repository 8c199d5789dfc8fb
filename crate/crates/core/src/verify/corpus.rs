use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::SpectralFunction;
use crate::groups::{enumerate_dual, GroupId};

const MAX_CORPUS_ENTRIES: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// I.i.d. complex normal entries with `E|z|^2 = 1`.
    DenseGaussian,
    /// Gaussian entries on a random tenth of the representations.
    Sparse,
    /// Unit-modulus random phases scaled by `e^{-<xi>}`.
    SmoothDecay,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::DenseGaussian, Profile::Sparse, Profile::SmoothDecay];

    pub fn as_str(&self) -> &'static str {
        match self {
            Profile::DenseGaussian => "dense_gaussian",
            Profile::Sparse => "sparse",
            Profile::SmoothDecay => "smooth_decay",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| {
            Error::parse(
                "profile",
                format!("expected dense_gaussian, sparse or smooth_decay, got {s:?}"),
            )
        })
    }
}

/// Seeded pseudorandom trigonometric polynomials.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub group: GroupId,
    pub bandlimit: f64,
    pub profile: Profile,
    pub functions: Vec<SpectralFunction>,
}

/// Generates `count` functions supported in `<xi> <= bandlimit`. The output
/// depends only on the arguments.
pub fn make_corpus(group: GroupId, bandlimit: f64, count: usize, seed: u64, profile: Profile) -> Result<Corpus> {
    if count == 0 {
        return Err(Error::InvalidParameter("corpus count must be at least 1".into()));
    }
    let reps = enumerate_dual(group, bandlimit)?;
    let entries: u128 = reps.iter().map(|xi| (xi.dim() * xi.dim()) as u128).sum::<u128>() * count as u128;
    if entries > MAX_CORPUS_ENTRIES {
        return Err(Error::ResourceCap {
            needed: entries,
            cap: MAX_CORPUS_ENTRIES as usize,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions = (0..count)
        .map(|_| {
            let active: Vec<usize> = match profile {
                Profile::Sparse => {
                    let k = reps.len().div_ceil(10).max(1);
                    let mut idx = rand::seq::index::sample(&mut rng, reps.len(), k).into_vec();
                    idx.sort_unstable();
                    idx
                }
                _ => (0..reps.len()).collect(),
            };
            let coeffs = active.into_iter().map(|i| {
                let xi = reps[i].clone();
                let d = xi.dim();
                let decay = (-xi.weight()).exp();
                let m = DMatrix::from_fn(d, d, |_, _| match profile {
                    Profile::SmoothDecay => Complex64::from_polar(decay, rng.random_range(0.0..std::f64::consts::TAU)),
                    _ => {
                        let re: f64 = StandardNormal.sample(&mut rng);
                        let im: f64 = StandardNormal.sample(&mut rng);
                        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
                    }
                });
                (xi, m)
            });
            SpectralFunction::from_coeffs(group, coeffs.collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus {
        seed,
        group,
        bandlimit,
        profile,
        functions,
    })
}
