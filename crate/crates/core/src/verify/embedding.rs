use serde::{Deserialize, Serialize};

use super::corpus::Corpus;
use super::report::{InequalityReport, Instance};
use super::weyl::least_squares;
use crate::error::{Error, Result};
use crate::fourier::{dirichlet, SpectralFunction};
use crate::groups::GroupId;
use crate::norms::{norm, NormSpec, NormValue};
use crate::parallel;
use crate::settings::Settings;

/// Largest log-log slope of a ratio along a scaling family that still counts
/// as bounded.
pub const SLOPE_LIMIT: f64 = 0.1;

const RELATION_TOL: f64 = 1e-12;

/// A claimed bound `||f||_target <= C ||f||_source`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub name: String,
    pub target: NormSpec,
    pub source: NormSpec,
}

/// Conjugate exponent `p / (p - 1)`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn relation(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ExponentRelation(what()))
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= RELATION_TOL * a.abs().max(b.abs()).max(1.0)
}

impl Embedding {
    fn new(name: &str, target: NormSpec, source: NormSpec) -> Result<Self> {
        target.validate()?;
        source.validate()?;
        Ok(Embedding {
            name: name.to_string(),
            target,
            source,
        })
    }

    /// `B^{r1}_{p1,q} -> B^{r2}_{p2,q}` with `r2 = r1 - n(1/p1 - 1/p2)`.
    pub fn besov_besov(n: usize, p1: f64, p2: f64, q: f64, r1: f64) -> Result<Self> {
        relation(p1 > 0.0 && p1 <= p2, || {
            format!("need 0 < p1 <= p2, got p1={p1}, p2={p2}")
        })?;
        let r2 = r1 - n as f64 * (1.0 / p1 - 1.0 / p2);
        Self::new(
            "besov/besov-besov",
            NormSpec::Besov { r: r2, p: p2, q },
            NormSpec::Besov { r: r1, p: p1, q },
        )
    }

    /// `B^r_{p,q} -> L^q` with `1 < p < q < inf` and `r = n(1/p - 1/q)`.
    pub fn besov_lq(n: usize, p: f64, q: f64, r: f64) -> Result<Self> {
        relation(1.0 < p && p < q && q.is_finite(), || {
            format!("need 1 < p < q < inf, got p={p}, q={q}")
        })?;
        let want = n as f64 * (1.0 / p - 1.0 / q);
        relation(close(r, want), || format!("need r = n(1/p - 1/q) = {want}, got r={r}"))?;
        Self::new("besov/besov-lq", NormSpec::Lp { p: q }, NormSpec::Besov { r, p, q })
    }

    /// `B^{n/p}_{p,1} -> L^inf`.
    pub fn besov_linf(n: usize, p: f64) -> Result<Self> {
        Self::new(
            "besov/besov-linf",
            NormSpec::Lp { p: f64::INFINITY },
            NormSpec::Besov {
                r: n as f64 / p,
                p,
                q: 1.0,
            },
        )
    }

    /// `B^r_{p,min(p,q)} -> F^r_{p,q} -> B^r_{p,max(p,q)}`, as two embeddings.
    pub fn besov_tl(p: f64, q: f64, r: f64) -> Result<[Self; 2]> {
        relation(1.0 < p && p.is_finite(), || format!("need 1 < p < inf, got p={p}"))?;
        let tl = NormSpec::TriebelLizorkin { r, p, q };
        Ok([
            Self::new("besov/tl-sandwich", tl, NormSpec::Besov { r, p, q: p.min(q) })?,
            Self::new("besov/tl-sandwich", NormSpec::Besov { r, p, q: p.max(q) }, tl)?,
        ])
    }

    fn check_wiener_relation(n: usize, alpha: f64, p: f64, beta: f64) -> Result<()> {
        relation(alpha > 0.0, || format!("need alpha > 0, got {alpha}"))?;
        let want = n as f64 / alpha + 1.0 / conjugate(p);
        relation(close(1.0 / beta, want), || {
            format!("need 1/beta = n/alpha + 1/p' = {want}, got 1/beta = {}", 1.0 / beta)
        })
    }

    /// `B^alpha_{p,beta} -> A^beta` for `1 < p <= 2`.
    pub fn wiener_besov(n: usize, alpha: f64, p: f64, beta: f64) -> Result<Self> {
        relation(1.0 < p && p <= 2.0, || format!("need 1 < p <= 2, got p={p}"))?;
        Self::check_wiener_relation(n, alpha, p, beta)?;
        Self::new(
            "wiener/besov",
            NormSpec::Wiener { beta },
            NormSpec::Besov { r: alpha, p, q: beta },
        )
    }

    /// `A^beta -> B^alpha_{p,beta}` for `2 <= p < inf`.
    pub fn besov_wiener(n: usize, alpha: f64, p: f64, beta: f64) -> Result<Self> {
        relation((2.0..f64::INFINITY).contains(&p), || {
            format!("need 2 <= p < inf, got p={p}")
        })?;
        Self::check_wiener_relation(n, alpha, p, beta)?;
        Self::new(
            "wiener/besov",
            NormSpec::Besov { r: alpha, p, q: beta },
            NormSpec::Wiener { beta },
        )
    }

    /// `A^{*,beta} -> B^{n(1/beta - 1/p')}_{p,beta}` for `p >= 2`.
    pub fn beurling_besov(n: usize, beta: f64, p: f64) -> Result<Self> {
        relation(p >= 2.0 && beta > 0.0 && beta.is_finite(), || {
            format!("need p >= 2 and 0 < beta < inf, got p={p}, beta={beta}")
        })?;
        let r = n as f64 * (1.0 / beta - 1.0 / conjugate(p));
        Self::new(
            "beurling/besov",
            NormSpec::Besov { r, p, q: beta },
            NormSpec::Beurling { beta },
        )
    }

    /// `B^{n/beta}_{1,beta} -> A^{*,beta}`.
    pub fn besov_beurling(n: usize, beta: f64) -> Result<Self> {
        relation(beta > 0.0 && beta.is_finite(), || {
            format!("need 0 < beta < inf, got {beta}")
        })?;
        Self::new(
            "beurling/besov",
            NormSpec::Beurling { beta },
            NormSpec::Besov {
                r: n as f64 / beta,
                p: 1.0,
                q: beta,
            },
        )
    }

    /// `B^{n(1/beta - 1/2)}_{2,beta} -> A^beta` and `A^{*,beta} -> B^{n(1/beta - 1/2)}_{2,beta}`.
    pub fn chain(n: usize, beta: f64) -> Result<[Self; 2]> {
        relation(beta > 0.0 && beta.is_finite(), || {
            format!("need 0 < beta < inf, got {beta}")
        })?;
        let b = NormSpec::Besov {
            r: n as f64 * (1.0 / beta - 0.5),
            p: 2.0,
            q: beta,
        };
        Ok([
            Self::new("chain/wiener-besov", NormSpec::Wiener { beta }, b)?,
            Self::new("chain/besov-beurling", b, NormSpec::Beurling { beta })?,
        ])
    }

    fn notes(&self) -> String {
        let negative = [self.target, self.source].iter().any(|s| match *s {
            NormSpec::Sobolev { r, .. }
            | NormSpec::Besov { r, .. }
            | NormSpec::TriebelLizorkin { r, .. }
            | NormSpec::BeurlingR { r, .. } => r < 0.0,
            _ => false,
        });
        if negative {
            "negative smoothness".to_string()
        } else {
            String::new()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingValue {
    pub ratio: f64,
    pub target: NormValue,
    pub source: NormValue,
}

/// `||f||_target / ||f||_source`.
pub fn embedding_ratio(
    f: &SpectralFunction,
    target: &NormSpec,
    source: &NormSpec,
    settings: &Settings,
) -> Result<EmbeddingValue> {
    let s = norm(f, source, settings)?;
    if s.value == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let t = norm(f, target, settings)?;
    Ok(EmbeddingValue {
        ratio: t.value / s.value,
        target: t,
        source: s,
    })
}

/// Test functions for an embedding suite.
#[derive(Clone, Debug)]
pub enum Family {
    /// Dirichlet kernels at the given band limits.
    Dirichlet(Vec<f64>),
    /// Dyadic block `s` of a Dirichlet kernel, for each `s`.
    SingleBlock(Vec<u32>),
    /// Corpus functions; only finiteness is checked.
    Corpus(Corpus),
}

impl Family {
    fn label(&self) -> String {
        match self {
            Family::Dirichlet(_) => "dirichlet".into(),
            Family::SingleBlock(_) => "single_block".into(),
            Family::Corpus(c) => format!("corpus:{}", c.profile),
        }
    }

    /// `(scale, function)` pairs; the scale is `L` or `2^s`, or the index for
    /// a corpus.
    fn members(&self, group: GroupId) -> Result<Vec<(f64, SpectralFunction)>> {
        match self {
            Family::Dirichlet(ls) => ls.iter().map(|&l| Ok((l, dirichlet(group, l)?))).collect(),
            Family::SingleBlock(ss) => ss
                .iter()
                .map(|&s| {
                    let d = dirichlet(group, 2f64.powi(s as i32 + 1))?;
                    Ok((2f64.powi(s as i32), d.filter(|xi| xi.dyadic_block() == s)))
                })
                .collect(),
            Family::Corpus(c) => Ok(c
                .functions
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, f)| (i as f64, f))
                .collect()),
        }
    }
}

/// Ratios of every embedding over the family. Scaling families also get one
/// slope report per embedding, holding when the log-log slope of the ratio
/// against the scale is at most [`SLOPE_LIMIT`]. A scaling family is cut at
/// the first member whose norms exceed the node cap.
pub fn embedding_suite(
    group: GroupId,
    family: &Family,
    pairs: &[Embedding],
    settings: &Settings,
) -> Result<Vec<InequalityReport>> {
    let members = family.members(group)?;
    let jobs: Vec<(usize, usize)> = (0..pairs.len())
        .flat_map(|e| (0..members.len()).map(move |m| (e, m)))
        .collect();
    let values = parallel::map_slice(&jobs, |&(e, m)| {
        embedding_ratio(&members[m].1, &pairs[e].target, &pairs[e].source, settings)
    });
    let label = family.label();
    let mut out = Vec::new();
    let mut it = values.into_iter();
    for emb in pairs {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut scales = Vec::new();
        let mut capped = None;
        for (scale, _) in &members {
            let v = match it.next().expect("one value per job") {
                Err(Error::ResourceCap { .. }) if capped.is_some() => continue,
                Err(Error::ResourceCap { .. }) if !scales.is_empty() && !matches!(family, Family::Corpus(_)) => {
                    capped = Some(*scale);
                    continue;
                }
                v => v?,
            };
            if capped.is_some() {
                continue;
            }
            scales.push(*scale);
            let mut i = Instance::new(group);
            i.family = Some(label.clone());
            i.target = Some(emb.target.to_string());
            i.source = Some(emb.source.to_string());
            match family {
                Family::Corpus(c) => {
                    i.seed = Some(c.seed);
                    i.index = Some(*scale as usize);
                    i.bandlimit = Some(c.bandlimit);
                }
                _ => i.bandlimit = Some(*scale),
            }
            let notes = [
                emb.notes(),
                format!("target {}, source {}", v.target.certification, v.source.certification),
            ]
            .iter()
            .filter(|s| !s.is_empty())
            .cloned()
            .collect::<Vec<_>>()
            .join("; ");
            out.push(InequalityReport::finite(&emb.name, i, v.target.value, v.source.value).with_notes(notes));
            xs.push(scale.ln());
            ys.push(v.ratio.ln());
        }
        if !matches!(family, Family::Corpus(_)) && xs.len() >= 2 {
            let (slope, _, _) = least_squares(&xs, &ys);
            let mut i = Instance::new(group);
            i.family = Some(format!("{label} slope"));
            i.target = Some(emb.target.to_string());
            i.source = Some(emb.source.to_string());
            let mut notes = format!("log-log slope of the ratio over scales {scales:?}");
            if let Some(c) = capped {
                notes.push_str(&format!("; scales from {c} exceed the node cap"));
            }
            out.push(InequalityReport::le(&emb.name, i, slope, SLOPE_LIMIT, 0.0).with_notes(notes));
        }
    }
    Ok(out)
}
