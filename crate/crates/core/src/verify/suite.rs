use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::corpus::{make_corpus, Corpus, Profile};
use super::decay::corollary_decay;
use super::embedding::{conjugate, embedding_suite, Embedding, Family};
use super::nikolskii::{nikolskii_check, nikolskii_pairs, TOL_EXACT, TOL_REFINED};
use super::report::{InequalityReport, Instance};
use super::weyl::weyl_fit;
use crate::error::{Error, Result};
use crate::fourier::{dirichlet, SpectralFunction};
use crate::groups::{weyl_count, GroupId};
use crate::norms::{
    besov_norm, beurling_norm, beurling_r_norm, lp_norm, seq_lp_norm, sobolev_norm, tl_norm, wiener_norm,
};
use crate::parallel;
use crate::settings::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Nikolskii,
    Sharpness,
    HausdorffYoung,
    Weyl,
    Corollary,
    Embeddings,
    WienerChain,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Nikolskii,
        Suite::Sharpness,
        Suite::HausdorffYoung,
        Suite::Weyl,
        Suite::Corollary,
        Suite::Embeddings,
        Suite::WienerChain,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Nikolskii => "nikolskii",
            Suite::Sharpness => "sharpness",
            Suite::HausdorffYoung => "hausdorff-young",
            Suite::Weyl => "weyl",
            Suite::Corollary => "corollary",
            Suite::Embeddings => "embeddings",
            Suite::WienerChain => "wiener-chain",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::parse("suite", format!("unknown suite {s:?}")))
    }
}

/// Everything a suite run depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub groups: Vec<GroupId>,
    /// Functions per group, split evenly across the three profiles.
    pub corpus_count: usize,
    /// Corpus band limit; `None` picks a per-group default.
    #[serde(default, with = "super::report::opt_num")]
    pub bandlimit: Option<f64>,
    #[serde(with = "num_vec")]
    pub p_grid: Vec<f64>,
    #[serde(with = "num_vec")]
    pub q_grid: Vec<f64>,
    pub r_grid: Vec<f64>,
    #[serde(with = "num_vec")]
    pub beta_grid: Vec<f64>,
    /// Band limits for the Dirichlet equality case.
    pub sharpness_bands: Vec<f64>,
    pub settings: Settings,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            groups: vec![GroupId::Torus(1), GroupId::Torus(2), GroupId::Su2],
            corpus_count: 12,
            bandlimit: None,
            p_grid: vec![1.0, 1.5, 2.0, 3.0, 4.0],
            q_grid: vec![2.0, 3.0, 4.0, f64::INFINITY],
            r_grid: vec![-1.0, 0.5, 2.0],
            beta_grid: vec![0.5, 1.0, 2.0],
            sharpness_bands: vec![2.0, 4.0, 8.0],
            settings: Settings {
                max_nodes: 1 << 18,
                max_refinements: 6,
                ..Settings::default()
            },
        }
    }
}

mod num_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Num(#[serde(with = "crate::verify::report::num")] f64);

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|&x| Num(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Ok(Vec::<Num>::deserialize(d)?.into_iter().map(|n| n.0).collect())
    }
}

/// Default corpus band limit: small enough that refined norms stay cheap.
pub fn default_corpus_band(group: GroupId) -> f64 {
    match group {
        GroupId::Torus(1) => 8.0,
        GroupId::Torus(2) => 4.0,
        _ => 2.5,
    }
}

/// Dirichlet band limits for slope estimates.
pub fn default_family(group: GroupId) -> Vec<f64> {
    match group {
        GroupId::Torus(1) => (1..=7).map(|j| 2f64.powi(j)).collect(),
        GroupId::Torus(2) => (1..=6).map(|j| 2f64.powi(j)).collect(),
        _ => (1..=5).map(|j| 2f64.powi(j)).collect(),
    }
}

/// Weyl fit grid and the allowed slope deviation from `dim G`.
pub fn default_weyl_grid(group: GroupId) -> (Vec<f64>, f64) {
    let (hi, tol) = match group {
        GroupId::Torus(1) => (100, 0.05),
        GroupId::Torus(2) => (60, 0.1),
        _ => (40, 0.2),
    };
    ((10..=hi).step_by(5).map(f64::from).collect(), tol)
}

/// Band limits and corpus band for the decay experiment.
pub fn default_decay_grid(group: GroupId) -> (Vec<f64>, f64) {
    match group {
        GroupId::Torus(1) => ((1..=16).map(|k| 2.0 * k as f64).collect(), 40.0),
        GroupId::Torus(2) => ((1..=8).map(|k| 2.0 * k as f64).collect(), 20.0),
        _ => ((2..=8).map(f64::from).collect(), 10.0),
    }
}

fn group_code(g: GroupId) -> u64 {
    match g {
        GroupId::Torus(n) => n as u64,
        GroupId::Su2 => 100,
    }
}

/// Seed for one (group, profile) corpus, derived from the run seed.
pub fn derived_seed(seed: u64, group: GroupId, profile: Profile) -> u64 {
    let p = Profile::ALL.iter().position(|&x| x == profile).unwrap_or(0) as u64;
    seed.wrapping_mul(1_000_003).wrapping_add(group_code(group) * 97 + p)
}

/// The configured corpora of `group`, one per profile.
pub fn corpora(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<Corpus>> {
    let band = cfg.bandlimit.unwrap_or_else(|| default_corpus_band(group));
    Profile::ALL
        .iter()
        .enumerate()
        .filter_map(|(k, &profile)| {
            let count = (cfg.corpus_count + 2 - k) / 3;
            (count > 0).then(|| make_corpus(group, band, count, derived_seed(cfg.seed, group, profile), profile))
        })
        .collect()
}

fn corpus_instance(c: &Corpus, index: usize) -> Instance {
    let mut i = Instance::new(c.group);
    i.seed = Some(c.seed);
    i.family = Some(format!("corpus:{}", c.profile));
    i.index = Some(index);
    i.bandlimit = Some(c.bandlimit);
    i
}

/// Runs `f` on every corpus function in parallel, keeping corpus order.
fn over_corpora(
    corpora: &[Corpus],
    f: impl Fn(&SpectralFunction, Instance) -> Result<Vec<InequalityReport>> + Sync,
) -> Result<Vec<InequalityReport>> {
    let jobs: Vec<(usize, usize)> = corpora
        .iter()
        .enumerate()
        .flat_map(|(c, corpus)| (0..corpus.functions.len()).map(move |i| (c, i)))
        .collect();
    let parts = parallel::map_slice(&jobs, |&(c, i)| {
        f(&corpora[c].functions[i], corpus_instance(&corpora[c], i))
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Support-count and Weyl-count Nikolskii checks for every `p < q` from the
/// grids, plus the comparison of the two bounds.
pub fn run_nikolskii(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<InequalityReport>> {
    let pairs: Vec<(f64, f64)> = cfg
        .p_grid
        .iter()
        .flat_map(|&p| cfg.q_grid.iter().filter(move |&&q| p < q).map(move |&q| (p, q)))
        .collect();
    let band = cfg.bandlimit.unwrap_or_else(|| default_corpus_band(group));
    over_corpora(&corpora(cfg, group)?, |f, inst| {
        let mut out = Vec::new();
        for (support, weyl) in nikolskii_pairs(f, &pairs, band, &inst, &cfg.settings)? {
            let dominance = InequalityReport::le(
                "nikolskii/dominance",
                support.instance.clone(),
                support.rhs,
                weyl.rhs,
                0.0,
            );
            out.extend([support, weyl, dominance]);
        }
        Ok(out)
    })
}

/// Dirichlet kernels at `p = 2`, `q = inf`, where equality is claimed.
pub fn run_sharpness(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<InequalityReport>> {
    cfg.sharpness_bands
        .iter()
        .map(|&l| {
            let d = dirichlet(group, l)?;
            let r = nikolskii_check(&d, 2.0, f64::INFINITY, &cfg.settings)?;
            let mut i = r.instance.clone();
            i.bandlimit = Some(l);
            i.family = Some("dirichlet".into());
            let mut out = InequalityReport::eq("nikolskii/sharpness", i, r.lhs, r.rhs, TOL_EXACT).with_notes(r.notes);
            out.support = r.support;
            Ok(out)
        })
        .collect()
}

/// Plancherel and both Hausdorff-Young directions for `p` in `{1, 4/3, 2}`.
pub fn run_hausdorff_young(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<InequalityReport>> {
    over_corpora(&corpora(cfg, group)?, |f, inst| {
        let mut out = Vec::new();
        let l2 = lp_norm(f, 2.0, &cfg.settings)?;
        let s2 = seq_lp_norm(f, 2.0)?;
        let mut i = inst.clone();
        i.p = Some(2.0);
        out.push(InequalityReport::eq("plancherel/identity", i, l2.value, s2, TOL_EXACT));
        for p in [1.0, 4.0 / 3.0, 2.0] {
            let pc = conjugate(p);
            let mut i = inst.clone();
            i.p = Some(p);
            let np = lp_norm(f, p, &cfg.settings)?;
            let npc = lp_norm(f, pc, &cfg.settings)?;
            out.push(
                InequalityReport::le(
                    "hausdorff-young/forward",
                    i.clone(),
                    seq_lp_norm(f, pc)?,
                    np.value,
                    TOL_EXACT,
                )
                .with_notes(format!("||f||_p {}", np.certification)),
            );
            out.push(
                InequalityReport::le("hausdorff-young/inverse", i, npc.value, seq_lp_norm(f, p)?, TOL_EXACT)
                    .with_notes(format!("||f||_p' {}", npc.certification)),
            );
        }
        Ok(out)
    })
}

/// Log-log slope of `N(L)` against `dim G`, and `N(10) = 2470` on SU(2).
pub fn run_weyl(group: GroupId) -> Result<Vec<InequalityReport>> {
    let (grid, tol) = default_weyl_grid(group);
    let fit = weyl_fit(group, &grid)?;
    let n = group.dim() as f64;
    let mut i = Instance::new(group);
    i.family = Some(format!("L={}..{}", grid[0], grid[grid.len() - 1]));
    let mut out = vec![
        InequalityReport::eq("weyl/slope", i, fit.slope, n, tol / n).with_notes(format!(
            "intercept {}, empirical C0 {}, rms residual {}",
            fit.intercept, fit.c0, fit.residual
        )),
    ];
    if group == GroupId::Su2 {
        let mut i = Instance::new(group);
        i.bandlimit = Some(10.0);
        out.push(InequalityReport::eq(
            "weyl/spot",
            i,
            weyl_count(group, 10.0)? as f64,
            2470.0,
            0.0,
        ));
    }
    Ok(out)
}

/// `a_L` for a smooth-decay function at `p = 1`, `q = inf`: the last value
/// must be at most a tenth of the first, and the sequence must decrease from
/// `L = 8` on.
pub fn run_corollary(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<InequalityReport>> {
    let (grid, band) = default_decay_grid(group);
    let seed = derived_seed(cfg.seed, group, Profile::SmoothDecay);
    let corpus = make_corpus(group, band, 1, seed, Profile::SmoothDecay)?;
    let (p, q) = (1.0, f64::INFINITY);
    let decay = corollary_decay(&corpus.functions[0], p, q, &grid, &cfg.settings)?;
    let mut base = corpus_instance(&corpus, 0);
    base.p = Some(p);
    base.q = Some(q);
    let first = &decay.points[0];
    let last = &decay.points[decay.points.len() - 1];
    let mut out = vec![
        InequalityReport::le("corollary/decay", base.clone(), last.a, 0.1 * first.a, 0.0).with_notes(format!(
            "a_L at L={} vs a tenth of a_L at L={}; truncated weighted sum {} (not asserted, sup over grid only)",
            last.bandlimit, first.bandlimit, decay.weighted_sum
        )),
    ];
    for w in decay.points.windows(2).filter(|w| w[0].bandlimit >= 8.0) {
        let mut i = base.clone();
        i.bandlimit = Some(w[1].bandlimit);
        out.push(
            InequalityReport::le("corollary/monotone", i, w[1].a, w[0].a, 0.0).with_notes(format!(
                "a_L at L={} vs L={}; sup norm {}",
                w[1].bandlimit, w[0].bandlimit, w[1].norm.certification
            )),
        );
    }
    Ok(out)
}

fn besov_pairs(n: usize) -> Result<Vec<Embedding>> {
    let nf = n as f64;
    let mut v = vec![
        Embedding::besov_besov(n, 1.0, 2.0, 2.0, nf / 2.0)?,
        Embedding::besov_besov(n, 2.0, f64::INFINITY, 1.0, nf / 2.0)?,
        Embedding::besov_lq(n, 2.0, 4.0, nf / 4.0)?,
        Embedding::besov_linf(n, 1.0)?,
        Embedding::besov_linf(n, 2.0)?,
    ];
    v.extend(Embedding::besov_tl(2.0, 1.0, 0.5)?);
    v.extend(Embedding::besov_tl(2.0, 4.0, 0.5)?);
    Ok(v)
}

/// Wiener-Besov pairs with `alpha = n`, Beurling-Besov pairs and the
/// Wiener-Besov-Beurling chain.
pub fn wiener_pairs(n: usize) -> Result<Vec<Embedding>> {
    let nf = n as f64;
    let beta_for = |p: f64| 1.0 / (1.0 + 1.0 / conjugate(p));
    let mut v = vec![
        Embedding::wiener_besov(n, nf, 1.5, beta_for(1.5))?,
        Embedding::wiener_besov(n, nf, 2.0, beta_for(2.0))?,
        Embedding::besov_wiener(n, nf, 2.0, beta_for(2.0))?,
        Embedding::besov_wiener(n, nf, 4.0, beta_for(4.0))?,
    ];
    for beta in [1.0, 2.0] {
        for p in [2.0, 4.0] {
            v.push(Embedding::beurling_besov(n, beta, p)?);
        }
        v.push(Embedding::besov_beurling(n, beta)?);
        v.extend(Embedding::chain(n, beta)?);
    }
    Ok(v)
}

/// Besov structure: single-block identity, `B = F` at `p = q = 2`,
/// Besov-Sobolev bracketing, and embedding slopes along Dirichlet families.
pub fn run_embeddings(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<InequalityReport>> {
    let corpora = corpora(cfg, group)?;
    let s = &cfg.settings;
    let mut out = over_corpora(&corpora, |f, inst| {
        let mut out = Vec::new();
        for &r in &cfg.r_grid {
            let mut i = inst.clone();
            i.r = Some(r);
            i.p = Some(2.0);
            i.q = Some(2.0);
            let b = besov_norm(f, r, 2.0, 2.0, s)?.value;
            let t = tl_norm(f, r, 2.0, 2.0, s)?.value;
            let h = sobolev_norm(f, r, 2.0, s)?.value;
            out.push(InequalityReport::eq("besov/b-equals-f", i.clone(), t, b, TOL_EXACT));
            let k = 2f64.powf(r.abs());
            out.push(InequalityReport::le("besov/bracketing", i.clone(), b / h, k, TOL_REFINED).with_notes("upper"));
            out.push(InequalityReport::le("besov/bracketing", i, 1.0 / k, b / h, TOL_REFINED).with_notes("lower"));
            for xi_block in crate::norms::dyadic_blocks(f) {
                let block = f.filter(|xi| xi_block.reps.binary_search(xi).is_ok());
                for p in [1.0, 2.0] {
                    let mut i = inst.clone();
                    i.r = Some(r);
                    i.p = Some(p);
                    i.q = Some(1.0);
                    i.family = Some(format!("{} block {}", inst.family.as_deref().unwrap_or(""), xi_block.s));
                    let lhs = besov_norm(&block, r, p, 1.0, s)?.value;
                    let rhs = 2f64.powf(xi_block.s as f64 * r) * lp_norm(&block, p, s)?.value;
                    out.push(InequalityReport::eq("besov/single-block", i, lhs, rhs, TOL_EXACT));
                }
            }
        }
        Ok(out)
    })?;
    let pairs = besov_pairs(group.dim())?;
    out.extend(embedding_suite(
        group,
        &Family::Dirichlet(default_family(group)),
        &pairs,
        s,
    )?);
    out.extend(embedding_suite(group, &Family::Corpus(corpora[0].clone()), &pairs, s)?);
    Ok(out)
}

/// Wiener and Beurling embeddings and the chain along Dirichlet families and on the corpus, the
/// chain identity at `beta = 2`, and `A_{1/beta}^{*,beta} = A^{*,beta}`.
pub fn run_wiener_chain(cfg: &SuiteConfig, group: GroupId) -> Result<Vec<InequalityReport>> {
    let corpora = corpora(cfg, group)?;
    let s = &cfg.settings;
    let n = group.dim();
    let mut out = over_corpora(&corpora, |f, inst| {
        let mut out = Vec::new();
        let l2 = lp_norm(f, 2.0, s)?.value;
        let mut i = inst.clone();
        i.beta = Some(2.0);
        out.push(
            InequalityReport::eq("chain/identity", i.clone(), wiener_norm(f, 2.0)?, l2, TOL_EXACT)
                .with_notes("A^2 vs L^2"),
        );
        out.push(
            InequalityReport::eq(
                "chain/identity",
                i,
                besov_norm(f, 0.0, 2.0, 2.0, s)?.value,
                l2,
                TOL_EXACT,
            )
            .with_notes("B^0_{2,2} vs L^2"),
        );
        for &beta in &cfg.beta_grid {
            let mut i = inst.clone();
            i.beta = Some(beta);
            i.r = Some(1.0 / beta);
            out.push(InequalityReport::eq(
                "beurling/identity",
                i,
                beurling_r_norm(f, 1.0 / beta, beta)?,
                beurling_norm(f, beta)?,
                1e-12,
            ));
        }
        Ok(out)
    })?;
    let pairs = wiener_pairs(n)?;
    out.extend(embedding_suite(
        group,
        &Family::Dirichlet(default_family(group)),
        &pairs,
        s,
    )?);
    out.extend(embedding_suite(group, &Family::Corpus(corpora[0].clone()), &pairs, s)?);
    Ok(out)
}

/// Runs `suite` for every configured group; `All` runs each suite in turn.
/// Reports come back in suite order, then group order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<InequalityReport>> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut out = Vec::new();
    for s in suites {
        for &g in &cfg.groups {
            out.extend(match s {
                Suite::Nikolskii => run_nikolskii(cfg, g)?,
                Suite::Sharpness => run_sharpness(cfg, g)?,
                Suite::HausdorffYoung => run_hausdorff_young(cfg, g)?,
                Suite::Weyl => run_weyl(g)?,
                Suite::Corollary => run_corollary(cfg, g)?,
                Suite::Embeddings => run_embeddings(cfg, g)?,
                Suite::WienerChain => run_wiener_chain(cfg, g)?,
                Suite::All => unreachable!(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn config_serializes_infinity() {
        let cfg = SuiteConfig::default();
        let j = serde_json::to_string(&cfg).unwrap();
        assert!(j.contains("\"inf\""));
        let back: SuiteConfig = serde_json::from_str(&j).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn corpora_split_the_count() {
        let cfg = SuiteConfig {
            corpus_count: 7,
            ..SuiteConfig::default()
        };
        let c = corpora(&cfg, GroupId::Torus(1)).unwrap();
        assert_eq!(c.iter().map(|c| c.functions.len()).collect::<Vec<_>>(), vec![3, 2, 2]);
    }

    #[test]
    fn sharpness_holds_on_torus() {
        let reports = run_sharpness(&SuiteConfig::default(), GroupId::Torus(1)).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.holds && (r.ratio - 1.0).abs() < 1e-12));
    }
}
