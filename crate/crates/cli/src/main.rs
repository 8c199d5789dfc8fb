//! `lieharm`: Fourier analysis, function-space norms and inequality checks on
//! tori and SU(2) from the command line.
//!
//! Exit status: 0 when everything holds, 1 when a checked inequality fails,
//! 2 for usage and input errors, 3 when a quadrature rule would exceed the
//! node cap.

mod config;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lieharm::fourier::{dirichlet, read_spectral, write_spectral};
use lieharm::norms::{norm, NormSpec};
use lieharm::verify::{make_corpus, run_suite, summarize, write_jsonl, Profile, Suite, SuiteConfig};
use lieharm::{enumerate_dual, rep_info, weyl_count, Error, GroupId, Settings};

use config::{Run, RunConfig};

#[derive(Parser)]
#[command(
    name = "lieharm",
    version,
    about = "Norms and Nikolskii-type inequalities on tori and SU(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the representations with <xi> <= L and the Weyl count N(L).
    Dual {
        #[arg(long)]
        group: GroupId,
        #[arg(long = "L")]
        bandlimit: f64,
    },
    /// Evaluate a norm of a function stored in the coefficient format.
    Norm {
        /// Coefficient file, as written by `dirichlet` or `corpus`.
        input: PathBuf,
        /// Lp:P, seq:P, sobolev:r=R,p=P, besov:r=R,p=P,q=Q, tl:r=R,p=P,q=Q,
        /// wiener:beta=B, beurling:beta=B or beurlingR:r=R,beta=B; `inf` is
        /// accepted where infinity is.
        spec: NormSpec,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run a verification suite and write a report.
    Verify(VerifyArgs),
    /// Generate a seeded corpus of random trigonometric polynomials.
    Corpus {
        #[arg(long)]
        group: GroupId,
        #[arg(long = "L")]
        bandlimit: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// dense_gaussian, sparse or smooth_decay.
        #[arg(long, default_value = "dense_gaussian")]
        profile: Profile,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the Dirichlet kernel with identity coefficients up to L.
    Dirichlet {
        #[arg(long)]
        group: GroupId,
        #[arg(long = "L")]
        bandlimit: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Limits {
    /// Relative tolerance for grid refinement.
    #[arg(long)]
    tol: Option<f64>,
    /// Largest quadrature rule allowed.
    #[arg(long)]
    max_nodes: Option<usize>,
}

impl Limits {
    fn apply(&self, s: &mut Settings) {
        if let Some(t) = self.tol {
            s.refine_tol = t;
        }
        if let Some(n) = self.max_nodes {
            s.max_nodes = n;
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// nikolskii, sharpness, hausdorff-young, weyl, corollary, embeddings,
    /// wiener-chain or all.
    suite: Suite,
    /// Groups to run, comma separated.
    #[arg(long, value_delimiter = ',')]
    group: Vec<GroupId>,
    /// Dirichlet band limits for the sharpness suite; a single value also
    /// sets the corpus band limit.
    #[arg(long = "L", value_delimiter = ',', value_parser = number)]
    bandlimit: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = number)]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = number)]
    q: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = number)]
    r: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = number)]
    beta: Vec<f64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Corpus functions per group.
    #[arg(long)]
    count: Option<usize>,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    limits: Limits,
}

/// A number, with `inf` for infinity.
fn number(s: &str) -> Result<f64, String> {
    match s.trim() {
        "inf" => Ok(f64::INFINITY),
        t => t.parse().map_err(|_| format!("not a number: {t:?}")),
    }
}

impl VerifyArgs {
    fn config(&self) -> SuiteConfig {
        let mut c = SuiteConfig {
            seed: self.seed,
            ..SuiteConfig::default()
        };
        if !self.group.is_empty() {
            c.groups = self.group.clone();
        }
        if !self.bandlimit.is_empty() {
            c.sharpness_bands = self.bandlimit.clone();
            if let [l] = self.bandlimit[..] {
                c.bandlimit = Some(l);
            }
        }
        for (grid, given) in [
            (&mut c.p_grid, &self.p),
            (&mut c.q_grid, &self.q),
            (&mut c.r_grid, &self.r),
            (&mut c.beta_grid, &self.beta),
        ] {
            if !given.is_empty() {
                *grid = given.clone();
            }
        }
        if let Some(n) = self.count {
            c.corpus_count = n;
        }
        self.limits.apply(&mut c.settings);
        c
    }
}

impl Command {
    fn run_config(&self) -> RunConfig {
        let (run, out) = match self {
            Command::Dual { group, bandlimit } => (
                Run::Dual {
                    group: *group,
                    bandlimit: *bandlimit,
                },
                None,
            ),
            Command::Norm { input, spec, limits } => {
                let mut settings = Settings::default();
                limits.apply(&mut settings);
                (
                    Run::Norm {
                        input: input.clone(),
                        spec: *spec,
                        settings,
                    },
                    None,
                )
            }
            Command::Verify(v) => (
                Run::Verify {
                    suite: v.suite,
                    config: v.config(),
                },
                v.out.clone(),
            ),
            Command::Corpus {
                group,
                bandlimit,
                count,
                seed,
                profile,
                out,
            } => (
                Run::Corpus {
                    group: *group,
                    bandlimit: *bandlimit,
                    count: *count,
                    seed: *seed,
                    profile: *profile,
                },
                Some(out.clone()),
            ),
            Command::Dirichlet { group, bandlimit, out } => (
                Run::Dirichlet {
                    group: *group,
                    bandlimit: *bandlimit,
                },
                out.clone(),
            ),
        };
        RunConfig { run, out }
    }
}

fn group_slug(g: GroupId) -> String {
    g.to_string().replace(':', "")
}

fn execute(cfg: &RunConfig) -> lieharm::Result<ExitCode> {
    let stdout = io::stdout();
    let mut so = stdout.lock();
    match &cfg.run {
        Run::Dual { group, bandlimit } => {
            let reps = enumerate_dual(*group, *bandlimit)?;
            writeln!(so, "{:<16} {:>6} {:>14} {:>14}", "index", "d", "lambda", "<xi>")?;
            for xi in &reps {
                let info = rep_info(*group, xi)?;
                writeln!(
                    so,
                    "{:<16} {:>6} {:>14} {:>14.6}",
                    xi.to_string(),
                    info.dim,
                    info.casimir,
                    info.weight
                )?;
            }
            writeln!(so, "N({bandlimit}) = {}", weyl_count(*group, *bandlimit)?)?;
        }
        Run::Norm { input, spec, settings } => {
            let f = read_spectral(&fs::read_to_string(input)?)?;
            let v = norm(&f, spec, settings)?;
            writeln!(so, "norm: {spec}")?;
            writeln!(so, "value: {}", v.value)?;
            writeln!(so, "certification: {}", v.certification)?;
            writeln!(so, "nodes: {}", v.nodes)?;
        }
        Run::Verify { suite, config } => {
            let reports = run_suite(*suite, config)?;
            let mut buf = Vec::new();
            write_jsonl(&mut buf, &cfg.embedded(), &reports)?;
            match &cfg.out {
                Some(path) => output::write_atomic(path, &buf)?,
                None => so.write_all(&buf)?,
            }
            let rows = summarize(&reports);
            let mut table = String::new();
            table.push_str(&format!(
                "{:<12} {:>8} {:>8} {:>8}\n",
                "check", "total", "passed", "failed"
            ));
            for r in &rows {
                table.push_str(&format!(
                    "{:<12} {:>8} {:>8} {:>8}\n",
                    r.check, r.total, r.passed, r.failed
                ));
            }
            let failed: usize = rows.iter().map(|r| r.failed).sum();
            table.push_str(&format!("{} reports, {failed} failed\n", reports.len()));
            if cfg.out.is_some() {
                so.write_all(table.as_bytes())?;
            } else {
                eprint!("{table}");
            }
            return Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Run::Corpus {
            group,
            bandlimit,
            count,
            seed,
            profile,
        } => {
            let corpus = make_corpus(*group, *bandlimit, *count, *seed, *profile)?;
            let dir = cfg.out.as_deref().unwrap_or(Path::new("."));
            fs::create_dir_all(dir)?;
            for (i, f) in corpus.functions.iter().enumerate() {
                let name = format!("{}_{}_{i:04}.txt", group_slug(*group), profile);
                output::write_atomic(&dir.join(name), write_spectral(f).as_bytes())?;
            }
            let manifest = serde_json::to_string_pretty(&cfg.embedded()).map_err(io::Error::other)?;
            output::write_atomic(&dir.join("corpus.json"), manifest.as_bytes())?;
            writeln!(so, "wrote {} functions to {}", corpus.functions.len(), dir.display())?;
        }
        Run::Dirichlet { group, bandlimit } => {
            let text = write_spectral(&dirichlet(*group, *bandlimit)?);
            match &cfg.out {
                Some(path) => output::write_atomic(path, text.as_bytes())?,
                None => so.write_all(text.as_bytes())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        Error::ResourceCap { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.command.run_config();
    match execute(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
