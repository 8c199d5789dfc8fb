use std::path::PathBuf;

use lieharm::norms::NormSpec;
use lieharm::verify::{Profile, Suite, SuiteConfig};
use lieharm::{GroupId, Settings};
use serde::{Deserialize, Serialize};

/// Everything one invocation depends on. Re-running the same `RunConfig`
/// reproduces its output byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub run: Run,
    /// Not embedded in report headers, so that reports do not depend on
    /// where they were written.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Run {
    Dual {
        group: GroupId,
        bandlimit: f64,
    },
    Norm {
        input: PathBuf,
        spec: NormSpec,
        settings: Settings,
    },
    Verify {
        suite: Suite,
        config: SuiteConfig,
    },
    Corpus {
        group: GroupId,
        bandlimit: f64,
        count: usize,
        seed: u64,
        profile: Profile,
    },
    Dirichlet {
        group: GroupId,
        bandlimit: f64,
    },
}

impl RunConfig {
    /// The part written into report headers.
    pub fn embedded(&self) -> RunConfig {
        RunConfig {
            run: self.run.clone(),
            out: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let cfg = RunConfig {
            run: Run::Verify {
                suite: Suite::All,
                config: SuiteConfig::default(),
            },
            out: Some("r.jsonl".into()),
        };
        let j = serde_json::to_string(&cfg).unwrap();
        assert!(j.starts_with("{\"command\":\"verify\""));
        assert_eq!(serde_json::from_str::<RunConfig>(&j).unwrap(), cfg);
        assert!(!serde_json::to_string(&cfg.embedded()).unwrap().contains("r.jsonl"));
    }

    #[test]
    fn norm_spec_is_stored_as_text() {
        let cfg = RunConfig {
            run: Run::Norm {
                input: "f.txt".into(),
                spec: "besov:r=1.5,p=2,q=inf".parse().unwrap(),
                settings: Settings::default(),
            },
            out: None,
        };
        let j = serde_json::to_string(&cfg).unwrap();
        assert!(j.contains("\"spec\":\"besov:r=1.5,p=2,q=inf\""), "{j}");
        assert_eq!(serde_json::from_str::<RunConfig>(&j).unwrap(), cfg);
    }
}
