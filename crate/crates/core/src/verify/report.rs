use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Identifies the report stream; bumped when fields change meaning.
pub const REPORT_FORMAT: &str = "lieharm-report";
pub const REPORT_VERSION: u32 = 1;

/// How `lhs` and `rhs` are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `ratio <= 1 + tol`.
    Le,
    /// `|ratio - 1| <= tol`.
    Eq,
    /// Both sides finite; used where only a constant-free embedding is claimed.
    Finite,
}

/// Support size of `T^rho` and how it moves with the threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportInfo {
    pub rho: u32,
    pub threshold: f64,
    /// `sum d^2` over the support at `threshold`.
    pub count: u64,
    /// Count at `threshold / 10`.
    pub count_tight: u64,
    /// Count at `threshold * 10`.
    pub count_loose: u64,
    /// Whether the verdict is the same at all three thresholds.
    pub verdict_stable: bool,
}

/// Parameters of one checked instance. Unused fields are omitted on output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_num")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_num")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_num")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_num")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_num")]
    pub beta: Option<f64>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none", with = "opt_num")]
    pub bandlimit: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Instance {
    pub fn new(group: impl ToString) -> Self {
        Instance {
            group: group.to_string(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub instance: Instance,
    pub relation: Relation,
    #[serde(with = "num")]
    pub lhs: f64,
    #[serde(with = "num")]
    pub rhs: f64,
    #[serde(with = "num")]
    pub ratio: f64,
    pub holds: bool,
    pub tol: f64,
    pub notes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<SupportInfo>,
}

impl InequalityReport {
    pub fn new(name: impl Into<String>, instance: Instance, relation: Relation, lhs: f64, rhs: f64, tol: f64) -> Self {
        let ratio = ratio(lhs, rhs);
        let holds = match relation {
            Relation::Le => ratio <= 1.0 + tol,
            Relation::Eq => (ratio - 1.0).abs() <= tol,
            Relation::Finite => lhs.is_finite() && rhs.is_finite() && ratio.is_finite(),
        };
        InequalityReport {
            name: name.into(),
            instance,
            relation,
            lhs,
            rhs,
            ratio,
            holds,
            tol,
            notes: String::new(),
            support: None,
        }
    }

    pub fn le(name: impl Into<String>, instance: Instance, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, instance, Relation::Le, lhs, rhs, tol)
    }

    pub fn eq(name: impl Into<String>, instance: Instance, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, instance, Relation::Eq, lhs, rhs, tol)
    }

    pub fn finite(name: impl Into<String>, instance: Instance, lhs: f64, rhs: f64) -> Self {
        Self::new(name, instance, Relation::Finite, lhs, rhs, 0.0)
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    /// Part of the name before the first `/`, used to group the summary.
    pub fn check(&self) -> &str {
        self.name.split('/').next().unwrap_or(&self.name)
    }
}

/// `lhs / rhs`, with `0 / 0 = 1`.
pub(crate) fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 && rhs == 0.0 {
        1.0
    } else {
        lhs / rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub check: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Pass/fail counts per name prefix, sorted by prefix.
pub fn summarize(reports: &[InequalityReport]) -> Vec<SummaryRow> {
    let mut map: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let e = map.entry(r.check()).or_default();
        e.0 += 1;
        if r.holds {
            e.1 += 1;
        }
    }
    map.into_iter()
        .map(|(t, (total, passed))| SummaryRow {
            check: t.to_string(),
            total,
            passed,
            failed: total - passed,
        })
        .collect()
}

#[derive(Serialize)]
struct Header<'a, C: Serialize> {
    kind: &'static str,
    format: &'static str,
    version: u32,
    artifact: String,
    config: &'a C,
    conventions: &'static str,
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    kind: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

pub(crate) const CONVENTIONS: &str = "embedding X -> Y is checked as ratio ||f||_Y / ||f||_X: finite on corpora, \
log-log slope <= 0.1 along scaling families; sup norms are exact when identity-pinned, grid lower bounds otherwise";

/// Writes the report stream: a header line with `config`, one line per
/// report, then one summary line per name prefix.
pub fn write_jsonl<C: Serialize>(out: &mut impl Write, config: &C, reports: &[InequalityReport]) -> Result<()> {
    let header = Header {
        kind: "header",
        format: REPORT_FORMAT,
        version: REPORT_VERSION,
        artifact: format!("lieharm {}", env!("CARGO_PKG_VERSION")),
        config,
        conventions: CONVENTIONS,
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string(&header).map_err(std::io::Error::other)?
    )?;
    for r in reports {
        let line = serde_json::to_string(&Tagged {
            kind: "inequality",
            body: r,
        })
        .map_err(std::io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    for s in summarize(reports) {
        let line = serde_json::to_string(&Tagged {
            kind: "summary",
            body: &s,
        })
        .map_err(std::io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Finite floats as JSON numbers, the rest as `"inf"`, `"-inf"` or `"nan"`.
pub(crate) mod num {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(super) enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub(super) fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(E::custom(format!("bad number {t:?}"))),
            },
        }
    }
}

pub(crate) mod opt_num {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::num::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<super::num::Repr>::deserialize(d)?
            .map(super::num::from_repr)
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_follows_relation() {
        let i = Instance::new("torus:1");
        assert!(InequalityReport::le("a/b", i.clone(), 1.0, 1.0, 0.0).holds);
        assert!(!InequalityReport::le("a/b", i.clone(), 1.1, 1.0, 0.05).holds);
        assert!(InequalityReport::le("a/b", i.clone(), 0.5, 1.0, 0.0).holds);
        assert!(!InequalityReport::eq("a/b", i.clone(), 0.5, 1.0, 1e-9).holds);
        assert!(InequalityReport::eq("a/b", i.clone(), 0.0, 0.0, 1e-9).holds);
        assert!(!InequalityReport::finite("a/b", i.clone(), f64::INFINITY, 1.0).holds);
        assert!(!InequalityReport::finite("a/b", i, 1.0, 0.0).holds);
    }

    #[test]
    fn infinite_parameters_serialize_as_text() {
        let mut i = Instance::new("su2");
        i.q = Some(f64::INFINITY);
        i.p = Some(2.0);
        let r = InequalityReport::le("nikolskii/support", i, 3.0, 3.0, 1e-9);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"q\":\"inf\""), "{s}");
        assert!(!s.contains("\"r\""));
        let back: InequalityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn summary_groups_by_prefix() {
        let i = Instance::new("torus:1");
        let reps = vec![
            InequalityReport::le("nikolskii/a", i.clone(), 1.0, 2.0, 0.0),
            InequalityReport::le("nikolskii/b", i.clone(), 3.0, 2.0, 0.0),
            InequalityReport::eq("weyl/slope", i, 1.0, 1.0, 0.05),
        ];
        let s = summarize(&reps);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].check.as_str(), s[0].total, s[0].failed), ("nikolskii", 2, 1));
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &"cfg", &reps).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 3 + 2);
        assert!(text.lines().next().unwrap().contains("\"format\":\"lieharm-report\""));
    }
}
