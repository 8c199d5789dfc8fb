use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::check_exponent;
use crate::error::{Error, Result};

/// A norm family with its parameters.
///
/// Text form: `Lp:2`, `seq:inf`, `sobolev:r=1,p=2`, `besov:r=1.5,p=2,q=inf`,
/// `tl:r=0,p=2,q=2`, `wiener:beta=1`, `beurling:beta=2`,
/// `beurlingR:r=0.5,beta=2`. Infinity is spelled `inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormSpec {
    Lp { p: f64 },
    SeqLp { p: f64 },
    Sobolev { r: f64, p: f64 },
    Besov { r: f64, p: f64, q: f64 },
    TriebelLizorkin { r: f64, p: f64, q: f64 },
    Wiener { beta: f64 },
    Beurling { beta: f64 },
    BeurlingR { r: f64, beta: f64 },
}

impl NormSpec {
    pub fn family(&self) -> &'static str {
        match self {
            NormSpec::Lp { .. } => "Lp",
            NormSpec::SeqLp { .. } => "seq",
            NormSpec::Sobolev { .. } => "sobolev",
            NormSpec::Besov { .. } => "besov",
            NormSpec::TriebelLizorkin { .. } => "tl",
            NormSpec::Wiener { .. } => "wiener",
            NormSpec::Beurling { .. } => "beurling",
            NormSpec::BeurlingR { .. } => "beurlingR",
        }
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            NormSpec::Lp { p } | NormSpec::SeqLp { p } => vec![("p", p)],
            NormSpec::Sobolev { r, p } => vec![("r", r), ("p", p)],
            NormSpec::Besov { r, p, q } | NormSpec::TriebelLizorkin { r, p, q } => vec![("r", r), ("p", p), ("q", q)],
            NormSpec::Wiener { beta } | NormSpec::Beurling { beta } => vec![("beta", beta)],
            NormSpec::BeurlingR { r, beta } => vec![("r", r), ("beta", beta)],
        }
    }

    /// Range checks: exponents in `(0, inf]`, `r` finite, `p < inf` for
    /// Triebel-Lizorkin.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.params() {
            if name == "r" {
                if !v.is_finite() {
                    return Err(Error::InvalidParameter(format!("r must be finite, got {v}")));
                }
            } else {
                check_exponent(name, v)?;
            }
        }
        if let NormSpec::TriebelLizorkin { p, .. } = self {
            if p.is_infinite() {
                return Err(Error::InvalidParameter("Triebel-Lizorkin norm needs p < inf".into()));
            }
        }
        Ok(())
    }
}

fn parse_number(key: &str, s: &str) -> Result<f64> {
    let v: f64 = match s {
        "inf" => f64::INFINITY,
        "-inf" => f64::NEG_INFINITY,
        _ if s
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
            && !s.is_empty() =>
        {
            s.parse()
                .map_err(|_| Error::parse("norm-spec.number", format!("{key}={s} is not a number")))?
        }
        _ => return Err(Error::parse("norm-spec.number", format!("{key}={s} is not a number"))),
    };
    Ok(v)
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse("norm-spec", format!("expected FAMILY:PARAMS, got {s:?}")))?;
        let keys: &[&str] = match family {
            "Lp" | "seq" => &[],
            "sobolev" => &["r", "p"],
            "besov" | "tl" => &["r", "p", "q"],
            "wiener" | "beurling" => &["beta"],
            "beurlingR" => &["r", "beta"],
            _ => {
                return Err(Error::parse(
                    "norm-spec.family",
                    format!("unknown norm family {family:?}"),
                ))
            }
        };
        let mut vals = vec![None; keys.len()];
        if keys.is_empty() {
            let p = parse_number("p", rest)?;
            let spec = if family == "Lp" {
                NormSpec::Lp { p }
            } else {
                NormSpec::SeqLp { p }
            };
            spec.validate()?;
            return Ok(spec);
        }
        for item in rest.split(',') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::parse("norm-spec.param", format!("expected KEY=VALUE, got {item:?}")))?;
            let slot = keys
                .iter()
                .position(|&x| x == k)
                .ok_or_else(|| Error::parse("norm-spec.param", format!("{family} has no parameter {k:?}")))?;
            if vals[slot].is_some() {
                return Err(Error::parse("norm-spec.param", format!("parameter {k} given twice")));
            }
            vals[slot] = Some(parse_number(k, v)?);
        }
        if let Some(i) = vals.iter().position(Option::is_none) {
            return Err(Error::parse(
                "norm-spec.param",
                format!("{family} is missing {}", keys[i]),
            ));
        }
        let v: Vec<f64> = vals.into_iter().flatten().collect();
        let spec = match family {
            "sobolev" => NormSpec::Sobolev { r: v[0], p: v[1] },
            "besov" => NormSpec::Besov {
                r: v[0],
                p: v[1],
                q: v[2],
            },
            "tl" => NormSpec::TriebelLizorkin {
                r: v[0],
                p: v[1],
                q: v[2],
            },
            "wiener" => NormSpec::Wiener { beta: v[0] },
            "beurling" => NormSpec::Beurling { beta: v[0] },
            _ => NormSpec::BeurlingR { r: v[0], beta: v[1] },
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.family())?;
        match self {
            NormSpec::Lp { p } | NormSpec::SeqLp { p } => write!(f, "{p}"),
            _ => {
                let parts: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
