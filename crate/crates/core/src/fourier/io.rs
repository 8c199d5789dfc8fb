//! Text serialization of spectral functions.
//!
//! ```text
//! lieharm-spectral v1
//! group su2
//! rep 1/2 2 1 0 0 0 0 0 1 0
//! ```
//!
//! One `rep` line per stored coefficient in canonical order: index, dimension,
//! then the row-major entries as `re im` decimal pairs. Floats are written in
//! shortest round-trip form, so write/read is lossless.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::SpectralFunction;
use crate::error::{Error, Result};
use crate::groups::{GroupId, RepIndex};

pub const SPECTRAL_FORMAT_HEADER: &str = "lieharm-spectral v1";

pub fn write_spectral(f: &SpectralFunction) -> String {
    let mut out = String::new();
    writeln!(out, "{SPECTRAL_FORMAT_HEADER}").unwrap();
    writeln!(out, "group {}", f.group()).unwrap();
    for (k, c) in f.iter() {
        write!(out, "rep {} {}", k, k.dim()).unwrap();
        for r in 0..c.nrows() {
            for col in 0..c.ncols() {
                let z = c[(r, col)];
                write!(out, " {} {}", z.re, z.im).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

pub fn read_spectral(text: &str) -> Result<SpectralFunction> {
    const RULE_HEADER: &str = "file := header group-line rep-line*";
    const RULE_REP: &str = "rep-line := 'rep' index dim (re im){dim*dim}";
    let mut lines = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match lines.next() {
        Some(h) if h.trim() == SPECTRAL_FORMAT_HEADER => {}
        other => {
            return Err(Error::parse(
                RULE_HEADER,
                format!(
                    "expected header {SPECTRAL_FORMAT_HEADER:?}, found {:?}",
                    other.unwrap_or("")
                ),
            ))
        }
    }
    let group: GroupId = match lines.next().and_then(|l| l.trim().strip_prefix("group ")) {
        Some(g) => g.parse()?,
        None => return Err(Error::parse(RULE_HEADER, "missing 'group <id>' line")),
    };
    let mut f = SpectralFunction::zero(group);
    for line in lines {
        let mut tok = line.split_whitespace();
        if tok.next() != Some("rep") {
            return Err(Error::parse(RULE_REP, format!("unexpected line {line:?}")));
        }
        let idx = tok.next().ok_or_else(|| Error::parse(RULE_REP, "missing index"))?;
        let xi = RepIndex::parse_for(group, idx)?;
        let dim: usize = tok
            .next()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::parse(RULE_REP, format!("bad dimension in {line:?}")))?;
        if dim != xi.dim() {
            return Err(Error::ShapeMismatch {
                index: xi.to_string(),
                expected: xi.dim(),
                rows: dim,
                cols: dim,
            });
        }
        let nums: std::result::Result<Vec<f64>, _> = tok.map(|t| t.parse::<f64>()).collect();
        let nums = nums.map_err(|_| Error::parse(RULE_REP, format!("bad number in {line:?}")))?;
        if nums.len() != 2 * dim * dim {
            return Err(Error::parse(
                RULE_REP,
                format!(
                    "expected {} numbers for index {xi}, found {}",
                    2 * dim * dim,
                    nums.len()
                ),
            ));
        }
        let entries: Vec<Complex64> = nums.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect();
        f.insert(xi, DMatrix::from_row_slice(dim, dim, &entries))?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::dirichlet;

    #[test]
    fn dirichlet_text() {
        let d = dirichlet(GroupId::Torus(1), 2.0).unwrap();
        assert_eq!(
            write_spectral(&d),
            "lieharm-spectral v1\ngroup torus:1\nrep -1 1 1 0\nrep 0 1 1 0\nrep 1 1 1 0\n"
        );
        let s = write_spectral(&dirichlet(GroupId::Su2, 1.5).unwrap());
        assert_eq!(
            s,
            "lieharm-spectral v1\ngroup su2\nrep 0 1 1 0\nrep 1/2 2 1 0 0 0 0 0 1 0\n"
        );
        assert_eq!(read_spectral(&s).unwrap(), dirichlet(GroupId::Su2, 1.5).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(read_spectral("nope\n"), Err(Error::Parse { .. })));
        assert!(read_spectral("lieharm-spectral v1\ngroup torus:1\nrep 0 1 1\n").is_err());
        assert!(read_spectral("lieharm-spectral v1\ngroup su2\nrep 1/2 1 1 0\n").is_err());
        assert!(read_spectral("lieharm-spectral v1\ngroup torus:2\nrep 0 1 1 0\n").is_err());
    }
}
