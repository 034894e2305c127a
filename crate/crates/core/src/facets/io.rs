//! Plain-text facet files.
//!
//! ```text
//! # words: XX XY YX YY
//! 1 -1 -1 0 0
//! ```
//!
//! The header names the Pauli words; every following line is one facet with
//! the constant first and then one integer coefficient per word.

use std::io::{BufRead, Write};

use super::dd::{Hull, ProjectedFacet};
use super::FacetInequality;
use crate::error::{Error, Result};
use crate::pauli::{all_words, PauliWord};

const HEADER: &str = "# words:";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetFile {
    pub words: Vec<PauliWord>,
    /// Constant first, then coefficients in `words` order.
    pub rows: Vec<Vec<i64>>,
}

impl FacetFile {
    pub fn from_hull(hull: &Hull) -> Self {
        let rows = hull
            .facets
            .iter()
            .map(|f| std::iter::once(f.constant).chain(f.coeffs.iter().copied()).collect())
            .collect();
        Self { words: hull.labels.clone(), rows }
    }

    /// Full-space qubit facets; the identity coefficient becomes the constant.
    pub fn from_facets(n: usize, facets: &[FacetInequality]) -> Result<Self> {
        let words: Vec<PauliWord> = all_words(n).into_iter().skip(1).collect();
        let rows = facets
            .iter()
            .map(|f| {
                f.coefficients()
                    .map(|c| c.to_vec())
                    .filter(|c| c.len() == words.len() + 1)
                    .ok_or_else(|| Error::Unsupported("facet without matching Pauli coefficients".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Self { words, rows })
    }

    pub fn projected_facets(&self) -> Vec<ProjectedFacet> {
        self.rows.iter().map(|r| ProjectedFacet { constant: r[0], coeffs: r[1..].to_vec() }).collect()
    }

    pub fn inequalities(&self) -> Result<Vec<FacetInequality>> {
        self.projected_facets().iter().map(|f| f.to_inequality(&self.words)).collect()
    }
}

pub fn write_facet_file<W: Write>(mut out: W, file: &FacetFile) -> Result<()> {
    let names: Vec<String> = file.words.iter().map(|w| w.to_string()).collect();
    writeln!(out, "{HEADER} {}", names.join(" "))?;
    for row in &file.rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", cells.join(" "))?;
    }
    Ok(())
}

pub fn read_facet_file<R: BufRead>(input: R) -> Result<FacetFile> {
    let mut lines = input.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((i, line)) => {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                break (i + 1, line);
            }
            None => return Err(Error::Parse { line: 0, msg: "empty facet file".into() }),
        }
    };
    let rest = header
        .1
        .strip_prefix(HEADER)
        .ok_or_else(|| Error::Parse { line: header.0, msg: format!("expected header starting with '{HEADER}'") })?;
    let words = rest
        .split_whitespace()
        .map(|w| w.parse::<PauliWord>())
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Parse { line: header.0, msg: e.to_string() })?;
    if words.is_empty() {
        return Err(Error::Parse { line: header.0, msg: "header names no words".into() });
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let row = t
            .split_whitespace()
            .map(|x| x.parse::<i64>().map_err(|e| Error::Parse { line: i + 1, msg: format!("'{x}': {e}") }))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != words.len() + 1 {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {} integers, found {}", words.len() + 1, row.len()),
            });
        }
        rows.push(row);
    }
    Ok(FacetFile { words, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_byte_exact() {
        let file = FacetFile {
            words: vec!["XX".parse().unwrap(), "YY".parse().unwrap()],
            rows: vec![vec![1, -1, 0], vec![2, 1, -1]],
        };
        let mut buf = Vec::new();
        write_facet_file(&mut buf, &file).unwrap();
        let back = read_facet_file(buf.as_slice()).unwrap();
        assert_eq!(back, file);
        let mut again = Vec::new();
        write_facet_file(&mut again, &back).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn malformed_input() {
        assert!(read_facet_file("".as_bytes()).is_err());
        assert!(read_facet_file("1 2 3\n".as_bytes()).is_err());
        let err = read_facet_file("# words: XX YY\n1 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(read_facet_file("# words: XQ\n".as_bytes()).is_err());
        assert!(read_facet_file("# words: X\n1 a\n".as_bytes()).is_err());
    }
}
