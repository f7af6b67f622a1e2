//! Text format describing a representation.
//!
//! ```text
//! family jones_tl
//! n 5
//! q zeta 4 1
//! factor 3,2
//! ```
//!
//! `param`, `q` and `t` are synonyms. The `constant` family takes one
//! `row` line per matrix row, entries separated by `;`.

use super::families::{burau_reduced, constant_rep, jones_tl_rep};
use super::GenRep;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub family: String,
    pub strands: usize,
    pub parameter: Option<CycNumber>,
    pub factor: Option<(usize, usize)>,
    pub rows: Vec<Vec<CycNumber>>,
}

impl RepSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut strands = None;
        let mut parameter = None;
        let mut factor = None;
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::ParseError { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "family" => family = Some(rest.to_string()),
                "n" => strands = Some(rest.parse::<usize>().map_err(|_| err(format!("bad strand count '{}'", rest)))?),
                "param" | "q" | "t" => {
                    let v = rest.parse::<CycNumber>().map_err(|e| relabel(e, line_no))?;
                    parameter = Some(v);
                }
                "factor" => {
                    let (a, b) = rest.split_once(',').ok_or_else(|| err(format!("factor must be 'a,b', got '{}'", rest)))?;
                    let a = a.trim().parse().map_err(|_| err(format!("bad factor '{}'", rest)))?;
                    let b = b.trim().parse().map_err(|_| err(format!("bad factor '{}'", rest)))?;
                    factor = Some((a, b));
                }
                "row" => {
                    let row = rest
                        .split(';')
                        .map(|e| e.trim().parse::<CycNumber>().map_err(|e| relabel(e, line_no)))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
                other => return Err(err(format!("unknown key '{}'", other))),
            }
        }
        let family = family.ok_or(Error::ParseError { line: 0, msg: "missing 'family'".into() })?;
        let strands = strands.ok_or(Error::ParseError { line: 0, msg: "missing 'n'".into() })?;
        Ok(RepSpec { family, strands, parameter, factor, rows })
    }

    pub fn build(&self) -> Result<GenRep> {
        let need_param = || {
            self.parameter
                .clone()
                .ok_or_else(|| Error::InvalidParameter(format!("family '{}' needs a parameter", self.family)))
        };
        match self.family.as_str() {
            "constant" => {
                if self.rows.is_empty() {
                    return Err(Error::InvalidParameter("constant family needs 'row' lines".into()));
                }
                let m = CycMatrix::from_rows(self.rows.clone())?;
                if !m.is_square() {
                    return Err(Error::ShapeMismatch(format!("{}x{} constant image", m.rows(), m.cols())));
                }
                constant_rep(self.strands, Matrix::Exact(m))
            }
            "burau" => burau_reduced(self.strands, &need_param()?),
            "jones_tl" => {
                let factor = self
                    .factor
                    .ok_or_else(|| Error::InvalidParameter("jones_tl family needs a 'factor' line".into()))?;
                jones_tl_rep(self.strands, &need_param()?, factor)
            }
            other => Err(Error::InvalidParameter(format!("unknown family '{}'", other))),
        }
    }
}

fn relabel(e: Error, line: usize) -> Error {
    match e {
        Error::ParseError { msg, .. } => Error::ParseError { line, msg },
        other => other,
    }
}

pub fn parse_rep_spec(text: &str) -> Result<GenRep> {
    RepSpec::parse(text)?.build()
}
