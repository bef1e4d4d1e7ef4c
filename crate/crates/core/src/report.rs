//! Result records and their CSV / JSON-lines renderings.
//!
//! Output contracts: CSV columns are stable per command (weight coordinates
//! first, then the value columns); JSON-lines records keep a fixed key
//! order. Both renderings are byte-identical across runs and across
//! `--parallel` settings (rows are ordered by the window enumeration, never
//! by completion order).

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Row {
    Describe { weight: Vec<String>, dim: usize },
    Cohomology { weight: Vec<String>, degree: usize, dim: usize },
    Dirac { weight: Vec<String>, dim_plus: usize, dim_minus: usize },
    Index { weight: Vec<String>, value: i64 },
    Pair { ep: i64, method: String, audit: Vec<String> },
    Verify {
        ep: i64,
        index_pair: i64,
        equal: bool,
        method: String,
        audit: Vec<String>,
        notes: Vec<String>,
    },
}

#[derive(Clone, Debug)]
pub struct Records {
    pub command: crate::config::CommandName,
    pub rank: usize,
    pub rows: Vec<Row>,
}

fn weight_header(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("w{i}")).collect()
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders records in the requested format; byte-stable.
pub fn emit_report(records: &Records, format: Format) -> String {
    match format {
        Format::Jsonl => {
            let mut out = String::new();
            for row in &records.rows {
                out.push_str(&serde_json::to_string(row).expect("row serializes"));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            use crate::config::CommandName as C;
            let mut cols = weight_header(records.rank);
            match records.command {
                C::Describe => cols.push("dim".into()),
                C::Cohomology => {
                    cols.push("degree".into());
                    cols.push("dim".into());
                }
                C::Dirac => {
                    cols.push("dim_plus".into());
                    cols.push("dim_minus".into());
                }
                C::Index => cols.push("value".into()),
                C::Pair => cols = vec!["ep".into(), "method".into()],
                C::Verify => {
                    cols = vec!["ep".into(), "index_pair".into(), "equal".into(), "method".into()]
                }
            }
            let mut out = cols.join(",");
            out.push('\n');
            for row in &records.rows {
                let cells: Vec<String> = match row {
                    Row::Describe { weight, dim } => {
                        let mut c: Vec<String> = weight.clone();
                        c.push(dim.to_string());
                        c
                    }
                    Row::Cohomology { weight, degree, dim } => {
                        let mut c: Vec<String> = weight.clone();
                        c.push(degree.to_string());
                        c.push(dim.to_string());
                        c
                    }
                    Row::Dirac { weight, dim_plus, dim_minus } => {
                        let mut c: Vec<String> = weight.clone();
                        c.push(dim_plus.to_string());
                        c.push(dim_minus.to_string());
                        c
                    }
                    Row::Index { weight, value } => {
                        let mut c: Vec<String> = weight.clone();
                        c.push(value.to_string());
                        c
                    }
                    Row::Pair { ep, method, .. } => vec![ep.to_string(), method.clone()],
                    Row::Verify { ep, index_pair, equal, method, .. } => vec![
                        ep.to_string(),
                        index_pair.to_string(),
                        equal.to_string(),
                        method.clone(),
                    ],
                };
                out.push_str(&cells.iter().map(|c| csv_quote(c)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CommandName;

    #[test]
    fn jsonl_dirac_record_shape() {
        let records = Records {
            command: CommandName::Dirac,
            rank: 1,
            rows: vec![Row::Dirac { weight: vec!["-1".into()], dim_plus: 1, dim_minus: 0 }],
        };
        let s = emit_report(&records, Format::Jsonl);
        assert_eq!(s, "{\"weight\":[\"-1\"],\"dim_plus\":1,\"dim_minus\":0}\n");
    }

    #[test]
    fn csv_headers() {
        let records = Records { command: CommandName::Index, rank: 2, rows: vec![] };
        let s = emit_report(&records, Format::Csv);
        assert_eq!(s, "w1,w2,value\n");
        let records = Records { command: CommandName::Dirac, rank: 1, rows: vec![] };
        assert_eq!(emit_report(&records, Format::Csv), "w1,dim_plus,dim_minus\n");
        // empty record set: header only (csv) / zero lines (jsonl)
        assert_eq!(emit_report(&records, Format::Jsonl), "");
    }

    #[test]
    fn format_parse() {
        assert!(Format::parse("csv").is_ok());
        assert!(Format::parse("jsonl").is_ok());
        assert!(matches!(Format::parse("yaml"), Err(Error::UnknownFormat(_))));
    }
}
