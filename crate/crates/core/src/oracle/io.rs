//! Edge-list and matrix CSV formats.
//!
//! Edge list: first line `n m`, then `m` lines `u v w` (0-based ids, decimal
//! weight). Blank lines and lines starting with `#` are skipped.
//!
//! Matrix CSV: one row per line, comma-separated decimals. A square symmetric
//! matrix is read as a Gram matrix directly; a feature matrix (`n × p`) is turned
//! into its Gram matrix of row inner products.

use std::io::{BufRead, Write};

use super::{GramInstance, MaxCutInstance};
use crate::error::{Error, Result};

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|r| match r {
            Ok((_, l)) => {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

fn parse<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::input(format!("line {line}: missing {what}")))?
        .parse()
        .map_err(|_| Error::input(format!("line {line}: cannot parse {what}")))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<MaxCutInstance> {
    let mut lines = content_lines(reader);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::input("edge list is empty"))??;
    let mut toks = header.split_whitespace();
    let n: usize = parse(toks.next(), hl, "vertex count n")?;
    let m: usize = parse(toks.next(), hl, "edge count m")?;
    let mut edges = Vec::with_capacity(m);
    for item in lines {
        let (ln, line) = item?;
        let mut toks = line.split_whitespace();
        let u: usize = parse(toks.next(), ln, "u")?;
        let v: usize = parse(toks.next(), ln, "v")?;
        let w: f64 = parse(toks.next(), ln, "w")?;
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(Error::input(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    MaxCutInstance::new(n, edges)
}

pub fn write_edge_list<W: Write>(graph: &MaxCutInstance, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", graph.n(), graph.edges().len())?;
    for &(u, v, w) in graph.edges() {
        writeln!(out, "{u} {v} {w}")?;
    }
    Ok(())
}

pub fn read_matrix_csv<R: BufRead>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for item in content_lines(reader) {
        let (ln, line) = item?;
        let row = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::input(format!("line {ln}: cannot parse '{}'", t.trim())))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Reads a Gram matrix, or a feature matrix when `features` is true.
pub fn read_gram_csv<R: BufRead>(reader: R, features: bool) -> Result<GramInstance> {
    let rows = read_matrix_csv(reader)?;
    if features {
        return GramInstance::from_features(&rows);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::input("gram CSV must be square; pass it as a feature matrix instead"));
    }
    GramInstance::new(n, rows.into_iter().flatten().collect())
}
