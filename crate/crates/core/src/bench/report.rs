//! Trial and summary CSV output.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::TrialRecord;
use crate::error::{Error, Result};

pub const TRIALS_HEADER: &str = "algorithm,n,k,eps,t,seed,value,value_queries,independence_calls,wall_ms";

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::input(format!("csv: {other:?}")),
    }
}

/// Writes trial rows under [`TRIALS_HEADER`]. Failed trials have `NaN` values.
pub fn write_trials_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    if records.is_empty() {
        w.write_record(TRIALS_HEADER.split(',')).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-`(algorithm, k)` statistics over successful trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub k: usize,
    pub trials: usize,
    pub mean_value: f64,
    pub std_value: f64,
    pub mean_queries: f64,
    pub std_queries: f64,
    /// `mean_value` divided by StandardGreedy's mean at the same `k`.
    pub normalized_value: Option<f64>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups rows by `(algorithm, k)` in first-appearance order; standard
/// deviations use the `n − 1` denominator.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut order: Vec<(String, usize)> = Vec::new();
    let mut groups: BTreeMap<(String, usize), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.error.is_none()) {
        let key = (r.algorithm.clone(), r.k);
        let entry = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (Vec::new(), Vec::new())
        });
        entry.0.push(r.value);
        entry.1.push(r.value_queries as f64);
    }
    let mut rows: Vec<SummaryRow> = order
        .into_iter()
        .map(|key| {
            let (values, queries) = &groups[&key];
            let (mean_value, std_value) = mean_std(values);
            let (mean_queries, std_queries) = mean_std(queries);
            SummaryRow {
                algorithm: key.0,
                k: key.1,
                trials: values.len(),
                mean_value,
                std_value,
                mean_queries,
                std_queries,
                normalized_value: None,
            }
        })
        .collect();
    let baseline: BTreeMap<usize, f64> = rows
        .iter()
        .filter(|r| r.algorithm == super::Algorithm::StandardGreedy.id())
        .map(|r| (r.k, r.mean_value))
        .collect();
    for r in &mut rows {
        r.normalized_value = baseline.get(&r.k).filter(|b| **b != 0.0).map(|b| r.mean_value / b);
    }
    rows
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(alg: &str, k: usize, value: f64, queries: u64) -> TrialRecord {
        TrialRecord {
            algorithm: alg.into(),
            n: 10,
            k,
            eps: 0.1,
            t: 0.372,
            seed: 1,
            value,
            value_queries: queries,
            independence_calls: 0,
            wall_ms: 1.5,
            solution: vec![],
            certified: true,
            error: None,
        }
    }

    #[test]
    fn trials_csv_has_fixed_header() {
        let mut buf = Vec::new();
        write_trials_csv(&[record("fastls", 3, 2.5, 7)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(TRIALS_HEADER));
        assert_eq!(lines.next(), Some("fastls,10,3,0.1,0.372,1,2.5,7,0,1.5"));
        let mut buf = Vec::new();
        write_trials_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim_end(), TRIALS_HEADER);
    }

    #[test]
    fn summary_statistics_and_normalization() {
        let rows = summarize(&[
            record("standard-greedy", 2, 4.0, 10),
            record("standard-greedy", 2, 4.0, 10),
            record("fastls-guidedrg", 2, 4.0, 20),
            record("fastls-guidedrg", 2, 6.0, 30),
        ]);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].mean_value, 5.0);
        assert!((rows[1].std_value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(rows[1].normalized_value, Some(1.25));
        assert_eq!(rows[0].std_value, 0.0);
        let mut buf = Vec::new();
        write_summary_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "algorithm,k,trials,mean_value,std_value,mean_queries,std_queries,normalized_value\n"
        ));
    }
}
