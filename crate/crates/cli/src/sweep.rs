use std::cmp::Ordering;

use rayon::prelude::*;
use toml::{Table as RawTable, Value};

use crate::commands::{execute, Command};
use crate::config::{is_known_key, RunConfig};
use crate::table::{Cell, Table};
use crate::CliError;

pub const MAX_AXES: usize = 3;
pub const MAX_POINTS: usize = 10_000;

/// One swept configuration key and its values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub key: String,
    pub values: Vec<f64>,
}

impl SweepAxis {
    /// Parses `section.key=v1,v2,...` or `section.key=start:stop:count`.
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let (key, rest) = spec.split_once('=').ok_or_else(|| CliError::invalid(spec, "axis must look like section.key=values"))?;
        let key = key.trim().to_string();
        if !is_known_key(&key) {
            return Err(CliError::invalid(&key, "unknown key"));
        }
        let bad = |v: &str| CliError::invalid(&key, format!("cannot read {v:?} as a number"));
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad(v));
        let values = if rest.contains(':') {
            let parts: Vec<&str> = rest.split(':').collect();
            let [a, b, n] = parts[..] else {
                return Err(CliError::invalid(&key, "a range must be start:stop:count"));
            };
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|_| bad(n))?;
            match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
            }
        } else {
            rest.split(',').map(num).collect::<Result<_, _>>()?
        };
        if values.is_empty() {
            return Err(CliError::invalid(&key, "axis has no values"));
        }
        Ok(Self { key, values })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub table: Table,
    /// Points that failed, with their exit code and message.
    pub failures: Table,
    pub worst: Option<CliError>,
}

fn point_config(base: &RawTable, axes: &[SweepAxis], point: &[f64]) -> Result<RunConfig, CliError> {
    let mut raw = base.clone();
    for (axis, &v) in axes.iter().zip(point) {
        let (section, key) = axis.key.split_once('.').expect("axis keys are section.key");
        let entry = raw.entry(section.to_string()).or_insert_with(|| Value::Table(RawTable::new()));
        let Value::Table(t) = entry else {
            return Err(CliError::invalid(section, "is not a section"));
        };
        let integer = matches!(t.get(key), Some(Value::Integer(_))) || key.ends_with("_samples") || key.ends_with("_points") || key == "steps";
        let value = if integer && v.fract() == 0.0 { Value::Integer(v as i64) } else { Value::Float(v) };
        t.insert(key.to_string(), value);
    }
    RunConfig::from_table(&raw)
}

fn compare(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Runs the Cartesian product of the axes with at most `workers` threads.
/// Rows are sorted by axis values, so the output does not depend on the
/// scheduling.
pub fn sweep(base: &RawTable, cmd: Command, axes: &[SweepAxis], workers: usize) -> Result<SweepResult, CliError> {
    if axes.is_empty() || axes.len() > MAX_AXES {
        return Err(CliError::invalid("sweep", format!("between 1 and {MAX_AXES} axes are supported, got {}", axes.len())));
    }
    let total = axes.iter().try_fold(1usize, |n, a| n.checked_mul(a.values.len())).unwrap_or(usize::MAX);
    if total > MAX_POINTS {
        return Err(CliError::invalid("sweep", format!("{total} points exceed the limit of {MAX_POINTS}")));
    }
    let mut points: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        points = points.iter().flat_map(|p| axis.values.iter().map(move |&v| [p.as_slice(), &[v]].concat())).collect();
    }
    points.sort_by(|a, b| compare(a, b));
    points.dedup();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        points
            .par_iter()
            .map(|p| point_config(base, axes, p).and_then(|cfg| execute(cmd, &cfg)))
            .collect()
    });

    let axis_names: Vec<&str> = axes.iter().map(|a| a.key.as_str()).collect();
    let mut failures = Table::new(&format!("sweep_{}_failures", cmd.name()), &[axis_names.as_slice(), &["exit_code", "message"]].concat());
    let mut worst: Option<CliError> = None;
    let mut ok = Vec::new();
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(out) => ok.push((p.clone(), out)),
            Err(e) => {
                let mut row: Vec<Cell> = p.iter().map(|&v| v.into()).collect();
                row.push(Cell::Int(e.exit_code() as i64));
                row.push(e.to_string().into());
                failures.push(row);
                if worst.as_ref().map_or(true, |w| e.exit_code() > w.exit_code()) {
                    worst = Some(e);
                }
            }
        }
    }

    let summary_header: Vec<String> = ok.first().map(|(_, o)| o.summary.header.clone()).unwrap_or_default();
    let residual = ok.first().and_then(|(_, o)| o.residual);
    let eps_axis = axes.iter().position(|a| a.key == "atom.epsilon");
    let ratio = residual.is_some() && eps_axis.is_some();
    let mut header: Vec<String> = axis_names.iter().map(|s| s.to_string()).collect();
    header.extend(summary_header);
    if ratio {
        header.push("richardson_ratio".into());
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = Table::new(&format!("sweep_{}", cmd.name()), &header_refs);
    let residual_of = |o: &crate::commands::Output| residual.and_then(|r| o.summary.value(0, r));
    for (p, out) in &ok {
        let mut row: Vec<Cell> = p.iter().map(|&v| v.into()).collect();
        row.extend(out.summary.rows[0].iter().cloned());
        if ratio {
            let e = eps_axis.expect("epsilon axis");
            let partner = ok.iter().find(|(q, _)| {
                q.iter().enumerate().all(|(i, &v)| if i == e { (v - p[e] / 2.0).abs() <= 1e-12 * p[e].abs() } else { v == p[i] })
            });
            let cell = match (residual_of(out), partner.and_then(|(_, o)| residual_of(o))) {
                (Some(full), Some(half)) if half != 0.0 => Cell::Float(full.abs() / half.abs()),
                _ => Cell::Empty,
            };
            row.push(cell);
        }
        table.push(row);
    }
    Ok(SweepResult { table, failures, worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_forms() {
        assert_eq!(SweepAxis::parse("atom.epsilon=1e-3,5e-4").unwrap().values, vec![1e-3, 5e-4]);
        assert_eq!(SweepAxis::parse("beam.rayleigh_length_m=1:3:3").unwrap().values, vec![1.0, 2.0, 3.0]);
        assert!(SweepAxis::parse("atom.eps=1").is_err());
        assert!(SweepAxis::parse("atom.epsilon=x").is_err());
    }
}
