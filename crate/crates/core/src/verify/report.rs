//! Certification of every tabulated case and rendering of the results.

use std::fmt::Write as _;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::Rational;

use super::cases::{enumerate_cases, CaseSpec, CaseStatus};
use super::certify::{certify_case, CertifyError};
use super::reduce::{reduce_case, Elimination, ReduceError};
use super::systems::{displayed_systems, system, Reading, SystemId, SystemSpec};

/// Published bounds are reproduced to within this band (informational).
pub const PUBLISHED_BAND: f64 = 0.08;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("system {0} has no table")]
    NotTabulated(SystemId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    /// Replaces every row's box side when set.
    pub epsilon: Option<Rational>,
    /// Tabulated systems to run; empty means all.
    pub systems: Vec<SystemId>,
    /// Also run the literal readings of 1b, 1c and 1d (informational).
    pub displayed: bool,
    pub elimination: Elimination,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            epsilon: None,
            systems: Vec::new(),
            displayed: true,
            elimination: Elimination::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub system: String,
    pub reading: Reading,
    pub row: usize,
    pub active: [usize; 3],
    pub conditions: String,
    pub status: CaseStatus,
    pub epsilon: Option<Rational>,
    pub bound: Option<f64>,
    pub published_bound: Option<f64>,
    pub published_label: String,
    pub boxes_total: u64,
    pub boxes_feasible: u64,
}

impl ReportRow {
    pub fn informational(&self) -> bool {
        self.reading == Reading::Displayed
    }

    pub fn certified(&self) -> bool {
        self.bound.is_some_and(|b| b > 2.0)
    }

    pub fn within_band(&self) -> Option<bool> {
        match (self.bound, self.published_bound) {
            (Some(b), Some(p)) => Some((b - p).abs() <= PUBLISHED_BAND),
            _ => None,
        }
    }

    pub fn status_label(&self) -> String {
        let base = match (self.status, self.bound) {
            (CaseStatus::Analytic, _) => "analytic".to_string(),
            (_, Some(b)) if b > 2.0 => "certified".to_string(),
            (_, Some(_)) => "failed".to_string(),
            (_, None) => "skipped".to_string(),
        };
        let base = match self.status {
            CaseStatus::SameAs(other) => format!("{base} (as {other})"),
            _ => base,
        };
        if self.informational() {
            format!("info:{base}")
        } else {
            base
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub rows: Vec<ReportRow>,
    /// Rows of the literal readings; they never affect [`Self::all_certified`].
    pub displayed: Vec<ReportRow>,
}

impl CertificationReport {
    pub fn computed(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.status.is_computed())
    }

    pub fn failures(&self) -> Vec<&ReportRow> {
        self.computed().filter(|r| !r.certified()).collect()
    }

    pub fn all_certified(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn min_bound(&self) -> Option<f64> {
        self.computed().filter_map(|r| r.bound).min_by(f64::total_cmp)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("system,conditions,epsilon,bound,paper_bound,status\n");
        for r in self.rows.iter().chain(&self.displayed) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.system,
                r.conditions,
                r.epsilon.map(|e| decimal(&e)).unwrap_or_default(),
                r.bound.map(fmt_bound).unwrap_or_default(),
                r.published_bound.map(|b| format!("{b:.3}")).unwrap_or_default(),
                r.status_label(),
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut names: Vec<(String, Reading)> = Vec::new();
        for r in self.rows.iter().chain(&self.displayed) {
            if !names.iter().any(|(n, _)| *n == r.system) {
                names.push((r.system.clone(), r.reading));
            }
        }
        for (name, reading) in names {
            let rows: Vec<&ReportRow> = self
                .rows
                .iter()
                .chain(&self.displayed)
                .filter(|r| r.system == name)
                .collect();
            let spec = spec_for(&name, reading);
            let headers: Vec<String> = spec.conditions.iter().map(|c| c.label.clone()).collect();
            let widths: Vec<usize> = headers.iter().map(|h| h.len().max(3)).collect();
            let _ = writeln!(out, "System {name}");
            let mut line = String::new();
            for (h, w) in headers.iter().zip(&widths) {
                let _ = write!(line, "| {h:^w$} ");
            }
            let _ = writeln!(
                line,
                "| {:>6} | {:>10} | {:>12} | status",
                "eps", "bound", "published"
            );
            out.push_str(&line);
            out.push_str(&"-".repeat(line.trim_end().len()));
            out.push('\n');
            for r in rows {
                let mut line = String::new();
                for (i, w) in widths.iter().enumerate() {
                    let mark = if r.active.contains(&i) { "x" } else { "" };
                    let _ = write!(line, "| {mark:^w$} ");
                }
                let _ = writeln!(
                    line,
                    "| {:>6} | {:>10} | {:>12} | {}",
                    r.epsilon.map(|e| decimal(&e)).unwrap_or_default(),
                    r.bound.map(fmt_bound).unwrap_or_default(),
                    r.published_label,
                    r.status_label(),
                );
                out.push_str(&line);
            }
            out.push('\n');
        }
        let verdict = if self.all_certified() { "all cases certified" } else { "FAILED" };
        let _ = writeln!(
            out,
            "{} computed cases, minimum bound {}: {verdict}",
            self.computed().count(),
            self.min_bound().map(fmt_bound).unwrap_or_else(|| "-".into()),
        );
        for f in self.failures() {
            let _ = writeln!(out, "failed: system {} [{}]", f.system, f.conditions);
        }
        out
    }
}

fn spec_for(name: &str, reading: Reading) -> SystemSpec {
    let id: SystemId = name.trim_end_matches("-displayed").parse().expect("known system");
    match reading {
        Reading::Canonical => system(id),
        Reading::Displayed => displayed_systems()
            .into_iter()
            .find(|s| s.id == id)
            .expect("displayed reading"),
    }
}

fn fmt_bound(b: f64) -> String {
    if b.is_infinite() {
        "inf".into()
    } else {
        format!("{b:.4}")
    }
}

/// Terminating decimal expansion of `q`, or `p/q` when there is none.
pub fn decimal(q: &Rational) -> String {
    let mut d = *q.denom();
    let mut digits = 0;
    for p in [2, 5] {
        while d % p == 0 {
            d /= p;
        }
    }
    if d != 1 {
        return q.to_string();
    }
    let mut scaled = *q;
    while !scaled.is_integer() {
        scaled *= Rational::from_integer(10);
        digits += 1;
    }
    let n = scaled.to_integer();
    let sign = if n < 0 { "-" } else { "" };
    let n = n.unsigned_abs();
    if digits == 0 {
        return format!("{sign}{n}");
    }
    let p = 10u128.pow(digits);
    format!("{sign}{}.{:0>width$}", n / p, n % p, width = digits as usize)
}

fn run_row(
    spec: &SystemSpec,
    case: &CaseSpec,
    options: &ReportOptions,
) -> Result<ReportRow, ReportError> {
    let mut row = ReportRow {
        system: spec.name(),
        reading: spec.reading,
        row: case.row,
        active: case.active,
        conditions: case.conditions_label(spec),
        status: case.status,
        epsilon: None,
        bound: None,
        published_bound: case.published_bound,
        published_label: case.published_label.clone(),
        boxes_total: 0,
        boxes_feasible: 0,
    };
    if !case.status.is_computed() {
        return Ok(row);
    }
    let epsilon = options.epsilon.or(case.epsilon).filter(|e| !e.is_zero());
    let Some(epsilon) = epsilon else {
        return Ok(row);
    };
    let source = match (case.status, spec.reading) {
        (CaseStatus::SameAs(other), Reading::Canonical) => system(other),
        _ => spec.clone(),
    };
    let reduced = reduce_case(&source, &case.active, options.elimination)?;
    let cert = certify_case(&reduced, epsilon)?;
    row.epsilon = Some(epsilon);
    row.bound = Some(cert.bound);
    row.boxes_total = cert.boxes_total;
    row.boxes_feasible = cert.boxes_feasible;
    Ok(row)
}

/// Certifies every computed case of the selected systems.
pub fn full_report(options: &ReportOptions) -> Result<CertificationReport, ReportError> {
    let selected: Vec<SystemId> = if options.systems.is_empty() {
        SystemId::TABULATED.to_vec()
    } else {
        options.systems.clone()
    };
    let mut rows = Vec::new();
    for &id in &selected {
        if !SystemId::TABULATED.contains(&id) {
            return Err(ReportError::NotTabulated(id));
        }
        let spec = system(id);
        for case in enumerate_cases(id) {
            rows.push(run_row(&spec, &case, options)?);
        }
    }
    let mut displayed = Vec::new();
    if options.displayed {
        for spec in displayed_systems() {
            if !selected.contains(&spec.id) {
                continue;
            }
            for case in enumerate_cases(spec.id) {
                if case.status.is_computed() {
                    displayed.push(run_row(&spec, &case, options)?);
                }
            }
        }
    }
    Ok(CertificationReport { rows, displayed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 500)), "0.002");
        assert_eq!(decimal(&rat(1, 1000)), "0.001");
        assert_eq!(decimal(&int(3)), "3");
        assert_eq!(decimal(&rat(-5, 4)), "-1.25");
        assert_eq!(decimal(&rat(1, 3)), "1/3");
    }

    #[test]
    fn coarse_single_system_report() {
        let options = ReportOptions {
            epsilon: Some(rat(1, 50)),
            systems: vec![SystemId::S1e],
            displayed: false,
            ..ReportOptions::default()
        };
        let report = full_report(&options).unwrap();
        assert_eq!(report.rows.len(), 20);
        assert_eq!(report.computed().count(), 9);
        let csv = report.to_csv();
        assert!(csv.starts_with("system,conditions,epsilon,bound,paper_bound,status\n"));
        assert_eq!(csv.lines().count(), 21);
        assert!(report.to_text().contains("System 1e"));
    }
}
