//! Report records and their JSON, CSV and table encodings.
//!
//! Every record type serializes to JSON through serde and to CSV/table through
//! [`Record::row`]. Output order is whatever order the caller passes in;
//! batch reports arrive already sorted by `(claim_id, p)`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::claims::{
    AnomalyReport, IntegralityReport, ResidualValuation, Status, VerificationReport,
};
use crate::exact::fraction_string;
use crate::padic::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(format!(
                "unknown format {other:?}; expected json, csv or table"
            )),
        }
    }
}

pub trait Record: Serialize {
    fn headers() -> &'static [&'static str];
    fn row(&self) -> Vec<String>;
}

/// A valuation as it appears in output: an integer, `"inf"`, or `">=k"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationField(pub ResidualValuation);

impl Serialize for ValuationField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ResidualValuation::Exact(Valuation::Finite(v)) => s.serialize_i64(v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub claim_id: String,
    pub p: u64,
    pub modulus: String,
    pub lhs_residue: Option<String>,
    pub rhs_residue: Option<String>,
    pub residual_valuation: Option<ValuationField>,
    pub status: Status,
    pub conjecture: bool,
    pub elapsed_ms: f64,
}

impl ReportRecord {
    /// `elapsed_ms` is zeroed unless `timings` is set, keeping output reproducible.
    pub fn from_report(r: &VerificationReport, timings: bool) -> Self {
        ReportRecord {
            claim_id: r.claim_id.as_str().to_string(),
            p: r.p,
            modulus: r.modulus.to_string(),
            lhs_residue: r.lhs_residue.as_ref().map(ToString::to_string),
            rhs_residue: r.rhs_residue.as_ref().map(ToString::to_string),
            residual_valuation: r.residual_valuation.map(ValuationField),
            status: r.status,
            conjecture: r.conjecture,
            elapsed_ms: if timings {
                r.elapsed.as_secs_f64() * 1e3
            } else {
                0.0
            },
        }
    }
}

fn opt(s: &Option<String>) -> String {
    s.clone().unwrap_or_default()
}

impl Record for ReportRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "claim_id",
            "p",
            "modulus",
            "lhs_residue",
            "rhs_residue",
            "residual_valuation",
            "status",
            "conjecture",
            "elapsed_ms",
        ]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.claim_id.clone(),
            self.p.to_string(),
            self.modulus.clone(),
            opt(&self.lhs_residue),
            opt(&self.rhs_residue),
            self.residual_valuation
                .map(|v| v.0.to_string())
                .unwrap_or_default(),
            self.status.to_string(),
            self.conjecture.to_string(),
            format!("{:.3}", self.elapsed_ms),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnomalyRecord {
    pub claim_id: String,
    pub p: u64,
    pub modulus_exponent: u32,
    pub residual_valuation: ValuationField,
    pub status: Status,
    pub lhs_residue: Option<String>,
    pub rhs_residue: Option<String>,
    pub in_stated_domain: bool,
    pub in_verified_domain: bool,
}

impl From<&AnomalyReport> for AnomalyRecord {
    fn from(a: &AnomalyReport) -> Self {
        AnomalyRecord {
            claim_id: a.claim_id.as_str().to_string(),
            p: a.p,
            modulus_exponent: a.modulus_exponent,
            residual_valuation: ValuationField(ResidualValuation::Exact(a.residual_valuation)),
            status: a.status,
            lhs_residue: a.lhs_residue.map(|r| r.to_string()),
            rhs_residue: a.rhs_residue.map(|r| r.to_string()),
            in_stated_domain: a.in_stated_domain,
            in_verified_domain: a.in_verified_domain,
        }
    }
}

impl Record for AnomalyRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "claim_id",
            "p",
            "modulus_exponent",
            "residual_valuation",
            "status",
            "lhs_residue",
            "rhs_residue",
            "in_stated_domain",
            "in_verified_domain",
        ]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.claim_id.clone(),
            self.p.to_string(),
            self.modulus_exponent.to_string(),
            self.residual_valuation.0.to_string(),
            self.status.to_string(),
            opt(&self.lhs_residue),
            opt(&self.rhs_residue),
            self.in_stated_domain.to_string(),
            self.in_verified_domain.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegralityRecord {
    pub n: u64,
    pub value: String,
    pub denominator: String,
    pub two_n_plus_one_is_power_of_3: bool,
    pub conjecture_consistent: bool,
}

impl From<&IntegralityReport> for IntegralityRecord {
    fn from(r: &IntegralityReport) -> Self {
        IntegralityRecord {
            n: r.n,
            value: fraction_string(&r.value),
            denominator: r.denominator.to_string(),
            two_n_plus_one_is_power_of_3: crate::sequences::is_power_of_three(2 * r.n + 1),
            conjecture_consistent: r.conjecture_consistent,
        }
    }
}

impl Record for IntegralityRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "n",
            "value",
            "denominator",
            "two_n_plus_one_is_power_of_3",
            "conjecture_consistent",
        ]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.value.clone(),
            self.denominator.clone(),
            self.two_n_plus_one_is_power_of_3.to_string(),
            self.conjecture_consistent.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRecord {
    pub identity: &'static str,
    pub index: i64,
    pub lhs: String,
    pub rhs: String,
    /// Second right-hand form, where the identity has one.
    pub rhs_alt: Option<String>,
    pub holds: bool,
}

impl Record for IdentityRecord {
    fn headers() -> &'static [&'static str] {
        &["identity", "index", "lhs", "rhs", "rhs_alt", "holds"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.identity.to_string(),
            self.index.to_string(),
            self.lhs.clone(),
            self.rhs.clone(),
            opt(&self.rhs_alt),
            self.holds.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub pair: String,
    pub n_max: i64,
    pub k_max: i64,
    pub cells: u64,
    pub failures: usize,
    /// `"n,k: lhs != rhs"` for the first failing cell.
    pub first_failure: Option<String>,
    pub holds: bool,
}

impl Record for CertificateRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "pair",
            "n_max",
            "k_max",
            "cells",
            "failures",
            "first_failure",
            "holds",
        ]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.pair.clone(),
            self.n_max.to_string(),
            self.k_max.to_string(),
            self.cells.to_string(),
            self.failures.to_string(),
            opt(&self.first_failure),
            self.holds.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerRecord {
    pub n: usize,
    pub value: String,
    /// Set when the value is a residue modulo this prime.
    pub modulus: Option<u64>,
}

impl Record for EulerRecord {
    fn headers() -> &'static [&'static str] {
        &["n", "value", "modulus"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.value.clone(),
            self.modulus.map(|m| m.to_string()).unwrap_or_default(),
        ]
    }
}

pub fn render<R: Record>(records: &[R], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(records).expect("records serialize");
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(R::headers()).expect("in-memory write");
            for r in records {
                w.write_record(r.row()).expect("in-memory write");
            }
            w.into_inner().expect("flush to vec")
        }
        Format::Table => render_table(R::headers(), records.iter().map(Record::row)).into_bytes(),
    }
}

fn render_table(headers: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let rows: Vec<Vec<String>> = rows.collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let mut first = true;
        for (cell, w) in cells.zip(&widths) {
            if !first {
                out.push_str("  ");
            }
            first = false;
            let _ = write!(out, "{cell:<w$}");
        }
        let trimmed = out.trim_end().len();
        out.truncate(trimmed);
        out.push('\n');
    };
    line(&mut out, &mut headers.iter().copied());
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    line(&mut out, &mut rule.iter().map(String::as_str));
    for row in &rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}

/// Verification reports in the requested format.
pub fn serialize_report(reports: &[VerificationReport], format: Format, timings: bool) -> Vec<u8> {
    let records: Vec<ReportRecord> = reports
        .iter()
        .map(|r| ReportRecord::from_report(r, timings))
        .collect();
    render(&records, format)
}
