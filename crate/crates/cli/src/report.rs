//! Machine-readable reports. Polynomial coefficients and counts serialize
//! as decimal strings so they survive any JSON consumer; field order is
//! fixed by the struct definitions, which keeps byte-identical output for
//! identical configurations.

use std::collections::BTreeMap;

use nicolai::PoincarePolynomial;
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn coefficient_strings(p: &PoincarePolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// One generating-function computation; the shape published in
/// `schema/report.schema.json`.
#[derive(Serialize, Debug)]
pub struct PolyReport {
    pub version: String,
    pub model: String,
    pub size: u32,
    pub method: String,
    pub methods_run: Vec<String>,
    pub field: String,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub coefficients: Vec<String>,
    pub count: String,
    pub palindromic: bool,
    pub unverified_above_brute_cap: bool,
    /// Milliseconds per executed method; `null` unless `--timings` is set,
    /// so default output stays byte-reproducible.
    pub timings: Option<BTreeMap<String, u64>>,
}

impl PolyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "model={} size={} method={}\n",
            self.model, self.size, self.method
        ));
        out.push_str(&format!("coefficients = [{}]\n", self.coefficients.join(", ")));
        out.push_str(&format!("count = {}\n", self.count));
        let mut provenance = format!("methods run: {}", self.methods_run.join(", "));
        if self.unverified_above_brute_cap {
            provenance.push_str(" (unverified: above brute-force cap)");
        }
        out.push_str(&provenance);
        out.push('\n');
        out.push_str(&format!("field = {} seed = {}", self.field, self.seed));
        if !self.primes.is_empty() {
            let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
            out.push_str(&format!(" primes = {}", primes.join(",")));
        }
        out.push('\n');
        if let Some(timings) = &self.timings {
            for (method, ms) in timings {
                out.push_str(&format!("time[{method}] = {ms} ms\n"));
            }
        }
        out
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}\n",
            self.model,
            self.size,
            self.method,
            self.count,
            self.coefficients.join(" ")
        )
    }
}

pub const POLY_CSV_HEADER: &str = "model,size,method,count,coefficients\n";

/// Per-size outcome of a verification run.
#[derive(Serialize, Debug)]
pub struct VerifyRow {
    pub size: u32,
    pub pass: bool,
    /// Reference coefficients (from the recursion).
    pub coefficients: Vec<String>,
    pub count: String,
    /// Route name -> "match", "mismatch", or "skipped: <reason>".
    pub comparisons: BTreeMap<String, String>,
    pub count_consistent: bool,
    pub euler_zero: bool,
    pub palindromic: bool,
}

#[derive(Serialize, Debug)]
pub struct VerifySummary {
    pub version: String,
    pub model: String,
    pub field: String,
    pub seed: u64,
    pub sizes: Vec<VerifyRow>,
    pub all_passed: bool,
    /// Every comparison that was skipped, spelled out; a run with skips can
    /// still pass but never silently.
    pub skips: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct TableRow {
    pub size: u32,
    pub count: String,
    pub coefficients: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct TableReport {
    pub version: String,
    pub model: String,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,count,coefficients\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                row.size,
                row.count,
                row.coefficients.join(" ")
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&format!(
                "{} {:<24} [{}]\n",
                row.size,
                row.count,
                row.coefficients.join(", ")
            ));
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
