//! Verification reports on the wire, the human table, and merging.

use parahk::numcheck::{CheckResult, VerificationReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Residuals that are not finite (a failed evaluation) are written as `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub name: String,
    pub samples: u64,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub suite: String,
    pub samples: u64,
    pub seed: u64,
    pub step: f64,
    pub max_residual: Option<f64>,
    pub pass: bool,
    pub per_check: Vec<CheckJson>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn residual(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::INFINITY)
}

impl From<&CheckResult> for CheckJson {
    fn from(c: &CheckResult) -> Self {
        Self {
            name: c.name.clone(),
            samples: c.samples as u64,
            max_residual: finite(c.max_residual),
            tolerance: c.tolerance,
            pass: c.pass,
        }
    }
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        Self {
            suite: r.suite.clone(),
            samples: r.samples as u64,
            seed: r.seed,
            step: r.step,
            max_residual: finite(r.max_residual),
            pass: r.pass(),
            per_check: r.checks.iter().map(CheckJson::from).collect(),
        }
    }
}

impl ReportJson {
    /// Recomputes pass flags and the maximum from the per-check data.
    pub fn normalized(mut self) -> Self {
        for c in &mut self.per_check {
            c.pass = residual(c.max_residual) <= c.tolerance;
        }
        self.pass = self.per_check.iter().all(|c| c.pass);
        let max = self.per_check.iter().map(|c| residual(c.max_residual)).fold(0.0, f64::max);
        self.max_residual = finite(max);
        self
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {}  samples {}  seed {}  step {:e}",
            self.suite, self.samples, self.seed, self.step
        );
        let width = self.per_check.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(s, "{:width$}  {:>12}  {:>9}  status", "check", "max residual", "tolerance");
        for c in &self.per_check {
            let r = c.max_residual.map_or("non-finite".to_string(), |r| format!("{r:.3e}"));
            let status = if c.pass { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{:width$}  {:>12}  {:>9.1e}  {status}", c.name, r, c.tolerance);
        }
        let failed = self.per_check.iter().filter(|c| !c.pass).count();
        let _ = writeln!(s, "{} checks, {failed} failed", self.per_check.len());
        s
    }
}

/// Merges reports into one. Checks with the same name keep the worst
/// residual and the tightest tolerance; `samples` is the smallest count
/// any input ran with; seed and step come from the first report.
pub fn merge(reports: Vec<ReportJson>) -> Option<ReportJson> {
    let mut it = reports.into_iter();
    let mut out = it.next()?;
    let mut suites = vec![out.suite.clone()];
    for r in it {
        suites.push(r.suite.clone());
        out.samples = out.samples.min(r.samples);
        for c in r.per_check {
            match out.per_check.iter_mut().find(|o| o.name == c.name) {
                Some(o) => {
                    if residual(c.max_residual) > residual(o.max_residual) {
                        o.max_residual = c.max_residual;
                    }
                    o.tolerance = o.tolerance.min(c.tolerance);
                    o.samples = o.samples.min(c.samples);
                }
                None => out.per_check.push(c),
            }
        }
    }
    out.suite = suites.join("+");
    Some(out.normalized())
}
