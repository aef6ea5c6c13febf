//! Results of identity checks.

use serde::{Deserialize, Serialize};

use crate::series::{BiSeries, Coefficient, UniSeries};

/// The first coefficient at which an identity fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailingCoefficient {
    /// Exponents of the failing monomial: `[n]` for series in one variable,
    /// `[i, j]` for series in `x, y`.
    pub powers: Vec<usize>,
    /// The nonzero residual coefficient.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub name: String,
    /// Truncation order through which the identity was checked.
    pub order: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailingCoefficient>,
    /// Absolute residual for numeric checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerifyReport {
    pub fn pass(name: impl Into<String>, order: usize) -> Self {
        VerifyReport {
            name: name.into(),
            order,
            passed: true,
            first_failure: None,
            residual: None,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, order: usize, detail: impl Into<String>) -> Self {
        VerifyReport {
            passed: false,
            detail: Some(detail.into()),
            ..VerifyReport::pass(name, order)
        }
    }

    /// Passes iff the residual series is zero through its order.
    pub fn from_uni_residual<C: Coefficient>(
        name: impl Into<String>,
        residual: &UniSeries<C>,
    ) -> Self {
        let mut report = VerifyReport::pass(name, residual.order());
        if let Some(n) = residual.valuation() {
            report.passed = false;
            report.first_failure = Some(FailingCoefficient {
                powers: vec![n],
                residual: residual.coeff(n).to_string(),
            });
        }
        report
    }

    pub fn from_bi_residual<C: Coefficient>(
        name: impl Into<String>,
        residual: &BiSeries<C>,
    ) -> Self {
        let mut report = VerifyReport::pass(name, residual.order());
        if let Some(((i, j), c)) = residual.first_nonzero() {
            report.passed = false;
            report.first_failure = Some(FailingCoefficient {
                powers: vec![i, j],
                residual: c.to_string(),
            });
        }
        report
    }

    /// Combines several sub-checks into one report named `name`; the order is
    /// the largest sub-check order. Failures carry the sub-check name in
    /// `detail`.
    pub fn combine(name: impl Into<String>, parts: Vec<VerifyReport>) -> Self {
        let order = parts.iter().map(|r| r.order).max().unwrap_or(0);
        match parts.into_iter().find(|r| !r.passed) {
            None => VerifyReport::pass(name, order),
            Some(failed) => VerifyReport {
                name: name.into(),
                order,
                passed: false,
                detail: Some(match failed.detail {
                    Some(d) => format!("{}: {d}", failed.name),
                    None => failed.name.clone(),
                }),
                first_failure: failed.first_failure,
                residual: failed.residual,
            },
        }
    }

    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}
