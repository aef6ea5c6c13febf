//! Registry of the exact identity checks.
//!
//! A [`VerifyContext`] builds the canonical series and the `G`-side bundle
//! once; each named check then reads from it. Checks are independent of each
//! other, so callers may run them in parallel.

use crate::buchstaber::{self, CanonicalSeries};
use crate::elliptic::{self, AdditionLawBundle, P2Form};
use crate::error::SeriesError;
use crate::params::Params;
use crate::poly::GradedPoly;
use crate::report::VerifyReport;

/// Default order for univariate identities.
pub const DEFAULT_UNI_ORDER: usize = 12;
/// Default total degree for bivariate identities.
pub const DEFAULT_BI_ORDER: usize = 10;

/// Every check, sorted by name.
pub const CHECK_NAMES: &[&str] = &[
    "a-lemma",
    "b-coefficients",
    "b-ode",
    "b-r-bridge",
    "euler",
    "f-fgl",
    "g-grading",
    "g-log-additivity",
    "g-theorem",
    "grading",
    "hoehn",
    "jacobi",
    "logf-via-logg",
    "ochanine",
    "sn-addition",
    "strict-iso",
    "xi",
];

/// Deliberate corruption of `B`, for exercising the failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negate the `x^2` coefficient of `B`.
    FlipB2Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub uni_order: usize,
    pub bi_order: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            uni_order: DEFAULT_UNI_ORDER,
            bi_order: DEFAULT_BI_ORDER,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyContext {
    pub config: VerifyConfig,
    pub canonical: CanonicalSeries,
    pub bundle: AdditionLawBundle,
}

fn apply_fault(
    params: &Params,
    order: usize,
    fault: Fault,
) -> Result<CanonicalSeries, SeriesError> {
    let r = buchstaber::build_r(params, order);
    let mut b = buchstaber::build_b(params, order);
    match fault {
        Fault::FlipB2Sign => {
            let flipped: GradedPoly = -&b.coeff(2);
            b.set_coeff(2, flipped);
        }
    }
    CanonicalSeries::from_b(params, r, b)
}

impl VerifyContext {
    pub fn build(config: VerifyConfig) -> Result<Self, SeriesError> {
        let params = Params::generic();
        let order = (config.uni_order + 2).max(config.bi_order + 4);
        let canonical = match config.fault {
            None => CanonicalSeries::build(&params, order)?,
            Some(f) => apply_fault(&params, order, f)?,
        };
        let bundle = AdditionLawBundle::from_canonical(
            canonical.clone(),
            config.bi_order,
            P2Form::Expanded,
        )?;
        Ok(VerifyContext {
            config,
            canonical,
            bundle,
        })
    }

    /// Runs one named check. Errors inside a check (for example an inexact
    /// division caused by a fault) are reported as failures.
    pub fn run(&self, name: &str) -> Option<VerifyReport> {
        let n = self.config.uni_order;
        let m = self.config.bi_order;
        let cs = &self.canonical;
        let result = match name {
            "a-lemma" => buchstaber::check_a_lemma(cs, n),
            "b-coefficients" => Ok(buchstaber::check_b_coefficients(cs)),
            "b-ode" => buchstaber::check_b_ode(cs, n),
            "b-r-bridge" => buchstaber::check_b_r_bridge(cs, n - 1),
            "euler" => elliptic::check_euler(m),
            "f-fgl" => buchstaber::check_f_fgl(cs, m),
            "g-grading" => Ok(elliptic::check_g_grading(&self.bundle)),
            "g-log-additivity" => elliptic::check_g_log_additivity(&self.bundle),
            "g-theorem" => Ok(elliptic::check_g_theorem(&self.bundle)),
            "grading" => buchstaber::check_grading(cs, m),
            "hoehn" => buchstaber::check_hoehn(cs, n),
            "jacobi" => elliptic::check_jacobi(n, n),
            "logf-via-logg" => buchstaber::check_log_f_via_log_g(cs, n),
            "ochanine" => elliptic::check_ochanine(m),
            "sn-addition" => elliptic::check_sn_addition(&self.bundle),
            "strict-iso" => elliptic::check_strict_iso(&self.bundle),
            "xi" => buchstaber::check_xi(cs, n - 1),
            _ => return None,
        };
        let mut report = result.unwrap_or_else(|e| VerifyReport::fail(name, n, e.to_string()));
        report.name = name.to_string();
        Some(report)
    }
}
