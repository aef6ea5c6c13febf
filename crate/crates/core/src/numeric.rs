//! Floating-point confirmation of the addition theorem.
//!
//! The integral `I(x) = int_0^x dt / R(t)` is computed by adaptive
//! Gauss-Kronrod quadrature and compared with `G(x, y)` evaluated from its
//! series: `I(x) + I(y) = I(G(x, y))`.

use crate::elliptic::{build_log_g_sn, fgl_from_log};
use crate::error::NumericError;
use crate::report::VerifyReport;
use crate::series::{BiSeries, UniSeries};

/// `R(t)^2` must stay at or above this value along the integration path.
pub const DOMAIN_FLOOR: f64 = 1e-9;

/// Smallest accepted quadrature tolerance.
pub const MIN_TOLERANCE: f64 = 1e-13;

/// Evaluation budget for one integral.
pub const MAX_EVALUATIONS: usize = 200_000;

/// Numeric values of `p1..p4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl ParamPoint {
    pub fn new(p1: f64, p2: f64, p3: f64, p4: f64) -> Self {
        ParamPoint { p1, p2, p3, p4 }
    }

    /// `p = (0, -(1 + k^2), 0, k^2)`, so `R(t)^2 = (1 - t^2)(1 - k^2 t^2)`.
    pub fn jacobi(k: f64) -> Self {
        let k2 = k * k;
        ParamPoint::new(0.0, -(1.0 + k2), 0.0, k2)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p1, self.p2, self.p3, self.p4]
    }

    /// `1 + p1 t + p2 t^2 + p3 t^3 + p4 t^4`.
    pub fn quartic_at(&self, t: f64) -> f64 {
        1.0 + t * (self.p1 + t * (self.p2 + t * (self.p3 + t * self.p4)))
    }

    pub fn quartic_series(&self, order: usize) -> UniSeries<f64> {
        UniSeries::from_coeffs(vec![1.0, self.p1, self.p2, self.p3, self.p4], order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1]. Odd-indexed Kronrod
// nodes are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss-Kronrod panel: `(kronrod, |kronrod - gauss|)`.
fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64), NumericError>
where
    F: FnMut(f64) -> Result<f64, NumericError>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let sum = f(c - h * x)? + f(c + h * x)?;
        kronrod += w * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Ok((kronrod * h, ((kronrod - gauss) * h).abs()))
}

/// Adaptive quadrature of `f` over `[a, b]` by interval halving.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult, NumericError>
where
    F: FnMut(f64) -> Result<f64, NumericError>,
{
    if tol < MIN_TOLERANCE {
        return Err(NumericError::ToleranceTooSmall(tol));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            est_error: 0.0,
            evaluations: 0,
        });
    }
    const PANEL: usize = 15;
    let total = (b - a).abs();
    let mut evaluations = 0usize;
    let mut value = 0.0;
    let mut est_error = 0.0;
    let mut stack = vec![(a, b)];
    while let Some((lo, hi)) = stack.pop() {
        if evaluations + PANEL > MAX_EVALUATIONS {
            return Err(NumericError::NoConvergence {
                evaluations,
                estimate: est_error,
            });
        }
        let (v, e) = gk15(&mut f, lo, hi)?;
        evaluations += PANEL;
        let share = tol * (hi - lo).abs() / total;
        // Panels at floating-point resolution are accepted as they are.
        let tiny = (hi - lo).abs() <= 1e-12 * total;
        if e <= share || tiny {
            value += v;
            est_error += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    if est_error > tol {
        return Err(NumericError::NoConvergence {
            evaluations,
            estimate: est_error,
        });
    }
    Ok(QuadResult {
        value,
        est_error,
        evaluations,
    })
}

/// Composite 7-point Gauss-Legendre rule with `panels` equal panels.
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    const XG: [f64; 4] = [XGK[1], XGK[3], XGK[5], 0.0];
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + width * i as f64;
            let c = lo + 0.5 * width;
            let h = 0.5 * width;
            let mut s = WG[3] * f(c);
            for k in 0..3 {
                s += WG[k] * (f(c - h * XG[k]) + f(c + h * XG[k]));
            }
            s * h
        })
        .sum()
}

fn checked_integrand(p: &ParamPoint) -> impl Fn(f64) -> Result<f64, NumericError> + '_ {
    move |t| {
        let q = p.quartic_at(t);
        if q.is_nan() || q < DOMAIN_FLOOR {
            return Err(NumericError::Domain { t, value: q });
        }
        Ok(1.0 / q.sqrt())
    }
}

/// `int_0^x dt / R(t)` with the positive branch of the root.
pub fn elliptic_integral(p: &ParamPoint, x: f64, tol: f64) -> Result<QuadResult, NumericError> {
    let integrand = checked_integrand(p);
    // A quartic can dip below the floor between quadrature nodes; scan the
    // path first.
    const SCAN: usize = 512;
    for i in 0..=SCAN {
        integrand(x * i as f64 / SCAN as f64)?;
    }
    integrate_adaptive(integrand, 0.0, x, tol)
}

/// Order and radius guard for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub order: usize,
    pub radius: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            order: 16,
            radius: 0.05,
        }
    }
}

impl SeriesConfig {
    pub fn new(order: usize, radius: f64) -> Self {
        SeriesConfig { order, radius }
    }
}

/// `G` from the logarithm with coefficients evaluated at `p`.
pub fn g_series_numeric(p: &ParamPoint, order: usize) -> Result<BiSeries<f64>, NumericError> {
    let (log_g, sn) = build_log_g_sn(&p.quartic_series(order))?;
    Ok(fgl_from_log(&log_g, &sn, order)?)
}

fn guard(name: &'static str, value: f64, radius: f64) -> Result<(), NumericError> {
    if value.abs() > radius {
        Err(NumericError::RadiusGuard {
            name,
            value,
            radius,
        })
    } else {
        Ok(())
    }
}

/// Horner evaluation of the truncated series of `G` at `(x, y)`.
pub fn eval_g_numeric(
    p: &ParamPoint,
    x: f64,
    y: f64,
    cfg: &SeriesConfig,
) -> Result<f64, NumericError> {
    guard("x", x, cfg.radius)?;
    guard("y", y, cfg.radius)?;
    Ok(g_series_numeric(p, cfg.order)?.eval(&x, &y))
}

/// Quantities reported by [`addition_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditionResult {
    pub ix: f64,
    pub iy: f64,
    pub g: f64,
    pub ig: f64,
    pub residual: f64,
}

/// Quadrature tolerance used for each integral of an addition check with
/// residual tolerance `tol`.
pub fn quad_tolerance(tol: f64) -> f64 {
    (tol * 1e-2).max(MIN_TOLERANCE)
}

/// `|I(x) + I(y) - I(G(x, y))|`.
pub fn addition_residual(
    p: &ParamPoint,
    x: f64,
    y: f64,
    tol: f64,
    cfg: &SeriesConfig,
) -> Result<AdditionResult, NumericError> {
    let qtol = quad_tolerance(tol);
    let ix = elliptic_integral(p, x, qtol)?.value;
    let iy = elliptic_integral(p, y, qtol)?.value;
    let g = eval_g_numeric(p, x, y, cfg)?;
    let ig = elliptic_integral(p, g, qtol)?.value;
    Ok(AdditionResult {
        ix,
        iy,
        g,
        ig,
        residual: (ix + iy - ig).abs(),
    })
}

pub fn addition_check(
    p: &ParamPoint,
    x: f64,
    y: f64,
    tol: f64,
    cfg: &SeriesConfig,
) -> Result<VerifyReport, NumericError> {
    let res = addition_residual(p, x, y, tol, cfg)?;
    let name = "numeric-addition";
    let report = if res.residual <= tol {
        VerifyReport::pass(name, cfg.order)
    } else {
        VerifyReport::fail(
            name,
            cfg.order,
            format!("residual {:e} > {tol:e}", res.residual),
        )
    };
    Ok(report.with_residual(res.residual))
}

/// Jacobi sine by inverting `u = int_0^x dt / sqrt((1 - t^2)(1 - k^2 t^2))`.
///
/// Newton steps on `I(x) - u` (the derivative is `1/R(x)`), safeguarded by a
/// bisection bracket. For `0 <= x < 1` one has `I(x) >= x`, so the root lies
/// in `[0, u]`.
pub fn sn_reference(k: f64, u: f64, tol: f64) -> Result<f64, NumericError> {
    if !(0.0..1.0).contains(&k) {
        return Err(NumericError::Modulus(k));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    if u < 0.0 {
        return sn_reference(k, -u, tol).map(|v| -v);
    }
    let p = ParamPoint::jacobi(k);
    let qtol = (tol * 1e-2).max(MIN_TOLERANCE);
    let (mut lo, mut hi) = (0.0f64, u.min(1.0 - 1e-6));
    let i_hi = elliptic_integral(&p, hi, qtol)?.value;
    if i_hi < u {
        return Err(NumericError::RootNotBracketed);
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = elliptic_integral(&p, x, qtol)?.value - u;
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = fx * p.quartic_at(x).sqrt();
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= tol || hi - lo <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(NumericError::RootNotBracketed)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINE: ParamPoint = ParamPoint {
        p1: 0.0,
        p2: -1.0,
        p3: 0.0,
        p4: 0.0,
    };

    #[test]
    fn arcsin_values() {
        let r = elliptic_integral(&SINE, 0.3, 1e-13).unwrap();
        assert!((r.value - 0.3f64.asin()).abs() < 1e-13);
        assert!((r.value - 0.304692654).abs() < 1e-9);
        assert!(r.est_error <= 1e-13);
        let r = elliptic_integral(&SINE, 0.4, 1e-13).unwrap();
        assert!((r.value - 0.411516846).abs() < 1e-9);
        let generic = ParamPoint::new(0.3, -0.7, 0.11, 0.2);
        assert_eq!(elliptic_integral(&generic, 0.0, 1e-10).unwrap().value, 0.0);
        // Odd integrand direction: negative upper limit.
        let r = elliptic_integral(&SINE, -0.3, 1e-12).unwrap();
        assert!((r.value + 0.3f64.asin()).abs() < 1e-12);
    }

    #[test]
    fn domain_and_tolerance_errors() {
        let lemniscate = ParamPoint::new(0.0, 0.0, 0.0, -1.0);
        assert!(matches!(
            elliptic_integral(&lemniscate, 2.0, 1e-10),
            Err(NumericError::Domain { .. })
        ));
        assert!(matches!(
            elliptic_integral(&SINE, 0.3, 1e-15),
            Err(NumericError::ToleranceTooSmall(_))
        ));
    }

    #[test]
    fn fixed_rule_converges_at_high_order() {
        let exact = 0.5f64.asin();
        let f = |t: f64| 1.0 / (1.0 - t * t).sqrt();
        let errs: Vec<f64> = [1, 2]
            .iter()
            .map(|&n| (integrate_fixed(f, 0.0, 0.5, n) - exact).abs())
            .collect();
        assert!(errs[0] < 1e-7, "{errs:?}");
        // Order 14: halving the panel width gains roughly 2^14.
        assert!(errs[0] / errs[1] > 1000.0, "{errs:?}");
    }

    #[test]
    fn g_series_examples() {
        let p = ParamPoint::new(0.3, -0.7, 0.11, 0.2);
        let cfg = SeriesConfig::default();
        assert!((eval_g_numeric(&p, 0.04, 0.0, &cfg).unwrap() - 0.04).abs() < 1e-16);
        let a = eval_g_numeric(&p, 0.03, 0.01, &cfg).unwrap();
        let b = eval_g_numeric(&p, 0.01, 0.03, &cfg).unwrap();
        assert!((a - b).abs() < 1e-16);
        let (x, y) = (0.03f64, 0.04f64);
        let g = eval_g_numeric(&SINE, x, y, &cfg).unwrap();
        let closed = x * (1.0 - y * y).sqrt() + y * (1.0 - x * x).sqrt();
        assert!((g - closed).abs() < 1e-12);
        assert!(matches!(
            eval_g_numeric(&p, 0.3, 0.0, &cfg),
            Err(NumericError::RadiusGuard { .. })
        ));
    }

    #[test]
    fn addition_examples() {
        let sine_cfg = SeriesConfig::new(40, 0.5);
        let r = addition_check(&SINE, 0.3, 0.4, 1e-9, &sine_cfg).unwrap();
        assert!(r.passed, "{r:?}");
        let r = addition_check(&SINE, 0.0, 0.0, 1e-9, &sine_cfg).unwrap();
        assert_eq!(r.residual, Some(0.0));
        let p = ParamPoint::new(0.3, -0.7, 0.11, 0.2);
        let r = addition_check(&p, 0.02, 0.02, 1e-8, &SeriesConfig::default()).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn sn_reference_examples() {
        for u in [0.1, 0.5, 0.9] {
            assert!((sn_reference(0.0, u, 1e-12).unwrap() - f64::sin(u)).abs() < 1e-11);
        }
        assert_eq!(sn_reference(0.5, 0.0, 1e-12).unwrap(), 0.0);
        assert!(matches!(
            sn_reference(1.0, 0.1, 1e-12),
            Err(NumericError::Modulus(_))
        ));
    }

    #[test]
    fn sn_series_matches_reference() {
        let k = 0.5f64;
        let (_, sn) = build_log_g_sn(&ParamPoint::jacobi(k).quartic_series(16)).unwrap();
        let u = 0.05;
        let series = sn.eval(&u);
        let reference = sn_reference(k, u, 1e-14).unwrap();
        assert!(
            (series - reference).abs() < 1e-10,
            "{series} vs {reference}"
        );
    }
}
