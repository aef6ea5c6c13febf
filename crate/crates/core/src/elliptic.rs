//! The general elliptic integral `u = int_0^x dt / R(t)`, its inversion `SN`
//! and the formal group law `G` with `log_G = int dt / R(t)`.
//!
//! `G` is built two ways: from the logarithm, `G = SN(log_G(x) + log_G(y))`,
//! and from the closed addition formula
//!
//! ```text
//! G = mu(P1 + sigma P1 + nu(x) nu(y) (P2 - sigma P2) / (2 (P3 - sigma P3)))
//! ```
//!
//! where `sigma` swaps `x` and `y`.

use crate::buchstaber::{bi_grading_report, uni_grading_report, CanonicalSeries};
use crate::error::SeriesError;
use crate::params::Params;
use crate::poly::{GradedPoly, Rational, Var};
use crate::report::VerifyReport;
use crate::series::{BiSeries, Coefficient, UniSeries, Variable};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `(log_G, SN)` from the quartic under the root, both at the quartic's
/// order.
pub fn build_log_g_sn<C: Coefficient>(
    quartic: &UniSeries<C>,
) -> Result<(UniSeries<C>, UniSeries<C>), SeriesError> {
    let n = quartic.order();
    let log_g = quartic.sqrt()?.inverse()?.integrate().truncate(n)?;
    let sn = log_g.revert()?;
    Ok((log_g, sn))
}

/// `l^{-1}(l(x) + l(y))` through total degree `order`.
pub fn fgl_from_log<C: Coefficient>(
    log: &UniSeries<C>,
    exp: &UniSeries<C>,
    order: usize,
) -> Result<BiSeries<C>, SeriesError> {
    let log = log.truncate(order)?;
    let sum = &BiSeries::from_uni(&log, Variable::X) + &BiSeries::from_uni(&log, Variable::Y);
    sum.compose_into(&exp.truncate(order)?)
}

/// Which expression to use for `P2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P2Form {
    /// `-nu(x) (nu'(y) R(y) (R'(y) - R'(0)) + R(y)^2 nu''(y))`, the
    /// expression obtained by expanding `A(nu(x))` and collecting the
    /// antisymmetric remainder.
    Expanded,
    /// `-nu(x) nu'(y) (R(y) (R'(y) - R'(0)) - nu(x) R(y)^2 nu''(y))`, the
    /// form usually quoted with the addition formula. It does not reproduce
    /// `G`; kept as a negative control.
    Quoted,
}

/// The three auxiliary series of the addition formula.
#[derive(Debug, Clone)]
pub struct PSeries {
    pub p1: BiSeries,
    pub p2: BiSeries,
    pub p3: BiSeries,
}

/// `P1 = P3 = nu(x) R(y) nu'(y)` and `P2` in the chosen form, through total
/// degree `order - 2` where `order` is the common order of `r` and `nu`.
pub fn build_p_series(r: &UniSeries, nu: &UniSeries, form: P2Form) -> Result<PSeries, SeriesError> {
    let n = r.order().min(nu.order());
    if n < 2 {
        return Err(SeriesError::OrderTooHigh {
            requested: 2,
            available: n,
        });
    }
    let out = n - 2;
    let y = |s: &UniSeries| BiSeries::from_uni(s, Variable::Y);
    let nu_x = BiSeries::from_uni(nu, Variable::X);
    let dnu = nu.derive();
    let ddnu = dnu.derive();
    let dr = r.derive();
    let dr0 = dr.coeff(0);
    let (r_y, dnu_y, ddnu_y) = (y(r), y(&dnu), y(&ddnu));
    let dr_shift_y = y(&(&dr - &UniSeries::constant(dr0, dr.order())));
    let r2_y = &r_y * &r_y;

    // P1 and P3 are the same expression; both are kept so that a change to
    // one of them is visible.
    let p1 = &(&nu_x * &r_y) * &dnu_y;
    let p3 = &(&nu_x * &r_y) * &dnu_y;
    let p2 = match form {
        P2Form::Expanded => {
            let inner = &(&(&dnu_y * &r_y) * &dr_shift_y) + &(&r2_y * &ddnu_y);
            -&(&nu_x * &inner)
        }
        P2Form::Quoted => {
            let inner = &(&r_y * &dr_shift_y) - &(&(&nu_x * &r2_y) * &ddnu_y);
            -&(&(&nu_x * &dnu_y) * &inner)
        }
    };
    Ok(PSeries {
        p1: p1.truncate(out)?,
        p2: p2.truncate(out)?,
        p3: p3.truncate(out)?,
    })
}

/// Assembles `G` from the `P` series. `mu` and `nu` must reach at least the
/// order of the `P` series; the result has order `order(P) - 1`.
pub fn assemble_g(ps: &PSeries, mu: &UniSeries, nu: &UniSeries) -> Result<BiSeries, SeriesError> {
    let m = ps.p1.order();
    let q = (&ps.p2 - &ps.p2.swap()).antisym_div(&(&ps.p3 - &ps.p3.swap()))?;
    let nu = nu.truncate(m)?;
    let nn = &BiSeries::from_uni(&nu, Variable::X) * &BiSeries::from_uni(&nu, Variable::Y);
    let w = &(&ps.p1 + &ps.p1.swap()) + &(&nn * &q).scale(&rat(1, 2));
    w.compose_into(&mu.truncate(m - 1)?)
}

/// Everything on the `G` side at a common total order.
#[derive(Debug, Clone)]
pub struct AdditionLawBundle {
    pub canonical: CanonicalSeries,
    pub log_g: UniSeries,
    pub sn: UniSeries,
    pub g_via_exp: BiSeries,
    pub g_via_theorem: BiSeries,
    pub p: PSeries,
}

impl AdditionLawBundle {
    /// Builds `G` both ways through total degree `order`. The addition
    /// formula consumes two derivatives of `nu` and one degree in the
    /// division by `x - y`, so it runs on univariate series of order
    /// `order + 4` and is truncated afterwards.
    pub fn build(params: &Params, order: usize) -> Result<Self, SeriesError> {
        let canonical = CanonicalSeries::build(params, order + 4)?;
        Self::from_canonical(canonical, order, P2Form::Expanded)
    }

    pub fn from_canonical(
        canonical: CanonicalSeries,
        order: usize,
        form: P2Form,
    ) -> Result<Self, SeriesError> {
        let (log_g, sn) = build_log_g_sn(&canonical.params.quartic(order))?;
        let g_via_exp = fgl_from_log(&log_g, &sn, order)?;
        let p = build_p_series(&canonical.r, &canonical.nu, form)?;
        let g_via_theorem = assemble_g(&p, &canonical.mu, &canonical.nu)?.truncate(order)?;
        Ok(AdditionLawBundle {
            canonical,
            log_g,
            sn,
            g_via_exp,
            g_via_theorem,
            p,
        })
    }

    pub fn order(&self) -> usize {
        self.g_via_exp.order()
    }
}

/// `G` from the addition formula equals `G` from the logarithm, and
/// `P1 = P3`.
pub fn check_g_theorem(bundle: &AdditionLawBundle) -> VerifyReport {
    let m = bundle.order().min(bundle.p.p1.order());
    VerifyReport::combine(
        "g-theorem",
        vec![
            VerifyReport::from_bi_residual(
                "P1 = P3",
                &(&bundle.p.p1 - &bundle.p.p3).truncate(m).unwrap(),
            ),
            VerifyReport::from_bi_residual(
                "G addition formula = G from log",
                &(&bundle.g_via_theorem - &bundle.g_via_exp),
            ),
        ],
    )
}

/// `log_G(G(x, y)) = log_G(x) + log_G(y)` for both constructions of `G`.
pub fn check_g_log_additivity(bundle: &AdditionLawBundle) -> Result<VerifyReport, SeriesError> {
    let n = bundle.order();
    let log = bundle.log_g.truncate(n)?;
    let rhs = &BiSeries::from_uni(&log, Variable::X) + &BiSeries::from_uni(&log, Variable::Y);
    let mut parts = Vec::new();
    for (name, g) in [
        ("G from log", &bundle.g_via_exp),
        ("G addition formula", &bundle.g_via_theorem),
    ] {
        let lhs = g.compose_into(&log)?;
        parts.push(VerifyReport::from_bi_residual(name, &(&lhs - &rhs)));
    }
    parts.push(VerifyReport::from_uni_residual(
        "G(x,0)=x",
        &(&bundle.g_via_theorem.at_y_zero() - &UniSeries::x(n)),
    ));
    parts.push(VerifyReport::from_bi_residual(
        "G symmetric",
        &(&bundle.g_via_theorem - &bundle.g_via_theorem.swap()),
    ));
    Ok(VerifyReport::combine("g-log-additivity", parts))
}

/// `SN(u + v) = G(SN(u), SN(v))` in two formal variables.
pub fn check_sn_addition(bundle: &AdditionLawBundle) -> Result<VerifyReport, SeriesError> {
    let n = bundle.order();
    let sn = bundle.sn.truncate(n)?;
    let lhs = (&BiSeries::x(n) + &BiSeries::y(n)).compose_into(&sn)?;
    let rhs = bundle.g_via_theorem.compose_pair(
        &BiSeries::from_uni(&sn, Variable::X),
        &BiSeries::from_uni(&sn, Variable::Y),
    )?;
    Ok(VerifyReport::from_bi_residual(
        "sn-addition",
        &(&lhs - &rhs),
    ))
}

/// `mu(F(x, y)) = G(mu(x), mu(y))`: `mu = x / B` is a strict isomorphism from
/// `F` to `G`.
pub fn check_strict_iso(bundle: &AdditionLawBundle) -> Result<VerifyReport, SeriesError> {
    strict_iso_report(bundle, &bundle.canonical.mu.truncate(bundle.order())?)
}

/// Residual of the strict isomorphism identity for an arbitrary candidate
/// series `h`.
pub fn strict_iso_report(
    bundle: &AdditionLawBundle,
    h: &UniSeries,
) -> Result<VerifyReport, SeriesError> {
    let n = bundle.order();
    let f = bundle.canonical.fgl()?.truncate(n)?;
    let lhs = f.compose_into(h)?;
    let rhs = bundle.g_via_exp.compose_pair(
        &BiSeries::from_uni(h, Variable::X),
        &BiSeries::from_uni(h, Variable::Y),
    )?;
    Ok(VerifyReport::from_bi_residual("strict-iso", &(&lhs - &rhs)))
}

/// `(x^2 - y^2) - G(x, y) (x R(y) - y R(x))`.
pub fn cayley_residual(g: &BiSeries, r: &UniSeries) -> Result<BiSeries, SeriesError> {
    let n = g.order();
    let r = r.truncate(n)?;
    let x = BiSeries::x(n);
    let y = BiSeries::y(n);
    let den =
        &(&x * &BiSeries::from_uni(&r, Variable::Y)) - &(&y * &BiSeries::from_uni(&r, Variable::X));
    let lhs = &(&x * &x) - &(&y * &y);
    Ok(&lhs - &(g * &den))
}

/// `sqrt((1 - t^2)(1 - k^2 t^2))`, built directly from the product.
pub fn jacobi_root(order: usize) -> UniSeries {
    let k2 = GradedPoly::var(Var::K2);
    let one = GradedPoly::one();
    let a = UniSeries::from_coeffs(vec![one.clone(), GradedPoly::zero(), -&one], order);
    let b = UniSeries::from_coeffs(vec![one, GradedPoly::zero(), -&k2], order);
    (&a * &b).sqrt().expect("constant term 1")
}

/// Euler's addition law
/// `T(x, y) = (x R(y) + y R(x)) / (1 - k^2 x^2 y^2)` with
/// `R(t) = sqrt((1 - t^2)(1 - k^2 t^2))`, expanded through total degree
/// `order`.
pub fn euler_law(order: usize) -> BiSeries {
    let r = jacobi_root(order);
    let x = BiSeries::x(order);
    let y = BiSeries::y(order);
    let num =
        &(&x * &BiSeries::from_uni(&r, Variable::Y)) + &(&y * &BiSeries::from_uni(&r, Variable::X));
    let den = &BiSeries::one(order) - &BiSeries::monomial(2, 2, GradedPoly::var(Var::K2), order);
    &num * &den.inverse().expect("constant term 1")
}

/// At `p = (0, -(1 + k^2), 0, k^2)`: `G` equals Euler's law, and Cayley's
/// form `G (x R(y) - y R(x)) = x^2 - y^2` holds.
pub fn check_euler(order: usize) -> Result<VerifyReport, SeriesError> {
    let params = Params::euler();
    let (log_g, sn) = build_log_g_sn(&params.quartic(order))?;
    let g = fgl_from_log(&log_g, &sn, order)?;
    let r = params.quartic(order).sqrt()?;
    Ok(VerifyReport::combine(
        "euler",
        vec![
            VerifyReport::from_bi_residual("G = T", &(&g - &euler_law(order))),
            VerifyReport::from_bi_residual("Cayley", &cayley_residual(&g, &r)?),
        ],
    ))
}

/// Taylor coefficients of the Jacobi sine through `order`, from
/// `sn'' = -(1 + k^2) sn + 2 k^2 sn^3`, `sn(0) = 0`, `sn'(0) = 1`.
pub fn jacobi_sn_series(order: usize) -> UniSeries {
    let k2 = GradedPoly::var(Var::K2);
    let one = GradedPoly::one();
    let lin = -&(&one + &k2);
    let cub = k2.scale(&rat(2, 1));
    let mut f = UniSeries::x(order);
    for n in 0..order.saturating_sub(1) {
        let cube = (&(&f * &f) * &f).coeff(n);
        let rhs = &(&lin * &f.coeff(n)) + &(&cub * &cube);
        let denom = ((n + 2) * (n + 1)) as i64;
        f.set_coeff(n + 2, rhs.scale(&rat(1, denom)));
    }
    f
}

/// At `p = (0, 2(1 + k^2), 0, (1 - k^2)^2)`: `A = 1`,
/// `B^2 = (1 - x^2)(1 - k^2 x^2)`, and `exp_F` is the Jacobi sine through
/// `sn_order`.
pub fn check_jacobi(order: usize, sn_order: usize) -> Result<VerifyReport, SeriesError> {
    let params = Params::jacobi_hoehn();
    let cs = CanonicalSeries::build(&params, order.max(sn_order))?;
    let a = cs.a.truncate(order)?;
    let b = cs.b.truncate(order)?;
    let root = jacobi_root(order);
    Ok(VerifyReport::combine(
        "jacobi",
        vec![
            VerifyReport::from_uni_residual("A = 1", &(&a - &UniSeries::one(order))),
            VerifyReport::from_uni_residual("B^2", &(&(&b * &b) - &(&root * &root))),
            VerifyReport::from_uni_residual(
                "expF = sn",
                &(&cs.exp_f.truncate(sn_order)? - &jacobi_sn_series(sn_order)),
            ),
        ],
    ))
}

/// At `p = (0, delta, 0, eps)`: `SN` is odd, its `x^3` coefficient is
/// `delta/6`, and Cayley's form holds.
pub fn check_ochanine(order: usize) -> Result<VerifyReport, SeriesError> {
    let params = Params::ochanine();
    let (log_g, sn) = build_log_g_sn(&params.quartic(order))?;
    let even = UniSeries::from_coeffs(
        (0..=order)
            .map(|k| {
                if k % 2 == 0 {
                    sn.coeff(k)
                } else {
                    GradedPoly::zero()
                }
            })
            .collect(),
        order,
    );
    let mut parts = vec![VerifyReport::from_uni_residual("SN odd", &even)];
    if order >= 3 {
        let c3 = &sn.coeff(3) - &GradedPoly::var(Var::Delta).scale(&rat(1, 6));
        parts.push(VerifyReport::from_uni_residual(
            "SN x^3",
            &UniSeries::constant(c3, 0),
        ));
    }
    let g = fgl_from_log(&log_g, &sn, order)?;
    let r = params.quartic(order).sqrt()?;
    parts.push(VerifyReport::from_bi_residual(
        "Cayley",
        &cayley_residual(&g, &r)?,
    ));
    Ok(VerifyReport::combine("ochanine", parts))
}

/// Weighted homogeneity on the `G` side: `log_G`, `SN`, and both `G`.
pub fn check_g_grading(bundle: &AdditionLawBundle) -> VerifyReport {
    let log_w = |n: usize| (n > 0).then(|| 2 * (n as u32 - 1));
    VerifyReport::combine(
        "g-grading",
        vec![
            uni_grading_report("logG", &bundle.log_g, log_w),
            uni_grading_report("SN", &bundle.sn, log_w),
            bi_grading_report("G", &bundle.g_via_exp),
            bi_grading_report("G-theorem", &bundle.g_via_theorem),
        ],
    )
}
