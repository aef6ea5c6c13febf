//! Text and JSON rendering.

use ellfgl_core::{BiSeries, UniSeries, VerifyReport};
use serde::Serialize;

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn uni_text(s: &UniSeries) -> String {
    let width = format!("x^{}", s.order()).len();
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| format!("{:<width$}  {c}\n", format!("x^{n}")))
        .collect()
}

pub fn bi_text(s: &BiSeries) -> String {
    let width = format!("x^{0} y^{0}", s.order()).len();
    s.iter()
        .map(|((i, j), c)| format!("{:<width$}  {c}\n", format!("x^{i} y^{j}")))
        .collect()
}

pub fn report_line(r: &VerifyReport) -> String {
    let mut line = format!(
        "{} {} (order {})",
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.order
    );
    if let Some(f) = &r.first_failure {
        let powers = match f.powers.as_slice() {
            [n] => format!("x^{n}"),
            [i, j] => format!("x^{i} y^{j}"),
            other => format!("{other:?}"),
        };
        line.push_str(&format!(
            ": first nonzero residual at {powers}: {}",
            f.residual
        ));
    }
    if let Some(d) = &r.detail {
        line.push_str(&format!(" [{d}]"));
    }
    line
}
