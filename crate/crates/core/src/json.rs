//! JSON forms of polynomials and series.
//!
//! Rationals are written as decimal strings so that no precision is lost.
//!
//! ```text
//! GradedPoly: [{"e":[e1,e2,e3,e4],"num":"-1","den":"2"}, ...]
//! UniSeries:  {"order":N,"variable":"x","coefficients":[{"x_power":n,"poly":[...]}, ...]}
//! BiSeries:   {"order":N,"variables":["x","y"],"coefficients":[{"powers":[i,j],"poly":[...]}, ...]}
//! ```
//!
//! The exponent vector has four entries when only `p1..p4` occur and seven
//! (`p1, p2, p3, p4, k2, delta, eps`) otherwise.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Exponents, GradedPoly, Rational, NUM_PARAMS, NUM_VARS};
use crate::series::{BiSeries, UniSeries};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Parse(#[from] serde_json::Error),
    #[error("invalid integer {0:?}")]
    Integer(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent vector has {0} entries; expected {NUM_PARAMS} or {NUM_VARS}")]
    Exponents(usize),
    #[error("power {0:?} outside the declared order {1}")]
    Power(Vec<usize>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniCoeffJson {
    pub x_power: usize,
    pub poly: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniSeriesJson {
    pub order: usize,
    pub variable: String,
    pub coefficients: Vec<UniCoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiCoeffJson {
    pub powers: [usize; 2],
    pub poly: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiSeriesJson {
    pub order: usize,
    pub variables: [String; 2],
    pub coefficients: Vec<BiCoeffJson>,
}

pub fn poly_to_json(p: &GradedPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            e: if e.is_param_only() {
                e.0[..NUM_PARAMS].to_vec()
            } else {
                e.0.to_vec()
            },
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn parse_int(s: &str) -> Result<BigInt, JsonError> {
    s.parse().map_err(|_| JsonError::Integer(s.to_string()))
}

pub fn poly_from_json(terms: &[TermJson]) -> Result<GradedPoly, JsonError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut e = [0u32; NUM_VARS];
        match t.e.len() {
            NUM_PARAMS | NUM_VARS => e[..t.e.len()].copy_from_slice(&t.e),
            n => return Err(JsonError::Exponents(n)),
        }
        let den = parse_int(&t.den)?;
        if den == BigInt::from(0) {
            return Err(JsonError::ZeroDenominator);
        }
        out.push((Exponents(e), Rational::new(parse_int(&t.num)?, den)));
    }
    Ok(GradedPoly::from_terms(out))
}

pub fn uni_to_json(s: &UniSeries) -> UniSeriesJson {
    UniSeriesJson {
        order: s.order(),
        variable: "x".to_string(),
        coefficients: s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| UniCoeffJson {
                x_power: n,
                poly: poly_to_json(c),
            })
            .collect(),
    }
}

pub fn uni_from_json(j: &UniSeriesJson) -> Result<UniSeries, JsonError> {
    let mut s = UniSeries::zero(j.order);
    for c in &j.coefficients {
        if c.x_power > j.order {
            return Err(JsonError::Power(vec![c.x_power], j.order));
        }
        s.set_coeff(c.x_power, poly_from_json(&c.poly)?);
    }
    Ok(s)
}

pub fn bi_to_json(s: &BiSeries) -> BiSeriesJson {
    BiSeriesJson {
        order: s.order(),
        variables: ["x".to_string(), "y".to_string()],
        coefficients: s
            .iter()
            .map(|((i, j), c)| BiCoeffJson {
                powers: [i, j],
                poly: poly_to_json(c),
            })
            .collect(),
    }
}

pub fn bi_from_json(j: &BiSeriesJson) -> Result<BiSeries, JsonError> {
    let mut s = BiSeries::zero(j.order);
    for c in &j.coefficients {
        let [i, k] = c.powers;
        if i + k > j.order {
            return Err(JsonError::Power(vec![i, k], j.order));
        }
        s.set_coeff(i, k, poly_from_json(&c.poly)?);
    }
    Ok(s)
}

pub fn uni_to_string(s: &UniSeries) -> String {
    serde_json::to_string(&uni_to_json(s)).expect("plain data serializes")
}

pub fn uni_from_str(text: &str) -> Result<UniSeries, JsonError> {
    uni_from_json(&serde_json::from_str(text)?)
}

pub fn bi_to_string(s: &BiSeries) -> String {
    serde_json::to_string(&bi_to_json(s)).expect("plain data serializes")
}

pub fn bi_from_str(text: &str) -> Result<BiSeries, JsonError> {
    bi_from_json(&serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Params;
    use crate::poly::Var;

    #[test]
    fn poly_term_layout() {
        let b2 = &GradedPoly::p(1)
            .pow(2)
            .scale(&Rational::new(1.into(), 16.into()))
            - &GradedPoly::p(2).scale(&Rational::new(1.into(), 4.into()));
        let v = serde_json::to_value(poly_to_json(&b2)).unwrap();
        let expected = serde_json::json!([
            {"e": [0, 1, 0, 0], "num": "-1", "den": "4"},
            {"e": [2, 0, 0, 0], "num": "1", "den": "16"},
        ]);
        assert_eq!(v, expected);
        let k = GradedPoly::var(Var::K2);
        assert_eq!(poly_to_json(&k)[0].e, vec![0, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn series_round_trip() {
        let b = crate::buchstaber::build_b(&Params::generic(), 5);
        assert_eq!(uni_from_str(&uni_to_string(&b)).unwrap(), b);
        let r = crate::elliptic::jacobi_root(4);
        assert_eq!(uni_from_str(&uni_to_string(&r)).unwrap(), r);
        let mut f = BiSeries::zero(3);
        f.set_coeff(
            1,
            1,
            GradedPoly::p(1).scale(&Rational::new((-1).into(), 2.into())),
        );
        f.set_coeff(1, 0, GradedPoly::one());
        assert_eq!(bi_from_str(&bi_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn rejects_malformed() {
        let bad = r#"[{"e":[1,0],"num":"1","den":"1"}]"#;
        let terms: Vec<TermJson> = serde_json::from_str(bad).unwrap();
        assert!(matches!(
            poly_from_json(&terms),
            Err(JsonError::Exponents(2))
        ));
        let zero_den = r#"[{"e":[1,0,0,0],"num":"1","den":"0"}]"#;
        let terms: Vec<TermJson> = serde_json::from_str(zero_den).unwrap();
        assert!(matches!(
            poly_from_json(&terms),
            Err(JsonError::ZeroDenominator)
        ));
        let beyond = r#"{"order":1,"variable":"x","coefficients":[{"x_power":3,"poly":[]}]}"#;
        assert!(matches!(uni_from_str(beyond), Err(JsonError::Power(..))));
    }
}
