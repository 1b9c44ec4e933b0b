//! JSON file formats for fans, divisors and polynomials.
//!
//! ```json
//! { "rays": [[-1, 1], [0, 1], [1, 0], [0, -1]], "labels": ["x1", "x2", "x3", "x4"] }
//! { "coeffs": [5, 3, 0, 0] }
//! { "terms": [ { "exps": [5, 3, 0, 0], "coeff": "1" }, { "exps": [0, 0, 2, 3], "coeff": "-1/2" } ] }
//! ```

use serde::{Deserialize, Serialize};

use crate::divisor::TorusDivisor;
use crate::error::{Error, Result};
use crate::fan::{Fan, Ray};
use crate::poly::{parse_rational, CoxPolynomial, Exponents};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

pub fn fan_from_json(text: &str) -> Result<Fan> {
    let raw: FanJson = serde_json::from_str(text)?;
    let rays = raw
        .rays
        .iter()
        .enumerate()
        .map(|(i, r)| match r.as_slice() {
            [a, b] => Ok(Ray::new(*a, *b)),
            _ => Err(Error::Parse(format!(
                "ray {i} has {} entries; only 2-dimensional fans are supported",
                r.len()
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Fan::new(rays, raw.labels)
}

pub fn fan_to_json(fan: &Fan) -> FanJson {
    FanJson {
        rays: fan.rays().iter().map(|r| r.0.to_vec()).collect(),
        labels: Some(fan.labels().to_vec()),
    }
}

pub fn divisor_from_json(text: &str, fan: &Fan) -> Result<TorusDivisor> {
    let raw: DivisorJson = serde_json::from_str(text)?;
    let d = TorusDivisor::new(raw.coeffs);
    d.check_len(fan)?;
    Ok(d)
}

pub fn divisor_to_json(d: &TorusDivisor) -> DivisorJson {
    DivisorJson {
        coeffs: d.coeffs.clone(),
    }
}

pub fn polynomial_from_json(text: &str, fan: &Fan) -> Result<CoxPolynomial> {
    let raw: PolynomialJson = serde_json::from_str(text)?;
    let n = fan.n();
    let terms = raw
        .terms
        .into_iter()
        .map(|t| {
            if t.exps.len() != n {
                return Err(Error::Length {
                    expected: n,
                    got: t.exps.len(),
                });
            }
            Ok((Exponents(t.exps), parse_rational(&t.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    CoxPolynomial::from_terms(n, terms)
}

/// Terms in descending exponent order.
pub fn polynomial_to_json(p: &CoxPolynomial) -> PolynomialJson {
    PolynomialJson {
        terms: p
            .terms()
            .rev()
            .map(|(e, c)| TermJson {
                exps: e.0.clone(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn fan_round_trip() {
        let f = Fan::hirzebruch(2);
        let text = serde_json::to_string(&fan_to_json(&f)).unwrap();
        assert_eq!(fan_from_json(&text).unwrap(), f);
    }

    #[test]
    fn fan_errors() {
        assert!(matches!(fan_from_json("{\"rays\": [[1,0,0]]}"), Err(Error::Parse(_))));
        assert!(matches!(fan_from_json("{\"rays\": [[1,0],[0,1]]}"), Err(Error::InvalidFan(_))));
        assert!(matches!(fan_from_json("{\"rays\": 3}"), Err(Error::Json(_))));
    }

    #[test]
    fn polynomial_round_trip() {
        let fan = Fan::hirzebruch(1);
        let p = parse_polynomial("x1^5*x2^3 - 1/2*x3^2*x4^3", fan.labels()).unwrap();
        let text = serde_json::to_string(&polynomial_to_json(&p)).unwrap();
        assert_eq!(polynomial_from_json(&text, &fan).unwrap(), p);
        assert!(polynomial_from_json("{\"terms\":[{\"exps\":[1],\"coeff\":\"1\"}]}", &fan).is_err());
    }

    #[test]
    fn divisor_length_checked() {
        let fan = Fan::projective_plane();
        assert!(divisor_from_json("{\"coeffs\":[1,0,0]}", &fan).is_ok());
        assert!(divisor_from_json("{\"coeffs\":[1,0]}", &fan).is_err());
    }
}
