//! JSON interchange: rationals as `"num/den"` strings and matrix polynomials
//! as coefficient lists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{MatrixPolynomial, Rational, RationalMatrix, SkewMatrixPolynomial};

/// `"3"`, `"-3/4"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter for a single rational.
pub mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// On-disk form of a square matrix polynomial: `coefficients[k]` is the
/// `m × m` coefficient of `λ^k`, rows of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub m: usize,
    pub grade: usize,
    pub coefficients: Vec<Vec<Vec<String>>>,
}

impl PolynomialFile {
    pub fn from_polynomial(p: &MatrixPolynomial) -> Self {
        let coefficients = p
            .coefficients()
            .iter()
            .map(|c| {
                (0..c.rows())
                    .map(|i| c.row(i).iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        PolynomialFile {
            m: p.rows(),
            grade: p.grade(),
            coefficients,
        }
    }

    pub fn to_polynomial(&self) -> Result<MatrixPolynomial> {
        if self.coefficients.len() != self.grade + 1 {
            return Err(Error::ShapeMismatch(format!(
                "grade {} needs {} coefficients, got {}",
                self.grade,
                self.grade + 1,
                self.coefficients.len()
            )));
        }
        let mut mats = Vec::with_capacity(self.coefficients.len());
        for c in &self.coefficients {
            if c.len() != self.m || c.iter().any(|row| row.len() != self.m) {
                return Err(Error::ShapeMismatch(format!(
                    "coefficient is not {0}x{0}",
                    self.m
                )));
            }
            let parsed = c
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            mats.push(RationalMatrix::from_fn(self.m, self.m, |i, j| {
                parsed[i][j].clone()
            }));
        }
        if mats.is_empty() {
            return Ok(MatrixPolynomial::zero(self.m, self.m, self.grade));
        }
        MatrixPolynomial::from_coefficients(&mats)
    }

    pub fn to_skew(&self) -> Result<SkewMatrixPolynomial> {
        SkewMatrixPolynomial::new(self.to_polynomial()?)
    }
}
