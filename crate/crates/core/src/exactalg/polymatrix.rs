use std::fmt;
use std::ops::Deref;

use num_traits::{One, ToPrimitive, Zero};

use super::{rank_exact, Degree, Rational, RationalMatrix, RationalPolynomial};
use crate::error::{Error, Result};

/// A `rows × cols` grid of rational polynomials with a declared grade.
///
/// Every entry has degree at most `grade`; the grade may exceed the actual
/// degree, which matters for the structure at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixPolynomial {
    rows: usize,
    cols: usize,
    grade: usize,
    entries: Vec<RationalPolynomial>,
}

impl MatrixPolynomial {
    pub fn zero(rows: usize, cols: usize, grade: usize) -> Self {
        Self {
            rows,
            cols,
            grade,
            entries: vec![RationalPolynomial::zero(); rows * cols],
        }
    }

    /// Builds from entries in row-major order.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        grade: usize,
        entries: Vec<RationalPolynomial>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.degree() > Degree::Finite(grade)) {
            return Err(Error::GradeTooSmall {
                grade,
                degree: e.degree().or_zero(),
            });
        }
        Ok(Self {
            rows,
            cols,
            grade,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        grade: usize,
        mut f: impl FnMut(usize, usize) -> RationalPolynomial,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(rows, cols, grade, entries)
    }

    /// `Σ λ^i A_i`, with grade `coefficients.len() - 1`.
    pub fn from_coefficients(coefficients: &[RationalMatrix]) -> Result<Self> {
        let Some(first) = coefficients.first() else {
            return Err(Error::ShapeMismatch("no coefficient matrices".into()));
        };
        let (rows, cols) = (first.rows(), first.cols());
        if coefficients
            .iter()
            .any(|c| c.rows() != rows || c.cols() != cols)
        {
            return Err(Error::ShapeMismatch(
                "coefficient matrices differ in shape".into(),
            ));
        }
        Self::from_fn(rows, cols, coefficients.len() - 1, |i, j| {
            RationalPolynomial::new(coefficients.iter().map(|c| c[(i, j)].clone()).collect())
        })
    }

    /// The pencil `λA - B`.
    pub fn pencil(a: &RationalMatrix, b: &RationalMatrix) -> Result<Self> {
        Self::from_coefficients(&[b.scale(&-Rational::one()), a.clone()])
    }

    pub fn constant(m: &RationalMatrix, grade: usize) -> Self {
        Self::from_fn(m.rows(), m.cols(), grade, |i, j| {
            RationalPolynomial::constant(m[(i, j)].clone())
        })
        .expect("constant entries fit any grade")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RationalPolynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalPolynomial::is_zero)
    }

    /// Maximum entry degree.
    pub fn degree(&self) -> Degree {
        self.entries
            .iter()
            .map(RationalPolynomial::degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Coefficient matrix of `λ^k`.
    pub fn coefficient(&self, k: usize) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).coeff(k))
    }

    /// Coefficients `A_0, …, A_grade`.
    pub fn coefficients(&self) -> Vec<RationalMatrix> {
        (0..=self.grade).map(|k| self.coefficient(k)).collect()
    }

    /// Same entries, different declared grade.
    pub fn with_grade(&self, grade: usize) -> Result<Self> {
        let deg = self.degree();
        if deg > Degree::Finite(grade) {
            return Err(Error::GradeTooSmall {
                grade,
                degree: deg.or_zero(),
            });
        }
        Ok(Self {
            grade,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.grade, |i, j| {
            self.entry(j, i).clone()
        })
        .expect("same grade")
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|e| -e).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(
                "sum of differently sized matrices".into(),
            ));
        }
        Self::from_entries(
            self.rows,
            self.cols,
            self.grade.max(other.grade),
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Evaluation at a rational point.
    pub fn evaluate(&self, x: &Rational) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).eval(x))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.entry(i, i).is_zero() && (0..i).all(|j| *self.entry(i, j) == -self.entry(j, i))
            })
    }

    /// `Sᵀ P S` for a constant matrix `S`.
    pub fn congruence(&self, s: &RationalMatrix) -> Self {
        let coeffs: Vec<RationalMatrix> = self
            .coefficients()
            .iter()
            .map(|c| s.transpose().mul(c).mul(s))
            .collect();
        Self::from_coefficients(&coeffs).expect("consistent shapes")
    }

    /// Block-diagonal direct sum; the grade is the larger of the two.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, self.grade.max(other.grade), |i, j| {
            if i < self.rows && j < self.cols {
                self.entry(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.entry(i - self.rows, j - self.cols).clone()
            } else {
                RationalPolynomial::zero()
            }
        })
        .expect("entries within grade")
    }

    pub fn to_f64_coefficients(&self) -> Vec<nalgebra::DMatrix<f64>> {
        (0..=self.grade)
            .map(|k| {
                nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| {
                    self.entry(i, j).coeff(k).to_f64().unwrap_or(f64::NAN)
                })
            })
            .collect()
    }
}

impl fmt::Debug for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}, grade {}]", self.rows, self.cols, self.grade)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A square matrix polynomial with `P(λ)ᵀ = -P(λ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewMatrixPolynomial(MatrixPolynomial);

impl SkewMatrixPolynomial {
    pub fn new(p: MatrixPolynomial) -> Result<Self> {
        if p.is_skew() {
            Ok(Self(p))
        } else {
            Err(Error::NotSkewSymmetric)
        }
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &MatrixPolynomial {
        &self.0
    }

    pub fn into_inner(self) -> MatrixPolynomial {
        self.0
    }

    /// Replaces the declared grade, keeping the skew structure.
    pub fn with_grade(&self, grade: usize) -> Result<Self> {
        Ok(Self(self.0.with_grade(grade)?))
    }

    pub fn congruence(&self, s: &RationalMatrix) -> Self {
        Self(self.0.congruence(s))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self(self.0.direct_sum(&other.0))
    }
}

impl Deref for SkewMatrixPolynomial {
    type Target = MatrixPolynomial;
    fn deref(&self) -> &MatrixPolynomial {
        &self.0
    }
}

impl TryFrom<MatrixPolynomial> for SkewMatrixPolynomial {
    type Error = Error;
    fn try_from(p: MatrixPolynomial) -> Result<Self> {
        Self::new(p)
    }
}

/// Reversal `λ^d P(1/λ)` at grade `d`.
pub fn rev(p: &MatrixPolynomial, d: usize) -> Result<MatrixPolynomial> {
    let deg = p.degree();
    if deg > Degree::Finite(d) {
        return Err(Error::GradeTooSmall {
            grade: d,
            degree: deg.or_zero(),
        });
    }
    Ok(MatrixPolynomial {
        grade: d,
        entries: p.entries.iter().map(|e| e.reversed(d)).collect(),
        ..p.clone()
    })
}

/// Frobenius distance between two polynomials of the same size and grade.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusDistance {
    /// Exact squared distance.
    pub squared: Rational,
    pub value: f64,
}

pub fn frobenius_distance(p: &MatrixPolynomial, q: &MatrixPolynomial) -> Result<FrobeniusDistance> {
    if (p.rows, p.cols, p.grade) != (q.rows, q.cols, q.grade) {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} grade {} vs {}x{} grade {}",
            p.rows, p.cols, p.grade, q.rows, q.cols, q.grade
        )));
    }
    let mut squared = Rational::zero();
    for (a, b) in p.entries.iter().zip(&q.entries) {
        for c in (a - b).coeffs() {
            squared += c * c;
        }
    }
    let value = squared.to_f64().unwrap_or(f64::NAN).sqrt();
    Ok(FrobeniusDistance { squared, value })
}

/// Exact normal rank.
///
/// A nonzero `ρ×ρ` minor has degree at most `ρ·deg P`, so it cannot vanish at
/// `min(rows, cols)·deg P + 1` distinct points; the largest rank of `P(μ)` over
/// that many integer points is therefore the rank over the rational functions.
pub fn normal_rank(p: &MatrixPolynomial) -> usize {
    let full = p.rows.min(p.cols);
    let deg = match p.degree() {
        Degree::NegInfinity => return 0,
        Degree::Finite(k) => k,
    };
    let mut best = 0;
    for k in 0..=(full * deg) {
        // 0, 1, -1, 2, -2, ...
        let mu = if k % 2 == 1 {
            (k as i64 + 1) / 2
        } else {
            -(k as i64) / 2
        };
        best = best.max(rank_exact(&p.evaluate(&Rational::from_integer(mu.into()))));
        if best == full {
            break;
        }
    }
    best
}
