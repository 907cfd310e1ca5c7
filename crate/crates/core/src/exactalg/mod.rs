//! Exact rational arithmetic: polynomials, matrices, matrix polynomials,
//! ranks and Smith forms. No floating point here.

mod matrix;
mod poly;
mod polymatrix;
mod smith;

pub use matrix::{rank_exact, rank_integer, RationalMatrix};
pub use poly::{poly_gcd, squarefree_decomposition, Degree, RationalPolynomial};
pub use polymatrix::{
    frobenius_distance, normal_rank, rev, FrobeniusDistance, MatrixPolynomial, SkewMatrixPolynomial,
};
pub(crate) use smith::skew_smith_from;
pub use smith::{skew_smith, smith_form, SkewSmithForm, SmithForm};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num/den` as a rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
