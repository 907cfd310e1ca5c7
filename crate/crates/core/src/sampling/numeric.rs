//! Floating-point backend: polynomial matrices with `f64` coefficients,
//! tolerance ranks, and a best-effort eigenstructure read off from ranks of
//! convolution and local Toeplitz matrices.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::exactalg::MatrixPolynomial;

pub type C64 = Complex<f64>;

/// Default relative tolerance of [`rank_fp`].
pub const DEFAULT_TOL: f64 = 1e-8;

/// Singular values, largest first.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `tol_rel` times the largest.
pub fn rank_fp(m: &DMatrix<C64>, tol_rel: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > tol_rel * top).count(),
        _ => 0,
    }
}

/// Matrix polynomial with real floating coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPolynomialMatrix {
    pub rows: usize,
    pub cols: usize,
    pub coefficients: Vec<DMatrix<f64>>,
}

impl FloatPolynomialMatrix {
    pub fn from_exact(p: &MatrixPolynomial) -> Self {
        FloatPolynomialMatrix {
            rows: p.rows(),
            cols: p.cols(),
            coefficients: p.to_f64_coefficients(),
        }
    }

    pub fn grade(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn evaluate(&self, z: C64) -> DMatrix<C64> {
        let mut acc = DMatrix::<C64>::zeros(self.rows, self.cols);
        for c in self.coefficients.iter().rev() {
            acc = acc * z + c.map(|x| C64::new(x, 0.0));
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        FloatPolynomialMatrix {
            rows: self.cols,
            cols: self.rows,
            coefficients: self.coefficients.iter().map(DMatrix::transpose).collect(),
        }
    }

    /// `λ^d P(1/λ)` at grade `d`.
    pub fn reversed(&self, d: usize) -> Self {
        let mut coefficients = vec![DMatrix::zeros(self.rows, self.cols); d + 1];
        for (i, c) in self.coefficients.iter().enumerate().take(d + 1) {
            coefficients[d - i] = c.clone();
        }
        FloatPolynomialMatrix {
            coefficients,
            ..self.clone()
        }
    }

    fn degree(&self) -> Option<usize> {
        self.coefficients
            .iter()
            .rposition(|c| c.iter().any(|&x| x != 0.0))
    }

    /// Block matrix with `coefficients[i - j]` in block `(i, j)` for
    /// `0 ≤ j ≤ i ≤ k` (`lower = true`) or the convolution matrix of order
    /// `k` with block rows `0..=k+deg` (`lower = false`).
    fn block_matrix(&self, k: usize, lower: bool) -> DMatrix<C64> {
        let deg = self.coefficients.len().saturating_sub(1);
        let block_rows = if lower { k + 1 } else { k + 1 + deg };
        let mut out = DMatrix::<C64>::zeros(block_rows * self.rows, (k + 1) * self.cols);
        for j in 0..=k {
            for (i, c) in self.coefficients.iter().enumerate() {
                if i + j >= block_rows {
                    break;
                }
                for r in 0..self.rows {
                    for s in 0..self.cols {
                        out[((i + j) * self.rows + r, j * self.cols + s)] =
                            C64::new(c[(r, s)], 0.0);
                    }
                }
            }
        }
        out
    }
}

/// Eigenstructure estimated with tolerance ranks. Finite eigenvalues are not
/// located; only their total algebraic multiplicity is reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatEigenstructure {
    pub size: usize,
    pub grade: usize,
    pub rank: usize,
    pub finite_degree: usize,
    pub infinite: Vec<usize>,
    pub left_minimal: Vec<usize>,
    pub right_minimal: Vec<usize>,
    pub tolerance: f64,
}

/// Sample points for the normal rank, away from the real axis.
const PROBES: [(f64, f64); 3] = [(0.3141, 0.6813), (-0.5772, 0.3333), (1.3247, -0.2718)];

fn normal_rank_fp(p: &FloatPolynomialMatrix, tol: f64) -> usize {
    PROBES
        .iter()
        .map(|&(re, im)| rank_fp(&p.evaluate(C64::new(re, im)), tol))
        .max()
        .unwrap_or(0)
}

fn minimal_indices_fp(p: &FloatPolynomialMatrix, rank: usize, tol: f64) -> Option<Vec<usize>> {
    let target = p.cols - rank;
    let Some(deg) = p.degree() else {
        return Some(vec![0; p.cols]);
    };
    let mut out = Vec::new();
    let (mut prev_kernel, mut prev_le) = (0usize, 0usize);
    for k in 0..=rank * deg {
        if out.len() >= target {
            break;
        }
        let c = p.block_matrix(k, false);
        let kernel = (k + 1) * p.cols - rank_fp(&c, tol);
        let le = kernel.checked_sub(prev_kernel)?;
        out.extend(std::iter::repeat_n(k, le.checked_sub(prev_le)?));
        (prev_kernel, prev_le) = (kernel, le);
    }
    (out.len() == target).then_some(out)
}

/// Partial multiplicities at zero: `dim ker T_k - (cols - rank)(k+1)` equals
/// `Σ min(κ_i, k+1)` for the local block Toeplitz matrix `T_k`.
fn multiplicities_at_zero(p: &FloatPolynomialMatrix, rank: usize, tol: f64) -> Option<Vec<usize>> {
    let mut counts = Vec::new();
    let mut prev = 0usize;
    for k in 0.. {
        let t = p.block_matrix(k, true);
        let kernel = (k + 1) * p.cols - rank_fp(&t, tol);
        let total = kernel.checked_sub((p.cols - rank) * (k + 1))?;
        let at_least = total.checked_sub(prev)?;
        if at_least == 0 || k > rank * p.coefficients.len() {
            break;
        }
        counts.push(at_least.min(rank));
        prev = total;
    }
    // counts[j] = #{κ ≥ j + 1}
    let mut out = vec![0; rank];
    for (j, &c) in counts.iter().enumerate() {
        for slot in out.iter_mut().rev().take(c) {
            *slot = (*slot).max(j + 1);
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Best-effort eigenstructure at grade `d`; `None` when the tolerance ranks
/// are mutually inconsistent.
pub fn analyze_fp(p: &FloatPolynomialMatrix, d: usize, tol: f64) -> Option<FloatEigenstructure> {
    if p.degree().is_some_and(|deg| deg > d) {
        return None;
    }
    let rank = normal_rank_fp(p, tol);
    let right = minimal_indices_fp(p, rank, tol)?;
    let left = minimal_indices_fp(&p.transpose(), rank, tol)?;
    let infinite = multiplicities_at_zero(&p.reversed(d), rank, tol)?;
    let used =
        infinite.iter().sum::<usize>() + left.iter().sum::<usize>() + right.iter().sum::<usize>();
    let finite_degree = (rank * d).checked_sub(used)?;
    Some(FloatEigenstructure {
        size: p.rows,
        grade: d,
        rank,
        finite_degree,
        infinite,
        left_minimal: left,
        right_minimal: right,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{assemble_skew, BlockList, SkewBlock};

    #[test]
    fn rank_fp_examples() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1e-15, 0.0),
        ]));
        assert_eq!(rank_fp(&d, 1e-8), 1);
        let h = 0.5;
        let u = DMatrix::from_row_slice(
            4,
            4,
            &[h, h, h, h, h, -h, h, -h, h, h, -h, -h, h, -h, -h, h],
        )
        .map(|x| C64::new(x, 0.0));
        assert_eq!(rank_fp(&u, 1e-8), 4);
        assert_eq!(rank_fp(&DMatrix::<C64>::zeros(3, 3), 1e-8), 0);
    }

    #[test]
    fn float_backend_matches_exact_on_blocks() {
        let l = BlockList::skew(vec![
            SkewBlock::M(1),
            SkewBlock::K(2),
            SkewBlock::H {
                size: 1,
                eigenvalue: crate::canonical::Eigenvalue::int(2),
            },
        ])
        .unwrap();
        let p = assemble_skew(&l).unwrap();
        let e = analyze_fp(&FloatPolynomialMatrix::from_exact(&p), 1, DEFAULT_TOL).unwrap();
        let exact = crate::eigenstructure::analyze(&p, 1).unwrap();
        assert_eq!(e.rank, exact.rank);
        assert_eq!(e.infinite, exact.infinite);
        assert_eq!(e.right_minimal, exact.right_minimal);
        assert_eq!(e.left_minimal, exact.left_minimal);
        assert_eq!(e.finite_degree, exact.finite_sum());
    }
}
