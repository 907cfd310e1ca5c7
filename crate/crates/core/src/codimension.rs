//! Codimensions of congruence orbits of skew-symmetric pencils and of
//! generic bounded-rank polynomial orbits: a block-sum formula, closed
//! forms, and an exact tangent-space rank oracle.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::canonical::{BlockList, SkewBlock};
use crate::error::{Error, Result};
use crate::exactalg::{rank_exact, Rational, RationalMatrix, SkewMatrixPolynomial};
use crate::genericity::{PencilGenericParams, PolyGenericParams};
use crate::linearization::{build_linearization, pad_grade};
use crate::sampling::{sample_bounded_rank, SampleSpec};

/// Size limit of the tangent-rank oracle unless overridden.
pub const DEFAULT_TANGENT_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum CodimSpace {
    /// `n × n` skew pencils, dimension `n(n-1)`.
    PenSkew { n: usize },
    /// Linearizations of `m × m` skew polynomials of odd grade `d`.
    Gsyl { m: usize, d: usize },
    /// The same with zero leading coefficient.
    Gsyl0 { m: usize, d: usize },
    /// `m × m` skew polynomials of grade `d`.
    Pol { m: usize, d: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodimMethod {
    Blocksum,
    ClosedForm,
    TangentRank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimReport {
    #[serde(flatten)]
    pub space: CodimSpace,
    pub value: usize,
    pub method: CodimMethod,
}

impl fmt::Display for CodimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `r(2r-1) + 2r·#M + Σ_{i<j} (2·max(m_i, m_j) + ε_ij)`, with `ε_ij = 2` for
/// equal indices and `1` otherwise. Only `M` blocks and `K_1` blocks are
/// supported.
pub fn codim_blocksum(list: &BlockList) -> Result<usize> {
    let mut ms = Vec::new();
    let mut r = 0usize;
    for b in list.skew_blocks()? {
        match b {
            SkewBlock::M(m) => ms.push(*m),
            SkewBlock::K(1) => r += 1,
            other => {
                return Err(Error::UnsupportedBlocks(format!(
                    "{other} is outside the M/K_1 fragment"
                )))
            }
        }
    }
    let mut pairs = 0;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            pairs += 2 * a.max(b) + if a == b { 2 } else { 1 };
        }
    }
    Ok(r * (2 * r).saturating_sub(1) + 2 * r * ms.len() + pairs)
}

/// `(n-2w-1)(n-w-r) + 2r(n-2w) + r(2r-1)`.
pub fn codim_pencil_closed(n: usize, w: usize, r: usize) -> Result<usize> {
    PencilGenericParams::new(n, w, r)?;
    Ok((n - 2 * w - 1) * (n - w - r) + 2 * r * (n - 2 * w) + r * (2 * r).saturating_sub(1))
}

/// Codimension of the generic orbit of `m × m` polynomials of grade `d` and
/// rank at most `2r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyCodim {
    /// `(m-2r-1)(md+m-2r)/2`
    pub cod_pol: usize,
    /// For even `d`: the codimension of the padded linearization in the
    /// linearization space, `cod_pol + m(m-1)/2`.
    pub cod_gsyl: Option<usize>,
}

pub fn codim_poly_generic(m: usize, d: usize, r: usize) -> Result<PolyCodim> {
    PolyGenericParams::new(m, d, r)?;
    let cod_pol = (m - 2 * r - 1) * (m * d + m - 2 * r) / 2;
    let cod_gsyl = if d.is_multiple_of(2) {
        let via_pencil = codim_pencil_closed(m * (d + 1), (m * d + 2 * r) / 2, r)?;
        let gap = m * (m - 1) / 2;
        if via_pencil != cod_pol + gap {
            return Err(Error::InternalInconsistency(format!(
                "pencil closed form {via_pencil} differs from {cod_pol} + {gap}"
            )));
        }
        Some(via_pencil)
    } else {
        None
    };
    Ok(PolyCodim { cod_pol, cod_gsyl })
}

/// Columns: `X = E_kl`, index `k·n + l`. Rows: the strictly upper entries of
/// `XᵀA + AX`, then those of `XᵀB + BX`.
fn tangent_matrix(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.rows();
    let half = n * (n - 1) / 2;
    let mut t = RationalMatrix::zeros(2 * half, n * n);
    let upper: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for (part, mat) in [a, b].into_iter().enumerate() {
        for (row, &(i, j)) in upper.iter().enumerate() {
            let r = part * half + row;
            // (E_lk M + M E_kl)_{ij} = δ_il M_kj + M_ik δ_jl
            for k in 0..n {
                if !mat[(k, j)].is_zero() {
                    t[(r, k * n + i)] += mat[(k, j)].clone();
                }
                if !mat[(i, k)].is_zero() {
                    t[(r, k * n + j)] += mat[(i, k)].clone();
                }
            }
        }
    }
    t
}

fn pencil_pair(p: &SkewMatrixPolynomial) -> Result<(RationalMatrix, RationalMatrix)> {
    if p.grade() > 1 {
        return Err(Error::ShapeMismatch(format!(
            "grade {} is not a pencil",
            p.grade()
        )));
    }
    Ok((p.coefficient(1), p.coefficient(0).scale(&-Rational::one())))
}

/// `n(n-1)` minus the exact rank of `X ↦ (XᵀA + AX, XᵀB + BX)`.
pub fn codim_tangent(p: &SkewMatrixPolynomial, limit: usize) -> Result<usize> {
    let n = p.size();
    if n > limit {
        return Err(Error::SizeGuard { n, limit });
    }
    let (a, b) = pencil_pair(p)?;
    Ok(n * (n - 1) - rank_exact(&tangent_matrix(&a, &b)))
}

/// Result of checking that the tangent space at a padded linearization has
/// a vanishing top-left block in its `λ` part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gsyl0Claim {
    pub n: usize,
    pub basis_size: usize,
    pub zero_block: bool,
}

/// Builds `F` for a padded generic sample of grade `d` (even) and checks
/// every tangent direction `XᵀA + AX`, `X = E_kl`, in its top-left
/// `m × m` block.
pub fn gsyl0_tangent_claim(m: usize, d: usize, r: usize, seed: u64) -> Result<Gsyl0Claim> {
    if !d.is_multiple_of(2) {
        return Err(Error::ParamDomain(format!("grade {d} is odd")));
    }
    let spec = SampleSpec::new(m, d, r, 9, seed)?;
    let sample = sample_bounded_rank(&spec)?;
    let f = build_linearization(&pad_grade(&sample.polynomial))?;
    let (a, _) = pencil_pair(&f.pencil)?;
    let n = a.rows();
    let mut zero_block = true;
    for k in 0..n {
        for l in 0..n {
            // (E_lk A + A E_kl)_{ij} for i, j < m
            for i in 0..m {
                for j in 0..m {
                    let mut v = Rational::zero();
                    if i == l {
                        v += &a[(k, j)];
                    }
                    if j == l {
                        v += &a[(i, k)];
                    }
                    zero_block &= v.is_zero();
                }
            }
        }
    }
    Ok(Gsyl0Claim {
        n,
        basis_size: n * n,
        zero_block,
    })
}
