//! Generic complete eigenstructures of bounded-rank skew-symmetric pencils
//! and matrix polynomials, and the arithmetic linking the two through the
//! odd-grade linearization.

use std::collections::BTreeMap;

use crate::canonical::{skew_to_general, BlockList, GeneralBlock, SkewBlock};
use crate::eigenstructure::CompleteEigenstructure;
use crate::error::{Error, Result};

/// Pencils of size `n` and rank at most `2w` with `r` blocks `K_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PencilGenericParams {
    pub n: usize,
    pub w: usize,
    pub r: usize,
    pub alpha: usize,
    pub s: usize,
}

impl PencilGenericParams {
    pub fn new(n: usize, w: usize, r: usize) -> Result<Self> {
        if n < 2 || w < 1 || 2 * w > n - 1 || r > w {
            return Err(Error::ParamDomain(format!(
                "(n, w, r) = ({n}, {w}, {r}) needs n ≥ 2, 2 ≤ 2w ≤ n-1, r ≤ w"
            )));
        }
        let free = n - 2 * w;
        Ok(PencilGenericParams {
            n,
            w,
            r,
            alpha: (w - r) / free,
            s: (w - r) % free,
        })
    }
}

/// `m × m` polynomials of grade `d` and rank at most `2r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyGenericParams {
    pub m: usize,
    pub d: usize,
    pub r: usize,
    pub beta: usize,
    pub t: usize,
}

impl PolyGenericParams {
    pub fn new(m: usize, d: usize, r: usize) -> Result<Self> {
        if m < 2 || d < 1 || r < 1 || 2 * r > m - 1 {
            return Err(Error::ParamDomain(format!(
                "(m, d, r) = ({m}, {d}, {r}) needs m ≥ 2, d ≥ 1, 2 ≤ 2r ≤ m-1"
            )));
        }
        let free = m - 2 * r;
        Ok(PolyGenericParams {
            m,
            d,
            r,
            beta: r * d / free,
            t: r * d % free,
        })
    }

    /// `t` copies of `β+1` and `m-2r-t` copies of `β`, ascending.
    pub fn minimal_indices(&self) -> Vec<usize> {
        let mut v = vec![self.beta; self.m - 2 * self.r - self.t];
        v.extend(std::iter::repeat_n(self.beta + 1, self.t));
        v
    }
}

/// `s·M_{α+1} ⊕ (n-2w-s)·M_α ⊕ r·K_1`.
pub fn generic_pencil_structure(n: usize, w: usize, r: usize) -> Result<BlockList> {
    let p = PencilGenericParams::new(n, w, r)?;
    let mut blocks = vec![SkewBlock::M(p.alpha + 1); p.s];
    blocks.extend(std::iter::repeat_n(SkewBlock::M(p.alpha), n - 2 * w - p.s));
    blocks.extend(std::iter::repeat_n(SkewBlock::K(1), r));
    BlockList::skew(blocks)
}

/// Rank `2r`, no elementary divisors, balanced minimal indices on both sides.
pub fn generic_poly_structure(m: usize, d: usize, r: usize) -> Result<CompleteEigenstructure> {
    let p = PolyGenericParams::new(m, d, r)?;
    let mins = p.minimal_indices();
    Ok(CompleteEigenstructure {
        size: m,
        cols: None,
        grade: d,
        rank: 2 * r,
        finite: BTreeMap::new(),
        infinite: vec![0; 2 * r],
        left_minimal: mins.clone(),
        right_minimal: mins,
    })
}

/// Outcome of matching the polynomial and linearized-pencil formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub poly: PolyGenericParams,
    pub pencil: PencilGenericParams,
    pub eta: usize,
    /// `β + η = α`
    pub shifted_index: bool,
    /// `t = s`
    pub larger_count: bool,
    /// `m - 2r - t = n - 2w - s`
    pub smaller_count: bool,
    /// The shifted polynomial list plus `2r·E_1(∞)` equals the KCF of the
    /// generic pencil.
    pub block_lists: bool,
}

impl ConsistencyReport {
    pub fn holds(&self) -> bool {
        self.shifted_index && self.larger_count && self.smaller_count && self.block_lists
    }
}

/// The general-flavor list obtained from the polynomial structure by shifting
/// every minimal index by `η = d/2` and appending `2r` blocks `E_1(∞)`.
pub fn shifted_poly_blocks(m: usize, d: usize, r: usize) -> Result<BlockList> {
    let p = PolyGenericParams::new(m, d, r)?;
    let eta = d / 2;
    let mut blocks = Vec::new();
    for e in p.minimal_indices() {
        blocks.push(GeneralBlock::Right(e + eta));
        blocks.push(GeneralBlock::Left(e + eta));
    }
    blocks.extend(std::iter::repeat_n(
        GeneralBlock::Infinite { size: 1 },
        2 * r,
    ));
    BlockList::general(blocks)
}

pub fn structure_consistency(m: usize, d: usize, r: usize) -> Result<ConsistencyReport> {
    if !d.is_multiple_of(2) {
        return Err(Error::ParamDomain(format!("grade {d} is odd")));
    }
    let poly = PolyGenericParams::new(m, d, r)?;
    let n = m * (d + 1);
    let w = (m * d + 2 * r) / 2;
    let pencil = PencilGenericParams::new(n, w, r)?;
    let eta = d / 2;
    let kcf = skew_to_general(&generic_pencil_structure(n, w, r)?)?;
    Ok(ConsistencyReport {
        poly,
        pencil,
        eta,
        shifted_index: poly.beta + eta == pencil.alpha,
        larger_count: poly.t == pencil.s,
        smaller_count: m - 2 * r - poly.t == n - 2 * w - pencil.s,
        block_lists: kcf == shifted_poly_blocks(m, d, r)?,
    })
}

/// Infinite partial multiplicities of the generic polynomial after one
/// step of grade padding: `2r` ones.
pub fn padded_infinite_structure(m: usize, d: usize, r: usize) -> Result<Vec<usize>> {
    if !d.is_multiple_of(2) {
        return Err(Error::ParamDomain(format!("grade {d} is odd")));
    }
    PolyGenericParams::new(m, d, r)?;
    Ok(vec![1; 2 * r])
}

/// Minimal indices of the generic structure written as a set in descending
/// order, e.g. `{2, 1, 1}`.
pub fn format_minimal_indices(indices: &[usize]) -> String {
    let mut v = indices.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Table of left minimal indices of the generic `m × m` polynomial of grade
/// `d` and rank at most `rank`, for even ranks `2..m`. Cells with `rank ≥ m`
/// are `None`.
pub fn minimal_index_table(
    d: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> Vec<(usize, Vec<Option<String>>)> {
    let sizes: Vec<usize> = sizes.collect();
    let max_rank = sizes.iter().copied().max().unwrap_or(0);
    sizes
        .iter()
        .map(|&m| {
            let cells = (1..)
                .map(|r| 2 * r)
                .take_while(|&rank| rank < max_rank)
                .map(|rank| {
                    generic_poly_structure(m, d, rank / 2)
                        .ok()
                        .map(|e| format_minimal_indices(&e.left_minimal))
                })
                .collect();
            (m, cells)
        })
        .collect()
}
