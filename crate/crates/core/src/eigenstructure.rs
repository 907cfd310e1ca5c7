//! Complete eigenstructure of a matrix polynomial at a fixed grade: rank,
//! finite and infinite partial multiplicities, left and right minimal indices.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{
    normal_rank, poly_gcd, rank_exact, rev, skew_smith_from, smith_form, squarefree_decomposition,
    Degree, MatrixPolynomial, Rational, RationalMatrix, RationalPolynomial, SkewMatrixPolynomial,
};
use crate::io::{format_rational, parse_rational};

/// A set of finite eigenvalues sharing one partial-multiplicity sequence.
///
/// `polynomial` is monic and squarefree with the rational-coefficient part
/// (its roots are the members); `symbolic` lists opaque eigenvalue tags that
/// only block lists can carry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenvalueClass {
    pub polynomial: RationalPolynomial,
    pub symbolic: Vec<u32>,
}

impl EigenvalueClass {
    pub fn from_polynomial(polynomial: RationalPolynomial) -> Self {
        EigenvalueClass {
            polynomial,
            symbolic: Vec::new(),
        }
    }

    /// Number of eigenvalues in the class, counted over the complex numbers.
    pub fn count(&self) -> usize {
        self.polynomial.degree().or_zero() + self.symbolic.len()
    }
}

/// Complete eigenstructure. Every list is sorted ascending. `infinite` has
/// length `rank` (zeros included); each `finite` list holds only the nonzero
/// partial multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEigenstructure", into = "RawEigenstructure")]
pub struct CompleteEigenstructure {
    pub size: usize,
    /// Column count when it differs from `size`.
    pub cols: Option<usize>,
    pub grade: usize,
    pub rank: usize,
    pub finite: BTreeMap<EigenvalueClass, Vec<usize>>,
    pub infinite: Vec<usize>,
    pub left_minimal: Vec<usize>,
    pub right_minimal: Vec<usize>,
}

impl CompleteEigenstructure {
    pub fn cols(&self) -> usize {
        self.cols.unwrap_or(self.size)
    }

    pub fn finite_sum(&self) -> usize {
        self.finite
            .iter()
            .map(|(c, m)| c.count() * m.iter().sum::<usize>())
            .sum()
    }

    /// `finite + infinite + left + right`, which equals `rank · grade`.
    pub fn index_sum(&self) -> usize {
        self.finite_sum()
            + self.infinite.iter().sum::<usize>()
            + self.left_minimal.iter().sum::<usize>()
            + self.right_minimal.iter().sum::<usize>()
    }

    /// The same structure read at another grade: infinite multiplicities
    /// shift by the grade difference.
    pub fn regraded(&self, grade: usize) -> Option<Self> {
        let delta = grade as isize - self.grade as isize;
        let infinite = self
            .infinite
            .iter()
            .map(|&g| usize::try_from(g as isize + delta).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(CompleteEigenstructure {
            grade,
            infinite,
            ..self.clone()
        })
    }

    fn validate_skew(&self) -> Result<()> {
        let paired = |v: &[usize]| v.len().is_multiple_of(2) && v.chunks(2).all(|c| c[0] == c[1]);
        if !self.rank.is_multiple_of(2) {
            return Err(Error::InternalInconsistency(format!(
                "odd rank {}",
                self.rank
            )));
        }
        if self.left_minimal != self.right_minimal {
            return Err(Error::InternalInconsistency(
                "left and right minimal indices differ".into(),
            ));
        }
        if !paired(&self.infinite) || !self.finite.values().all(|m| paired(m)) {
            return Err(Error::InternalInconsistency(
                "partial multiplicities are not paired".into(),
            ));
        }
        Ok(())
    }

    fn validate_index_sum(&self) -> Result<()> {
        let (lhs, rhs) = (self.index_sum(), self.rank * self.grade);
        if lhs != rhs {
            return Err(Error::InternalInconsistency(format!(
                "index sum {lhs} differs from rank·grade {rhs}"
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawFinite {
    factor: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    symbolic: Vec<u32>,
    multiplicities: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawEigenstructure {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cols: Option<usize>,
    grade: usize,
    rank: usize,
    finite: Vec<RawFinite>,
    infinite: Vec<usize>,
    left_minimal: Vec<usize>,
    right_minimal: Vec<usize>,
}

impl From<CompleteEigenstructure> for RawEigenstructure {
    fn from(e: CompleteEigenstructure) -> Self {
        let finite = e
            .finite
            .into_iter()
            .map(|(class, multiplicities)| RawFinite {
                factor: class
                    .polynomial
                    .coeffs()
                    .iter()
                    .map(format_rational)
                    .collect(),
                symbolic: class.symbolic,
                multiplicities,
            })
            .collect();
        RawEigenstructure {
            size: e.size,
            cols: e.cols,
            grade: e.grade,
            rank: e.rank,
            finite,
            infinite: e.infinite,
            left_minimal: e.left_minimal,
            right_minimal: e.right_minimal,
        }
    }
}

impl TryFrom<RawEigenstructure> for CompleteEigenstructure {
    type Error = Error;
    fn try_from(raw: RawEigenstructure) -> Result<Self> {
        let mut finite = BTreeMap::new();
        for f in raw.finite {
            let coeffs = f
                .factor
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<Rational>>>()?;
            let mut symbolic = f.symbolic;
            symbolic.sort_unstable();
            let mut mults = f.multiplicities;
            mults.sort_unstable();
            finite.insert(
                EigenvalueClass {
                    polynomial: RationalPolynomial::new(coeffs),
                    symbolic,
                },
                mults,
            );
        }
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        Ok(CompleteEigenstructure {
            size: raw.size,
            cols: raw.cols,
            grade: raw.grade,
            rank: raw.rank,
            finite,
            infinite: sorted(raw.infinite),
            left_minimal: sorted(raw.left_minimal),
            right_minimal: sorted(raw.right_minimal),
        })
    }
}

/// `kernel_dims[k] = dim ker C_k(P)`, where `C_k` maps the stacked
/// coefficients of a vector polynomial of degree at most `k` to those of `P·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionProfile {
    pub kernel_dims: Vec<usize>,
}

/// Echelon basis of a growing set of sparse columns, keyed by top nonzero row.
///
/// Column `(j, c)` of `C_k` holds `A_i[:, c]` in block row `i + j`, so each
/// new block column only touches a band of rows below `j·rows`; the reduced
/// vectors stay inside that band.
struct Convolution<'a> {
    coefficients: Vec<crate::exactalg::RationalMatrix>,
    p: &'a MatrixPolynomial,
    basis: HashMap<usize, BTreeMap<usize, Rational>>,
    next_block: usize,
}

impl<'a> Convolution<'a> {
    fn new(p: &'a MatrixPolynomial) -> Self {
        let deg = p.degree().or_zero();
        Convolution {
            coefficients: (0..=deg).map(|i| p.coefficient(i)).collect(),
            p,
            basis: HashMap::new(),
            next_block: 0,
        }
    }

    /// Adds block column `next_block`; returns the kernel dimension of the
    /// convolution matrix of that order.
    fn grow(&mut self) -> usize {
        let (m, q, j) = (self.p.rows(), self.p.cols(), self.next_block);
        for c in 0..q {
            let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
            for (i, a) in self.coefficients.iter().enumerate() {
                for row in 0..m {
                    let x = &a[(row, c)];
                    if !x.is_zero() {
                        v.insert((i + j) * m + row, x.clone());
                    }
                }
            }
            self.insert(v);
        }
        self.next_block += 1;
        q * self.next_block - self.basis.len()
    }

    fn insert(&mut self, mut v: BTreeMap<usize, Rational>) {
        while let Some((&top, lead)) = v.first_key_value() {
            let Some(b) = self.basis.get(&top) else {
                let inv = lead.recip();
                for x in v.values_mut() {
                    *x *= &inv;
                }
                self.basis.insert(top, v);
                return;
            };
            let f = lead.clone();
            for (&row, x) in b {
                let e = v.entry(row).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(&row);
                }
            }
        }
    }
}

/// Kernel dimensions of the convolution matrices of orders `0..=max_order`.
pub fn convolution_profile(p: &MatrixPolynomial, max_order: usize) -> ConvolutionProfile {
    let mut conv = Convolution::new(p);
    ConvolutionProfile {
        kernel_dims: (0..=max_order).map(|_| conv.grow()).collect(),
    }
}

/// Right minimal indices, sorted ascending.
pub fn minimal_indices(p: &MatrixPolynomial) -> Vec<usize> {
    minimal_indices_with_rank(p, crate::exactalg::normal_rank(p))
}

fn minimal_indices_with_rank(p: &MatrixPolynomial, rank: usize) -> Vec<usize> {
    let target = p.cols() - rank;
    let deg = match p.degree() {
        Degree::NegInfinity => return vec![0; p.cols()],
        Degree::Finite(d) => d,
    };
    let mut out = Vec::with_capacity(target);
    let mut conv = Convolution::new(p);
    // dim ker C_k - dim ker C_{k-1} counts the indices at most k
    let (mut prev_kernel, mut prev_le) = (0, 0);
    let mut k = 0;
    while out.len() < target {
        assert!(k <= rank * deg, "minimal index beyond rank·degree");
        let kernel = conv.grow();
        let le = kernel - prev_kernel;
        out.extend(std::iter::repeat_n(k, le - prev_le));
        (prev_kernel, prev_le) = (kernel, le);
        k += 1;
    }
    out
}

/// Partial multiplicities at infinity at grade `d`, zeros included, sorted.
pub fn infinite_structure(p: &MatrixPolynomial, d: usize) -> Result<Vec<usize>> {
    Ok(multiplicities_at_zero(&rev(p, d)?, normal_rank(p)))
}

/// Partial multiplicities at `0`, zeros included, sorted. With `T_k` the
/// lower block Toeplitz matrix of `A_0, ..., A_k`,
/// `dim ker T_k - (cols - rank)(k+1) = Σ min(κ_i, k+1)`.
fn multiplicities_at_zero(p: &MatrixPolynomial, rank: usize) -> Vec<usize> {
    let (rows, cols) = (p.rows(), p.cols());
    let coefficients = p.coefficients();
    // at_least[j] = #{κ_i ≥ j + 1}
    let mut at_least = Vec::new();
    let mut prev = 0;
    for k in 0.. {
        let t = RationalMatrix::from_fn((k + 1) * rows, (k + 1) * cols, |i, j| {
            let (bi, bj) = (i / rows, j / cols);
            match coefficients.get(bi.wrapping_sub(bj)) {
                Some(c) if bi >= bj => c[(i % rows, j % cols)].clone(),
                _ => Rational::zero(),
            }
        });
        let total = (k + 1) * cols - rank_exact(&t) - (cols - rank) * (k + 1);
        if total == prev {
            break;
        }
        at_least.push(total - prev);
        prev = total;
    }
    let mut out = vec![0; rank];
    for (j, &c) in at_least.iter().enumerate() {
        for slot in out.iter_mut().rev().take(c) {
            *slot = j + 1;
        }
    }
    out.sort_unstable();
    out
}

/// Groups the roots of the invariant polynomials `g_1 | g_2 | ...` by their
/// partial-multiplicity sequences.
fn finite_classes(invariants: &[RationalPolynomial]) -> BTreeMap<EigenvalueClass, Vec<usize>> {
    let Some(last) = invariants.last().filter(|g| g.degree() > Degree::Finite(0)) else {
        return BTreeMap::new();
    };
    let radical = |g: &RationalPolynomial| g.exact_div(&poly_gcd(g, &g.derivative())).monic();
    let h = radical(last);
    let mut parts: Vec<(RationalPolynomial, Vec<usize>)> = vec![(h.clone(), Vec::new())];
    for g in invariants {
        let mut pieces = squarefree_decomposition(g);
        let covered = pieces
            .iter()
            .fold(RationalPolynomial::one(), |acc, (_, f)| &acc * f);
        pieces.push((0, h.exact_div(&covered)));
        let mut next = Vec::new();
        for (part, seq) in &parts {
            for (e, piece) in &pieces {
                let c = poly_gcd(part, piece);
                if c.degree() > Degree::Finite(0) {
                    let mut s = seq.clone();
                    s.push(*e);
                    next.push((c, s));
                }
            }
        }
        parts = next;
    }
    parts
        .into_iter()
        .map(|(poly, seq)| {
            (
                EigenvalueClass::from_polynomial(poly),
                seq.into_iter().filter(|&e| e > 0).collect(),
            )
        })
        .collect()
}

/// Complete eigenstructure of an arbitrary (not necessarily skew) polynomial.
pub fn analyze_general(p: &MatrixPolynomial, d: usize) -> Result<CompleteEigenstructure> {
    let e = analyze_parts(p, d, false)?;
    e.validate_index_sum()?;
    Ok(e)
}

/// Complete eigenstructure of a skew-symmetric polynomial at grade `d`,
/// with pairing and index-sum checks.
pub fn analyze(p: &SkewMatrixPolynomial, d: usize) -> Result<CompleteEigenstructure> {
    let e = analyze_parts(p.as_matrix(), d, true)?;
    e.validate_skew()?;
    e.validate_index_sum()?;
    Ok(e)
}

fn analyze_parts(p: &MatrixPolynomial, d: usize, skew: bool) -> Result<CompleteEigenstructure> {
    let deg = p.degree();
    if deg > Degree::Finite(d) {
        return Err(Error::GradeTooSmall {
            grade: d,
            degree: deg.or_zero(),
        });
    }
    let rank = normal_rank(p);
    let right = minimal_indices_with_rank(p, rank);
    let left = if skew {
        right.clone()
    } else {
        minimal_indices_with_rank(&p.transpose(), rank)
    };
    let infinite = multiplicities_at_zero(&rev(p, d)?, rank);
    let used: usize = infinite.iter().chain(&left).chain(&right).sum();
    let finite_degree = (rank * d).checked_sub(used).ok_or_else(|| {
        Error::InternalInconsistency(format!("index sum {used} exceeds rank·grade {}", rank * d))
    })?;
    // the Smith form is only needed to locate finite eigenvalues
    let finite = if finite_degree == 0 {
        BTreeMap::new()
    } else {
        let smith = smith_form(p);
        if skew {
            skew_smith_from(&smith)?;
        }
        if smith.rank != rank {
            return Err(Error::InternalInconsistency(format!(
                "normal rank {rank}, Smith rank {}",
                smith.rank
            )));
        }
        finite_classes(&smith.invariant_polynomials)
    };
    Ok(CompleteEigenstructure {
        size: p.rows(),
        cols: (p.rows() != p.cols()).then_some(p.cols()),
        grade: d,
        rank,
        finite,
        infinite,
        left_minimal: left,
        right_minimal: right,
    })
}

/// Both sides of the smallest-infinite-multiplicity law and the leading
/// coefficient verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteLaw {
    pub gamma1: usize,
    pub grade_minus_degree: usize,
    pub leading_is_zero: bool,
}

/// `γ₁ = d - deg P`, and `P_d = 0` exactly when `γ₁ ≥ 1`.
pub fn smallest_infinite_multiplicity_law(
    p: &SkewMatrixPolynomial,
    d: usize,
) -> Result<InfiniteLaw> {
    let deg = match p.degree() {
        Degree::NegInfinity => return Err(Error::ZeroRank),
        Degree::Finite(k) => k,
    };
    if deg > d {
        return Err(Error::GradeTooSmall {
            grade: d,
            degree: deg,
        });
    }
    let infinite = infinite_structure(p, d)?;
    let gamma1 = *infinite.first().ok_or(Error::ZeroRank)?;
    let law = InfiniteLaw {
        gamma1,
        grade_minus_degree: d - deg,
        leading_is_zero: p.coefficient(d).is_zero(),
    };
    if law.gamma1 != law.grade_minus_degree || law.leading_is_zero != (gamma1 >= 1) {
        return Err(Error::InternalInconsistency(format!(
            "γ₁ = {gamma1} but d - deg = {}",
            d - deg
        )));
    }
    Ok(law)
}

/// Structural equality, grade included.
pub fn same_orbit(e1: &CompleteEigenstructure, e2: &CompleteEigenstructure) -> bool {
    e1 == e2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{assemble_skew, blocklist_eigenstructure, BlockList, SkewBlock};

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    fn skew2(e: RationalPolynomial, grade: usize) -> SkewMatrixPolynomial {
        SkewMatrixPolynomial::new(
            MatrixPolynomial::from_entries(2, 2, grade, vec![p(&[]), e.clone(), -e, p(&[])])
                .unwrap(),
        )
        .unwrap()
    }

    fn block(b: Vec<SkewBlock>) -> SkewMatrixPolynomial {
        assemble_skew(&BlockList::skew(b).unwrap()).unwrap()
    }

    #[test]
    fn minimal_index_examples() {
        assert_eq!(minimal_indices(&block(vec![SkewBlock::M(1)])), vec![1]);
        assert_eq!(
            minimal_indices(&skew2(p(&[0, 0, 1]), 2)),
            Vec::<usize>::new()
        );
        assert_eq!(minimal_indices(&MatrixPolynomial::zero(1, 1, 3)), vec![0]);
        assert_eq!(
            minimal_indices(&block(vec![
                SkewBlock::M(3),
                SkewBlock::M(0),
                SkewBlock::M(2)
            ])),
            vec![0, 2, 3]
        );
    }

    #[test]
    fn profile_is_convex() {
        let m = block(vec![SkewBlock::M(1), SkewBlock::M(2)]);
        let prof = convolution_profile(&m, 4).kernel_dims;
        assert_eq!(&prof[..2], &[0, 1]);
        assert!(prof.windows(2).all(|w| w[0] <= w[1]));
        assert!(prof.windows(3).all(|w| w[2] + w[0] >= 2 * w[1]));
    }

    #[test]
    fn infinite_examples() {
        assert_eq!(
            infinite_structure(&block(vec![SkewBlock::K(1)]), 1).unwrap(),
            vec![1, 1]
        );
        let l2 = skew2(p(&[0, 0, 1]), 2);
        assert_eq!(infinite_structure(&l2, 2).unwrap(), vec![0, 0]);
        assert_eq!(
            infinite_structure(&l2.with_grade(3).unwrap(), 3).unwrap(),
            vec![1, 1]
        );
        assert!(matches!(
            infinite_structure(&l2, 1),
            Err(Error::GradeTooSmall { .. })
        ));
    }

    #[test]
    fn analyze_examples() {
        let e = analyze(&skew2(p(&[0, 0, 1]), 2), 2).unwrap();
        assert_eq!(e.rank, 2);
        assert_eq!(
            e.finite.get(&EigenvalueClass::from_polynomial(p(&[0, 1]))),
            Some(&vec![2, 2])
        );
        assert_eq!(e.finite.len(), 1);
        assert_eq!(e.infinite, vec![0, 0]);
        assert!(e.left_minimal.is_empty());

        let mk = block(vec![SkewBlock::M(1), SkewBlock::K(1)]);
        let e = analyze(&mk, 1).unwrap();
        assert_eq!(
            (e.rank, e.infinite.clone(), e.right_minimal.clone()),
            (4, vec![0, 0, 1, 1], vec![1])
        );
        let bl = blocklist_eigenstructure(
            &BlockList::skew(vec![SkewBlock::M(1), SkewBlock::K(1)]).unwrap(),
        );
        assert_eq!(e, bl);

        let z = SkewMatrixPolynomial::new(MatrixPolynomial::zero(3, 3, 2)).unwrap();
        let e = analyze(&z, 2).unwrap();
        assert_eq!(
            (e.rank, e.left_minimal.clone(), e.right_minimal.clone()),
            (0, vec![0; 3], vec![0; 3])
        );
    }

    #[test]
    fn classes_split_by_sequence() {
        // g = (λ-1), (λ-1)(λ+1)^2 over a diagonal
        let g1 = p(&[-1, 1]);
        let g2 = &g1 * &(&p(&[1, 1]) * &p(&[1, 1]));
        let c = finite_classes(&[g1, g2]);
        assert_eq!(
            c.get(&EigenvalueClass::from_polynomial(p(&[-1, 1]))),
            Some(&vec![1, 1])
        );
        assert_eq!(
            c.get(&EigenvalueClass::from_polynomial(p(&[1, 1]))),
            Some(&vec![2])
        );
        // λ²+1 stays one class
        let c = finite_classes(&[p(&[1, 0, 1])]);
        assert_eq!(
            c.get(&EigenvalueClass::from_polynomial(p(&[1, 0, 1]))),
            Some(&vec![1])
        );
    }

    #[test]
    fn infinite_law_examples() {
        let l = skew2(p(&[0, 1]), 1);
        assert_eq!(
            smallest_infinite_multiplicity_law(&l, 1).unwrap(),
            InfiniteLaw {
                gamma1: 0,
                grade_minus_degree: 0,
                leading_is_zero: false
            }
        );
        let l3 = l.with_grade(3).unwrap();
        assert_eq!(
            smallest_infinite_multiplicity_law(&l3, 3).unwrap().gamma1,
            2
        );
        let z = SkewMatrixPolynomial::new(MatrixPolynomial::zero(2, 2, 1)).unwrap();
        assert!(matches!(
            smallest_infinite_multiplicity_law(&z, 1),
            Err(Error::ZeroRank)
        ));
    }

    #[test]
    fn orbit_equality_is_grade_aware() {
        let l = skew2(p(&[0, 1]), 1);
        let e1 = analyze(&l, 1).unwrap();
        assert!(same_orbit(&e1, &e1));
        let e2 = analyze(&l.with_grade(2).unwrap(), 2).unwrap();
        assert!(!same_orbit(&e1, &e2));
        assert_eq!(e1.regraded(2).unwrap(), e2);
    }

    #[test]
    fn json_fields() {
        let e = analyze(&skew2(p(&[0, 0, 1]), 2), 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&e).unwrap();
        assert_eq!(v["finite"][0]["factor"], serde_json::json!(["0", "1"]));
        assert_eq!(v["finite"][0]["multiplicities"], serde_json::json!([2, 2]));
        for f in [
            "size",
            "grade",
            "rank",
            "infinite",
            "left_minimal",
            "right_minimal",
        ] {
            assert!(v.get(f).is_some(), "{f}");
        }
        let back: CompleteEigenstructure = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }
}
