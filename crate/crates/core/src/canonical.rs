//! Canonical blocks of the Kronecker canonical form (general flavor: `E`,
//! `E_inf`, `L`, `Lᵀ`) and of the skew-symmetric form under congruence
//! (skew flavor: `H`, `K`, `M`), their literal assembly, and the eigenstructure
//! a block list encodes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::eigenstructure::{CompleteEigenstructure, EigenvalueClass};
use crate::error::{Error, Result};
use crate::exactalg::{
    MatrixPolynomial, Rational, RationalMatrix, RationalPolynomial, SkewMatrixPolynomial,
};
use crate::io::{format_rational, parse_rational};

/// A finite eigenvalue: an exact rational, or an opaque symbolic point that
/// is distinct from every rational and every other tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigenvalue {
    Rational(Rational),
    Symbolic(u32),
}

impl Eigenvalue {
    pub fn int(n: i64) -> Self {
        Eigenvalue::Rational(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Rational(q) => write!(f, "{}", format_rational(q)),
            Eigenvalue::Symbolic(t) => write!(f, "#{t}"),
        }
    }
}

impl std::str::FromStr for Eigenvalue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix('#') {
            Some(tag) => tag
                .parse()
                .map(Eigenvalue::Symbolic)
                .map_err(|_| Error::Parse(format!("bad symbolic eigenvalue {s:?}"))),
            None => parse_rational(s).map(Eigenvalue::Rational),
        }
    }
}

/// Block of the Kronecker canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneralBlock {
    /// `E_k(μ) = λI_k - J_k(μ)`, `k ≥ 1`.
    Finite { size: usize, eigenvalue: Eigenvalue },
    /// `E_k(∞) = λJ_k(0) - I_k`, `k ≥ 1`.
    Infinite { size: usize },
    /// `L_k = λG_k - F_k`, `k × (k+1)`.
    Right(usize),
    /// `L_kᵀ`, `(k+1) × k`.
    Left(usize),
}

impl GeneralBlock {
    fn kind_rank(&self) -> u8 {
        match self {
            GeneralBlock::Finite { .. } => 0,
            GeneralBlock::Infinite { .. } => 1,
            GeneralBlock::Right(_) => 2,
            GeneralBlock::Left(_) => 3,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            GeneralBlock::Finite { size, .. } | GeneralBlock::Infinite { size } => *size,
            GeneralBlock::Right(k) | GeneralBlock::Left(k) => *k,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            GeneralBlock::Finite { size, .. } | GeneralBlock::Infinite { size } => (*size, *size),
            GeneralBlock::Right(k) => (*k, k + 1),
            GeneralBlock::Left(k) => (k + 1, *k),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GeneralBlock::Finite { size: 0, .. } | GeneralBlock::Infinite { size: 0 } => {
                Err(Error::ParamDomain("E blocks need size ≥ 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl Ord for GeneralBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| other.index().cmp(&self.index()))
            .then_with(|| match (self, other) {
                (
                    GeneralBlock::Finite { eigenvalue: a, .. },
                    GeneralBlock::Finite { eigenvalue: b, .. },
                ) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for GeneralBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneralBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralBlock::Finite { size, eigenvalue } => write!(f, "E_{size}({eigenvalue})"),
            GeneralBlock::Infinite { size } => write!(f, "E_{size}(∞)"),
            GeneralBlock::Right(k) => write!(f, "L_{k}"),
            GeneralBlock::Left(k) => write!(f, "L_{k}^T"),
        }
    }
}

/// Block of the skew-symmetric canonical form under congruence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SkewBlock {
    /// `H_h(μ)`, size `2h`, `h ≥ 1`.
    H { size: usize, eigenvalue: Eigenvalue },
    /// `K_k`, size `2k`, `k ≥ 1`.
    K(usize),
    /// `M_m`, size `2m + 1`; `M_0` is the 1×1 zero pencil.
    M(usize),
}

impl SkewBlock {
    fn kind_rank(&self) -> u8 {
        match self {
            SkewBlock::M(_) => 0,
            SkewBlock::K(_) => 1,
            SkewBlock::H { .. } => 2,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            SkewBlock::H { size, .. } => *size,
            SkewBlock::K(k) | SkewBlock::M(k) => *k,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SkewBlock::H { size, .. } => 2 * size,
            SkewBlock::K(k) => 2 * k,
            SkewBlock::M(m) => 2 * m + 1,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SkewBlock::H { size: 0, .. } | SkewBlock::K(0) => {
                Err(Error::ParamDomain("H and K blocks need index ≥ 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl Ord for SkewBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| other.index().cmp(&self.index()))
            .then_with(|| match (self, other) {
                (SkewBlock::H { eigenvalue: a, .. }, SkewBlock::H { eigenvalue: b, .. }) => {
                    a.cmp(b)
                }
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for SkewBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SkewBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewBlock::H { size, eigenvalue } => write!(f, "H_{size}({eigenvalue})"),
            SkewBlock::K(k) => write!(f, "K_{k}"),
            SkewBlock::M(m) => write!(f, "M_{m}"),
        }
    }
}

/// A multiset of canonical blocks, kept canonically sorted so that equality
/// is equality up to permutation of summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBlockList", into = "RawBlockList")]
pub enum BlockList {
    General(Vec<GeneralBlock>),
    Skew(Vec<SkewBlock>),
}

impl BlockList {
    pub fn general(mut blocks: Vec<GeneralBlock>) -> Result<Self> {
        blocks.iter().try_for_each(GeneralBlock::validate)?;
        blocks.sort();
        Ok(BlockList::General(blocks))
    }

    pub fn skew(mut blocks: Vec<SkewBlock>) -> Result<Self> {
        blocks.iter().try_for_each(SkewBlock::validate)?;
        blocks.sort();
        Ok(BlockList::Skew(blocks))
    }

    pub fn flavor(&self) -> &'static str {
        match self {
            BlockList::General(_) => "general",
            BlockList::Skew(_) => "skew",
        }
    }

    pub fn general_blocks(&self) -> Result<&[GeneralBlock]> {
        match self {
            BlockList::General(b) => Ok(b),
            BlockList::Skew(_) => Err(Error::FlavorMismatch {
                expected: "general",
            }),
        }
    }

    pub fn skew_blocks(&self) -> Result<&[SkewBlock]> {
        match self {
            BlockList::Skew(b) => Ok(b),
            BlockList::General(_) => Err(Error::FlavorMismatch { expected: "skew" }),
        }
    }

    /// Total (rows, cols).
    pub fn dims(&self) -> (usize, usize) {
        match self {
            BlockList::General(b) => b
                .iter()
                .map(GeneralBlock::dims)
                .fold((0, 0), |(r, c), (br, bc)| (r + br, c + bc)),
            BlockList::Skew(b) => {
                let n = b.iter().map(SkewBlock::dim).sum();
                (n, n)
            }
        }
    }

    /// The general-flavor view: skew lists are converted, general ones cloned.
    pub fn to_general(&self) -> BlockList {
        match self {
            BlockList::General(_) => self.clone(),
            BlockList::Skew(_) => skew_to_general(self).expect("skew flavor"),
        }
    }
}

impl fmt::Display for BlockList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            BlockList::General(b) => b.iter().map(ToString::to_string).collect(),
            BlockList::Skew(b) => b.iter().map(ToString::to_string).collect(),
        };
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawBlock {
    kind: String,
    index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvalue: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawBlockList {
    flavor: String,
    blocks: Vec<RawBlock>,
}

impl TryFrom<RawBlockList> for BlockList {
    type Error = Error;
    fn try_from(raw: RawBlockList) -> Result<Self> {
        let eig = |b: &RawBlock| -> Result<Eigenvalue> {
            b.eigenvalue
                .as_deref()
                .ok_or_else(|| Error::Parse(format!("{} block needs an eigenvalue", b.kind)))?
                .parse()
        };
        match raw.flavor.as_str() {
            "skew" => {
                let blocks = raw
                    .blocks
                    .iter()
                    .map(|b| match b.kind.as_str() {
                        "H" => Ok(SkewBlock::H {
                            size: b.index,
                            eigenvalue: eig(b)?,
                        }),
                        "K" => Ok(SkewBlock::K(b.index)),
                        "M" => Ok(SkewBlock::M(b.index)),
                        other => Err(Error::Parse(format!("unknown skew block kind {other:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                BlockList::skew(blocks)
            }
            "general" => {
                let blocks = raw
                    .blocks
                    .iter()
                    .map(|b| match b.kind.as_str() {
                        "E" => Ok(GeneralBlock::Finite {
                            size: b.index,
                            eigenvalue: eig(b)?,
                        }),
                        "E_inf" => Ok(GeneralBlock::Infinite { size: b.index }),
                        "L" => Ok(GeneralBlock::Right(b.index)),
                        "LT" => Ok(GeneralBlock::Left(b.index)),
                        other => Err(Error::Parse(format!(
                            "unknown general block kind {other:?}"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                BlockList::general(blocks)
            }
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

impl From<BlockList> for RawBlockList {
    fn from(list: BlockList) -> Self {
        let raw = |kind: &str, index: usize, e: Option<&Eigenvalue>| RawBlock {
            kind: kind.to_string(),
            index,
            eigenvalue: e.map(ToString::to_string),
        };
        match list {
            BlockList::Skew(b) => RawBlockList {
                flavor: "skew".into(),
                blocks: b
                    .iter()
                    .map(|b| match b {
                        SkewBlock::H { size, eigenvalue } => raw("H", *size, Some(eigenvalue)),
                        SkewBlock::K(k) => raw("K", *k, None),
                        SkewBlock::M(m) => raw("M", *m, None),
                    })
                    .collect(),
            },
            BlockList::General(b) => RawBlockList {
                flavor: "general".into(),
                blocks: b
                    .iter()
                    .map(|b| match b {
                        GeneralBlock::Finite { size, eigenvalue } => {
                            raw("E", *size, Some(eigenvalue))
                        }
                        GeneralBlock::Infinite { size } => raw("E_inf", *size, None),
                        GeneralBlock::Right(k) => raw("L", *k, None),
                        GeneralBlock::Left(k) => raw("LT", *k, None),
                    })
                    .collect(),
            },
        }
    }
}

/// A pencil `λA - B` as its two exact coefficient matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

impl Pencil {
    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn to_matrix_polynomial(&self) -> MatrixPolynomial {
        MatrixPolynomial::pencil(&self.a, &self.b).expect("equal shapes")
    }

    /// Reads `λA - B` off a polynomial of grade at most one.
    pub fn from_matrix_polynomial(p: &MatrixPolynomial) -> Result<Self> {
        if p.grade() > 1 {
            return Err(Error::ShapeMismatch(format!(
                "grade {} is not a pencil",
                p.grade()
            )));
        }
        Ok(Pencil {
            a: p.coefficient(1),
            b: p.coefficient(0).scale(&-Rational::one()),
        })
    }

    fn direct_sum(parts: &[Pencil]) -> Pencil {
        let rows = parts.iter().map(Pencil::rows).sum();
        let cols = parts.iter().map(Pencil::cols).sum();
        let mut a = RationalMatrix::zeros(rows, cols);
        let mut b = RationalMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            a.set_block(r, c, &p.a);
            b.set_block(r, c, &p.b);
            r += p.rows();
            c += p.cols();
        }
        Pencil { a, b }
    }
}

fn rational_of(e: &Eigenvalue) -> Result<&Rational> {
    match e {
        Eigenvalue::Rational(q) => Ok(q),
        Eigenvalue::Symbolic(_) => Err(Error::SymbolicEigenvalue),
    }
}

fn jordan(k: usize, mu: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(k, k, |i, j| {
        if i == j {
            mu.clone()
        } else if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `G_k = [I_k 0]` and `F_k = [0 I_k]`, both `k × (k+1)`.
fn g_mat(k: usize) -> RationalMatrix {
    RationalMatrix::from_fn(k, k + 1, |i, j| {
        if i == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn f_mat(k: usize) -> RationalMatrix {
    RationalMatrix::from_fn(k, k + 1, |i, j| {
        if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `[[0, X], [-Xᵀ, 0]]`
fn skew_embed(x: &RationalMatrix) -> RationalMatrix {
    let (p, q) = (x.rows(), x.cols());
    let mut out = RationalMatrix::zeros(p + q, p + q);
    out.set_block(0, p, x);
    out.set_block(p, 0, &x.transpose().scale(&-Rational::one()));
    out
}

fn general_block_pencil(b: &GeneralBlock) -> Result<Pencil> {
    Ok(match b {
        GeneralBlock::Finite { size, eigenvalue } => Pencil {
            a: RationalMatrix::identity(*size),
            b: jordan(*size, rational_of(eigenvalue)?),
        },
        GeneralBlock::Infinite { size } => Pencil {
            a: jordan(*size, &Rational::zero()),
            b: RationalMatrix::identity(*size),
        },
        GeneralBlock::Right(k) => Pencil {
            a: g_mat(*k),
            b: f_mat(*k),
        },
        GeneralBlock::Left(k) => Pencil {
            a: g_mat(*k).transpose(),
            b: f_mat(*k).transpose(),
        },
    })
}

fn skew_block_pencil(b: &SkewBlock) -> Result<Pencil> {
    Ok(match b {
        SkewBlock::H { size, eigenvalue } => Pencil {
            a: skew_embed(&RationalMatrix::identity(*size)),
            b: skew_embed(&jordan(*size, rational_of(eigenvalue)?)),
        },
        SkewBlock::K(k) => Pencil {
            a: skew_embed(&jordan(*k, &Rational::zero())),
            b: skew_embed(&RationalMatrix::identity(*k)),
        },
        SkewBlock::M(m) => Pencil {
            a: skew_embed(&g_mat(*m)),
            b: skew_embed(&f_mat(*m)),
        },
    })
}

/// Direct sum of the literal general blocks.
pub fn assemble_general(list: &BlockList) -> Result<Pencil> {
    let parts = list
        .general_blocks()?
        .iter()
        .map(general_block_pencil)
        .collect::<Result<Vec<_>>>()?;
    Ok(Pencil::direct_sum(&parts))
}

/// Direct sum of the literal skew blocks, as a skew pencil of grade 1.
pub fn assemble_skew(list: &BlockList) -> Result<SkewMatrixPolynomial> {
    let parts = list
        .skew_blocks()?
        .iter()
        .map(skew_block_pencil)
        .collect::<Result<Vec<_>>>()?;
    SkewMatrixPolynomial::new(Pencil::direct_sum(&parts).to_matrix_polynomial())
}

/// The KCF of a skew canonical form: `H_h(μ) ↦ E_h(μ)²`, `K_k ↦ E_k(∞)²`,
/// `M_m ↦ L_m ⊕ L_mᵀ`.
pub fn skew_to_general(list: &BlockList) -> Result<BlockList> {
    let mut out = Vec::new();
    for b in list.skew_blocks()? {
        let pair = match b {
            SkewBlock::H { size, eigenvalue } => {
                let e = GeneralBlock::Finite {
                    size: *size,
                    eigenvalue: eigenvalue.clone(),
                };
                [e.clone(), e]
            }
            SkewBlock::K(k) => [
                GeneralBlock::Infinite { size: *k },
                GeneralBlock::Infinite { size: *k },
            ],
            SkewBlock::M(m) => [GeneralBlock::Right(*m), GeneralBlock::Left(*m)],
        };
        out.extend(pair);
    }
    BlockList::general(out)
}

/// Inverse of [`skew_to_general`]; fails with `PairingBroken` when the KCF
/// is not the image of a skew canonical form.
pub fn general_to_skew(list: &BlockList) -> Result<BlockList> {
    let mut finite: BTreeMap<(usize, Eigenvalue), usize> = BTreeMap::new();
    let mut infinite: BTreeMap<usize, usize> = BTreeMap::new();
    let mut right: BTreeMap<usize, usize> = BTreeMap::new();
    let mut left: BTreeMap<usize, usize> = BTreeMap::new();
    for b in list.general_blocks()? {
        match b {
            GeneralBlock::Finite { size, eigenvalue } => {
                *finite.entry((*size, eigenvalue.clone())).or_default() += 1
            }
            GeneralBlock::Infinite { size } => *infinite.entry(*size).or_default() += 1,
            GeneralBlock::Right(k) => *right.entry(*k).or_default() += 1,
            GeneralBlock::Left(k) => *left.entry(*k).or_default() += 1,
        }
    }
    if right != left || finite.values().any(|c| c % 2 == 1) || infinite.values().any(|c| c % 2 == 1)
    {
        return Err(Error::PairingBroken);
    }
    let mut out = Vec::new();
    for ((size, eigenvalue), c) in finite {
        out.extend(std::iter::repeat_n(
            SkewBlock::H { size, eigenvalue },
            c / 2,
        ));
    }
    for (k, c) in infinite {
        out.extend(std::iter::repeat_n(SkewBlock::K(k), c / 2));
    }
    for (m, c) in right {
        out.extend(std::iter::repeat_n(SkewBlock::M(m), c));
    }
    BlockList::skew(out)
}

/// The complete eigenstructure (as a pencil, grade 1) encoded by a block list.
pub fn blocklist_eigenstructure(list: &BlockList) -> CompleteEigenstructure {
    let general = list.to_general();
    let blocks = general.general_blocks().expect("general flavor");
    let (rows, cols) = general.dims();
    let mut per_eigenvalue: BTreeMap<Eigenvalue, Vec<usize>> = BTreeMap::new();
    let mut infinite = Vec::new();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for b in blocks {
        match b {
            GeneralBlock::Finite { size, eigenvalue } => per_eigenvalue
                .entry(eigenvalue.clone())
                .or_default()
                .push(*size),
            GeneralBlock::Infinite { size } => infinite.push(*size),
            GeneralBlock::Right(k) => right.push(*k),
            GeneralBlock::Left(k) => left.push(*k),
        }
    }
    let rank = cols - right.len();

    // eigenvalues sharing a multiplicity sequence form one class
    let mut classes: BTreeMap<Vec<usize>, (RationalPolynomial, Vec<u32>)> = BTreeMap::new();
    for (mu, mut mults) in per_eigenvalue {
        mults.sort_unstable();
        let entry = classes
            .entry(mults)
            .or_insert_with(|| (RationalPolynomial::one(), Vec::new()));
        match mu {
            Eigenvalue::Rational(q) => entry.0 = &entry.0 * &RationalPolynomial::linear_root(&q),
            Eigenvalue::Symbolic(t) => entry.1.push(t),
        }
    }
    let finite = classes
        .into_iter()
        .map(|(mults, (polynomial, mut symbolic))| {
            symbolic.sort_unstable();
            (
                EigenvalueClass {
                    polynomial,
                    symbolic,
                },
                mults,
            )
        })
        .collect();

    infinite.sort_unstable();
    let mut padded = vec![0; rank.saturating_sub(infinite.len())];
    padded.extend(infinite);
    right.sort_unstable();
    left.sort_unstable();
    CompleteEigenstructure {
        size: rows,
        cols: (rows != cols).then_some(cols),
        grade: 1,
        rank,
        finite,
        infinite: padded,
        left_minimal: left,
        right_minimal: right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn skew(blocks: Vec<SkewBlock>) -> BlockList {
        BlockList::skew(blocks).unwrap()
    }

    #[test]
    fn assemble_general_examples() {
        let p = assemble_general(
            &BlockList::general(vec![GeneralBlock::Finite {
                size: 1,
                eigenvalue: Eigenvalue::int(5),
            }])
            .unwrap(),
        )
        .unwrap();
        assert_eq!(p.a, RationalMatrix::from_ints(&[&[1]]));
        assert_eq!(p.b, RationalMatrix::from_ints(&[&[5]]));

        let l0 =
            assemble_general(&BlockList::general(vec![GeneralBlock::Right(0)]).unwrap()).unwrap();
        assert_eq!((l0.rows(), l0.cols()), (0, 1));

        let e = assemble_general(
            &BlockList::general(vec![
                GeneralBlock::Infinite { size: 1 },
                GeneralBlock::Infinite { size: 1 },
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(e.a.is_zero());
        assert_eq!(e.b, RationalMatrix::identity(2));
    }

    #[test]
    fn assemble_skew_examples() {
        let k1 = assemble_skew(&skew(vec![SkewBlock::K(1)])).unwrap();
        assert!(k1.coefficient(1).is_zero());
        assert_eq!(
            k1.coefficient(0),
            RationalMatrix::from_ints(&[&[0, -1], &[1, 0]])
        );

        let m0 = assemble_skew(&skew(vec![SkewBlock::M(0)])).unwrap();
        assert_eq!((m0.rows(), m0.cols()), (1, 1));
        assert!(m0.is_zero());

        let m1 = assemble_skew(&skew(vec![SkewBlock::M(1)])).unwrap();
        assert_eq!(m1.size(), 3);
        assert_eq!(*m1.entry(0, 1), RationalPolynomial::lambda());
        assert_eq!(*m1.entry(0, 2), RationalPolynomial::from_ints(&[-1]));
        assert_eq!(*m1.entry(1, 0), -RationalPolynomial::lambda());
        assert_eq!(*m1.entry(2, 0), RationalPolynomial::from_ints(&[1]));
        assert!(m1.entry(1, 2).is_zero() && m1.entry(0, 0).is_zero());
    }

    #[test]
    fn symbolic_blocks_do_not_assemble() {
        let h = skew(vec![SkewBlock::H {
            size: 1,
            eigenvalue: Eigenvalue::Symbolic(0),
        }]);
        assert!(matches!(assemble_skew(&h), Err(Error::SymbolicEigenvalue)));
    }

    #[test]
    fn flavor_mismatch() {
        let g = BlockList::general(vec![GeneralBlock::Right(1)]).unwrap();
        assert!(matches!(
            assemble_skew(&g),
            Err(Error::FlavorMismatch { .. })
        ));
        assert!(matches!(
            skew_to_general(&g),
            Err(Error::FlavorMismatch { .. })
        ));
        assert!(matches!(
            assemble_general(&skew(vec![SkewBlock::M(0)])),
            Err(Error::FlavorMismatch { .. })
        ));
    }

    #[test]
    fn conversion_examples() {
        let g = skew_to_general(&skew(vec![SkewBlock::K(1)])).unwrap();
        assert_eq!(
            g,
            BlockList::general(vec![GeneralBlock::Infinite { size: 1 }; 2]).unwrap()
        );
        let g = skew_to_general(&skew(vec![SkewBlock::M(2)])).unwrap();
        assert_eq!(
            g,
            BlockList::general(vec![GeneralBlock::Left(2), GeneralBlock::Right(2)]).unwrap()
        );
        let h = skew(vec![SkewBlock::H {
            size: 1,
            eigenvalue: Eigenvalue::int(3),
        }]);
        let g = skew_to_general(&h).unwrap();
        assert_eq!(
            g,
            BlockList::general(vec![
                GeneralBlock::Finite {
                    size: 1,
                    eigenvalue: Eigenvalue::int(3)
                };
                2
            ])
            .unwrap()
        );
        assert_eq!(general_to_skew(&g).unwrap(), h);
        let broken = BlockList::general(vec![GeneralBlock::Right(1)]).unwrap();
        assert!(matches!(
            general_to_skew(&broken),
            Err(Error::PairingBroken)
        ));
    }

    #[test]
    fn blocklist_eigenstructure_examples() {
        let e = blocklist_eigenstructure(&skew(vec![SkewBlock::M(1)]));
        assert_eq!(
            (e.rank, e.left_minimal.clone(), e.right_minimal.clone()),
            (2, vec![1], vec![1])
        );
        assert!(e.finite.is_empty());
        assert_eq!(e.infinite, vec![0, 0]);

        let e = blocklist_eigenstructure(
            &BlockList::general(vec![GeneralBlock::Infinite { size: 1 }]).unwrap(),
        );
        assert_eq!((e.rank, e.infinite.clone()), (1, vec![1]));

        let e =
            blocklist_eigenstructure(&BlockList::general(vec![GeneralBlock::Right(0)]).unwrap());
        assert_eq!(
            (e.rank, e.right_minimal.clone(), e.size, e.cols),
            (0, vec![0], 0, Some(1))
        );
    }

    #[test]
    fn eigenvalues_with_equal_sequences_share_a_class() {
        let l = skew(vec![
            SkewBlock::H {
                size: 1,
                eigenvalue: Eigenvalue::int(1),
            },
            SkewBlock::H {
                size: 1,
                eigenvalue: Eigenvalue::int(-1),
            },
            SkewBlock::H {
                size: 2,
                eigenvalue: Eigenvalue::int(0),
            },
        ]);
        let e = blocklist_eigenstructure(&l);
        let keys: Vec<_> = e.finite.keys().map(|k| k.polynomial.clone()).collect();
        assert_eq!(keys.len(), 2);
        assert!(keys.contains(&RationalPolynomial::from_ints(&[-1, 0, 1])));
        assert!(keys.contains(&RationalPolynomial::from_ints(&[0, 1])));
    }

    #[test]
    fn canonical_sorting_defines_equality() {
        let a = skew(vec![SkewBlock::K(1), SkewBlock::M(1), SkewBlock::M(2)]);
        let b = skew(vec![SkewBlock::M(2), SkewBlock::K(1), SkewBlock::M(1)]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "M_2 ⊕ M_1 ⊕ K_1");
        assert_eq!(a.dims(), (2 + 5 + 3, 10));
    }

    #[test]
    fn json_form() {
        let l = skew(vec![SkewBlock::M(1), SkewBlock::K(1)]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(
            s,
            r#"{"flavor":"skew","blocks":[{"kind":"M","index":1},{"kind":"K","index":1}]}"#
        );
        let back: BlockList = serde_json::from_str(
            r#"{"flavor":"skew","blocks":[{"kind":"K","index":1},{"kind":"M","index":1}]}"#,
        )
        .unwrap();
        assert_eq!(back, l);
        let h: BlockList = serde_json::from_str(
            r#"{"flavor":"skew","blocks":[{"kind":"H","index":2,"eigenvalue":"3/4"}]}"#,
        )
        .unwrap();
        assert_eq!(
            h.skew_blocks().unwrap()[0],
            SkewBlock::H {
                size: 2,
                eigenvalue: Eigenvalue::Rational(crate::exactalg::ratio(3, 4))
            }
        );
        assert!(serde_json::from_str::<BlockList>(
            r#"{"flavor":"skew","blocks":[{"kind":"K","index":0}]}"#
        )
        .is_err());
        let _ = int(0);
    }
}
