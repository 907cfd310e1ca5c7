//! The six local rules that generate orbit-closure inclusion between
//! Kronecker canonical forms, their skew-paired application, and a bounded
//! breadth-first search for closure reachability.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::{general_to_skew, BlockList, Eigenvalue, GeneralBlock};
use crate::error::{Error, Result};

/// A point of the extended complex line: a finite eigenvalue or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(Eigenvalue),
    Infinity,
}

impl Point {
    fn block(&self, size: usize) -> GeneralBlock {
        match self {
            Point::Finite(e) => GeneralBlock::Finite {
                size,
                eigenvalue: e.clone(),
            },
            Point::Infinity => GeneralBlock::Infinite { size },
        }
    }

    fn of(b: &GeneralBlock) -> Option<(usize, Point)> {
        match b {
            GeneralBlock::Finite { size, eigenvalue } => {
                Some((*size, Point::Finite(eigenvalue.clone())))
            }
            GeneralBlock::Infinite { size } => Some((*size, Point::Infinity)),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(e) => write!(f, "{e}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(Point::Infinity)
        } else {
            s.parse().map(Point::Finite)
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// One rule application. `E_0(μ)` is the empty block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum RuleApplication {
    /// `L_{j-1} ⊕ L_{k+1} → L_j ⊕ L_k`, `1 ≤ j ≤ k`.
    #[serde(rename = "1")]
    RightIndices { j: usize, k: usize },
    /// `L_{j-1}ᵀ ⊕ L_{k+1}ᵀ → L_jᵀ ⊕ L_kᵀ`, `1 ≤ j ≤ k`.
    #[serde(rename = "2")]
    LeftIndices { j: usize, k: usize },
    /// `L_j ⊕ E_{k+1}(μ) → L_{j+1} ⊕ E_k(μ)`.
    #[serde(rename = "3")]
    RightAbsorb { j: usize, k: usize, mu: Point },
    /// `L_jᵀ ⊕ E_{k+1}(μ) → L_{j+1}ᵀ ⊕ E_k(μ)`.
    #[serde(rename = "4")]
    LeftAbsorb { j: usize, k: usize, mu: Point },
    /// `E_j(μ) ⊕ E_k(μ) → E_{j-1}(μ) ⊕ E_{k+1}(μ)`, `1 ≤ j ≤ k`.
    #[serde(rename = "5")]
    Jordan { j: usize, k: usize, mu: Point },
    /// `L_p ⊕ L_qᵀ → ⊕ E_{k_i}(μ_i)`, `Σ k_i = p + q + 1`, distinct `μ_i`.
    #[serde(rename = "6")]
    Split {
        p: usize,
        q: usize,
        parts: Vec<(usize, Point)>,
    },
}

impl RuleApplication {
    pub fn rule_id(&self) -> u8 {
        match self {
            RuleApplication::RightIndices { .. } => 1,
            RuleApplication::LeftIndices { .. } => 2,
            RuleApplication::RightAbsorb { .. } => 3,
            RuleApplication::LeftAbsorb { .. } => 4,
            RuleApplication::Jordan { .. } => 5,
            RuleApplication::Split { .. } => 6,
        }
    }

    /// The mirrored application that keeps a skew-realizable list paired.
    pub fn twin(&self) -> RuleApplication {
        match self.clone() {
            RuleApplication::RightIndices { j, k } => RuleApplication::LeftIndices { j, k },
            RuleApplication::LeftIndices { j, k } => RuleApplication::RightIndices { j, k },
            RuleApplication::RightAbsorb { j, k, mu } => RuleApplication::LeftAbsorb { j, k, mu },
            RuleApplication::LeftAbsorb { j, k, mu } => RuleApplication::RightAbsorb { j, k, mu },
            r @ RuleApplication::Jordan { .. } => r,
            RuleApplication::Split { p, q, parts } => RuleApplication::Split { p: q, q: p, parts },
        }
    }

    fn consumed_and_produced(&self) -> Result<(Vec<GeneralBlock>, Vec<GeneralBlock>)> {
        let side = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::SideConditionViolated(what.to_string()))
            }
        };
        let e = |mu: &Point, size: usize| {
            if size == 0 {
                vec![]
            } else {
                vec![mu.block(size)]
            }
        };
        Ok(match self {
            RuleApplication::RightIndices { j, k } => {
                side(1 <= *j && j <= k, "rule 1 needs 1 ≤ j ≤ k")?;
                (
                    vec![GeneralBlock::Right(j - 1), GeneralBlock::Right(k + 1)],
                    vec![GeneralBlock::Right(*j), GeneralBlock::Right(*k)],
                )
            }
            RuleApplication::LeftIndices { j, k } => {
                side(1 <= *j && j <= k, "rule 2 needs 1 ≤ j ≤ k")?;
                (
                    vec![GeneralBlock::Left(j - 1), GeneralBlock::Left(k + 1)],
                    vec![GeneralBlock::Left(*j), GeneralBlock::Left(*k)],
                )
            }
            RuleApplication::RightAbsorb { j, k, mu } => (
                [vec![GeneralBlock::Right(*j)], e(mu, k + 1)].concat(),
                [vec![GeneralBlock::Right(j + 1)], e(mu, *k)].concat(),
            ),
            RuleApplication::LeftAbsorb { j, k, mu } => (
                [vec![GeneralBlock::Left(*j)], e(mu, k + 1)].concat(),
                [vec![GeneralBlock::Left(j + 1)], e(mu, *k)].concat(),
            ),
            RuleApplication::Jordan { j, k, mu } => {
                side(1 <= *j && j <= k, "rule 5 needs 1 ≤ j ≤ k")?;
                (
                    [e(mu, *j), e(mu, *k)].concat(),
                    [e(mu, j - 1), e(mu, k + 1)].concat(),
                )
            }
            RuleApplication::Split { p, q, parts } => {
                side(
                    !parts.is_empty() && parts.iter().all(|(k, _)| *k >= 1),
                    "rule 6 needs nonempty E blocks",
                )?;
                side(
                    parts.iter().map(|(k, _)| k).sum::<usize>() == p + q + 1,
                    "rule 6 needs Σ k_i = p + q + 1",
                )?;
                let distinct: HashSet<&Point> = parts.iter().map(|(_, mu)| mu).collect();
                side(
                    distinct.len() == parts.len(),
                    "rule 6 needs pairwise distinct eigenvalues",
                )?;
                (
                    vec![GeneralBlock::Right(*p), GeneralBlock::Left(*q)],
                    parts.iter().map(|(k, mu)| mu.block(*k)).collect(),
                )
            }
        })
    }
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleApplication::RightIndices { j, k } => write!(f, "rule 1 (j={j}, k={k})"),
            RuleApplication::LeftIndices { j, k } => write!(f, "rule 2 (j={j}, k={k})"),
            RuleApplication::RightAbsorb { j, k, mu } => write!(f, "rule 3 (j={j}, k={k}, μ={mu})"),
            RuleApplication::LeftAbsorb { j, k, mu } => write!(f, "rule 4 (j={j}, k={k}, μ={mu})"),
            RuleApplication::Jordan { j, k, mu } => write!(f, "rule 5 (j={j}, k={k}, μ={mu})"),
            RuleApplication::Split { p, q, parts } => {
                let parts: Vec<String> =
                    parts.iter().map(|(k, mu)| format!("E_{k}({mu})")).collect();
                write!(f, "rule 6 (p={p}, q={q} → {})", parts.join(" ⊕ "))
            }
        }
    }
}

/// Applies one rule to a general-flavor list.
pub fn apply_rule(kcf: &BlockList, app: &RuleApplication) -> Result<BlockList> {
    let mut blocks = kcf.general_blocks()?.to_vec();
    let (consumed, produced) = app.consumed_and_produced()?;
    for b in &consumed {
        let pos = blocks
            .iter()
            .position(|x| x == b)
            .ok_or_else(|| Error::MissingBlocks(format!("{b} for {app}")))?;
        blocks.swap_remove(pos);
    }
    blocks.extend(produced);
    BlockList::general(blocks)
}

/// Applies a rule and its twin; the result must still be the KCF of a
/// skew-symmetric pencil.
pub fn apply_rule_paired(kcf: &BlockList, app: &RuleApplication) -> Result<BlockList> {
    let once = apply_rule(kcf, app)?;
    let twice = apply_rule(&once, &app.twin())?;
    general_to_skew(&twice)?;
    Ok(twice)
}

/// Renumbers symbolic eigenvalues `0, 1, ...` in order of their sorted block
/// sizes, so that lists differing only by a relabeling compare equal.
pub fn canonicalize(list: &BlockList) -> BlockList {
    let BlockList::General(blocks) = list else {
        return list.clone();
    };
    let mut partitions: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for b in blocks {
        if let GeneralBlock::Finite {
            size,
            eigenvalue: Eigenvalue::Symbolic(t),
        } = b
        {
            partitions.entry(*t).or_default().push(*size);
        }
    }
    if partitions.is_empty() {
        return list.clone();
    }
    let mut order: Vec<(Vec<usize>, u32)> = partitions
        .into_iter()
        .map(|(t, mut p)| {
            p.sort_unstable_by(|a, b| b.cmp(a));
            (p, t)
        })
        .collect();
    order.sort();
    let relabel: HashMap<u32, u32> = order
        .iter()
        .enumerate()
        .map(|(i, (_, t))| (*t, i as u32))
        .collect();
    let out = blocks
        .iter()
        .map(|b| match b {
            GeneralBlock::Finite {
                size,
                eigenvalue: Eigenvalue::Symbolic(t),
            } => GeneralBlock::Finite {
                size: *size,
                eigenvalue: Eigenvalue::Symbolic(relabel[t]),
            },
            other => other.clone(),
        })
        .collect();
    BlockList::general(out).expect("relabeling keeps blocks valid")
}

/// Search configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Defaults to the total size (rows + cols) of the lists.
    pub max_steps: Option<usize>,
    /// Explored-state cap; the search reports inconclusive when reached.
    pub state_cap: usize,
    /// Apply rules in skew twins. Defaults to whether both lists are skew-realizable.
    pub paired: Option<bool>,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_steps: None,
            state_cap: 200_000,
            paired: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClosureVerdict {
    /// The target is reached; each application acts on the canonicalized
    /// state left by the previous one (with its twin when paired).
    Yes {
        paired: bool,
        certificate: Vec<RuleApplication>,
    },
    /// Inconclusive: no path within the step bound or state cap.
    NoWithinBound {
        paired: bool,
        explored: usize,
        max_steps: usize,
    },
}

impl ClosureVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ClosureVerdict::Yes { .. })
    }
}

fn points_of(blocks: &[GeneralBlock]) -> Vec<Point> {
    let mut pts: Vec<Point> = blocks
        .iter()
        .filter_map(Point::of)
        .map(|(_, p)| p)
        .collect();
    pts.push(Point::Infinity);
    pts.sort();
    pts.dedup();
    pts
}

fn fresh_tag(blocks: &[GeneralBlock]) -> u32 {
    blocks
        .iter()
        .filter_map(|b| match b {
            GeneralBlock::Finite {
                eigenvalue: Eigenvalue::Symbolic(t),
                ..
            } => Some(t + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// Integer partitions of `n` into parts, largest first.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rule-6 targets: sizes on existing points, the remainder spread over fresh
/// symbolic points (which are interchangeable, so a partition suffices).
fn split_parts(total: usize, points: &[Point], fresh: u32) -> Vec<Vec<(usize, Point)>> {
    fn assign(
        i: usize,
        left: usize,
        points: &[Point],
        cur: &mut Vec<(usize, Point)>,
        out: &mut Vec<(Vec<(usize, Point)>, usize)>,
    ) {
        if i == points.len() {
            out.push((cur.clone(), left));
            return;
        }
        assign(i + 1, left, points, cur, out);
        for k in 1..=left {
            cur.push((k, points[i].clone()));
            assign(i + 1, left - k, points, cur, out);
            cur.pop();
        }
    }
    let mut partial = Vec::new();
    assign(0, total, points, &mut Vec::new(), &mut partial);
    let mut out = Vec::new();
    for (fixed, left) in partial {
        for part in partitions(left, left) {
            let mut parts = fixed.clone();
            parts.extend(
                part.into_iter()
                    .enumerate()
                    .map(|(i, k)| (k, Point::Finite(Eigenvalue::Symbolic(fresh + i as u32)))),
            );
            if !parts.is_empty() {
                out.push(parts);
            }
        }
    }
    out
}

fn candidate_rules(blocks: &[GeneralBlock], paired: bool) -> Vec<RuleApplication> {
    let mut right: Vec<usize> = Vec::new();
    let mut left: Vec<usize> = Vec::new();
    let mut eig: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for b in blocks {
        match b {
            GeneralBlock::Right(k) => right.push(*k),
            GeneralBlock::Left(k) => left.push(*k),
            _ => {
                let (size, p) = Point::of(b).expect("E block");
                eig.entry(p).or_default().push(size);
            }
        }
    }
    for v in [&mut right, &mut left] {
        v.sort_unstable();
        v.dedup();
    }
    let count = |v: &[GeneralBlock], b: &GeneralBlock| v.iter().filter(|x| *x == b).count();
    let mut out = Vec::new();
    let index_moves = |idx: &[usize],
                       kind: fn(usize) -> GeneralBlock,
                       mk: fn(usize, usize) -> RuleApplication,
                       out: &mut Vec<_>| {
        for (ai, &a) in idx.iter().enumerate() {
            for &b in &idx[ai..] {
                if b >= a + 2 && (a != b || count(blocks, &kind(a)) >= 2) {
                    out.push(mk(a + 1, b - 1));
                }
            }
        }
    };
    index_moves(
        &right,
        GeneralBlock::Right,
        |j, k| RuleApplication::RightIndices { j, k },
        &mut out,
    );
    if !paired {
        index_moves(
            &left,
            GeneralBlock::Left,
            |j, k| RuleApplication::LeftIndices { j, k },
            &mut out,
        );
    }
    for (mu, sizes) in &eig {
        let mut distinct = sizes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for &s in &distinct {
            for &j in &right {
                out.push(RuleApplication::RightAbsorb {
                    j,
                    k: s - 1,
                    mu: mu.clone(),
                });
            }
            if !paired {
                for &j in &left {
                    out.push(RuleApplication::LeftAbsorb {
                        j,
                        k: s - 1,
                        mu: mu.clone(),
                    });
                }
            }
        }
        for (ai, &a) in distinct.iter().enumerate() {
            for &b in &distinct[ai..] {
                if a != b || sizes.iter().filter(|&&x| x == a).count() >= 2 {
                    out.push(RuleApplication::Jordan {
                        j: a,
                        k: b,
                        mu: mu.clone(),
                    });
                }
            }
        }
    }
    let points = points_of(blocks);
    let fresh = fresh_tag(blocks);
    for &p in &right {
        for &q in &left {
            for parts in split_parts(p + q + 1, &points, fresh) {
                out.push(RuleApplication::Split { p, q, parts });
            }
        }
    }
    out
}

/// Breadth-first search from `source` for `target` (the more generic list).
pub fn closure_reachable(
    target: &BlockList,
    source: &BlockList,
    options: &ClosureOptions,
) -> Result<ClosureVerdict> {
    let (target, source) = (target.to_general(), source.to_general());
    if target.dims() != source.dims() {
        return Err(Error::ShapeMismatch(format!(
            "target is {:?}, source is {:?}",
            target.dims(),
            source.dims()
        )));
    }
    let paired = options
        .paired
        .unwrap_or_else(|| general_to_skew(&target).is_ok() && general_to_skew(&source).is_ok());
    let (rows, cols) = target.dims();
    let max_steps = options.max_steps.unwrap_or(rows + cols);
    let target = canonicalize(&target);
    let start = canonicalize(&source);

    let mut parent: HashMap<BlockList, Option<(BlockList, RuleApplication)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut found = None;
    while let Some((state, depth)) = queue.pop_front() {
        if state == target {
            found = Some(state);
            break;
        }
        if depth == max_steps || parent.len() >= options.state_cap {
            continue;
        }
        let blocks = state.general_blocks().expect("general flavor");
        for app in candidate_rules(blocks, paired) {
            let next = if paired {
                apply_rule_paired(&state, &app)
            } else {
                apply_rule(&state, &app)
            };
            let Ok(next) = next else { continue };
            let next = canonicalize(&next);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), app)));
            queue.push_back((next, depth + 1));
        }
    }
    let Some(mut state) = found else {
        return Ok(ClosureVerdict::NoWithinBound {
            paired,
            explored: parent.len(),
            max_steps,
        });
    };
    let mut certificate = Vec::new();
    while let Some(Some((prev, app))) = parent.get(&state) {
        certificate.push(app.clone());
        state = prev.clone();
    }
    certificate.reverse();
    Ok(ClosureVerdict::Yes {
        paired,
        certificate,
    })
}

/// Replays a certificate from `source`, returning the canonicalized end state.
pub fn replay_certificate(
    source: &BlockList,
    certificate: &[RuleApplication],
    paired: bool,
) -> Result<BlockList> {
    let mut state = canonicalize(&source.to_general());
    for app in certificate {
        state = canonicalize(&if paired {
            apply_rule_paired(&state, app)?
        } else {
            apply_rule(&state, app)?
        });
    }
    Ok(state)
}

/// Whether `certificate` carries `source` to `target` up to relabeling of
/// symbolic eigenvalues.
pub fn certificate_reaches(
    target: &BlockList,
    source: &BlockList,
    certificate: &[RuleApplication],
    paired: bool,
) -> Result<bool> {
    Ok(replay_certificate(source, certificate, paired)? == canonicalize(&target.to_general()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{skew_to_general, SkewBlock};

    fn g(b: Vec<GeneralBlock>) -> BlockList {
        BlockList::general(b).unwrap()
    }

    fn mu() -> Point {
        Point::Finite(Eigenvalue::Symbolic(0))
    }

    fn e(size: usize) -> GeneralBlock {
        GeneralBlock::Finite {
            size,
            eigenvalue: Eigenvalue::Symbolic(0),
        }
    }

    #[test]
    fn rule_examples() {
        use GeneralBlock::*;
        let r = apply_rule(
            &g(vec![Right(0), Right(2)]),
            &RuleApplication::RightIndices { j: 1, k: 1 },
        )
        .unwrap();
        assert_eq!(r, g(vec![Right(1), Right(1)]));

        let r = apply_rule(
            &g(vec![Right(0), Left(0)]),
            &RuleApplication::Split {
                p: 0,
                q: 0,
                parts: vec![(1, mu())],
            },
        )
        .unwrap();
        assert_eq!(r, g(vec![e(1)]));

        let r = apply_rule(
            &g(vec![Right(0), e(2)]),
            &RuleApplication::RightAbsorb {
                j: 0,
                k: 1,
                mu: mu(),
            },
        )
        .unwrap();
        assert_eq!(r, g(vec![Right(1), e(1)]));

        let r = apply_rule(
            &g(vec![Right(0), e(1)]),
            &RuleApplication::RightAbsorb {
                j: 0,
                k: 0,
                mu: mu(),
            },
        )
        .unwrap();
        assert_eq!(r, g(vec![Right(1)]));
    }

    #[test]
    fn rule_errors() {
        use GeneralBlock::*;
        assert!(matches!(
            apply_rule(
                &g(vec![Right(0)]),
                &RuleApplication::RightIndices { j: 1, k: 1 }
            ),
            Err(Error::MissingBlocks(_))
        ));
        assert!(matches!(
            apply_rule(
                &g(vec![Right(0), Right(2)]),
                &RuleApplication::RightIndices { j: 2, k: 1 }
            ),
            Err(Error::SideConditionViolated(_))
        ));
        let dup = RuleApplication::Split {
            p: 0,
            q: 1,
            parts: vec![(1, mu()), (1, mu())],
        };
        assert!(matches!(
            apply_rule(&g(vec![Right(0), Left(1)]), &dup),
            Err(Error::SideConditionViolated(_))
        ));
        let short = RuleApplication::Split {
            p: 0,
            q: 1,
            parts: vec![(1, mu())],
        };
        assert!(matches!(
            apply_rule(&g(vec![Right(0), Left(1)]), &short),
            Err(Error::SideConditionViolated(_))
        ));
    }

    #[test]
    fn rules_preserve_dimensions() {
        use GeneralBlock::*;
        let l = g(vec![
            Right(0),
            Right(3),
            Left(1),
            e(2),
            e(1),
            Infinite { size: 2 },
        ]);
        for app in candidate_rules(l.general_blocks().unwrap(), false) {
            let out = apply_rule(&l, &app).unwrap();
            assert_eq!(out.dims(), l.dims(), "{app}");
        }
    }

    #[test]
    fn paired_examples() {
        use GeneralBlock::*;
        let l = g(vec![Right(0), Right(2), Left(0), Left(2)]);
        let r = apply_rule_paired(&l, &RuleApplication::RightIndices { j: 1, k: 1 }).unwrap();
        assert_eq!(
            general_to_skew(&r).unwrap(),
            BlockList::skew(vec![SkewBlock::M(1), SkewBlock::M(1)]).unwrap()
        );

        // an H_1 pair shrinks into an M_0: L_0 ⊕ L_0ᵀ ⊕ E_1 ⊕ E_1 → L_1 ⊕ L_1ᵀ
        let h = skew_to_general(
            &BlockList::skew(vec![
                SkewBlock::M(0),
                SkewBlock::H {
                    size: 1,
                    eigenvalue: Eigenvalue::Symbolic(0),
                },
            ])
            .unwrap(),
        )
        .unwrap();
        let r = apply_rule_paired(
            &h,
            &RuleApplication::RightAbsorb {
                j: 0,
                k: 0,
                mu: mu(),
            },
        )
        .unwrap();
        assert_eq!(
            general_to_skew(&r).unwrap(),
            BlockList::skew(vec![SkewBlock::M(1)]).unwrap()
        );

        // two M_0 blocks turn into one H_1: rank rises by two
        let mm = skew_to_general(&BlockList::skew(vec![SkewBlock::M(0), SkewBlock::M(0)]).unwrap())
            .unwrap();
        let r = apply_rule_paired(
            &mm,
            &RuleApplication::Split {
                p: 0,
                q: 0,
                parts: vec![(1, mu())],
            },
        )
        .unwrap();
        let s = general_to_skew(&r).unwrap();
        assert_eq!(
            s,
            BlockList::skew(vec![SkewBlock::H {
                size: 1,
                eigenvalue: Eigenvalue::Symbolic(0)
            }])
            .unwrap()
        );
    }

    #[test]
    fn paired_breaks_are_rejected() {
        let h = skew_to_general(
            &BlockList::skew(vec![SkewBlock::H {
                size: 2,
                eigenvalue: Eigenvalue::int(1),
            }])
            .unwrap(),
        )
        .unwrap();
        let one = Point::Finite(Eigenvalue::int(1));
        assert!(apply_rule_paired(
            &h,
            &RuleApplication::Jordan {
                j: 2,
                k: 2,
                mu: one
            }
        )
        .is_err());
    }

    #[test]
    fn relabeling_is_canonical() {
        let a = g(vec![
            GeneralBlock::Finite {
                size: 2,
                eigenvalue: Eigenvalue::Symbolic(5),
            },
            GeneralBlock::Finite {
                size: 1,
                eigenvalue: Eigenvalue::Symbolic(9),
            },
        ]);
        let b = g(vec![
            GeneralBlock::Finite {
                size: 2,
                eigenvalue: Eigenvalue::Symbolic(0),
            },
            GeneralBlock::Finite {
                size: 1,
                eigenvalue: Eigenvalue::Symbolic(3),
            },
        ]);
        assert_eq!(canonicalize(&a), canonicalize(&b));
    }

    #[test]
    fn closure_examples() {
        use GeneralBlock::*;
        let v = closure_reachable(
            &g(vec![Right(1), Right(1)]),
            &g(vec![Right(0), Right(2)]),
            &ClosureOptions::default(),
        )
        .unwrap();
        assert_eq!(
            v,
            ClosureVerdict::Yes {
                paired: false,
                certificate: vec![RuleApplication::RightIndices { j: 1, k: 1 }]
            }
        );

        let target = g(vec![e(1)]);
        let source = g(vec![Right(0), Left(0)]);
        let ClosureVerdict::Yes {
            certificate,
            paired,
        } = closure_reachable(&target, &source, &ClosureOptions::default()).unwrap()
        else {
            panic!("not reached")
        };
        assert_eq!(certificate.len(), 1);
        assert!(certificate_reaches(&target, &source, &certificate, paired).unwrap());
    }

    #[test]
    fn less_generic_target_is_not_reached() {
        use GeneralBlock::*;
        let v = closure_reachable(
            &g(vec![Right(0), Right(2)]),
            &g(vec![Right(1), Right(1)]),
            &ClosureOptions::default(),
        )
        .unwrap();
        assert!(!v.is_yes());
        assert!(matches!(
            closure_reachable(
                &g(vec![Right(0)]),
                &g(vec![Right(1)]),
                &ClosureOptions::default()
            ),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn certificate_json() {
        let app = RuleApplication::Split {
            p: 0,
            q: 1,
            parts: vec![(1, Point::Infinity), (1, mu())],
        };
        let s = serde_json::to_string(&app).unwrap();
        assert_eq!(
            s,
            r##"{"rule":"6","p":0,"q":1,"parts":[[1,"inf"],[1,"#0"]]}"##
        );
        assert_eq!(serde_json::from_str::<RuleApplication>(&s).unwrap(), app);
        assert_eq!(app.rule_id(), 6);
    }
}
