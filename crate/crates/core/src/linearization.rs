//! Grade padding and the block-tridiagonal skew-symmetric strong
//! linearization of odd-grade skew-symmetric matrix polynomials.

use num_traits::One;

use crate::eigenstructure::{analyze, CompleteEigenstructure};
use crate::error::{Error, Result};
use crate::exactalg::{
    normal_rank, MatrixPolynomial, Rational, RationalMatrix, RationalPolynomial,
    SkewMatrixPolynomial,
};

/// The `md × md` linearization `F_P` of an `m × m` skew polynomial of odd grade `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsylPencil {
    pub m: usize,
    pub d: usize,
    pub pencil: SkewMatrixPolynomial,
    /// `A_0, ..., A_d` of the source polynomial.
    pub provenance: Vec<RationalMatrix>,
}

/// The same entries declared at grade `deg + 1`.
pub fn pad_grade(p: &SkewMatrixPolynomial) -> SkewMatrixPolynomial {
    p.with_grade(p.grade() + 1)
        .expect("raising the grade never fails")
}

/// Assembles `F_P`. Block `(i, i)` for odd `i` is `λA_{d-i+1} + A_{d-i}`;
/// the off-diagonal couplings are `∓I` after odd block rows and `∓λI` after
/// even ones. For `d = 1` this is `P` itself.
pub fn build_linearization(p: &SkewMatrixPolynomial) -> Result<GsylPencil> {
    let d = p.grade();
    if d.is_multiple_of(2) {
        return Err(Error::EvenGrade(d));
    }
    let m = p.size();
    let a = p.coefficients();
    let n = m * d;
    let mut entries = vec![RationalPolynomial::zero(); n * n];
    let mut set = |r: usize, c: usize, e: RationalPolynomial| entries[r * n + c] = e;
    for i in 1..=d {
        let o = (i - 1) * m;
        if i % 2 == 1 {
            let (hi, lo) = (&a[d - i + 1], &a[d - i]);
            for r in 0..m {
                for c in 0..m {
                    set(
                        o + r,
                        o + c,
                        RationalPolynomial::new(vec![lo[(r, c)].clone(), hi[(r, c)].clone()]),
                    );
                }
            }
        }
        if i < d {
            let coupling = if i % 2 == 1 {
                RationalPolynomial::one()
            } else {
                RationalPolynomial::lambda()
            };
            for k in 0..m {
                set(o + k, o + m + k, -coupling.clone());
                set(o + m + k, o + k, coupling.clone());
            }
        }
    }
    let pencil = SkewMatrixPolynomial::new(MatrixPolynomial::from_entries(n, n, 1, entries)?)?;
    Ok(GsylPencil {
        m,
        d,
        pencil,
        provenance: a,
    })
}

/// Reads `A_0, ..., A_d` back from a pencil laid out as `F_P`, or `None` if
/// some fixed or zero position of the template is violated.
pub fn gsyl_coefficients(
    q: &MatrixPolynomial,
    m: usize,
    d: usize,
) -> Result<Option<Vec<RationalMatrix>>> {
    let n = m * d;
    if q.rows() != n || q.cols() != n || d.is_multiple_of(2) {
        return Err(Error::ShapeMismatch(format!(
            "expected a {n}x{n} pencil for m = {m}, odd d = {d}"
        )));
    }
    if q.grade() > 1 || !q.is_skew() {
        return Ok(None);
    }
    let expected = |bi: usize, bj: usize, r: usize, c: usize| -> Option<RationalPolynomial> {
        // None: free position
        let i = bi + 1;
        if bi == bj {
            return i.is_multiple_of(2).then(RationalPolynomial::zero);
        }
        let delta = |e: RationalPolynomial| {
            if r == c {
                e
            } else {
                RationalPolynomial::zero()
            }
        };
        if bj == bi + 1 {
            let e = if i % 2 == 1 {
                RationalPolynomial::one()
            } else {
                RationalPolynomial::lambda()
            };
            return Some(delta(-e));
        }
        if bi == bj + 1 {
            let e = if (i - 1) % 2 == 1 {
                RationalPolynomial::one()
            } else {
                RationalPolynomial::lambda()
            };
            return Some(delta(e));
        }
        Some(RationalPolynomial::zero())
    };
    for r in 0..n {
        for c in 0..n {
            if let Some(e) = expected(r / m, c / m, r % m, c % m) {
                if *q.entry(r, c) != e {
                    return Ok(None);
                }
            }
        }
    }
    let mut a = vec![RationalMatrix::zeros(m, m); d + 1];
    for i in (1..=d).step_by(2) {
        let o = (i - 1) * m;
        for r in 0..m {
            for c in 0..m {
                let e = q.entry(o + r, o + c);
                a[d - i + 1][(r, c)] = e.coeff(1);
                a[d - i][(r, c)] = e.coeff(0);
            }
        }
    }
    Ok(Some(a))
}

/// Whether `q` lies in the space of linearizations `F_P` of `m × m` skew
/// polynomials of grade `d`.
pub fn gsyl_membership(q: &MatrixPolynomial, m: usize, d: usize) -> Result<bool> {
    Ok(gsyl_coefficients(q, m, d)?.is_some())
}

/// Eigenstructure of `P` and of `F_P` with the checks of the linearization contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub base: CompleteEigenstructure,
    pub linearized: CompleteEigenstructure,
    pub shift: usize,
    /// Every minimal index of `F_P` is one of `P` plus `shift`.
    pub minimal_indices_shifted: bool,
    pub finite_preserved: bool,
    /// Nonzero partial multiplicities at infinity agree.
    pub infinite_preserved: bool,
    /// `rank F_P = rank P + m(d-1)`.
    pub rank_relation: bool,
}

impl ShiftReport {
    pub fn holds(&self) -> bool {
        self.minimal_indices_shifted
            && self.finite_preserved
            && self.infinite_preserved
            && self.rank_relation
    }
}

pub fn verify_shift(p: &SkewMatrixPolynomial) -> Result<ShiftReport> {
    let d = p.grade();
    if d.is_multiple_of(2) {
        return Err(Error::EvenGrade(d));
    }
    if d < 3 {
        return Err(Error::ParamDomain(format!(
            "grade {d} has no minimal index shift to check"
        )));
    }
    let f = build_linearization(p)?;
    let base = analyze(p, d)?;
    let linearized = analyze(&f.pencil, 1)?;
    let shift = (d - 1) / 2;
    let shifted: Vec<usize> = base.right_minimal.iter().map(|e| e + shift).collect();
    let nonzero = |v: &[usize]| v.iter().copied().filter(|&g| g > 0).collect::<Vec<_>>();
    let rank_relation = linearized.rank == base.rank + p.size() * (d - 1)
        && normal_rank(f.pencil.as_matrix()) == normal_rank(p.as_matrix()) + p.size() * (d - 1);
    Ok(ShiftReport {
        minimal_indices_shifted: linearized.right_minimal == shifted
            && linearized.left_minimal == shifted,
        finite_preserved: linearized.finite == base.finite,
        infinite_preserved: nonzero(&linearized.infinite) == nonzero(&base.infinite),
        rank_relation,
        shift,
        base,
        linearized,
    })
}

/// `F_P` evaluated as the pair `(X, Y)` of `λX - Y`.
pub fn pencil_pair(f: &GsylPencil) -> (RationalMatrix, RationalMatrix) {
    let p = f.pencil.as_matrix();
    (p.coefficient(1), p.coefficient(0).scale(&-Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{assemble_skew, BlockList, SkewBlock};

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

    #[test]
    fn padding_only_changes_grade() {
        let l2 = skew2(p(&[0, 0, 1]), 2);
        let padded = pad_grade(&l2);
        assert_eq!(padded.grade(), 3);
        assert_eq!(padded.entries(), l2.entries());
        let e0 = analyze(&l2, 2).unwrap();
        let e1 = analyze(&padded, 3).unwrap();
        let e2 = analyze(&pad_grade(&padded), 4).unwrap();
        assert_eq!(
            (e1.rank, &e1.finite, &e1.right_minimal),
            (e0.rank, &e0.finite, &e0.right_minimal)
        );
        assert_eq!(e1.infinite, vec![1, 1]);
        assert_eq!(e2.infinite, vec![2, 2]);
    }

    #[test]
    fn grade_one_is_identity() {
        let l = skew2(p(&[3, 1]), 1);
        assert_eq!(build_linearization(&l).unwrap().pencil, l);
    }

    #[test]
    fn even_grade_rejected() {
        assert!(matches!(
            build_linearization(&skew2(p(&[0, 0, 1]), 2)),
            Err(Error::EvenGrade(2))
        ));
    }

    #[test]
    fn grade_three_layout() {
        // A_3 = 0, A_2 = J, A_1 = 2J, A_0 = 3J with J = [[0,1],[-1,0]]
        let q = skew2(p(&[3, 2, 1]), 3);
        let f = build_linearization(&q).unwrap();
        let mp = f.pencil.as_matrix();
        assert_eq!((mp.rows(), mp.grade()), (6, 1));
        assert_eq!(*mp.entry(0, 1), p(&[1]));
        assert_eq!(*mp.entry(0, 2), p(&[-1]));
        assert_eq!(*mp.entry(2, 0), p(&[1]));
        assert_eq!(*mp.entry(2, 4), p(&[0, -1]));
        assert_eq!(*mp.entry(4, 2), p(&[0, 1]));
        assert_eq!(*mp.entry(4, 5), p(&[3, 2]));
        assert!(mp.entry(2, 3).is_zero());
        assert_eq!(normal_rank(mp), 2 + 2 * 2);
        assert_eq!(
            gsyl_coefficients(mp, 2, 3).unwrap().unwrap(),
            q.coefficients()
        );
    }

    #[test]
    fn membership() {
        let q = skew2(p(&[3, 2, 1]), 3);
        let f = build_linearization(&q).unwrap();
        assert!(gsyl_membership(f.pencil.as_matrix(), 2, 3).unwrap());
        let mut e = f.pencil.as_matrix().entries().to_vec();
        e[2] = p(&[-2]);
        e[2 * 6] = p(&[2]);
        let altered = MatrixPolynomial::from_entries(6, 6, 1, e).unwrap();
        assert!(!gsyl_membership(&altered, 2, 3).unwrap());
        assert!(matches!(
            gsyl_membership(&altered, 2, 5),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn shift_examples() {
        // M_1 as a grade-3 polynomial has minimal index 1; F_P has 2
        let m1 = assemble_skew(&BlockList::skew(vec![SkewBlock::M(1)]).unwrap())
            .unwrap()
            .with_grade(3)
            .unwrap();
        let rep = verify_shift(&m1).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.linearized.right_minimal, vec![2]);

        let rep = verify_shift(&skew2(p(&[1, -1, 0, 1]), 3)).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert!(matches!(
            verify_shift(&m1.with_grade(1).unwrap()),
            Err(Error::ParamDomain(_))
        ));
    }

    #[test]
    fn padded_linearization_has_positive_infinite_structure() {
        let l2 = skew2(p(&[1, 0, 1]), 2);
        let f = build_linearization(&pad_grade(&l2)).unwrap();
        let e = analyze(&f.pencil, 1).unwrap();
        assert!(e.infinite.iter().filter(|&&g| g > 0).count() >= 2);
        assert_eq!(
            e.infinite
                .iter()
                .filter(|&&g| g > 0)
                .copied()
                .collect::<Vec<_>>(),
            vec![1, 1]
        );
    }
}
