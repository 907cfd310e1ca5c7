use super::{Degree, MatrixPolynomial, RationalPolynomial, SkewMatrixPolynomial};
use crate::error::{Error, Result};

/// Smith form under unimodular equivalence: the nonzero invariant
/// polynomials, monic, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_polynomials: Vec<RationalPolynomial>,
}

/// The paired form under unimodular congruence of a skew-symmetric
/// polynomial: `r` blocks `[[0, g_j], [-g_j, 0]]` and a zero block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewSmithForm {
    pub r: usize,
    pub invariant_polynomials: Vec<RationalPolynomial>,
}

struct Work {
    rows: usize,
    cols: usize,
    a: Vec<RationalPolynomial>,
}

impl Work {
    fn at(&self, i: usize, j: usize) -> &RationalPolynomial {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }

    /// row_i -= q * row_t, touching columns `from..`
    fn row_axpy(&mut self, i: usize, t: usize, q: &RationalPolynomial, from: usize) {
        for j in from..self.cols {
            let src = self.at(t, j);
            if src.is_zero() {
                continue;
            }
            let v = self.at(i, j) - &(q * src);
            self.a[i * self.cols + j] = v;
        }
    }

    fn col_axpy(&mut self, j: usize, t: usize, q: &RationalPolynomial, from: usize) {
        for i in from..self.rows {
            let src = self.at(i, t);
            if src.is_zero() {
                continue;
            }
            let v = self.at(i, j) - &(q * src);
            self.a[i * self.cols + j] = v;
        }
    }

    fn scale_row(&mut self, i: usize, c: &num_rational::BigRational, from: usize) {
        for j in from..self.cols {
            let v = self.at(i, j).scale(c);
            self.a[i * self.cols + j] = v;
        }
    }

    /// Minimal-degree nonzero entry of the trailing submatrix, ties broken by
    /// smallest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Degree, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let d = self.at(i, j).degree();
                if d == Degree::NegInfinity {
                    continue;
                }
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                    if d == Degree::Finite(0) {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form by elementary unimodular row and column operations.
///
/// Pivots are minimal-degree entries; the pivot row is made monic so that
/// quotients introduce no new denominators. Coefficient growth is not
/// bounded in general.
pub fn smith_form(p: &MatrixPolynomial) -> SmithForm {
    let mut w = Work {
        rows: p.rows(),
        cols: p.cols(),
        a: p.entries().to_vec(),
    };
    let mut invariants = Vec::new();
    let n = w.rows.min(w.cols);
    for t in 0..n {
        loop {
            let Some((pi, pj)) = w.pivot(t) else {
                return finish(invariants);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let lc = w.at(t, t).leading().expect("nonzero pivot").recip();
            w.scale_row(t, &lc, t);
            let piv = w.at(t, t).clone();

            let mut clean = true;
            for i in t + 1..w.rows {
                if w.at(i, t).is_zero() {
                    continue;
                }
                let (q, r) = w.at(i, t).div_rem(&piv);
                w.row_axpy(i, t, &q, t);
                clean &= r.is_zero();
            }
            for j in t + 1..w.cols {
                if w.at(t, j).is_zero() {
                    continue;
                }
                let (q, r) = w.at(t, j).div_rem(&piv);
                w.col_axpy(j, t, &q, t);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad_row =
                (t + 1..w.rows).find(|&i| (t + 1..w.cols).any(|j| !piv.divides(w.at(i, j))));
            match bad_row {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into the pivot row
                    w.row_axpy(t, i, &-RationalPolynomial::one(), t);
                }
                None => break,
            }
        }
        invariants.push(w.at(t, t).monic());
    }
    finish(invariants)
}

fn finish(invariant_polynomials: Vec<RationalPolynomial>) -> SmithForm {
    SmithForm {
        rank: invariant_polynomials.len(),
        invariant_polynomials,
    }
}

/// Paired skew-symmetric Smith form. Read off from the ordinary Smith form,
/// whose invariant polynomials of a skew input come in equal pairs.
pub fn skew_smith(p: &SkewMatrixPolynomial) -> Result<SkewSmithForm> {
    skew_smith_from(&smith_form(p))
}

pub(crate) fn skew_smith_from(s: &SmithForm) -> Result<SkewSmithForm> {
    if !s.rank.is_multiple_of(2) {
        return Err(Error::InternalInconsistency(format!(
            "odd rank {} for a skew-symmetric input",
            s.rank
        )));
    }
    let mut g = Vec::with_capacity(s.rank / 2);
    for pair in s.invariant_polynomials.chunks(2) {
        if pair[0] != pair[1] {
            return Err(Error::InternalInconsistency(format!(
                "unpaired invariant polynomials {} and {}",
                pair[0], pair[1]
            )));
        }
        g.push(pair[0].clone());
    }
    Ok(SkewSmithForm {
        r: g.len(),
        invariant_polynomials: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    fn mp(rows: usize, cols: usize, grade: usize, e: &[&[i64]]) -> MatrixPolynomial {
        MatrixPolynomial::from_entries(rows, cols, grade, e.iter().map(|c| p(c)).collect()).unwrap()
    }

    #[test]
    fn smith_examples() {
        let a = mp(2, 2, 2, &[&[0, 1], &[], &[], &[0, -1, 1]]);
        let s = smith_form(&a);
        assert_eq!(s.rank, 2);
        assert_eq!(s.invariant_polynomials, vec![p(&[0, 1]), p(&[0, -1, 1])]);

        let id = mp(2, 2, 0, &[&[1], &[], &[], &[1]]);
        assert_eq!(
            smith_form(&id).invariant_polynomials,
            vec![p(&[1]), p(&[1])]
        );

        let l2 = mp(2, 2, 2, &[&[], &[0, 0, 1], &[0, 0, -1], &[]]);
        assert_eq!(
            smith_form(&l2).invariant_polynomials,
            vec![p(&[0, 0, 1]), p(&[0, 0, 1])]
        );
    }

    #[test]
    fn non_divisible_diagonal_gets_fixed() {
        // diag(λ, λ+1) ~ diag(1, λ(λ+1))
        let a = mp(2, 2, 1, &[&[0, 1], &[], &[], &[1, 1]]);
        assert_eq!(
            smith_form(&a).invariant_polynomials,
            vec![p(&[1]), p(&[0, 1, 1])]
        );
    }

    #[test]
    fn skew_smith_examples() {
        let k = SkewMatrixPolynomial::new(mp(2, 2, 1, &[&[], &[0, 1], &[0, -1], &[]])).unwrap();
        let s = skew_smith(&k).unwrap();
        assert_eq!((s.r, s.invariant_polynomials), (1, vec![p(&[0, 1])]));

        // M_1 block
        let m1 = SkewMatrixPolynomial::new(mp(
            3,
            3,
            1,
            &[&[], &[0, 1], &[-1], &[0, -1], &[], &[], &[1], &[], &[]],
        ))
        .unwrap();
        let s = skew_smith(&m1).unwrap();
        assert_eq!((s.r, s.invariant_polynomials), (1, vec![p(&[1])]));
    }

    #[test]
    fn zero_and_rectangular() {
        assert_eq!(smith_form(&MatrixPolynomial::zero(3, 2, 1)).rank, 0);
        let l1 = mp(1, 2, 1, &[&[0, 1], &[-1]]);
        assert_eq!(smith_form(&l1).invariant_polynomials, vec![p(&[1])]);
    }
}
