//! Random bounded-rank skew-symmetric polynomials, the rank-increasing
//! perturbation of a lower-rank polynomial, and the Monte Carlo genericity
//! experiment.

pub mod numeric;

use std::time::Instant;

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenstructure::{analyze, same_orbit, CompleteEigenstructure};
use crate::error::{Error, Result};
use crate::exactalg::{
    frobenius_distance, normal_rank, rank_exact, MatrixPolynomial, Rational, RationalMatrix,
    RationalPolynomial, SkewMatrixPolynomial,
};
use crate::genericity::{generic_poly_structure, PolyGenericParams};
use numeric::{rank_fp, singular_values, FloatPolynomialMatrix, C64, DEFAULT_TOL};

/// Resampling cap of [`sample_bounded_rank`].
pub const MAX_ATTEMPTS: usize = 100;

/// Default integer coefficient bound.
pub const DEFAULT_RANGE: i64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub m: usize,
    pub d: usize,
    pub r: usize,
    /// Entries are drawn uniformly from the integers in `[-c, c]`.
    pub coefficient_range: i64,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(m: usize, d: usize, r: usize, coefficient_range: i64, seed: u64) -> Result<Self> {
        PolyGenericParams::new(m, d, r)?;
        if coefficient_range < 1 {
            return Err(Error::ParamDomain(format!(
                "coefficient range {coefficient_range} must be ≥ 1"
            )));
        }
        Ok(SampleSpec {
            m,
            d,
            r,
            coefficient_range,
            seed,
        })
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SampleSpec { seed, ..*self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub polynomial: SkewMatrixPolynomial,
    /// Draws discarded before this one.
    pub resamples: usize,
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, c: i64) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| {
        Rational::from_integer(rng.random_range(-c..=c).into())
    })
}

/// `P = Qᵀ [[0, B], [-Bᵀ, 0]] Q` with a random `r × (m-r)` integer polynomial
/// `B` of grade `d` and a random nonsingular integer `Q`; redrawn until
/// `rank P = 2r`.
pub fn sample_bounded_rank(spec: &SampleSpec) -> Result<Sample> {
    SampleSpec::new(spec.m, spec.d, spec.r, spec.coefficient_range, spec.seed)?;
    let (m, d, r, c) = (spec.m, spec.d, spec.r, spec.coefficient_range);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for attempt in 0..MAX_ATTEMPTS {
        let q = random_matrix(&mut rng, m, m, c);
        if rank_exact(&q) < m {
            continue;
        }
        let b: Vec<RationalMatrix> = (0..=d)
            .map(|_| random_matrix(&mut rng, r, m - r, c))
            .collect();
        let inner = MatrixPolynomial::from_fn(m, m, d, |i, j| {
            let coeffs = |i: usize, j: usize| {
                RationalPolynomial::new(b.iter().map(|bk| bk[(i, j)].clone()).collect())
            };
            match (i < r, j < r) {
                (true, false) => coeffs(i, j - r),
                (false, true) => -coeffs(j, i - r),
                _ => RationalPolynomial::zero(),
            }
        })?;
        let p = inner.congruence(&q);
        if normal_rank(&p) == 2 * r {
            return Ok(Sample {
                polynomial: SkewMatrixPolynomial::new(p)?,
                resamples: attempt,
            });
        }
    }
    Err(Error::AttemptsExhausted(MAX_ATTEMPTS))
}

/// `P = Q + E/k` and the evidence that its rank is `2r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub polynomial: SkewMatrixPolynomial,
    /// The constant skew direction `E`, `‖E‖²_F = 2(r - r₁)` up to rounding.
    pub direction: RationalMatrix,
    /// Point where `Q(μ)` has full normal rank.
    pub mu: Rational,
    /// `rank_fp` at `μ` and at one further point.
    pub ranks: [usize; 2],
    /// Smallest retained and largest discarded singular value at `μ`.
    pub gap: (f64, f64),
}

/// Adds `E/k`, where `E` pairs up an orthonormal basis of the kernel of
/// `Q(μ)` into `r - r₁` rotation blocks. The perturbed polynomial is exact
/// (the floating `E` is converted to rationals entrywise).
pub fn perturb_rank_increase(
    q: &SkewMatrixPolynomial,
    r: usize,
    k: u64,
    seed: u64,
) -> Result<Perturbation> {
    let m = q.size();
    if k == 0 || 2 * r > m {
        return Err(Error::ParamDomain(format!("need k ≥ 1 and 2r ≤ {m}")));
    }
    let rank_q = normal_rank(q.as_matrix());
    if rank_q >= 2 * r {
        return Err(Error::ParamDomain(format!(
            "rank {rank_q} is not below the target {}",
            2 * r
        )));
    }
    let mu = (0..)
        .map(|i: i64| Rational::from_integer(if i % 2 == 1 { (i + 1) / 2 } else { -i / 2 }.into()))
        .find(|mu| rank_exact(&q.evaluate(mu)) == rank_q)
        .expect("a polynomial attains its normal rank at all but finitely many points");

    let at_mu = q.evaluate(&mu).to_f64();
    let svd = at_mu.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let null: Vec<nalgebra::DVector<f64>> = order[..m - rank_q]
        .iter()
        .map(|&i| v_t.row(i).transpose())
        .collect();

    let mut e = DMatrix::<f64>::zeros(m, m);
    for pair in 0..(2 * r - rank_q) / 2 {
        let (a, b) = (&null[2 * pair], &null[2 * pair + 1]);
        e += a * b.transpose() - b * a.transpose();
    }
    let direction = RationalMatrix::from_fn(m, m, |i, j| {
        let x = if i < j { e[(i, j)] } else { -e[(j, i)] };
        if i == j {
            Rational::zero()
        } else {
            Rational::from_float(x).expect("finite")
        }
    });
    let scaled = direction.scale(&Rational::new(1.into(), k.into()));
    let p = q
        .as_matrix()
        .add(&MatrixPolynomial::constant(&scaled, q.grade()))?;
    let p = SkewMatrixPolynomial::new(p)?;

    let fp = FloatPolynomialMatrix::from_exact(p.as_matrix());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extra = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let mu_f = C64::new(mu.to_f64().unwrap_or(0.0), 0.0);
    let ranks = [
        rank_fp(&fp.evaluate(mu_f), DEFAULT_TOL),
        rank_fp(&fp.evaluate(extra), DEFAULT_TOL),
    ];
    let s = singular_values(&fp.evaluate(mu_f));
    let gap = (
        s.get(2 * r - 1).copied().unwrap_or(0.0),
        s.get(2 * r).copied().unwrap_or(0.0),
    );
    if ranks != [2 * r, 2 * r] {
        return Err(Error::RankVerificationFailed(format!(
            "ranks {ranks:?} instead of {}; singular values {} / {} around the cut",
            2 * r,
            gap.0,
            gap.1
        )));
    }
    Ok(Perturbation {
        polynomial: p,
        direction,
        mu,
        ranks,
        gap,
    })
}

/// Exact Frobenius distance between a perturbation and its base polynomial.
pub fn perturbation_distance(p: &Perturbation, q: &SkewMatrixPolynomial) -> Result<f64> {
    Ok(frobenius_distance(p.polynomial.as_matrix(), q.as_matrix())?.value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub trials: usize,
    pub matches: usize,
    pub mismatch_seeds: Vec<u64>,
    pub resamples: usize,
    pub expected: CompleteEigenstructure,
    /// Wall-clock seconds; not part of the deterministic content and not serialized.
    #[serde(skip, default)]
    pub elapsed: f64,
}

impl ExperimentReport {
    pub fn mismatches(&self) -> usize {
        self.mismatch_seeds.len()
    }

    /// Equality of everything but the timing.
    pub fn same_outcome(&self, other: &Self) -> bool {
        (
            self.trials,
            self.matches,
            &self.mismatch_seeds,
            self.resamples,
            &self.expected,
        ) == (
            other.trials,
            other.matches,
            &other.mismatch_seeds,
            other.resamples,
            &other.expected,
        )
    }
}

/// Seed of trial `i`: the first output of stream `i` of the base generator.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng.next_u64()
}

/// Draws `trials` samples and compares their exact eigenstructure with the
/// generic one. Trials run in parallel; the report is schedule-independent.
pub fn monte_carlo_genericity(spec: &SampleSpec, trials: usize) -> Result<ExperimentReport> {
    let expected = generic_poly_structure(spec.m, spec.d, spec.r)?;
    let start = Instant::now();
    let outcomes: Vec<(u64, bool, usize)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(spec.seed, i);
            match sample_bounded_rank(&spec.with_seed(seed)) {
                Ok(s) => {
                    let ok =
                        analyze(&s.polynomial, spec.d).is_ok_and(|e| same_orbit(&e, &expected));
                    (seed, ok, s.resamples)
                }
                Err(_) => (seed, false, MAX_ATTEMPTS),
            }
        })
        .collect();
    Ok(ExperimentReport {
        trials,
        matches: outcomes.iter().filter(|o| o.1).count(),
        mismatch_seeds: outcomes.iter().filter(|o| !o.1).map(|o| o.0).collect(),
        resamples: outcomes.iter().map(|o| o.2).sum(),
        expected,
        elapsed: start.elapsed().as_secs_f64(),
    })
}
