//! Eigenstructure extraction against structures known by construction.

use proptest::prelude::*;
use skewgen::canonical::{assemble_skew, blocklist_eigenstructure, skew_to_general, BlockList, Eigenvalue, SkewBlock};
use skewgen::eigenstructure::{analyze, infinite_structure, same_orbit};
use skewgen::exactalg::{rev, smith_form, Rational, RationalMatrix};
use skewgen::io::PolynomialFile;
use skewgen::sampling::{monte_carlo_genericity, sample_bounded_rank, SampleSpec};

fn skew_block() -> impl Strategy<Value = SkewBlock> {
    prop_oneof![
        (0usize..=2).prop_map(SkewBlock::M),
        (1usize..=2).prop_map(SkewBlock::K),
        (1usize..=2, -2i64..=2).prop_map(|(size, e)| SkewBlock::H { size, eigenvalue: Eigenvalue::int(e) }),
    ]
}

fn skew_list() -> impl Strategy<Value = BlockList> {
    prop::collection::vec(skew_block(), 1..=4)
        .prop_map(|b| BlockList::skew(b).unwrap())
        .prop_filter("size at most 8", |l| l.dims().0 <= 8)
}

/// Unit upper triangular integer matrix; congruence by it preserves the orbit.
fn unimodular(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        RationalMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => Rational::from_integer(1.into()),
            std::cmp::Ordering::Less => Rational::from_integer(v[i * n + j].into()),
            std::cmp::Ordering::Greater => Rational::from_integer(0.into()),
        })
    })
}

fn list_and_congruence() -> impl Strategy<Value = (BlockList, RationalMatrix)> {
    skew_list().prop_flat_map(|l| {
        let n = l.dims().0;
        (Just(l), unimodular(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn analyzing_an_assembled_list_recovers_it((list, s) in list_and_congruence()) {
        let p = assemble_skew(&list).unwrap().congruence(&s);
        let expected = blocklist_eigenstructure(&skew_to_general(&list).unwrap());
        prop_assert_eq!(analyze(&p, 1).unwrap(), expected);
    }

    #[test]
    fn infinite_structure_matches_reversal_smith_form(list in skew_list(), extra in 0usize..=2) {
        let p = assemble_skew(&list).unwrap();
        let g = 1 + extra;
        let mut expected: Vec<usize> = smith_form(&rev(p.as_matrix(), g).unwrap())
            .invariant_polynomials
            .iter()
            .map(|f| f.valuation_at_zero().unwrap())
            .collect();
        expected.sort_unstable();
        prop_assert_eq!(infinite_structure(p.as_matrix(), g).unwrap(), expected);
    }

    #[test]
    fn raising_the_grade_shifts_only_infinity(list in skew_list(), j in 1usize..=3) {
        let p = assemble_skew(&list).unwrap();
        let a = analyze(&p, 1).unwrap();
        let b = analyze(&p.with_grade(1 + j).unwrap(), 1 + j).unwrap();
        prop_assert_eq!((a.rank, &a.finite, &a.left_minimal, &a.right_minimal), (b.rank, &b.finite, &b.left_minimal, &b.right_minimal));
        prop_assert_eq!(b.infinite, a.infinite.iter().map(|g| g + j).collect::<Vec<_>>());
    }
}

#[test]
fn sampling_is_seed_deterministic() {
    let spec = SampleSpec::new(5, 2, 1, 9, 42).unwrap();
    let a = sample_bounded_rank(&spec).unwrap();
    let b = sample_bounded_rank(&spec).unwrap();
    assert_eq!(a.polynomial, b.polynomial);
    assert_ne!(a.polynomial, sample_bounded_rank(&spec.with_seed(43)).unwrap().polynomial);
    let r1 = monte_carlo_genericity(&spec, 12).unwrap();
    let r2 = monte_carlo_genericity(&spec, 12).unwrap();
    assert!(r1.same_outcome(&r2));
}

#[test]
fn congruent_samples_share_an_orbit() {
    let p = sample_bounded_rank(&SampleSpec::new(4, 3, 1, 9, 5).unwrap()).unwrap().polynomial;
    let n = p.size();
    let s = RationalMatrix::from_fn(n, n, |i, j| Rational::from_integer(i64::from(i <= j).into()));
    assert!(same_orbit(&analyze(&p, 3).unwrap(), &analyze(&p.congruence(&s), 3).unwrap()));
}

#[test]
fn polynomial_files_round_trip() {
    let p = sample_bounded_rank(&SampleSpec::new(3, 2, 1, 9, 8).unwrap()).unwrap().polynomial;
    let text = serde_json::to_string(&PolynomialFile::from_polynomial(p.as_matrix())).unwrap();
    let back: PolynomialFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_skew().unwrap(), p);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}
