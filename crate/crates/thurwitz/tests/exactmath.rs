use std::sync::Arc;

use proptest::prelude::*;
use thurwitz::exactmath::{
    bernoulli, binomial, faulhaber_sum, interpolate, rat, ratio, simplex_grid, sum_over_range, MultiPoly,
    PolyParseError, Rational,
};

fn vars() -> Arc<[String]> {
    vec!["a".to_string(), "b".to_string(), "c".to_string()].into()
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -6i64..=6, 1i64..=4), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(vars(), terms.into_iter().map(|((x, y, z), n, d)| (vec![x, y, z], ratio(n, d))))
    })
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 3)
}

proptest! {
    #[test]
    fn ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(vars()), f.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(), g in poly(), pt in point()) {
        prop_assert_eq!((&f * &g).eval_int(&pt), f.eval_int(&pt) * g.eval_int(&pt));
        prop_assert_eq!((&f - &g).eval_int(&pt), f.eval_int(&pt) - g.eval_int(&pt));
    }

    #[test]
    fn json_round_trip(f in poly()) {
        let s = serde_json::to_string(&f.to_json()).unwrap();
        prop_assert_eq!(MultiPoly::parse_json(&s).unwrap(), f);
    }

    #[test]
    fn substitution_matches_evaluation(f in poly(), g in poly(), pt in point()) {
        let s = f.substitute(2, &g);
        let full: Vec<Rational> = vec![rat(pt[0]), rat(pt[1]), g.eval_int(&pt)];
        prop_assert_eq!(s.eval_int(&pt), f.eval(&full));
    }

    #[test]
    fn range_sums_match_direct_sums(f in poly(), a in -4i64..=4, len in -1i64..=8) {
        let b = a + len;
        let s = sum_over_range(&f, 2, &MultiPoly::var(vars(), 0), &MultiPoly::var(vars(), 1));
        let direct = (a..=b).fold(rat(0), |acc, t| acc + f.eval_int(&[a, b, t]));
        prop_assert_eq!(s.eval_int(&[a, b, 0]), direct);
    }

    #[test]
    fn interpolation_recovers_polynomials(f in poly(), base in point()) {
        let active = [0, 1, 2];
        let samples: Vec<(Vec<i64>, Rational)> = simplex_grid(&base, &active, 6, 1)
            .into_iter()
            .map(|pt| { let v = f.eval_int(&pt); (pt, v) })
            .collect();
        prop_assert_eq!(interpolate(vars(), &active, &samples, 6).unwrap(), f);
    }
}

#[test]
fn power_sums_match_direct_sums() {
    for p in 0..=10usize {
        let f = faulhaber_sum(p);
        let mut direct = rat(0);
        for n in 1..=60i64 {
            direct += rat(n).pow(p as i32);
            assert_eq!(f.eval_int(&[n]), direct, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn bernoulli_numbers_satisfy_their_recurrence() {
    for m in 1..=12u64 {
        let s = (0..=m).fold(rat(0), |acc, k| acc + Rational::from_integer(binomial(m + 1, k)) * bernoulli(k as usize));
        assert_eq!(s, rat(0), "m = {m}");
    }
}

#[test]
fn empty_range_sums_to_zero() {
    let f = &MultiPoly::var(vars(), 2) * &MultiPoly::var(vars(), 2);
    let s = sum_over_range(&f, 2, &MultiPoly::var(vars(), 0), &MultiPoly::var(vars(), 1));
    assert_eq!(s.eval_int(&[5, 4, 0]), rat(0));
}

#[test]
fn malformed_json_is_rejected() {
    assert!(matches!(MultiPoly::parse_json("{"), Err(PolyParseError::Json(_))));
    let short = r#"{"vars":["a","b"],"terms":[{"exp":[1],"num":"1","den":"1"}]}"#;
    assert!(matches!(MultiPoly::parse_json(short), Err(PolyParseError::ExponentLength { .. })));
    let zero = r#"{"vars":["a"],"terms":[{"exp":[1],"num":"1","den":"0"}]}"#;
    assert_eq!(MultiPoly::parse_json(zero), Err(PolyParseError::ZeroDenominator));
}

#[test]
fn interpolation_reports_underdetermined_systems() {
    let samples = vec![(vec![0, 0, 0], rat(1)), (vec![1, 0, 0], rat(2))];
    assert!(interpolate(vars(), &[0, 1], &samples, 2).is_err());
}
