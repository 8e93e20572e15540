use proptest::prelude::*;
use thurwitz::chambers::{
    classify_point, compositions, enumerate_chambers, enumerate_walls, relevant_forms, wall_between, Chamber,
    ChamberError, ResonanceForm, Sign,
};
use thurwitz::exactmath::LinearForm;

#[test]
fn two_by_two_arrangement() {
    let forms = relevant_forms(2, 2);
    assert_eq!(forms.len(), 2);
    let samples = ["3,1:2,2", "2,2:3,1", "1,3:2,2", "2,2:1,3"];
    let chambers: Vec<Chamber> = samples.iter().map(|s| Chamber::parse_sample(s).unwrap()).collect();
    for (a, ca) in chambers.iter().enumerate() {
        for (b, cb) in chambers.iter().enumerate() {
            assert_eq!(ca.same_chamber(cb), a == b);
        }
    }
    assert_eq!(enumerate_chambers(2, 2, 10).len(), 4);
    // C1 and C3 differ in both forms.
    assert!(wall_between(&chambers[0], &chambers[2]).is_none());
    assert!(wall_between(&chambers[0], &chambers[1]).is_some());
}

#[test]
fn compositions_are_counted_by_binomials() {
    assert_eq!(compositions(6, 3).len(), 10);
    assert_eq!(compositions(5, 1), vec![vec![5]]);
    assert!(compositions(2, 3).is_empty());
}

#[test]
fn invalid_points_are_rejected() {
    assert!(matches!(classify_point(&[2, 2], &[2, 2]), Err(ChamberError::OnWall(_))));
    assert!(matches!(classify_point(&[2, 0], &[2]), Err(ChamberError::NonPositive)));
    assert!(matches!(classify_point(&[3], &[1, 1]), Err(ChamberError::DegreeMismatch(3, 2))));
    assert!(Chamber::parse_sample("3,1").is_err());
    assert!(Chamber::parse_sample("a:1").is_err());
}

#[test]
fn canonical_forms_are_sign_normalised() {
    let (f, s) = ResonanceForm::canonical(2, 2, &[1], &[0]);
    let (g, t) = ResonanceForm::canonical(2, 2, &[0], &[1]);
    assert_eq!(f, g);
    assert_eq!(s, -t);
}

#[test]
fn walls_separate_their_sides() {
    for (lm, ln) in [(2, 2), (3, 2), (2, 3)] {
        for wall in enumerate_walls(lm, ln, 8) {
            let pos = &wall.side_positive;
            let neg = &wall.side_negative;
            assert!(wall.form.eval(&pos.sample_mu, &pos.sample_nu) > 0);
            assert!(wall.form.eval(&neg.sample_mu, &neg.sample_nu) < 0);
            assert_eq!(wall_between(pos, neg).map(|w| w.form), Some(wall.form.clone()));
        }
    }
}

#[test]
fn sign_of_linear_forms() {
    let c = Chamber::parse_sample("3,1:2,2").unwrap();
    let shape = c.shape(0);
    let f = &LinearForm::mu_entry(shape, 0) - &LinearForm::nu_entry(shape, 0);
    assert_eq!(c.sign_of(&f), Ok(Sign::Positive));
    let zero = &LinearForm::mu_entry(shape, 0) - &LinearForm::mu_entry(shape, 0);
    assert!(matches!(c.sign_of(&zero), Err(ChamberError::ZeroOnChamber(_))));
}

fn point(lm: usize, ln: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(1i64..=8, lm), prop::collection::vec(1i64..=8, ln - 1)).prop_filter_map(
        "last part must be positive",
        |(mu, mut nu)| {
            let last = mu.iter().sum::<i64>() - nu.iter().sum::<i64>();
            (last > 0).then(|| {
                nu.push(last);
                (mu, nu)
            })
        },
    )
}

proptest! {
    #[test]
    fn scaling_keeps_the_chamber((mu, nu) in point(3, 2), k in 2i64..=5) {
        if let Ok(c) = classify_point(&mu, &nu) {
            let s = c.scaled(k);
            prop_assert!(c.same_chamber(&s));
            prop_assert!(c.contains(&s.sample_mu, &s.sample_nu));
        }
    }

    #[test]
    fn sample_strings_round_trip((mu, nu) in point(2, 3)) {
        if let Ok(c) = classify_point(&mu, &nu) {
            prop_assert_eq!(Chamber::parse_sample(&c.to_string()).unwrap(), c);
        }
    }
}
