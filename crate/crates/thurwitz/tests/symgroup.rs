use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thurwitz::chambers::compositions;
use thurwitz::exactmath::rat;
use thurwitz::graphs::{automorphism_count, concrete_weight_product, validate, Colour, Node, VertexKind};
use thurwitz::symgroup::{
    build_monodromy_graph, count_for_sigma1, for_each_factorization, h_oracle, m_oracle, parse_end_conditions,
    parse_partition, parse_start_conditions, sigma1_independence_check, Conditions, EndCondition, OracleError,
    ParseError, Permutation, StartCondition, TypeError, TypeTuple, DEFAULT_BUDGET,
};

fn ty(g: usize, mu: &[i64], nu: &[i64], p: usize, q: usize, r: usize) -> TypeTuple {
    TypeTuple::new(g, mu.to_vec(), nu.to_vec(), p, q, r).unwrap()
}

fn m(t: &TypeTuple) -> u128 {
    m_oracle(t, &Conditions::default(), DEFAULT_BUDGET).unwrap()
}

/// All factorisations of a type with canonical `sigma_1`, by plain iteration
/// over every transposition sequence.
fn naive_count(t: &TypeTuple) -> u128 {
    let d = t.degree() as usize;
    let (s1, cycles) = t.canonical_sigma1();
    let trans: Vec<(usize, usize)> = (0..d).flat_map(|s| (0..s).map(move |r| (r, s))).collect();
    let mut n = 0u128;
    let mut idx = vec![0usize; t.b()];
    loop {
        let taus: Vec<(usize, usize)> = idx.iter().map(|&k| trans[k]).collect();
        let monotone = (1..t.p + t.q).all(|k| {
            let (a, b) = (taus[k - 1].1, taus[k].1);
            if k < t.p { b >= a } else { b > a }
        });
        if monotone {
            let mut prod = s1.clone();
            for &(r, s) in &taus {
                prod = Permutation::transposition(d, r, s).compose(&prod);
            }
            let sigma2 = prod.inverse();
            let mut ct = sigma2.cycle_type();
            ct.sort();
            let mut want: Vec<usize> = t.nu.iter().map(|&x| x as usize).collect();
            want.sort();
            let mut comp: Vec<usize> = (0..d).collect();
            fn find(c: &mut Vec<usize>, x: usize) -> usize {
                if c[x] != x {
                    let r = find(c, c[x]);
                    c[x] = r;
                }
                c[x]
            }
            for pair in cycles.iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1]))).chain(taus.iter().copied()) {
                let (a, b) = (find(&mut comp, pair.0), find(&mut comp, pair.1));
                comp[a] = b;
            }
            let root = find(&mut comp, 0);
            let connected = (0..d).all(|x| find(&mut comp, x) == root);
            if ct == want && connected {
                // Labellings of sigma_2's cycles by nu.
                let mut lens: BTreeMap<usize, u128> = BTreeMap::new();
                for &x in &want {
                    *lens.entry(x).or_default() += 1;
                }
                n += lens.values().map(|&k| (1..=k).product::<u128>()).product::<u128>();
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return n;
            }
            idx[k] += 1;
            if idx[k] < trans.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn small_oracle_values() {
    let t = ty(0, &[2], &[1, 1], 0, 0, 1);
    assert_eq!(m(&t), 2);
    assert_eq!(h_oracle(&t, DEFAULT_BUDGET).unwrap(), rat(1));
    let trivial = ty(0, &[1], &[1], 0, 0, 0);
    assert_eq!(m(&trivial), 1);
    assert_eq!(h_oracle(&trivial, DEFAULT_BUDGET).unwrap(), rat(1));
}

#[test]
fn oracle_matches_plain_iteration() {
    for t in [
        ty(0, &[2, 1], &[3], 1, 0, 0),
        ty(0, &[2, 2], &[3, 1], 1, 1, 0),
        ty(0, &[1, 2], &[1, 1, 1], 0, 2, 1),
        ty(1, &[2], &[2], 1, 0, 1),
        ty(1, &[3], &[2, 1], 2, 0, 1),
        ty(0, &[3, 1], &[2, 2], 0, 0, 2),
    ] {
        assert_eq!(m(&t), naive_count(&t), "{t}");
    }
}

#[test]
fn canonical_sigma1_blocks() {
    let (p, c) = ty(0, &[2, 2], &[3, 1], 0, 0, 2).canonical_sigma1();
    assert_eq!(p, Permutation::parse_cycles("(12)(34)", 4).unwrap().0);
    assert_eq!(c, vec![vec![0, 1], vec![2, 3]]);
    let (p, _) = ty(0, &[1], &[1], 0, 0, 0).canonical_sigma1();
    assert_eq!(p, Permutation::identity(1));
    let (p, _) = ty(0, &[3, 1], &[4], 0, 0, 1).canonical_sigma1();
    assert_eq!(p.to_string(), Permutation::parse_cycles("(123)", 4).unwrap().0.to_string());
}

#[test]
fn golden_factorisation_is_enumerated() {
    let t = ty(1, &[2, 2], &[4], 3, 0, 0);
    let (sigma2, _) = Permutation::parse_cycles("(1243)", 4).unwrap();
    let mut found = false;
    for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
        found |= f.taus == [(0, 1), (1, 2), (0, 2)] && f.sigma2 == sigma2;
    })
    .unwrap();
    assert!(found);
}

#[test]
fn golden_factorisation_graph() {
    // The factorisation cuts the first block at position 1, so it builds a
    // cut-join-join graph of multiplicity 1.
    let t = ty(1, &[2, 2], &[4], 3, 0, 0);
    let mut seen = None;
    for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
        if f.taus == [(0, 1), (1, 2), (0, 2)] {
            seen = Some(build_monodromy_graph(&t, f).unwrap());
        }
    })
    .unwrap();
    let g = seen.unwrap();
    assert_eq!(g.vertices, [VertexKind::Cut, VertexKind::Join, VertexKind::Join]);
    assert_eq!(concrete_weight_product(&g), 1);
    assert_eq!(automorphism_count(&g), 1);
}

#[test]
fn described_golden_graph_has_multiplicity_two() {
    // Join of both in-ends, cut into 3 + 1, join back.
    let t = ty(1, &[2, 2], &[4], 3, 0, 0);
    let mut by_graph: BTreeMap<String, (u128, i128)> = BTreeMap::new();
    for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
        let g = build_monodromy_graph(&t, f).unwrap();
        let normal_one = g.edges.iter().any(|e| {
            e.from == Node::Inner(2) && e.to == Node::Inner(3) && e.colour == Colour::Normal && e.weight == 1
        });
        if g.vertices == [VertexKind::Join, VertexKind::Cut, VertexKind::Join] && normal_one {
            let e = by_graph.entry(format!("{:?}", g.edges)).or_default();
            e.0 += 1;
            e.1 = concrete_weight_product(&g) / automorphism_count(&g) as i128;
        }
    })
    .unwrap();
    assert!(!by_graph.is_empty());
    for (count, mult) in by_graph.values() {
        assert_eq!(*count as i128, *mult);
        assert_eq!(*mult, 2);
    }
}

#[test]
fn factorisations_per_graph_equal_multiplicity() {
    for t in [
        ty(0, &[2, 2], &[2, 2], 0, 0, 2),
        ty(0, &[2, 1, 1], &[4], 1, 0, 1),
        ty(1, &[4], &[4], 0, 0, 2),
        ty(1, &[2, 2], &[2, 2], 2, 0, 2),
        ty(0, &[3, 3], &[6], 0, 0, 1),
        ty(0, &[2, 2], &[1, 3], 0, 2, 0),
    ] {
        let mut by_graph: BTreeMap<String, (u128, i128)> = BTreeMap::new();
        for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
            let g = build_monodromy_graph(&t, f).unwrap();
            assert!(validate(&g).is_ok(), "{t}: {:?}", validate(&g));
            let e = by_graph.entry(format!("{g:?}")).or_default();
            e.0 += 1;
            e.1 = concrete_weight_product(&g) / automorphism_count(&g) as i128;
        })
        .unwrap();
        for (k, (count, mult)) in &by_graph {
            assert_eq!(*count as i128, *mult, "{t} {k}");
        }
    }
}

#[test]
fn single_cut_graph() {
    let t = ty(0, &[2], &[1, 1], 0, 0, 1);
    let mut graphs = Vec::new();
    for_each_factorization(&t, None, DEFAULT_BUDGET, |f| graphs.push(build_monodromy_graph(&t, f).unwrap())).unwrap();
    assert_eq!(graphs.len(), 2);
    for g in graphs {
        assert_eq!(g.vertices, [VertexKind::Cut]);
        assert_eq!(g.edges.iter().filter(|e| e.from == Node::In(0)).map(|e| e.weight).collect::<Vec<_>>(), [2]);
        assert_eq!(g.edges.iter().filter(|e| matches!(e.to, Node::Out(_))).map(|e| e.weight).collect::<Vec<_>>(), [1, 1]);
        assert_eq!(g.edges[0].colour, Colour::Dashed);
    }
}

#[test]
fn sigma1_independence_examples() {
    for t in [ty(0, &[2, 1], &[3], 1, 0, 0), ty(0, &[2, 2], &[4], 0, 1, 0), ty(1, &[2, 1], &[3], 0, 0, 3)] {
        let counts = sigma1_independence_check(&t, DEFAULT_BUDGET).unwrap();
        assert!(counts.iter().all(|(_, c)| *c == counts[0].1), "{t}: {counts:?}");
    }
    assert_eq!(sigma1_independence_check(&ty(0, &[2, 1], &[3], 1, 0, 0), DEFAULT_BUDGET).unwrap().len(), 3);
}

#[test]
fn h_is_m_over_the_mu_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..25 {
        let lm = rng.gen_range(1..=2usize);
        let ln = rng.gen_range(1..=3usize);
        let b = lm + ln - 2;
        if b == 0 {
            continue;
        }
        let d = rng.gen_range(lm.max(ln) as i64..=5);
        let cm = compositions(d, lm);
        let cn = compositions(d, ln);
        let mu = cm[rng.gen_range(0..cm.len())].clone();
        let nu = cn[rng.gen_range(0..cn.len())].clone();
        let p = rng.gen_range(0..=b);
        let t = ty(0, &mu, &nu, p, 0, b - p);
        let prod: i64 = mu.iter().product();
        assert_eq!(h_oracle(&t, DEFAULT_BUDGET).unwrap() * rat(prod), rat(m(&t) as i64), "{t}");
    }
}

#[test]
fn empty_conditions_change_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let lm = rng.gen_range(1..=3usize);
        let ln = rng.gen_range(1..=2usize);
        let b = lm + ln - 2;
        let d = rng.gen_range(lm.max(ln) as i64..=5);
        let cm = compositions(d, lm);
        let cn = compositions(d, ln);
        let t = ty(0, &cm[rng.gen_range(0..cm.len())], &cn[rng.gen_range(0..cn.len())], b, 0, 0);
        let sigma1 = t.canonical_sigma1().0;
        assert_eq!(m(&t), count_for_sigma1(&t, &sigma1, DEFAULT_BUDGET).unwrap(), "{t}");
    }
}

#[test]
fn budget_is_enforced() {
    let t = ty(0, &[2, 2], &[2, 1, 1], 0, 0, 3);
    assert_eq!(m_oracle(&t, &Conditions::default(), 10), Err(OracleError::BudgetExceeded(10)));
}

#[test]
fn invalid_types_are_rejected() {
    assert!(matches!(TypeTuple::new(0, vec![2], vec![1, 1], 0, 0, 2), Err(TypeError::Branching { .. })));
    assert!(matches!(TypeTuple::new(0, vec![2], vec![3], 0, 0, 0), Err(TypeError::DegreeMismatch(2, 3))));
    assert!(matches!(TypeTuple::with_genus_from_branching(vec![2], vec![1, 1], 0, 0, 2), Err(TypeError::Genus { .. })));
    assert_eq!(TypeTuple::with_genus_from_branching(vec![2, 2], vec![4], 3, 0, 0).unwrap().g, 1);
}

#[test]
fn parse_errors() {
    assert_eq!(parse_partition("3, 1"), Ok(vec![3, 1]));
    assert_eq!(parse_partition(""), Err(ParseError::EmptyPartition));
    assert!(matches!(parse_partition("3,0"), Err(ParseError::PartitionEntry(_))));
    assert!(matches!(Permutation::parse_cycles("(15)", 4), Err(ParseError::Element(5, 4))));
    assert!(matches!(Permutation::parse_cycles("(12)(2 3)", 4), Err(ParseError::Repeated(2))));
    assert!(matches!(Permutation::parse_cycles("(12", 4), Err(ParseError::Cycle(_))));
    assert!(parse_start_conditions("4,1").is_err());
    assert!(parse_end_conditions("4,1,0,1").is_err());
    assert_eq!(parse_end_conditions("(3,2)").unwrap(), vec![EndCondition::Late { i: 1 }]);
}

fn permutation(d: usize) -> impl Strategy<Value = Permutation> {
    Just((0..d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn start_condition() -> impl Strategy<Value = StartCondition> {
    prop_oneof![
        (0usize..5).prop_map(|l| StartCondition::Absorbed { l }),
        (0usize..5, 0i64..9).prop_map(|(l, c)| StartCondition::AtLeast { l, c }),
        (0usize..5).prop_map(|l| StartCondition::Late { l }),
    ]
}

fn end_condition() -> impl Strategy<Value = EndCondition> {
    prop_oneof![
        (0usize..5, 0usize..5).prop_map(|(l, i)| EndCondition::Block { l, i }),
        (0usize..5, 0i64..9, 0usize..5).prop_map(|(l, c, i)| EndCondition::Counter { l, c, i }),
        (0usize..5).prop_map(|i| EndCondition::Late { i }),
        (0usize..5, 1i64..9, 0usize..5).prop_map(|(l, c, i)| EndCondition::Carries { l, c, i }),
    ]
}

proptest! {
    #[test]
    fn group_laws(a in permutation(6), b in permutation(6), c in permutation(6)) {
        let id = Permutation::identity(6);
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&a.inverse()), id.clone());
        prop_assert_eq!(a.compose(&id), a.clone());
        let total: usize = a.cycle_type().iter().sum();
        prop_assert_eq!(total, 6);
    }

    #[test]
    fn composition_applies_right_first(a in permutation(5), b in permutation(5), x in 0usize..5) {
        prop_assert_eq!(a.compose(&b).apply(x), a.apply(b.apply(x)));
    }

    #[test]
    fn cycle_strings_round_trip(a in permutation(7)) {
        let (b, cycles) = Permutation::parse_cycles(&a.to_string(), 7).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(Permutation::from_cycles(7, &cycles), Some(a));
    }

    #[test]
    fn conditions_round_trip(
        s in prop::collection::vec(start_condition(), 0..4),
        e in prop::collection::vec(end_condition(), 0..4),
    ) {
        let fmt_all = |v: Vec<String>| v.join(";");
        let s_text = fmt_all(s.iter().map(ToString::to_string).collect());
        let e_text = fmt_all(e.iter().map(ToString::to_string).collect());
        prop_assert_eq!(parse_start_conditions(&s_text).unwrap(), s);
        prop_assert_eq!(parse_end_conditions(&e_text).unwrap(), e);
    }
}
