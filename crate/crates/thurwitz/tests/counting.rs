use proptest::prelude::*;
use thurwitz::chambers::enumerate_chambers;
use thurwitz::counting::{
    chain_polynomial, chain_specs, count_assignments_direct, enumerate_orderings, lattice_points, ordering_at,
    ordering_polytope, AtPoint, ChainSpec, ChainVertex, DeepInChamber,
};
use thurwitz::exactmath::{rat, LinearForm, Shape};
use thurwitz::graphs::{enumerate_reduced, enumerate_topologies};

fn shape() -> Shape {
    Shape::new(2, 1, 0)
}

fn constant(c: i64) -> LinearForm {
    LinearForm::constant(shape(), c)
}

fn vertex(weight: LinearForm, strict: bool) -> ChainVertex {
    ChainVertex { weight, strict, lower: Vec::new(), upper: Vec::new(), fixed: None }
}

#[test]
fn direct_counts() {
    let pt = [0, 0, 0];
    let one_step = ChainSpec { upper: constant(3), vertices: vec![vertex(constant(5), false)] };
    assert_eq!(count_assignments_direct(&one_step, &pt), 3);
    let bare = ChainSpec { upper: constant(3), vertices: Vec::new() };
    assert_eq!(count_assignments_direct(&bare, &pt), 1);
    let weak = ChainSpec { upper: constant(1), vertices: vec![vertex(constant(4), false), vertex(constant(2), false)] };
    assert_eq!(count_assignments_direct(&weak, &pt), 1);
    let strict = ChainSpec { upper: constant(1), vertices: vec![vertex(constant(4), false), vertex(constant(2), true)] };
    assert_eq!(count_assignments_direct(&strict, &pt), 0);
}

fn form() -> impl Strategy<Value = LinearForm> {
    (-1i64..=2, -1i64..=2, -1i64..=1, -2i64..=4).prop_map(|(a, b, c, k)| {
        let s = shape();
        let f = &(&LinearForm::mu_entry(s, 0).scale(a) + &LinearForm::mu_entry(s, 1).scale(b))
            + &LinearForm::nu_entry(s, 0).scale(c);
        f.plus_const(k)
    })
}

fn spec() -> impl Strategy<Value = ChainSpec> {
    (
        form(),
        prop::collection::vec((form(), any::<bool>(), prop::option::of(form()), prop::option::of(form())), 0..4),
    )
        .prop_map(|(upper, vs)| ChainSpec {
            upper,
            vertices: vs
                .into_iter()
                .map(|(weight, strict, lower, fixed)| ChainVertex {
                    weight,
                    strict,
                    lower: lower.into_iter().collect(),
                    upper: Vec::new(),
                    fixed,
                })
                .collect(),
        })
}

proptest! {
    #[test]
    fn closed_forms_match_direct_counts(s in spec(), m1 in 1i64..=9, m2 in 1i64..=9, n1 in 1i64..=9) {
        let pt = vec![m1, m2, n1];
        let poly = chain_polynomial(&s, &AtPoint(pt.clone()));
        prop_assert_eq!(poly.eval_int(&pt), rat(count_assignments_direct(&s, &pt) as i64));
    }
}

#[test]
fn genus_zero_chain_polynomials_hold_across_the_chamber() {
    for c in enumerate_chambers(3, 2, 7) {
        for t in enumerate_reduced(3, 2, 0, 3, 0, 0, &c) {
            let specs = chain_specs(&t.graph);
            for k in 1..=3 {
                let s = c.scaled(k);
                let pt = s.point();
                assert_eq!(ordering_at(&specs, &pt).0, ordering_at(&specs, &c.point()).0);
                for spec in &specs {
                    let poly = chain_polynomial(spec, &DeepInChamber(c.clone()));
                    assert_eq!(poly.eval_int(&pt), rat(count_assignments_direct(spec, &pt) as i64), "{c} x{k}");
                }
            }
        }
    }
}

#[test]
fn orderings_partition_the_cycle_variables() {
    for t in enumerate_topologies(2, 1, 1, 3, 0, 0).iter().chain(enumerate_topologies(3, 1, 1, 4, 0, 0).iter()) {
        let g = &t.graph;
        let shape = g.shape();
        let orderings = enumerate_orderings(g, 9);
        let positivity: Vec<LinearForm> = g.edges.iter().map(|e| e.weight.clone().plus_const(-1)).collect();
        let specs = chain_specs(g);
        for (mu, nu) in [(vec![4, 3], vec![7]), (vec![5, 2], vec![7]), (vec![2, 3, 4], vec![9]), (vec![4, 1, 3], vec![8])] {
            if mu.len() != shape.ell_mu {
                continue;
            }
            let d: i64 = mu.iter().sum();
            for x in lattice_points(&positivity, &mu, &nu, shape.g, d) {
                let pt = shape.point(&mu, &nu, &x);
                if !ordering_at(&specs, &pt).1 {
                    continue;
                }
                let hits = orderings
                    .iter()
                    .filter(|(o, _)| lattice_points(&ordering_polytope(g, o), &mu, &nu, shape.g, d).contains(&x))
                    .count();
                assert_eq!(hits, 1, "{mu:?} {nu:?} {x:?}");
            }
        }
    }
}
