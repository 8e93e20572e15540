use thurwitz::chambers::{enumerate_chambers, Chamber};
use thurwitz::counting::enumerate_orderings;
use thurwitz::exactmath::{LinearForm, MultiPoly, Shape};
use thurwitz::graphs::{
    automorphism_count, enumerate_reduced, enumerate_topologies, tree_split, validate, weight_product, Colour,
    ConcreteGraph, Edge, Node, ReducedGraph, VertexKind, Violation,
};
use thurwitz::symgroup::{build_monodromy_graph, for_each_factorization, TypeTuple, DEFAULT_BUDGET};

/// A concrete join-cut-join graph of type `(1,(2,2),(4),3,0,0)` with the
/// cut into a normal edge of weight 1 and a bold edge of weight 3.
fn join_cut_join() -> ConcreteGraph {
    let t = TypeTuple::new(1, vec![2, 2], vec![4], 3, 0, 0).unwrap();
    let mut found = None;
    for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
        let g = build_monodromy_graph(&t, f).unwrap();
        let normal_one = g.edges.iter().any(|e| e.colour == Colour::Normal && e.weight == 1 && e.from == Node::Inner(2));
        if g.vertices == [VertexKind::Join, VertexKind::Cut, VertexKind::Join] && normal_one && found.is_none() {
            found = Some(g);
        }
    })
    .unwrap();
    found.unwrap()
}

fn var(shape: Shape, name: &str) -> MultiPoly {
    let vars = shape.var_names(false);
    let i = vars.iter().position(|v| v == name).unwrap();
    MultiPoly::var(vars, i)
}

fn genus_one_example() -> ReducedGraph {
    let shape = Shape::new(3, 1, 1);
    let m = |i| LinearForm::mu_entry(shape, i);
    let x = LinearForm::x_entry(shape, 0);
    let want = [m(2), &m(1) + &m(2), x.clone(), &m(0) + &x, LinearForm::nu_entry(shape, 0)];
    enumerate_topologies(3, 1, 1, 4, 0, 0)
        .iter()
        .map(|t| t.graph.clone())
        .find(|g| {
            g.chain_paths().iter().any(|p| {
                p.edges.len() == 5 && p.edges.iter().zip(&want).all(|(&e, w)| &g.edges[e].weight == w)
            })
        })
        .unwrap()
}

#[test]
fn join_cut_join_graph_is_valid() {
    let g = join_cut_join();
    assert_eq!(validate(&g), Ok(()));
    assert_eq!(automorphism_count(&g), 1);
}

#[test]
fn unbalanced_parallel_edges_are_reported() {
    let mut g = join_cut_join();
    for e in g.edges.iter_mut().filter(|e| e.from == Node::Inner(2) && e.to == Node::Inner(3)) {
        e.weight = if e.colour == Colour::Normal { 2 } else { 3 };
    }
    let v = validate(&g).unwrap_err();
    assert!(v.contains(&Violation::Unbalanced(2)), "{v:?}");
    assert!(v.contains(&Violation::Unbalanced(3)), "{v:?}");
}

#[test]
fn genus_one_example_weights() {
    let g = genus_one_example();
    let shape = g.shape();
    let (m1, m2, m3, x) = (var(shape, "M1"), var(shape, "M2"), var(shape, "M3"), var(shape, "X1"));
    let want = &(&m1 * &m2) * &(&(&m2 + &m3) - &x);
    assert_eq!(weight_product(&g), want);
    assert_eq!(g.chain_paths().iter().filter(|p| p.edges.len() > 1).count(), 1);
    assert_eq!(enumerate_orderings(&g, 12).len(), 5);
}

#[test]
fn two_by_two_graph_sets() {
    for (p, q) in [(2, 0), (0, 2)] {
        let c1 = Chamber::parse_sample("3,1:2,2").unwrap();
        let c3 = Chamber::parse_sample("1,3:2,2").unwrap();
        assert_eq!(enumerate_reduced(2, 2, 0, p, q, 0, &c1).len(), 6);
        assert_eq!(enumerate_reduced(2, 2, 0, p, q, 0, &c3).len(), 4);
    }
}

#[test]
fn enumerated_graphs_are_valid() {
    for (lm, ln, g, p, q, r) in [
        (2, 2, 0, 2, 0, 0),
        (2, 2, 0, 0, 1, 1),
        (3, 2, 0, 1, 1, 1),
        (2, 3, 0, 3, 0, 0),
        (1, 1, 1, 1, 0, 1),
        (2, 1, 1, 2, 1, 0),
        (3, 1, 1, 4, 0, 0),
    ] {
        for t in enumerate_topologies(lm, ln, g, p, q, r).iter() {
            // Topologies carry symbolic weights; balancing is checked
            // symbolically, positivity is not decided.
            let v: Vec<Violation> = validate(&t.graph)
                .err()
                .unwrap_or_default()
                .into_iter()
                .filter(|v| !matches!(v, Violation::NonPositive(_)))
                .collect();
            assert!(v.is_empty(), "({lm},{ln},{g},{p},{q},{r}): {v:?}");
            assert!(t.symmetry >= 1);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for c in enumerate_chambers(3, 2, 7) {
        let a: Vec<ReducedGraph> = enumerate_reduced(3, 2, 0, 2, 0, 1, &c).into_iter().map(|t| t.graph).collect();
        let b: Vec<ReducedGraph> = enumerate_reduced(3, 2, 0, 2, 0, 1, &c).into_iter().map(|t| t.graph).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn genus_zero_weights_are_resonance_forms() {
    for c in enumerate_chambers(3, 2, 7) {
        for t in enumerate_reduced(3, 2, 0, 1, 0, 2, &c) {
            for (k, e) in t.graph.edges.iter().enumerate() {
                let diff = &tree_split(&t.graph, k) - &e.weight;
                assert!(diff.reduce_on_slice().is_zero(), "edge {k}: {} against {}", e.weight, tree_split(&t.graph, k));
            }
        }
    }
}

#[test]
fn chains_without_bold_edges_are_single_edges() {
    for t in enumerate_topologies(2, 3, 0, 0, 0, 3).iter() {
        assert!(t.graph.edges.iter().all(|e| e.colour != Colour::Bold));
        assert!(t.graph.chain_paths().iter().all(|p| p.edges.len() == 1));
    }
}

#[test]
fn parallel_equal_edges_are_automorphic() {
    let edge = |from, to, colour, weight, counter| Edge { from, to, colour, weight, counter };
    let g = ConcreteGraph {
        ell_mu: 1,
        ell_nu: 1,
        g: 1,
        p: 0,
        q: 0,
        r: 2,
        vertices: vec![VertexKind::Cut, VertexKind::Join],
        edges: vec![
            edge(Node::In(0), Node::Inner(1), Colour::Dashed, 6, Some(1)),
            edge(Node::Inner(1), Node::Inner(2), Colour::Normal, 3, None),
            edge(Node::Inner(1), Node::Inner(2), Colour::Normal, 3, None),
            edge(Node::Inner(2), Node::Out(0), Colour::Normal, 6, None),
        ],
    };
    assert_eq!(automorphism_count(&g), 2);
    let mut h = g.clone();
    h.edges[1].weight = 2;
    h.edges[2].weight = 4;
    assert_eq!(automorphism_count(&h), 1);
}

#[test]
fn graph_json_lists_every_end() {
    let g = join_cut_join();
    let j = g.to_json();
    assert_eq!(j.ends.len(), 3);
    assert_eq!(j.edges.len(), g.edges.len());
    assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&g.to_json()).unwrap());
}
