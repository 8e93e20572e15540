//! The monodromy graph of a factorisation.

use super::{Factorization, OracleError, Permutation, TypeTuple};
use crate::graphs::{Colour, ConcreteGraph, Edge, MonodromyGraph, Node, VertexKind};

struct Open {
    from: Node,
    birth: Colour,
    weight: i64,
    counter: Option<i64>,
}

/// Builds the concrete graph of a factorisation with the canonical
/// `sigma_1`: edges are the cycles of the partial products, and at each
/// monotone step the edge containing the larger element of the
/// transposition turns bold while the new edge containing it is dashed and
/// carries the counter `s - offset` (1-based within its block).
pub fn build_monodromy_graph(ty: &TypeTuple, f: &Factorization) -> Result<ConcreteGraph, OracleError> {
    ty.validate()?;
    let (canonical, canonical_cycles) = ty.canonical_sigma1();
    if f.sigma1 != canonical || f.sigma1_cycles != canonical_cycles {
        return Err(OracleError::Sigma1Type(f.sigma1.cycle_type()));
    }
    let d = ty.degree() as usize;
    let mono = ty.p + ty.q;
    let mut open: Vec<Option<Open>> = Vec::new();
    let mut edge_of = vec![0usize; d];
    for (l, c) in canonical_cycles.iter().enumerate() {
        open.push(Some(Open { from: Node::In(l), birth: Colour::Dashed, weight: ty.mu[l], counter: Some(1) }));
        for &x in c {
            edge_of[x] = l;
        }
    }
    let mut edges: Vec<Edge<i64>> = Vec::new();
    let mut kinds = Vec::new();
    let mut close = |open: &mut Vec<Option<Open>>, e: usize, to: Node, colour: Colour| {
        let o = open[e].take().expect("edge consumed twice");
        edges.push(Edge { from: o.from, to, colour, weight: o.weight, counter: o.counter });
    };
    let mut prod = canonical.clone();
    for (k, &(r, s)) in f.taus.iter().enumerate() {
        let pos = k + 1;
        let node = Node::Inner(pos);
        let monotone = pos <= mono;
        let (er, es) = (edge_of[r], edge_of[s]);
        prod = Permutation::transposition(d, r, s).compose(&prod);
        let cycle_of = |x: usize| -> Vec<usize> {
            let mut c = vec![x];
            let mut y = prod.apply(x);
            while y != x {
                c.push(y);
                y = prod.apply(y);
            }
            c
        };
        let counter = (s - ty.offset(ty.block_of(s)) + 1) as i64;
        let mut new_edge = |open: &mut Vec<Option<Open>>, cycle: &[usize], birth: Colour, counter: Option<i64>| {
            open.push(Some(Open { from: node, birth, weight: cycle.len() as i64, counter }));
            for &x in cycle {
                edge_of[x] = open.len() - 1;
            }
        };
        if er == es {
            kinds.push(VertexKind::Cut);
            let birth = open[es].as_ref().unwrap().birth;
            close(&mut open, es, node, if monotone { Colour::Bold } else { birth });
            let (cs, cr) = (cycle_of(s), cycle_of(r));
            if monotone {
                new_edge(&mut open, &cs, Colour::Dashed, Some(counter));
            } else {
                new_edge(&mut open, &cs, Colour::Normal, None);
            }
            new_edge(&mut open, &cr, Colour::Normal, None);
        } else {
            kinds.push(VertexKind::Join);
            let (bs, br) = (open[es].as_ref().unwrap().birth, open[er].as_ref().unwrap().birth);
            close(&mut open, es, node, if monotone { Colour::Bold } else { bs });
            close(&mut open, er, node, br);
            let cs = cycle_of(s);
            if monotone {
                new_edge(&mut open, &cs, Colour::Dashed, Some(counter));
            } else {
                new_edge(&mut open, &cs, Colour::Normal, None);
            }
        }
    }
    for (i, cycle) in f.sigma2_cycles.iter().enumerate() {
        let e = edge_of[cycle[0]];
        let birth = open[e].as_ref().unwrap().birth;
        close(&mut open, e, Node::Out(i), birth);
    }
    let mut edges = edges;
    edges.sort_by(|a, b| (a.from, a.to, a.colour, a.weight, a.counter).cmp(&(b.from, b.to, b.colour, b.weight, b.counter)));
    Ok(MonodromyGraph {
        ell_mu: ty.mu.len(),
        ell_nu: ty.nu.len(),
        g: ty.g,
        p: ty.p,
        q: ty.q,
        r: ty.r,
        vertices: kinds,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::validate;
    use crate::symgroup::{for_each_factorization, DEFAULT_BUDGET};

    #[test]
    fn graphs_of_small_factorisations_are_valid() {
        for (g, mu, nu, p, q, r) in [
            (0, vec![2, 1], vec![2, 1], 1, 1, 0),
            (0, vec![1, 2], vec![1, 2], 2, 0, 0),
            (1, vec![2, 2], vec![4], 3, 0, 0),
            (1, vec![3, 1], vec![2, 2], 1, 1, 2),
            (1, vec![3], vec![2, 1], 0, 2, 1),
        ] {
            let t = TypeTuple::new(g, mu, nu, p, q, r).unwrap();
            for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
                let graph = build_monodromy_graph(&t, f).unwrap();
                if let Err(v) = validate(&graph) {
                    panic!("{t} {:?}: {v:?}", f.taus);
                }
            })
            .unwrap();
        }
    }
}
