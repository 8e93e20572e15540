//! Structural, colour and counter conditions for monodromy graphs.

use std::fmt;

use super::{Colour, MonodromyGraph, Node, VertexKind};
use crate::exactmath::LinearForm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EndDegree(Node),
    EdgeDirection(usize),
    VertexDegree(usize),
    Disconnected,
    Betti(usize),
    Unbalanced(usize),
    NonPositive(usize),
    InEndColour(usize),
    MonotoneColours(usize),
    FreeColours(usize),
    ChainLayout,
    ForeignInEnd(usize),
    Counter(usize),
    CounterOrder(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EndDegree(n) => write!(f, "end {n:?} must have exactly one edge"),
            Violation::EdgeDirection(e) => write!(f, "edge {e} does not point to the right"),
            Violation::VertexDegree(k) => write!(f, "vertex at position {k} has the wrong degree"),
            Violation::Disconnected => write!(f, "graph is disconnected"),
            Violation::Betti(b) => write!(f, "first Betti number is {b}"),
            Violation::Unbalanced(k) => write!(f, "vertex at position {k} is not balanced"),
            Violation::NonPositive(e) => write!(f, "edge {e} has non-positive weight"),
            Violation::InEndColour(l) => write!(f, "in-end {} is normal", l + 1),
            Violation::MonotoneColours(k) => write!(f, "vertex at position {k} has an invalid monotone colouring"),
            Violation::FreeColours(k) => write!(f, "vertex at position {k} has an invalid free colouring"),
            Violation::ChainLayout => write!(f, "chains are not disjoint intervals ordered by in-end"),
            Violation::ForeignInEnd(l) => write!(f, "in-end {} is absorbed by an earlier chain", l + 1),
            Violation::Counter(e) => write!(f, "edge {e} has a counter out of range"),
            Violation::CounterOrder(k) => write!(f, "counter at position {k} breaks monotonicity"),
        }
    }
}

/// Weights that can be summed and compared for balancing.
pub trait GraphWeight: Clone {
    fn total(ws: &[&Self]) -> Self;
    fn agrees(&self, other: &Self) -> bool;
    fn value(&self) -> Option<i64>;
}

impl GraphWeight for i64 {
    fn total(ws: &[&Self]) -> Self {
        ws.iter().copied().sum()
    }
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
    fn value(&self) -> Option<i64> {
        Some(*self)
    }
}

impl GraphWeight for LinearForm {
    fn total(ws: &[&Self]) -> Self {
        let mut acc = LinearForm::zero(ws[0].shape());
        for w in ws {
            acc = &acc + w;
        }
        acc
    }
    fn agrees(&self, other: &Self) -> bool {
        self.reduce_on_slice() == other.reduce_on_slice()
    }
    fn value(&self) -> Option<i64> {
        None
    }
}

/// Checks every condition on a monodromy graph. Counter conditions apply when
/// the weights are concrete and some edge carries a counter.
pub fn validate<W: GraphWeight>(graph: &MonodromyGraph<W>) -> Result<(), Vec<Violation>> {
    let mut bad = Vec::new();
    let b = graph.b();
    if b != graph.p + graph.q + graph.r {
        bad.push(Violation::VertexDegree(0));
        return Err(bad);
    }
    let ends = (0..graph.ell_mu).map(|l| (Node::In(l), graph.out_edges_of(Node::In(l)).len()));
    let outs = (0..graph.ell_nu).map(|j| (Node::Out(j), graph.in_edges_of(Node::Out(j)).len()));
    for (n, deg) in ends.chain(outs) {
        if deg != 1 {
            bad.push(Violation::EndDegree(n));
        }
    }
    for (k, e) in graph.edges.iter().enumerate() {
        let ok = match (e.from, e.to) {
            (Node::In(i), Node::Inner(t)) => i < graph.ell_mu && t >= 1 && t <= b,
            (Node::In(i), Node::Out(j)) => i < graph.ell_mu && j < graph.ell_nu && b == 0,
            (Node::Inner(s), Node::Inner(t)) => s >= 1 && s < t && t <= b,
            (Node::Inner(s), Node::Out(j)) => s >= 1 && s <= b && j < graph.ell_nu,
            _ => false,
        };
        if !ok {
            bad.push(Violation::EdgeDirection(k));
        }
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    for pos in 1..=b {
        let (ins, outs) = (graph.in_edges_of(Node::Inner(pos)), graph.out_edges_of(Node::Inner(pos)));
        let want = match graph.vertices[pos - 1] {
            VertexKind::Join => (2, 1),
            VertexKind::Cut => (1, 2),
        };
        if (ins.len(), outs.len()) != want {
            bad.push(Violation::VertexDegree(pos));
            continue;
        }
        let win: Vec<&W> = ins.iter().map(|&e| &graph.edges[e].weight).collect();
        let wout: Vec<&W> = outs.iter().map(|&e| &graph.edges[e].weight).collect();
        if !W::total(&win).agrees(&W::total(&wout)) {
            bad.push(Violation::Unbalanced(pos));
        }
    }
    if !bad.is_empty() {
        return Err(bad);
    }

    let nodes = graph.ell_mu + b + graph.ell_nu;
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &graph.edges {
        let (a, c) = (find(&mut parent, graph.node_id(e.from)), find(&mut parent, graph.node_id(e.to)));
        parent[a] = c;
    }
    let root = find(&mut parent, 0);
    if (0..nodes).any(|x| find(&mut parent, x) != root) {
        bad.push(Violation::Disconnected);
    } else if graph.edges.len() + 1 != nodes + graph.g {
        bad.push(Violation::Betti(graph.edges.len() + 1 - nodes));
    }
    for (k, e) in graph.edges.iter().enumerate() {
        if matches!(e.weight.value(), Some(v) if v <= 0) {
            bad.push(Violation::NonPositive(k));
        }
    }

    let mono = graph.monotone_len();
    for l in 0..graph.ell_mu {
        if let Some(e) = graph.in_end_edge(l) {
            if graph.edges[e].colour == Colour::Normal {
                bad.push(Violation::InEndColour(l));
            }
        }
    }
    for pos in 1..=b {
        let ins = graph.in_edges_of(Node::Inner(pos));
        let outs = graph.out_edges_of(Node::Inner(pos));
        let colours = |es: &[usize], c: Colour| es.iter().filter(|&&e| graph.edges[e].colour == c).count();
        if pos <= mono {
            let bold_in = colours(&ins, Colour::Bold);
            let special_out = outs.len() - colours(&outs, Colour::Normal);
            let bold_to_out = outs
                .iter()
                .any(|&e| graph.edges[e].colour == Colour::Bold && matches!(graph.edges[e].to, Node::Out(_)));
            if bold_in != 1 || special_out != 1 || bold_to_out {
                bad.push(Violation::MonotoneColours(pos));
            }
        } else if colours(&ins, Colour::Bold) != 0 || colours(&outs, Colour::Normal) != outs.len() {
            bad.push(Violation::FreeColours(pos));
        }
    }
    if !bad.is_empty() {
        return Err(bad);
    }

    let paths = graph.chain_paths();
    let mut next_pos = 1;
    for path in &paths {
        for &pos in &path.positions {
            if pos != next_pos {
                bad.push(Violation::ChainLayout);
            }
            next_pos = pos + 1;
        }
    }
    if next_pos != mono + 1 {
        bad.push(Violation::ChainLayout);
    }
    let blocks = graph.vertex_blocks();
    for l in 0..graph.ell_mu {
        let Some(e) = graph.in_end_edge(l) else { continue };
        if graph.edges[e].colour == Colour::Dashed {
            if let Node::Inner(pos) = graph.edges[e].to {
                if matches!(blocks[pos - 1], Some(owner) if owner < l) {
                    bad.push(Violation::ForeignInEnd(l));
                }
            }
        }
    }

    if graph.edges.iter().any(|e| e.counter.is_some()) {
        for path in &paths {
            let Some(mu_l) = graph.edges[path.edges[0]].weight.value() else { break };
            if graph.edges[path.edges[0]].counter != Some(1) {
                bad.push(Violation::Counter(path.edges[0]));
            }
            let mut prev: Option<i64> = None;
            for (j, &e) in path.edges[1..].iter().enumerate() {
                let w = graph.edges[e].weight.value().unwrap_or(0);
                match graph.edges[e].counter {
                    Some(c) if c >= 1 && c > mu_l - w && c <= mu_l => {
                        if let Some(pc) = prev {
                            let ok = if path.strict(j, graph.p, graph.q) { c > pc } else { c >= pc };
                            if !ok {
                                bad.push(Violation::CounterOrder(path.positions[j]));
                            }
                        }
                        prev = Some(c);
                    }
                    _ => bad.push(Violation::Counter(e)),
                }
            }
        }
        for (k, e) in graph.edges.iter().enumerate() {
            if e.colour == Colour::Normal && e.counter.is_some() {
                bad.push(Violation::Counter(k));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}
