//! Triply interpolated monodromy graphs: data model, validation, chain-paths,
//! multiplicities and enumeration of reduced graphs.

mod enumerate;
mod validate;

pub use enumerate::{enumerate_reduced, enumerate_topologies, tree_split, Topology};
pub(crate) use enumerate::permutations as all_permutations;
pub use validate::{validate, GraphWeight, Violation};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactmath::{rat, LinearForm, MultiPoly, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Normal,
    Bold,
    Dashed,
}

/// Graph nodes. Inner vertices are identified by their position `1..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    In(usize),
    Inner(usize),
    Out(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Join,
    Cut,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge<W> {
    pub from: Node,
    pub to: Node,
    pub colour: Colour,
    pub weight: W,
    pub counter: Option<i64>,
}

/// A monodromy graph over `[0, b+1]`; `W` is `LinearForm` for reduced graphs
/// and `i64` for concrete ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonodromyGraph<W> {
    pub ell_mu: usize,
    pub ell_nu: usize,
    pub g: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    /// Inner vertex kinds, indexed by position - 1.
    pub vertices: Vec<VertexKind>,
    pub edges: Vec<Edge<W>>,
}

pub type ReducedGraph = MonodromyGraph<LinearForm>;
pub type ConcreteGraph = MonodromyGraph<i64>;

/// A chain of bold edges from an in-end, followed by the dashed edge it sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPath {
    /// 0-based in-end label.
    pub in_end: usize,
    /// Edge indices; the first is the in-end edge.
    pub edges: Vec<usize>,
    /// Source position of every edge after the first.
    pub positions: Vec<usize>,
    /// Number of chain vertices at positions `<= p`; those compare counters
    /// with `<=`, the rest with `<`.
    pub split: usize,
}

impl ChainPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Strictness of the counter step into chain vertex `j` (0-based). The
    /// first chain vertex is never compared with the in-end counter.
    pub fn strict(&self, j: usize, p: usize, q: usize) -> bool {
        j >= 1 && self.positions[j] > p && self.positions[j] <= p + q
    }
}

impl<W: Clone> MonodromyGraph<W> {
    pub fn b(&self) -> usize {
        self.vertices.len()
    }

    pub fn monotone_len(&self) -> usize {
        self.p + self.q
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.ell_mu, self.ell_nu, self.g)
    }

    pub fn in_edges_of(&self, node: Node) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].to == node).collect()
    }

    pub fn out_edges_of(&self, node: Node) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].from == node).collect()
    }

    pub fn in_end_edge(&self, l: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.from == Node::In(l))
    }

    pub fn out_end_edge(&self, j: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.to == Node::Out(j))
    }

    /// Chain-paths, one per in-end, in in-end order. Assumes the colour
    /// structure of a valid graph: every bold edge enters a vertex with one
    /// non-normal outgoing edge.
    pub fn chain_paths(&self) -> Vec<ChainPath> {
        let mut out = Vec::new();
        for l in 0..self.ell_mu {
            let Some(mut e) = self.in_end_edge(l) else { continue };
            let mut path = ChainPath { in_end: l, edges: vec![e], positions: vec![], split: 0 };
            while self.edges[e].colour == Colour::Bold {
                let Node::Inner(pos) = self.edges[e].to else { break };
                let next = self
                    .out_edges_of(Node::Inner(pos))
                    .into_iter()
                    .find(|&f| self.edges[f].colour != Colour::Normal);
                let Some(next) = next else { break };
                path.edges.push(next);
                path.positions.push(pos);
                if pos <= self.p {
                    path.split += 1;
                }
                e = next;
            }
            out.push(path);
        }
        out
    }

    /// Block of each inner vertex: the in-end of the chain whose bold edge
    /// enters it, `None` for vertices without an incoming bold edge.
    pub fn vertex_blocks(&self) -> Vec<Option<usize>> {
        let mut blocks = vec![None; self.b()];
        for path in self.chain_paths() {
            for &pos in &path.positions {
                blocks[pos - 1] = Some(path.in_end);
            }
        }
        blocks
    }

    /// Edges entering the weight product: non-bold edges not adjacent to
    /// out-ends.
    pub fn counted_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].colour != Colour::Bold && !matches!(self.edges[e].to, Node::Out(_)))
            .collect()
    }

    /// Multiset key of the graph without weights and counters: vertices sit
    /// at fixed positions, so two graphs are isomorphic iff their keys agree.
    pub fn topology_key(&self) -> Vec<(Node, Node, Colour)> {
        let mut key: Vec<_> = self.edges.iter().map(|e| (e.from, e.to, e.colour)).collect();
        key.sort_unstable();
        key
    }

    /// Order of the symmetry group of the underlying coloured graph:
    /// permutations of parallel edges with equal colour.
    pub fn topology_symmetry(&self) -> u64 {
        multiplicity_factorials(self.topology_key())
    }
}

fn multiplicity_factorials<K: Ord>(keys: impl IntoIterator<Item = K>) -> u64 {
    let mut counts: BTreeMap<K, u64> = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    counts.values().map(|&m| (1..=m).product::<u64>()).product()
}

/// Number of automorphisms: permutations of parallel edges agreeing in
/// colour, weight and counter. Positions and end labels pin every vertex.
pub fn automorphism_count<W: Clone + Ord>(graph: &MonodromyGraph<W>) -> u64 {
    multiplicity_factorials(
        graph
            .edges
            .iter()
            .map(|e| (e.from, e.to, e.colour, e.weight.clone(), e.counter)),
    )
}

/// `prod w(e) / |Aut|` over non-bold edges not adjacent to out-ends.
pub fn weight_product(graph: &ReducedGraph) -> MultiPoly {
    let vars = graph.shape().var_names(false);
    let mut acc = MultiPoly::one(vars);
    for e in graph.counted_edges() {
        acc = &acc * &graph.edges[e].weight.to_poly(false);
    }
    acc.scale(&(rat(1) / rat(automorphism_count(graph) as i64)))
}

/// Integer weight product of a concrete graph, without the automorphism
/// factor.
pub fn concrete_weight_product(graph: &ConcreteGraph) -> i128 {
    graph.counted_edges().iter().map(|&e| graph.edges[e].weight as i128).product()
}

impl ReducedGraph {
    /// Evaluates all weights at a point; counters are left unset.
    pub fn evaluate(&self, mu: &[i64], nu: &[i64], x: &[i64]) -> ConcreteGraph {
        MonodromyGraph {
            ell_mu: self.ell_mu,
            ell_nu: self.ell_nu,
            g: self.g,
            p: self.p,
            q: self.q,
            r: self.r,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    from: e.from,
                    to: e.to,
                    colour: e.colour,
                    weight: e.weight.eval(mu, nu, x),
                    counter: e.counter,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson<W> {
    pub from: usize,
    pub to: usize,
    pub colour: Colour,
    pub weight: W,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counter: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndJson {
    pub side: String,
    pub label: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson<W> {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson<W>>,
    pub ends: Vec<EndJson>,
}

impl<W: Clone> MonodromyGraph<W> {
    /// Vertex id: in-ends first, then inner vertices by position, then out-ends.
    pub fn node_id(&self, n: Node) -> usize {
        match n {
            Node::In(i) => i,
            Node::Inner(pos) => self.ell_mu + pos - 1,
            Node::Out(j) => self.ell_mu + self.b() + j,
        }
    }

    pub fn to_json(&self) -> GraphJson<W> {
        let b = self.b();
        let mut vertices = Vec::new();
        vertices.extend((0..self.ell_mu).map(|i| VertexJson { id: self.node_id(Node::In(i)), position: 0 }));
        vertices.extend((1..=b).map(|k| VertexJson { id: self.node_id(Node::Inner(k)), position: k }));
        vertices.extend((0..self.ell_nu).map(|j| VertexJson { id: self.node_id(Node::Out(j)), position: b + 1 }));
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                from: self.node_id(e.from),
                to: self.node_id(e.to),
                colour: e.colour,
                weight: e.weight.clone(),
                counter: e.counter,
            })
            .collect();
        let mut ends = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if let Node::In(i) = e.from {
                ends.push(EndJson { side: "in".into(), label: i + 1, edge: k });
            }
            if let Node::Out(j) = e.to {
                ends.push(EndJson { side: "out".into(), label: j + 1, edge: k });
            }
        }
        GraphJson { vertices, edges, ends }
    }
}
