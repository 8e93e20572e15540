//! Left-to-right sweep producing every reduced monodromy graph of a type.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::{Colour, Edge, MonodromyGraph, Node, ReducedGraph, VertexKind};
use crate::chambers::Chamber;
use crate::exactmath::{LinearForm, Shape};

/// A reduced graph with the order of its coloured-graph symmetry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub graph: ReducedGraph,
    pub symmetry: u64,
}

#[derive(Clone)]
struct EdgeRec {
    from: Node,
    to: Option<Node>,
    birth: Colour,
    colour: Option<Colour>,
    /// Coefficients of `mu_1..mu_l` followed by one per cut variable.
    w: Vec<i64>,
}

#[derive(Clone)]
struct State {
    edges: Vec<EdgeRec>,
    open: Vec<usize>,
    kinds: Vec<VertexKind>,
    block: Option<usize>,
    head: Option<usize>,
    joins: usize,
    cuts: usize,
}

struct Sweep {
    ell_mu: usize,
    ell_nu: usize,
    g: usize,
    p: usize,
    q: usize,
    r: usize,
    total_joins: usize,
    total_cuts: usize,
    found: BTreeMap<Vec<(Node, Node, Colour)>, ReducedGraph>,
}

type CacheKey = (usize, usize, usize, usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Vec<Topology>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Vec<Topology>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All reduced graphs of type `(g, ell_mu, ell_nu, p, q, r)`, without
/// positivity conditions, sorted by topology key. Results are memoised.
pub fn enumerate_topologies(ell_mu: usize, ell_nu: usize, g: usize, p: usize, q: usize, r: usize) -> Arc<Vec<Topology>> {
    let key = (ell_mu, ell_nu, g, p, q, r);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let out = Arc::new(sweep(ell_mu, ell_nu, g, p, q, r));
    cache().lock().unwrap().insert(key, out.clone());
    out
}

/// Reduced graphs with positive weights on `chamber`. For `g > 0` positivity
/// depends on the cycle variables, so all topologies are returned.
pub fn enumerate_reduced(
    ell_mu: usize,
    ell_nu: usize,
    g: usize,
    p: usize,
    q: usize,
    r: usize,
    chamber: &Chamber,
) -> Vec<Topology> {
    enumerate_topologies(ell_mu, ell_nu, g, p, q, r)
        .iter()
        .filter(|t| g > 0 || t.graph.edges.iter().all(|e| e.weight.eval(&chamber.sample_mu, &chamber.sample_nu, &[]) > 0))
        .cloned()
        .collect()
}

fn sweep(ell_mu: usize, ell_nu: usize, g: usize, p: usize, q: usize, r: usize) -> Vec<Topology> {
    let b = p + q + r;
    if ell_mu == 0 || ell_nu == 0 || 2 * g + ell_mu + ell_nu != b + 2 {
        return Vec::new();
    }
    let total_joins = g + ell_mu - 1;
    let total_cuts = g + ell_nu - 1;
    let width = ell_mu + total_cuts;
    let edges = (0..ell_mu)
        .map(|i| {
            let mut w = vec![0; width];
            w[i] = 1;
            EdgeRec { from: Node::In(i), to: None, birth: Colour::Dashed, colour: None, w }
        })
        .collect();
    let state = State {
        edges,
        open: (0..ell_mu).collect(),
        kinds: Vec::new(),
        block: None,
        head: None,
        joins: 0,
        cuts: 0,
    };
    let mut sw = Sweep { ell_mu, ell_nu, g, p, q, r, total_joins, total_cuts, found: BTreeMap::new() };
    sw.step(state);
    sw.found
        .into_values()
        .map(|graph| {
            let symmetry = graph.topology_symmetry();
            Topology { graph, symmetry }
        })
        .collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl State {
    fn consume(&mut self, e: usize, pos: usize, colour: Colour) {
        self.edges[e].to = Some(Node::Inner(pos));
        self.edges[e].colour = Some(colour);
        self.open.retain(|&x| x != e);
    }

    fn create(&mut self, pos: usize, birth: Colour, w: Vec<i64>) -> usize {
        self.edges.push(EdgeRec { from: Node::Inner(pos), to: None, birth, colour: None, w });
        self.open.push(self.edges.len() - 1);
        self.edges.len() - 1
    }
}

impl Sweep {
    fn b(&self) -> usize {
        self.p + self.q + self.r
    }

    fn fresh(&self, k: usize) -> Vec<i64> {
        let mut w = vec![0; self.ell_mu + self.total_cuts];
        w[self.ell_mu + k] = 1;
        w
    }

    fn step(&mut self, st: State) {
        let pos = st.kinds.len() + 1;
        if pos > self.b() {
            self.finish(st);
            return;
        }
        if pos <= self.p + self.q {
            let mut heads = Vec::new();
            if let (Some(l), Some(h)) = (st.block, st.head) {
                heads.push((l, h));
            }
            let first_new = st.block.map_or(0, |l| l + 1);
            for l in first_new..self.ell_mu {
                if st.open.contains(&l) {
                    heads.push((l, l));
                }
            }
            for (l, head) in heads {
                if st.joins < self.total_joins {
                    for &x in &st.open {
                        if x == head || (x < self.ell_mu && x > l) {
                            continue;
                        }
                        let mut s = st.clone();
                        let birth_x = s.edges[x].birth;
                        s.consume(head, pos, Colour::Bold);
                        s.consume(x, pos, birth_x);
                        let w = add(&s.edges[head].w, &s.edges[x].w);
                        let out = s.create(pos, Colour::Dashed, w);
                        s.kinds.push(VertexKind::Join);
                        s.block = Some(l);
                        s.head = Some(out);
                        s.joins += 1;
                        self.step(s);
                    }
                }
                if st.cuts < self.total_cuts {
                    let mut s = st.clone();
                    s.consume(head, pos, Colour::Bold);
                    let y = self.fresh(s.cuts);
                    let rest = sub(&s.edges[head].w, &y);
                    let out = s.create(pos, Colour::Dashed, y);
                    s.create(pos, Colour::Normal, rest);
                    s.kinds.push(VertexKind::Cut);
                    s.block = Some(l);
                    s.head = Some(out);
                    s.cuts += 1;
                    self.step(s);
                }
            }
        } else {
            if st.joins < self.total_joins {
                for ia in 0..st.open.len() {
                    for ib in ia + 1..st.open.len() {
                        let (a, bb) = (st.open[ia], st.open[ib]);
                        let mut s = st.clone();
                        let (ca, cb) = (s.edges[a].birth, s.edges[bb].birth);
                        s.consume(a, pos, ca);
                        s.consume(bb, pos, cb);
                        let w = add(&s.edges[a].w, &s.edges[bb].w);
                        s.create(pos, Colour::Normal, w);
                        s.kinds.push(VertexKind::Join);
                        s.joins += 1;
                        self.step(s);
                    }
                }
            }
            if st.cuts < self.total_cuts {
                for &e in &st.open {
                    let mut s = st.clone();
                    let c = s.edges[e].birth;
                    s.consume(e, pos, c);
                    let y = self.fresh(s.cuts);
                    let rest = sub(&s.edges[e].w, &y);
                    s.create(pos, Colour::Normal, y);
                    s.create(pos, Colour::Normal, rest);
                    s.kinds.push(VertexKind::Cut);
                    s.cuts += 1;
                    self.step(s);
                }
            }
        }
    }

    fn connected(&self, st: &State) -> bool {
        let n = self.ell_mu + self.b();
        let idx = |node: Node| match node {
            Node::In(i) => i,
            Node::Inner(pos) => self.ell_mu + pos - 1,
            Node::Out(_) => unreachable!(),
        };
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &st.edges {
            if let Some(to) = e.to {
                let (a, b) = (find(&mut parent, idx(e.from)), find(&mut parent, idx(to)));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == root)
    }

    fn finish(&mut self, st: State) {
        if st.open.len() != self.ell_nu || !self.connected(&st) {
            return;
        }
        for perm in permutations(self.ell_nu) {
            if let Some(graph) = self.label(&st, &perm) {
                self.found.entry(graph.topology_key()).or_insert(graph);
            }
        }
    }

    /// Attaches out-end `perm[k]` to the `k`-th open edge and solves the
    /// balancing equations for the cut variables, keeping the earliest ones
    /// free as cycle variables.
    fn label(&self, st: &State, perm: &[usize]) -> Option<ReducedGraph> {
        let (lm, ln, nc) = (self.ell_mu, self.ell_nu, self.total_cuts);
        let shape = Shape::new(lm, ln, self.g);
        // Row layout: cut coefficients, then rhs coefficients over (mu, nu).
        let mut rows: Vec<Vec<Rational64>> = st
            .open
            .iter()
            .zip(perm)
            .map(|(&e, &j)| {
                let w = &st.edges[e].w;
                let mut row = vec![Rational64::zero(); nc + lm + ln];
                for c in 0..nc {
                    row[c] = w[lm + c].into();
                }
                for i in 0..lm {
                    row[nc + i] = (-w[i]).into();
                }
                row[nc + lm + j] = Rational64::one();
                row
            })
            .collect();
        let mut pivot_row: Vec<Option<usize>> = vec![None; nc];
        let mut used = vec![false; rows.len()];
        for c in (0..nc).rev() {
            let Some(rp) = (0..rows.len()).find(|&i| !used[i] && !rows[i][c].is_zero()) else { continue };
            used[rp] = true;
            pivot_row[c] = Some(rp);
            let inv = Rational64::one() / rows[rp][c];
            for x in rows[rp].iter_mut() {
                *x *= inv;
            }
            let pr = rows[rp].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rp && !row[c].is_zero() {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x -= f * y;
                    }
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if used[i] {
                continue;
            }
            let t = row[nc + lm];
            let degree_relation = (0..lm).all(|k| row[nc + k] == -t) && (0..ln).all(|k| row[nc + lm + k] == t);
            if !degree_relation {
                return None;
            }
        }
        let free: Vec<usize> = (0..nc).filter(|&c| pivot_row[c].is_none()).collect();
        if free.len() != self.g {
            return None;
        }
        // Each cut variable as a rational affine expression over (mu, nu, x).
        let nv = lm + ln + self.g;
        let mut cut_expr: Vec<Vec<Rational64>> = vec![vec![Rational64::zero(); nv]; nc];
        for (k, &c) in free.iter().enumerate() {
            cut_expr[c][lm + ln + k] = Rational64::one();
        }
        for c in 0..nc {
            if let Some(rp) = pivot_row[c] {
                let row = &rows[rp];
                let mut v = vec![Rational64::zero(); nv];
                v[..lm + ln].copy_from_slice(&row[nc..nc + lm + ln]);
                for (k, &f) in free.iter().enumerate() {
                    v[lm + ln + k] -= row[f];
                }
                cut_expr[c] = v;
            }
        }
        let mut out_node: Vec<Option<Node>> = vec![None; st.edges.len()];
        for (&e, &j) in st.open.iter().zip(perm) {
            out_node[e] = Some(Node::Out(j));
        }
        let mut edges = Vec::with_capacity(st.edges.len());
        for (k, e) in st.edges.iter().enumerate() {
            let to = e.to.or(out_node[k])?;
            let weight = if let Node::Out(j) = to {
                LinearForm::nu_entry(shape, j)
            } else {
                let mut acc = vec![Rational64::zero(); nv];
                for i in 0..lm {
                    acc[i] += Rational64::from_integer(e.w[i]);
                }
                for c in 0..nc {
                    if e.w[lm + c] != 0 {
                        for (a, b) in acc.iter_mut().zip(&cut_expr[c]) {
                            *a += b * e.w[lm + c];
                        }
                    }
                }
                if acc.iter().any(|a| !a.is_integer()) {
                    return None;
                }
                let ints: Vec<i64> = acc.iter().map(|a| a.to_integer()).collect();
                LinearForm {
                    mu: ints[..lm].to_vec(),
                    nu: ints[lm..lm + ln].to_vec(),
                    x: ints[lm + ln..].to_vec(),
                    constant: 0,
                }
            };
            edges.push(Edge { from: e.from, to, colour: e.colour.unwrap_or(e.birth), weight, counter: None });
        }
        let mut graph = MonodromyGraph {
            ell_mu: lm,
            ell_nu: ln,
            g: self.g,
            p: self.p,
            q: self.q,
            r: self.r,
            vertices: st.kinds.clone(),
            edges,
        };
        if self.g == 0 {
            for k in 0..graph.edges.len() {
                if matches!(graph.edges[k].from, Node::Inner(_)) && matches!(graph.edges[k].to, Node::Inner(_)) {
                    let split = tree_split(&graph, k);
                    debug_assert_eq!(split.reduce_on_slice(), graph.edges[k].weight.reduce_on_slice());
                    graph.edges[k].weight = split;
                }
            }
        }
        graph.edges.sort_by(|a, b| (a.from, a.to, a.colour, &a.weight).cmp(&(b.from, b.to, b.colour, &b.weight)));
        Some(graph)
    }
}

/// Weight of edge `k` of a tree read off the component containing its
/// source once `k` is removed: incoming ends minus outgoing ends there.
pub fn tree_split(graph: &ReducedGraph, k: usize) -> LinearForm {
    let shape = graph.shape();
    let mut seen = vec![graph.edges[k].from];
    let mut stack = vec![graph.edges[k].from];
    while let Some(n) = stack.pop() {
        for (i, e) in graph.edges.iter().enumerate() {
            if i == k {
                continue;
            }
            let other = if e.from == n {
                e.to
            } else if e.to == n {
                e.from
            } else {
                continue;
            };
            if !seen.contains(&other) {
                seen.push(other);
                stack.push(other);
            }
        }
    }
    let i_set: Vec<usize> = seen.iter().filter_map(|n| if let Node::In(i) = n { Some(*i) } else { None }).collect();
    let j_set: Vec<usize> = seen.iter().filter_map(|n| if let Node::Out(j) = n { Some(*j) } else { None }).collect();
    LinearForm::resonance(shape, &i_set, &j_set)
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}
