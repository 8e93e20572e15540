//! Genus-0 wall-crossing: polynomial differences across walls, generalized
//! polynomials with start and end conditions, and the case analysis of
//! graphs whose multiplicity changes across a wall.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::chambers::{wall_between, Chamber, ChamberError, ResonanceForm, Wall};
use crate::exactmath::{LinearForm, MultiPoly, PolyJson};
use crate::graphs::{Colour, ConcreteGraph, Node, ReducedGraph};
use crate::exactmath::Rational;
use crate::hurwitz::{
    degree_bound, genus0_polynomial, genus0_polynomial_with, interpolate_on_chamber, m_value_direct, HurwitzError,
    Resolution, TypeShape,
};
use num_traits::Zero;
use crate::symgroup::{
    build_monodromy_graph, for_each_factorization, m_oracle, ConditionError, Conditions, EndCondition, OracleError,
    StartCondition, TypeTuple,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallCrossError {
    #[error("chambers are not adjacent")]
    NonAdjacent,
    #[error("two conditions on {0}")]
    InconsistentConditions(String),
    #[error("conditioned counts need p = 0 or q = 0")]
    MixedMonotone,
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallCrossing {
    pub wall: Wall,
    pub from: Chamber,
    pub to: Chamber,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    /// `m(from) - m(to)`.
    pub wc_poly: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCrossingJson {
    pub from: Chamber,
    pub to: Chamber,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub wc_poly: PolyJson,
}

impl WallCrossing {
    pub fn to_json(&self) -> WallCrossingJson {
        WallCrossingJson {
            from: self.from.clone(),
            to: self.to.clone(),
            i_set: self.wall.form.i_set.iter().map(|i| i + 1).collect(),
            j_set: self.wall.form.j_set.iter().map(|j| j + 1).collect(),
            p: self.p,
            q: self.q,
            r: self.r,
            wc_poly: self.wc_poly.to_json(),
        }
    }
}

/// `m(from) - m(to)` for adjacent chambers.
pub fn wall_crossing(from: &Chamber, to: &Chamber, p: usize, q: usize, r: usize) -> Result<WallCrossing, WallCrossError> {
    let wall = wall_between(from, to).ok_or(WallCrossError::NonAdjacent)?;
    let a = genus0_polynomial(from.ell_mu, from.ell_nu, p, q, r, from)?;
    let b = genus0_polynomial(to.ell_mu, to.ell_nu, p, q, r, to)?;
    Ok(WallCrossing {
        wall,
        from: from.clone(),
        to: to.clone(),
        p,
        q,
        r,
        wc_poly: &a.m_poly - &b.m_poly,
    })
}

/// Crossing from the side where the wall's form is positive.
pub fn crossing_of(wall: &Wall, p: usize, q: usize, r: usize) -> Result<WallCrossing, WallCrossError> {
    wall_crossing(&wall.side_positive, &wall.side_negative, p, q, r)
}

/// Rejects two conditions on the same in-end or out-end.
pub fn check_consistent(conditions: &Conditions) -> Result<(), WallCrossError> {
    let mut ins = BTreeSet::new();
    for s in &conditions.start {
        let l = s.in_end();
        if !ins.insert(l) {
            return Err(WallCrossError::InconsistentConditions(format!("in-end {}", l + 1)));
        }
    }
    let mut outs = BTreeSet::new();
    for e in &conditions.end {
        let i = e.out_end();
        if !outs.insert(i) {
            return Err(WallCrossError::InconsistentConditions(format!("out-end {}", i + 1)));
        }
    }
    Ok(())
}

/// Chamber polynomial of the conditioned count. Comparisons involving
/// condition counters are decided at the chamber sample, so the polynomial is
/// exact there and on the region where those comparisons agree.
pub fn generalized_polynomial(
    ell_mu: usize,
    ell_nu: usize,
    p: usize,
    q: usize,
    r: usize,
    conditions: &Conditions,
    chamber: &Chamber,
) -> Result<MultiPoly, WallCrossError> {
    if p != 0 && q != 0 {
        return Err(WallCrossError::MixedMonotone);
    }
    check_consistent(conditions)?;
    let res = genus0_polynomial_with(ell_mu, ell_nu, p, q, r, chamber, conditions, Resolution::AtSample)?;
    Ok(res.m_poly)
}

/// The five ways a graph's multiplicity can differ across a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WallCase {
    /// Normal edge of weight `delta` from a monotone vertex.
    OneA,
    /// Non-normal edge of weight `delta` from a monotone vertex.
    OneB,
    /// Edge of weight `delta` from a free vertex.
    OneC,
    /// Two edges of one chain-path, the earlier heavier by `delta`; `in_end`
    /// marks the earlier one being the in-end edge.
    TwoA { in_end: bool },
    /// Two edges of one chain-path, the earlier lighter by `delta`.
    TwoB,
}

fn same_on_slice(a: &LinearForm, b: &LinearForm) -> bool {
    (a - b).reduce_on_slice().is_zero()
}

/// Cases a graph falls into on one side of a wall: `sign = 1` on the side
/// where `form` is positive, `-1` on the other, so that `delta = sign * form`
/// is positive there.
pub fn classify_graph(graph: &ReducedGraph, form: &ResonanceForm, sign: i64) -> BTreeSet<WallCase> {
    let delta = form.linear_form(graph.g).scale(sign);
    let minus = delta.scale(-1);
    let k = graph.monotone_len();
    let mut cases = BTreeSet::new();
    for e in &graph.edges {
        if !same_on_slice(&e.weight, &delta) {
            continue;
        }
        if let Node::Inner(pos) = e.from {
            cases.insert(match (pos <= k, e.colour) {
                (true, Colour::Normal) => WallCase::OneA,
                (true, _) => WallCase::OneB,
                (false, _) => WallCase::OneC,
            });
        }
    }
    for path in graph.chain_paths() {
        for (a, &ea) in path.edges.iter().enumerate() {
            for &eb in &path.edges[a + 1..] {
                let diff = &graph.edges[ea].weight - &graph.edges[eb].weight;
                if same_on_slice(&diff, &delta) {
                    cases.insert(WallCase::TwoA { in_end: a == 0 });
                } else if same_on_slice(&diff, &minus) {
                    cases.insert(WallCase::TwoB);
                }
            }
        }
    }
    cases
}

/// Per-graph multiplicity change across a wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphChange {
    pub graph: ReducedGraph,
    /// Cases on the positive side and on the negative side.
    pub cases_positive: BTreeSet<WallCase>,
    pub cases_negative: BTreeSet<WallCase>,
    pub m_positive: MultiPoly,
    pub m_negative: MultiPoly,
}

/// All graphs whose chamber polynomial differs on the two sides of `wall`.
pub fn graph_changes(wall: &Wall, p: usize, q: usize, r: usize) -> Result<Vec<GraphChange>, WallCrossError> {
    let (cp, cn) = (&wall.side_positive, &wall.side_negative);
    let a = genus0_polynomial(cp.ell_mu, cp.ell_nu, p, q, r, cp)?;
    let b = genus0_polynomial(cn.ell_mu, cn.ell_nu, p, q, r, cn)?;
    let zero = MultiPoly::zero(a.m_poly.vars().clone());
    let mut by_key: BTreeMap<_, (ReducedGraph, MultiPoly, MultiPoly)> = BTreeMap::new();
    for c in &a.per_graph {
        by_key.insert(c.graph.topology_key(), (c.graph.clone(), c.m_poly.clone(), zero.clone()));
    }
    for c in &b.per_graph {
        by_key
            .entry(c.graph.topology_key())
            .or_insert_with(|| (c.graph.clone(), zero.clone(), zero.clone()))
            .2 = c.m_poly.clone();
    }
    Ok(by_key
        .into_values()
        .filter(|(_, x, y)| x != y)
        .map(|(graph, m_positive, m_negative)| GraphChange {
            cases_positive: classify_graph(&graph, &wall.form, 1),
            cases_negative: classify_graph(&graph, &wall.form, -1),
            graph,
            m_positive,
            m_negative,
        })
        .collect())
}

/// The genus-0 concrete graph with every weight replaced by the resonance
/// form of the ends on its source side.
pub fn lift_tree(graph: &ConcreteGraph) -> ReducedGraph {
    let shape = crate::exactmath::Shape::new(graph.ell_mu, graph.ell_nu, 0);
    let mut lifted = ReducedGraph {
        ell_mu: graph.ell_mu,
        ell_nu: graph.ell_nu,
        g: graph.g,
        p: graph.p,
        q: graph.q,
        r: graph.r,
        vertices: graph.vertices.clone(),
        edges: graph
            .edges
            .iter()
            .map(|e| crate::graphs::Edge {
                from: e.from,
                to: e.to,
                colour: e.colour,
                weight: LinearForm::zero(shape),
                counter: None,
            })
            .collect(),
    };
    let forms: Vec<LinearForm> = (0..lifted.edges.len()).map(|k| crate::graphs::tree_split(&lifted, k)).collect();
    for (e, f) in lifted.edges.iter_mut().zip(forms) {
        e.weight = f;
    }
    lifted
}

/// Factorisations of a genus-0 type with canonical `sigma_1`, bucketed by
/// the set of wall cases of their graph on the side of `(mu, nu)`.
pub fn oracle_case_counts(
    ty: &TypeTuple,
    form: &ResonanceForm,
    budget: u64,
) -> Result<BTreeMap<BTreeSet<WallCase>, u128>, WallCrossError> {
    let sign = form.eval(&ty.mu, &ty.nu).signum();
    if sign == 0 {
        return Err(ChamberError::OnWall(form.clone()).into());
    }
    let mut out: BTreeMap<BTreeSet<WallCase>, u128> = BTreeMap::new();
    let mut failure = None;
    for_each_factorization(ty, None, budget, |f| match build_monodromy_graph(ty, f) {
        Ok(graph) => *out.entry(classify_graph(&lift_tree(&graph), form, sign)).or_default() += 1,
        Err(e) => failure = Some(e),
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(out),
    }
}

/// Chain-path edge pairs `(e1, e2)` with `e1` before `e2`, `e1` not the
/// in-end edge and `w(e2) - w(e1) = delta`; with `skip_adjacent`, pairs
/// meeting at a single vertex are left out.
pub fn gaining_pairs(graph: &ReducedGraph, delta: &LinearForm, skip_adjacent: bool) -> usize {
    let mut n = 0;
    for path in graph.chain_paths() {
        for a in 1..path.edges.len() {
            let from = if skip_adjacent { a + 2 } else { a + 1 };
            for &eb in path.edges.iter().skip(from) {
                let diff = &graph.edges[eb].weight - &graph.edges[path.edges[a]].weight;
                if same_on_slice(&diff, delta) {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Sum of [`gaining_pairs`] over all factorisations of `ty`, with `delta`
/// the wall's form signed to be positive at `(mu, nu)`.
pub fn oracle_gaining_pairs(
    ty: &TypeTuple,
    form: &ResonanceForm,
    skip_adjacent: bool,
    budget: u64,
) -> Result<u128, WallCrossError> {
    let sign = form.eval(&ty.mu, &ty.nu).signum();
    if sign == 0 {
        return Err(ChamberError::OnWall(form.clone()).into());
    }
    let delta = form.linear_form(0).scale(sign);
    let mut total = 0u128;
    let mut failure = None;
    for_each_factorization(ty, None, budget, |f| match build_monodromy_graph(ty, f) {
        Ok(graph) => total += gaining_pairs(&lift_tree(&graph), &delta, skip_adjacent) as u128,
        Err(e) => failure = Some(e),
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(total),
    }
}

fn split_mask<T: Copy>(items: &[T], mask: usize) -> (Vec<T>, Vec<T>) {
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for (k, &x) in items.iter().enumerate() {
        if mask >> k & 1 == 1 {
            inside.push(x);
        } else {
            outside.push(x);
        }
    }
    (inside, outside)
}

/// In-end parts of a piece: the original labels `labels` plus a glued
/// in-end of weight `glued` in the slot of label `t`. Returns the parts and
/// the slot.
fn glued_parts(mu: &[i64], labels: &[usize], t: usize, glued: i64) -> (Vec<i64>, usize) {
    let mut all: Vec<usize> = labels.iter().copied().filter(|&i| i != t).chain([t]).collect();
    all.sort_unstable();
    let slot = all.iter().position(|&i| i == t).unwrap();
    (all.iter().map(|&i| if i == t { glued } else { mu[i] }).collect(), slot)
}

struct PieceCounter {
    cache: BTreeMap<String, Rational>,
}

impl PieceCounter {
    fn count(&mut self, mu: Vec<i64>, nu: Vec<i64>, p: usize, r: usize, conditions: Conditions) -> Result<Rational, WallCrossError> {
        let ty = TypeTuple::new(0, mu, nu, p, 0, r).map_err(HurwitzError::from)?;
        let key = format!("{ty} {:?} {:?}", conditions.start, conditions.end);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = m_value_direct(&ty, &conditions)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }
}

fn conditions(start: Vec<StartCondition>, end: Vec<EndCondition>) -> Conditions {
    Conditions { start, end }
}

/// Cut-and-reglue count of the chain-path pairs of [`gaining_pairs`] with
/// `skip_adjacent` set, at a point off the wall, for purely weakly monotone
/// genus-0 data (`q = 0`).
///
/// With `delta = sum mu_A - sum nu_B` the form signed to be positive at the
/// point, the pair `(e1, e2)` on the chain of block `t` cuts the graph into
/// `(mu_I1 -> nu_J1, w1)`, `((mu_A, w1)_t -> nu_B, w2)` and
/// `((mu_I3, w2)_t -> nu_J3)` with `I1 + I3` and `J1 + J3` the complements of
/// `A` and `B`. The pieces are counted with conditions fixing the counter of
/// `e1` at `l` and of `e2` at `l' >= l`, measured in the block of each piece
/// that holds the glued end, and free steps are interleaved by a multinomial.
/// Pairs meeting at one vertex, where `e1` and an edge of weight `delta` join,
/// are subtracted from the middle factor.
pub fn case2a_value(form: &ResonanceForm, mu: &[i64], nu: &[i64], p: usize, r: usize) -> Result<Rational, WallCrossError> {
    let sign = form.eval(mu, nu).signum();
    if sign == 0 {
        return Err(ChamberError::OnWall(form.clone()).into());
    }
    let [pos, neg] = form.supports();
    let (a_set, b_set) = if sign > 0 { pos.clone() } else { neg.clone() };
    let (ac, bc) = if sign > 0 { neg } else { pos };
    let delta = sign * form.eval(mu, nu);
    let mut pieces = PieceCounter { cache: BTreeMap::new() };
    let mut total = Rational::zero();
    for m1 in 0..1usize << ac.len() {
        let (i1, i3) = split_mask(&ac, m1);
        for n1 in 0..1usize << bc.len() {
            let (j1, j3) = split_mask(&bc, n1);
            if i1.is_empty() || i1.len() + j1.len() < 2 || i3.len() + j3.len() == 0 {
                continue;
            }
            let w1 = i1.iter().map(|&i| mu[i]).sum::<i64>() - j1.iter().map(|&j| nu[j]).sum::<i64>();
            let w2 = w1 + delta;
            if w1 < 1 {
                continue;
            }
            let b1 = i1.len() + j1.len() - 1;
            let b2 = a_set.len() + b_set.len();
            let b3 = i3.len() + j3.len() - 1;
            let pick = |set: &[usize], xs: &[i64]| -> Vec<i64> { set.iter().map(|&x| xs[x]).collect() };
            let mut nu1 = pick(&j1, nu);
            nu1.push(w1);
            let mut nu2 = pick(&b_set, nu);
            nu2.push(w2);
            let nu3 = pick(&j3, nu);
            let mut nu2a = pick(&b_set, nu);
            nu2a.push(delta);
            for &t in &i1 {
                let mu1 = pick(&i1, mu);
                let s1 = i1.iter().position(|&i| i == t).unwrap();
                let (mu2, s2) = glued_parts(mu, &a_set, t, w1);
                let (mu3, s3) = glued_parts(mu, &i3, t, w2);
                let (shift1, shift2) = (mu[t] - w1, mu[t] - w2);
                for p1 in 0..=b1.min(p) {
                    for p2 in 1..=b2.min(p - p1) {
                        let p3 = p - p1 - p2;
                        if p3 > b3 || b1 + b2 + b3 - p != r {
                            continue;
                        }
                        let (r1, r2, r3) = (b1 - p1, b2 - p2, b3 - p3);
                        let interleavings = Rational::from_integer(
                            crate::exactmath::binomial(r as u64, r1 as u64)
                                * crate::exactmath::binomial((r - r1) as u64, r2 as u64),
                        );
                        let mut correction = Rational::zero();
                        if b2 >= 1 {
                            for (h_slot, &h) in a_set.iter().enumerate() {
                                if h < t {
                                    let e = vec![EndCondition::Block { l: h_slot, i: b_set.len() }];
                                    correction += pieces.count(pick(&a_set, mu), nu2a.clone(), p2 - 1, r2, conditions(vec![], e))?;
                                }
                            }
                            correction *= Rational::from_integer(delta.into());
                        }
                        for l in 1..=mu[t] {
                            let g1 = pieces.count(
                                mu1.clone(),
                                nu1.clone(),
                                p1,
                                r1,
                                conditions(vec![], vec![EndCondition::Carries { l: s1, c: l, i: j1.len() }]),
                            )?;
                            if g1.is_zero() {
                                continue;
                            }
                            for l2 in l..=mu[t] {
                                let c2 = l2 - shift1;
                                if c2 < 1 || c2 > w1 {
                                    continue;
                                }
                                let end2 = vec![EndCondition::Carries { l: s2, c: c2, i: b_set.len() }];
                                let head = pieces.count(
                                    mu2.clone(),
                                    nu2.clone(),
                                    p2,
                                    r2,
                                    conditions(vec![StartCondition::AtLeast { l: s2, c: l - shift1 }], end2.clone()),
                                )? - pieces.count(
                                    mu2.clone(),
                                    nu2.clone(),
                                    p2,
                                    r2,
                                    conditions(vec![StartCondition::Absorbed { l: s2 }], end2),
                                )?;
                                let g2 = head - &correction;
                                if g2.is_zero() {
                                    continue;
                                }
                                let g3 = pieces.count(
                                    mu3.clone(),
                                    nu3.clone(),
                                    p3,
                                    r3,
                                    conditions(vec![StartCondition::AtLeast { l: s3, c: l2 - shift2 }], vec![]),
                                )? + pieces.count(
                                    mu3.clone(),
                                    nu3.clone(),
                                    p3,
                                    r3,
                                    conditions(vec![StartCondition::Late { l: s3 }], vec![]),
                                )?;
                                total += &interleavings * &g1 * g2 * g3;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// `m(from) - m(to)` with both chamber polynomials interpolated from the
/// brute-force count, in `M_1..M_lm, N_1..N_{ln-1}`.
pub fn oracle_crossing(wall: &Wall, p: usize, q: usize, r: usize, budget: u64) -> Result<MultiPoly, WallCrossError> {
    let (lm, ln) = (wall.form.ell_mu, wall.form.ell_nu);
    let shape = TypeShape::new(0, lm, ln, p, q, r)?;
    let max_degree = degree_bound(&shape);
    let side = |chamber: &Chamber| {
        interpolate_on_chamber(chamber, max_degree, |pt: &[i64]| -> Result<Rational, WallCrossError> {
            let ty = TypeTuple::new(0, pt[..lm].to_vec(), pt[lm..].to_vec(), p, q, r).map_err(HurwitzError::from)?;
            Ok(Rational::from_integer(m_oracle(&ty, &Conditions::default(), budget)?.into()))
        })
    };
    Ok(&side(&wall.side_positive)? - &side(&wall.side_negative)?)
}

/// A wall-crossing value at a point split by case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingSplit {
    /// [`case2a_value`] at the point.
    pub case2a: Rational,
    /// Factorisations whose graph falls into some case on the point's side,
    /// less the pairs counted by `case2a`.
    pub remaining: Rational,
    /// Sum of the other chamber's polynomials, at the point, over graphs
    /// falling into some case on that side.
    pub other_side: Rational,
    /// `wc_poly` at the point, signed towards the point's side.
    pub wc_value: Rational,
}

impl CrossingSplit {
    pub fn holds(&self) -> bool {
        &self.case2a + &self.remaining - &self.other_side == self.wc_value
    }
}

/// Splits the crossing of `wall` at a point of one of its chambers, `q = 0`.
pub fn crossing_split(
    wall: &Wall,
    mu: &[i64],
    nu: &[i64],
    p: usize,
    r: usize,
    budget: u64,
) -> Result<CrossingSplit, WallCrossError> {
    let here = crate::chambers::classify_point(mu, nu)?;
    let sign = wall.form.eval(mu, nu).signum();
    let (own, other) = if sign > 0 {
        (&wall.side_positive, &wall.side_negative)
    } else {
        (&wall.side_negative, &wall.side_positive)
    };
    if here.sign_vector() != own.sign_vector() {
        return Err(WallCrossError::NonAdjacent);
    }
    let crossing = crossing_of(wall, p, 0, r)?;
    let pt: Vec<i64> = mu.iter().chain(nu).copied().collect();
    let wc_value = crossing.wc_poly.eval_int(&pt) * Rational::from_integer(sign.into());
    let ty = TypeTuple::new(0, mu.to_vec(), nu.to_vec(), p, 0, r).map_err(HurwitzError::from)?;
    let delta = wall.form.linear_form(0).scale(sign);
    let mut remaining = 0i128;
    let mut failure = None;
    for_each_factorization(&ty, None, budget, |f| match build_monodromy_graph(&ty, f) {
        Ok(graph) => {
            let lifted = lift_tree(&graph);
            if !classify_graph(&lifted, &wall.form, sign).is_empty() {
                remaining += 1;
            }
            remaining -= gaining_pairs(&lifted, &delta, true) as i128;
        }
        Err(e) => failure = Some(e),
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let res = genus0_polynomial(other.ell_mu, other.ell_nu, p, 0, r, other)?;
    let mut other_side = Rational::zero();
    for c in &res.per_graph {
        if !classify_graph(&c.graph, &wall.form, -sign).is_empty() {
            other_side += c.m_poly.eval_int(&pt);
        }
    }
    Ok(CrossingSplit {
        case2a: case2a_value(&wall.form, mu, nu, p, r)?,
        remaining: Rational::from_integer(remaining.into()),
        other_side,
        wc_value,
    })
}

/// [`case2a_value`] as a polynomial on the chamber `side` of `wall`, in
/// `M_1..M_lm, N_1..N_{ln-1}`.
pub fn case2a_formula(wall: &Wall, side: &Chamber, p: usize, r: usize) -> Result<MultiPoly, WallCrossError> {
    if side.sign_vector() != wall.side_positive.sign_vector() && side.sign_vector() != wall.side_negative.sign_vector() {
        return Err(WallCrossError::NonAdjacent);
    }
    let (lm, ln) = (side.ell_mu, side.ell_nu);
    let shape = TypeShape::new(0, lm, ln, p, 0, r)?;
    interpolate_on_chamber(side, degree_bound(&shape), |pt: &[i64]| case2a_value(&wall.form, &pt[..lm], &pt[lm..], p, r))
}
