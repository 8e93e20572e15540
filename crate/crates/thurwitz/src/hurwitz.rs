//! Genus-0 chamber polynomials, genus-g values and interpolated polynomials,
//! and the classical tropical count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chambers::{Chamber, ChamberError};
use crate::counting::{
    chain_polynomial, count_assignments_direct, ordering_at, AtPoint, ChainSpec, ChainVertex, DeepInChamber, Resolver,
};
use crate::exactmath::{
    interpolate, rat, simplex_grid, InterpolationError, LinearForm, MultiPoly, PolyJson, Rational, Shape,
};
use crate::graphs::{enumerate_topologies, Colour, GraphJson, Node, ReducedGraph, Topology};
use crate::symgroup::{Conditions, EndCondition, StartCondition, TypeError, TypeTuple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Interpolation(#[from] InterpolationError),
    #[error("p + q + r = {got} but lengths ({ell_mu},{ell_nu}) in genus {g} need {want}")]
    Branching { ell_mu: usize, ell_nu: usize, g: usize, want: usize, got: usize },
    #[error("m-polynomial is not divisible by the product of the M variables")]
    DivisionFails,
    #[error("no interpolation grid of degree {0} fits inside the chamber")]
    GridEscapesChamber(u32),
}

/// How comparisons inside chain sums are decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// By the sign of the linear part at the chamber sample; the polynomial
    /// describes the chamber away from its walls.
    Deep,
    /// By evaluation at the sample; the polynomial is exact at the sample and
    /// `h_poly` is omitted when the division does not go through.
    AtSample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeShape {
    pub g: usize,
    pub ell_mu: usize,
    pub ell_nu: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl TypeShape {
    pub fn new(g: usize, ell_mu: usize, ell_nu: usize, p: usize, q: usize, r: usize) -> Result<Self, HurwitzError> {
        let want = 2 * g + ell_mu + ell_nu;
        if ell_mu == 0 || ell_nu == 0 || p + q + r + 2 != want {
            return Err(HurwitzError::Branching {
                ell_mu,
                ell_nu,
                g,
                want: want.saturating_sub(2),
                got: p + q + r,
            });
        }
        Ok(TypeShape { g, ell_mu, ell_nu, p, q, r })
    }

    pub fn of(ty: &TypeTuple) -> Self {
        TypeShape { g: ty.g, ell_mu: ty.mu.len(), ell_nu: ty.nu.len(), p: ty.p, q: ty.q, r: ty.r }
    }

    fn topologies(&self) -> std::sync::Arc<Vec<Topology>> {
        enumerate_topologies(self.ell_mu, self.ell_nu, self.g, self.p, self.q, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphContribution {
    pub graph: ReducedGraph,
    pub m_poly: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberPolynomialResult {
    pub shape: TypeShape,
    pub chamber: Chamber,
    pub m_poly: MultiPoly,
    pub h_poly: Option<MultiPoly>,
    pub per_graph: Vec<GraphContribution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphContributionJson {
    pub id: usize,
    pub graph: GraphJson<LinearForm>,
    pub m_poly: PolyJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    #[serde(rename = "type")]
    pub kind: TypeShape,
    pub chamber: Chamber,
    pub m_poly: PolyJson,
    pub h_poly: Option<PolyJson>,
    pub per_graph: Vec<GraphContributionJson>,
}

impl ChamberPolynomialResult {
    pub fn to_json(&self) -> ResultJson {
        ResultJson {
            kind: self.shape,
            chamber: self.chamber.clone(),
            m_poly: self.m_poly.to_json(),
            h_poly: self.h_poly.as_ref().map(MultiPoly::to_json),
            per_graph: self
                .per_graph
                .iter()
                .enumerate()
                .map(|(id, c)| GraphContributionJson { id, graph: c.graph.to_json(), m_poly: c.m_poly.to_json() })
                .collect(),
        }
    }
}

/// Chain specifications of a graph under start and end conditions, or
/// `None` when the graph violates a condition outright.
///
/// Graph-side readings, with `k = p + q`: the step touching a cycle last
/// (first) is the source (target) position of its out-end (in-end) edge, and
/// the larger element of a monotone step is `offset_block + counter`.
pub fn condition_specs(graph: &ReducedGraph, conditions: &Conditions) -> Option<Vec<ChainSpec>> {
    let shape = graph.shape();
    let k = graph.monotone_len();
    let paths = graph.chain_paths();
    let mut specs: Vec<ChainSpec> = paths.iter().map(|p| ChainSpec::from_path(graph, p)).collect();
    let blocks = graph.vertex_blocks();
    let locate = |pos: usize| -> Option<(usize, usize)> {
        paths
            .iter()
            .enumerate()
            .find_map(|(c, p)| p.positions.iter().position(|&x| x == pos).map(|j| (c, j)))
    };
    for s in &conditions.start {
        let l = s.in_end();
        let e = graph.in_end_edge(l)?;
        let pos = match graph.edges[e].to {
            Node::Inner(pos) => pos,
            _ => graph.b() + 1,
        };
        let owner = if pos <= k { blocks[pos - 1] } else { None };
        match *s {
            StartCondition::Absorbed { .. } => {
                if !matches!(owner, Some(o) if o > l) {
                    return None;
                }
            }
            StartCondition::AtLeast { c, .. } => match owner {
                Some(o) if o > l => {}
                Some(o) if o == l => {
                    let (ci, j) = locate(pos)?;
                    specs[ci].vertices[j].lower.push(LinearForm::constant(shape, c));
                }
                _ => return None,
            },
            StartCondition::Late { .. } => {
                if pos <= k {
                    return None;
                }
            }
        }
    }
    for e in &conditions.end {
        let edge = graph.out_end_edge(e.out_end())?;
        let pos = match graph.edges[edge].from {
            Node::Inner(pos) => pos,
            _ => 0,
        };
        let monotone = pos >= 1 && pos <= k;
        match *e {
            EndCondition::Block { l, .. } => {
                if !monotone || blocks[pos - 1] != Some(l) {
                    return None;
                }
            }
            EndCondition::Counter { l, c, .. } | EndCondition::Carries { l, c, .. } => {
                if !monotone {
                    return None;
                }
                if matches!(e, EndCondition::Carries { .. }) && graph.edges[edge].colour == Colour::Normal {
                    return None;
                }
                let (block, value) = if c >= 1 {
                    (l, LinearForm::constant(shape, c))
                } else if l >= 1 {
                    (l - 1, LinearForm::mu_entry(shape, l - 1))
                } else {
                    return None;
                };
                if blocks[pos - 1] != Some(block) {
                    return None;
                }
                let (ci, j) = locate(pos)?;
                let v: &mut ChainVertex = &mut specs[ci].vertices[j];
                match &v.fixed {
                    None => v.fixed = Some(value),
                    Some(f) if *f == value => {}
                    Some(_) => {
                        v.lower.push(value.clone());
                        v.upper.push(value);
                    }
                }
            }
            EndCondition::Late { .. } => {
                if pos <= k {
                    return None;
                }
            }
        }
    }
    Some(specs)
}

fn chamber_resolver(chamber: &Chamber, resolution: Resolution) -> Box<dyn Resolver + Sync> {
    match resolution {
        Resolution::Deep => Box::new(DeepInChamber(chamber.clone())),
        Resolution::AtSample => Box::new(AtPoint(chamber.point())),
    }
}

/// Eliminates the last `N` through `sum M = sum N`.
pub fn reduce_on_slice(poly: &MultiPoly, ell_mu: usize, ell_nu: usize) -> MultiPoly {
    let vars = poly.vars().clone();
    let mut last = MultiPoly::zero(vars.clone());
    for i in 0..ell_mu {
        last = &last + &MultiPoly::var(vars.clone(), i);
    }
    for j in 0..ell_nu - 1 {
        last = &last - &MultiPoly::var(vars.clone(), ell_mu + j);
    }
    poly.substitute(ell_mu + ell_nu - 1, &last)
}

/// `m / prod M_i` on the slice, with the last `N` eliminated.
pub fn divide_by_mu(m: &MultiPoly, ell_mu: usize, ell_nu: usize) -> Option<MultiPoly> {
    let mut h = reduce_on_slice(m, ell_mu, ell_nu);
    for i in 0..ell_mu {
        h = h.div_by_var(i)?;
    }
    Some(h)
}

/// Chamber polynomial with start/end conditions: the sum over reduced genus-0
/// graphs positive on the chamber of the weight product times the chain
/// closed forms.
pub fn genus0_polynomial_with(
    ell_mu: usize,
    ell_nu: usize,
    p: usize,
    q: usize,
    r: usize,
    chamber: &Chamber,
    conditions: &Conditions,
    resolution: Resolution,
) -> Result<ChamberPolynomialResult, HurwitzError> {
    let shape = TypeShape::new(0, ell_mu, ell_nu, p, q, r)?;
    if chamber.ell_mu != ell_mu || chamber.ell_nu != ell_nu {
        return Err(ChamberError::ShapeMismatch(ell_mu, ell_nu, chamber.ell_mu, chamber.ell_nu).into());
    }
    crate::chambers::classify_point(&chamber.sample_mu, &chamber.sample_nu)?;
    let resolver = chamber_resolver(chamber, resolution);
    let vars = Shape::new(ell_mu, ell_nu, 0).var_names(false);
    let topologies = shape.topologies();
    let per_graph: Vec<GraphContribution> = topologies
        .par_iter()
        .filter(|t| t.graph.edges.iter().all(|e| e.weight.eval(&chamber.sample_mu, &chamber.sample_nu, &[]) > 0))
        .filter_map(|t| {
            let specs = condition_specs(&t.graph, conditions)?;
            let mut m = crate::graphs::weight_product(&t.graph);
            for spec in &specs {
                m = &m * &chain_polynomial(spec, resolver.as_ref());
            }
            Some(GraphContribution { graph: t.graph.clone(), m_poly: m })
        })
        .collect();
    let mut m_poly = MultiPoly::zero(vars);
    for c in &per_graph {
        m_poly = &m_poly + &c.m_poly;
    }
    let h_poly = if conditions.is_empty() && (p == 0 || q == 0) && p + q + r > 0 {
        let h = divide_by_mu(&m_poly, ell_mu, ell_nu);
        match resolution {
            Resolution::Deep => Some(h.ok_or(HurwitzError::DivisionFails)?),
            Resolution::AtSample => h,
        }
    } else {
        None
    };
    Ok(ChamberPolynomialResult { shape, chamber: chamber.clone(), m_poly, h_poly, per_graph })
}

/// Chamber polynomial for the chamber of `chamber`, comparisons decided deep in
/// the chamber.
pub fn genus0_polynomial(
    ell_mu: usize,
    ell_nu: usize,
    p: usize,
    q: usize,
    r: usize,
    chamber: &Chamber,
) -> Result<ChamberPolynomialResult, HurwitzError> {
    genus0_polynomial_with(ell_mu, ell_nu, p, q, r, chamber, &Conditions::default(), Resolution::Deep)
}

fn weight_value(graph: &ReducedGraph, pt: &[i64]) -> BigInt {
    graph.counted_edges().iter().map(|&e| BigInt::from(graph.edges[e].weight.eval_point(pt))).product()
}

fn positivity(graph: &ReducedGraph) -> Vec<LinearForm> {
    graph.edges.iter().map(|e| e.weight.clone().plus_const(-1)).collect()
}

/// `M` at a point by direct counting: for every graph, every cycle-variable
/// vector with positive weights, weight product times counter assignments,
/// divided by the symmetry of the graph. Valid at every point, on walls too.
pub fn m_value_direct(ty: &TypeTuple, conditions: &Conditions) -> Result<Rational, HurwitzError> {
    ty.validate()?;
    let shape = TypeShape::of(ty);
    let sh = Shape::new(ty.mu.len(), ty.nu.len(), ty.g);
    let total: Rational = shape
        .topologies()
        .par_iter()
        .map(|t| {
            let Some(specs) = condition_specs(&t.graph, conditions) else { return Rational::zero() };
            let mut acc = BigInt::zero();
            for x in crate::counting::lattice_points(&positivity(&t.graph), &ty.mu, &ty.nu, ty.g, ty.degree()) {
                let pt = sh.point(&ty.mu, &ty.nu, &x);
                let mut c = weight_value(&t.graph, &pt);
                for spec in &specs {
                    c *= BigInt::from(count_assignments_direct(spec, &pt));
                }
                acc += c;
            }
            Rational::new(acc, BigInt::from(t.symmetry))
        })
        .reduce(Rational::zero, |a, b| a + b);
    Ok(total)
}

/// Genus-g value: for each graph, cycle-variable vectors are grouped by the
/// ordering they realise; each ordering contributes the sum over its lattice
/// points of the weight product times the ordering's chain closed form.
pub fn genus_g_value(ty: &TypeTuple) -> Result<Rational, HurwitzError> {
    ty.validate()?;
    let shape = TypeShape::of(ty);
    let sh = Shape::new(ty.mu.len(), ty.nu.len(), ty.g);
    let total: Rational = shape
        .topologies()
        .par_iter()
        .map(|t| {
            let specs = crate::counting::chain_specs(&t.graph);
            let mut groups: BTreeMap<crate::counting::Ordering, Vec<Vec<i64>>> = BTreeMap::new();
            for x in crate::counting::lattice_points(&positivity(&t.graph), &ty.mu, &ty.nu, ty.g, ty.degree()) {
                let pt = sh.point(&ty.mu, &ty.nu, &x);
                groups.entry(ordering_at(&specs, &pt).0).or_default().push(pt);
            }
            let mut acc = Rational::zero();
            for points in groups.values() {
                let witness = AtPoint(points[0].clone());
                let mut f = MultiPoly::one(sh.var_names(false));
                for spec in &specs {
                    f = &f * &chain_polynomial(spec, &witness);
                }
                for pt in points {
                    acc += Rational::from_integer(weight_value(&t.graph, pt)) * f.eval_int(pt);
                }
            }
            acc / rat(t.symmetry as i64)
        })
        .reduce(Rational::zero, |a, b| a + b);
    Ok(total)
}

/// `H = M / prod mu_i`, for `p = 0` or `q = 0`.
pub fn genus_g_h_value(ty: &TypeTuple) -> Result<Option<Rational>, HurwitzError> {
    if ty.p != 0 && ty.q != 0 {
        return Ok(None);
    }
    let m = genus_g_value(ty)?;
    let prod: i64 = ty.mu.iter().product();
    Ok(Some(m / rat(prod)))
}

/// Upper bound on the total degree of `M` in `(mu, nu)`: counted edges plus
/// chain length plus `g` over all graphs, padded by 2.
pub fn degree_bound(shape: &TypeShape) -> u32 {
    shape
        .topologies()
        .iter()
        .map(|t| {
            let chain: usize = t.graph.chain_paths().iter().map(|p| p.positions.len()).sum();
            (t.graph.counted_edges().len() + chain + shape.g) as u32
        })
        .max()
        .unwrap_or(0)
        + 2
}

/// Interpolates `M` on the chamber of `base` from exact genus-g values on a
/// simplex grid in `mu` and all but the last `nu`, scaled deep enough into
/// the chamber to fit. The degree is the least one consistent with a grid
/// of two more degrees; all grid points act as held-out checks.
pub fn genus_g_polynomial(shape: &TypeShape, base: &Chamber) -> Result<MultiPoly, HurwitzError> {
    let (lm, ln) = (shape.ell_mu, shape.ell_nu);
    if base.ell_mu != lm || base.ell_nu != ln {
        return Err(ChamberError::ShapeMismatch(lm, ln, base.ell_mu, base.ell_nu).into());
    }
    interpolate_on_chamber(base, degree_bound(shape), |pt| {
        let ty = TypeTuple::new(shape.g, pt[..lm].to_vec(), pt[lm..].to_vec(), shape.p, shape.q, shape.r)?;
        genus_g_value(&ty)
    })
}

/// Interpolates a function of `(mu, nu)` that is polynomial on the chamber of
/// `base`, in the variables `M_1..M_lm, N_1..N_{ln-1}`, trying degrees up to
/// `max_degree` as in [`genus_g_polynomial`].
pub fn interpolate_on_chamber<E, F>(base: &Chamber, max_degree: u32, eval: F) -> Result<MultiPoly, E>
where
    E: From<HurwitzError> + Send,
    F: Fn(&[i64]) -> Result<Rational, E> + Sync,
{
    let (lm, ln) = (base.ell_mu, base.ell_nu);
    crate::chambers::classify_point(&base.sample_mu, &base.sample_nu).map_err(HurwitzError::from)?;
    let vars = Shape::new(lm, ln, 0).var_names(false);
    let active: Vec<usize> = (0..lm + ln - 1).collect();
    let mut cache: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for degree in 0..=max_degree {
        let span = degree + 2;
        let grid = (1..=64)
            .find_map(|scale| {
                let start = base.scaled(scale).point();
                let pts: Vec<Vec<i64>> = simplex_grid(&start[..lm + ln - 1], &active, span, 1)
                    .into_iter()
                    .map(|mut pt| {
                        let last = pt[..lm].iter().sum::<i64>() - pt[lm..].iter().sum::<i64>();
                        pt.push(last);
                        pt
                    })
                    .collect();
                pts.iter().all(|pt| base.contains(&pt[..lm], &pt[lm..])).then_some(pts)
            })
            .ok_or(HurwitzError::GridEscapesChamber(span))?;
        let missing: Vec<Vec<i64>> = grid.iter().filter(|pt| !cache.contains_key(*pt)).cloned().collect();
        let values: Vec<(Vec<i64>, Result<Rational, E>)> = missing
            .into_par_iter()
            .map(|pt| {
                let v = eval(&pt);
                (pt, v)
            })
            .collect();
        for (pt, v) in values {
            cache.insert(pt, v?);
        }
        let samples: Vec<(Vec<i64>, Rational)> = grid.iter().map(|pt| (pt.clone(), cache[pt].clone())).collect();
        match interpolate(vars.clone(), &active, &samples, degree) {
            Ok(poly) => return Ok(poly),
            Err(InterpolationError::HeldOutMismatch { .. }) => continue,
            Err(e) => return Err(HurwitzError::from(e).into()),
        }
    }
    Err(HurwitzError::from(InterpolationError::Underdetermined { degree: max_degree, rank: 0, monomials: 0 }).into())
}

/// The classical tropical count `sum 1/|Aut| prod w(e)` over plain monodromy
/// graphs with integer weights, inner edges only, computed by its own sweep.
pub fn tropical_count(mu: &[i64], nu: &[i64], g: usize) -> Rational {
    #[derive(Clone)]
    struct St {
        open: Vec<(Node, i64)>,
        edges: Vec<(Node, Node, i64)>,
        joins: usize,
        cuts: usize,
    }
    let (lm, ln) = (mu.len(), nu.len());
    let b = 2 * g + lm + ln - 2;
    let (tj, tc) = (g + lm - 1, g + ln - 1);
    let mut found: BTreeMap<Vec<(Node, Node, i64)>, ()> = BTreeMap::new();
    fn connected(edges: &[(Node, Node, i64)], lm: usize, b: usize) -> bool {
        let idx = |n: Node| match n {
            Node::In(i) => i,
            Node::Inner(p) => lm + p - 1,
            Node::Out(_) => unreachable!(),
        };
        let n = lm + b;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for &(a, c, _) in edges {
            if matches!(c, Node::Out(_)) {
                continue;
            }
            let (ra, rc) = (find(&mut parent, idx(a)), find(&mut parent, idx(c)));
            parent[ra] = rc;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == root)
    }
    fn rec(
        st: St,
        pos: usize,
        ctx: (usize, usize, usize, usize, usize),
        nu: &[i64],
        found: &mut BTreeMap<Vec<(Node, Node, i64)>, ()>,
    ) {
        let (lm, b, tj, tc, _) = ctx;
        if pos > b {
            if !connected(&st.edges, lm, b) {
                return;
            }
            for perm in crate::graphs::all_permutations(nu.len()) {
                if st.open.iter().zip(&perm).all(|(&(_, w), &j)| w == nu[j]) {
                    let mut edges = st.edges.clone();
                    edges.extend(st.open.iter().zip(&perm).map(|(&(from, w), &j)| (from, Node::Out(j), w)));
                    edges.sort();
                    found.insert(edges, ());
                }
            }
            return;
        }
        let node = Node::Inner(pos);
        if st.joins < tj {
            for a in 0..st.open.len() {
                for c in a + 1..st.open.len() {
                    let mut s = st.clone();
                    let (ea, ec) = (s.open[a], s.open[c]);
                    s.edges.push((ea.0, node, ea.1));
                    s.edges.push((ec.0, node, ec.1));
                    s.open = st.open.iter().enumerate().filter(|(k, _)| *k != a && *k != c).map(|(_, e)| *e).collect();
                    s.open.push((node, ea.1 + ec.1));
                    s.joins += 1;
                    rec(s, pos + 1, ctx, nu, found);
                }
            }
        }
        if st.cuts < tc {
            for a in 0..st.open.len() {
                let (from, w) = st.open[a];
                for x in 1..w {
                    if x > w - x {
                        break;
                    }
                    let mut s = st.clone();
                    s.edges.push((from, node, w));
                    s.open.remove(a);
                    s.open.push((node, x));
                    s.open.push((node, w - x));
                    s.cuts += 1;
                    rec(s, pos + 1, ctx, nu, found);
                }
            }
        }
    }
    let st = St { open: mu.iter().enumerate().map(|(i, &m)| (Node::In(i), m)).collect(), edges: vec![], joins: 0, cuts: 0 };
    if b == 0 {
        return if mu == nu { Rational::new(BigInt::one(), BigInt::from(mu[0])) } else { Rational::zero() };
    }
    rec(st, 1, (lm, b, tj, tc, 0), nu, &mut found);
    let mut total = Rational::zero();
    for edges in found.keys() {
        let mut mult: BTreeMap<&(Node, Node, i64), u64> = BTreeMap::new();
        for e in edges {
            *mult.entry(e).or_default() += 1;
        }
        let aut: u64 = mult.values().map(|&m| (1..=m).product::<u64>()).product();
        let prod: BigInt = edges
            .iter()
            .filter(|(a, c, _)| matches!(a, Node::Inner(_)) && matches!(c, Node::Inner(_)))
            .map(|&(_, _, w)| BigInt::from(w))
            .product();
        total += Rational::new(prod, BigInt::from(aut));
    }
    total
}
