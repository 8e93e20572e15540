//! Counter assignments on chain-paths: direct enumeration, closed forms via
//! power sums, and the orderings that make those closed forms piecewise.

use std::collections::BTreeMap;

use crate::chambers::Chamber;
use crate::exactmath::{rat, sum_over_range, LinearForm, MultiPoly};
use crate::graphs::{ChainPath, ReducedGraph};

/// Decides comparisons between affine forms while building closed forms.
pub trait Resolver {
    /// Whether `a >= b` in the region the closed form is built for.
    fn ge(&self, a: &LinearForm, b: &LinearForm) -> bool;
}

/// Compares by evaluating at a point `(mu, nu, x)`; the closed form is then
/// exact at that point and on the region where all comparisons agree.
#[derive(Debug, Clone)]
pub struct AtPoint(pub Vec<i64>);

impl Resolver for AtPoint {
    fn ge(&self, a: &LinearForm, b: &LinearForm) -> bool {
        a.eval_point(&self.0) >= b.eval_point(&self.0)
    }
}

/// Compares deep inside a chamber: the sign of the linear part at the sample
/// decides, the constant only breaks exact ties.
#[derive(Debug, Clone)]
pub struct DeepInChamber(pub Chamber);

impl Resolver for DeepInChamber {
    fn ge(&self, a: &LinearForm, b: &LinearForm) -> bool {
        let diff = (a - b).reduce_on_slice();
        let lin = diff.linear_part();
        let v = lin.eval(&self.0.sample_mu, &self.0.sample_nu, &vec![0; lin.x.len()]);
        if v != 0 {
            v > 0
        } else {
            diff.constant >= 0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVertex {
    /// Weight of the edge carrying this vertex's counter.
    pub weight: LinearForm,
    /// Whether the counter must exceed the previous one strictly.
    pub strict: bool,
    /// Additional lower bounds on the counter.
    pub lower: Vec<LinearForm>,
    /// Additional upper bounds; closed forms honour them only together
    /// with a prescribed value.
    pub upper: Vec<LinearForm>,
    /// A prescribed counter value.
    pub fixed: Option<LinearForm>,
}

/// Counters `c_1..c_s` with `max(1, U - w_j + 1) <= c_j <= U`, ordered by
/// `c_j >= c_{j-1}` or `c_j > c_{j-1}`, plus extra bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    pub upper: LinearForm,
    pub vertices: Vec<ChainVertex>,
}

impl ChainSpec {
    pub fn from_path(graph: &ReducedGraph, path: &ChainPath) -> Self {
        ChainSpec {
            upper: graph.edges[path.edges[0]].weight.clone(),
            vertices: (0..path.positions.len())
                .map(|j| ChainVertex {
                    weight: graph.edges[path.edges[j + 1]].weight.clone(),
                    strict: path.strict(j, graph.p, graph.q),
                    lower: Vec::new(),
                    upper: Vec::new(),
                    fixed: None,
                })
                .collect(),
        }
    }

    fn range_floor(&self, j: usize) -> LinearForm {
        (&self.upper - &self.vertices[j].weight).plus_const(1)
    }
}

/// Number of counter assignments at a point, by dynamic programming over
/// counter values.
pub fn count_assignments_direct(spec: &ChainSpec, point: &[i64]) -> u128 {
    if spec.vertices.is_empty() {
        return 1;
    }
    let u = spec.upper.eval_point(point);
    if u < 1 {
        return 0;
    }
    let n = u as usize;
    let mut prev: Option<Vec<u128>> = None;
    for (j, v) in spec.vertices.iter().enumerate() {
        let mut lo = spec.range_floor(j).eval_point(point).max(1);
        for l in &v.lower {
            lo = lo.max(l.eval_point(point));
        }
        let hi = v.upper.iter().map(|l| l.eval_point(point)).min().unwrap_or(i64::MAX);
        let fixed = v.fixed.as_ref().map(|f| f.eval_point(point));
        let mut cur = vec![0u128; n + 1];
        let mut prefix = 0u128;
        for t in 1..=n {
            if let Some(p) = &prev {
                let src = if v.strict { t - 1 } else { t };
                if src >= 1 {
                    prefix += p[src];
                }
            }
            let allowed = t as i64 >= lo && t as i64 <= hi && fixed.map_or(true, |f| f == t as i64);
            if allowed {
                cur[t] = if prev.is_some() { prefix } else { 1 };
            }
        }
        prev = Some(cur);
    }
    prev.unwrap().iter().sum()
}

enum DpState {
    Start,
    Free { floor: LinearForm, h: MultiPoly },
    Point { value: LinearForm, f: MultiPoly },
}

fn pick_max<R: Resolver + ?Sized>(candidates: Vec<LinearForm>, resolver: &R) -> LinearForm {
    let mut best = candidates[0].clone();
    for c in &candidates[1..] {
        if !resolver.ge(&best, c) {
            best = c.clone();
        }
    }
    best
}

/// Closed form for the number of counter assignments, as a polynomial in
/// `M.., N.., X..`. Each comparison of bounds is decided by `resolver`; ties
/// go to the bound listed first (previous counter, range floor, extras).
pub fn chain_polynomial<R: Resolver + ?Sized>(spec: &ChainSpec, resolver: &R) -> MultiPoly {
    let shape = spec.upper.shape();
    let aux_vars = shape.var_names(true);
    let t = shape.aux_var();
    let tvar = MultiPoly::var(aux_vars.clone(), t);
    let one = MultiPoly::one(aux_vars.clone());
    let zero = || MultiPoly::zero(shape.var_names(false));
    let poly = |f: &LinearForm| f.to_poly(true);
    let upper = &spec.upper;
    let mut state = DpState::Start;
    for (j, v) in spec.vertices.iter().enumerate() {
        let delta = i64::from(v.strict);
        let mut candidates = match &state {
            DpState::Start => vec![LinearForm::constant(shape, 1)],
            DpState::Free { floor, .. } => vec![floor.clone().plus_const(delta)],
            DpState::Point { value, .. } => vec![value.clone().plus_const(delta)],
        };
        candidates.push(spec.range_floor(j));
        candidates.extend(v.lower.iter().cloned());
        let floor = pick_max(candidates, resolver);
        let h = match &state {
            DpState::Start => one.clone(),
            DpState::Free { floor: prev, h } => {
                let top = &tvar - &MultiPoly::constant(aux_vars.clone(), rat(delta));
                sum_over_range(h, t, &poly(prev), &top)
            }
            DpState::Point { f, .. } => f.clone(),
        };
        state = match &v.fixed {
            Some(value) => {
                if !resolver.ge(value, &floor)
                    || !resolver.ge(upper, value)
                    || v.upper.iter().any(|u| !resolver.ge(u, value))
                {
                    return zero();
                }
                DpState::Point { value: value.clone(), f: h.substitute(t, &poly(value)) }
            }
            None => {
                assert!(v.upper.is_empty(), "upper bounds need a prescribed value");
                DpState::Free { floor, h }
            }
        };
    }
    let total = match state {
        DpState::Start => one,
        DpState::Point { f, .. } => f,
        DpState::Free { floor, h } => {
            if !resolver.ge(upper, &floor) {
                return zero();
            }
            sum_over_range(&h, t, &poly(&floor), &poly(upper))
        }
    };
    total.drop_trailing_vars(shape.nvars(false)).expect("summation variable left in closed form")
}

/// The values `u_0 = U`, `u_j = w_j + D_j` whose relative order decides the
/// closed form, where `D_j` counts strict steps up to `j`; also `D_s`.
pub fn ordering_values(spec: &ChainSpec) -> (Vec<LinearForm>, i64) {
    let mut u = vec![spec.upper.clone()];
    let mut d = 0;
    for v in &spec.vertices {
        d += i64::from(v.strict);
        u.push(v.weight.clone().plus_const(d));
    }
    (u, d)
}

/// Relative order of the `u` values of one chain (ties broken by index) and
/// whether `min u >= 1 + D_s`, i.e. whether any assignment exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainOrdering {
    pub order: Vec<usize>,
    pub feasible: bool,
}

/// One ordering per chain of a graph.
pub type Ordering = Vec<ChainOrdering>;

pub fn chain_specs(graph: &ReducedGraph) -> Vec<ChainSpec> {
    graph.chain_paths().iter().map(|p| ChainSpec::from_path(graph, p)).collect()
}

/// The ordering realised at a point, and whether it is realised strictly
/// (no ties among the `u` values of any chain).
pub fn ordering_at(specs: &[ChainSpec], point: &[i64]) -> (Ordering, bool) {
    let mut strict = true;
    let ord = specs
        .iter()
        .map(|spec| {
            let (u, d) = ordering_values(spec);
            let vals: Vec<i64> = u.iter().map(|f| f.eval_point(point)).collect();
            let mut order: Vec<usize> = (0..vals.len()).collect();
            order.sort_by_key(|&k| (vals[k], k));
            if order.windows(2).any(|w| vals[w[0]] == vals[w[1]]) {
                strict = false;
            }
            ChainOrdering { feasible: vals[order[0]] >= 1 + d, order }
        })
        .collect();
    (ord, strict)
}

/// Inequalities `f >= 0` cutting out the region of an ordering together with
/// positivity of all weights.
pub fn ordering_polytope(graph: &ReducedGraph, ordering: &Ordering) -> Vec<LinearForm> {
    let mut out: Vec<LinearForm> = graph.edges.iter().map(|e| e.weight.clone().plus_const(-1)).collect();
    for (spec, co) in chain_specs(graph).iter().zip(ordering) {
        let (u, d) = ordering_values(spec);
        for w in co.order.windows(2) {
            let diff = &u[w[1]] - &u[w[0]];
            out.push(if w[0] < w[1] { diff } else { diff.plus_const(-1) });
        }
        let least = &u[co.order[0]];
        out.push(if co.feasible { least.clone().plus_const(-1 - d) } else { (-least).plus_const(d) });
    }
    out
}

/// Integer points `x` in `[1, bound]^g` satisfying every inequality at the
/// given `(mu, nu)`, in lexicographic order.
pub fn lattice_points(polytope: &[LinearForm], mu: &[i64], nu: &[i64], g: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![1i64; g];
    if g == 0 {
        if polytope.iter().all(|f| f.eval(mu, nu, &[]) >= 0) {
            out.push(Vec::new());
        }
        return out;
    }
    loop {
        if polytope.iter().all(|f| f.eval(mu, nu, &x) >= 0) {
            out.push(x.clone());
        }
        let mut k = g;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < bound {
                x[k] += 1;
                for y in &mut x[k + 1..] {
                    *y = 1;
                }
                break;
            }
        }
    }
}

/// Orderings of a graph realised strictly by some positive integer point of
/// degree at most `max_d`, each with the first witness `(mu, nu, x)` found.
pub fn enumerate_orderings(graph: &ReducedGraph, max_d: i64) -> Vec<(Ordering, Vec<i64>)> {
    let shape = graph.shape();
    let specs = chain_specs(graph);
    let positivity: Vec<LinearForm> = graph.edges.iter().map(|e| e.weight.clone().plus_const(-1)).collect();
    let mut found: BTreeMap<Ordering, Vec<i64>> = BTreeMap::new();
    for d in 1..=max_d {
        for mu in crate::chambers::compositions(d, shape.ell_mu) {
            for nu in crate::chambers::compositions(d, shape.ell_nu) {
                for x in lattice_points(&positivity, &mu, &nu, shape.g, d) {
                    let pt = shape.point(&mu, &nu, &x);
                    let (ord, strict) = ordering_at(&specs, &pt);
                    if strict {
                        found.entry(ord).or_insert(pt);
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Shape;

    fn shape() -> Shape {
        Shape::new(2, 1, 0)
    }

    fn spec(ws: &[LinearForm], strict: &[bool]) -> ChainSpec {
        ChainSpec {
            upper: LinearForm::mu_entry(shape(), 0),
            vertices: ws
                .iter()
                .zip(strict)
                .map(|(w, &s)| ChainVertex { weight: w.clone(), strict: s, lower: vec![], upper: vec![], fixed: None })
                .collect(),
        }
    }

    /// Brute force over all counter tuples.
    fn brute(spec: &ChainSpec, pt: &[i64]) -> u128 {
        let u = spec.upper.eval_point(pt);
        let s = spec.vertices.len();
        let mut c = vec![1i64; s];
        let mut n = 0;
        if s == 0 {
            return 1;
        }
        loop {
            let ok = (0..s).all(|j| {
                let v = &spec.vertices[j];
                let w = v.weight.eval_point(pt);
                let lo_ok = c[j] > u - w
                    && v.lower.iter().all(|l| c[j] >= l.eval_point(pt))
                    && v.upper.iter().all(|l| c[j] <= l.eval_point(pt));
                let fix_ok = v.fixed.as_ref().map_or(true, |f| f.eval_point(pt) == c[j]);
                let ord_ok = j == 0 || if v.strict { c[j] > c[j - 1] } else { c[j] >= c[j - 1] };
                lo_ok && fix_ok && ord_ok
            });
            n += u128::from(ok);
            let mut k = s;
            loop {
                if k == 0 {
                    return n;
                }
                k -= 1;
                if c[k] < u {
                    c[k] += 1;
                    for y in &mut c[k + 1..] {
                        *y = 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn direct_count_matches_brute_force() {
        let sh = shape();
        let m2 = LinearForm::mu_entry(sh, 1);
        let n1 = LinearForm::nu_entry(sh, 0);
        let mut sp = spec(&[m2.clone(), n1.clone(), m2.clone()], &[false, true, false]);
        for mu in 1..6 {
            for mu2 in 1..5 {
                let pt = vec![mu, mu2, mu + mu2];
                assert_eq!(count_assignments_direct(&sp, &pt), brute(&sp, &pt));
            }
        }
        sp.vertices[1].fixed = Some(LinearForm::constant(sh, 3));
        sp.vertices[2].lower = vec![LinearForm::constant(sh, 4)];
        for mu in 1..7 {
            let pt = vec![mu, 2, mu + 2];
            assert_eq!(count_assignments_direct(&sp, &pt), brute(&sp, &pt));
        }
    }

    #[test]
    fn closed_form_is_exact_at_its_point() {
        let sh = shape();
        let m2 = LinearForm::mu_entry(sh, 1);
        let n1 = LinearForm::nu_entry(sh, 0);
        for strict in [[false, false, false], [false, true, true], [false, false, true]] {
            let sp = spec(&[m2.clone(), n1.clone(), m2.clone()], &strict);
            for mu in 1..7 {
                for mu2 in 1..6 {
                    let pt = vec![mu, mu2, mu + mu2];
                    let f = chain_polynomial(&sp, &AtPoint(pt.clone()));
                    assert_eq!(f.eval_int(&pt), rat(brute(&sp, &pt) as i64), "{strict:?} {pt:?}");
                }
            }
        }
    }

    #[test]
    fn single_vertex_counts_min_of_weight_and_bound() {
        let sh = shape();
        let sp = spec(&[LinearForm::mu_entry(sh, 1)], &[false]);
        let f = chain_polynomial(&sp, &AtPoint(vec![5, 2, 7]));
        assert_eq!(f.to_string(), "M2");
        let f = chain_polynomial(&sp, &AtPoint(vec![2, 5, 7]));
        assert_eq!(f.to_string(), "M1");
    }

    #[test]
    fn lattice_points_enumerate_a_box() {
        let sh = Shape::new(1, 1, 2);
        let f = &(&LinearForm::mu_entry(sh, 0) - &LinearForm::x_entry(sh, 0)) - &LinearForm::x_entry(sh, 1);
        let pts = lattice_points(&[f], &[4], &[4], 2, 4);
        assert_eq!(pts, vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![2, 2], vec![3, 1]]);
    }
}
