//! Exhaustive enumeration of monotone/free factorisations.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::conditions::{ConditionError, Conditions};
use super::{Permutation, TypeError, TypeTuple};
use crate::exactmath::Rational;

/// Default bound on the number of search nodes.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("search exceeded the budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error("sigma_1 has cycle type {0:?}, expected mu")]
    Sigma1Type(Vec<usize>),
}

/// A factorisation `(sigma_1, tau_1, ..., tau_b, sigma_2)` with labelled
/// cycles. Transpositions are 0-based `(r, s)` with `r < s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sigma1: Permutation,
    pub sigma1_cycles: Vec<Vec<usize>>,
    pub taus: Vec<(usize, usize)>,
    pub sigma2: Permutation,
    pub sigma2_cycles: Vec<Vec<usize>>,
}

impl Factorization {
    /// Checks the product relation, cycle types, cycle labels, the monotone
    /// conditions and transitivity.
    pub fn is_valid(&self, ty: &TypeTuple) -> bool {
        let d = ty.degree() as usize;
        if self.sigma1.degree() != d || self.sigma2.degree() != d || self.taus.len() != ty.b() {
            return false;
        }
        let labelled = |p: &Permutation, cycles: &[Vec<usize>], parts: &[i64]| {
            cycles.len() == parts.len()
                && cycles.iter().zip(parts).all(|(c, &m)| c.len() as i64 == m)
                && Permutation::from_cycles(d, cycles).as_ref() == Some(p)
        };
        if !labelled(&self.sigma1, &self.sigma1_cycles, &ty.mu) || !labelled(&self.sigma2, &self.sigma2_cycles, &ty.nu) {
            return false;
        }
        let mut prod = self.sigma1.clone();
        for (k, &(r, s)) in self.taus.iter().enumerate() {
            if r >= s || s >= d || !step_allowed(ty.p, ty.q, k, s, k.checked_sub(1).map(|j| self.taus[j].1)) {
                return false;
            }
            prod = Permutation::transposition(d, r, s).compose(&prod);
        }
        if prod.compose(&self.sigma2) != Permutation::identity(d) {
            return false;
        }
        let mut uf = UnionFind::new(d);
        for c in &self.sigma1_cycles {
            for w in c.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        for &(r, s) in &self.taus {
            uf.union(r, s);
        }
        uf.components == 1
    }
}

/// Monotonicity of step `k` (0-based) with larger element `s`: weak for
/// `1 <= k < p`, strict for `p <= k < p + q`, free otherwise.
pub(crate) fn step_allowed(p: usize, q: usize, k: usize, s: usize, prev: Option<usize>) -> bool {
    match prev {
        Some(ps) if k >= 1 && k < p => s >= ps,
        Some(ps) if k >= 1 && k >= p && k < p + q => s > ps,
        _ => true,
    }
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }
}

struct Budget {
    limit: u64,
    used: AtomicU64,
    exceeded: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), exceeded: AtomicBool::new(false) }
    }

    fn charge(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.limit {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

/// Depth-first search over transposition sequences for a fixed `sigma_1`.
struct Search<'a> {
    ty: &'a TypeTuple,
    d: usize,
    b: usize,
    ell_nu: usize,
    nu_type: Vec<usize>,
    budget: &'a Budget,
    pending: u64,
    /// Current product, as images and inverse images.
    sigma: Vec<usize>,
    inverse: Vec<usize>,
    cycles: usize,
    taus: Vec<(usize, usize)>,
}

const FLUSH: u64 = 1 << 12;

impl<'a> Search<'a> {
    fn new(ty: &'a TypeTuple, sigma1: &Permutation, budget: &'a Budget) -> Self {
        let mut nu_type: Vec<usize> = ty.nu.iter().map(|&x| x as usize).collect();
        nu_type.sort_unstable_by(|a, b| b.cmp(a));
        Search {
            ty,
            d: sigma1.degree(),
            b: ty.b(),
            ell_nu: ty.nu.len(),
            nu_type,
            budget,
            pending: 0,
            sigma: sigma1.images().to_vec(),
            inverse: sigma1.inverse().images().to_vec(),
            cycles: sigma1.cycles().len(),
            taus: Vec::with_capacity(ty.b()),
        }
    }

    fn same_cycle(&self, r: usize, s: usize) -> bool {
        let mut x = self.sigma[r];
        while x != r {
            if x == s {
                return true;
            }
            x = self.sigma[x];
        }
        false
    }

    /// Left-multiplies the current product by `(r s)`; an involution.
    fn apply(&mut self, r: usize, s: usize) {
        let (xr, xs) = (self.inverse[r], self.inverse[s]);
        self.sigma[xr] = s;
        self.sigma[xs] = r;
        self.inverse[r] = xs;
        self.inverse[s] = xr;
    }

    fn run(&mut self, uf: &UnionFind, leaf: &mut dyn FnMut(&[(usize, usize)], &Permutation)) -> bool {
        let k = self.taus.len();
        let remaining = self.b - k;
        if self.cycles.abs_diff(self.ell_nu) > remaining || uf.components - 1 > remaining {
            return true;
        }
        if remaining == 0 {
            let p = Permutation { images: self.sigma.clone() };
            if p.cycle_type() == self.nu_type {
                leaf(&self.taus, &p);
            }
            return true;
        }
        let prev = self.taus.last().map(|t| t.1);
        for s in 1..self.d {
            if !step_allowed(self.ty.p, self.ty.q, k, s, prev) {
                continue;
            }
            for r in 0..s {
                self.pending += 1;
                if self.pending >= FLUSH {
                    if !self.budget.charge(self.pending) {
                        return false;
                    }
                    self.pending = 0;
                }
                let cut = self.same_cycle(r, s);
                self.apply(r, s);
                self.cycles = if cut { self.cycles + 1 } else { self.cycles - 1 };
                self.taus.push((r, s));
                let mut next = uf.clone();
                next.union(r, s);
                let ok = self.run(&next, leaf);
                self.taus.pop();
                self.cycles = if cut { self.cycles - 1 } else { self.cycles + 1 };
                self.apply(r, s);
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn initial_union_find(sigma1: &Permutation) -> UnionFind {
    let mut uf = UnionFind::new(sigma1.degree());
    for c in sigma1.cycles() {
        for w in c.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    uf
}

fn check_sigma1(ty: &TypeTuple, sigma1: &Permutation) -> Result<(), OracleError> {
    let mut want: Vec<usize> = ty.mu.iter().map(|&x| x as usize).collect();
    want.sort_unstable_by(|a, b| b.cmp(a));
    if sigma1.degree() != ty.degree() as usize || sigma1.cycle_type() != want {
        return Err(OracleError::Sigma1Type(sigma1.cycle_type()));
    }
    Ok(())
}

/// Runs the search split over the first transposition in parallel, summing
/// the values returned by `leaf_value`.
fn parallel_count<F>(ty: &TypeTuple, sigma1: &Permutation, budget: &Budget, leaf_value: F) -> u128
where
    F: Fn(&[(usize, usize)], &Permutation) -> u128 + Sync,
{
    let d = sigma1.degree();
    let count_from = |first: Option<(usize, usize)>| -> u128 {
        let mut search = Search::new(ty, sigma1, budget);
        let mut uf = initial_union_find(sigma1);
        let mut total = 0u128;
        let mut leaf = |taus: &[(usize, usize)], p: &Permutation| total += leaf_value(taus, p);
        if let Some((r, s)) = first {
            let cut = search.same_cycle(r, s);
            search.apply(r, s);
            search.cycles = if cut { search.cycles + 1 } else { search.cycles - 1 };
            search.taus.push((r, s));
            uf.union(r, s);
        }
        search.run(&uf, &mut leaf);
        budget.charge(search.pending);
        total
    };
    if ty.b() == 0 {
        return count_from(None);
    }
    let firsts: Vec<(usize, usize)> = (1..d).flat_map(|s| (0..s).map(move |r| (r, s))).collect();
    firsts.par_iter().map(|&t| count_from(Some(t))).sum()
}

/// Number of ways to label the cycles of `sigma_2` compatibly with `nu`.
fn labelling_count(nu: &[i64]) -> u128 {
    let mut counts = std::collections::BTreeMap::new();
    for &x in nu {
        *counts.entry(x).or_insert(0u128) += 1;
    }
    counts.values().map(|&m| (1..=m).product::<u128>()).product()
}

/// All labellings of the cycles of `sigma2` by the parts of `nu`.
fn labellings(sigma2: &Permutation, nu: &[i64]) -> Vec<Vec<Vec<usize>>> {
    let cycles = sigma2.cycles();
    let mut out = Vec::new();
    let mut used = vec![false; cycles.len()];
    let mut cur = Vec::with_capacity(nu.len());
    fn rec(
        nu: &[i64],
        cycles: &[Vec<usize>],
        used: &mut [bool],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let i = cur.len();
        if i == nu.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..cycles.len() {
            if !used[k] && cycles[k].len() as i64 == nu[i] {
                used[k] = true;
                cur.push(cycles[k].clone());
                rec(nu, cycles, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(nu, &cycles, &mut used, &mut cur, &mut out);
    out
}

fn finish(budget: &Budget, value: u128) -> Result<u128, OracleError> {
    if budget.exceeded.load(Ordering::Relaxed) {
        Err(OracleError::BudgetExceeded(budget.limit))
    } else {
        Ok(value)
    }
}

/// Number of factorisations with a fixed `sigma_1` and labelled `sigma_2`.
pub fn count_for_sigma1(ty: &TypeTuple, sigma1: &Permutation, budget: u64) -> Result<u128, OracleError> {
    ty.validate()?;
    check_sigma1(ty, sigma1)?;
    let budget = Budget::new(budget);
    let labels = labelling_count(&ty.nu);
    let total = parallel_count(ty, sigma1, &budget, |_, _| labels);
    finish(&budget, total)
}

/// `M`: factorisations with the canonical `sigma_1`, labelled `sigma_2` and
/// the given start and end conditions.
pub fn m_oracle(ty: &TypeTuple, conditions: &Conditions, budget: u64) -> Result<u128, OracleError> {
    ty.validate()?;
    conditions.check_against(ty)?;
    let (sigma1, _) = ty.canonical_sigma1();
    let budget = Budget::new(budget);
    let total = if conditions.end.is_empty() {
        let labels = labelling_count(&ty.nu);
        parallel_count(ty, &sigma1, &budget, |taus, _| {
            if conditions.holds(ty, taus, &[]) {
                labels
            } else {
                0
            }
        })
    } else {
        parallel_count(ty, &sigma1, &budget, |taus, prod| {
            labellings(&prod.inverse(), &ty.nu)
                .iter()
                .filter(|cycles| conditions.holds(ty, taus, cycles))
                .count() as u128
        })
    };
    finish(&budget, total)
}

/// All permutations of `0..d` with the given multiset of cycle lengths.
pub(crate) fn permutations_of_type(d: usize, parts: &[i64]) -> Vec<Permutation> {
    let mut want: Vec<usize> = parts.iter().map(|&x| x as usize).collect();
    want.sort_unstable_by(|a, b| b.cmp(a));
    crate::graphs::all_permutations(d)
        .into_iter()
        .map(|images| Permutation { images })
        .filter(|p| p.cycle_type() == want)
        .collect()
}

/// `H = |F| / d!`, with `F` running over all `sigma_1` with labelled cycles.
pub fn h_oracle(ty: &TypeTuple, budget: u64) -> Result<Rational, OracleError> {
    ty.validate()?;
    let d = ty.degree() as usize;
    let labels1 = labelling_count(&ty.mu);
    let mut total = 0u128;
    let mut left = budget;
    for sigma1 in permutations_of_type(d, &ty.mu) {
        let b = Budget::new(left);
        let labels2 = labelling_count(&ty.nu);
        total += parallel_count(ty, &sigma1, &b, |_, _| labels2) * labels1;
        let used = b.used.load(Ordering::Relaxed);
        if b.exceeded.load(Ordering::Relaxed) || used > left {
            return Err(OracleError::BudgetExceeded(budget));
        }
        left -= used;
    }
    let factorial: u128 = (1..=d as u128).product();
    Ok(Rational::new(BigInt::from(total), BigInt::from(factorial)))
}

/// Counts for every `sigma_1` of cycle type `mu`, in lexicographic order of
/// image tables.
pub fn sigma1_independence_check(ty: &TypeTuple, budget: u64) -> Result<Vec<(Permutation, u128)>, OracleError> {
    ty.validate()?;
    permutations_of_type(ty.degree() as usize, &ty.mu)
        .into_iter()
        .map(|s| count_for_sigma1(ty, &s, budget).map(|c| (s, c)))
        .collect()
}

/// Visits every factorisation with the given `sigma_1` (canonical if `None`)
/// and every labelling of the cycles of `sigma_2`, sequentially.
pub fn for_each_factorization(
    ty: &TypeTuple,
    sigma1: Option<&Permutation>,
    budget: u64,
    mut visit: impl FnMut(&Factorization),
) -> Result<(), OracleError> {
    ty.validate()?;
    let (sigma1, sigma1_cycles) = match sigma1 {
        Some(s) => {
            check_sigma1(ty, s)?;
            let cycles = labellings(s, &ty.mu).into_iter().next().unwrap_or_default();
            (s.clone(), cycles)
        }
        None => ty.canonical_sigma1(),
    };
    let b = Budget::new(budget);
    let mut search = Search::new(ty, &sigma1, &b);
    let mut leaf = |taus: &[(usize, usize)], prod: &Permutation| {
        let sigma2 = prod.inverse();
        for cycles in labellings(&sigma2, &ty.nu) {
            visit(&Factorization {
                sigma1: sigma1.clone(),
                sigma1_cycles: sigma1_cycles.clone(),
                taus: taus.to_vec(),
                sigma2: sigma2.clone(),
                sigma2_cycles: cycles,
            });
        }
    };
    search.run(&initial_union_find(&sigma1), &mut leaf);
    b.charge(search.pending);
    finish(&b, 0).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn ty(g: usize, mu: &[i64], nu: &[i64], p: usize, q: usize, r: usize) -> TypeTuple {
        TypeTuple::new(g, mu.to_vec(), nu.to_vec(), p, q, r).unwrap()
    }

    #[test]
    fn single_cut() {
        let t = ty(0, &[2], &[1, 1], 0, 0, 1);
        assert_eq!(m_oracle(&t, &Conditions::default(), DEFAULT_BUDGET).unwrap(), 2);
        assert_eq!(h_oracle(&t, DEFAULT_BUDGET).unwrap(), rat(1));
    }

    #[test]
    fn single_join() {
        // (1)(2) -> (2): one transposition, sigma_1 is forced.
        let t = ty(0, &[1, 1], &[2], 0, 0, 1);
        assert_eq!(m_oracle(&t, &Conditions::default(), DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(h_oracle(&t, DEFAULT_BUDGET).unwrap(), rat(1));
        let strict = ty(0, &[1, 1], &[2], 0, 1, 0);
        assert_eq!(m_oracle(&strict, &Conditions::default(), DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn degree_one_has_a_unique_empty_factorisation() {
        let t = ty(0, &[1], &[1], 0, 0, 0);
        assert_eq!(m_oracle(&t, &Conditions::default(), DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(h_oracle(&t, DEFAULT_BUDGET).unwrap(), rat(1));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let t = ty(0, &[2, 2], &[2, 1, 1], 0, 0, 3);
        assert_eq!(
            m_oracle(&t, &Conditions::default(), 10),
            Err(OracleError::BudgetExceeded(10))
        );
    }

    #[test]
    fn visited_factorisations_are_valid() {
        let t = ty(1, &[2, 2], &[4], 3, 0, 0);
        let mut n = 0u128;
        for_each_factorization(&t, None, DEFAULT_BUDGET, |f| {
            assert!(f.is_valid(&t));
            n += 1;
        })
        .unwrap();
        assert_eq!(n, m_oracle(&t, &Conditions::default(), DEFAULT_BUDGET).unwrap());
    }
}
