//! Permutations, Hurwitz types and the brute-force factorisation oracle.

mod conditions;
mod construction;
mod oracle;

pub use conditions::{parse_end_conditions, parse_start_conditions, ConditionError, Conditions, EndCondition, StartCondition};
pub use construction::build_monodromy_graph;
pub use oracle::{
    count_for_sigma1, for_each_factorization, m_oracle, h_oracle, sigma1_independence_check, Factorization,
    OracleError, DEFAULT_BUDGET,
};

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty partition")]
    EmptyPartition,
    #[error("invalid partition entry {0:?}")]
    PartitionEntry(String),
    #[error("malformed cycle string {0:?}")]
    Cycle(String),
    #[error("element {0} out of range 1..={1}")]
    Element(usize, usize),
    #[error("element {0} repeated")]
    Repeated(usize),
}

/// Parses a comma-separated list of positive integers, e.g. `3,1`.
pub fn parse_partition(s: &str) -> Result<Vec<i64>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::EmptyPartition);
    }
    s.split(',')
        .map(|t| match t.trim().parse::<i64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(ParseError::PartitionEntry(t.to_string())),
        })
        .collect()
}

/// A permutation of `0..d`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(d);
        p.images.swap(a, b);
        p
    }

    /// Product of disjoint cycles given as 0-based element lists.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= d || std::mem::replace(&mut seen[x], true) {
                    return None;
                }
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Some(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// Cycles including fixed points, each starting at its least element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Parses cycle notation with 1-based elements, e.g. `(1 2)(3 4)`,
    /// `(12)(34)` or `()`. Elements without separators are single digits.
    /// Returns the permutation and its cycles in written order.
    pub fn parse_cycles(s: &str, d: usize) -> Result<(Permutation, Vec<Vec<usize>>), ParseError> {
        let err = || ParseError::Cycle(s.to_string());
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(err)?;
            let close = inner.find(')').ok_or_else(err)?;
            let body = inner[..close].trim();
            rest = inner[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = if body.contains([' ', ',']) {
                body.split([' ', ',']).filter(|t| !t.is_empty()).collect()
            } else {
                body.split("").filter(|t| !t.is_empty()).collect()
            };
            let mut c = Vec::new();
            for t in tokens {
                let v: usize = t.parse().map_err(|_| err())?;
                if v == 0 || v > d {
                    return Err(ParseError::Element(v, d));
                }
                c.push(v - 1);
            }
            cycles.push(c);
        }
        let mut seen = vec![false; d];
        for &x in cycles.iter().flatten() {
            if std::mem::replace(&mut seen[x], true) {
                return Err(ParseError::Repeated(x + 1));
            }
        }
        let p = Permutation::from_cycles(d, &cycles).ok_or_else(err)?;
        Ok((p, cycles))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based elements, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("partition entries must be positive")]
    NonPositive,
    #[error("|mu| = {0} differs from |nu| = {1}")]
    DegreeMismatch(i64, i64),
    #[error("p + q + r = {b} does not give a non-negative integer genus for these lengths")]
    Genus { b: usize },
    #[error("genus {g} requires p + q + r = {want}, got {got}")]
    Branching { g: usize, want: usize, got: usize },
}

/// A type `(g, mu, nu, p, q, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeTuple {
    pub g: usize,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl TypeTuple {
    pub fn new(g: usize, mu: Vec<i64>, nu: Vec<i64>, p: usize, q: usize, r: usize) -> Result<Self, TypeError> {
        let t = TypeTuple { g, mu, nu, p, q, r };
        t.validate()?;
        Ok(t)
    }

    /// The type whose genus is determined by Riemann-Hurwitz.
    pub fn with_genus_from_branching(mu: Vec<i64>, nu: Vec<i64>, p: usize, q: usize, r: usize) -> Result<Self, TypeError> {
        let b = p + q + r;
        let lengths = mu.len() + nu.len();
        if b + 2 < lengths || (b + 2 - lengths) % 2 != 0 {
            return Err(TypeError::Genus { b });
        }
        Self::new((b + 2 - lengths) / 2, mu, nu, p, q, r)
    }

    pub fn validate(&self) -> Result<(), TypeError> {
        if self.mu.is_empty() || self.nu.is_empty() || self.mu.iter().chain(&self.nu).any(|&x| x <= 0) {
            return Err(TypeError::NonPositive);
        }
        if self.degree() != self.nu.iter().sum::<i64>() {
            return Err(TypeError::DegreeMismatch(self.degree(), self.nu.iter().sum()));
        }
        let want = 2 * self.g + self.mu.len() + self.nu.len() - 2;
        if self.b() != want {
            return Err(TypeError::Branching { g: self.g, want, got: self.b() });
        }
        Ok(())
    }

    pub fn degree(&self) -> i64 {
        self.mu.iter().sum()
    }

    pub fn b(&self) -> usize {
        self.p + self.q + self.r
    }

    /// 0-based offset of the first element of block `l` of the canonical
    /// `sigma_1`.
    pub fn offset(&self, l: usize) -> usize {
        self.mu[..l].iter().sum::<i64>() as usize
    }

    /// Block containing 0-based element `x` of the canonical `sigma_1`.
    pub fn block_of(&self, x: usize) -> usize {
        let mut acc = 0;
        for (l, &m) in self.mu.iter().enumerate() {
            acc += m as usize;
            if x < acc {
                return l;
            }
        }
        self.mu.len()
    }

    /// `(1 .. mu_1)(mu_1+1 .. mu_1+mu_2)...`, cycle `l` being block `l`.
    pub fn canonical_sigma1(&self) -> (Permutation, Vec<Vec<usize>>) {
        let cycles: Vec<Vec<usize>> = (0..self.mu.len())
            .map(|l| (self.offset(l)..self.offset(l) + self.mu[l] as usize).collect())
            .collect();
        (Permutation::from_cycles(self.degree() as usize, &cycles).unwrap(), cycles)
    }
}

impl fmt::Display for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({},({}),({}),{},{},{})", self.g, join(&self.mu), join(&self.nu), self.p, self.q, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_strings_round_trip() {
        let (p, cycles) = Permutation::parse_cycles("(1243)", 4).unwrap();
        assert_eq!(cycles, vec![vec![0, 1, 3, 2]]);
        assert_eq!(p.to_string(), "(1 2 4 3)");
        let (q, _) = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(Permutation::parse_cycles(&q.to_string(), 4).unwrap().0, q);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles("(1 1)", 2).is_err());
        assert!(Permutation::parse_cycles("(1 5)", 4).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::transposition(3, 1, 2);
        // (12)(23) sends 3 -> 2 -> 1.
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    #[test]
    fn genus_from_branching() {
        let t = TypeTuple::with_genus_from_branching(vec![2, 2], vec![4], 3, 0, 0).unwrap();
        assert_eq!(t.g, 1);
        assert!(TypeTuple::with_genus_from_branching(vec![2, 2], vec![4], 2, 0, 0).is_err());
        assert!(TypeTuple::new(0, vec![2], vec![1, 2], 0, 0, 1).is_err());
    }
}
