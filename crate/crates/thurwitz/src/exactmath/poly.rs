use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by exponent vectors in lexicographic order, zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("invalid json: {0}")]
    Json(String),
    #[error("exponent vector of length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    #[error("invalid integer {0:?}")]
    Integer(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.nvars();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.nvars()];
        e[i] = 1;
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, o: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars,
            "polynomials over different variables: {:?} vs {:?}",
            self.vars,
            o.vars
        );
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, pt: &[Rational]) -> Rational {
        assert_eq!(pt.len(), self.nvars());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc += m;
        }
        acc
    }

    /// Evaluates at an integer point.
    pub fn eval_int(&self, pt: &[i64]) -> Rational {
        assert_eq!(pt.len(), self.nvars());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (&x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(BigInt::from(x), k as usize);
                }
            }
            acc += c * Rational::from_integer(m);
        }
        acc
    }

    /// Coefficients with respect to `var`: `self = sum_k c_k * var^k` where
    /// no `c_k` contains `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.vars.clone()); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Substitutes `var := value`.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Self {
        self.check_vars(value);
        let coeffs = self.coefficients_in(var);
        let mut acc = Self::zero(self.vars.clone());
        let mut power = Self::one(self.vars.clone());
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = &power * value;
            }
            if !c.is_zero() {
                acc = &acc + &(c * &power);
            }
        }
        acc
    }

    /// Substitutes integer values for some variables (`None` keeps a variable).
    pub fn partial_eval(&self, values: &[Option<i64>]) -> Self {
        assert_eq!(values.len(), self.nvars());
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e2 = e.clone();
            for (idx, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if e[idx] > 0 {
                        coeff *= Rational::from_integer(num_traits::pow(BigInt::from(*v), e[idx] as usize));
                    }
                    e2[idx] = 0;
                }
            }
            out.add_term(e2, coeff);
        }
        out
    }

    /// Exact division by a variable; `None` if some term lacks it.
    pub fn div_by_var(&self, var: usize) -> Option<Self> {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[var] == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.clone());
        }
        Some(out)
    }

    /// Moves the polynomial to a new variable list; `map[i]` is the new index
    /// of old variable `i`, or `None` if the variable must not occur.
    pub fn remap(&self, vars: Arc<[String]>, map: &[Option<usize>]) -> Option<Self> {
        assert_eq!(map.len(), self.nvars());
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; out.nvars()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                e2[map[i]?] += k;
            }
            out.add_term(e2, c.clone());
        }
        Some(out)
    }

    /// Drops trailing variables that do not occur.
    pub fn drop_trailing_vars(&self, keep: usize) -> Option<Self> {
        let vars: Arc<[String]> = self.vars[..keep].to_vec().into();
        let map: Vec<Option<usize>> = (0..self.nvars()).map(|i| (i < keep).then_some(i)).collect();
        self.remap(vars, &map)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, PolyParseError> {
        let vars: Arc<[String]> = j.vars.clone().into();
        let mut p = Self::zero(vars);
        for t in &j.terms {
            if t.exp.len() != p.nvars() {
                return Err(PolyParseError::ExponentLength { got: t.exp.len(), expected: p.nvars() });
            }
            let num: BigInt = t.num.parse().map_err(|_| PolyParseError::Integer(t.num.clone()))?;
            let den: BigInt = t.den.parse().map_err(|_| PolyParseError::Integer(t.den.clone()))?;
            if den.is_zero() {
                return Err(PolyParseError::ZeroDenominator);
            }
            p.add_term(t.exp.clone(), Rational::new(num, den));
        }
        Ok(p)
    }

    pub fn parse_json(s: &str) -> Result<Self, PolyParseError> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| PolyParseError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.check_vars(o);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Highest total degree first, e.g. `M1^2*M2 + M1*M2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
