//! Resonance hyperplanes `sum_I mu - sum_J nu`, chambers as sign vectors and
//! integer sample points on the degree slice `sum mu = sum nu`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::{LinearForm, Shape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChamberError {
    #[error("point lies on the wall {0}")]
    OnWall(ResonanceForm),
    #[error("form {0} vanishes on the chamber")]
    ZeroOnChamber(String),
    #[error("partitions have different sizes ({0} vs {1})")]
    DegreeMismatch(i64, i64),
    #[error("partition entries must be positive")]
    NonPositive,
    #[error("malformed chamber sample {0:?}: expected e.g. 3,1:2,2")]
    Parse(String),
    #[error("expected lengths ({0},{1}) but the sample has ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Positive,
}

/// The form `sum_{i in I} M_i - sum_{j in J} N_j` (0-based index sets),
/// stored with `0 in I`; the complement `(I^c, J^c)` is the same hyperplane
/// with the opposite sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResonanceForm {
    pub ell_mu: usize,
    pub ell_nu: usize,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
}

fn complement(set: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|k| !set.contains(k)).collect()
}

impl ResonanceForm {
    /// Canonical representative of the hyperplane through `(I, J)` and the
    /// sign relating the given support to it.
    pub fn canonical(ell_mu: usize, ell_nu: usize, i_set: &[usize], j_set: &[usize]) -> (Self, i64) {
        let mut i: Vec<usize> = i_set.to_vec();
        let mut j: Vec<usize> = j_set.to_vec();
        i.sort_unstable();
        j.sort_unstable();
        if i.first() == Some(&0) {
            (ResonanceForm { ell_mu, ell_nu, i_set: i, j_set: j }, 1)
        } else {
            let form = ResonanceForm {
                ell_mu,
                ell_nu,
                i_set: complement(&i, ell_mu),
                j_set: complement(&j, ell_nu),
            };
            (form, -1)
        }
    }

    /// Both supports `(I, J)` and `(I^c, J^c)`.
    pub fn supports(&self) -> [(Vec<usize>, Vec<usize>); 2] {
        [
            (self.i_set.clone(), self.j_set.clone()),
            (complement(&self.i_set, self.ell_mu), complement(&self.j_set, self.ell_nu)),
        ]
    }

    /// True when the form changes sign on the positive part of the slice.
    pub fn is_relevant(&self) -> bool {
        let proper = |s: &[usize], n: usize| !s.is_empty() && s.len() < n;
        proper(&self.i_set, self.ell_mu) && proper(&self.j_set, self.ell_nu)
    }

    pub fn eval(&self, mu: &[i64], nu: &[i64]) -> i64 {
        self.i_set.iter().map(|&i| mu[i]).sum::<i64>() - self.j_set.iter().map(|&j| nu[j]).sum::<i64>()
    }

    pub fn linear_form(&self, g: usize) -> LinearForm {
        LinearForm::resonance(Shape::new(self.ell_mu, self.ell_nu, g), &self.i_set, &self.j_set)
    }
}

impl fmt::Display for ResonanceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.linear_form(0))
    }
}

/// All canonical forms other than the empty and the full-support one.
pub fn enumerate_forms(ell_mu: usize, ell_nu: usize) -> Vec<ResonanceForm> {
    let mut out = Vec::new();
    // Canonical forms contain index 0 of mu; iterate over the remaining bits.
    for imask in 0..(1u32 << (ell_mu - 1)) {
        let i_set: Vec<usize> =
            std::iter::once(0).chain((1..ell_mu).filter(|k| imask >> (k - 1) & 1 == 1)).collect();
        for jmask in 0..(1u32 << ell_nu) {
            let j_set: Vec<usize> = (0..ell_nu).filter(|k| jmask >> k & 1 == 1).collect();
            if i_set.len() == ell_mu && j_set.len() == ell_nu {
                continue;
            }
            out.push(ResonanceForm { ell_mu, ell_nu, i_set: i_set.clone(), j_set });
        }
    }
    out
}

/// Canonical forms that actually separate chambers.
pub fn relevant_forms(ell_mu: usize, ell_nu: usize) -> Vec<ResonanceForm> {
    enumerate_forms(ell_mu, ell_nu).into_iter().filter(ResonanceForm::is_relevant).collect()
}

/// A chamber, represented by an integer sample point off every wall.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chamber {
    pub ell_mu: usize,
    pub ell_nu: usize,
    pub sample_mu: Vec<i64>,
    pub sample_nu: Vec<i64>,
}

impl Chamber {
    pub fn shape(&self, g: usize) -> Shape {
        Shape::new(self.ell_mu, self.ell_nu, g)
    }

    pub fn degree(&self) -> i64 {
        self.sample_mu.iter().sum()
    }

    /// Signs of all relevant canonical forms at the sample, which identify
    /// the chamber.
    pub fn sign_vector(&self) -> Vec<Sign> {
        relevant_forms(self.ell_mu, self.ell_nu)
            .iter()
            .map(|f| if f.eval(&self.sample_mu, &self.sample_nu) > 0 { Sign::Positive } else { Sign::Negative })
            .collect()
    }

    pub fn same_chamber(&self, other: &Chamber) -> bool {
        self.ell_mu == other.ell_mu && self.ell_nu == other.ell_nu && self.sign_vector() == other.sign_vector()
    }

    /// Concatenated sample point in variable order `M..., N...`.
    pub fn point(&self) -> Vec<i64> {
        self.sample_mu.iter().chain(&self.sample_nu).copied().collect()
    }

    /// Scales the sample; scaled points stay in the same chamber.
    pub fn scaled(&self, k: i64) -> Chamber {
        Chamber {
            ell_mu: self.ell_mu,
            ell_nu: self.ell_nu,
            sample_mu: self.sample_mu.iter().map(|x| x * k).collect(),
            sample_nu: self.sample_nu.iter().map(|x| x * k).collect(),
        }
    }

    pub fn contains(&self, mu: &[i64], nu: &[i64]) -> bool {
        match classify_point(mu, nu) {
            Ok(c) => c.same_chamber(self),
            Err(_) => false,
        }
    }

    /// Parses `mu-list:nu-list`, e.g. `3,1:2,2`.
    pub fn parse_sample(s: &str) -> Result<Chamber, ChamberError> {
        let (a, b) = s.split_once(':').ok_or_else(|| ChamberError::Parse(s.to_string()))?;
        let parse = |t: &str| -> Result<Vec<i64>, ChamberError> {
            t.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| ChamberError::Parse(s.to_string())))
                .collect()
        };
        classify_point(&parse(a)?, &parse(b)?)
    }

    /// Sign of a linear form without cycle variables at the sample point.
    pub fn sign_of(&self, form: &LinearForm) -> Result<Sign, ChamberError> {
        let reduced = form.reduce_on_slice();
        if reduced.is_zero() {
            return Err(ChamberError::ZeroOnChamber(form.to_string()));
        }
        let v = form.eval(&self.sample_mu, &self.sample_nu, &vec![0; form.x.len()]);
        match v.signum() {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            _ => Err(ChamberError::ZeroOnChamber(form.to_string())),
        }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}:{}", join(&self.sample_mu), join(&self.sample_nu))
    }
}

/// The chamber containing `(mu, nu)`, with the point itself as sample.
pub fn classify_point(mu: &[i64], nu: &[i64]) -> Result<Chamber, ChamberError> {
    if mu.is_empty() || nu.is_empty() || mu.iter().chain(nu).any(|&x| x <= 0) {
        return Err(ChamberError::NonPositive);
    }
    let (dm, dn) = (mu.iter().sum::<i64>(), nu.iter().sum::<i64>());
    if dm != dn {
        return Err(ChamberError::DegreeMismatch(dm, dn));
    }
    if let Some(f) = relevant_forms(mu.len(), nu.len()).into_iter().find(|f| f.eval(mu, nu) == 0) {
        return Err(ChamberError::OnWall(f));
    }
    Ok(Chamber { ell_mu: mu.len(), ell_nu: nu.len(), sample_mu: mu.to_vec(), sample_nu: nu.to_vec() })
}

/// Compositions of `d` into `k` positive parts in lexicographic order.
pub fn compositions(d: i64, k: usize) -> Vec<Vec<i64>> {
    fn rec(left: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 1..=left - (k as i64 - 1) {
            cur.push(a);
            rec(left - a, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && d >= k as i64 {
        rec(d, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All chambers realised by points of degree `<= max_d`, each represented by
/// its first point in order of degree, then lexicographically.
pub fn enumerate_chambers(ell_mu: usize, ell_nu: usize, max_d: i64) -> Vec<Chamber> {
    let mut seen: BTreeMap<Vec<Sign>, Chamber> = BTreeMap::new();
    let mut order = Vec::new();
    for d in 1..=max_d {
        for mu in compositions(d, ell_mu) {
            for nu in compositions(d, ell_nu) {
                if let Ok(c) = classify_point(&mu, &nu) {
                    let key = c.sign_vector();
                    if !seen.contains_key(&key) {
                        order.push(key.clone());
                        seen.insert(key, c);
                    }
                }
            }
        }
    }
    order.into_iter().map(|k| seen.remove(&k).unwrap()).collect()
}

/// The canonical sample of the chamber containing `chamber`'s sample.
pub fn canonical_sample(chamber: &Chamber, max_d: i64) -> Chamber {
    enumerate_chambers(chamber.ell_mu, chamber.ell_nu, max_d)
        .into_iter()
        .find(|c| c.same_chamber(chamber))
        .unwrap_or_else(|| chamber.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub form: ResonanceForm,
    /// Chamber where the canonical form is positive.
    pub side_positive: Chamber,
    pub side_negative: Chamber,
}

/// Walls between chambers found up to degree `max_d`: pairs of chambers whose
/// sign vectors differ in exactly one form.
pub fn enumerate_walls(ell_mu: usize, ell_nu: usize, max_d: i64) -> Vec<Wall> {
    let forms = relevant_forms(ell_mu, ell_nu);
    let chambers = enumerate_chambers(ell_mu, ell_nu, max_d);
    let mut out = Vec::new();
    for (a, ca) in chambers.iter().enumerate() {
        for cb in &chambers[a + 1..] {
            let (sa, sb) = (ca.sign_vector(), cb.sign_vector());
            let diff: Vec<usize> = (0..forms.len()).filter(|&k| sa[k] != sb[k]).collect();
            if let [k] = diff[..] {
                let (pos, neg) = if sa[k] == Sign::Positive { (ca, cb) } else { (cb, ca) };
                out.push(Wall { form: forms[k].clone(), side_positive: pos.clone(), side_negative: neg.clone() });
            }
        }
    }
    out
}

/// Looks up the wall separating two chambers, if they are adjacent.
pub fn wall_between(c1: &Chamber, c2: &Chamber) -> Option<Wall> {
    let forms = relevant_forms(c1.ell_mu, c1.ell_nu);
    let (s1, s2) = (c1.sign_vector(), c2.sign_vector());
    let diff: Vec<usize> = (0..forms.len()).filter(|&k| s1[k] != s2[k]).collect();
    match diff[..] {
        [k] => {
            let (pos, neg) = if s1[k] == Sign::Positive { (c1, c2) } else { (c2, c1) };
            Some(Wall { form: forms[k].clone(), side_positive: pos.clone(), side_negative: neg.clone() })
        }
        _ => None,
    }
}
