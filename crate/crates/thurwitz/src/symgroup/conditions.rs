//! Start and end conditions on factorisations.
//!
//! Written form, 1-based: start conditions `1,l`, `2,l,c`, `3,l` and end
//! conditions `1,l,i`, `2,l,c,i`, `3,i`, `4,l,c,i`, separated by `;`, each optionally
//! parenthesised. Internally labels are 0-based; counters keep their value.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::TypeTuple;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConditionError {
    #[error("malformed condition {0:?}")]
    Syntax(String),
    #[error("condition {0} refers to a label outside the type")]
    Range(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StartCondition {
    /// `(1,l)`: in-end `l` is absorbed by the chain of a later block.
    Absorbed { l: usize },
    /// `(2,l,c)`: in-end `l` is first touched at a monotone step whose larger
    /// element is at least `offset_l + c` (1-based).
    AtLeast { l: usize, c: i64 },
    /// `(3,l)`: in-end `l` is first touched after the monotone steps.
    Late { l: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndCondition {
    /// `(1,l,i)`: out-end `i` is last touched at a monotone step in block `l`.
    Block { l: usize, i: usize },
    /// `(2,l,c,i)`: out-end `i` is last touched at a monotone step with
    /// larger element `offset_l + c` (1-based).
    Counter { l: usize, c: i64, i: usize },
    /// `(3,i)`: out-end `i` is last touched after the monotone steps.
    Late { i: usize },
    /// `(4,l,c,i)`: as `(2,l,c,i)` with `c >= 1`, and the cycle of out-end
    /// `i` contains that larger element, i.e. the out-end continues the chain
    /// of block `l`.
    Carries { l: usize, c: i64, i: usize },
}

impl StartCondition {
    pub fn in_end(&self) -> usize {
        match *self {
            StartCondition::Absorbed { l } | StartCondition::AtLeast { l, .. } | StartCondition::Late { l } => l,
        }
    }
}

impl EndCondition {
    pub fn out_end(&self) -> usize {
        match *self {
            EndCondition::Block { i, .. }
            | EndCondition::Counter { i, .. }
            | EndCondition::Late { i }
            | EndCondition::Carries { i, .. } => i,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conditions {
    pub start: Vec<StartCondition>,
    pub end: Vec<EndCondition>,
}

fn split_items(s: &str) -> Result<Vec<Vec<i64>>, ConditionError> {
    let mut out = Vec::new();
    for item in s.split(';') {
        let t = item.trim();
        if t.is_empty() {
            continue;
        }
        let t = t.strip_prefix('(').map_or(Some(t), |u| u.strip_suffix(')'));
        let t = t.ok_or_else(|| ConditionError::Syntax(item.to_string()))?;
        let nums: Result<Vec<i64>, _> = t.split(',').map(|x| x.trim().parse::<i64>()).collect();
        out.push(nums.map_err(|_| ConditionError::Syntax(item.to_string()))?);
    }
    Ok(out)
}

fn label(v: i64, item: &[i64]) -> Result<usize, ConditionError> {
    if v >= 1 {
        Ok(v as usize - 1)
    } else {
        Err(ConditionError::Syntax(format!("{item:?}")))
    }
}

pub fn parse_start_conditions(s: &str) -> Result<Vec<StartCondition>, ConditionError> {
    split_items(s)?
        .into_iter()
        .map(|it| match it.as_slice() {
            [1, l] => Ok(StartCondition::Absorbed { l: label(*l, &it)? }),
            [2, l, c] if *c >= 0 => Ok(StartCondition::AtLeast { l: label(*l, &it)?, c: *c }),
            [3, l] => Ok(StartCondition::Late { l: label(*l, &it)? }),
            _ => Err(ConditionError::Syntax(format!("{it:?}"))),
        })
        .collect()
}

pub fn parse_end_conditions(s: &str) -> Result<Vec<EndCondition>, ConditionError> {
    split_items(s)?
        .into_iter()
        .map(|it| match it.as_slice() {
            [1, l, i] => Ok(EndCondition::Block { l: label(*l, &it)?, i: label(*i, &it)? }),
            [2, l, c, i] if *c >= 0 => Ok(EndCondition::Counter { l: label(*l, &it)?, c: *c, i: label(*i, &it)? }),
            [3, i] => Ok(EndCondition::Late { i: label(*i, &it)? }),
            [4, l, c, i] if *c >= 1 => Ok(EndCondition::Carries { l: label(*l, &it)?, c: *c, i: label(*i, &it)? }),
            _ => Err(ConditionError::Syntax(format!("{it:?}"))),
        })
        .collect()
}

impl fmt::Display for StartCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StartCondition::Absorbed { l } => write!(f, "(1,{})", l + 1),
            StartCondition::AtLeast { l, c } => write!(f, "(2,{},{c})", l + 1),
            StartCondition::Late { l } => write!(f, "(3,{})", l + 1),
        }
    }
}

impl fmt::Display for EndCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EndCondition::Block { l, i } => write!(f, "(1,{},{})", l + 1, i + 1),
            EndCondition::Counter { l, c, i } => write!(f, "(2,{},{c},{})", l + 1, i + 1),
            EndCondition::Late { i } => write!(f, "(3,{})", i + 1),
            EndCondition::Carries { l, c, i } => write!(f, "(4,{},{c},{})", l + 1, i + 1),
        }
    }
}

impl Conditions {
    pub fn is_empty(&self) -> bool {
        self.start.is_empty() && self.end.is_empty()
    }

    /// Checks that every label exists and every counter is at most the
    /// corresponding part of `mu`.
    pub fn check_against(&self, ty: &TypeTuple) -> Result<(), ConditionError> {
        let (lm, ln) = (ty.mu.len(), ty.nu.len());
        for s in &self.start {
            let ok = match *s {
                StartCondition::Absorbed { l } | StartCondition::Late { l } => l < lm,
                StartCondition::AtLeast { l, c } => l < lm && c <= ty.mu[l],
            };
            if !ok {
                return Err(ConditionError::Range(s.to_string()));
            }
        }
        for e in &self.end {
            let ok = match *e {
                EndCondition::Block { l, i } => l < lm && i < ln,
                EndCondition::Counter { l, c, i } | EndCondition::Carries { l, c, i } => {
                    l < lm && i < ln && c <= ty.mu[l]
                }
                EndCondition::Late { i } => i < ln,
            };
            if !ok {
                return Err(ConditionError::Range(e.to_string()));
            }
        }
        Ok(())
    }

    /// Evaluates the conditions on a factorisation with the canonical
    /// `sigma_1`. `taus` are 0-based `(r, s)` with `r < s`; `sigma2_cycles`
    /// are the labelled cycles of `sigma_2`. The monotone prefix has length
    /// `p + q`; a step index of 0 or `b + 1` means "never".
    pub fn holds(&self, ty: &TypeTuple, taus: &[(usize, usize)], sigma2_cycles: &[Vec<usize>]) -> bool {
        let k = ty.p + ty.q;
        let b = taus.len();
        let larger = |t: usize| taus[t - 1].1;
        let touches = |t: usize, set: &dyn Fn(usize) -> bool| set(taus[t - 1].0) || set(taus[t - 1].1);
        for s in &self.start {
            let l = s.in_end();
            let (lo, hi) = (ty.offset(l), ty.offset(l) + ty.mu[l] as usize);
            let t2 = (1..=b).find(|&t| touches(t, &|x| x >= lo && x < hi)).unwrap_or(b + 1);
            let ok = match *s {
                StartCondition::Absorbed { .. } => t2 <= k && larger(t2) >= hi,
                StartCondition::AtLeast { c, .. } => t2 <= k && larger(t2) as i64 + 1 >= lo as i64 + c,
                StartCondition::Late { .. } => t2 > k,
            };
            if !ok {
                return false;
            }
        }
        for e in &self.end {
            let cyc = &sigma2_cycles[e.out_end()];
            let t1 = (1..=b).rev().find(|&t| touches(t, &|x| cyc.contains(&x))).unwrap_or(0);
            let ok = match *e {
                EndCondition::Block { l, .. } => t1 >= 1 && t1 <= k && ty.block_of(larger(t1)) == l,
                EndCondition::Counter { l, c, .. } => {
                    t1 >= 1 && t1 <= k && larger(t1) as i64 + 1 == ty.offset(l) as i64 + c
                }
                EndCondition::Late { .. } => t1 > k,
                EndCondition::Carries { l, c, .. } => {
                    t1 >= 1
                        && t1 <= k
                        && larger(t1) as i64 + 1 == ty.offset(l) as i64 + c
                        && cyc.contains(&larger(t1))
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }
}
