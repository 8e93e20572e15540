//! Cross-validation suites behind `thurwitz verify`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use thurwitz::chambers::{classify_point, compositions, Sign};
use thurwitz::exactmath::{faulhaber_sum, rat, MultiPoly, Rational};
use thurwitz::hurwitz::{divide_by_mu, genus0_polynomial, genus_g_value, tropical_count};
use thurwitz::symgroup::{h_oracle, m_oracle, sigma1_independence_check, Conditions, TypeTuple};

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    /// First failing case, if any.
    pub detail: Option<String>,
}

impl SuiteResult {
    pub fn detail_suffix(&self) -> String {
        self.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()
    }
}

fn suite(name: &str, outcomes: Vec<Result<(), String>>) -> SuiteResult {
    let cases = outcomes.len();
    let detail = outcomes.into_iter().find_map(Result::err);
    eprintln!("  {name}: {cases} cases");
    SuiteResult { name: name.to_string(), pass: detail.is_none(), cases, detail }
}

fn splits(b: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..=b {
        for q in 0..=b - p {
            out.push((p, q, b - p - q));
        }
    }
    out
}

/// Types of genus `g` with `d <= max_d`, lengths up to `max_len` and at most
/// `max_b` branch points.
fn types(g: usize, max_d: i64, max_len: usize, max_b: usize) -> Vec<TypeTuple> {
    let mut out = Vec::new();
    for lm in 1..=max_len {
        for ln in 1..=max_len {
            let b = 2 * g + lm + ln - 2;
            if b == 0 || b > max_b {
                continue;
            }
            for d in lm.max(ln) as i64..=max_d {
                for mu in compositions(d, lm) {
                    for nu in compositions(d, ln) {
                        for (p, q, r) in splits(b) {
                            out.push(TypeTuple::new(g, mu.clone(), nu.clone(), p, q, r).expect("valid type"));
                        }
                    }
                }
            }
        }
    }
    out
}

fn oracle_m(ty: &TypeTuple, budget: u64) -> Result<Rational, CliError> {
    Ok(Rational::from_integer(m_oracle(ty, &Conditions::default(), budget)?.into()))
}

fn mu_product(ty: &TypeTuple) -> Rational {
    ty.mu.iter().fold(rat(1), |acc, &m| acc * rat(m))
}

type PolyKey = (usize, usize, Vec<Sign>, usize, usize, usize);

pub fn run_all(max_d: i64, budget: u64) -> Result<Vec<SuiteResult>, CliError> {
    let mut out = Vec::new();

    eprintln!("genus-0 chamber polynomials against brute force");
    let genus0: Vec<TypeTuple> =
        types(0, max_d, 3, 4).into_iter().filter(|t| classify_point(&t.mu, &t.nu).is_ok()).collect();
    let mut keys: BTreeMap<PolyKey, TypeTuple> = BTreeMap::new();
    for t in &genus0 {
        let c = classify_point(&t.mu, &t.nu)?;
        keys.entry((t.mu.len(), t.nu.len(), c.sign_vector(), t.p, t.q, t.r)).or_insert_with(|| t.clone());
    }
    let polys: BTreeMap<PolyKey, MultiPoly> = keys
        .into_par_iter()
        .map(|(k, t)| {
            let c = classify_point(&t.mu, &t.nu)?;
            Ok((k, genus0_polynomial(t.mu.len(), t.nu.len(), t.p, t.q, t.r, &c)?.m_poly))
        })
        .collect::<Result<_, CliError>>()?;
    let poly_of = |t: &TypeTuple| -> &MultiPoly {
        let c = classify_point(&t.mu, &t.nu).expect("off the walls");
        &polys[&(t.mu.len(), t.nu.len(), c.sign_vector(), t.p, t.q, t.r)]
    };
    let outcomes = genus0
        .par_iter()
        .map(|t| {
            let pt: Vec<i64> = t.mu.iter().chain(&t.nu).copied().collect();
            let (m, o) = (poly_of(t).eval_int(&pt), oracle_m(t, budget)?);
            Ok(if m == o { Ok(()) } else { Err(format!("{t}: polynomial {m}, brute force {o}")) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.push(suite("genus-0 chamber polynomials", outcomes));

    eprintln!("divisibility by the product of the M variables");
    let outcomes = polys
        .iter()
        .filter(|((.., p, q, r), _)| (*p == 0 || *q == 0) && p + q + r > 0)
        .map(|((lm, ln, _, p, q, r), m)| match divide_by_mu(m, *lm, *ln) {
            Some(_) => Ok(()),
            None => Err(format!("({lm},{ln}) ({p},{q},{r}): {m}")),
        })
        .collect();
    out.push(suite("divisibility", outcomes));

    eprintln!("genus-1 lattice sums against brute force");
    let genus1 = types(1, max_d.min(4), 2, 4);
    let outcomes = genus1
        .par_iter()
        .map(|t| {
            let (m, o) = (genus_g_value(t)?, oracle_m(t, budget)?);
            Ok(if m == o { Ok(()) } else { Err(format!("{t}: lattice sum {m}, brute force {o}")) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.push(suite("genus-1 values", outcomes));

    eprintln!("H = M / prod mu");
    let small: Vec<&TypeTuple> =
        genus0.iter().chain(&genus1).filter(|t| (t.p == 0 || t.q == 0) && t.degree() <= max_d.min(5)).collect();
    let outcomes = small
        .par_iter()
        .map(|t| {
            let (h, m) = (h_oracle(t, budget)?, oracle_m(t, budget)?);
            let want = &m / &mu_product(t);
            Ok(if h == want { Ok(()) } else { Err(format!("{t}: H {h}, M/prod mu {want}")) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.push(suite("H = M / prod mu", outcomes));

    eprintln!("tropical specialisation");
    let outcomes = small
        .par_iter()
        .filter(|t| t.p == 0 && t.q == 0)
        .map(|t| {
            let (h, trop) = (h_oracle(t, budget)?, tropical_count(&t.mu, &t.nu, t.g));
            Ok(if h == trop { Ok(()) } else { Err(format!("{t}: H {h}, tropical {trop}")) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.push(suite("tropical specialisation", outcomes));

    eprintln!("sigma_1 independence");
    let outcomes = small
        .par_iter()
        .filter(|t| t.degree() <= max_d.min(4))
        .map(|t| {
            let counts = sigma1_independence_check(t, budget)?;
            let first = counts[0].1;
            Ok(match counts.iter().find(|(_, c)| *c != first) {
                None => Ok(()),
                Some((s, c)) => Err(format!("{t}: {c} for {:?} against {first}", s.cycles())),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.push(suite("sigma_1 independence", outcomes));

    eprintln!("power sums");
    let mut outcomes = Vec::new();
    for p in 0..=8usize {
        let f = faulhaber_sum(p);
        let mut direct = rat(0);
        for n in 1..=40i64 {
            direct += rat(n).pow(p as i32);
            let v = f.eval_int(&[n]);
            outcomes.push(if v == direct { Ok(()) } else { Err(format!("p = {p}, n = {n}: {v} against {direct}")) });
        }
    }
    out.push(suite("power sums", outcomes));
    Ok(out)
}
