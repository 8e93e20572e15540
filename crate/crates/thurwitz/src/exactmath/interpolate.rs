use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpolationError {
    #[error("sample set does not determine a polynomial of degree <= {degree} ({rank} of {monomials} monomials fixed)")]
    Underdetermined { degree: u32, rank: usize, monomials: usize },
    #[error("held-out sample at {point:?} disagrees with the interpolant")]
    HeldOutMismatch { point: Vec<i64> },
}

/// Exponent vectors of total degree `<= degree` supported on `active`.
fn monomials(nvars: usize, active: &[usize], degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(k: usize, left: u32, active: &[usize], e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == active.len() {
            out.push(e.clone());
            return;
        }
        for a in 0..=left {
            e[active[k]] = a;
            rec(k + 1, left - a, active, e, out);
        }
        e[active[k]] = 0;
    }
    rec(0, degree, active, &mut e, &mut out);
    out
}

/// Points `base + sum a_k * step * e_{active[k]}` with `sum a_k <= degree`.
///
/// The simplex grid is unisolvent for polynomials of total degree `<= degree`
/// in the active variables.
pub fn simplex_grid(base: &[i64], active: &[usize], degree: u32, step: i64) -> Vec<Vec<i64>> {
    let n = base.len();
    monomials(n, active, degree)
        .into_iter()
        .map(|e| base.iter().zip(&e).map(|(b, &a)| b + step * a as i64).collect())
        .collect()
}

fn monomial_value(e: &[u32], pt: &[i64]) -> Rational {
    let mut v = num_bigint::BigInt::one();
    for (&k, &x) in e.iter().zip(pt) {
        for _ in 0..k {
            v *= x;
        }
    }
    Rational::from_integer(v)
}

/// The unique polynomial of total degree `<= degree` in the `active`
/// variables matching every sample.
///
/// All samples enter the linear system, so samples beyond a unisolvent subset
/// act as held-out checks.
pub fn interpolate(
    vars: Arc<[String]>,
    active: &[usize],
    samples: &[(Vec<i64>, Rational)],
    degree: u32,
) -> Result<MultiPoly, InterpolationError> {
    let monos = monomials(vars.len(), active, degree);
    let ncols = monos.len();
    let mut rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(pt, v)| {
            let mut row: Vec<Rational> = monos.iter().map(|e| monomial_value(e, pt)).collect();
            row.push(v.clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < ncols {
        return Err(InterpolationError::Underdetermined { degree, rank: pivots.len(), monomials: ncols });
    }
    if (r..rows.len()).any(|i| !rows[i][ncols].is_zero()) {
        let fitted = MultiPoly::from_terms(vars.clone(), pivots.iter().enumerate().map(|(k, &c)| (monos[c].clone(), rows[k][ncols].clone())));
        let bad = samples
            .iter()
            .find(|(pt, v)| fitted.eval_int(pt) != *v)
            .map(|(pt, _)| pt.clone())
            .unwrap_or_default();
        return Err(InterpolationError::HeldOutMismatch { point: bad });
    }
    Ok(MultiPoly::from_terms(
        vars,
        pivots.iter().enumerate().map(|(k, &c)| (monos[c].clone(), rows[k][ncols].clone())),
    ))
}
