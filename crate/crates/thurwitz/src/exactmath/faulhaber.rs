use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{binomial, Rational};
use super::poly::MultiPoly;

fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number `B_j` with `B_1 = -1/2`.
///
/// Uses the recurrence `sum_{k=0}^{m} C(m+1, k) B_k = 0` for `m >= 1`.
pub fn bernoulli(j: usize) -> Rational {
    let mut table = bernoulli_table().lock().unwrap();
    while table.len() <= j {
        let m = table.len();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
        }
        let next = -acc / Rational::from_integer(binomial(m as u64 + 1, m as u64));
        table.push(next);
    }
    table[j].clone()
}

/// Coefficients `a_0..a_{p+1}` of the power-sum polynomial
/// `sum_{k=1}^{n} k^p = sum_i a_i n^i`.
fn faulhaber_coeffs(p: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); p + 2];
    let scale = Rational::from_integer((p as i64 + 1).into());
    for j in 0..=p {
        let mut term = Rational::from_integer(binomial(p as u64 + 1, j as u64)) * bernoulli(j);
        if j % 2 == 1 {
            term = -term;
        }
        c[p + 1 - j] += term / &scale;
    }
    c
}

/// `sum_{k=1}^{n} k^p` as a polynomial in the single variable `n`.
pub fn faulhaber_sum(p: usize) -> MultiPoly {
    let vars: Arc<[String]> = vec!["n".to_string()].into();
    MultiPoly::from_terms(
        vars,
        faulhaber_coeffs(p)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c)),
    )
}

/// Evaluates the univariate coefficient list at a polynomial argument (Horner).
fn compose_univariate(coeffs: &[Rational], arg: &MultiPoly) -> MultiPoly {
    let vars = arg.vars().clone();
    let mut acc = MultiPoly::zero(vars.clone());
    for c in coeffs.iter().rev() {
        acc = &(&acc * arg) + &MultiPoly::constant(vars.clone(), c.clone());
    }
    acc
}

/// Closed form of `sum_{t=lower}^{upper} f`, where `t` is variable `var` of `f`.
///
/// The result is `F(upper) - F(lower - 1)` for the power-sum antidifference `F`,
/// so it is an identity whenever `upper >= lower - 1`. The bounds may mention
/// `t` itself, which then plays the role of a fresh variable in the result.
pub fn sum_over_range(f: &MultiPoly, var: usize, lower: &MultiPoly, upper: &MultiPoly) -> MultiPoly {
    let vars = f.vars().clone();
    let one = MultiPoly::one(vars.clone());
    let below = lower - &one;
    let mut acc = MultiPoly::zero(vars);
    for (k, ck) in f.coefficients_in(var).iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let s = faulhaber_coeffs(k);
        let diff = &compose_univariate(&s, upper) - &compose_univariate(&s, &below);
        acc = &acc + &(ck * &diff);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(4), ratio(-1, 30));
    }

    #[test]
    fn small_power_sums() {
        assert_eq!(faulhaber_sum(0).to_string(), "n");
        assert_eq!(faulhaber_sum(1).to_string(), "1/2*n^2 + 1/2*n");
    }

    #[test]
    fn range_with_symbolic_ends() {
        let vars: Arc<[String]> = vec!["a".into(), "b".into(), "t".into()].into();
        let one = MultiPoly::one(vars.clone());
        let a = MultiPoly::var(vars.clone(), 0);
        let b = MultiPoly::var(vars.clone(), 1);
        let s = sum_over_range(&one, 2, &a, &b);
        assert_eq!(s, &(&b - &a) + &one);
        let t = MultiPoly::var(vars.clone(), 2);
        let tri = sum_over_range(&t, 2, &one, &b);
        assert_eq!(tri.eval_int(&[0, 10, 0]), rat(55));
    }
}
