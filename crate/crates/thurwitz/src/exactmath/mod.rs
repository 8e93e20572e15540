//! Exact rational arithmetic, linear forms, multivariate polynomials and
//! power-sum machinery.

mod faulhaber;
mod interpolate;
mod linear;
mod poly;

pub use faulhaber::{bernoulli, faulhaber_sum, sum_over_range};
pub use interpolate::{interpolate, simplex_grid, InterpolationError};
pub use linear::{LinearForm, Shape};
pub use poly::{MultiPoly, PolyJson, PolyParseError, TermJson};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
