use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{rat, MultiPoly};

/// Variable layout shared by linear forms and polynomials:
/// `M1..M{ell_mu}, N1..N{ell_nu}, X1..X{g}` and optionally an auxiliary `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub ell_mu: usize,
    pub ell_nu: usize,
    pub g: usize,
}

impl Shape {
    pub fn new(ell_mu: usize, ell_nu: usize, g: usize) -> Self {
        Shape { ell_mu, ell_nu, g }
    }

    pub fn mu_var(&self, i: usize) -> usize {
        i
    }

    pub fn nu_var(&self, j: usize) -> usize {
        self.ell_mu + j
    }

    pub fn x_var(&self, k: usize) -> usize {
        self.ell_mu + self.ell_nu + k
    }

    /// Index of the auxiliary summation variable in the `with_aux` layout.
    pub fn aux_var(&self) -> usize {
        self.ell_mu + self.ell_nu + self.g
    }

    pub fn nvars(&self, with_aux: bool) -> usize {
        self.ell_mu + self.ell_nu + self.g + usize::from(with_aux)
    }

    pub fn var_names(&self, with_aux: bool) -> Arc<[String]> {
        let mut names = Vec::with_capacity(self.nvars(with_aux));
        names.extend((1..=self.ell_mu).map(|i| format!("M{i}")));
        names.extend((1..=self.ell_nu).map(|j| format!("N{j}")));
        names.extend((1..=self.g).map(|k| format!("X{k}")));
        if with_aux {
            names.push("T".to_string());
        }
        names.into()
    }

    /// Concatenated point `(mu, nu, x)` in variable order.
    pub fn point(&self, mu: &[i64], nu: &[i64], x: &[i64]) -> Vec<i64> {
        assert_eq!(mu.len(), self.ell_mu);
        assert_eq!(nu.len(), self.ell_nu);
        assert_eq!(x.len(), self.g);
        let mut v = Vec::with_capacity(self.nvars(false));
        v.extend_from_slice(mu);
        v.extend_from_slice(nu);
        v.extend_from_slice(x);
        v
    }
}

/// Integer affine form `sum a_i M_i + sum b_j N_j + sum c_k X_k + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm {
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub x: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn zero(shape: Shape) -> Self {
        LinearForm {
            mu: vec![0; shape.ell_mu],
            nu: vec![0; shape.ell_nu],
            x: vec![0; shape.g],
            constant: 0,
        }
    }

    pub fn constant(shape: Shape, c: i64) -> Self {
        let mut f = Self::zero(shape);
        f.constant = c;
        f
    }

    pub fn mu_entry(shape: Shape, i: usize) -> Self {
        let mut f = Self::zero(shape);
        f.mu[i] = 1;
        f
    }

    pub fn nu_entry(shape: Shape, j: usize) -> Self {
        let mut f = Self::zero(shape);
        f.nu[j] = 1;
        f
    }

    pub fn x_entry(shape: Shape, k: usize) -> Self {
        let mut f = Self::zero(shape);
        f.x[k] = 1;
        f
    }

    /// `sum_{i in I} M_i - sum_{j in J} N_j`.
    pub fn resonance(shape: Shape, i_set: &[usize], j_set: &[usize]) -> Self {
        let mut f = Self::zero(shape);
        for &i in i_set {
            f.mu[i] += 1;
        }
        for &j in j_set {
            f.nu[j] -= 1;
        }
        f
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.mu.len(), self.nu.len(), self.x.len())
    }

    pub fn plus_const(mut self, c: i64) -> Self {
        self.constant += c;
        self
    }

    pub fn scale(&self, k: i64) -> Self {
        LinearForm {
            mu: self.mu.iter().map(|a| a * k).collect(),
            nu: self.nu.iter().map(|a| a * k).collect(),
            x: self.x.iter().map(|a| a * k).collect(),
            constant: self.constant * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.linear_is_zero()
    }

    pub fn linear_is_zero(&self) -> bool {
        self.mu.iter().chain(&self.nu).chain(&self.x).all(|&a| a == 0)
    }

    pub fn has_x(&self) -> bool {
        self.x.iter().any(|&a| a != 0)
    }

    /// The form without its constant term.
    pub fn linear_part(&self) -> Self {
        let mut f = self.clone();
        f.constant = 0;
        f
    }

    /// Eliminates the last `N` using `sum M = sum N`; two forms agree on the
    /// degree slice iff their reductions are equal.
    pub fn reduce_on_slice(&self) -> Self {
        let mut f = self.clone();
        if let Some(&c) = f.nu.last() {
            if c != 0 {
                let last = f.nu.len() - 1;
                for a in f.mu.iter_mut() {
                    *a += c;
                }
                for a in f.nu[..last].iter_mut() {
                    *a -= c;
                }
                f.nu[last] = 0;
            }
        }
        f
    }

    pub fn eval(&self, mu: &[i64], nu: &[i64], x: &[i64]) -> i64 {
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<i64>();
        dot(&self.mu, mu) + dot(&self.nu, nu) + dot(&self.x, x) + self.constant
    }

    /// Evaluates on a concatenated point as produced by [`Shape::point`].
    pub fn eval_point(&self, pt: &[i64]) -> i64 {
        let (m, rest) = pt.split_at(self.mu.len());
        let (n, x) = rest.split_at(self.nu.len());
        self.eval(m, n, &x[..self.x.len()])
    }

    pub fn to_poly(&self, with_aux: bool) -> MultiPoly {
        let shape = self.shape();
        let vars = shape.var_names(with_aux);
        let mut p = MultiPoly::constant(vars.clone(), rat(self.constant));
        let coeffs = self.mu.iter().chain(&self.nu).chain(&self.x);
        for (idx, &a) in coeffs.enumerate() {
            if a != 0 {
                p = &p + &MultiPoly::var(vars.clone(), idx).scale(&rat(a));
            }
        }
        p
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, o: &LinearForm) -> LinearForm {
        let z = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p + q).collect();
        LinearForm {
            mu: z(&self.mu, &o.mu),
            nu: z(&self.nu, &o.nu),
            x: z(&self.x, &o.x),
            constant: self.constant + o.constant,
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, o: &LinearForm) -> LinearForm {
        self + &(-o)
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(-1)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = Vec::new();
        parts.extend(self.mu.iter().enumerate().map(|(i, &a)| (a, format!("M{}", i + 1))));
        parts.extend(self.nu.iter().enumerate().map(|(j, &a)| (a, format!("N{}", j + 1))));
        parts.extend(self.x.iter().enumerate().map(|(k, &a)| (a, format!("X{}", k + 1))));
        let mut out = String::new();
        for (a, name) in parts.into_iter().filter(|(a, _)| *a != 0) {
            let sign = if a < 0 { "-" } else { "+" };
            if out.is_empty() {
                if a < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if a.abs() != 1 {
                out.push_str(&format!("{}*", a.abs()));
            }
            out.push_str(&name);
        }
        if self.constant != 0 || out.is_empty() {
            if out.is_empty() {
                out = self.constant.to_string();
            } else {
                let sign = if self.constant < 0 { "-" } else { "+" };
                out.push_str(&format!(" {sign} {}", self.constant.abs()));
            }
        }
        f.write_str(&out)
    }
}
