use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse polynomial over `Q` in `x_1, …, x_n` (variables 0-based internally).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MVPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl MVPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MVPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// `c + Σ coeffs[j] x_j`.
    pub fn affine(c: i64, coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, rat(c));
        for (j, &a) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, rat(a));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Antiderivative in `x_var` vanishing on `x_var = 0`.
    pub fn integrate(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] += 1;
            let d = rat(e2[var] as i64);
            out.add_term(e2, c / d);
        }
        out
    }

    /// Replaces `x_var` by `value`, which must not involve `x_var`.
    pub fn substitute(&self, var: usize, value: &MVPolynomial) -> Self {
        debug_assert!(value.terms.keys().all(|e| e[var] == 0));
        let mut powers: Vec<MVPolynomial> = vec![Self::one(self.nvars)];
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[var] = 0;
            for (pe, pc) in &powers[k].terms {
                let exps: Vec<u32> = rest.iter().zip(pe).map(|(a, b)| a + b).collect();
                out.add_term(exps, c * pc);
            }
        }
        out
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Value when every variable is zero.
    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl Add for &MVPolynomial {
    type Output = MVPolynomial;
    fn add(self, rhs: &MVPolynomial) -> MVPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &MVPolynomial {
    type Output = MVPolynomial;
    fn mul(self, rhs: &MVPolynomial) -> MVPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MVPolynomial { nvars: self.nvars, terms: acc }
    }
}

impl fmt::Display for MVPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| if k == 1 { format!("x{}", j + 1) } else { format!("x{}^{k}", j + 1) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn integrate_and_substitute() {
        // ∫_0^{x2} (x1 + 1) dx1 = x2²/2 + x2
        let p = MVPolynomial::affine(1, &[1, 0]);
        let anti = p.integrate(0);
        let sub = anti.substitute(0, &MVPolynomial::affine(0, &[0, 1]));
        assert_eq!(sub.eval(&[q(0, 1), q(2, 1)]), q(4, 1));
        assert_eq!(sub.eval(&[q(0, 1), q(1, 3)]), q(1, 18) + q(1, 3));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = MVPolynomial::affine(2, &[1]);
        let m = MVPolynomial::affine(-2, &[-1]);
        assert!((&p + &m).is_zero());
        let sq = p.pow(2);
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.constant_term(), q(4, 1));
        assert_eq!(sq.to_string(), "4 + 4*x1 + 1*x1^2");
    }
}
