//! Grossberg–Karshon twisted cubes.
//!
//! For a word `i = (i_1, …, i_N)` and `a ∈ Z^N` the affine forms
//!
//! ```text
//! A_ℓ(x) = −⟨a_ℓϖ_{i_ℓ} + ⋯ + a_Nϖ_{i_N}, α_{i_ℓ}^∨⟩ − Σ_{j>ℓ} ⟨α_{i_j}, α_{i_ℓ}^∨⟩ x_j
//! ```
//!
//! cut out `C(i,a)`: each coordinate lies in `[A_ℓ, 0]` (when `A_ℓ ≤ 0`) or in
//! `(0, A_ℓ)` (when `A_ℓ > 0`). The density is `ρ = (−1)^N ∏ sign(x_ℓ)` with
//! `sign(0) = −1`, i.e. each coordinate contributes `+1` on the closed branch
//! and `−1` on the open one.
//!
//! Exact integration rests on one identity. For either branch,
//!
//! ```text
//! closed:  ∫_{A}^{0} (+1)·h = −∫_0^A h
//! open:    ∫_0^{A}  (−1)·h = −∫_0^A h
//! ```
//!
//! so `∫ ρ·g = (−1)^N p_N` where `p_0 = g` and `p_ℓ` is the antiderivative of
//! `p_{ℓ−1}` in `x_ℓ` (vanishing at 0) evaluated at `x_ℓ = A_ℓ`. Because `A_ℓ`
//! only involves later coordinates, integrating `x_1` first is well-founded.

mod mc;
mod poly;
mod render;

use num_rational::{BigRational, Rational64};
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

pub use mc::{mc_estimate, mc_histogram, Histogram, McEstimate, DEFAULT_SHARDS};
pub use poly::MVPolynomial;
pub use render::{histogram_to_csv, histogram_to_svg};

/// Affine form `constant + Σ_{j>ℓ} coeffs[j] x_j` (0-based `j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl AffineForm {
    pub fn eval_rational(&self, x: &[Rational64]) -> Rational64 {
        let mut v = Rational64::from(self.constant);
        for (c, xi) in self.coeffs.iter().zip(x) {
            if *c != 0 {
                v += Rational64::from(*c) * xi;
            }
        }
        v
    }

    pub fn eval_int(&self, x: &[i64]) -> i64 {
        self.constant + self.coeffs.iter().zip(x).map(|(c, xi)| c * xi).sum::<i64>()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.constant as f64 + self.coeffs.iter().zip(x).map(|(c, xi)| *c as f64 * xi).sum::<f64>()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedCube {
    word: Vec<usize>,
    a: Vec<i64>,
    forms: Vec<AffineForm>,
}

impl TwistedCube {
    /// Negative entries of `a` are allowed.
    pub fn new(rs: &RootSystem, word: &[usize], a: &[i64]) -> Result<Self> {
        if word.len() != a.len() {
            return Err(Error::InvalidArgument(format!(
                "word has length {} but a has length {}",
                word.len(),
                a.len()
            )));
        }
        for &i in word {
            rs.check_index(i)?;
        }
        let n = word.len();
        let c = rs.cartan();
        let forms = (0..n)
            .map(|l| {
                let il = word[l];
                let constant = -(l..n).filter(|&j| word[j] == il).map(|j| a[j]).sum::<i64>();
                let coeffs = (0..n).map(|j| if j > l { -c.entry(il, word[j]) } else { 0 }).collect();
                AffineForm { constant, coeffs }
            })
            .collect();
        Ok(TwistedCube { word: word.to_vec(), a: a.to_vec(), forms })
    }

    pub fn dim(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    /// `ρ(x) ∈ {−1, 0, +1}`.
    pub fn density(&self, x: &[Rational64]) -> i8 {
        assert_eq!(x.len(), self.dim());
        let mut sign = 1i8;
        for l in (0..self.dim()).rev() {
            let bound = self.forms[l].eval_rational(x);
            let xl = x[l];
            if bound <= xl && !xl.is_positive() {
                continue;
            } else if xl.is_positive() && xl < bound {
                sign = -sign;
            } else {
                return 0;
            }
        }
        sign
    }

    pub fn density_f64(&self, x: &[f64]) -> i8 {
        let mut sign = 1i8;
        for l in (0..self.dim()).rev() {
            let bound = self.forms[l].eval_f64(x);
            let xl = x[l];
            if bound <= xl && xl <= 0.0 {
                continue;
            } else if xl > 0.0 && xl < bound {
                sign = -sign;
            } else {
                return 0;
            }
        }
        sign
    }

    /// `∫ ρ(x) g(x) dx` for a polynomial `g` in `x_1, …, x_N`.
    pub fn integrate(&self, g: &MVPolynomial) -> BigRational {
        let n = self.dim();
        assert_eq!(g.nvars(), n);
        let mut p = g.clone();
        for l in 0..n {
            let bound = MVPolynomial::affine(self.forms[l].constant, &self.forms[l].coeffs);
            p = p.integrate(l).substitute(l, &bound);
        }
        let v = p.constant_term();
        if n % 2 == 1 {
            -v
        } else {
            v
        }
    }

    pub fn signed_volume(&self) -> BigRational {
        self.integrate(&MVPolynomial::one(self.dim()))
    }

    /// `∫ (Lx)^m ρ(x) dx`.
    pub fn pushforward_moment(&self, l: &ProjectionMap, m: &[u32]) -> Result<BigRational> {
        if l.cols() != self.dim() || m.len() != l.rows() {
            return Err(Error::InvalidArgument(format!(
                "projection is {}x{}, cube has dimension {}, multi-index has length {}",
                l.rows(),
                l.cols(),
                self.dim(),
                m.len()
            )));
        }
        let mut g = MVPolynomial::one(self.dim());
        for (r, &k) in m.iter().enumerate() {
            if k > 0 {
                g = &g * &MVPolynomial::affine(0, &l.matrix[r]).pow(k);
            }
        }
        Ok(self.integrate(&g))
    }

    /// First moments `∫ (Lx)_r ρ dx` for every target coordinate.
    pub fn first_moments(&self, l: &ProjectionMap) -> Result<Vec<BigRational>> {
        (0..l.rows())
            .map(|r| {
                let mut m = vec![0; l.rows()];
                m[r] = 1;
                self.pushforward_moment(l, &m)
            })
            .collect()
    }

    /// `Σ_{x ∈ Z^N} ρ(x)`, honoring the closed/open branch asymmetry.
    pub fn signed_lattice_count(&self) -> i64 {
        let mut x = vec![0i64; self.dim()];
        self.count_from(self.dim(), &mut x)
    }

    fn count_from(&self, l: usize, x: &mut [i64]) -> i64 {
        if l == 0 {
            return 1;
        }
        let bound = self.forms[l - 1].eval_int(x);
        let mut total = 0;
        if bound <= 0 {
            for v in bound..=0 {
                x[l - 1] = v;
                total += self.count_from(l - 1, x);
            }
        } else {
            for v in 1..bound {
                x[l - 1] = v;
                total -= self.count_from(l - 1, x);
            }
        }
        x[l - 1] = 0;
        total
    }

    /// Integer box `∏ [lo_ℓ, hi_ℓ]` containing `C(i,a)`, from interval
    /// arithmetic on the affine forms (last coordinate first).
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        let n = self.dim();
        let mut bx = vec![(0i64, 0i64); n];
        for l in (0..n).rev() {
            let f = &self.forms[l];
            let (mut lo, mut hi) = (f.constant, f.constant);
            for j in l + 1..n {
                let c = f.coeffs[j];
                let (a, b) = (c * bx[j].0, c * bx[j].1);
                lo += a.min(b);
                hi += a.max(b);
            }
            bx[l] = (lo.min(0), hi.max(0));
        }
        bx
    }
}

/// The 0/1 matrix sending the coordinate of `(k,l)` to the row of
/// `i_{k,l}` inside block `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionMap {
    pub matrix: Vec<Vec<i64>>,
}

impl ProjectionMap {
    pub fn new(rs: &RootSystem, subsets: &[Vec<usize>], words: &[Vec<usize>]) -> Result<Self> {
        rs.check_word_sequence(subsets, words)?;
        let rows: usize = subsets.iter().map(Vec::len).sum();
        let cols: usize = words.iter().map(Vec::len).sum();
        let mut matrix = vec![vec![0; cols]; rows];
        let (mut row0, mut col) = (0, 0);
        for (subset, word) in subsets.iter().zip(words) {
            for &letter in word {
                let pos = subset.iter().position(|&s| s == letter).expect("checked compatible");
                matrix[row0 + pos][col] = 1;
                col += 1;
            }
            row0 += subset.len();
        }
        Ok(ProjectionMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        ProjectionMap { matrix: (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect() }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(c, xi)| *c as f64 * xi).sum())
            .collect()
    }

    /// Image of an integer box under the (nonnegative) matrix.
    pub fn image_box(&self, bx: &[(i64, i64)]) -> Vec<(i64, i64)> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(bx).fold((0, 0), |(lo, hi), (&c, &(a, b))| {
                    let (p, q) = (c * a, c * b);
                    (lo + p.min(q), hi + p.max(q))
                })
            })
            .collect()
    }
}

/// Renders a rational as `"p/q"` (or `"p"` when integral).
pub fn rational_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn density_examples() {
        let a1 = RootSystem::type_a(1);
        let c = TwistedCube::new(&a1, &[1], &[2]).unwrap();
        assert_eq!(c.density(&[q(-1, 1)]), 1);
        assert_eq!(c.density(&[q(-3, 1)]), 0);
        assert_eq!(c.density(&[q(1, 2)]), 0);

        let a2 = RootSystem::type_a(2);
        let c = TwistedCube::new(&a2, &[1, 2], &[1, 1]).unwrap();
        assert_eq!(c.forms()[1], AffineForm { constant: -1, coeffs: vec![0, 0] });
        assert_eq!(c.forms()[0], AffineForm { constant: -1, coeffs: vec![0, 1] });
        assert_eq!(c.density(&[q(-1, 2), q(-1, 2)]), 1);
    }

    #[test]
    fn one_dimensional_values() {
        let a1 = RootSystem::type_a(1);
        let c = TwistedCube::new(&a1, &[1], &[2]).unwrap();
        assert_eq!(c.signed_volume(), big(2, 1));
        assert_eq!(c.signed_lattice_count(), 3);
        let id = ProjectionMap::identity(1);
        assert_eq!(c.pushforward_moment(&id, &[1]).unwrap(), big(-2, 1));
        assert_eq!(c.pushforward_moment(&id, &[0]).unwrap(), c.signed_volume());

        let neg = TwistedCube::new(&a1, &[1], &[-1]).unwrap();
        assert_eq!(neg.signed_lattice_count(), 0);
        assert_eq!(neg.signed_volume(), big(-1, 1));
        let zero = TwistedCube::new(&a1, &[1], &[0]).unwrap();
        assert_eq!(zero.signed_volume(), big(0, 1));
        assert_eq!(zero.signed_lattice_count(), 1);
    }

    #[test]
    fn projection_examples() {
        let a3 = RootSystem::type_a(3);
        let l = ProjectionMap::new(&a3, &[vec![1, 2], vec![3]], &[vec![1, 2, 1], vec![3]]).unwrap();
        assert_eq!(l.matrix, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
        let l = ProjectionMap::new(&a3, &[vec![1], vec![1]], &[vec![1], vec![1]]).unwrap();
        assert_eq!(l, ProjectionMap::identity(2));
        let l = ProjectionMap::new(&a3, &[vec![2], vec![3], vec![1]], &[vec![2], vec![3], vec![1]]).unwrap();
        assert_eq!(l, ProjectionMap::identity(3));
    }

    #[test]
    fn bounding_box_contains_support() {
        let a2 = RootSystem::type_a(2);
        let c = TwistedCube::new(&a2, &[1, 2, 1], &[1, -2, 1]).unwrap();
        let bx = c.bounding_box();
        for x0 in -8..=8 {
            for x1 in -8..=8 {
                for x2 in -8..=8 {
                    let x = [q(x0, 2), q(x1, 2), q(x2, 2)];
                    if c.density(&x) != 0 {
                        for (v, (lo, hi)) in x.iter().zip(&bx) {
                            assert!(*v >= Rational64::from(*lo) && *v <= Rational64::from(*hi));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_string(&big(6, 4)), "3/2");
        assert_eq!(rational_string(&big(-4, 2)), "-2");
    }
}
