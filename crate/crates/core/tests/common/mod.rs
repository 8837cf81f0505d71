//! Fixtures and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fbs_core::crystal::{Crystal, CrystalGraph};
use fbs_core::{RootSystem, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::graph::DiGraph;

pub fn w(c: &[i64]) -> Weight {
    Weight::new(c.to_vec())
}

/// Integer solutions of the six-line system describing `Δ_{i,λ,μ}` for
/// `SL(3)`, `i = (1,2,1,1,2,1)`, written out by hand; `(l1,l2)`, `(m1,m2)`
/// are the coroot pairings of `λ`, `μ`.
pub fn sl3_delta_system(x: &[i64; 6], l: (i64, i64), m: (i64, i64)) -> bool {
    let [x1, x2, x3, y1, y2, y3] = *x;
    let (l1, l2) = l;
    let (m1, m2) = m;
    x.iter().all(|&v| v >= 0)
        && 0 <= y3
        && y3 <= l2.min(m1)
        && y3 <= y2
        && y2 <= y3 + m2
        && y2 - l2 <= y1
        && y1 <= l1.min(y2 - 2 * y3 + m1)
        && (y3 - l2).max(-y1 + y2 - l2) <= x3
        && x3 <= -2 * y1 + y2 - 2 * y3 + l1 + m1
        && x3 <= x2
        && x2 <= x3 + y1 - 2 * y2 + y3 + l2 + m2
        && 0 <= x1
        && x1 <= x2 - 2 * x3 - 2 * y1 + y2 - 2 * y3 + l1 + m1
}

/// The projected three-line system for `Δ̂`.
pub fn sl3_hat_system(y: &[i64; 3], l: (i64, i64), m: (i64, i64)) -> bool {
    let [y1, y2, y3] = *y;
    let (l1, l2) = l;
    let (m1, m2) = m;
    y.iter().all(|&v| v >= 0)
        && 0 <= y3
        && y3 <= l2.min(m1)
        && y3 <= y2
        && y2 <= y3 + m2
        && y2 - l2 <= y1
        && y1 <= l1.min(y2 - 2 * y3 + m1)
}

pub fn sl3_delta_solutions(l: (i64, i64), m: (i64, i64), bound: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let r = 0..=bound;
    for x1 in r.clone() {
        for x2 in r.clone() {
            for x3 in r.clone() {
                for y1 in r.clone() {
                    for y2 in r.clone() {
                        for y3 in r.clone() {
                            let p = [x1, x2, x3, y1, y2, y3];
                            if sl3_delta_system(&p, l, m) {
                                out.insert(p.to_vec());
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn sl3_hat_solutions(l: (i64, i64), m: (i64, i64), bound: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for y1 in 0..=bound {
        for y2 in 0..=bound {
            for y3 in 0..=bound {
                if sl3_hat_system(&[y1, y2, y3], l, m) {
                    out.insert(vec![y1, y2, y3]);
                }
            }
        }
    }
    out
}

/// The crystal graph of `B(ϖ₁+ϖ₂)` built by hand: two chains of length four
/// from the top vertex to the bottom one, labels `1,2,2,1` and `2,1,1,2`.
pub fn adjoint_a2_figure() -> DiGraph<(), usize> {
    let mut g = DiGraph::new();
    let v: Vec<_> = (0..8).map(|_| g.add_node(())).collect();
    // top=0, u1..u3 = 1..3, d1..d3 = 4..6, low=7
    for (s, i, t) in [(0, 1, 1), (1, 2, 2), (2, 2, 3), (3, 1, 7), (0, 2, 4), (4, 1, 5), (5, 1, 6), (6, 2, 7)] {
        g.add_edge(v[s], v[t], i);
    }
    g
}

/// The Demazure subgraph for `s₂s₁`: top, its 1-successor and that vertex's
/// whole 2-string, plus the 2-successor of top.
pub fn demazure_s2s1_figure() -> DiGraph<(), usize> {
    let mut g = DiGraph::new();
    let v: Vec<_> = (0..5).map(|_| g.add_node(())).collect();
    for (s, i, t) in [(0, 1, 1), (1, 2, 2), (2, 2, 3), (0, 2, 4)] {
        g.add_edge(v[s], v[t], i);
    }
    g
}

/// Induced colored digraph on `vertices` of a crystal graph.
pub fn induced(graph: &CrystalGraph, vertices: &[u32]) -> DiGraph<(), usize> {
    let mut g = DiGraph::new();
    let nodes: Vec<_> = vertices.iter().map(|_| g.add_node(())).collect();
    for (a, &v) in vertices.iter().enumerate() {
        for i in 1..=graph.rank() {
            if let Some(u) = graph.f(&v, i) {
                if let Some(b) = vertices.iter().position(|&x| x == u) {
                    g.add_edge(nodes[a], nodes[b], i);
                }
            }
        }
    }
    g
}

pub fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `Σ_{x ∈ Z^N} ρ(x) g(x)` by direct enumeration, with the affine bounds
/// recomputed from weights and the Cartan matrix (not from the library's
/// cached forms).
pub fn brute_signed_sum(rs: &RootSystem, word: &[usize], a: &[i64], g: &dyn Fn(&[i64]) -> BigRational) -> BigRational {
    let n = word.len();
    let rank = rs.rank();
    // ⟨a_ℓϖ_{i_ℓ}+…+a_Nϖ_{i_N}, α_{i_ℓ}^∨⟩ via explicit weight sums
    let tails: Vec<Weight> = (0..n)
        .map(|l| {
            (l..n).fold(Weight::zero(rank), |acc, j| &acc + &Weight::fundamental(rank, word[j]).scale(a[j]))
        })
        .collect();
    let bound = |l: usize, x: &[i64]| -> i64 {
        let alpha_sum = (l + 1..n).fold(Weight::zero(rank), |acc, j| {
            &acc + &rs.simple_root_as_weight(word[j]).unwrap().scale(x[j])
        });
        -rs.pairing(&tails[l], word[l]).unwrap() - rs.pairing(&alpha_sum, word[l]).unwrap()
    };
    fn rec(
        l: usize,
        x: &mut Vec<i64>,
        bound: &dyn Fn(usize, &[i64]) -> i64,
        g: &dyn Fn(&[i64]) -> BigRational,
    ) -> BigRational {
        if l == 0 {
            // (−1)^N ∏ sign(x_j), sign(0) = −1
            let negs = x.iter().filter(|&&v| v <= 0).count();
            let sign = if (x.len() + negs).is_multiple_of(2) { 1 } else { -1 };
            return g(x) * big(sign);
        }
        let b = bound(l - 1, x);
        let mut acc = BigRational::zero();
        let range: Vec<i64> = if b <= 0 { (b..=0).collect() } else { (1..b).collect() };
        for v in range {
            x[l - 1] = v;
            acc += rec(l - 1, x, bound, g);
        }
        x[l - 1] = 0;
        acc
    }
    let mut x = vec![0; n];
    rec(n, &mut x, &bound, g)
}

/// Leading coefficient of a degree-`deg` polynomial sampled at `k = 1..=deg+2`:
/// the `deg`-th forward difference divided by `deg!`. Also returns the
/// `(deg+1)`-th difference, which must vanish if the data is polynomial.
pub fn leading_coefficient(values: &[BigRational], deg: usize) -> (BigRational, BigRational) {
    assert!(values.len() >= deg + 2);
    let mut diffs = values.to_vec();
    let mut levels = Vec::new();
    for _ in 0..=deg + 1 {
        levels.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|p| &p[1] - &p[0]).collect();
    }
    let mut fact = BigRational::one();
    for j in 1..=deg {
        fact *= big(j as i64);
    }
    (&levels[deg] / fact, levels[deg + 1].clone())
}

/// All words of length `len` over `1..=n`.
pub fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// All vectors in `{0, …, max}^len`.
pub fn boxes(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut u = v.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

/// Dominant weights of rank `n` with coordinates in `0..=max`.
pub fn dominant_weights(n: usize, max: i64) -> Vec<Weight> {
    boxes(n, max).into_iter().map(Weight::new).collect()
}
