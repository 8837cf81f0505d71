//! Lattice points of generalized string polytopes and the counts they encode.
//!
//! Everything here is read off the Ω-image of a generated crystal; no
//! inequality descriptions are computed. Points are in the string
//! orientation, i.e. the negatives of Newton–Okounkov valuation vectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::demazure::GenDemazureCrystal;
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

pub use crate::crystal::MultiplicityTable;

/// Sorted lattice points of `Δ_{i,k·a}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePointSet {
    pub word: Vec<usize>,
    pub level: i64,
    pub points: Vec<Vec<i64>>,
}

/// Projected points `π_{≥2}(Ω(b))`, each with the highest weight of the
/// component it indexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatPoints {
    pub words: Vec<Vec<usize>>,
    pub points: BTreeMap<Vec<i64>, Weight>,
}

impl HatPoints {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn table(&self) -> MultiplicityTable {
        let mut t = MultiplicityTable::new();
        for nu in self.points.values() {
            *t.entry(nu.clone()).or_insert(0) += 1;
        }
        t
    }
}

pub fn lattice_points(rs: &RootSystem, word: &[usize], a: &[i64], level: i64, budget: usize) -> Result<LatticePointSet> {
    if level < 1 {
        return Err(Error::InvalidArgument(format!("level must be positive, got {level}")));
    }
    let scaled: Vec<i64> = a.iter().map(|x| x * level).collect();
    let crystal = GenDemazureCrystal::from_word(rs, word, &scaled, budget)?;
    Ok(LatticePointSet { word: word.to_vec(), level, points: crystal.omega_points() })
}

fn check_full_first(rs: &RootSystem, subsets: &[Vec<usize>]) -> Result<()> {
    let full: Vec<usize> = (1..=rs.rank()).collect();
    match subsets.first() {
        Some(first) if *first == full => Ok(()),
        _ => Err(Error::Unsupported(format!("first subset must be {full:?}"))),
    }
}

fn hat_from_crystal(rs: &RootSystem, crystal: &GenDemazureCrystal, weights: &[Weight], words: &[Vec<usize>]) -> HatPoints {
    let n1 = crystal.block_lengths()[0];
    let word = crystal.word();
    let top = weights.iter().fold(Weight::zero(rs.rank()), |acc, w| &acc + w);
    let mut points = BTreeMap::new();
    for (_, x) in crystal.entries() {
        let hat = x[n1..].to_vec();
        if let std::collections::btree_map::Entry::Vacant(slot) = points.entry(hat) {
            let nu = rs.lower(&top, &word[n1..], slot.key());
            slot.insert(nu);
        }
    }
    HatPoints { words: words.to_vec(), points }
}

pub fn hat_lattice_points(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
    budget: usize,
) -> Result<HatPoints> {
    check_full_first(rs, subsets)?;
    let crystal = GenDemazureCrystal::from_subsets(rs, subsets, words, weights, budget)?;
    Ok(hat_from_crystal(rs, &crystal, weights, words))
}

/// Number of hat points whose weight `λ_1 + ⋯ + λ_r − Σ x_{k,l} α_{i_{k,l}}` is `ν`.
pub fn multiplicity(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
    nu: &Weight,
    budget: usize,
) -> Result<u64> {
    rs.check_dominant(nu)?;
    let hat = hat_lattice_points(rs, subsets, words, weights, budget)?;
    Ok(hat.points.values().filter(|w| *w == nu).count() as u64)
}

/// Multiplicities in `V(λ_1) ⊗ ⋯ ⊗ V(λ_r)`, counted with `𝓘 = ([n], …, [n])`.
pub fn tensor_decompose(rs: &RootSystem, weights: &[Weight], budget: usize) -> Result<MultiplicityTable> {
    if weights.is_empty() {
        return Err(Error::InvalidArgument("at least one weight is required".into()));
    }
    let full: Vec<usize> = (1..=rs.rank()).collect();
    let subsets = vec![full.clone(); weights.len()];
    let words = vec![rs.longest_word(&full)?; weights.len()];
    Ok(hat_lattice_points(rs, &subsets, &words, weights, budget)?.table())
}

/// Number of connected components; `([n], 0)` is prepended when `I_1 ≠ [n]`.
pub fn component_count(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
    budget: usize,
) -> Result<usize> {
    let full: Vec<usize> = (1..=rs.rank()).collect();
    if subsets.first() == Some(&full) {
        return Ok(hat_lattice_points(rs, subsets, words, weights, budget)?.len());
    }
    let mut s = vec![full.clone()];
    s.extend_from_slice(subsets);
    let mut w = vec![rs.longest_word(&full)?];
    w.extend_from_slice(words);
    let mut l = vec![Weight::zero(rs.rank())];
    l.extend_from_slice(weights);
    Ok(hat_lattice_points(rs, &s, &w, &l, budget)?.len())
}

/// First-block coordinates of all Ω-points lying over the hat point `x`.
pub fn fiber_string_points(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
    x: &[i64],
    budget: usize,
) -> Result<Vec<Vec<i64>>> {
    check_full_first(rs, subsets)?;
    let crystal = GenDemazureCrystal::from_subsets(rs, subsets, words, weights, budget)?;
    let n1 = crystal.block_lengths()[0];
    let fiber: BTreeSet<Vec<i64>> = crystal
        .entries()
        .filter(|(_, p)| p[n1..] == *x)
        .map(|(_, p)| p[..n1].to_vec())
        .collect();
    if fiber.is_empty() {
        return Err(Error::InvalidArgument(format!("{x:?} is not a hat lattice point")));
    }
    Ok(fiber.into_iter().collect())
}

/// One row per point; columns `x{k}_{l}` grouped by block.
pub fn points_to_csv(points: &[Vec<i64>], block_lengths: &[usize]) -> String {
    let mut out = String::new();
    let header: Vec<String> = block_lengths
        .iter()
        .enumerate()
        .flat_map(|(k, &n)| (1..=n).map(move |l| format!("x{}_{}", k + 1, l)))
        .collect();
    writeln!(out, "{}", header.join(",")).unwrap();
    for p in points {
        let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    out
}
