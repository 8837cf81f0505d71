//! Demazure crystals, generalized Demazure crystals, and string vectors.
//!
//! A generalized Demazure crystal is described by blocks `(λ_k, word_k)`:
//!
//! ```text
//! S_r = f_{w_r}^* b_{λ_r},    S_k = f_{w_k}^* (b_{λ_k} ⊗ S_{k+1})
//! ```
//!
//! where `f_w^* S = ⋃ f_{w_1}^{x_1} ⋯ f_{w_m}^{x_m} S`. The innermost letter
//! acts first, so each block is saturated from its last letter to its first.
//! `B_{i,a}` is the special case of one-letter blocks `(a_k ϖ_{i_k}, (i_k))`.

use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::Serialize;

use crate::crystal::{highest_weight_decompose, Crystal, CrystalGraph, MultiplicityTable, PathElement, TensorCrystal};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// How a generalized Demazure crystal was specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    Demazure { weight: Weight, word: Vec<usize> },
    Word { word: Vec<usize>, a: Vec<i64> },
    Subsets { subsets: Vec<Vec<usize>>, words: Vec<Vec<usize>>, weights: Vec<Weight> },
}

#[derive(Clone, Debug)]
struct Block {
    word: Vec<usize>,
}

/// Elements are tuples of vertex indices, one per tensor factor, into the
/// graphs of `B(λ_1), …, B(λ_r)`.
#[derive(Clone, Debug)]
pub struct GenDemazureCrystal {
    shape: Shape,
    blocks: Vec<Block>,
    tensor: TensorCrystal<Arc<CrystalGraph>>,
    elements: IndexSet<Vec<u32>>,
    omega: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct DemazureExport<'a> {
    pub shape: &'a Shape,
    pub word: Vec<usize>,
    pub element_count: usize,
    pub omega: Vec<Vec<i64>>,
    pub components: Option<KeyedTable>,
}

/// Multiplicity table keyed by `"c1,c2,…"` strings, for JSON export.
pub type KeyedTable = std::collections::BTreeMap<String, u64>;

pub fn keyed(table: &MultiplicityTable) -> KeyedTable {
    table.iter().map(|(w, &c)| (w.key(), c)).collect()
}

fn string_closure<C: Crystal>(
    crystal: &C,
    set: IndexSet<C::Elem>,
    i: usize,
    budget: usize,
) -> Result<IndexSet<C::Elem>> {
    let mut out = IndexSet::with_capacity(set.len());
    for b in set {
        let mut cur = Some(b);
        while let Some(x) = cur {
            cur = crystal.f(&x, i);
            if out.insert(x) && out.len() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
    }
    Ok(out)
}

impl GenDemazureCrystal {
    fn build(
        rs: &RootSystem,
        shape: Shape,
        weights: Vec<Weight>,
        words: Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<Self> {
        let mut cache: HashMap<Weight, Arc<CrystalGraph>> = HashMap::new();
        let mut graphs = Vec::with_capacity(weights.len());
        for lam in &weights {
            if let Some(g) = cache.get(lam) {
                graphs.push(g.clone());
                continue;
            }
            let g = Arc::new(CrystalGraph::generate(rs, lam, budget)?);
            cache.insert(lam.clone(), g.clone());
            graphs.push(g);
        }
        let r = graphs.len();
        let mut current: IndexSet<Vec<u32>> = IndexSet::from([Vec::new()]);
        for k in (0..r).rev() {
            let suffix = TensorCrystal::new(graphs[k..].to_vec());
            let mut set: IndexSet<Vec<u32>> = current
                .into_iter()
                .map(|s| {
                    let mut v = Vec::with_capacity(s.len() + 1);
                    v.push(0);
                    v.extend(s);
                    v
                })
                .collect();
            for &i in words[k].iter().rev() {
                set = string_closure(&suffix, set, i, budget)?;
            }
            current = set;
        }
        let blocks: Vec<Block> = words.into_iter().map(|word| Block { word }).collect();
        let tensor = TensorCrystal::new(graphs);
        let mut crystal = GenDemazureCrystal { shape, blocks, tensor, elements: current, omega: Vec::new() };
        crystal.omega = crystal
            .elements
            .iter()
            .map(|b| crystal.string_vector(b))
            .collect::<Result<_>>()?;
        Ok(crystal)
    }

    /// `B_{i,a} ⊂ B(a_1ϖ_{i_1}) ⊗ ⋯ ⊗ B(a_Nϖ_{i_N})`.
    pub fn from_word(rs: &RootSystem, word: &[usize], a: &[i64], budget: usize) -> Result<Self> {
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
        if let Some((position, &value)) = a.iter().enumerate().find(|(_, &v)| v < 0) {
            return Err(Error::NegativeEntry { position: position + 1, value });
        }
        let weights = word
            .iter()
            .zip(a)
            .map(|(&i, &ak)| Weight::fundamental(rs.rank(), i).scale(ak))
            .collect();
        let words = word.iter().map(|&i| vec![i]).collect();
        let shape = Shape::Word { word: word.to_vec(), a: a.to_vec() };
        Self::build(rs, shape, weights, words, budget)
    }

    /// `B_{𝓘,λ_1,…,λ_r}` realized with the word blocks `words`.
    pub fn from_subsets(
        rs: &RootSystem,
        subsets: &[Vec<usize>],
        words: &[Vec<usize>],
        weights: &[Weight],
        budget: usize,
    ) -> Result<Self> {
        rs.check_word_sequence(subsets, words)?;
        if weights.len() != subsets.len() {
            return Err(Error::Incompatible(format!(
                "{} subsets but {} weights",
                subsets.len(),
                weights.len()
            )));
        }
        for lam in weights {
            rs.check_dominant(lam)?;
        }
        let shape = Shape::Subsets {
            subsets: subsets.to_vec(),
            words: words.to_vec(),
            weights: weights.to_vec(),
        };
        Self::build(rs, shape, weights.to_vec(), words.to_vec(), budget)
    }

    /// Demazure crystal `B_w(λ)` for a reduced word of `w`, as a one-factor crystal.
    pub fn demazure(rs: &RootSystem, lambda: &Weight, word: &[usize], budget: usize) -> Result<Self> {
        rs.check_dominant(lambda)?;
        if !rs.is_reduced(word)? {
            return Err(Error::NonReducedWord(word.to_vec()));
        }
        let shape = Shape::Demazure { weight: lambda.clone(), word: word.to_vec() };
        Self::build(rs, shape, vec![lambda.clone()], vec![word.to_vec()], budget)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn tensor(&self) -> &TensorCrystal<Arc<CrystalGraph>> {
        &self.tensor
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &IndexSet<Vec<u32>> {
        &self.elements
    }

    pub fn contains(&self, b: &[u32]) -> bool {
        self.elements.contains(b)
    }

    /// Concatenation of all blocks.
    pub fn word(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.word.iter().copied()).collect()
    }

    pub fn block_lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.word.len()).collect()
    }

    /// Ω-vector of the `k`-th element (generation order).
    pub fn omega_at(&self, k: usize) -> &[i64] {
        &self.omega[k]
    }

    /// `(element, Ω)` pairs in generation order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<i64>)> {
        self.elements.iter().zip(&self.omega)
    }

    /// Ω-image, sorted lexicographically.
    pub fn omega_points(&self) -> Vec<Vec<i64>> {
        let mut pts = self.omega.clone();
        pts.sort();
        pts
    }

    pub fn omega(&self, b: &[u32]) -> Result<Vec<i64>> {
        match self.elements.get_index_of(b) {
            Some(k) => Ok(self.omega[k].clone()),
            None => Err(Error::NotInCrystal(format!("{b:?}"))),
        }
    }

    // Maximal e-strings block by block, peeling the exposed highest factor.
    fn string_vector(&self, b: &[u32]) -> Result<Vec<i64>> {
        let factors = self.tensor.factors();
        if b.len() != factors.len() {
            return Err(Error::NotInCrystal(format!("{b:?} has the wrong number of factors")));
        }
        let mut out = Vec::new();
        let mut cur = b.to_vec();
        for (k, block) in self.blocks.iter().enumerate() {
            let suffix = TensorCrystal::new(factors[k..].to_vec());
            for &i in &block.word {
                let x = suffix.epsilon(&cur, i);
                cur = suffix.e_pow(&cur, i, x).expect("ε_i counts available e_i steps");
                out.push(x);
            }
            if cur[0] != 0 {
                return Err(Error::NotInCrystal(format!(
                    "{b:?}: factor {} is not highest after block {}",
                    k + 1,
                    k + 1
                )));
            }
            cur.remove(0);
        }
        Ok(out)
    }

    /// Rebuilds the element with string vector `x`, or `None` if some
    /// operator application vanishes.
    pub fn reconstruct(&self, x: &[i64]) -> Option<Vec<u32>> {
        let factors = self.tensor.factors();
        if x.len() != self.word().len() {
            return None;
        }
        let mut offsets = vec![0];
        for b in &self.blocks {
            offsets.push(offsets.last().unwrap() + b.word.len());
        }
        let mut cur: Vec<u32> = Vec::new();
        for k in (0..self.blocks.len()).rev() {
            cur.insert(0, 0);
            let suffix = TensorCrystal::new(factors[k..].to_vec());
            for l in (0..self.blocks[k].word.len()).rev() {
                cur = suffix.f_pow(&cur, self.blocks[k].word[l], x[offsets[k] + l])?;
            }
        }
        Some(cur)
    }

    pub fn weight_of(&self, b: &[u32]) -> Weight {
        self.tensor.wt(&b.to_vec())
    }

    pub fn to_paths(&self, b: &[u32]) -> Vec<PathElement> {
        b.iter()
            .zip(self.tensor.factors())
            .map(|(&v, g)| g.path(v).clone())
            .collect()
    }

    /// Highest weights of the connected components (the set must be `e`-closed).
    pub fn decompose(&self) -> Result<MultiplicityTable> {
        let elems: Vec<Vec<u32>> = self.elements.iter().cloned().collect();
        highest_weight_decompose(&self.tensor, &elems)
    }

    pub fn export(&self) -> DemazureExport<'_> {
        DemazureExport {
            shape: &self.shape,
            word: self.word(),
            element_count: self.len(),
            omega: self.omega_points(),
            components: self.decompose().ok().map(|t| keyed(&t)),
        }
    }
}
