//! Integer-vector data attached to `(𝓘, i, λ_1, …, λ_r)`.
//!
//! All four constructions are plain pairing arithmetic on the Cartan matrix;
//! no geometric objects are modeled.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// Line-bundle vector `a`, grouped by block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackVector {
    pub blocks: Vec<Vec<i64>>,
}

impl PullbackVector {
    pub fn flat(&self) -> Vec<i64> {
        self.blocks.iter().flatten().copied().collect()
    }
}

/// Structure vectors `a^{(k,j)}_l ∈ Z^{m_j+1}` of a flag Bott tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BottTowerData {
    pub entries: Vec<TowerEntry>,
}

/// All `a^{(k,j)}_l` for one pair `j < k` (1-based), indexed by `l - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerEntry {
    pub k: usize,
    pub j: usize,
    pub vectors: Vec<Vec<i64>>,
}

impl BottTowerData {
    /// `a^{(k,j)}_l`, all indices 1-based.
    pub fn get(&self, k: usize, j: usize, l: usize) -> Option<&[i64]> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.j == j)
            .and_then(|e| e.vectors.get(l.checked_sub(1)?))
            .map(Vec::as_slice)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BundleReport {
    pub subsets: Vec<Vec<usize>>,
    pub words: Vec<Vec<usize>>,
    pub pullback: Vec<i64>,
    pub mu: Weight,
    pub degeneration: Vec<Vec<i64>>,
    pub tower: BottTowerData,
}

fn check_weights(rs: &RootSystem, r: usize, weights: &[Weight]) -> Result<()> {
    if weights.len() != r {
        return Err(Error::Incompatible(format!("{r} subsets but {} weights", weights.len())));
    }
    weights.iter().try_for_each(|w| rs.check_weight(w))
}

/// `a_k(l) = ⟨λ_k, α_s^∨⟩ + Σ_{j>k, s ∉ blocks k+1..j} ⟨λ_j, α_s^∨⟩` when `l`
/// is the last occurrence of `s = i_{k,l}` in block `k`, and 0 otherwise.
pub fn pullback_vector(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
) -> Result<PullbackVector> {
    rs.check_word_sequence(subsets, words)?;
    check_weights(rs, subsets.len(), weights)?;
    let r = words.len();
    let mut blocks = Vec::with_capacity(r);
    for k in 0..r {
        let word = &words[k];
        let mut block = vec![0; word.len()];
        for (l, &s) in word.iter().enumerate() {
            if word[l + 1..].contains(&s) {
                continue;
            }
            let mut value = weights[k].coords()[s - 1];
            for j in k + 1..r {
                if words[j].contains(&s) {
                    break;
                }
                value += weights[j].coords()[s - 1];
            }
            block[l] = value;
        }
        blocks.push(block);
    }
    Ok(PullbackVector { blocks })
}

/// `μ = Σ_j Σ_{s ∉ blocks 1..j} ⟨λ_j, α_s^∨⟩ ϖ_s`.
pub fn mu_weight(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
) -> Result<Weight> {
    rs.check_word_sequence(subsets, words)?;
    check_weights(rs, subsets.len(), weights)?;
    let n = rs.rank();
    let mut seen = vec![false; n];
    let mut mu = vec![0; n];
    for (word, lam) in words.iter().zip(weights) {
        for &s in word {
            seen[s - 1] = true;
        }
        for s in 0..n {
            if !seen[s] {
                mu[s] += lam.coords()[s];
            }
        }
    }
    Ok(Weight::new(mu))
}

/// `a_k(l) = ⟨λ_k + ⋯ + λ_r, α^∨_{u_{k,l}} + ⋯ + α^∨_{u_{k,m_k}}⟩`, padded with a
/// trailing 0, where `u_k` is the type-A enumeration of `I_k`.
pub fn degeneration_vectors(rs: &RootSystem, subsets: &[Vec<usize>], weights: &[Weight]) -> Result<Vec<Vec<i64>>> {
    check_weights(rs, subsets.len(), weights)?;
    let r = subsets.len();
    let mut out = Vec::with_capacity(r);
    for k in 0..r {
        let u = rs.type_a_enumeration(&subsets[k])?;
        let tail = weights[k..]
            .iter()
            .fold(Weight::zero(rs.rank()), |acc, w| &acc + w);
        let mut a = vec![0; u.len() + 1];
        for l in (0..u.len()).rev() {
            a[l] = a[l + 1] + tail.coords()[u[l] - 1];
        }
        out.push(a);
    }
    Ok(out)
}

/// `a^{(k,j)}_l(p) = ⟨α_{u_{k,l}} + ⋯ + α_{u_{k,m_k}}, α^∨_{u_{j,p}} + ⋯ + α^∨_{u_{j,m_j}}⟩`,
/// zero when `l = m_k + 1` or `p = m_j + 1`.
pub fn flag_bott_vectors(rs: &RootSystem, subsets: &[Vec<usize>]) -> Result<BottTowerData> {
    let enums: Vec<Vec<usize>> = subsets
        .iter()
        .map(|s| rs.type_a_enumeration(s))
        .collect::<Result<_>>()?;
    let c = rs.cartan();
    let mut entries = Vec::new();
    for k in 1..enums.len() {
        for j in 0..k {
            let (uk, uj) = (&enums[k], &enums[j]);
            let vectors = (0..=uk.len())
                .map(|l| {
                    (0..=uj.len())
                        .map(|p| {
                            uk[l..]
                                .iter()
                                .flat_map(|&a| uj[p..].iter().map(move |&b| c.entry(b, a)))
                                .sum()
                        })
                        .collect()
                })
                .collect();
            entries.push(TowerEntry { k: k + 1, j: j + 1, vectors });
        }
    }
    Ok(BottTowerData { entries })
}

pub fn report(
    rs: &RootSystem,
    subsets: &[Vec<usize>],
    words: &[Vec<usize>],
    weights: &[Weight],
) -> Result<BundleReport> {
    Ok(BundleReport {
        subsets: subsets.to_vec(),
        words: words.to_vec(),
        pullback: pullback_vector(rs, subsets, words, weights)?.flat(),
        mu: mu_weight(rs, subsets, words, weights)?,
        degeneration: degeneration_vectors(rs, subsets, weights)?,
        tower: flag_bott_vectors(rs, subsets)?,
    })
}
