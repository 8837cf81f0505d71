//! Finite-type root data.
//!
//! Weights are stored in the fundamental-weight basis, so pairing a weight
//! with a simple coroot is a coordinate read-off. Roots are stored in the
//! simple-root basis. Simple-root indices are 1-based throughout the public
//! API so that words and subsets read the same way they are written.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integral weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Comma-separated coordinates, e.g. `"2,0,1"`. Used as a map key in exports.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Generalized Cartan matrix with `entries[i][j] = ⟨α_j, α_i^∨⟩` (0-based storage).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = Error;
    fn try_from(entries: Vec<Vec<i64>>) -> Result<Self> {
        CartanMatrix::new(entries)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(c: CartanMatrix) -> Self {
        c.entries
    }
}

impl CartanMatrix {
    /// Validates the Cartan axioms and finite type.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCartan("rank must be positive".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if row[j] > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry ({}, {}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (row[j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({}, {}) and ({}, {}) disagree on vanishing",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let cartan = CartanMatrix { entries };
        let sym = cartan.symmetrizer()?;
        if !cartan.is_positive_definite(&sym) {
            return Err(Error::InvalidCartan("not of finite type".into()));
        }
        Ok(cartan)
    }

    /// Type `A_n` Cartan matrix.
    pub fn type_a(n: usize) -> Self {
        let mut entries = vec![vec![0; n]; n];
        for i in 0..n {
            entries[i][i] = 2;
            if i + 1 < n {
                entries[i][i + 1] = -1;
                entries[i + 1][i] = -1;
            }
        }
        CartanMatrix { entries }
    }

    /// Bundled presets `"A1"` through `"A4"`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "A1" => Ok(Self::type_a(1)),
            "A2" => Ok(Self::type_a(2)),
            "A3" => Ok(Self::type_a(3)),
            "A4" => Ok(Self::type_a(4)),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `⟨α_j, α_i^∨⟩` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    // d_i with d_i c_ij = d_j c_ji, normalized to 1 on the first vertex of each component.
    fn symmetrizer(&self) -> Result<Vec<Rational64>> {
        let n = self.rank();
        let mut d: Vec<Option<Rational64>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Rational64::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].unwrap();
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    let want = di * Rational64::from(self.entries[i][j]) / Rational64::from(self.entries[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(dj) if dj != want => {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(d.into_iter().map(Option::unwrap).collect())
    }

    fn is_positive_definite(&self, sym: &[Rational64]) -> bool {
        let n = self.rank();
        let mut m: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| sym[i] * Rational64::from(self.entries[i][j])).collect())
            .collect();
        // Gaussian elimination without pivoting; every pivot must be positive.
        for k in 0..n {
            let pivot = m[k][k];
            if !pivot.is_positive() {
                return false;
            }
            for i in k + 1..n {
                let factor = m[i][k] / pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let delta = factor * m[k][j];
                    m[i][j] -= delta;
                }
            }
        }
        true
    }
}

/// Root system built from a finite-type Cartan matrix.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    sym: Vec<Rational64>,
    positive: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(cartan: CartanMatrix) -> Self {
        let sym = cartan.symmetrizer().expect("validated at construction");
        let positive = generate_positive_roots(&cartan);
        RootSystem { cartan, sym, positive }
    }

    pub fn type_a(n: usize) -> Self {
        Self::new(CartanMatrix::type_a(n))
    }

    pub fn preset(name: &str) -> Result<Self> {
        Ok(Self::new(CartanMatrix::preset(name)?))
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            Err(Error::RankMismatch { expected: self.rank(), got: w.rank() })
        } else {
            Ok(())
        }
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if w.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(w.key()))
        }
    }

    /// `⟨λ, α_i^∨⟩`.
    pub fn pairing(&self, lambda: &Weight, i: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_weight(lambda)?;
        Ok(lambda.coords()[i - 1])
    }

    /// `α_i` expanded in fundamental weights: coordinate `j` is `⟨α_i, α_j^∨⟩`.
    pub fn simple_root_as_weight(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        Ok(self.simple_root(i))
    }

    pub(crate) fn simple_root(&self, i: usize) -> Weight {
        Weight((1..=self.rank()).map(|j| self.cartan.entry(j, i)).collect())
    }

    /// Converts a simple-root combination to fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let n = self.rank();
        Weight(
            (1..=n)
                .map(|j| (1..=n).map(|i| root[i - 1] * self.cartan.entry(j, i)).sum())
                .collect(),
        )
    }

    /// Positive roots in the simple-root basis, sorted by height then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// `⟨λ, β^∨⟩` for a positive root `β` given in the simple-root basis.
    pub fn coroot_pairing(&self, lambda: &[Rational64], root: &[i64]) -> Rational64 {
        // β^∨ = Σ_j β_j (2 d_j / (β,β)) α_j^∨ with (α_i, α_j) = d_i c_ij.
        let n = self.rank();
        let mut norm = Rational64::zero();
        for i in 0..n {
            for j in 0..n {
                norm += Rational64::from(root[i] * root[j] * self.cartan.rows()[i][j]) * self.sym[i];
            }
        }
        let two = Rational64::from(2);
        (0..n)
            .map(|j| Rational64::from(root[j]) * two * self.sym[j] / norm * lambda[j])
            .sum()
    }

    /// Applies `s_i` to a root given in the simple-root basis.
    pub(crate) fn reflect_root(&self, root: &[i64], i: usize) -> Vec<i64> {
        let pairing: i64 = (1..=self.rank()).map(|j| root[j - 1] * self.cartan.entry(i, j)).sum();
        let mut out = root.to_vec();
        out[i - 1] -= pairing;
        out
    }

    /// Validates a subset of `[n]`: nonempty, strictly increasing, in range.
    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let increasing = subset.windows(2).all(|w| w[0] < w[1]);
        if !increasing || subset.iter().any(|&i| i == 0 || i > self.rank()) {
            return Err(Error::InvalidSubset(subset.to_vec()));
        }
        Ok(())
    }

    /// Number of positive roots supported on `subset`.
    pub fn positive_root_count(&self, subset: &[usize]) -> usize {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        self.positive
            .iter()
            .filter(|r| r.iter().enumerate().all(|(j, &c)| c == 0 || set.contains(&(j + 1))))
            .count()
    }

    // w(α_i) for w = s_{w[0]} ⋯ s_{w[k-1]}.
    fn act_on_simple(&self, word: &[usize], i: usize) -> Vec<i64> {
        let mut root = vec![0; self.rank()];
        root[i - 1] = 1;
        for &s in word.iter().rev() {
            root = self.reflect_root(&root, s);
        }
        root
    }

    /// Whether `word` is a reduced expression.
    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        for &i in word {
            self.check_index(i)?;
        }
        // ℓ(w s_i) > ℓ(w) iff w(α_i) is positive.
        for k in 0..word.len() {
            let image = self.act_on_simple(&word[..k], word[k]);
            if image.iter().any(|&c| c < 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deterministic reduced word for the longest element of `W_I`: at each
    /// step the smallest `i ∈ I` that lengthens the word is appended.
    pub fn longest_word(&self, subset: &[usize]) -> Result<Vec<usize>> {
        self.check_subset(subset)?;
        let mut word = Vec::new();
        'grow: loop {
            for &i in subset {
                if self.act_on_simple(&word, i).iter().all(|&c| c >= 0) {
                    word.push(i);
                    continue 'grow;
                }
            }
            break;
        }
        Ok(word)
    }

    /// Whether `word` is a reduced word for the longest element of `W_I`.
    pub fn is_longest_word(&self, subset: &[usize], word: &[usize]) -> Result<bool> {
        self.check_subset(subset)?;
        if word.iter().any(|i| !subset.contains(i)) {
            return Ok(false);
        }
        if word.len() != self.positive_root_count(subset) {
            return Ok(false);
        }
        self.is_reduced(word)
    }

    /// Validates paired subset/word sequences: equal lengths, valid subsets,
    /// and each block a reduced word for the longest element of `W_{I_k}`.
    pub fn check_word_sequence(&self, subsets: &[Vec<usize>], words: &[Vec<usize>]) -> Result<()> {
        if subsets.len() != words.len() {
            return Err(Error::Incompatible(format!(
                "{} subsets but {} word blocks",
                subsets.len(),
                words.len()
            )));
        }
        for (k, (subset, word)) in subsets.iter().zip(words).enumerate() {
            self.check_subset(subset)?;
            for &i in word {
                self.check_index(i)?;
            }
            if !self.is_longest_word(subset, word)? {
                return Err(Error::Incompatible(format!(
                    "block {} word {word:?} is not a reduced word for the longest element of W_{subset:?}",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// `longest_word(I_k)` for every subset of a sequence.
    pub fn longest_words(&self, subsets: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
        subsets.iter().map(|s| self.longest_word(s)).collect()
    }

    /// Orders `I` as a type-A path: `⟨α_{u_s}, α_{u_t}^∨⟩` is 2 on the
    /// diagonal, −1 for adjacent positions and 0 otherwise. The endpoint with
    /// the smaller index comes first.
    pub fn type_a_enumeration(&self, subset: &[usize]) -> Result<Vec<usize>> {
        self.check_subset(subset)?;
        let m = subset.len();
        let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); m];
        for s in 0..m {
            for t in 0..m {
                if s == t {
                    continue;
                }
                let c = self.cartan.entry(subset[t], subset[s]);
                match c {
                    0 => {}
                    -1 if self.cartan.entry(subset[s], subset[t]) == -1 => neighbours[s].push(t),
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "Levi subgroup on {subset:?} is not of type A"
                        )))
                    }
                }
            }
        }
        let not_type_a = || Error::Unsupported(format!("Levi subgroup on {subset:?} is not of type A"));
        if m == 1 {
            return Ok(subset.to_vec());
        }
        if neighbours.iter().any(|nb| nb.len() > 2 || nb.is_empty()) {
            return Err(not_type_a());
        }
        let start = (0..m).find(|&s| neighbours[s].len() == 1).ok_or_else(not_type_a)?;
        let mut order = vec![start];
        let mut seen: HashSet<usize> = HashSet::from([start]);
        while let Some(&next) = neighbours[*order.last().unwrap()].iter().find(|t| !seen.contains(t)) {
            seen.insert(next);
            order.push(next);
        }
        if order.len() != m {
            return Err(not_type_a());
        }
        Ok(order.into_iter().map(|s| subset[s]).collect())
    }

    /// Weyl dimension formula, evaluated exactly.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u64> {
        self.check_dominant(lambda)?;
        let shifted: Vec<Rational64> = lambda.coords().iter().map(|&c| Rational64::from(c + 1)).collect();
        let rho = vec![Rational64::one(); self.rank()];
        let mut dim = Rational64::one();
        for root in &self.positive {
            dim *= self.coroot_pairing(&shifted, root) / self.coroot_pairing(&rho, root);
        }
        debug_assert!(dim.is_integer());
        Ok(dim.to_integer() as u64)
    }

    /// Subtracts `Σ x_l α_{word_l}` from `lambda`.
    pub fn lower(&self, lambda: &Weight, word: &[usize], exponents: &[i64]) -> Weight {
        let mut out = lambda.coords().to_vec();
        for (&i, &x) in word.iter().zip(exponents) {
            for j in 1..=self.rank() {
                out[j - 1] -= x * self.cartan.entry(j, i);
            }
        }
        Weight(out)
    }
}

fn generate_positive_roots(cartan: &CartanMatrix) -> Vec<Vec<i64>> {
    let n = cartan.rank();
    let reflect = |root: &[i64], i: usize| -> Vec<i64> {
        let pairing: i64 = (0..n).map(|j| root[j] * cartan.rows()[i][j]).sum();
        let mut out = root.to_vec();
        out[i] -= pairing;
        out
    };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        if seen.insert(r.clone()) {
            queue.push_back(r);
        }
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..n {
            let image = reflect(&root, i);
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    positive
}
