use std::fmt::Write as _;

use serde::Serialize;

use super::{f_closure, Crystal, PathCrystal, PathElement};
use crate::error::Result;
use crate::rootsys::{RootSystem, Weight};

pub const DEFAULT_BUDGET: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// The crystal graph of one `B(λ)`, with every operator tabulated.
///
/// Vertices are numbered in breadth-first order from `b_λ` (labels ascending,
/// FIFO frontier), so vertex 0 is always the highest element.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    rank: usize,
    highest: Weight,
    paths: Vec<PathElement>,
    weights: Vec<Weight>,
    // [vertex * rank + (i - 1)]
    f: Vec<u32>,
    e: Vec<u32>,
    eps: Vec<i64>,
    phi: Vec<i64>,
}

#[derive(Serialize)]
struct VertexRecord<'a> {
    index: usize,
    weight: &'a Weight,
}

#[derive(Serialize)]
struct GraphRecord<'a> {
    highest_weight: &'a Weight,
    vertices: Vec<VertexRecord<'a>>,
    edges: Vec<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn generate(rs: &RootSystem, lambda: &Weight, budget: usize) -> Result<Self> {
        rs.check_dominant(lambda)?;
        let n = rs.rank();
        let pc = PathCrystal::new(rs.clone());
        let labels: Vec<usize> = (1..=n).collect();
        let set = f_closure(&pc, [PathElement::straight(lambda)], &labels, budget)?;
        let count = set.len();
        let mut f = vec![NONE; count * n];
        let mut e = vec![NONE; count * n];
        let mut eps = vec![0; count * n];
        let mut phi = vec![0; count * n];
        let mut weights = Vec::with_capacity(count);
        for (v, b) in set.iter().enumerate() {
            weights.push(b.endpoint());
            for i in 1..=n {
                let slot = v * n + i - 1;
                eps[slot] = b.epsilon(i);
                phi[slot] = b.phi(i);
                if let Some(next) = b.f(rs, i) {
                    let u = set.get_index_of(&next).expect("closure is f-stable") as u32;
                    f[slot] = u;
                    e[u as usize * n + i - 1] = v as u32;
                }
            }
        }
        Ok(CrystalGraph {
            rank: n,
            highest: lambda.clone(),
            paths: set.into_iter().collect(),
            weights,
            f,
            e,
            eps,
            phi,
        })
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn path(&self, v: u32) -> &PathElement {
        &self.paths[v as usize]
    }

    pub fn vertex_of(&self, path: &PathElement) -> Option<u32> {
        self.paths.iter().position(|p| p == path).map(|v| v as u32)
    }

    pub fn weight(&self, v: u32) -> &Weight {
        &self.weights[v as usize]
    }

    /// `(source, label, target)` for every `f`-arrow, sorted.
    pub fn edges(&self) -> Vec<(u32, usize, u32)> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            for i in 1..=self.rank {
                let u = self.f[v * self.rank + i - 1];
                if u != NONE {
                    out.push((v as u32, i, u));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let record = GraphRecord {
            highest_weight: &self.highest,
            vertices: self
                .weights
                .iter()
                .enumerate()
                .map(|(index, weight)| VertexRecord { index, weight })
                .collect(),
            edges: self.edges().into_iter().map(|(s, i, t)| (s as usize, i, t as usize)).collect(),
        };
        serde_json::to_value(record).expect("plain data serializes")
    }

    /// Plain-text edge list, one `src -label-> dst` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (s, i, t) in self.edges() {
            writeln!(out, "{s} -{i}-> {t}").unwrap();
        }
        out
    }
}

impl Crystal for CrystalGraph {
    type Elem = u32;

    fn rank(&self) -> usize {
        self.rank
    }

    fn f(&self, b: &u32, i: usize) -> Option<u32> {
        let u = self.f[*b as usize * self.rank + i - 1];
        (u != NONE).then_some(u)
    }

    fn e(&self, b: &u32, i: usize) -> Option<u32> {
        let u = self.e[*b as usize * self.rank + i - 1];
        (u != NONE).then_some(u)
    }

    fn epsilon(&self, b: &u32, i: usize) -> i64 {
        self.eps[*b as usize * self.rank + i - 1]
    }

    fn phi(&self, b: &u32, i: usize) -> i64 {
        self.phi[*b as usize * self.rank + i - 1]
    }

    fn wt(&self, b: &u32) -> Weight {
        self.weights[*b as usize].clone()
    }
}
