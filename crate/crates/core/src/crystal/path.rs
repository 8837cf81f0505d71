//! Littelmann paths and root operators.
//!
//! A path is a concatenation of straight segments. Each segment stores its
//! velocity (an integral weight) and how long it lasts, so the endpoint is
//! `Σ duration · direction`. Root operators only ever reflect velocities on a
//! window `[t0, t1]`; the portion after `t1` then automatically sits shifted
//! by `−α_i`, which is why no translation bookkeeping is needed.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Crystal;
use crate::rootsys::{RootSystem, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub direction: Weight,
    pub duration: Rational64,
}

/// Piecewise-linear path in the weight lattice, in canonical normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathElement {
    segments: Vec<Segment>,
}

impl PathElement {
    /// The straight line `t ↦ tλ`.
    pub fn straight(lambda: &Weight) -> Self {
        PathElement {
            segments: vec![Segment { direction: lambda.clone(), duration: Rational64::one() }],
        }
    }

    /// Builds a path from raw segments, normalizing. Durations must be
    /// positive-or-zero and sum to one.
    pub fn from_segments(segments: Vec<Segment>) -> Self {
        let total: Rational64 = segments.iter().map(|s| s.duration).sum();
        assert_eq!(total, Rational64::one(), "durations must sum to 1");
        assert!(segments.iter().all(|s| !s.duration.is_negative()));
        let mut p = PathElement { segments };
        p.normalize();
        p
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn endpoint(&self) -> Weight {
        let rank = self.segments[0].direction.rank();
        let coords = (0..rank)
            .map(|j| {
                let v: Rational64 = self
                    .segments
                    .iter()
                    .map(|s| s.duration * Rational64::from(s.direction.coords()[j]))
                    .sum();
                debug_assert!(v.is_integer(), "path endpoint is not integral");
                v.to_integer()
            })
            .collect();
        Weight::new(coords)
    }

    fn normalize(&mut self) {
        let mut out: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for seg in self.segments.drain(..) {
            if seg.duration.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.direction == seg.direction => last.duration += seg.duration,
                _ => out.push(seg),
            }
        }
        self.segments = out;
    }

    // Heights h(T_k) = ⟨π(T_k), α_i^∨⟩ at the breakpoints T_0 = 0 < … < T_m = 1.
    fn heights(&self, i: usize) -> Vec<Rational64> {
        let mut h = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = Rational64::zero();
        h.push(acc);
        for s in &self.segments {
            acc += s.duration * Rational64::from(s.direction.coords()[i - 1]);
            h.push(acc);
        }
        h
    }

    fn minimum(&self, i: usize) -> (Vec<Rational64>, Rational64) {
        let h = self.heights(i);
        let m = *h.iter().min().unwrap();
        (h, m)
    }

    /// `ε_i = −min_t h(t)`.
    pub fn epsilon(&self, i: usize) -> i64 {
        let (_, m) = self.minimum(i);
        debug_assert!(m.is_integer());
        -m.to_integer()
    }

    /// `φ_i = h(1) − min_t h(t)`.
    pub fn phi(&self, i: usize) -> i64 {
        let (h, m) = self.minimum(i);
        let v = *h.last().unwrap() - m;
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    // Splits the segment containing `t` (0 < t < 1) so that `t` becomes a
    // breakpoint; returns the index of the segment starting at `t`.
    fn split_at(&mut self, t: Rational64) -> usize {
        let mut start = Rational64::zero();
        for k in 0..self.segments.len() {
            if start == t {
                return k;
            }
            let end = start + self.segments[k].duration;
            if t < end {
                let tail = Segment {
                    direction: self.segments[k].direction.clone(),
                    duration: end - t,
                };
                self.segments[k].duration = t - start;
                self.segments.insert(k + 1, tail);
                return k + 1;
            }
            start = end;
        }
        self.segments.len()
    }

    fn reflect_window(&mut self, rs: &RootSystem, i: usize, t0: Rational64, t1: Rational64) {
        let k0 = self.split_at(t0);
        let k1 = self.split_at(t1);
        let alpha = rs.simple_root(i);
        for seg in &mut self.segments[k0..k1] {
            let c = seg.direction.coords()[i - 1];
            seg.direction = &seg.direction - &alpha.scale(c);
        }
        self.normalize();
    }

    fn breakpoints(&self) -> Vec<Rational64> {
        let mut t = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = Rational64::zero();
        t.push(acc);
        for s in &self.segments {
            acc += s.duration;
            t.push(acc);
        }
        t
    }

    /// Root operator `f_i`.
    pub fn f(&self, rs: &RootSystem, i: usize) -> Option<PathElement> {
        let (h, m) = self.minimum(i);
        let one = Rational64::one();
        if *h.last().unwrap() - m < one {
            return None;
        }
        let times = self.breakpoints();
        let k0 = (0..h.len()).rev().find(|&k| h[k] == m).unwrap();
        let target = m + one;
        let t0 = times[k0];
        let mut t1 = None;
        for k in k0..self.segments.len() {
            if h[k + 1] >= target {
                let slope = Rational64::from(self.segments[k].direction.coords()[i - 1]);
                t1 = Some(times[k] + (target - h[k]) / slope);
                break;
            }
        }
        let mut out = self.clone();
        out.reflect_window(rs, i, t0, t1.expect("h(1) ≥ m + 1"));
        Some(out)
    }

    /// Root operator `e_i`.
    pub fn e(&self, rs: &RootSystem, i: usize) -> Option<PathElement> {
        let (h, m) = self.minimum(i);
        if m.is_zero() {
            return None;
        }
        let times = self.breakpoints();
        let k1 = (0..h.len()).find(|&k| h[k] == m).unwrap();
        let target = m + Rational64::one();
        let t1 = times[k1];
        let mut t0 = None;
        for k in (0..k1).rev() {
            if h[k] >= target {
                let slope = Rational64::from(self.segments[k].direction.coords()[i - 1]);
                t0 = Some(times[k] + (target - h[k]) / slope);
                break;
            }
        }
        let mut out = self.clone();
        out.reflect_window(rs, i, t0.expect("h(0) = 0 ≥ m + 1"), t1);
        Some(out)
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("({})x{}", s.direction, s.duration))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for PathElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<(&Weight, String)> = self
            .segments
            .iter()
            .map(|s| (&s.direction, s.duration.to_string()))
            .collect();
        raw.serialize(serializer)
    }
}

/// All Littelmann paths of a root system, viewed as one (large) crystal.
#[derive(Clone, Debug)]
pub struct PathCrystal {
    rs: RootSystem,
}

impl PathCrystal {
    pub fn new(rs: RootSystem) -> Self {
        PathCrystal { rs }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }
}

impl Crystal for PathCrystal {
    type Elem = PathElement;

    fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn f(&self, b: &PathElement, i: usize) -> Option<PathElement> {
        b.f(&self.rs, i)
    }

    fn e(&self, b: &PathElement, i: usize) -> Option<PathElement> {
        b.e(&self.rs, i)
    }

    fn epsilon(&self, b: &PathElement, i: usize) -> i64 {
        b.epsilon(i)
    }

    fn phi(&self, b: &PathElement, i: usize) -> i64 {
        b.phi(i)
    }

    fn wt(&self, b: &PathElement) -> Weight {
        b.endpoint()
    }
}
