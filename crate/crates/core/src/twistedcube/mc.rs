//! Seeded Monte-Carlo estimates of the signed measure.
//!
//! Samples are drawn uniformly from the integer bounding box of the cube.
//! Work is split into a fixed number of shards; shard `s` uses the ChaCha
//! stream `s` of the master seed, and shard results are merged in shard
//! order, so output depends only on `(seed, samples, shards)` and never on
//! thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{ProjectionMap, TwistedCube};
use crate::error::{Error, Result};

pub const DEFAULT_SHARDS: u64 = 16;

#[derive(Clone, Debug, Serialize)]
pub struct McEstimate {
    pub samples: u64,
    pub seed: u64,
    pub box_volume: f64,
    /// One entry per requested multi-index.
    pub mean: Vec<f64>,
    pub std_error: Vec<f64>,
}

/// Signed histogram of `L_* m_{C(i,a)}` restricted to `axes`.
#[derive(Clone, Debug, Serialize)]
pub struct Histogram {
    pub axes: Vec<usize>,
    pub bins: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    /// Row-major over axes, first axis slowest.
    pub values: Vec<f64>,
}

impl Histogram {
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn bin_width(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / self.bins as f64
    }

    /// Multi-index of the flat bin `k`.
    pub fn unflatten(&self, mut k: usize) -> Vec<usize> {
        let d = self.axes.len();
        let mut idx = vec![0; d];
        for a in (0..d).rev() {
            idx[a] = k % self.bins;
            k /= self.bins;
        }
        idx
    }

    pub fn center(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(a, &b)| self.lo[a] + (b as f64 + 0.5) * self.bin_width(a))
            .collect()
    }
}

fn run_shards<S, F>(cube: &TwistedCube, samples: u64, seed: u64, shards: u64, init: impl Fn() -> S + Sync, step: F) -> Vec<S>
where
    S: Send,
    F: Fn(&mut S, &[f64], i8) + Sync,
{
    let bx = cube.bounding_box();
    (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let share = samples / shards + u64::from(s < samples % shards);
            let mut state = init();
            let mut x = vec![0.0; bx.len()];
            for _ in 0..share {
                for (xi, &(lo, hi)) in x.iter_mut().zip(&bx) {
                    *xi = lo as f64 + (hi - lo) as f64 * rng.gen::<f64>();
                }
                let rho = cube.density_f64(&x);
                step(&mut state, &x, rho);
            }
            state
        })
        .collect()
}

fn box_volume(cube: &TwistedCube) -> f64 {
    cube.bounding_box().iter().map(|&(lo, hi)| (hi - lo) as f64).product()
}

/// Estimates `∫ (Lx)^m ρ dx` for each multi-index in `moments`.
pub fn mc_estimate(
    cube: &TwistedCube,
    l: &ProjectionMap,
    moments: &[Vec<u32>],
    samples: u64,
    seed: u64,
    shards: u64,
) -> Result<McEstimate> {
    if samples == 0 || shards == 0 {
        return Err(Error::InvalidArgument("sample and shard counts must be positive".into()));
    }
    if l.cols() != cube.dim() || moments.iter().any(|m| m.len() != l.rows()) {
        return Err(Error::InvalidArgument("moment multi-indices do not match the projection".into()));
    }
    let k = moments.len();
    let volume = box_volume(cube);
    let parts = run_shards(
        cube,
        samples,
        seed,
        shards,
        || (vec![0.0f64; k], vec![0.0f64; k]),
        |(sum, sumsq), x, rho| {
            if rho == 0 {
                return;
            }
            let y = l.apply_f64(x);
            for (j, m) in moments.iter().enumerate() {
                let g: f64 = y.iter().zip(m).map(|(v, &e)| v.powi(e as i32)).product();
                let v = f64::from(rho) * g * volume;
                sum[j] += v;
                sumsq[j] += v * v;
            }
        },
    );
    let (mut sum, mut sumsq) = (vec![0.0; k], vec![0.0; k]);
    for (s, q) in parts {
        for j in 0..k {
            sum[j] += s[j];
            sumsq[j] += q[j];
        }
    }
    let n = samples as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let std_error = (0..k)
        .map(|j| {
            let var = (sumsq[j] / n - mean[j] * mean[j]).max(0.0) * n / (n - 1.0).max(1.0);
            (var / n).sqrt()
        })
        .collect();
    Ok(McEstimate { samples, seed, box_volume: volume, mean, std_error })
}

/// Bins `Lx` (restricted to `axes`) over the image of the bounding box;
/// each bin holds `(box volume / samples) · Σ ρ`.
pub fn mc_histogram(
    cube: &TwistedCube,
    l: &ProjectionMap,
    axes: &[usize],
    bins: usize,
    samples: u64,
    seed: u64,
    shards: u64,
) -> Result<Histogram> {
    if samples == 0 || shards == 0 {
        return Err(Error::InvalidArgument("sample and shard counts must be positive".into()));
    }
    if bins == 0 || axes.is_empty() {
        return Err(Error::InvalidArgument("need at least one bin and one axis".into()));
    }
    if l.cols() != cube.dim() {
        return Err(Error::InvalidArgument("projection does not match the cube dimension".into()));
    }
    if let Some(&bad) = axes.iter().find(|&&a| a >= l.rows()) {
        return Err(Error::InvalidArgument(format!("axis {bad} out of range 0..{}", l.rows())));
    }
    let image = l.image_box(&cube.bounding_box());
    let (lo, hi): (Vec<f64>, Vec<f64>) = axes
        .iter()
        .map(|&a| {
            let (p, q) = image[a];
            if p == q {
                (p as f64 - 0.5, q as f64 + 0.5)
            } else {
                (p as f64, q as f64)
            }
        })
        .unzip();
    let cells = bins.pow(axes.len() as u32);
    let parts = run_shards(
        cube,
        samples,
        seed,
        shards,
        || vec![0i64; cells],
        |counts, x, rho| {
            if rho == 0 {
                return;
            }
            let y = l.apply_f64(x);
            let mut flat = 0;
            for (d, &a) in axes.iter().enumerate() {
                let t = (y[a] - lo[d]) / (hi[d] - lo[d]);
                let b = ((t * bins as f64).floor() as isize).clamp(0, bins as isize - 1) as usize;
                flat = flat * bins + b;
            }
            counts[flat] += i64::from(rho);
        },
    );
    let mut counts = vec![0i64; cells];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    let scale = box_volume(cube) / samples as f64;
    Ok(Histogram {
        axes: axes.to_vec(),
        bins,
        lo,
        hi,
        samples,
        seed,
        values: counts.into_iter().map(|c| c as f64 * scale).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    #[test]
    fn seeded_runs_repeat() {
        let a2 = RootSystem::type_a(2);
        let cube = TwistedCube::new(&a2, &[1, 2, 1], &[1, 1, 1]).unwrap();
        let l = ProjectionMap::identity(3);
        let a = mc_estimate(&cube, &l, &[vec![0, 0, 0]], 20_000, 7, DEFAULT_SHARDS).unwrap();
        let b = mc_estimate(&cube, &l, &[vec![0, 0, 0]], 20_000, 7, DEFAULT_SHARDS).unwrap();
        assert_eq!(a.mean, b.mean);
        let c = mc_estimate(&cube, &l, &[vec![0, 0, 0]], 20_000, 8, DEFAULT_SHARDS).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn one_dimensional_histogram() {
        let a1 = RootSystem::type_a(1);
        let cube = TwistedCube::new(&a1, &[1], &[2]).unwrap();
        let h = mc_histogram(&cube, &ProjectionMap::identity(1), &[0], 4, 100_000, 1, DEFAULT_SHARDS).unwrap();
        // The box is exactly [−2, 0], so every sample lands inside.
        assert!((h.total() - 2.0).abs() < 1e-9);
        let zero = TwistedCube::new(&a1, &[1], &[0]).unwrap();
        let h = mc_histogram(&zero, &ProjectionMap::identity(1), &[0], 4, 1000, 1, DEFAULT_SHARDS).unwrap();
        assert!(h.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_empty_runs() {
        let a1 = RootSystem::type_a(1);
        let cube = TwistedCube::new(&a1, &[1], &[2]).unwrap();
        let l = ProjectionMap::identity(1);
        assert!(mc_histogram(&cube, &l, &[0], 4, 0, 1, DEFAULT_SHARDS).is_err());
        assert!(mc_estimate(&cube, &l, &[vec![0]], 0, 1, DEFAULT_SHARDS).is_err());
    }
}
