//! Dispatch from a parsed job to the library, producing a summary line and
//! the rendered artifact for the requested format.

use std::collections::BTreeMap;

use fbs_core::bundles::{pullback_vector, report};
use fbs_core::crystal::CrystalGraph;
use fbs_core::demazure::{keyed, GenDemazureCrystal};
use fbs_core::stringpoly::{
    component_count, fiber_string_points, lattice_points, multiplicity, points_to_csv, tensor_decompose,
};
use fbs_core::twistedcube::{
    histogram_to_csv, histogram_to_svg, mc_histogram, rational_string, ProjectionMap, TwistedCube, DEFAULT_SHARDS,
};
use fbs_core::{RootSystem, Weight};
use serde::Serialize;
use serde_json::json;

use crate::config::{Command, Format, JobConfig};
use crate::error::CliError;

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_BINS: usize = 32;

pub struct Settings {
    pub budget: usize,
    pub seed: Option<u64>,
    pub echo_word: bool,
}

pub struct Outcome {
    pub summary: String,
    pub artifact: String,
}

/// Words actually used, and whether they were chosen automatically.
struct WordChoice {
    words: Vec<Vec<usize>>,
    auto: bool,
}

impl WordChoice {
    fn describe(&self) -> String {
        let tag = if self.auto { "auto" } else { "given" };
        format!("words={} ({tag})", serde_json::to_string(&self.words).unwrap())
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn weight(rs: &RootSystem, coords: &[i64]) -> Result<Weight, CliError> {
    let w = Weight::new(coords.to_vec());
    rs.check_weight(&w)?;
    Ok(w)
}

fn weights(rs: &RootSystem, list: &[Vec<i64>]) -> Result<Vec<Weight>, CliError> {
    list.iter().map(|c| weight(rs, c)).collect()
}

fn subset_words(rs: &RootSystem, job: &JobConfig) -> Result<(Vec<Vec<usize>>, WordChoice), CliError> {
    let subsets = job.require(&job.subsets, "subsets")?.clone();
    let choice = match &job.words {
        Some(w) => WordChoice { words: w.clone(), auto: false },
        None => WordChoice { words: rs.longest_words(&subsets)?, auto: true },
    };
    rs.check_word_sequence(&subsets, &choice.words)?;
    Ok((subsets, choice))
}

/// `(i, a)` either given directly or obtained from `(𝓘, λ)` through the
/// pullback vector; the projection is `L` in the second case and the identity
/// otherwise.
struct CubeInput {
    word: Vec<usize>,
    a: Vec<i64>,
    projection: ProjectionMap,
    choice: WordChoice,
}

fn cube_input(rs: &RootSystem, job: &JobConfig) -> Result<CubeInput, CliError> {
    if job.subsets.is_some() {
        if job.word.is_some() || job.a.is_some() {
            return Err(CliError::Config("give either subsets/weights or word/a, not both".into()));
        }
        let (subsets, choice) = subset_words(rs, job)?;
        let lams = weights(rs, job.require(&job.weights, "weights")?)?;
        let a = pullback_vector(rs, &subsets, &choice.words, &lams)?.flat();
        let projection = ProjectionMap::new(rs, &subsets, &choice.words)?;
        Ok(CubeInput { word: choice.words.concat(), a, projection, choice })
    } else {
        if job.weights.is_some() || job.words.is_some() {
            return Err(CliError::Config("weights/words need subsets".into()));
        }
        let word = job.require(&job.word, "word")?.clone();
        let a = job.require(&job.a, "a")?.clone();
        let n = word.len();
        let choice = WordChoice { words: vec![word.clone()], auto: false };
        Ok(CubeInput { word, a, projection: ProjectionMap::identity(n), choice })
    }
}

fn gen_demazure(rs: &RootSystem, job: &JobConfig, budget: usize) -> Result<(GenDemazureCrystal, WordChoice), CliError> {
    if job.subsets.is_some() {
        if job.word.is_some() || job.a.is_some() {
            return Err(CliError::Config("give either subsets/weights or word/a, not both".into()));
        }
        let (subsets, choice) = subset_words(rs, job)?;
        let lams = weights(rs, job.require(&job.weights, "weights")?)?;
        let c = GenDemazureCrystal::from_subsets(rs, &subsets, &choice.words, &lams, budget)?;
        Ok((c, choice))
    } else {
        let word = job.require(&job.word, "word")?;
        let a = job.require(&job.a, "a")?;
        let c = GenDemazureCrystal::from_word(rs, word, a, budget)?;
        Ok((c, WordChoice { words: vec![word.clone()], auto: false }))
    }
}

fn crystal_outcome(c: &GenDemazureCrystal, format: Format, command: Command) -> Outcome {
    let artifact = match format {
        Format::Csv => points_to_csv(&c.omega_points(), &c.block_lengths()),
        _ => pretty(&c.export()),
    };
    Outcome { summary: format!("{command}: {} elements", c.len()), artifact }
}

pub fn run(job: &JobConfig, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    let rs = job.root_system.build()?;
    let budget = settings.budget;
    let command = job.command;
    let (mut outcome, choice) = match command {
        Command::Crystal => {
            let lam = weight(&rs, job.require(&job.weight, "weight")?)?;
            let g = CrystalGraph::generate(&rs, &lam, budget)?;
            let artifact = match format {
                Format::Csv => {
                    let mut s = String::from("src,label,dst\n");
                    for (u, i, v) in g.edges() {
                        s.push_str(&format!("{u},{i},{v}\n"));
                    }
                    s
                }
                _ => pretty(&g.to_json()),
            };
            let summary = format!("{command}: {} elements, {} edges", g.len(), g.edges().len());
            (Outcome { summary, artifact }, None)
        }
        Command::Demazure => {
            let lam = weight(&rs, job.require(&job.weight, "weight")?)?;
            let word = job.require(&job.word, "word")?;
            let c = GenDemazureCrystal::demazure(&rs, &lam, word, budget)?;
            (crystal_outcome(&c, format, command), Some(WordChoice { words: vec![word.clone()], auto: false }))
        }
        Command::GenDemazure => {
            let (c, choice) = gen_demazure(&rs, job, budget)?;
            (crystal_outcome(&c, format, command), Some(choice))
        }
        Command::LatticePoints => {
            let level = job.level.unwrap_or(1);
            let cube = cube_input(&rs, job)?;
            let set = lattice_points(&rs, &cube.word, &cube.a, level, budget)?;
            let blocks: Vec<usize> = cube.choice.words.iter().map(Vec::len).collect();
            let artifact = match format {
                Format::Csv => points_to_csv(&set.points, &blocks),
                _ => pretty(&json!({ "word": set.word, "a": cube.a, "level": set.level, "points": set.points })),
            };
            let summary = format!("{command}: {} points at level {level}", set.points.len());
            (Outcome { summary, artifact }, Some(cube.choice))
        }
        Command::Multiplicity => {
            let (subsets, choice) = subset_words(&rs, job)?;
            let lams = weights(&rs, job.require(&job.weights, "weights")?)?;
            let nu = weight(&rs, job.require(&job.nu, "nu")?)?;
            let m = multiplicity(&rs, &subsets, &choice.words, &lams, &nu, budget)?;
            let artifact = pretty(&json!({ "nu": nu.key(), "multiplicity": m, "words": choice.words }));
            (Outcome { summary: m.to_string(), artifact }, Some(choice))
        }
        Command::TensorDecompose => {
            let lams = weights(&rs, job.require(&job.weights, "weights")?)?;
            let table = tensor_decompose(&rs, &lams, budget)?;
            let artifact = match format {
                Format::Csv => {
                    let mut s = String::from("weight,multiplicity\n");
                    for (nu, m) in &table {
                        s.push_str(&format!("\"{}\",{m}\n", nu.key()));
                    }
                    s
                }
                _ => pretty(&keyed(&table)),
            };
            let total: u64 = table.values().sum();
            let full: Vec<usize> = (1..=rs.rank()).collect();
            let choice = WordChoice { words: vec![rs.longest_word(&full)?; lams.len()], auto: true };
            let summary = format!("{command}: {} distinct summands, {total} in total", table.len());
            (Outcome { summary, artifact }, Some(choice))
        }
        Command::ComponentCount => {
            let (subsets, choice) = subset_words(&rs, job)?;
            let lams = weights(&rs, job.require(&job.weights, "weights")?)?;
            let n = component_count(&rs, &subsets, &choice.words, &lams, budget)?;
            let artifact = pretty(&json!({ "components": n, "words": choice.words }));
            (Outcome { summary: n.to_string(), artifact }, Some(choice))
        }
        Command::Fiber => {
            let (subsets, choice) = subset_words(&rs, job)?;
            let lams = weights(&rs, job.require(&job.weights, "weights")?)?;
            let x = job.require(&job.x, "x")?;
            let points = fiber_string_points(&rs, &subsets, &choice.words, &lams, x, budget)?;
            let artifact = match format {
                Format::Csv => points_to_csv(&points, &[choice.words[0].len()]),
                _ => pretty(&json!({ "x": x, "words": choice.words, "points": points })),
            };
            (Outcome { summary: format!("{command}: {} points", points.len()), artifact }, Some(choice))
        }
        Command::BundleVectors => {
            let (subsets, choice) = subset_words(&rs, job)?;
            let lams = weights(&rs, job.require(&job.weights, "weights")?)?;
            let r = report(&rs, &subsets, &choice.words, &lams)?;
            let summary = format!("{command}: a = {:?}, mu = ({})", r.pullback, r.mu);
            (Outcome { summary, artifact: pretty(&r) }, Some(choice))
        }
        Command::CubeVolume => {
            let input = cube_input(&rs, job)?;
            let cube = TwistedCube::new(&rs, &input.word, &input.a)?;
            let v = rational_string(&cube.signed_volume());
            let artifact = pretty(&json!({ "word": input.word, "a": input.a, "volume": v }));
            (Outcome { summary: v, artifact }, Some(input.choice))
        }
        Command::CubeMoments => {
            let input = cube_input(&rs, job)?;
            let cube = TwistedCube::new(&rs, &input.word, &input.a)?;
            let rows = input.projection.rows();
            let moments = match &job.moments {
                Some(m) => m.clone(),
                None => std::iter::once(vec![0; rows])
                    .chain((0..rows).map(|r| (0..rows).map(|c| u32::from(r == c)).collect()))
                    .collect(),
            };
            let mut table = BTreeMap::new();
            for m in &moments {
                let key = m.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                table.insert(key, rational_string(&cube.pushforward_moment(&input.projection, m)?));
            }
            let summary = format!("{command}: {} moments, volume {}", table.len(), rational_string(&cube.signed_volume()));
            (Outcome { summary, artifact: pretty(&table) }, Some(input.choice))
        }
        Command::CubeHistogram | Command::CubeSvg => {
            let input = cube_input(&rs, job)?;
            let cube = TwistedCube::new(&rs, &input.word, &input.a)?;
            let rows = input.projection.rows();
            let axes: Vec<usize> = match &job.axes {
                Some(a) => a.clone(),
                None => (1..=rows.min(2)).collect(),
            };
            if let Some(&bad) = axes.iter().find(|&&a| a == 0 || a > rows) {
                return Err(CliError::Config(format!("axis {bad} out of range 1..={rows}")));
            }
            let zero_based: Vec<usize> = axes.iter().map(|a| a - 1).collect();
            let samples = job.samples.unwrap_or(DEFAULT_SAMPLES);
            let seed = settings.seed.or(job.seed).unwrap_or(0);
            let bins = job.bins.unwrap_or(DEFAULT_BINS);
            let h = mc_histogram(&cube, &input.projection, &zero_based, bins, samples, seed, DEFAULT_SHARDS)?;
            let artifact = match format {
                Format::Svg => histogram_to_svg(&h)?,
                Format::Json => pretty(&h),
                Format::Csv => histogram_to_csv(&h),
            };
            let nonzero = h.values.iter().filter(|v| **v != 0.0).count();
            let summary = format!("{command}: {nonzero} nonzero bins, total {:.6} (seed {seed})", h.total());
            (Outcome { summary, artifact }, Some(input.choice))
        }
    };
    if settings.echo_word {
        if let Some(choice) = choice {
            outcome.summary.push(' ');
            outcome.summary.push_str(&choice.describe());
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(text: &str) -> Outcome {
        let job = JobConfig::parse(text).unwrap();
        let settings = Settings { budget: 100_000, seed: None, echo_word: false };
        run(&job, job.command.formats()[0], &settings).unwrap()
    }

    #[test]
    fn scalar_summaries() {
        assert_eq!(run_json(r#"{"root_system":"A1","command":"cube-volume","word":[1],"a":[2]}"#).summary, "2");
        let m = run_json(
            r#"{"root_system":"A2","command":"multiplicity","subsets":[[1,2],[1,2]],"weights":[[1,0],[0,1]],"nu":[1,1]}"#,
        );
        assert_eq!(m.summary, "1");
    }

    #[test]
    fn default_moments_are_volume_and_first() {
        let o = run_json(r#"{"root_system":"A1","command":"cube-moments","word":[1],"a":[2]}"#);
        let v: BTreeMap<String, String> = serde_json::from_str(&o.artifact).unwrap();
        assert_eq!(v["0"], "2");
        assert_eq!(v["1"], "-2");
    }

    #[test]
    fn mixed_shapes_are_rejected() {
        let job = JobConfig::parse(
            r#"{"root_system":"A2","command":"cube-volume","subsets":[[1,2]],"weights":[[1,1]],"word":[1],"a":[1]}"#,
        )
        .unwrap();
        let settings = Settings { budget: 1000, seed: None, echo_word: false };
        assert!(matches!(run(&job, Format::Json, &settings), Err(CliError::Config(_))));
    }
}
