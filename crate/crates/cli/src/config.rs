use std::fmt;

use fbs_core::{CartanMatrix, RootSystem};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Crystal,
    Demazure,
    GenDemazure,
    LatticePoints,
    Multiplicity,
    TensorDecompose,
    ComponentCount,
    Fiber,
    BundleVectors,
    CubeVolume,
    CubeMoments,
    CubeHistogram,
    CubeSvg,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Crystal => "crystal",
            Command::Demazure => "demazure",
            Command::GenDemazure => "gen-demazure",
            Command::LatticePoints => "lattice-points",
            Command::Multiplicity => "multiplicity",
            Command::TensorDecompose => "tensor-decompose",
            Command::ComponentCount => "component-count",
            Command::Fiber => "fiber",
            Command::BundleVectors => "bundle-vectors",
            Command::CubeVolume => "cube-volume",
            Command::CubeMoments => "cube-moments",
            Command::CubeHistogram => "cube-histogram",
            Command::CubeSvg => "cube-svg",
        }
    }

    /// Optional parameters the command reads; anything else in the job is an error.
    fn accepts(self) -> &'static [&'static str] {
        const SHAPE: &[&str] = &["subsets", "words", "weights", "word", "a"];
        match self {
            Command::Crystal => &["weight"],
            Command::Demazure => &["weight", "word"],
            Command::GenDemazure => SHAPE,
            Command::LatticePoints => &["subsets", "words", "weights", "word", "a", "level"],
            Command::Multiplicity => &["subsets", "words", "weights", "nu"],
            Command::TensorDecompose => &["weights"],
            Command::ComponentCount => &["subsets", "words", "weights"],
            Command::Fiber => &["subsets", "words", "weights", "x"],
            Command::BundleVectors => &["subsets", "words", "weights"],
            Command::CubeVolume => SHAPE,
            Command::CubeMoments => &["subsets", "words", "weights", "word", "a", "moments"],
            Command::CubeHistogram | Command::CubeSvg => {
                &["subsets", "words", "weights", "word", "a", "bins", "samples", "seed", "axes"]
            }
        }
    }

    pub fn formats(self) -> &'static [Format] {
        match self {
            Command::Crystal
            | Command::Demazure
            | Command::GenDemazure
            | Command::LatticePoints
            | Command::TensorDecompose
            | Command::Fiber => &[Format::Json, Format::Csv],
            Command::CubeHistogram => &[Format::Csv, Format::Json, Format::Svg],
            Command::CubeSvg => &[Format::Svg],
            _ => &[Format::Json],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RootSystemSpec {
    Preset(String),
    Grid(Vec<Vec<i64>>),
}

impl RootSystemSpec {
    pub fn build(&self) -> fbs_core::Result<RootSystem> {
        match self {
            RootSystemSpec::Preset(name) => RootSystem::preset(name),
            RootSystemSpec::Grid(rows) => Ok(RootSystem::new(CartanMatrix::new(rows.clone())?)),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: Option<Format>,
}

/// One job. Weights are ϖ-coordinates; words, subsets and `axes` are 1-based.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub root_system: RootSystemSpec,
    pub command: Command,
    pub subsets: Option<Vec<Vec<usize>>>,
    pub words: Option<Vec<Vec<usize>>>,
    pub word: Option<Vec<usize>>,
    pub weight: Option<Vec<i64>>,
    pub weights: Option<Vec<Vec<i64>>>,
    pub a: Option<Vec<i64>>,
    pub nu: Option<Vec<i64>>,
    pub x: Option<Vec<i64>>,
    pub level: Option<i64>,
    pub moments: Option<Vec<Vec<u32>>>,
    pub bins: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub axes: Option<Vec<usize>>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let job: JobConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        job.check_fields()?;
        Ok(job)
    }

    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut note = |name, set: bool| {
            if set {
                out.push(name);
            }
        };
        note("subsets", self.subsets.is_some());
        note("words", self.words.is_some());
        note("word", self.word.is_some());
        note("weight", self.weight.is_some());
        note("weights", self.weights.is_some());
        note("a", self.a.is_some());
        note("nu", self.nu.is_some());
        note("x", self.x.is_some());
        note("level", self.level.is_some());
        note("moments", self.moments.is_some());
        note("bins", self.bins.is_some());
        note("samples", self.samples.is_some());
        note("seed", self.seed.is_some());
        note("axes", self.axes.is_some());
        out
    }

    fn check_fields(&self) -> Result<(), CliError> {
        let accepted = self.command.accepts();
        let extra: Vec<&str> = self.present().into_iter().filter(|f| !accepted.contains(f)).collect();
        if !extra.is_empty() {
            return Err(CliError::Config(format!(
                "{} does not take {}",
                self.command,
                extra.join(", ")
            )));
        }
        Ok(())
    }

    pub fn require<'a, T>(&self, value: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
        value
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("{} needs `{name}`", self.command)))
    }
}
