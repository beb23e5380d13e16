//! Experiment configuration: a flat TOML table.
//!
//! ```toml
//! dataset = "imdb"            # "lambeq" | "imdb"
//! data_path = "data/movies"   # Lambeq directory or pos/neg root
//! embedding = "trained"       # "trained" | "file"
//! embedding_file = "vec.txt"  # required when embedding = "file"
//! dim = 4                     # sentence-vector dimension
//! dims = [2, 3, 4, 5]         # experiment rows (defaults to [dim])
//! window = 5                  # co-occurrence window
//! min_count = 1               # vocabulary cutoff
//! map = "amplitude"           # "amplitude" | "zz" | "linear"
//! maps = ["linear", "zz", "amplitude"]  # experiment columns
//! qubits = 4                  # optional, see `qubits_for`
//! amp_qubits = "min"          # "min" (ceil log2 dim) | "dim" (one qubit per feature)
//! zz_reps = 2
//! shots = 10000               # 0 = exact kernel
//! seeds = [0, 1, 2]
//! n_train = 40                # imdb only; Lambeq uses its fixed 70/30 split
//! n_test = 10
//! svm_c = 1.0
//! svm_tol = 1e-3
//! svm_max_passes = 1000
//! out_dir = "out"
//! group_map = "groups.csv"    # optional `doc_id,group` lines for grouped sampling
//! ```
//!
//! Relative paths are taken relative to the working directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::{FeatureMapSpec, DEFAULT_ZZ_REPS};
use crate::svm::TrainConfig;

pub const DEFAULT_SHOTS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetKind {
    Lambeq,
    Imdb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingSource {
    Trained,
    File,
}

/// Kernel column of a run: the classical linear kernel or a quantum map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapChoice {
    Linear,
    Zz,
    Amplitude,
}

impl MapChoice {
    pub fn name(self) -> &'static str {
        match self {
            MapChoice::Linear => "linear",
            MapChoice::Zz => "zz",
            MapChoice::Amplitude => "amplitude",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(MapChoice::Linear),
            "zz" => Ok(MapChoice::Zz),
            "amplitude" => Ok(MapChoice::Amplitude),
            other => Err(Error::Config(format!("unknown map {other:?} (amplitude, zz, linear)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmpQubits {
    Min,
    Dim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: DatasetKind,
    pub data_path: PathBuf,
    #[serde(default = "default_embedding")]
    pub embedding: EmbeddingSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_file: Option<PathBuf>,
    #[serde(default = "default_dim")]
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default = "default_window")]
    pub window: usize,
    #[serde(default = "default_min_count")]
    pub min_count: usize,
    #[serde(default = "default_map")]
    pub map: MapChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<MapChoice>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits: Option<usize>,
    #[serde(default = "default_amp_qubits")]
    pub amp_qubits: AmpQubits,
    #[serde(default = "default_zz_reps")]
    pub zz_reps: usize,
    #[serde(default)]
    pub shots: u64,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_n_train")]
    pub n_train: usize,
    #[serde(default = "default_n_test")]
    pub n_test: usize,
    #[serde(default = "default_c")]
    pub svm_c: f64,
    #[serde(default = "default_tol")]
    pub svm_tol: f64,
    #[serde(default = "default_max_passes")]
    pub svm_max_passes: usize,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_map: Option<PathBuf>,
}

fn default_embedding() -> EmbeddingSource {
    EmbeddingSource::Trained
}
fn default_dim() -> usize {
    4
}
fn default_window() -> usize {
    5
}
fn default_min_count() -> usize {
    1
}
fn default_map() -> MapChoice {
    MapChoice::Amplitude
}
fn default_amp_qubits() -> AmpQubits {
    AmpQubits::Min
}
fn default_zz_reps() -> usize {
    DEFAULT_ZZ_REPS
}
fn default_seeds() -> Vec<u64> {
    vec![0]
}
fn default_n_train() -> usize {
    40
}
fn default_n_test() -> usize {
    10
}
fn default_c() -> f64 {
    1.0
}
fn default_tol() -> f64 {
    1e-3
}
fn default_max_passes() -> usize {
    1000
}
fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub map: Option<MapChoice>,
    pub qubits: Option<usize>,
    pub dim: Option<usize>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(s) = o.shots {
            self.shots = s;
        }
        if let Some(s) = o.seed {
            self.seeds = vec![s];
        }
        if let Some(m) = o.map {
            self.map = m;
        }
        if let Some(q) = o.qubits {
            self.qubits = Some(q);
        }
        if let Some(d) = o.dim {
            self.dim = d;
            self.dims = None;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.dim == 0 {
            return bad("dim must be at least 1".into());
        }
        if let Some(dims) = &self.dims {
            if dims.is_empty() || dims.contains(&0) {
                return bad("dims must be a nonempty list of positive sizes".into());
            }
        }
        if self.window == 0 {
            return bad("window must be at least 1".into());
        }
        if self.embedding == EmbeddingSource::File && self.embedding_file.is_none() {
            return bad("embedding = \"file\" needs embedding_file".into());
        }
        if self.seeds.is_empty() {
            return bad("seeds must not be empty".into());
        }
        if self.qubits == Some(0) || self.qubits.is_some_and(|q| q > crate::sim::MAX_QUBITS) {
            return bad(format!("qubits must be in 1..={}", crate::sim::MAX_QUBITS));
        }
        if self.zz_reps == 0 {
            return bad("zz_reps must be at least 1".into());
        }
        if !(self.svm_c > 0.0) || !(self.svm_tol > 0.0) {
            return bad("svm_c and svm_tol must be positive".into());
        }
        if self.maps.as_ref().is_some_and(Vec::is_empty) {
            return bad("maps must not be empty".into());
        }
        Ok(())
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            c: self.svm_c,
            tol: self.svm_tol,
            max_passes: self.svm_max_passes,
        }
    }

    /// Experiment rows; the largest is the trained embedding dimension.
    pub fn row_dims(&self) -> Vec<usize> {
        self.dims.clone().unwrap_or_else(|| vec![self.dim])
    }

    pub fn columns(&self) -> Vec<MapChoice> {
        self.maps.clone().unwrap_or_else(|| vec![MapChoice::Linear, MapChoice::Zz, MapChoice::Amplitude])
    }

    /// Qubit count for `map` on `dim` features.
    ///
    /// An explicit `qubits` wins and is checked against the map. Otherwise ZZ
    /// uses one qubit per feature and amplitude encoding uses `ceil(log2 dim)`
    /// qubits (`amp_qubits = "min"`) or `dim` qubits (`"dim"`).
    pub fn qubits_for(&self, map: MapChoice, dim: usize) -> Result<usize> {
        let q = match (map, self.qubits) {
            (MapChoice::Linear, _) => return Ok(0),
            (_, Some(q)) => q,
            (MapChoice::Zz, None) => dim,
            (MapChoice::Amplitude, None) => match self.amp_qubits {
                AmpQubits::Min => (usize::BITS - (dim.max(2) - 1).leading_zeros()) as usize,
                AmpQubits::Dim => dim,
            },
        };
        if let Some(spec) = self.map_spec(map, q) {
            spec.check_dim(dim).map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(q)
    }

    pub fn map_spec(&self, map: MapChoice, qubits: usize) -> Option<FeatureMapSpec> {
        match map {
            MapChoice::Linear => None,
            MapChoice::Zz => Some(FeatureMapSpec::zz(qubits, self.zz_reps)),
            MapChoice::Amplitude => Some(FeatureMapSpec::amplitude(qubits)),
        }
    }
}
