use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::samplers::DepolarizationMode;
use crate::system::System;

/// Sample count used when the configuration leaves it unset.
pub const DEFAULT_SAMPLES: usize = 10_000;
/// Default for the noise-threshold experiments.
pub const DEFAULT_THRESHOLD_SAMPLES: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    /// Haar-random pure states.
    Haar,
    /// Hilbert-Schmidt random density matrices.
    Hs,
    /// Random-angle rotation circuits (two and three qubits).
    Biased,
    /// Interpolations between stabilizer states and a fixed or random target.
    Walk,
}

impl Generator {
    pub fn is_pure(self) -> bool {
        self != Generator::Hs
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Haar => "haar",
            Self::Hs => "hs",
            Self::Biased => "biased",
            Self::Walk => "walk",
        })
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "haar" => Ok(Self::Haar),
            "hs" => Ok(Self::Hs),
            "biased" => Ok(Self::Biased),
            "walk" => Ok(Self::Walk),
            _ => Err(Error::Config(format!("unknown generator '{s}' (haar, hs, biased, walk)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Config(format!("unknown format '{s}' (csv, json)"))),
        }
    }
}

mod system_str {
    use super::System;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &System, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<System, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters shared by every experiment. The JSON form uses the same keys.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Register as "d,n".
    #[serde(with = "system_str")]
    pub system: System,
    /// Unset means the command's default.
    pub samples: Option<usize>,
    pub seed: u64,
    pub workers: usize,
    /// Certified gap required of distance computations.
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub generator: Generator,
    /// Depolarizing channel for the threshold experiment.
    pub mode: DepolarizationMode,
    /// Walk step in eps.
    pub step: f64,
    /// Largest 1 - eps used by the random walk generator. Unset means the
    /// command's default.
    pub reach: Option<f64>,
    /// Threshold experiment: only resolve states whose critical noise
    /// exceeds the running maximum.
    pub screen: bool,
    /// Threshold experiment: also compute the distance and robustness.
    pub with_measures: bool,
    /// Histogram bin width.
    pub bin_width: f64,
    /// Hull experiment: a named projection or comma-separated Pauli words.
    pub projection: Option<String>,
    /// Write progress to a sidecar file every chunk and resume from it.
    pub checkpoint: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            system: System::Qubit1,
            samples: None,
            seed: 0,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            tol: 1e-6,
            out: None,
            format: OutputFormat::Csv,
            generator: Generator::Haar,
            mode: DepolarizationMode::Global,
            step: 1e-3,
            reach: None,
            screen: false,
            with_measures: true,
            bin_width: 0.01,
            projection: None,
            checkpoint: true,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == Some(0) {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::Config(format!("step must lie in (0, 1], got {}", self.step)));
        }
        if let Some(r) = self.reach {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::Config(format!("reach must lie in (0, 1], got {r}")));
            }
        }
        if !(self.bin_width > 0.0 && self.bin_width.is_finite()) {
            return Err(Error::Config(format!("bin_width must be positive, got {}", self.bin_width)));
        }
        Ok(())
    }

    pub fn sample_count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// Everything that changes results; worker count and paths do not.
    pub(crate) fn fingerprint(&self, command: &str) -> String {
        let mut c = self.clone();
        c.workers = 1;
        c.out = None;
        c.format = OutputFormat::Csv;
        c.checkpoint = false;
        serde_json::json!({ "command": command, "config": c }).to_string()
    }
}
