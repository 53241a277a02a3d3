use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::data::{load_csv, Dataset};
use crate::dynselect::DsMethod;
use crate::edition::RmhcConfig;
use crate::error::{Error, Result};
use crate::pool::PerceptronConfig;
use crate::ps::{PsMethod, PsParams};
use crate::search::GaConfig;
use crate::synth::{generate, SynthKind, SynthSpec};

/// One `[[datasets]]` entry: either a CSV `path` or a `synthetic` kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<SynthKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Overrides the name used in records.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl DatasetEntry {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        DatasetEntry {
            path: Some(path.into()),
            synthetic: None,
            n: None,
            noise: None,
            seed: None,
            name: None,
        }
    }

    pub fn synthetic(spec: SynthSpec) -> Self {
        DatasetEntry {
            path: None,
            synthetic: Some(spec.kind),
            n: Some(spec.n),
            noise: Some(spec.noise),
            seed: Some(spec.seed),
            name: None,
        }
    }

    fn synth_spec(&self) -> Option<SynthSpec> {
        self.synthetic.map(|kind| SynthSpec {
            kind,
            n: self.n.unwrap_or(1000),
            noise: self.noise.unwrap_or_else(|| kind.default_noise()),
            seed: self.seed.unwrap_or(0),
        })
    }

    /// Name under which the dataset's records are filed.
    pub fn display_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        match (&self.path, self.synth_spec()) {
            (Some(p), _) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
            (None, Some(spec)) => spec.name(),
            (None, None) => "unnamed".into(),
        }
    }

    /// Reads or generates the dataset; relative paths resolve against `base`.
    pub fn load(&self, base: Option<&Path>) -> Result<Dataset> {
        let data = match (&self.path, self.synth_spec()) {
            (Some(p), None) => {
                let full = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.clone(),
                };
                load_csv(full)?
            }
            (None, Some(spec)) => generate(&spec)?,
            _ => {
                return Err(Error::Config(
                    "a dataset entry needs exactly one of `path` or `synthetic`".into(),
                ))
            }
        };
        Ok(data.with_name(self.display_name()))
    }
}

/// Partial overrides of an evolutionary search preset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchOverrides {
    pub population_size: Option<usize>,
    pub max_evaluations: Option<usize>,
    pub crossover_rate: Option<f64>,
    pub mutation_1to0: Option<f64>,
    pub mutation_0to1: Option<f64>,
    pub restart_change: Option<f64>,
}

impl SearchOverrides {
    fn apply(&self, mut cfg: GaConfig) -> GaConfig {
        if let Some(v) = self.population_size {
            cfg.population_size = v;
        }
        if let Some(v) = self.max_evaluations {
            cfg.max_evaluations = v;
        }
        if let Some(v) = self.crossover_rate {
            cfg.crossover_rate = v;
        }
        if let Some(v) = self.mutation_1to0 {
            cfg.mutation_1to0 = v;
        }
        if let Some(v) = self.mutation_0to1 {
            cfg.mutation_0to1 = v;
        }
        if let Some(v) = self.restart_change {
            cfg.restart_change = v;
        }
        cfg
    }
}

/// The `[methods]` table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MethodOverrides {
    pub alpha: Option<f64>,
    pub enn_k: Option<usize>,
    pub min_retained: Option<usize>,
    pub rmhc_iterations: Option<usize>,
    pub rmhc_init_frac: Option<f64>,
    pub ssma: SearchOverrides,
    pub gga: SearchOverrides,
    pub chc: SearchOverrides,
}

fn default_ps() -> Vec<PsMethod> {
    PsMethod::ALL.to_vec()
}
fn default_ds() -> Vec<DsMethod> {
    DsMethod::ALL.to_vec()
}
fn default_replications() -> u32 {
    20
}
fn default_pool_size() -> usize {
    100
}
fn default_k() -> usize {
    7
}
fn default_output() -> PathBuf {
    PathBuf::from("results")
}
fn default_timing_repeats() -> usize {
    3
}

/// A full experiment, usually read from a TOML file.
///
/// ```toml
/// master_seed = 1
/// replications = 20
/// ps_methods = ["ENN", "RNG", "SSMA"]
///
/// [[datasets]]
/// synthetic = "banana"
/// n = 1000
///
/// [methods.ssma]
/// max_evaluations = 5000
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub datasets: Vec<DatasetEntry>,
    /// Baseline is always added.
    #[serde(default = "default_ps")]
    pub ps_methods: Vec<PsMethod>,
    #[serde(default = "default_ds")]
    pub ds_methods: Vec<DsMethod>,
    #[serde(default = "default_replications")]
    pub replications: u32,
    #[serde(default = "default_pool_size")]
    pub pool_size: usize,
    /// Region-of-competence size.
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Worker threads; all cores when absent.
    #[serde(default)]
    pub jobs: Option<usize>,
    /// Timed passes per generalization-time measurement (median taken).
    #[serde(default = "default_timing_repeats")]
    pub timing_repeats: usize,
    #[serde(default)]
    pub perceptron: PerceptronConfig,
    #[serde(default)]
    pub methods: MethodOverrides,
    /// Directory that relative dataset paths resolve against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: Vec::new(),
            ps_methods: default_ps(),
            ds_methods: default_ds(),
            replications: default_replications(),
            pool_size: default_pool_size(),
            k: default_k(),
            master_seed: 0,
            output_dir: default_output(),
            jobs: None,
            timing_repeats: default_timing_repeats(),
            perceptron: PerceptronConfig::default(),
            methods: MethodOverrides::default(),
            base_dir: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative dataset paths resolve against its
    /// directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.pool_size == 0 || self.k == 0 {
            return Err(Error::Config("pool_size and k must be positive".into()));
        }
        if self.ds_methods.is_empty() {
            return Err(Error::Config("no DS methods selected".into()));
        }
        if self.timing_repeats == 0 {
            return Err(Error::Config("timing_repeats must be at least 1".into()));
        }
        for d in &self.datasets {
            if d.path.is_some() == d.synthetic.is_some() {
                return Err(Error::Config(format!(
                    "dataset {:?} needs exactly one of `path` or `synthetic`",
                    d.display_name()
                )));
            }
        }
        let p = self.ps_params();
        for ga in [p.ssma, p.gga, p.chc] {
            ga.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    /// PS methods in run order: Baseline first, duplicates removed.
    pub fn ps_order(&self) -> Vec<PsMethod> {
        let mut out = vec![PsMethod::Baseline];
        for &m in &self.ps_methods {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }

    /// DS methods in config order, duplicates removed.
    pub fn ds_order(&self) -> Vec<DsMethod> {
        let mut out: Vec<DsMethod> = Vec::new();
        for &m in &self.ds_methods {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }

    /// Technique parameters after overrides. The size guard never drops
    /// below the region size.
    pub fn ps_params(&self) -> PsParams {
        let d = PsParams::default();
        let m = &self.methods;
        PsParams {
            alpha: m.alpha.unwrap_or(d.alpha),
            enn_k: m.enn_k.unwrap_or(d.enn_k),
            rmhc: RmhcConfig {
                iterations: m.rmhc_iterations.unwrap_or(d.rmhc.iterations),
                init_frac: m.rmhc_init_frac.unwrap_or(d.rmhc.init_frac),
                ..d.rmhc
            },
            ssma: m.ssma.apply(d.ssma),
            gga: m.gga.apply(d.gga),
            chc: m.chc.apply(d.chc),
            min_retained: m.min_retained.unwrap_or(d.min_retained).max(self.k),
        }
    }
}
