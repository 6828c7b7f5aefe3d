//! Experiment configuration.
//!
//! A config is a flat key/value table, read as TOML or (for `.json` files) as
//! JSON with the same keys:
//!
//! | key | meaning |
//! |-----|---------|
//! | `model` | `er`, `ba`, `ws`, `gram` (synthetic features), `edges`, `gram-csv`, `features-csv` |
//! | `n`, `p`, `m`, `degree`, `dim` | generator parameters |
//! | `instance_seed` | generator seed (default 0) |
//! | `path` | instance file for `edges`, `gram-csv`, `features-csv` |
//! | `constraint` | `size` (default) or `partition` |
//! | `blocks` | partition: number of contiguous equal blocks; capacities split `k` |
//! | `partition_path` | partition: matroid file (overrides `blocks`; `k` then comes from its rank) |
//! | `k` | list of budgets |
//! | `algorithms` | list of algorithm ids |
//! | `eps`, `t`, `ell`, `ell1`, `ell2`, `pool_cap` | algorithm parameters |
//! | `seeds`, `master_seed` | trial `s` uses `derive_seed(master_seed, s)` |
//! | `output`, `summary` | CSV paths (summary defaults to `<output stem>_summary.csv`) |
//! | `threads` | worker count (default: available parallelism) |
//!
//! Relative paths resolve against the config file's directory.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TrialParams;
use crate::constraint::{read_partition_matroid, Matroid, PartitionMatroid};
use crate::error::{Error, Result};
use crate::interlace::round_budgets;
use crate::oracle::{
    gen_graph, read_edge_list, read_gram_csv, GramInstance, GraphModel, MaxCutInstance, ModularInstance,
    Objective,
};
use crate::rng::seeded;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: String,
    n: Option<usize>,
    p: Option<f64>,
    m: Option<usize>,
    degree: Option<usize>,
    dim: Option<usize>,
    instance_seed: Option<u64>,
    path: Option<PathBuf>,
    constraint: Option<String>,
    blocks: Option<usize>,
    partition_path: Option<PathBuf>,
    #[serde(default)]
    k: Vec<usize>,
    algorithms: Vec<String>,
    eps: Option<f64>,
    t: Option<f64>,
    ell: Option<usize>,
    ell1: Option<usize>,
    ell2: Option<usize>,
    pool_cap: Option<usize>,
    seeds: Option<usize>,
    master_seed: Option<u64>,
    output: PathBuf,
    summary: Option<PathBuf>,
    threads: Option<usize>,
}

/// Where the objective comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSpec {
    Graph { model: GraphModel, n: usize, seed: u64 },
    /// Gram matrix of `n` random feature vectors in `[0, 1)^dim`.
    RandomGram { n: usize, dim: usize, seed: u64 },
    EdgeList(PathBuf),
    GramCsv { path: PathBuf, features: bool },
    Modular(Vec<f64>),
}

/// A loaded objective.
pub enum Instance {
    Graph(MaxCutInstance),
    Gram(GramInstance),
    Modular(ModularInstance),
}

impl Instance {
    pub fn objective(&self) -> &dyn Objective {
        match self {
            Instance::Graph(g) => g,
            Instance::Gram(g) => g,
            Instance::Modular(m) => m,
        }
    }
}

impl InstanceSpec {
    pub fn load(&self) -> Result<Instance> {
        Ok(match self {
            InstanceSpec::Graph { model, n, seed } => Instance::Graph(gen_graph(*model, *n, *seed)?),
            InstanceSpec::RandomGram { n, dim, seed } => {
                let mut rng = seeded(*seed);
                let features: Vec<Vec<f64>> =
                    (0..*n).map(|_| (0..*dim).map(|_| rng.gen::<f64>()).collect()).collect();
                Instance::Gram(GramInstance::from_features(&features)?)
            }
            InstanceSpec::EdgeList(path) => Instance::Graph(read_edge_list(open(path)?)?),
            InstanceSpec::GramCsv { path, features } => Instance::Gram(read_gram_csv(open(path)?, *features)?),
            InstanceSpec::Modular(w) => Instance::Modular(ModularInstance::new(w.clone())?),
        })
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::input(format!("cannot open {}: {e}", path.display())))
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConstraintSpec {
    Size,
    /// `blocks` contiguous blocks of near-equal size; capacities split `k`
    /// as evenly as possible, larger capacities first.
    Blocks(usize),
    PartitionFile(PathBuf),
}

impl ConstraintSpec {
    /// The matroid for budget `k`, or `None` for a size constraint.
    pub fn build(&self, n: usize, k: usize) -> Result<Option<Box<dyn Matroid>>> {
        match self {
            ConstraintSpec::Size => Ok(None),
            ConstraintSpec::Blocks(b) => {
                if *b == 0 || *b > n {
                    return Err(Error::input(format!("cannot split {n} elements into {b} blocks")));
                }
                let block_of: Vec<usize> = (0..n).map(|i| i * b / n).collect();
                Ok(Some(Box::new(PartitionMatroid::new(block_of, round_budgets(k, *b))?)))
            }
            ConstraintSpec::PartitionFile(path) => {
                let m = read_partition_matroid(open(path)?)?;
                if m.ground_size() != n {
                    return Err(Error::input(format!(
                        "partition covers {} elements, instance has {n}",
                        m.ground_size()
                    )));
                }
                Ok(Some(Box::new(m)))
            }
        }
    }
}

/// A validated experiment description.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub constraint: ConstraintSpec,
    pub k: Vec<usize>,
    pub algorithms: Vec<String>,
    pub eps: f64,
    pub t: Option<f64>,
    pub ell: Option<usize>,
    pub ell1: Option<usize>,
    pub ell2: Option<usize>,
    pub pool_cap: Option<usize>,
    pub seeds: usize,
    pub master_seed: u64,
    pub output: PathBuf,
    pub summary: PathBuf,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, base: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::input(format!("config: {e}")))?;
        Self::from_raw(raw, base)
    }

    pub fn from_json_str(text: &str, base: &Path) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::input(format!("config: {e}")))?;
        Self::from_raw(raw, base)
    }

    fn from_raw(raw: RawConfig, base: &Path) -> Result<Self> {
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        let need_n = || raw.n.ok_or_else(|| Error::input("config: `n` is required for generated instances"));
        let need_path = || {
            raw.path
                .as_deref()
                .map(resolve)
                .ok_or_else(|| Error::input("config: `path` is required for file instances"))
        };
        let seed = raw.instance_seed.unwrap_or(0);
        let instance = match raw.model.as_str() {
            "er" => InstanceSpec::Graph {
                model: GraphModel::Er { p: raw.p.ok_or_else(|| Error::input("config: `p` is required for er"))? },
                n: need_n()?,
                seed,
            },
            "ba" => InstanceSpec::Graph {
                model: GraphModel::Ba { m: raw.m.ok_or_else(|| Error::input("config: `m` is required for ba"))? },
                n: need_n()?,
                seed,
            },
            "ws" => InstanceSpec::Graph {
                model: GraphModel::Ws {
                    degree: raw.degree.ok_or_else(|| Error::input("config: `degree` is required for ws"))?,
                    p: raw.p.ok_or_else(|| Error::input("config: `p` is required for ws"))?,
                },
                n: need_n()?,
                seed,
            },
            "gram" => InstanceSpec::RandomGram { n: need_n()?, dim: raw.dim.unwrap_or(10), seed },
            "edges" => InstanceSpec::EdgeList(need_path()?),
            "gram-csv" => InstanceSpec::GramCsv { path: need_path()?, features: false },
            "features-csv" => InstanceSpec::GramCsv { path: need_path()?, features: true },
            other => return Err(Error::input(format!("config: unknown model `{other}`"))),
        };
        let constraint = match raw.constraint.as_deref().unwrap_or("size") {
            "size" => ConstraintSpec::Size,
            "partition" => match (&raw.partition_path, raw.blocks) {
                (Some(p), _) => ConstraintSpec::PartitionFile(resolve(p)),
                (None, Some(b)) => ConstraintSpec::Blocks(b),
                (None, None) => {
                    return Err(Error::input("config: partition needs `blocks` or `partition_path`"))
                }
            },
            other => return Err(Error::input(format!("config: unknown constraint `{other}`"))),
        };
        let mut k = raw.k;
        if k.is_empty() {
            if let ConstraintSpec::PartitionFile(_) = constraint {
                k.push(0);
            } else {
                return Err(Error::input("config: `k` must list at least one budget"));
            }
        }
        if raw.algorithms.is_empty() {
            return Err(Error::input("config: `algorithms` must not be empty"));
        }
        for a in &raw.algorithms {
            super::Algorithm::parse(a)?;
        }
        let output = resolve(&raw.output);
        let summary = raw.summary.as_deref().map(resolve).unwrap_or_else(|| {
            let stem = output.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
            output.with_file_name(format!("{stem}_summary.csv"))
        });
        let eps = raw.eps.unwrap_or(0.1);
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::input(format!("config: eps must lie in (0, 1), got {eps}")));
        }
        Ok(Self {
            instance,
            constraint,
            k,
            algorithms: raw.algorithms,
            eps,
            t: raw.t,
            ell: raw.ell,
            ell1: raw.ell1,
            ell2: raw.ell2,
            pool_cap: raw.pool_cap,
            seeds: raw.seeds.unwrap_or(1),
            master_seed: raw.master_seed.unwrap_or(0),
            output,
            summary,
            threads: raw.threads,
        })
    }

    pub fn trial_params(&self) -> TrialParams {
        TrialParams {
            eps: self.eps,
            t: self.t,
            ell: self.ell,
            ell1: self.ell1,
            ell2: self.ell2,
            pool_cap: self.pool_cap,
        }
    }

    pub fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

/// Reads a config file, choosing JSON for `.json` files and TOML otherwise.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    if path.extension().is_some_and(|e| e == "json") {
        ExperimentConfig::from_json_str(&text, base)
    } else {
        ExperimentConfig::from_toml_str(&text, base)
    }
}
