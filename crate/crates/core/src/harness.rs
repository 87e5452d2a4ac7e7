//! Dataset registry, the benchmark over bundled networks, and report output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{modularity, Graph};
use crate::hardgen::{fig3_experiment, Fig3Config, Fig3Report};
use crate::io::{self, GraphFormat};
use crate::methods::{Method, MethodOptions};
use crate::seed;

const TAG_BENCH: u64 = 0xbe7c;

/// A reported value above the optimum by more than this is a validation failure.
pub const OPT_SLACK: f64 = 1e-6;

/// Registry references are published to three decimals.
pub const REFERENCE_ROUNDING: f64 = 5e-4;

/// Largest disagreement tolerated between a reported modularity and the one
/// recomputed from the written partition.
pub const REVALIDATION_TOL: f64 = 1e-12;

const BUNDLED_REGISTRY: &str = include_str!("../../../data/registry.json");

/// Directory holding the bundled datasets in a source checkout.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub cnm: f64,
    pub eig: f64,
    pub louvain: f64,
    pub sdpm: Option<f64>,
    pub opt: f64,
}

impl Reference {
    pub fn get(&self, method: Method) -> Option<f64> {
        match method {
            Method::Cnm => Some(self.cnm),
            Method::Eig => Some(self.eig),
            Method::Louvain => Some(self.louvain),
            Method::Sdpm => self.sdpm,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub id: u32,
    pub name: String,
    pub title: String,
    /// File name relative to the data directory.
    pub file: String,
    pub n: usize,
    pub m: usize,
    /// SDPM is skipped unless explicitly allowed.
    #[serde(default)]
    pub large: bool,
    pub reference: Reference,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Registry {
    pub datasets: Vec<Dataset>,
}

impl Registry {
    pub fn bundled() -> Registry {
        serde_json::from_str(BUNDLED_REGISTRY).expect("bundled registry is valid JSON")
    }

    pub fn from_json(text: &str) -> Result<Registry> {
        Ok(serde_json::from_str(text)?)
    }

    /// Looks a dataset up by name (case-insensitive) or numeric id.
    pub fn find(&self, key: &str) -> Option<&Dataset> {
        self.datasets
            .iter()
            .find(|d| d.name.eq_ignore_ascii_case(key) || key.parse::<u32>().is_ok_and(|id| id == d.id))
    }
}

/// Loads a registered dataset and checks its order and size.
pub fn load_dataset(ds: &Dataset, data_dir: &Path) -> Result<Graph> {
    let path = data_dir.join(&ds.file);
    if !path.is_file() {
        return Err(Error::MissingDataset {
            name: ds.name.clone(),
            path: path.display().to_string(),
        });
    }
    let g = io::load_graph(&path, GraphFormat::from_path(&path))?.graph;
    if g.n() != ds.n || g.edge_count() != ds.m {
        return Err(Error::DatasetMismatch {
            name: ds.name.clone(),
            expected_n: ds.n,
            expected_m: ds.m,
            n: g.n(),
            m: g.edge_count(),
        });
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub datasets: Vec<Dataset>,
    pub methods: Vec<Method>,
    pub data_dir: PathBuf,
    /// Partitions are written here when set; otherwise they are round-tripped
    /// in memory.
    pub out_dir: Option<PathBuf>,
    /// Runs SDPM on datasets marked large.
    pub allow_large: bool,
    /// Records wall-clock times. Off by default so reports are reproducible.
    pub timings: bool,
    /// Master seed plus method settings; each cell derives its own seed.
    pub options: MethodOptions,
}

impl BenchConfig {
    pub fn new(registry: &Registry) -> BenchConfig {
        BenchConfig {
            datasets: registry.datasets.clone(),
            methods: Method::ALL.to_vec(),
            data_dir: default_data_dir(),
            out_dir: None,
            allow_large: false,
            timings: false,
            options: MethodOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Ok,
    /// Dataset not loadable; see the dataset's `error`.
    Missing,
    /// Skipped by policy (SDPM on a large dataset).
    Skipped,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodResult {
    pub method: Method,
    pub status: CellStatus,
    pub seed: u64,
    pub q: Option<f64>,
    pub communities: Option<usize>,
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sdp_objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sdp_upper_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DatasetReport {
    pub id: u32,
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub opt: f64,
    pub loaded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub results: Vec<MethodResult>,
}

impl DatasetReport {
    pub fn result(&self, method: Method) -> Option<&MethodResult> {
        self.results.iter().find(|r| r.method == method)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub repeats: usize,
    pub datasets: Vec<DatasetReport>,
    /// Values above the optimum column or failing revalidation.
    pub validation_failures: Vec<String>,
}

impl BenchReport {
    pub fn dataset(&self, name: &str) -> Option<&DatasetReport> {
        self.datasets.iter().find(|d| d.name == name)
    }

    pub fn q(&self, name: &str, method: Method) -> Option<f64> {
        self.dataset(name)?.result(method)?.q
    }
}

fn cell_seed(master: u64, ds: &Dataset, method: Method) -> u64 {
    let idx = Method::ALL.iter().position(|&m| m == method).unwrap_or(0) as u64;
    seed::derive(master, &[TAG_BENCH, u64::from(ds.id), idx])
}

/// Runs every method on every dataset. Missing datasets are reported, not
/// fatal; only I/O failures on the output directory abort the run.
pub fn bench_table2(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter("at least one method is required".into()));
    }
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let loaded: Vec<Result<Graph>> = cfg.datasets.iter().map(|d| load_dataset(d, &cfg.data_dir)).collect();
    let cells: Vec<(usize, Method)> = (0..cfg.datasets.len())
        .flat_map(|d| cfg.methods.iter().map(move |&m| (d, m)))
        .collect();
    let results: Vec<MethodResult> = cells
        .par_iter()
        .map(|&(d, method)| run_cell(cfg, &cfg.datasets[d], loaded[d].as_ref().ok(), method))
        .collect::<Result<_>>()?;

    let mut failures = Vec::new();
    let mut datasets = Vec::with_capacity(cfg.datasets.len());
    let mut results = results.into_iter();
    for (ds, graph) in cfg.datasets.iter().zip(&loaded) {
        let rows: Vec<MethodResult> = results.by_ref().take(cfg.methods.len()).collect();
        for r in &rows {
            if let Some(q) = r.q {
                if q > ds.reference.opt + REFERENCE_ROUNDING + OPT_SLACK {
                    failures.push(format!(
                        "{}/{}: Q = {q:.6} exceeds the optimum {:.3}",
                        ds.name, r.method, ds.reference.opt
                    ));
                }
            }
            if r.status == CellStatus::Failed {
                failures.push(format!(
                    "{}/{}: {}",
                    ds.name,
                    r.method,
                    r.error.as_deref().unwrap_or("failed")
                ));
            }
        }
        datasets.push(DatasetReport {
            id: ds.id,
            name: ds.name.clone(),
            n: ds.n,
            m: ds.m,
            opt: ds.reference.opt,
            loaded: graph.is_ok(),
            error: graph.as_ref().err().map(|e| e.to_string()),
            results: rows,
        });
    }
    Ok(BenchReport {
        seed: cfg.options.seed,
        methods: cfg.methods.clone(),
        trials: cfg.options.trials,
        repeats: cfg.options.repeats,
        datasets,
        validation_failures: failures,
    })
}

fn run_cell(cfg: &BenchConfig, ds: &Dataset, g: Option<&Graph>, method: Method) -> Result<MethodResult> {
    let seed = cell_seed(cfg.options.seed, ds, method);
    let mut res = MethodResult {
        method,
        status: CellStatus::Ok,
        seed,
        q: None,
        communities: None,
        reference: ds.reference.get(method),
        sdp_objective: None,
        sdp_upper_bound: None,
        converged: None,
        seconds: None,
        partition: None,
        error: None,
    };
    let Some(g) = g else {
        res.status = CellStatus::Missing;
        return Ok(res);
    };
    if method == Method::Sdpm && ds.large && !cfg.allow_large {
        res.status = CellStatus::Skipped;
        return Ok(res);
    }
    let opts = MethodOptions {
        seed,
        ..cfg.options.clone()
    };
    let start = Instant::now();
    let out = match method.run(g, &opts) {
        Ok(out) => out,
        Err(e) => {
            res.status = CellStatus::Failed;
            res.error = Some(e.to_string());
            return Ok(res);
        }
    };
    if cfg.timings {
        res.seconds = Some(start.elapsed().as_secs_f64());
    }
    if let Some(s) = &out.sdpm {
        res.sdp_objective = Some(s.sdp_objective);
        res.sdp_upper_bound = s.sdp_upper_bound;
        res.converged = Some(s.converged);
    }

    // The reported value is the one recomputed from the stored partition.
    let text = io::write_partition(&out.clustering);
    let stored = match &cfg.out_dir {
        Some(dir) => {
            let file = format!("{}.{}.part", ds.name, method);
            std::fs::write(dir.join(&file), &text)?;
            res.partition = Some(file.clone());
            std::fs::read_to_string(dir.join(&file))?
        }
        None => text,
    };
    let q = io::parse_partition(&stored, g.n()).and_then(|c| {
        res.communities = Some(c.community_count());
        modularity(g, &c)
    })?;
    if (q - out.q).abs() > REVALIDATION_TOL {
        res.status = CellStatus::Failed;
        res.error = Some(format!("revalidated Q = {q} differs from reported {}", out.q));
    }
    res.q = Some(q);
    Ok(res)
}

/// Hard-instance success-rate experiment.
pub fn run_fig3(cfg: &Fig3Config) -> Result<Fig3Report> {
    fig3_experiment(cfg)
}

pub fn bench_text(r: &BenchReport) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<3} {:<10} {:>4} {:>4}", "id", "dataset", "n", "m");
    for m in &r.methods {
        let _ = write!(out, " {:>15}", m.name());
    }
    let _ = writeln!(out, " {:>7}", "opt");
    for d in &r.datasets {
        let _ = write!(out, "{:<3} {:<10} {:>4} {:>4}", d.id, d.name, d.n, d.m);
        for res in &d.results {
            let cell = match (res.q, &res.status) {
                (Some(q), _) => match res.reference {
                    Some(p) => format!("{q:.4} ({p:.3})"),
                    None => format!("{q:.4}"),
                },
                (None, CellStatus::Missing) => "missing".to_string(),
                (None, CellStatus::Skipped) => "skipped".to_string(),
                (None, _) => "failed".to_string(),
            };
            let _ = write!(out, " {cell:>15}");
        }
        let _ = writeln!(out, " {:>7.3}", d.opt);
    }
    let timed: Vec<String> = r
        .datasets
        .iter()
        .flat_map(|d| {
            d.results
                .iter()
                .filter_map(move |res| res.seconds.map(|s| format!("{}/{} {s:.2}s", d.name, res.method)))
        })
        .collect();
    if !timed.is_empty() {
        let _ = writeln!(out, "times: {}", timed.join(", "));
    }
    for d in r.datasets.iter().filter(|d| !d.loaded) {
        let _ = writeln!(out, "note: {}", d.error.as_deref().unwrap_or("not loaded"));
    }
    for f in &r.validation_failures {
        let _ = writeln!(out, "VALIDATION FAILURE: {f}");
    }
    out
}

pub fn bench_csv(r: &BenchReport) -> String {
    let mut out = String::from("id,dataset,n,m,method,status,seed,q,communities,reference,opt,sdp_objective,sdp_upper_bound,converged,seconds\n");
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for d in &r.datasets {
        for res in &d.results {
            let status = serde_json::to_value(&res.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                d.id,
                d.name,
                d.n,
                d.m,
                res.method,
                status,
                res.seed,
                opt(res.q),
                res.communities.map(|c| c.to_string()).unwrap_or_default(),
                opt(res.reference),
                d.opt,
                opt(res.sdp_objective),
                opt(res.sdp_upper_bound),
                res.converged.map(|c| c.to_string()).unwrap_or_default(),
                opt(res.seconds),
            );
        }
    }
    out
}

pub fn fig3_text(r: &Fig3Report) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>5} {:>9} {:>7}", "size", "instances", "trivial");
    for m in &r.methods {
        let _ = write!(out, " {:>8}", m.name());
    }
    let _ = writeln!(out);
    for row in &r.rows {
        let _ = write!(out, "{:>5} {:>9} {:>7}", row.size, row.instances, row.trivial);
        for (_, passes) in &row.passes {
            let _ = write!(out, " {:>8}", format!("{passes}/{}", row.instances - row.trivial));
        }
        let _ = writeln!(out);
    }
    let _ = write!(out, "{:>23}", "success rate");
    for &m in &r.methods {
        let cell = r
            .success_rate(m)
            .map(|s| format!("{:.0}%", 100.0 * s))
            .unwrap_or_else(|| "-".into());
        let _ = write!(out, " {cell:>8}");
    }
    let _ = writeln!(out);
    out
}

pub fn fig3_csv(r: &Fig3Report) -> String {
    let mut out = String::from("size,instances,trivial,method,passes\n");
    for row in &r.rows {
        for (m, passes) in &row.passes {
            let _ = writeln!(out, "{},{},{},{},{}", row.size, row.instances, row.trivial, m, passes);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_registry_lists_six_networks() {
        let reg = Registry::bundled();
        let names: Vec<&str> = reg.datasets.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["karate", "dolphins", "lesmis", "polbooks", "football", "s838"]);
        assert_eq!(reg.find("5").unwrap().name, "football");
        assert_eq!(reg.find("Karate").unwrap().m, 78);
        assert!(reg.find("s838").unwrap().large);
        assert_eq!(reg.find("s838").unwrap().reference.sdpm, None);
    }

    #[test]
    fn bundled_datasets_match_registry() {
        let reg = Registry::bundled();
        for name in ["karate", "lesmis", "football"] {
            let g = load_dataset(reg.find(name).unwrap(), &default_data_dir()).unwrap();
            assert_eq!((g.n(), g.edge_count()), (reg.find(name).unwrap().n, reg.find(name).unwrap().m));
        }
    }

    #[test]
    fn missing_and_mismatched_datasets() {
        let reg = Registry::bundled();
        let mut ds = reg.find("karate").unwrap().clone();
        ds.file = "no-such-file.txt".into();
        assert!(matches!(load_dataset(&ds, &default_data_dir()), Err(Error::MissingDataset { .. })));
        let mut ds = reg.find("karate").unwrap().clone();
        ds.m = 77;
        assert!(matches!(load_dataset(&ds, &default_data_dir()), Err(Error::DatasetMismatch { .. })));
    }

    #[test]
    fn bench_flags_values_above_opt() {
        let reg = Registry::bundled();
        let mut ds = reg.find("karate").unwrap().clone();
        ds.reference.opt = 0.3;
        let cfg = BenchConfig {
            datasets: vec![ds],
            methods: vec![Method::Louvain],
            ..BenchConfig::new(&reg)
        };
        let r = bench_table2(&cfg).unwrap();
        assert_eq!(r.validation_failures.len(), 1);
        assert!(bench_text(&r).contains("VALIDATION FAILURE"));
    }

    #[test]
    fn bench_reports_missing_without_failing() {
        let reg = Registry::bundled();
        let mut ds = reg.find("karate").unwrap().clone();
        ds.file = "absent.gml".into();
        let cfg = BenchConfig {
            datasets: vec![ds],
            methods: vec![Method::Cnm, Method::Eig],
            ..BenchConfig::new(&reg)
        };
        let r = bench_table2(&cfg).unwrap();
        assert!(r.validation_failures.is_empty());
        assert!(!r.datasets[0].loaded);
        assert!(r.datasets[0].results.iter().all(|c| c.status == CellStatus::Missing));
        assert_eq!(bench_csv(&r).lines().count(), 3);
    }

    #[test]
    fn empty_method_list_is_rejected() {
        let cfg = BenchConfig {
            methods: vec![],
            ..BenchConfig::new(&Registry::bundled())
        };
        assert!(bench_table2(&cfg).is_err());
        let fig = Fig3Config {
            methods: vec![],
            ..Fig3Config::default()
        };
        assert!(run_fig3(&fig).is_err());
    }
}
