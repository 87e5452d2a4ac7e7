use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use modclust::hardgen::{self, Fig3Config, PartitionInstance};
use modclust::harness::{self, BenchConfig, Registry};
use modclust::io::{self, GraphFormat};
use modclust::oracle::{self, DEFAULT_PARTITION_LIMIT, TWO_COMMUNITY_LIMIT};
use modclust::transforms;
use modclust::{modularity, seed, Graph, Method, MethodOptions};
use serde_json::json;

const EXIT_VALIDATION: u8 = 2;

#[derive(Parser)]
#[command(name = "modclust", version, about = "Modularity clustering toolkit")]
struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a graph with one method.
    Cluster(ClusterArgs),
    /// Modularity of a stored partition.
    Modularity {
        graph: PathBuf,
        partition: PathBuf,
    },
    /// Exact maximum modularity by enumeration.
    Oracle {
        graph: PathBuf,
        /// Restrict to at most two communities.
        #[arg(long)]
        two: bool,
        /// Largest vertex count to enumerate.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Generate a hard instance with a planted certificate.
    GenHard(GenHardArgs),
    /// Rescale modularity by graph transformation.
    Transform(TransformArgs),
    /// Run the methods on the registered datasets.
    Bench(BenchArgs),
    /// Success rates on Max-Cut reduction instances.
    Fig3(Fig3Args),
}

#[derive(Args)]
struct ClusterArgs {
    graph: PathBuf,
    #[arg(long, default_value = "louvain")]
    method: Method,
    /// Rounding trials per hyperplane count (sdpm).
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Independent runs (louvain).
    #[arg(long, default_value_t = 20)]
    repeats: usize,
    /// Solver restarts (sdpm).
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Write the partition here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct HardSource {
    /// Comma-separated positive integers.
    #[arg(long, value_delimiter = ',')]
    from_partition: Option<Vec<u64>>,
    /// Simple unweighted graph to reduce from; needs --k.
    #[arg(long, requires = "k")]
    from_maxcut: Option<PathBuf>,
    /// Random source graph `G(n, p)` reduced at its exact maximum cut.
    #[arg(long, num_args = 2, value_names = ["N", "P"])]
    random: Option<Vec<String>>,
}

#[derive(Args)]
struct GenHardArgs {
    #[command(flatten)]
    source: HardSource,
    /// Cut size for --from-maxcut.
    #[arg(long)]
    k: Option<u64>,
    /// Writes `<out>.txt` (edge list) and `<out>.json` (constants and certificate).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    graph: PathBuf,
    #[arg(long, conflicts_with_all = ["tau", "range"])]
    alpha: Option<f64>,
    #[arg(long, requires = "k", conflicts_with = "range")]
    tau: Option<f64>,
    /// Number of added looped vertices.
    #[arg(long)]
    k: Option<usize>,
    /// Target interval `a,b`; k defaults to the smallest valid value.
    #[arg(long, value_delimiter = ',')]
    range: Option<Vec<f64>>,
    /// Write the transformed graph here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Dataset names or ids (default: all registered).
    #[arg(long, value_delimiter = ',')]
    datasets: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', default_value = "cnm,eig,louvain,sdpm")]
    methods: Vec<Method>,
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Alternative registry file.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Directory for partitions and the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run sdpm on datasets marked large.
    #[arg(long)]
    allow_large: bool,
    /// Record wall-clock times (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 20)]
    repeats: usize,
}

#[derive(Args)]
struct Fig3Args {
    #[arg(long, value_delimiter = ',', default_value = "10,15,20")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// Edge probability of the source graphs.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, value_delimiter = ',', default_value = "cnm,eig,louvain,sdpm")]
    methods: Vec<Method>,
}

/// Result of a command that ran to completion.
enum Status {
    Ok,
    ValidationFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ValidationFailed) => ExitCode::from(EXIT_VALIDATION),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Cluster(a) => cluster(a, cli.seed, fmt),
        Command::Modularity { graph, partition } => modularity_cmd(&graph, &partition, fmt),
        Command::Oracle { graph, two, max_n } => oracle_cmd(&graph, two, max_n, fmt),
        Command::GenHard(a) => gen_hard(a, cli.seed, fmt),
        Command::Transform(a) => transform(a, fmt),
        Command::Bench(a) => bench(a, cli.seed, fmt),
        Command::Fig3(a) => fig3(a, cli.seed, fmt),
    }
}

fn load(path: &Path) -> Result<Graph> {
    let loaded = io::load_graph(path, GraphFormat::from_path(path)).with_context(|| format!("loading {}", path.display()))?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    Ok(loaded.graph)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cluster(a: ClusterArgs, seed: u64, fmt: Format) -> Result<Status> {
    let g = load(&a.graph)?;
    let mut opts = MethodOptions {
        seed,
        trials: a.trials,
        repeats: a.repeats,
        ..MethodOptions::default()
    };
    opts.solver.restarts = a.restarts;
    let out = a.method.run(&g, &opts)?;
    if let Some(path) = &a.out {
        fs::write(path, io::write_partition(&out.clustering))?;
    }
    match fmt {
        Format::Json => print_json(&out)?,
        Format::Csv => {
            println!("vertex,community");
            for (v, c) in out.clustering.labels().iter().enumerate() {
                println!("{v},{c}");
            }
        }
        Format::Text => {
            println!(
                "method {}  Q = {:.6}  communities = {}",
                out.method,
                out.q,
                out.clustering.community_count()
            );
            if let Some(s) = &out.sdpm {
                let bound = s.sdp_upper_bound.map_or("n/a".into(), |u| format!("{u:.6}"));
                println!(
                    "relaxation {:.6}  upper bound {bound}  converged {}  hyperplanes {}",
                    s.sdp_objective, s.converged, s.k
                );
            }
            if a.out.is_none() {
                print!("{}", io::write_partition(&out.clustering));
            }
        }
    }
    Ok(Status::Ok)
}

fn modularity_cmd(graph: &Path, partition: &Path, fmt: Format) -> Result<Status> {
    let g = load(graph)?;
    let text = fs::read_to_string(partition).with_context(|| format!("reading {}", partition.display()))?;
    let c = io::parse_partition(&text, g.n()).with_context(|| format!("parsing {}", partition.display()))?;
    let q = modularity(&g, &c)?;
    match fmt {
        Format::Json => print_json(&json!({ "q": q, "communities": c.community_count() }))?,
        Format::Csv => println!("q,communities\n{q},{}", c.community_count()),
        Format::Text => println!("Q = {q:.12}  communities = {}", c.community_count()),
    }
    Ok(Status::Ok)
}

fn oracle_cmd(graph: &Path, two: bool, max_n: Option<usize>, fmt: Format) -> Result<Status> {
    let g = load(graph)?;
    let r = if two {
        oracle::exact_max_modularity_two(&g, max_n.unwrap_or(TWO_COMMUNITY_LIMIT))?
    } else {
        oracle::exact_max_modularity(&g, max_n.unwrap_or(DEFAULT_PARTITION_LIMIT))?
    };
    match fmt {
        Format::Json => print_json(&r)?,
        Format::Csv => println!("q_opt,partitions_examined\n{},{}", r.best_value, r.partitions_examined),
        Format::Text => {
            println!("Q_OPT = {:.12}  ({} partitions examined)", r.best_value, r.partitions_examined);
            print!("{}", io::write_partition(&r.best_clustering));
        }
    }
    Ok(Status::Ok)
}

fn write_instance(out: &Option<PathBuf>, g: &Graph, sidecar: &serde_json::Value) -> Result<()> {
    if let Some(prefix) = out {
        fs::write(prefix.with_extension("txt"), io::write_edge_list(g))?;
        fs::write(prefix.with_extension("json"), serde_json::to_string_pretty(sidecar)?)?;
    }
    Ok(())
}

fn gen_hard(a: GenHardArgs, master: u64, fmt: Format) -> Result<Status> {
    let (graph, sidecar, check) = if let Some(items) = a.source.from_partition {
        let red = hardgen::reduce_partition(&PartitionInstance::new(items)?)?;
        let check = red
            .certificate
            .is_some()
            .then(|| hardgen::verify_partition(&red))
            .transpose()?;
        let sidecar = json!({
            "kind": "partition",
            "items": red.instance.items,
            "a": red.a,
            "K": red.instance.half_sum(),
            "total_weight": red.total_weight,
            "answer": red.answer,
            "certificate": red.certificate,
            "check": check,
        });
        (red.graph, sidecar, check)
    } else {
        let (g, k) = match (a.source.from_maxcut, a.source.random) {
            (Some(path), _) => (load(&path)?, a.k.context("--from-maxcut needs --k")?),
            (None, Some(spec)) => {
                let n: usize = spec[0].parse().context("N must be a vertex count")?;
                let p: f64 = spec[1].parse().context("P must be a probability")?;
                let mut rng = seed::rng(master, &[]);
                let g = hardgen::random_graph(n, p, &mut rng)?;
                let k = oracle::exact_max_cut(&g, oracle::MAX_CUT_LIMIT)?.cut_size;
                (g, k)
            }
            _ => bail!("one of --from-partition, --from-maxcut or --random is required"),
        };
        let red = hardgen::reduce_maxcut(&g, k, None)?;
        let check = red
            .certificate
            .is_some()
            .then(|| hardgen::verify_maxcut(&red))
            .transpose()?;
        let sidecar = json!({
            "kind": "maxcut",
            "source_n": red.source_n,
            "source_m": red.source_m,
            "k": red.k,
            "T": red.t,
            "c": red.c,
            "n_prime": red.n_prime,
            "m_prime": red.m_prime,
            "certificate": red.certificate,
            "check": check,
        });
        (red.graph, sidecar, check)
    };
    write_instance(&a.out, &graph, &sidecar)?;
    match fmt {
        Format::Json => print_json(&sidecar)?,
        Format::Csv => print!("{}", io::write_edge_list(&graph)),
        Format::Text => {
            println!("vertices {}  total weight {}", graph.n(), graph.total_weight());
            match &check {
                Some(c) => println!(
                    "certificate Q = {:.6e} ({} {:.6e}): {}",
                    c.q,
                    c.relation,
                    c.expected,
                    if c.passed { "ok" } else { "FAILED" }
                ),
                None => println!("no certificate"),
            }
            if a.out.is_none() {
                print!("{}", io::write_edge_list(&graph));
            }
        }
    }
    Ok(match check {
        Some(c) if !c.passed => Status::ValidationFailed,
        _ => Status::Ok,
    })
}

fn transform(a: TransformArgs, fmt: Format) -> Result<Status> {
    let g = load(&a.graph)?;
    let (graph, info) = if let Some(alpha) = a.alpha {
        (transforms::alpha_transform(&g, alpha)?, json!({ "alpha": alpha }))
    } else if let Some(tau) = a.tau {
        let t = transforms::tau_k_transform(&g, tau, a.k.context("--tau needs --k")?)?;
        let info = json!({ "tau": t.tau, "k": t.k, "beta": t.beta, "epsilon": t.epsilon });
        (t.graph, info)
    } else if let Some(range) = a.range {
        let &[lo, hi] = range.as_slice() else {
            bail!("--range takes two values, a,b");
        };
        let k = match a.k {
            Some(k) => k,
            None => transforms::min_k_for_range(lo, hi)?,
        };
        let e = transforms::engineer_range(&g, lo, hi, k)?;
        let info = json!({ "a": e.a, "b": e.b, "min_k": e.min_k, "spec": e.spec });
        (e.graph, info)
    } else {
        bail!("one of --alpha, --tau or --range is required");
    };
    if let Some(path) = &a.out {
        fs::write(path, io::write_edge_list(&graph))?;
    }
    match fmt {
        Format::Json => print_json(&info)?,
        Format::Csv => print!("{}", io::write_edge_list(&graph)),
        Format::Text => {
            println!("{info}");
            if a.out.is_none() {
                print!("{}", io::write_edge_list(&graph));
            }
        }
    }
    Ok(Status::Ok)
}

fn bench(a: BenchArgs, master: u64, fmt: Format) -> Result<Status> {
    let registry = match &a.registry {
        Some(path) => Registry::from_json(&fs::read_to_string(path)?)?,
        None => Registry::bundled(),
    };
    let mut cfg = BenchConfig::new(&registry);
    if let Some(keys) = &a.datasets {
        cfg.datasets = keys
            .iter()
            .map(|k| registry.find(k).cloned().with_context(|| format!("unknown dataset {k:?}")))
            .collect::<Result<_>>()?;
    }
    cfg.methods = a.methods;
    if let Some(dir) = a.data_dir {
        cfg.data_dir = dir;
    }
    cfg.out_dir = a.out.clone();
    cfg.allow_large = a.allow_large;
    cfg.timings = a.timings;
    cfg.options.seed = master;
    cfg.options.trials = a.trials;
    cfg.options.repeats = a.repeats;

    let report = harness::bench_table2(&cfg)?;
    if let Some(dir) = &a.out {
        fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)?)?;
        fs::write(dir.join("report.csv"), harness::bench_csv(&report))?;
    }
    match fmt {
        Format::Json => print_json(&report)?,
        Format::Csv => print!("{}", harness::bench_csv(&report)),
        Format::Text => print!("{}", harness::bench_text(&report)),
    }
    Ok(if report.validation_failures.is_empty() {
        Status::Ok
    } else {
        Status::ValidationFailed
    })
}

fn fig3(a: Fig3Args, master: u64, fmt: Format) -> Result<Status> {
    let cfg = Fig3Config {
        sizes: a.sizes,
        repeats: a.repeats,
        p: a.p,
        methods: a.methods,
        seed: master,
        ..Fig3Config::default()
    };
    let report = harness::run_fig3(&cfg)?;
    match fmt {
        Format::Json => print_json(&report)?,
        Format::Csv => print!("{}", harness::fig3_csv(&report)),
        Format::Text => print!("{}", harness::fig3_text(&report)),
    }
    Ok(Status::Ok)
}
