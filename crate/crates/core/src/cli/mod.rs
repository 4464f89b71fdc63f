// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The `astopo` command line.
//!
//! Exit codes: 0 success, 1 other failure (bad flags, output errors),
//! 2 missing input, 3 malformed row in strict mode, 4 unrealizable
//! generator config.

mod manifest;
mod report;

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

pub use manifest::RunManifest;
pub use report::round_floats;
use report::{
    clustering_csv, histogram_csv, jdd_csv, key_values, to_json, AnalyzeReport, ClusteringSection,
    DegreeSection, GraphSection, JddSection,
};

use crate::connectivity::{connectivity_report, ConnectivityOptions, HopCounting};
use crate::dataset::{
    parse_records_with, AsCountMode, DatasetError, FormatConfig, LinkRecord, ParsedDataset,
};
use crate::generator::{
    self, parse_degree_sequence, parse_weights, GenerateError, GeneratorConfig, Profile,
};
use crate::graph::{build_graph, AsGraph, EdgeMode};
use crate::metrics::{
    clustering_report, degree_distribution, degree_histogram, joint_degree_distribution,
    ClusteringScope,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISSING_INPUT: i32 = 2;
pub const EXIT_STRICT_PARSE: i32 = 3;
pub const EXIT_GENERATE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "astopo",
    version,
    about = "AS-level topology analysis for IPv6 AS-link datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Record, AS, prefix, and path-length counts.
    Stats(AnalysisArgs),
    /// Degree distribution.
    Degrees(AnalysisArgs),
    /// Joint degree distribution.
    Jdd(AnalysisArgs),
    /// Triangles and clustering coefficients.
    Clustering(AnalysisArgs),
    /// Redundancy, reachability, path lengths, diameter, components.
    Connectivity(AnalysisArgs),
    /// Every metric in one JSON report.
    Analyze(AnalysisArgs),
    /// Write a synthetic dataset.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JddArg {
    Ordered,
    Unordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    All,
    Eligible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HopsArg {
    Ases,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EdgeModeArg {
    Endpoints,
    PathAdjacent,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AsCountArg {
    Endpoints,
    AllFields,
}

#[derive(Debug, Args)]
struct AnalysisArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "endpoints")]
    edge_mode: EdgeModeArg,
    #[arg(long, value_enum, default_value = "endpoints")]
    as_count: AsCountArg,
    #[arg(long, value_enum, default_value = "ordered")]
    jdd: JddArg,
    #[arg(long, value_enum, default_value = "eligible")]
    clustering_scope: ScopeArg,
    #[arg(long, value_enum, default_value = "ases")]
    hops: HopsArg,
    /// Force an exact diameter even on large graphs.
    #[arg(long)]
    exact_diameter: bool,
    /// BFS sources for average path length.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Abort on the first malformed row.
    #[arg(long)]
    strict: bool,
    #[arg(long, env = "ASTOPO_THREADS")]
    threads: Option<usize>,
    /// Fractional digits for probabilities and averages.
    #[arg(long, default_value_t = 6)]
    precision: u32,
    /// Rows in the top clustering table.
    #[arg(long, default_value_t = 10)]
    top_k: usize,
    /// Also write CSV sidecars (analyze only).
    #[arg(long)]
    csv_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// paper, random-uniform, or configuration-model.
    #[arg(long)]
    profile: Option<String>,
    /// Flat key = value config; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    /// Comma-separated degree:count pairs.
    #[arg(long)]
    degree_sequence: Option<String>,
    #[arg(long)]
    path_min: Option<usize>,
    #[arg(long)]
    path_max: Option<usize>,
    /// Comma-separated weights, one per length from path-min to path-max.
    #[arg(long)]
    path_weights: Option<String>,
    #[arg(long)]
    consistent_paths: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_FAILURE, format!("i/o error: {e}"))
    }
}

impl From<GenerateError> for Failure {
    fn from(e: GenerateError) -> Self {
        Failure::new(EXIT_GENERATE, format!("generate: {e}"))
    }
}

/// Runs the CLI with process stdio; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout(), &mut io::stderr())
}

/// Runs the CLI against the given output streams.
pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Generate(args) => cmd_generate(args, out, err),
        Command::Stats(args) => with_pool(args, || cmd_stats(args, out, err)),
        Command::Degrees(args) => with_pool(args, || cmd_degrees(args, out, err)),
        Command::Jdd(args) => with_pool(args, || cmd_jdd(args, out, err)),
        Command::Clustering(args) => with_pool(args, || cmd_clustering(args, out, err)),
        Command::Connectivity(args) => with_pool(args, || cmd_connectivity(args, out, err)),
        Command::Analyze(args) => with_pool(args, || cmd_analyze(args, out, err)),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn with_pool<F>(args: &AnalysisArgs, f: F) -> Result<(), Failure>
where
    F: FnOnce() -> Result<(), Failure> + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("thread pool: {e}")))?;
    pool.install(f)
}

impl AnalysisArgs {
    fn edge_mode(&self) -> EdgeMode {
        match self.edge_mode {
            EdgeModeArg::Endpoints => EdgeMode::Endpoints,
            EdgeModeArg::PathAdjacent => EdgeMode::PathAdjacent,
            EdgeModeArg::Both => EdgeMode::Both,
        }
    }

    fn as_count(&self) -> AsCountMode {
        match self.as_count {
            AsCountArg::Endpoints => AsCountMode::Endpoints,
            AsCountArg::AllFields => AsCountMode::AllFields,
        }
    }

    fn scope(&self) -> ClusteringScope {
        match self.clustering_scope {
            ScopeArg::All => ClusteringScope::AllNodes,
            ScopeArg::Eligible => ClusteringScope::EligibleOnly,
        }
    }

    fn connectivity_options(&self) -> ConnectivityOptions {
        ConnectivityOptions {
            hops: match self.hops {
                HopsArg::Ases => HopCounting::Ases,
                HopsArg::Edges => HopCounting::Edges,
            },
            sample_size: self.sample,
            exact_diameter: self.exact_diameter.then_some(true),
            seed: self.seed,
        }
    }

    /// Manifest for an analysis run. Thread count is deliberately left
    /// out: it never changes results.
    fn manifest(&self, command: &'static str) -> RunManifest {
        let mut m = RunManifest::new(command);
        m.input_path = Some(self.input.display().to_string());
        m.edge_mode = Some(self.edge_mode().to_string());
        m.seed = Some(self.seed);
        m.option("as_count", format!("{:?}", self.as_count).to_lowercase())
            .option("jdd", format!("{:?}", self.jdd).to_lowercase())
            .option("clustering_scope", self.scope())
            .option("hops", self.connectivity_options().hops)
            .option("exact_diameter", self.exact_diameter)
            .option(
                "sample",
                self.sample.map_or("auto".to_string(), |s| s.to_string()),
            )
            .option("precision", self.precision)
            .option("strict", self.strict)
            .option("top_k", self.top_k);
        m
    }
}

/// Parses the input, echoing each malformed row to `err`.
fn load(
    args: &AnalysisArgs,
    manifest: &mut RunManifest,
    err: &mut dyn Write,
) -> Result<ParsedDataset, Failure> {
    let file = File::open(&args.input).map_err(|e| {
        Failure::new(
            EXIT_MISSING_INPUT,
            format!("cannot open {}: {e}", args.input.display()),
        )
    })?;
    let format = FormatConfig::default().strict(args.strict);
    let parsed = manifest.time("parse", || {
        parse_records_with(BufReader::new(file), &format, |row| {
            let _ = writeln!(err, "{row}");
        })
    });
    parsed.map_err(|e| match e {
        DatasetError::Strict(row) => Failure::new(EXIT_STRICT_PARSE, format!("strict mode: {row}")),
        DatasetError::Io(e) => Failure::from(e),
    })
}

fn graph_of(args: &AnalysisArgs, records: &[LinkRecord], manifest: &mut RunManifest) -> AsGraph {
    let mode = args.edge_mode();
    manifest.time("build_graph", || build_graph(records, mode))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, report: &T, precision: u32) -> Result<(), Failure> {
    out.write_all(to_json(report, precision).as_bytes())?;
    Ok(())
}

fn cmd_stats(args: &AnalysisArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let mut manifest = args.manifest("stats");
    manifest.seed = None;
    let parsed = load(args, &mut manifest, err)?;
    let stats = parsed.stats(args.as_count());
    match args.format {
        OutputFormat::Json => emit_json(
            out,
            &json!({ "manifest": manifest, "stats": stats }),
            args.precision,
        ),
        fmt => {
            let text = key_values(
                &serde_json::to_value(&stats).expect("stats serialize"),
                fmt == OutputFormat::Csv,
            );
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_degrees(
    args: &AnalysisArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let mut manifest = args.manifest("degrees");
    let parsed = load(args, &mut manifest, err)?;
    let graph = graph_of(args, &parsed.records, &mut manifest);
    let dist = manifest.time("degree_distribution", || degree_distribution(&graph));
    match args.format {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "manifest": manifest,
                "graph": GraphSection::new(&graph, args.edge_mode()),
                "degree_distribution": DegreeSection::new(&dist),
            }),
            args.precision,
        ),
        OutputFormat::Csv => {
            out.write_all(histogram_csv(&degree_histogram(&dist), args.precision).as_bytes())?;
            Ok(())
        }
        OutputFormat::Table => {
            writeln!(out, "{:>8}  {:>10}  probability", "degree", "count")?;
            for row in degree_histogram(&dist) {
                writeln!(
                    out,
                    "{:>8}  {:>10}  {}",
                    row.degree,
                    row.count,
                    report::fmt_prob(row.probability, args.precision)
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_jdd(args: &AnalysisArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let mut manifest = args.manifest("jdd");
    let parsed = load(args, &mut manifest, err)?;
    let graph = graph_of(args, &parsed.records, &mut manifest);
    let ordered = args.jdd == JddArg::Ordered;
    let jdd = manifest.time("joint_degree_distribution", || {
        joint_degree_distribution(&graph, ordered)
    });
    match args.format {
        OutputFormat::Json => emit_json(
            out,
            &json!({ "manifest": manifest, "joint_degree_distribution": JddSection::new(&jdd) }),
            args.precision,
        ),
        OutputFormat::Csv => {
            out.write_all(jdd_csv(&jdd.rows(), args.precision).as_bytes())?;
            Ok(())
        }
        OutputFormat::Table => {
            writeln!(out, "{:>10}  {:>8}  probability", "(k, k')", "count")?;
            for r in jdd.rows() {
                writeln!(
                    out,
                    "{:>10}  {:>8}  {}",
                    format!("({}, {})", r.k, r.k_prime),
                    r.count,
                    report::fmt_prob(r.probability, args.precision)
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_clustering(
    args: &AnalysisArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let mut manifest = args.manifest("clustering");
    let parsed = load(args, &mut manifest, err)?;
    let graph = graph_of(args, &parsed.records, &mut manifest);
    let report = manifest.time("clustering", || clustering_report(&graph));
    let section = ClusteringSection::new(&report, args.scope(), args.top_k);
    match args.format {
        OutputFormat::Json => emit_json(
            out,
            &json!({ "manifest": manifest, "clustering": section }),
            args.precision,
        ),
        OutputFormat::Csv => {
            out.write_all(clustering_csv(&report, args.precision).as_bytes())?;
            Ok(())
        }
        OutputFormat::Table => {
            let mut value = serde_json::to_value(&section).expect("section serializes");
            round_floats(&mut value, args.precision);
            out.write_all(key_values(&value, false).as_bytes())?;
            writeln!(out)?;
            writeln!(out, "{:>12}  local_clustering", "AS")?;
            for e in &section.top_k {
                writeln!(
                    out,
                    "{:>12}  {}",
                    e.asn,
                    report::fmt_prob(e.coefficient, args.precision)
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_connectivity(
    args: &AnalysisArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let mut manifest = args.manifest("connectivity");
    let parsed = load(args, &mut manifest, err)?;
    let graph = graph_of(args, &parsed.records, &mut manifest);
    let options = args.connectivity_options();
    let report = manifest.time("connectivity", || {
        connectivity_report(&graph, &parsed.records, &options)
    });
    match args.format {
        OutputFormat::Json => emit_json(
            out,
            &json!({ "manifest": manifest, "connectivity": report }),
            args.precision,
        ),
        fmt => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            round_floats(&mut value, args.precision);
            out.write_all(key_values(&value, fmt == OutputFormat::Csv).as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_analyze(
    args: &AnalysisArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    if args.format == OutputFormat::Csv {
        return Err(Failure::new(
            EXIT_FAILURE,
            "analyze writes JSON or a table; use --csv-dir for CSV sidecars",
        ));
    }
    let mut manifest = args.manifest("analyze");
    let started = std::time::Instant::now();
    let parsed = load(args, &mut manifest, err)?;
    let graph = graph_of(args, &parsed.records, &mut manifest);
    let dataset = parsed.stats(args.as_count());

    let dist = manifest.time("degree_distribution", || degree_distribution(&graph));
    let ordered = args.jdd == JddArg::Ordered;
    let jdd = manifest.time("joint_degree_distribution", || {
        joint_degree_distribution(&graph, ordered)
    });
    let clustering = manifest.time("clustering", || clustering_report(&graph));
    let options = args.connectivity_options();
    let connectivity = manifest.time("connectivity", || {
        connectivity_report(&graph, &parsed.records, &options)
    });

    if let Some(dir) = &args.csv_dir {
        write_sidecars(dir, &dist, &jdd, &clustering, args.precision)?;
    }
    manifest
        .timings
        .insert("total".into(), started.elapsed().as_secs_f64() * 1e3);

    let report = AnalyzeReport {
        manifest,
        dataset,
        graph: GraphSection::new(&graph, args.edge_mode()),
        degree_distribution: DegreeSection::new(&dist),
        joint_degree_distribution: JddSection::new(&jdd),
        clustering: ClusteringSection::new(&clustering, args.scope(), args.top_k),
        connectivity,
    };
    match args.format {
        OutputFormat::Table => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            round_floats(&mut value, args.precision);
            for section in [
                "dataset",
                "graph",
                "degree_distribution",
                "clustering",
                "connectivity",
            ] {
                writeln!(out, "[{section}]")?;
                out.write_all(key_values(&value[section], false).as_bytes())?;
                writeln!(out)?;
            }
            Ok(())
        }
        _ => emit_json(out, &report, args.precision),
    }
}

fn write_sidecars(
    dir: &Path,
    dist: &crate::metrics::DegreeDistribution,
    jdd: &crate::metrics::JointDegreeDistribution,
    clustering: &crate::metrics::ClusteringReport,
    precision: u32,
) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    fs::write(
        dir.join("degree_histogram.csv"),
        histogram_csv(&degree_histogram(dist), precision),
    )?;
    fs::write(dir.join("jdd.csv"), jdd_csv(&jdd.rows(), precision))?;
    fs::write(
        dir.join("clustering.csv"),
        clustering_csv(clustering, precision),
    )?;
    Ok(())
}

fn generator_config(args: &GenerateArgs) -> Result<GeneratorConfig, Failure> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Failure::new(
                    EXIT_MISSING_INPUT,
                    format!("cannot read {}: {e}", path.display()),
                )
            })?;
            GeneratorConfig::from_key_values(&text)?
        }
        None => GeneratorConfig::paper(0),
    };
    let seed = args.seed.unwrap_or(config.seed);

    // a degree sequence alone implies the configuration model
    let profile = match (&args.profile, &args.degree_sequence) {
        (Some(p), _) => Some(p.parse::<Profile>()?),
        (None, Some(_)) if args.config.is_none() => Some(Profile::ConfigurationModel),
        _ => None,
    };
    if let Some(profile) = profile.filter(|p| *p != config.profile) {
        let range = config.path_length_range;
        config = match profile {
            Profile::Paper => GeneratorConfig::paper(seed),
            Profile::RandomUniform => GeneratorConfig::random_uniform(0, 0, seed),
            Profile::ConfigurationModel => {
                GeneratorConfig::configuration_model(Default::default(), seed)
            }
        };
        if args.config.is_some() {
            config.path_length_range = range;
        }
    }
    config.seed = seed;
    if let Some(seq) = &args.degree_sequence {
        let seq = parse_degree_sequence(seq)?;
        if config.profile == Profile::ConfigurationModel {
            let derived = GeneratorConfig::configuration_model(seq, seed);
            config.node_count = derived.node_count;
            config.edge_count = derived.edge_count;
            config.degree_sequence = derived.degree_sequence;
        } else {
            config.degree_sequence = Some(seq);
        }
    }
    if let Some(n) = args.nodes {
        config.node_count = n;
    }
    if let Some(m) = args.edges {
        config.edge_count = m;
    }
    if let Some(min) = args.path_min {
        config.path_length_range.0 = min;
    }
    if let Some(max) = args.path_max {
        config.path_length_range.1 = max;
    }
    if let Some(w) = &args.path_weights {
        config.path_length_weights = Some(parse_weights(w)?);
    }
    if args.consistent_paths {
        config.consistent_paths = true;
    }
    Ok(config)
}

fn cmd_generate(
    args: &GenerateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let config = generator_config(args)?;
    let mut manifest = RunManifest::new("generate");
    manifest.seed = Some(config.seed);
    manifest
        .option("profile", config.profile)
        .option("nodes", config.node_count)
        .option("edges", config.edge_count)
        .option(
            "path_length_range",
            format!(
                "{}..={}",
                config.path_length_range.0, config.path_length_range.1
            ),
        )
        .option("consistent_paths", config.consistent_paths);
    if let Some(seq) = &config.degree_sequence {
        let text: Vec<String> = seq.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        manifest.option("degree_sequence", text.join(","));
    }
    if let Some(w) = &config.path_length_weights {
        let text: Vec<String> = w.iter().map(f64::to_string).collect();
        manifest.option("path_weights", text.join(","));
    }
    let records = manifest.time("generate", || generator::generate(&config))?;

    let summary = json!({ "manifest": manifest, "records": records.len() });
    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                Failure::new(
                    EXIT_FAILURE,
                    format!("cannot create {}: {e}", path.display()),
                )
            })?;
            generator::write_dataset(&records, file)?;
            out.write_all(to_json(&summary, 6).as_bytes())?;
        }
        None => {
            generator::write_dataset(&records, &mut *out)?;
            err.write_all(to_json(&summary, 6).as_bytes())?;
        }
    }
    Ok(())
}
