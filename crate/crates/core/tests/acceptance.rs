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

//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use astopo::connectivity::{
    average_shortest_path_length, connected_components, diameter, observed_path_length,
    path_redundancy, reachability, HopCounting,
};
use astopo::dataset::{
    basic_stats, parse_records, AsCountMode, AsNumber, FormatConfig, LinkRecord,
};
use astopo::generator::{generate, write_dataset, GeneratorConfig, PAPER_DEGREE_SEQUENCE};
use astopo::graph::{build_graph, AsGraph, EdgeMode};
use astopo::metrics::{
    clustering_report, degree_distribution, joint_degree_distribution, local_clustering,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn astopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_astopo"))
        .args(args)
        .env_remove("ASTOPO_THREADS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Result<Value, String> {
    ensure!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
            .lines()
            .next()
            .unwrap_or("")
    );
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn fixture(name: &str) -> Vec<LinkRecord> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let text = std::fs::read(path).expect("fixture exists");
    let parsed = parse_records(text.as_slice(), &FormatConfig::default().strict(true)).unwrap();
    parsed.records
}

fn write_corpus(dir: &Path, name: &str, records: &[LinkRecord]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path).unwrap());
    write_dataset(records, &mut file).unwrap();
    file.flush().unwrap();
    path
}

fn paper_frequencies() -> BTreeMap<String, Value> {
    PAPER_DEGREE_SEQUENCE
        .iter()
        .map(|&(k, n)| (k.to_string(), Value::from(n)))
        .collect()
}

fn degree_table_reproduced(tmp: &Path) -> Check {
    let corpus = tmp.join("paper.csv");
    let start = Instant::now();
    let out = astopo(&[
        "generate",
        "--profile",
        "paper",
        "--seed",
        "2024",
        "--output",
        path_str(&corpus),
    ]);
    ensure!(
        out.status.success(),
        "generate exited {:?}",
        out.status.code()
    );
    let v = report(&astopo(&["analyze", "--input", path_str(&corpus)]))?;
    let elapsed = start.elapsed();

    let freq: BTreeMap<String, Value> =
        serde_json::from_value(v["degree_distribution"]["frequency"].clone()).unwrap();
    ensure!(freq == paper_frequencies(), "frequencies {freq:?}");
    ensure!(
        v["graph"]["node_count"] == 17_232,
        "nodes {}",
        v["graph"]["node_count"]
    );
    ensure!(
        v["graph"]["edge_count"] == 10_000,
        "edges {}",
        v["graph"]["edge_count"]
    );
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!(
        "17232 nodes, 10000 edges, exact frequencies, {elapsed:.2?}"
    ))
}

fn identities_hold(g: &AsGraph) -> Result<(), String> {
    let d = degree_distribution(g);
    let freq_total: u64 = d.frequency().values().sum();
    ensure!(
        freq_total == g.node_count() as u64,
        "sum of frequencies {freq_total}"
    );
    let mass: u64 = d.frequency().iter().map(|(&k, &n)| k as u64 * n).sum();
    ensure!(mass == 2 * g.edge_count() as u64, "degree mass {mass}");
    if g.node_count() > 0 {
        let p: f64 = d.probabilities().values().sum();
        ensure!((p - 1.0).abs() <= 1e-12, "sum P(k) = {p}");
    }
    for ordered in [true, false] {
        let j = joint_degree_distribution(g, ordered);
        if j.total_edges() > 0 {
            let p: f64 = j.rows().iter().map(|r| r.probability).sum();
            ensure!(
                (p - 1.0).abs() <= 1e-12,
                "sum P(k,k') = {p} (ordered {ordered})"
            );
        }
    }
    let c = clustering_report(g);
    let t: u64 = c.nodes.iter().map(|n| n.triangles).sum();
    ensure!(
        t == 3 * c.triangle_total,
        "sum T(i) {t} vs {}",
        c.triangle_total
    );
    Ok(())
}

fn consistency_identities() -> Check {
    let mut graphs = 0;
    for seed in 0..5 {
        let records = generate(&GeneratorConfig::paper(seed)).unwrap();
        for mode in [EdgeMode::Endpoints, EdgeMode::PathAdjacent, EdgeMode::Both] {
            identities_hold(&build_graph(&records, mode))?;
            graphs += 1;
        }
    }
    for seed in 0..200 {
        identities_hold(&common::Sample::random(seed, 64).graph())?;
        graphs += 1;
    }
    for name in [
        "table1.tsv",
        "triangle.csv",
        "two_pairs.csv",
        "path3.csv",
        "redundancy.csv",
    ] {
        identities_hold(&build_graph(&fixture(name), EdgeMode::Both))?;
        graphs += 1;
    }
    Ok(format!("{graphs} graphs"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let trials = 200;
    for seed in 0..trials {
        let s = common::Sample::random(seed, 64);
        let g = s.graph();
        let c = clustering_report(&g);
        ensure!(
            c.triangle_total == common::triangles_by_triples(&s.adj),
            "seed {seed}: triangles"
        );
        for i in 0..s.n {
            let got = local_clustering(&g, AsNumber::new(common::label(i)).unwrap()).unwrap();
            let want = common::local_clustering_by_pairs(&s.adj, i);
            ensure!((got - want).abs() < 1e-12, "seed {seed}: C at node {i}");
        }
        let comps: Vec<Vec<u32>> = connected_components(&g)
            .components
            .iter()
            .map(|c| c.iter().map(|a| a.get()).collect())
            .collect();
        ensure!(
            comps == common::components_by_closure(&s.adj),
            "seed {seed}: components"
        );
        if g.edge_count() > 0 {
            let d = diameter(&g, true, seed).unwrap().value as u64;
            ensure!(
                d == common::diameter_of_giant(&s.adj),
                "seed {seed}: diameter"
            );
        }
        let rch = reachability(&g).ok();
        ensure!(
            rch == common::reachability_by_pairs(&s.adj),
            "seed {seed}: reachability"
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{trials} trials, {elapsed:.2?}"))
}

fn hand_fixtures() -> Check {
    let two = build_graph(&fixture("two_pairs.csv"), EdgeMode::Endpoints);
    let rch = reachability(&two).unwrap();
    ensure!(rch == 1.0 / 3.0, "two pairs Rch {rch}");

    let path = build_graph(&fixture("path3.csv"), EdgeMode::Endpoints);
    let asp = average_shortest_path_length(&path, None, 0).unwrap().mean;
    ensure!(asp == 4.0 / 3.0, "path ASP {asp}");
    let jdd = joint_degree_distribution(&path, false);
    ensure!(
        jdd.probability(1, 2) == 1.0,
        "path P(1,2) {}",
        jdd.probability(1, 2)
    );

    let r = path_redundancy(&fixture("redundancy.csv")).unwrap();
    ensure!(r == 1.5, "redundancy {r}");

    let table = fixture("table1.tsv");
    let s = basic_stats(&table, AsCountMode::Endpoints);
    ensure!(s.path_length_min == Some(1), "min {:?}", s.path_length_min);
    ensure!(s.path_length_max == Some(5), "max {:?}", s.path_length_max);
    ensure!(
        s.path_length_avg == Some(4.0),
        "mean {:?}",
        s.path_length_avg
    );
    ensure!(
        s.unique_prefix_count == 5,
        "prefixes {}",
        s.unique_prefix_count
    );
    Ok("Rch 1/3, ASP 4/3, P(1,2) 1, R 1.5, paths 1/5/4.0, 5 prefixes".into())
}

fn path_length_shape() -> Check {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let seeds = 0..25u64;
    for seed in seeds.clone() {
        let mut config = GeneratorConfig::paper(seed);
        config.path_length_weights = Some(vec![1.0; 5]);
        let records = generate(&config).unwrap();
        let s = basic_stats(&records, AsCountMode::Endpoints);
        ensure!(
            s.path_length_min == Some(1),
            "seed {seed}: min {:?}",
            s.path_length_min
        );
        ensure!(
            s.path_length_max == Some(5),
            "seed {seed}: max {:?}",
            s.path_length_max
        );
        let mean = observed_path_length(&records, HopCounting::Ases).unwrap();
        ensure!((mean - 3.0).abs() <= 0.15, "seed {seed}: mean {mean}");
        lo = lo.min(mean);
        hi = hi.max(mean);
    }
    Ok(format!("25 seeds, mean in [{lo:.4}, {hi:.4}]"))
}

/// Report text with the timings object removed.
fn without_timings(stdout: &[u8]) -> String {
    let text = String::from_utf8_lossy(stdout);
    let mut kept = Vec::new();
    let mut skipping = false;
    for line in text.lines() {
        if line.trim_start().starts_with("\"timings\": {") {
            skipping = !line.trim_end().ends_with('}');
            continue;
        }
        if skipping {
            skipping = !line.trim_start().starts_with('}');
            continue;
        }
        kept.push(line);
    }
    kept.join("\n")
}

fn thread_determinism(tmp: &Path) -> Check {
    let corpus = write_corpus(
        tmp,
        "det.csv",
        &generate(&GeneratorConfig::paper(99)).unwrap(),
    );
    let mut variants = Vec::new();
    for flags in [
        &["--edge-mode", "endpoints"][..],
        &["--edge-mode", "both", "--jdd", "unordered"][..],
    ] {
        let run = |threads: &str| {
            let mut args = vec![
                "analyze",
                "--input",
                path_str(&corpus),
                "--seed",
                "5",
                "--threads",
                threads,
            ];
            args.extend_from_slice(flags);
            let out = astopo(&args);
            report(&out).map(|_| without_timings(&out.stdout))
        };
        let one = run("1")?;
        let eight = run("8")?;
        ensure!(one == eight, "reports differ for {flags:?}");
        ensure!(one.len() > 1000, "report suspiciously short");
        variants.push(flags[1]);
    }
    Ok(format!(
        "--threads 1 vs 8 byte-identical ({})",
        variants.join(", ")
    ))
}

fn synthetic_rows(count: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut buf = Vec::with_capacity(count * 64);
    buf.extend_from_slice(b"AS_Source,AS_Destination,IPv6_Prefix,AS_Path\n");
    for _ in 0..count {
        let addr = std::net::Ipv6Addr::from(rng.gen::<u128>());
        write!(
            buf,
            "{},{},{addr},",
            rng.gen_range(1..65_000u32),
            rng.gen_range(1..65_000u32)
        )
        .unwrap();
        for h in 0..rng.gen_range(1..=5) {
            if h > 0 {
                buf.push(b' ');
            }
            write!(buf, "{}", rng.gen_range(1..65_000u32)).unwrap();
        }
        buf.push(b'\n');
    }
    buf
}

fn scale(tmp: &Path) -> Check {
    let corpus = write_corpus(
        tmp,
        "scale.csv",
        &generate(&GeneratorConfig::paper(7)).unwrap(),
    );
    let start = Instant::now();
    let v = report(&astopo(&["analyze", "--input", path_str(&corpus)]))?;
    let analyze = start.elapsed();
    ensure!(v["connectivity"]["diameter"].is_u64(), "no diameter");
    ensure!(
        v["connectivity"]["graph_avg_shortest_path_sampled"] == true,
        "path length not sampled"
    );
    ensure!(analyze < Duration::from_secs(5), "analyze took {analyze:?}");

    let rows = 1_000_000;
    let text = synthetic_rows(rows);
    let start = Instant::now();
    let parsed = parse_records(text.as_slice(), &FormatConfig::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    ensure!(
        parsed.records.len() == rows,
        "parsed {} rows, {} errors",
        parsed.records.len(),
        parsed.errors.len()
    );
    let rate = rows as f64 / secs;
    ensure!(rate >= 100_000.0, "{rate:.0} rows/s");
    Ok(format!(
        "analyze {analyze:.2?}, parse {:.0}k rows/s",
        rate / 1e3
    ))
}

fn corrupt(line: &str, which: usize) -> String {
    let fields: Vec<&str> = line.split(',').collect();
    match which % 6 {
        0 => format!("0,{},{},{}", fields[1], fields[2], fields[3]),
        1 => format!("{},AS{},{},{}", fields[0], fields[1], fields[2], fields[3]),
        2 => format!(
            "{},{},{}/129,{}",
            fields[0], fields[1], fields[2], fields[3]
        ),
        3 => format!("{},{},{},", fields[0], fields[1], fields[2]),
        4 => format!("{},{},{}", fields[0], fields[1], fields[2]),
        _ => format!("{},{},not-an-address,{}", fields[0], fields[1], fields[3]),
    }
}

fn comparable(mut v: Value) -> Value {
    let manifest = v["manifest"].as_object_mut().unwrap();
    manifest.remove("timings");
    manifest.remove("input_path");
    v["dataset"]["rejected_count"] = Value::Null;
    v
}

fn malformed_rows(tmp: &Path) -> Check {
    let records = generate(&GeneratorConfig::paper(31)).unwrap();
    let mut clean = Vec::new();
    write_dataset(&records, &mut clean).unwrap();
    let clean = String::from_utf8(clean).unwrap();

    let mut dirty = String::new();
    let mut kept = Vec::new();
    let mut bad_lines = Vec::new();
    for (i, line) in clean.lines().enumerate() {
        // every 20th data row is damaged
        if i > 0 && i % 20 == 0 {
            dirty.push_str(&corrupt(line, i / 20));
            bad_lines.push(i + 1);
        } else {
            dirty.push_str(line);
            if i > 0 {
                kept.push(records[i - 1].clone());
            }
        }
        dirty.push('\n');
    }
    let dirty_path = tmp.join("dirty.csv");
    std::fs::write(&dirty_path, &dirty).unwrap();
    let kept_path = write_corpus(tmp, "kept.csv", &kept);

    let out = astopo(&["analyze", "--input", path_str(&dirty_path)]);
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    let got = report(&out)?;
    let reported: Vec<usize> = stderr
        .lines()
        .filter_map(|l| l.strip_prefix("line:")?.split(' ').next()?.parse().ok())
        .collect();
    ensure!(
        reported == bad_lines,
        "stderr lists {} bad lines, expected {}",
        reported.len(),
        bad_lines.len()
    );
    ensure!(
        got["dataset"]["rejected_count"] == bad_lines.len(),
        "rejected_count {}",
        got["dataset"]["rejected_count"]
    );
    let want = report(&astopo(&["analyze", "--input", path_str(&kept_path)]))?;
    ensure!(
        comparable(got) == comparable(want),
        "metrics differ from the valid remainder"
    );

    let out = astopo(&["analyze", "--input", path_str(&dirty_path), "--strict"]);
    ensure!(
        out.status.code() == Some(3),
        "strict exit {:?}",
        out.status.code()
    );
    let first = format!("line:{} ", bad_lines[0]);
    ensure!(
        String::from_utf8_lossy(&out.stderr).contains(&first),
        "strict stderr lacks {first}"
    );
    Ok(format!(
        "{} of {} rows rejected, strict exit 3",
        bad_lines.len(),
        records.len()
    ))
}

fn main() {
    let tmp = TempDir::new().expect("temp dir");
    let dir = tmp.path();
    let criteria: Vec<Criterion> = vec![
        (
            "degree table reproduction",
            Box::new(|| degree_table_reproduced(dir)),
        ),
        ("consistency identities", Box::new(consistency_identities)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("hand-computed fixtures", Box::new(hand_fixtures)),
        ("path length shape", Box::new(path_length_shape)),
        ("thread determinism", Box::new(|| thread_determinism(dir))),
        ("scale and throughput", Box::new(|| scale(dir))),
        ("malformed-row robustness", Box::new(|| malformed_rows(dir))),
    ];

    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
