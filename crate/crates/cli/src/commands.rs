use std::fs::File;
use std::hint::black_box;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use chunkpart::graphgen::{gen_er, gen_rmat, RmatParams};
use chunkpart::hash::CounterRng;
use chunkpart::io::{self as cio, FileKind};
use chunkpart::metrics::{objective_def4, powerlaw_bound, quality_of_assignment, quality_of_chunks, rf_upper_bound, QualityReport};
use chunkpart::ordering::{order_geo_baseline_with_cap, order_geo_fast, order_trivial, TrivialStrategy};
use chunkpart::partitioners::{partition_dbh, partition_hash1d, partition_hash2d};
use chunkpart::scaling::run_schedule;
use chunkpart::{id2p, Assignment, Graph, Ordering, OrderingParams, PartitionSpec, Restart};
use log::info;
use serde::Serialize;
use serde_json::json;

use crate::{Algo, AssignmentFormat, BoundArgs, EvaluateArgs, Format, GenArgs, GenModel, Method, OrderArgs, PartitionArgs, RestartArg, ScaleArgs};

const SCHEMA: u32 = 1;

/// Bad flags or inputs the user can fix; exits with 2.
#[derive(Debug)]
pub struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<chunkpart::Error>() {
            return match e {
                chunkpart::Error::Io(_) => 1,
                _ => 2,
            };
        }
    }
    1
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn file_kind(reader: &mut BufReader<File>) -> Result<FileKind> {
    Ok(cio::detect_kind(reader.fill_buf()?))
}

enum Loaded {
    Graph(Graph),
    Ordered(Graph, Ordering),
}

fn load(path: &Path) -> Result<Loaded> {
    let mut r = open(path)?;
    let loaded = match file_kind(&mut r)? {
        FileKind::Ordered => {
            let (g, o) = cio::read_ordered(r)?;
            Loaded::Ordered(g, o)
        }
        FileKind::Assignment => bail!(usage(format!("{} is an assignment, not a graph", path.display()))),
        _ => Loaded::Graph(cio::read_any_graph(r)?),
    };
    Ok(loaded)
}

fn load_ordered(path: &Path) -> Result<(Graph, Ordering)> {
    match load(path)? {
        Loaded::Ordered(g, o) => Ok((g, o)),
        Loaded::Graph(_) => Err(usage(format!("{} is not an ordered edge list", path.display()))),
    }
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn gen(args: GenArgs) -> Result<()> {
    let pairs = match args.model {
        GenModel::Rmat { scale, edge_factor, a, b, c, d, seed } => {
            gen_rmat(&RmatParams { scale, edge_factor, a, b, c, d, seed })?
        }
        GenModel::Er { n, m, seed } => gen_er(n, m, seed)?,
    };
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if args.binary {
        cio::write_graph(sink, &Graph::canonicalize(&pairs))?;
    } else {
        cio::write_edge_list(sink, &pairs)?;
    }
    info!("generated {} raw edges", pairs.len());
    Ok(())
}

pub fn order(args: OrderArgs) -> Result<()> {
    let graph = match load(&args.input)? {
        Loaded::Graph(g) | Loaded::Ordered(g, _) => g,
    };
    let restart = match args.restart {
        RestartArg::Random => Restart::Random,
        RestartArg::LowestId => Restart::LowestId,
    };
    let mut params = OrderingParams::new(args.kmin, args.kmax, args.seed).with_restart(restart);
    if let Some(delta) = args.delta {
        params = params.with_delta(delta);
    }
    let start = Instant::now();
    let ordering = match args.algo {
        Algo::Geo => order_geo_fast(&graph, &params)?,
        Algo::GeoBaseline => order_geo_baseline_with_cap(&graph, &params, args.baseline_cap)?,
        Algo::Input => order_trivial(&graph, TrivialStrategy::InputOrder, args.seed),
        Algo::Random => order_trivial(&graph, TrivialStrategy::RandomShuffle, args.seed),
        Algo::Bfs => order_trivial(&graph, TrivialStrategy::Bfs, args.seed),
    };
    let elapsed = start.elapsed();
    cio::write_ordered(create(&args.out)?, &graph, &ordering)?;
    eprintln!(
        "ordered |V|={} |E|={} in {:.3} ms",
        graph.vertex_count(),
        graph.edge_count(),
        elapsed.as_secs_f64() * 1e3
    );
    Ok(())
}

/// Mean nanoseconds per partition lookup over a fixed pseudo-random batch.
fn cep_query_ns(edge_count: u64, k: u64) -> f64 {
    if edge_count == 0 {
        return 0.0;
    }
    const QUERIES: u64 = 100_000;
    let mut rng = CounterRng::new(0x5eed);
    let indices: Vec<u64> = (0..QUERIES).map(|_| rng.below(edge_count)).collect();
    let start = Instant::now();
    let mut acc = 0u64;
    for &i in &indices {
        acc = acc.wrapping_add(id2p(black_box(edge_count), black_box(k), i).unwrap_or(0));
    }
    black_box(acc);
    start.elapsed().as_nanos() as f64 / QUERIES as f64
}

fn write_assignment(path: &Path, format: AssignmentFormat, a: &Assignment) -> Result<()> {
    match format {
        AssignmentFormat::Binary => cio::write_assignment(create(path)?, a)?,
        AssignmentFormat::Csv => {
            let mut w = csv::Writer::from_writer(create(path)?);
            w.write_record(["edge_index", "partition"])?;
            for (e, p) in a.part_of().iter().enumerate() {
                w.write_record([e.to_string(), p.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn read_assignment(path: &Path, edge_count: usize) -> Result<Assignment> {
    let mut r = open(path)?;
    if file_kind(&mut r)? == FileKind::Assignment {
        return Ok(cio::read_assignment(r)?);
    }
    #[derive(serde::Deserialize)]
    struct Row {
        edge_index: usize,
        partition: u32,
    }
    let mut parts = vec![None; edge_count];
    for row in csv::Reader::from_reader(r).deserialize() {
        let row: Row = row.map_err(|e| usage(format!("bad assignment row: {e}")))?;
        match parts.get_mut(row.edge_index) {
            Some(slot @ None) => *slot = Some(row.partition),
            Some(Some(_)) => return Err(usage(format!("edge {} assigned twice", row.edge_index))),
            None => return Err(usage(format!("edge index {} out of range for {edge_count} edges", row.edge_index))),
        }
    }
    let parts: Vec<u32> = parts
        .into_iter()
        .enumerate()
        .map(|(e, p)| p.ok_or_else(|| usage(format!("edge {e} has no partition"))))
        .collect::<Result<_>>()?;
    // CSV carries no k; the largest id used decides it.
    let k = parts.iter().max().map_or(1, |&p| p + 1);
    Ok(Assignment::new(k, parts)?)
}

pub fn partition(args: PartitionArgs) -> Result<()> {
    let loaded = load(&args.input)?;
    let graph = match &loaded {
        Loaded::Graph(g) | Loaded::Ordered(g, _) => g,
    };
    let m = graph.edge_count() as u64;
    let assignment = match (args.method, &loaded) {
        (Method::Cep, Loaded::Ordered(_, ordering)) => {
            let spec = PartitionSpec::new(m, args.k)?;
            let query_ns = cep_query_ns(m, args.k);
            match args.format {
                Format::Json => print_json(&json!({
                    "schema": SCHEMA,
                    "method": "cep",
                    "k": args.k,
                    "edge_count": m,
                    "boundaries": spec.boundaries(),
                    "query_ns": query_ns,
                }))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(io::stdout().lock());
                    w.write_record(["partition", "start", "end"])?;
                    for (p, r) in spec.ranges().enumerate() {
                        w.write_record([p.to_string(), r.start.to_string(), r.end.to_string()])?;
                    }
                    w.flush()?;
                }
            }
            match &args.out {
                Some(_) => Assignment::from_chunks(ordering, args.k)?,
                None => return Ok(()),
            }
        }
        (Method::Cep, Loaded::Graph(_)) => {
            return Err(usage("cep needs an ordered edge list; run `chunkpart order` first"))
        }
        (Method::Hash1d, _) => partition_hash1d(graph, args.k, args.seed)?,
        (Method::Hash2d, _) => partition_hash2d(graph, args.k)?,
        (Method::Dbh, _) => partition_dbh(graph, args.k)?,
    };
    if !matches!(args.method, Method::Cep) {
        let name = match args.method {
            Method::Hash1d => "hash1d",
            Method::Hash2d => "hash2d",
            _ => "dbh",
        };
        match args.format {
            Format::Json => print_json(&json!({
                "schema": SCHEMA,
                "method": name,
                "k": args.k,
                "edge_count": m,
                "loads": assignment.loads(),
            }))?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                w.write_record(["partition", "edges"])?;
                for (p, l) in assignment.loads().iter().enumerate() {
                    w.write_record([p.to_string(), l.to_string()])?;
                }
                w.flush()?;
            }
        }
    }
    if let Some(path) = &args.out {
        write_assignment(path, args.assignment_format, &assignment)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct QualityRow {
    k: u64,
    rf: f64,
    eb: f64,
    vb: f64,
}

impl From<&QualityReport> for QualityRow {
    fn from(q: &QualityReport) -> Self {
        Self { k: q.k, rf: q.rf, eb: q.eb, vb: q.vb }
    }
}

fn write_csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn evaluate(args: EvaluateArgs) -> Result<()> {
    use rayon::prelude::*;

    let loaded = load(&args.input)?;
    let (reports, objective) = match (&args.assignment, &loaded) {
        (Some(path), Loaded::Graph(g) | Loaded::Ordered(g, _)) => {
            let a = read_assignment(path, g.edge_count())?;
            (vec![quality_of_assignment(g, &a)?], None)
        }
        (None, Loaded::Ordered(g, o)) => {
            if args.k_list.is_empty() || args.k_list.contains(&0) {
                return Err(usage("--k-list needs positive partition counts"));
            }
            let reports = args
                .k_list
                .par_iter()
                .map(|&k| quality_of_chunks(g, o, k))
                .collect::<chunkpart::Result<Vec<_>>>()?;
            let objective = if g.edge_count() > 0 {
                let hi = args.kmax.min(g.edge_count() as u64);
                Some(objective_def4(g, o, args.kmin.min(hi), hi)?)
            } else {
                None
            };
            (reports, objective)
        }
        (None, Loaded::Graph(_)) => {
            return Err(usage("give an ordered edge list, or a graph with --assignment"))
        }
    };
    match args.format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "reports": reports,
            "objective": objective,
        }))?,
        Format::Csv => write_csv_rows(reports.iter().map(QualityRow::from))?,
    }
    Ok(())
}

fn read_schedule_file(path: &Path) -> Result<Vec<u64>> {
    let mut ks = Vec::new();
    for (n, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        ks.push(
            line.parse()
                .map_err(|_| usage(format!("{}:{}: not a partition count: {line:?}", path.display(), n + 1)))?,
        );
    }
    Ok(ks)
}

#[derive(Serialize)]
struct StepRow {
    k_before: String,
    k_after: String,
    migrated_exact: u64,
    migrated_estimate: f64,
    rf: Option<f64>,
    eb: Option<f64>,
    vb: Option<f64>,
}

pub fn scale(args: ScaleArgs) -> Result<()> {
    let schedule = match &args.schedule_file {
        Some(p) => read_schedule_file(p)?,
        None => args.schedule.clone(),
    };
    if schedule.len() < 2 {
        return Err(usage("a schedule needs at least two partition counts"));
    }
    let (graph, ordering) = load_ordered(&args.input)?;
    let steps = run_schedule(&graph, &ordering, &schedule)?;
    let total_exact: u64 = steps.iter().map(|s| s.migrated_exact).sum();
    let total_estimate: f64 = steps.iter().map(|s| s.migrated_estimate).sum();
    match args.format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "edge_count": graph.edge_count(),
            "steps": steps,
            "totals": {"migrated_exact": total_exact, "migrated_estimate": total_estimate},
        }))?,
        Format::Csv => {
            let rows = steps.iter().map(|s| StepRow {
                k_before: s.k_before.to_string(),
                k_after: s.k_after.to_string(),
                migrated_exact: s.migrated_exact,
                migrated_estimate: s.migrated_estimate,
                rf: Some(s.quality_after.rf),
                eb: Some(s.quality_after.eb),
                vb: Some(s.quality_after.vb),
            });
            let total = StepRow {
                k_before: "total".into(),
                k_after: String::new(),
                migrated_exact: total_exact,
                migrated_estimate: total_estimate,
                rf: None,
                eb: None,
                vb: None,
            };
            write_csv_rows(rows.chain(std::iter::once(total)))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundRow {
    alpha: f64,
    bound: f64,
}

pub fn bound(args: BoundArgs) -> Result<()> {
    if args.alphas.is_empty() && args.vertices.is_none() {
        return Err(usage("give --alphas, or --vertices/--edges/--k"));
    }
    let rows = args
        .alphas
        .iter()
        .map(|&alpha| Ok(BoundRow { alpha, bound: powerlaw_bound(alpha)? }))
        .collect::<Result<Vec<_>>>()?;
    let rf = match (args.vertices, args.edges, args.k) {
        (Some(v), Some(e), Some(k)) => Some(rf_upper_bound(v, e, k)?),
        _ => None,
    };
    match args.format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "powerlaw": rows,
            "rf_upper_bound": rf,
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["kind", "input", "bound"])?;
            for r in &rows {
                w.write_record(["powerlaw".to_string(), r.alpha.to_string(), r.bound.to_string()])?;
            }
            if let (Some(b), Some(v), Some(e), Some(k)) = (rf, args.vertices, args.edges, args.k) {
                w.write_record(["rf".to_string(), format!("{v}/{e}/{k}"), b.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
