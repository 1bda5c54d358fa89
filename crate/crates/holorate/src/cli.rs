//! Command-line surface.
//!
//! Every command renders through [`OutputSpec`]: CSV with a header row, JSON
//! with snake-case keys, or a human-readable pretty layout. Identical inputs
//! produce byte-identical output. Exit codes: 0 success, 2 user or domain
//! error, 3 internal invariant violation (a bug, not bad input).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::analysis::{self, AnalysisError, FigureMode, RangeReport};
use crate::geometry::{self, GeometryError};
use crate::inflation::{self, CodeFamily, InflationError};
use crate::output::{Format, OutputSpec};
use crate::schlafli::{SchlafliError, SchlafliPair};
use crate::tiling::{self, LayerCensus, MatrixVerdict, SeedKind, SimError};

#[derive(Debug, Parser)]
#[command(
    name = "holorate",
    version,
    about = "Code-rate bounds and tile-completion growth on regular hyperbolic tessellations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    /// a single tile
    Tile,
    /// two tiles sharing an edge
    Edge,
    /// q tiles around a vertex
    Vertex,
}

impl SeedArg {
    fn kind(self) -> SeedKind {
        match self {
            SeedArg::Tile => SeedKind::SingleTile,
            SeedArg::Edge => SeedKind::EdgePair,
            SeedArg::Vertex => SeedKind::VertexStar,
        }
    }

    fn label(self) -> &'static str {
        match self {
            SeedArg::Tile => "tile",
            SeedArg::Edge => "edge",
            SeedArg::Vertex => "vertex",
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
    pub format: FormatArg,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Decimal places for real-valued fields
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

impl OutputArgs {
    fn spec(&self) -> OutputSpec {
        OutputSpec {
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
                FormatArg::Pretty => Format::Pretty,
            },
            destination: self.output.clone(),
            precision: self.precision,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geometric code-rate bound of one {p,q} tessellation
    Bound {
        p: u64,
        q: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tile-completion growth system and code rate of one tessellation
    Rate {
        p: u64,
        q: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Range reports (q_min, q_opt, q_max, crossing estimate) over a span of p
    Scan {
        p_from: u64,
        p_to: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Grow a patch layer by layer and verify the census algebra against it
    Simulate {
        p: u64,
        q: u64,
        /// Seed patch to grow from
        #[arg(long, value_enum, default_value_t = SeedArg::Tile)]
        seed: SeedArg,
        /// Number of growth layers to attempt
        #[arg(long, default_value_t = 8)]
        layers: u32,
        /// Stop growing once the perimeter exceeds this many edges
        #[arg(long, default_value_t = 1_000_000)]
        max_boundary: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The three summary tables (values rounded to the 3-decimal presentation)
    Tables {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Data series for one of the four figures
    Figures {
        /// 1: code rate, per-p families; 2: code rate, per-q families;
        /// 3: rate/bound ratio, per-p; 4: rate/bound ratio, per-q
        fig: u8,
        /// Upper limit of the varying parameter
        #[arg(long, default_value_t = 50)]
        limit: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Internal(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<SchlafliError> for CliError {
    fn from(e: SchlafliError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<InflationError> for CliError {
    fn from(e: InflationError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Precision(_) => CliError::Internal(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bound { p, q, out } => cmd_bound(p, q, &out.spec()),
        Command::Rate { p, q, out } => cmd_rate(p, q, &out.spec()),
        Command::Scan { p_from, p_to, out } => cmd_scan(p_from, p_to, &out.spec()),
        Command::Simulate { p, q, seed, layers, max_boundary, out } => {
            cmd_simulate(p, q, seed, layers, max_boundary, &out.spec())
        }
        Command::Tables { out } => cmd_tables(&out.spec()),
        Command::Figures { fig, limit, out } => cmd_figures(fig, limit, &out.spec()),
    }
}

fn csv_block(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn json_payload(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json rendering");
    s.push('\n');
    s
}

pub fn cmd_bound(p: u64, q: u64, spec: &OutputSpec) -> Result<(), CliError> {
    let pq = SchlafliPair::new(p, q)?;
    let tile = geometry::tile_geometry::<f64>(pq)?;
    let curvature = pq.classify();
    let payload = match spec.format {
        Format::Csv => csv_block(
            &["p", "q", "curvature", "side_length", "area", "bound"],
            &[vec![
                p.to_string(),
                q.to_string(),
                curvature.to_string(),
                spec.real(tile.side_length),
                spec.real(tile.area),
                spec.real(tile.bound),
            ]],
        ),
        Format::Json => json_payload(json!({
            "p": p,
            "q": q,
            "curvature": curvature.to_string(),
            "side_length": spec.json_real(tile.side_length),
            "area": spec.json_real(tile.area),
            "bound": spec.json_real(tile.bound),
        })),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "{pq}  {curvature}");
            let _ = writeln!(s, "  side length  {}", spec.real(tile.side_length));
            let _ = writeln!(s, "  tile area    {}", spec.real(tile.area));
            let _ = writeln!(s, "  bound        {}", spec.real(tile.bound));
            s
        }
    };
    spec.write_payload(&payload)?;
    Ok(())
}

pub fn cmd_rate(p: u64, q: u64, spec: &OutputSpec) -> Result<(), CliError> {
    let pq = SchlafliPair::new(p, q)?;
    let sys = inflation::growth_system::<f64>(pq)?;
    let code_rate: f64 = inflation::code_rate(pq)?;
    let bound: f64 = geometry::bound(pq)?;
    let ratio = code_rate / bound;
    let qec = code_rate < 1.0;
    let m = sys.matrix.entries;
    let half_trace = sys.matrix.half_trace();
    let payload = match spec.format {
        Format::Csv => csv_block(
            &[
                "p", "q", "half_trace", "growth_rate", "m00", "m01", "m10", "m11", "u0", "u1",
                "code_rate", "bound", "ratio", "qec",
            ],
            &[vec![
                p.to_string(),
                q.to_string(),
                spec.real(half_trace.to_f64().unwrap_or(f64::NAN)),
                spec.real(sys.growth_rate),
                m[0][0].to_string(),
                m[0][1].to_string(),
                m[1][0].to_string(),
                m[1][1].to_string(),
                spec.real(sys.growth_vector[0]),
                spec.real(sys.growth_vector[1]),
                spec.real(code_rate),
                spec.real(bound),
                spec.real(ratio),
                qec.to_string(),
            ]],
        ),
        Format::Json => json_payload(json!({
            "p": p,
            "q": q,
            "half_trace": spec.json_real(half_trace.to_f64().unwrap_or(f64::NAN)),
            "growth_rate": spec.json_real(sys.growth_rate),
            "matrix": [[m[0][0], m[0][1]], [m[1][0], m[1][1]]],
            "growth_vector": [
                spec.json_real(sys.growth_vector[0]),
                spec.json_real(sys.growth_vector[1]),
            ],
            "tile_vector": sys.tile_vector,
            "edge_vector": sys.edge_vector,
            "code_rate": spec.json_real(code_rate),
            "bound": spec.json_real(bound),
            "ratio": spec.json_real(ratio),
            "qec": qec,
        })),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "{pq}  tile completion");
            let _ = writeln!(
                s,
                "  growth matrix  [[{}, {}], [{}, {}]]",
                m[0][0], m[0][1], m[1][0], m[1][1]
            );
            let _ = writeln!(s, "  half trace     {half_trace}");
            let _ = writeln!(s, "  growth rate    {}", spec.real(sys.growth_rate));
            let _ = writeln!(
                s,
                "  growth vector  ({}, {})",
                spec.real(sys.growth_vector[0]),
                spec.real(sys.growth_vector[1])
            );
            let _ = writeln!(
                s,
                "  edge vector    ({}, {})",
                sys.edge_vector[0], sys.edge_vector[1]
            );
            let _ = writeln!(s, "  code rate      {}", spec.real(code_rate));
            let _ = writeln!(s, "  bound          {}", spec.real(bound));
            let _ = writeln!(s, "  ratio          {}", spec.real(ratio));
            let _ = writeln!(s, "  QEC            {}", if qec { "yes (code rate < 1)" } else { "no (code rate >= 1)" });
            s
        }
    };
    spec.write_payload(&payload)?;
    Ok(())
}

fn range_row(r: &RangeReport, spec: &OutputSpec) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.q_min.to_string(),
        r.q_opt.to_string(),
        spec.real(r.best_bound),
        r.q_max.as_ref().map(|q| q.to_string()).unwrap_or_default(),
        r.q1_estimate.map(|v| spec.real(v)).unwrap_or_default(),
    ]
}

fn range_json(r: &RangeReport, spec: &OutputSpec) -> Value {
    json!({
        "p": r.p,
        "q_min": r.q_min,
        "q_opt": r.q_opt,
        "best_bound": spec.json_real(r.best_bound),
        "q_max": r.q_max.as_ref().map(|q| Value::from(q.to_string())).unwrap_or(Value::Null),
        "q1_estimate": r.q1_estimate.map(|v| spec.json_real(v)).unwrap_or(Value::Null),
    })
}

pub fn cmd_scan(p_from: u64, p_to: u64, spec: &OutputSpec) -> Result<(), CliError> {
    if p_from < 3 || p_from > p_to {
        return Err(CliError::Domain(format!(
            "invalid scan range {p_from}..{p_to}: need 3 <= p_from <= p_to"
        )));
    }
    let reports: Vec<RangeReport> = (p_from..=p_to)
        .map(analysis::range_report)
        .collect::<Result<_, _>>()?;
    const HEADER: [&str; 6] = ["p", "q_min", "q_opt", "best_bound", "q_max", "q1_estimate"];
    let payload = match spec.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports.iter().map(|r| range_row(r, spec)).collect();
            csv_block(&HEADER, &rows)
        }
        Format::Json => json_payload(Value::Array(
            reports.iter().map(|r| range_json(r, spec)).collect(),
        )),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:<5} {:>6} {:>6} {:>12} {:>22} {:>14}",
                "p", "q_min", "q_opt", "best_bound", "q_max", "q1_estimate"
            );
            for r in &reports {
                let row = range_row(r, spec);
                let _ = writeln!(
                    s,
                    "{:<5} {:>6} {:>6} {:>12} {:>22} {:>14}",
                    row[0],
                    row[1],
                    row[2],
                    row[3],
                    if row[4].is_empty() { "-" } else { &row[4] },
                    if row[5].is_empty() { "-" } else { &row[5] },
                );
            }
            s
        }
    };
    spec.write_payload(&payload)?;
    Ok(())
}

struct SimulateSummary {
    transient: Option<u32>,
    matrix_verified: Option<bool>,
    empirical_rate: Option<f64>,
    closed_form_rate: f64,
    class_labels: [u64; 2],
}

fn census_fields(
    census: &LayerCensus,
    labels: [u64; 2],
    iso: bool,
    spec: &OutputSpec,
) -> Vec<String> {
    let class = |k: u64| {
        census
            .class_counts
            .get(&k)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "0".into())
    };
    vec![
        census.layer.to_string(),
        census.new_tiles.to_string(),
        class(labels[0]),
        class(labels[1]),
        census.perimeter_edges.to_string(),
        census.cumulative_tiles.to_string(),
        spec.real(census.empirical_rate()),
        iso.to_string(),
    ]
}

pub fn cmd_simulate(
    p: u64,
    q: u64,
    seed: SeedArg,
    layers: u32,
    max_boundary: u64,
    spec: &OutputSpec,
) -> Result<(), CliError> {
    let pq = SchlafliPair::new(p, q)?;
    let censuses = tiling::run(pq, seed.kind(), layers, max_boundary)?;
    let sys = inflation::growth_system::<f64>(pq)?;
    let verdict = if censuses.len() >= 4 {
        Some(tiling::verify_growth_matrix(&censuses, &sys)?)
    } else {
        None
    };
    let iso: Vec<bool> = censuses
        .iter()
        .map(|c| tiling::verify_isoperimetric(c, pq))
        .collect::<Result<_, _>>()?;
    let summary = SimulateSummary {
        transient: verdict.as_ref().and_then(|v| v.transient()),
        matrix_verified: verdict.as_ref().map(MatrixVerdict::is_verified),
        empirical_rate: if censuses.len() >= 2 {
            Some(tiling::empirical_code_rate(&censuses)?)
        } else {
            None
        },
        closed_form_rate: inflation::code_rate(pq)?,
        class_labels: sys.edge_vector,
    };

    const HEADER: [&str; 8] = [
        "layer",
        "new_tiles",
        "class_a",
        "class_b",
        "perimeter",
        "cumulative",
        "empirical_rate",
        "isoperimetric",
    ];
    let opt_str = |v: Option<String>| v.unwrap_or_default();
    let payload = match spec.format {
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# p={p},q={q},seed={},layers_requested={layers},max_boundary={max_boundary}",
                seed.label()
            );
            let _ = writeln!(
                s,
                "# transient={},matrix_verified={},empirical_rate={},closed_form_rate={}",
                opt_str(summary.transient.map(|k| k.to_string())),
                opt_str(summary.matrix_verified.map(|b| b.to_string())),
                opt_str(summary.empirical_rate.map(|r| spec.real(r))),
                spec.real(summary.closed_form_rate),
            );
            let rows: Vec<Vec<String>> = censuses
                .iter()
                .zip(&iso)
                .map(|(c, &ok)| census_fields(c, summary.class_labels, ok, spec))
                .collect();
            s.push_str(&csv_block(&HEADER, &rows));
            s
        }
        Format::Json => json_payload(json!({
            "p": p,
            "q": q,
            "seed": seed.label(),
            "layers_requested": layers,
            "max_boundary": max_boundary,
            "transient": summary.transient,
            "matrix_verified": summary.matrix_verified,
            "empirical_rate": summary.empirical_rate.map(|r| spec.json_real(r)),
            "closed_form_rate": spec.json_real(summary.closed_form_rate),
            "class_labels": summary.class_labels,
            "layers": censuses.iter().zip(&iso).map(|(c, &ok)| {
                let f = census_fields(c, summary.class_labels, ok, spec);
                json!({
                    "layer": c.layer,
                    "new_tiles": f[1],
                    "class_a": f[2],
                    "class_b": f[3],
                    "perimeter": f[4],
                    "cumulative": f[5],
                    "empirical_rate": spec.json_real(c.empirical_rate()),
                    "isoperimetric": ok,
                })
            }).collect::<Vec<_>>(),
        })),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{pq} seed={} layers={layers} max_boundary={max_boundary}",
                seed.label()
            );
            let _ = writeln!(
                s,
                "{:>5} {:>12} {:>10} {:>10} {:>12} {:>12} {:>12} {:>6}",
                "layer",
                "new_tiles",
                format!("class_{}", summary.class_labels[0]),
                format!("class_{}", summary.class_labels[1]),
                "perimeter",
                "cumulative",
                "empirical",
                "iso"
            );
            for (c, &ok) in censuses.iter().zip(&iso) {
                let f = census_fields(c, summary.class_labels, ok, spec);
                let _ = writeln!(
                    s,
                    "{:>5} {:>12} {:>10} {:>10} {:>12} {:>12} {:>12} {:>6}",
                    f[0], f[1], f[2], f[3], f[4], f[5], f[6],
                    if ok { "ok" } else { "FAIL" }
                );
            }
            let _ = writeln!(
                s,
                "transient:        {}",
                opt_str(summary.transient.map(|k| k.to_string()))
            );
            let _ = writeln!(
                s,
                "matrix verified:  {}",
                match summary.matrix_verified {
                    Some(true) => "yes",
                    Some(false) => "NO",
                    None => "skipped (needs 4 layers)",
                }
            );
            let _ = writeln!(
                s,
                "empirical rate:   {}",
                opt_str(summary.empirical_rate.map(|r| spec.real(r)))
            );
            let _ = writeln!(s, "closed-form rate: {}", spec.real(summary.closed_form_rate));
            s
        }
    };
    spec.write_payload(&payload)?;
    Ok(())
}

pub fn cmd_tables(spec: &OutputSpec) -> Result<(), CliError> {
    // presentation rounding: 3 decimals for rates/bounds, 1 for the estimate
    let t3 = OutputSpec { precision: 3, ..spec.clone() };
    let t1 = OutputSpec { precision: 1, ..spec.clone() };
    let code_rates = analysis::table_code_rates();
    let best: Vec<(u64, u64, f64)> = (3..=10)
        .map(|p| analysis::q_opt(p).map(|(q, b)| (p, q, b)))
        .collect::<Result<_, _>>()?;
    let ranges: Vec<RangeReport> = (4..=7)
        .map(analysis::range_report)
        .collect::<Result<_, _>>()?;

    let payload = match spec.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str("# code rates of the four benchmark tilings\n");
            let rows: Vec<Vec<String>> = code_rates
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.q.to_string(),
                        t3.real(r.code_rate),
                        t3.real(r.bound),
                        t3.real(r.ratio),
                    ]
                })
                .collect();
            s.push_str(&csv_block(&["p", "q", "code_rate", "bound", "ratio"], &rows));
            s.push_str("# best code-rate bound per tile size\n");
            let rows: Vec<Vec<String>> = best
                .iter()
                .map(|&(p, q, b)| vec![p.to_string(), q.to_string(), t3.real(b)])
                .collect();
            s.push_str(&csv_block(&["p", "q_opt", "best_bound"], &rows));
            s.push_str("# range of q with bound below one\n");
            let rows: Vec<Vec<String>> = ranges
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.q_min.to_string(),
                        r.q_max.as_ref().map(|q| q.to_string()).unwrap_or_default(),
                        r.q1_estimate.map(|v| t1.real(v)).unwrap_or_default(),
                    ]
                })
                .collect();
            s.push_str(&csv_block(&["p", "q_min", "q_max", "q1_estimate"], &rows));
            s
        }
        Format::Json => json_payload(json!({
            "code_rates": code_rates.iter().map(|r| json!({
                "p": r.p,
                "q": r.q,
                "code_rate": t3.json_real(r.code_rate),
                "bound": t3.json_real(r.bound),
                "ratio": t3.json_real(r.ratio),
            })).collect::<Vec<_>>(),
            "best_bounds": best.iter().map(|&(p, q, b)| json!({
                "p": p,
                "q_opt": q,
                "best_bound": t3.json_real(b),
            })).collect::<Vec<_>>(),
            "qec_ranges": ranges.iter().map(|r| json!({
                "p": r.p,
                "q_min": r.q_min,
                "q_max": r.q_max.as_ref().map(|q| Value::from(q.to_string())).unwrap_or(Value::Null),
                "q1_estimate": r.q1_estimate.map(|v| t1.json_real(v)).unwrap_or(Value::Null),
            })).collect::<Vec<_>>(),
        })),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "Code rates and bounds of the benchmark tilings");
            let _ = writeln!(s, "{:<3} {:<3} {:>9} {:>9} {:>9}", "p", "q", "rate", "bound", "ratio");
            for r in &code_rates {
                let _ = writeln!(
                    s,
                    "{:<3} {:<3} {:>9} {:>9} {:>9}",
                    r.p,
                    r.q,
                    t3.real(r.code_rate),
                    t3.real(r.bound),
                    t3.real(r.ratio)
                );
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "Best code-rate bound per tile size");
            let _ = writeln!(s, "{:<3} {:>6} {:>11}", "p", "q_opt", "best_bound");
            for &(p, q, b) in &best {
                let _ = writeln!(s, "{:<3} {:>6} {:>11}", p, q, t3.real(b));
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "Range of q with bound below one");
            let _ = writeln!(s, "{:<3} {:>6} {:>6} {:>12}", "p", "q_min", "q_max", "q1_estimate");
            for r in &ranges {
                let _ = writeln!(
                    s,
                    "{:<3} {:>6} {:>6} {:>12}",
                    r.p,
                    r.q_min,
                    r.q_max.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "-".into()),
                    r.q1_estimate.map(|v| t1.real(v)).unwrap_or_else(|| "-".into()),
                );
            }
            s
        }
    };
    spec.write_payload(&payload)?;
    Ok(())
}

pub fn cmd_figures(fig: u8, limit: u64, spec: &OutputSpec) -> Result<(), CliError> {
    let (mode, fixed_p, threshold) = match fig {
        1 => (FigureMode::Rate, true, true),
        2 => (FigureMode::Rate, false, true),
        3 => (FigureMode::Ratio, true, false),
        4 => (FigureMode::Ratio, false, false),
        other => {
            return Err(CliError::Domain(format!(
                "unknown figure {other}: expected 1, 2, 3 or 4"
            )))
        }
    };
    let families: Vec<CodeFamily> = (3..=7)
        .map(|v| if fixed_p { CodeFamily::FixedP(v) } else { CodeFamily::FixedQ(v) })
        .collect();
    let mut all_rows: Vec<(String, Option<analysis::FigureRow>)> = Vec::new();
    if threshold {
        all_rows.push(("QEC".into(), None));
    }
    for family in families {
        for row in analysis::figure_series(mode, family, limit)? {
            all_rows.push((family.label(), Some(row)));
        }
    }

    const HEADER: [&str; 5] = ["family", "p", "q", "x", "y"];
    let fields = |label: &str, row: &Option<analysis::FigureRow>| -> Vec<String> {
        match row {
            Some(r) => vec![
                label.to_string(),
                r.p.to_string(),
                r.q.to_string(),
                spec.real(r.x),
                spec.real(r.y),
            ],
            None => vec![label.to_string(), String::new(), String::new(), String::new(), spec.real(1.0)],
        }
    };
    let payload = match spec.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                all_rows.iter().map(|(l, r)| fields(l, r)).collect();
            csv_block(&HEADER, &rows)
        }
        Format::Json => json_payload(json!({
            "fig": fig,
            "rows": all_rows.iter().map(|(label, row)| match row {
                Some(r) => json!({
                    "family": label,
                    "p": r.p,
                    "q": r.q,
                    "x": spec.json_real(r.x),
                    "y": spec.json_real(r.y),
                }),
                None => json!({
                    "family": label,
                    "p": Value::Null,
                    "q": Value::Null,
                    "x": Value::Null,
                    "y": spec.json_real(1.0),
                }),
            }).collect::<Vec<_>>(),
        })),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "figure {fig} ({} vs growth-rate bound ratio)", match mode {
                FigureMode::Rate => "code rate",
                FigureMode::Ratio => "code rate / bound",
            });
            let _ = writeln!(s, "{:<8} {:>5} {:>5} {:>12} {:>12}", "family", "p", "q", "x", "y");
            for (label, row) in &all_rows {
                let f = fields(label, row);
                let _ = writeln!(
                    s,
                    "{:<8} {:>5} {:>5} {:>12} {:>12}",
                    f[0],
                    if f[1].is_empty() { "-" } else { &f[1] },
                    if f[2].is_empty() { "-" } else { &f[2] },
                    if f[3].is_empty() { "-" } else { &f[3] },
                    f[4]
                );
            }
            s
        }
    };
    spec.write_payload(&payload)?;
    Ok(())
}
