//! Command-line front end. [`run`] takes explicit streams so tests can drive
//! it in-process.
//!
//! Exit codes: 0 success, 1 output failure, 2 bad usage or bad input,
//! 3 internal invariant violated.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use pinchlink_core::{
    AbelianGroup, IntMatrix, LinkError, Move, NormalizationResult, PlumbingGraph, S3Verdict,
};
use serde_json::{json, Value};

use crate::corpus;
use crate::document::{self, graph_to_json, DocError, GraphDoc};

#[derive(Parser, Debug)]
#[command(
    name = "pinchlink",
    version,
    about = "Links of non-normal surface germs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Dump intermediate matrices to stderr as row-major JSON.
    #[arg(long, global = true)]
    debug: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// First homology of the singular link.
    H1 {
        /// Link document, `-` for stdin.
        input: String,
    },
    /// Fill the boundary tori and simplify each component.
    Normalize { input: String },
    /// Obstruction report and smoothability verdict.
    Check { input: String },
    /// Simplify a closed plumbing graph.
    Reduce {
        /// Graph document, `-` for stdin.
        input: String,
    },
    /// Print a built-in example document.
    Example {
        /// One of curling-d, two-planes, cylinder.
        name: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Parse and validate a link or graph document.
    Validate { input: String },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Invariant(String),
    Output(io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Output(_) => 1,
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<LinkError> for Failure {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::InvariantViolation(_) => Failure::Invariant(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

struct Ctx<'a> {
    format: Format,
    debug: bool,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the tool with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        debug: cli.debug,
        stdin,
        out: stdout,
        err: stderr,
    };
    let result = match &cli.verb {
        Verb::H1 { input } => h1(&mut ctx, input),
        Verb::Normalize { input } => normalize(&mut ctx, input),
        Verb::Check { input } => check(&mut ctx, input),
        Verb::Reduce { input } => reduce(&mut ctx, input),
        Verb::Example { name, d } => example(&mut ctx, name, *d),
        Verb::Validate { input } => validate(&mut ctx, input),
    };
    match result.and_then(|()| ctx.out.flush().map_err(Failure::Output)) {
        Ok(()) => 0,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) => format!("error: {m}"),
                Failure::Invariant(m) => format!("internal error: {m}"),
                Failure::Output(e) => format!("error: writing output: {e}"),
            };
            let _ = writeln!(ctx.err, "pinchlink: {msg}");
            f.code()
        }
    }
}

fn read_input(ctx: &mut Ctx<'_>, path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        ctx.stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
    } else {
        text =
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn emit_json(ctx: &mut Ctx<'_>, v: &Value) -> Result<(), Failure> {
    writeln!(ctx.out, "{v}")?;
    Ok(())
}

fn debug_matrix(ctx: &mut Ctx<'_>, name: &str, m: &IntMatrix) -> Result<(), Failure> {
    if ctx.debug {
        writeln!(ctx.err, "{name}: {}", matrix_json(m))?;
    }
    Ok(())
}

/// Row-major JSON; entries are written exactly, however large.
pub fn matrix_json(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn group_json(g: &AbelianGroup) -> Value {
    let torsion: Vec<Value> = g
        .torsion()
        .iter()
        .map(|t| u64::try_from(t).map_or_else(|_| Value::String(t.to_string()), Value::from))
        .collect();
    json!({ "group": g.to_string(), "rank": g.rank(), "torsion": torsion })
}

fn verdict_name(v: S3Verdict) -> &'static str {
    match v {
        S3Verdict::Yes => "yes",
        S3Verdict::No => "no",
        S3Verdict::Undetermined => "undetermined",
    }
}

fn move_json(m: &Move) -> Value {
    match m {
        Move::BlowDown {
            vertex,
            weight,
            neighbors,
        } => {
            json!({"move": "blow_down", "vertex": vertex, "weight": weight, "neighbors": neighbors})
        }
        Move::DeleteIsolated { vertex, weight } => {
            json!({"move": "delete_isolated", "vertex": vertex, "weight": weight})
        }
        Move::ZeroChain { vertices } => json!({"move": "zero_chain", "vertices": vertices}),
    }
}

fn move_text(m: &Move) -> String {
    match m {
        Move::BlowDown {
            vertex,
            weight,
            neighbors,
        } => format!("blow_down v{vertex} ({weight:+}) neighbors {neighbors:?}"),
        Move::DeleteIsolated { vertex, weight } => {
            format!("delete_isolated v{vertex} ({weight:+})")
        }
        Move::ZeroChain { vertices } => format!("zero_chain v{} v{}", vertices[0], vertices[1]),
    }
}

fn graph_value(g: &PlumbingGraph) -> Value {
    serde_json::to_value(GraphDoc::from(g)).expect("graph documents always serialize")
}

fn h1(ctx: &mut Ctx<'_>, input: &str) -> Result<(), Failure> {
    let link = document::parse_link(&read_input(ctx, input)?)?;
    debug_matrix(ctx, "gluing_presentation", &link.gluing_presentation())?;
    debug_matrix(ctx, "component_incidence", &link.component_incidence())?;
    let g = link.h1_singular_link();
    match ctx.format {
        Format::Text => writeln!(ctx.out, "{g}")?,
        Format::Json => emit_json(ctx, &json!({ "h1": group_json(&g) }))?,
    }
    Ok(())
}

fn normalize(ctx: &mut Ctx<'_>, input: &str) -> Result<(), Failure> {
    let link = document::parse_link(&read_input(ctx, input)?)?;
    let result: NormalizationResult = link.normalize()?;
    if ctx.debug {
        for (i, c) in result.components.iter().enumerate() {
            debug_matrix(
                ctx,
                &format!("component {i} intersection"),
                &c.filled.intersection_matrix(),
            )?;
        }
    }
    let h1 = result.h1();
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "components: {}", result.components.len())?;
            for (i, c) in result.components.iter().enumerate() {
                writeln!(ctx.out, "component {i}: s3 {}", verdict_name(c.certificate))?;
                writeln!(ctx.out, "  filled: {}", graph_to_json(&c.filled))?;
                writeln!(
                    ctx.out,
                    "  reduced: {} (+{} s3)",
                    graph_to_json(&c.reduction.graph),
                    c.reduction.s3_components
                )?;
                writeln!(ctx.out, "  h1: {}", c.filled.h1())?;
                for m in &c.reduction.moves {
                    writeln!(ctx.out, "  move: {}", move_text(m))?;
                }
            }
            writeln!(ctx.out, "h1: {h1}")?;
        }
        Format::Json => {
            let components: Vec<Value> = result
                .components
                .iter()
                .map(|c| {
                    json!({
                        "filled": graph_value(&c.filled),
                        "reduced": graph_value(&c.reduction.graph),
                        "s3_components": c.reduction.s3_components,
                        "moves": c.reduction.moves.iter().map(move_json).collect::<Vec<_>>(),
                        "certificate": verdict_name(c.certificate),
                        "h1": group_json(&c.filled.h1()),
                    })
                })
                .collect();
            emit_json(
                ctx,
                &json!({ "components": components, "h1": group_json(&h1) }),
            )?;
        }
    }
    Ok(())
}

fn check(ctx: &mut Ctx<'_>, input: &str) -> Result<(), Failure> {
    let link = document::parse_link(&read_input(ctx, input)?)?;
    let report = link.obstruction_report()?;
    let verdict = link.check_smooth()?;
    let manifold = link.is_topological_manifold();
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "h1: {}", report.h1)?;
            writeln!(ctx.out, "manifold: {manifold}")?;
            writeln!(ctx.out, "obstruction: {}", report.obstruction)?;
            writeln!(ctx.out, "smooth: {verdict}")?;
        }
        Format::Json => emit_json(
            ctx,
            &json!({
                "h1": group_json(&report.h1),
                "manifold": manifold,
                "obstruction": report.obstruction.to_string(),
                "smooth": verdict.to_string(),
            }),
        )?,
    }
    Ok(())
}

fn reduce(ctx: &mut Ctx<'_>, input: &str) -> Result<(), Failure> {
    let graph = document::parse_graph(&read_input(ctx, input)?)?;
    debug_matrix(ctx, "intersection", &graph.intersection_matrix())?;
    let reduction = graph.reduce().map_err(|e| Failure::Input(e.to_string()))?;
    let certificate = graph
        .is_s3_certificate()
        .map_err(|e| Failure::Input(e.to_string()))?;
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "reduced: {}", graph_to_json(&reduction.graph))?;
            writeln!(ctx.out, "s3_components: {}", reduction.s3_components)?;
            for m in &reduction.moves {
                writeln!(ctx.out, "move: {}", move_text(m))?;
            }
            writeln!(ctx.out, "s3: {}", verdict_name(certificate))?;
        }
        Format::Json => emit_json(
            ctx,
            &json!({
                "reduced": graph_value(&reduction.graph),
                "s3_components": reduction.s3_components,
                "moves": reduction.moves.iter().map(move_json).collect::<Vec<_>>(),
                "s3": verdict_name(certificate),
            }),
        )?,
    }
    Ok(())
}

fn example(ctx: &mut Ctx<'_>, name: &str, d: Option<usize>) -> Result<(), Failure> {
    if d.is_some() && name != "curling-d" {
        return Err(Failure::Input(format!(
            "--d only applies to curling-d, not {name}"
        )));
    }
    let doc = corpus::example(name, d).map_err(|e| Failure::Input(e.to_string()))?;
    let text = match ctx.format {
        Format::Text => serde_json::to_string_pretty(&doc),
        Format::Json => serde_json::to_string(&doc),
    }
    .expect("documents always serialize");
    writeln!(ctx.out, "{text}")?;
    Ok(())
}

fn validate(ctx: &mut Ctx<'_>, input: &str) -> Result<(), Failure> {
    let text = read_input(ctx, input)?;
    let probe: Value = serde_json::from_str(&text).map_err(DocError::from)?;
    let summary = if probe.get("exterior").is_some() {
        let link = document::parse_link(&text)?;
        json!({
            "kind": "link",
            "vertices": link.exterior().vertex_count(),
            "arrows": link.exterior().arrows().len(),
            "curves": link.curves().len(),
            "manifold": link.is_topological_manifold(),
        })
    } else if probe.get("vertices").is_some() {
        let graph = document::parse_graph(&text)?;
        json!({
            "kind": "graph",
            "vertices": graph.vertex_count(),
            "arrows": graph.arrows().len(),
            "components": graph.component_count(),
        })
    } else {
        return Err(Failure::Input(
            "document is neither a link (no \"exterior\") nor a graph (no \"vertices\")".into(),
        ));
    };
    match ctx.format {
        Format::Text => {
            let obj = summary.as_object().expect("summary is an object");
            let fields: Vec<String> = obj
                .iter()
                .filter(|(k, _)| *k != "kind")
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(
                ctx.out,
                "ok: {} {}",
                summary["kind"].as_str().unwrap_or(""),
                fields.join(" ")
            )?;
        }
        Format::Json => {
            let mut v = summary;
            v["valid"] = Value::Bool(true);
            emit_json(ctx, &v)?;
        }
    }
    Ok(())
}
