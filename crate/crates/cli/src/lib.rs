//! Batch front end: polytope JSON in, reports out.
//!
//! Exit codes: 0 success, 1 malformed input, 2 domain error, 3 internal
//! consistency violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use polydefect::classify::classify;
use polydefect::constructions::{cube, hypersimplex, join, product, simplex};
use polydefect::invariants::{f_value, report};
use polydefect::json::{int_value, polytope_from_str, polytope_to_string, polytope_to_value, rat_value};
use polydefect::{Error, Polytope};
use serde_json::{json, Map, Value};

pub const FORMAT_VERSION: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Info,
    Invariants,
    Ehrhart,
    Classify,
    Construct,
    Join,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Invariants => "invariants",
            Command::Ehrhart => "ehrhart",
            Command::Classify => "classify",
            Command::Construct => "construct",
            Command::Join => "join",
        }
    }

    /// Whether the command reads a polytope from the input.
    pub fn reads_input(self) -> bool {
        !matches!(self, Command::Construct | Command::Join)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Simplex,
    Cube,
    Hypersimplex,
    Product,
    Join,
}

#[derive(Debug, Parser)]
#[command(name = "polydefect", version, about = "Dual-defect invariants of lattice polytopes")]
pub struct Args {
    /// What to compute.
    #[arg(value_enum)]
    pub command: Command,
    /// Polytope JSON file; standard input when absent.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Inclusive range of t for c_t, written `a..b`.
    #[arg(long = "t-range", default_value = "0..4", value_parser = parse_t_range)]
    pub t_range: RangeInclusive<usize>,
    /// Largest dilation sampled by `info`, `invariants` and `ehrhart`.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub dilations: u64,
    /// Summand file for `join` and `construct --family product|join`.
    #[arg(long = "summand")]
    pub summands: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub len: Option<i64>,
}

fn parse_t_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Everything `run` needs besides the input bytes.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_format: Format,
    pub t_range: Vec<usize>,
    pub dilation_max: u64,
    pub family: Option<Family>,
    pub dim: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub len: Option<i64>,
    pub summands: Vec<PathBuf>,
}

impl From<Args> for CliConfig {
    fn from(a: Args) -> Self {
        CliConfig {
            command: a.command,
            input_path: a.input,
            output_format: a.format,
            t_range: a.t_range.collect(),
            dilation_max: a.dilations,
            family: a.family,
            dim: a.dim,
            k: a.k,
            n: a.n,
            len: a.len,
            summands: a.summands,
        }
    }
}

impl CliConfig {
    pub fn new(command: Command) -> Self {
        CliConfig {
            command,
            input_path: None,
            output_format: Format::Json,
            t_range: (0..=4).collect(),
            dilation_max: 3,
            family: None,
            dim: None,
            k: None,
            n: None,
            len: None,
            summands: Vec::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed { .. } => EXIT_MALFORMED,
        e if e.is_internal() => EXIT_INTERNAL,
        _ => EXIT_DOMAIN,
    }
}

/// Runs one command. On failure the output is a one-line message.
pub fn run(config: &CliConfig, input: &[u8]) -> (i32, Vec<u8>) {
    match dispatch(config, input) {
        Ok(text) => (EXIT_OK, text.into_bytes()),
        Err(e) => (exit_code(&e), format!("error: {e}\n").into_bytes()),
    }
}

fn dispatch(config: &CliConfig, input: &[u8]) -> polydefect::Result<String> {
    let body = match config.command {
        Command::Construct => return construct(config).map(|p| polytope_to_string(&p) + "\n"),
        Command::Join => return summand_join(config).map(|p| polytope_to_string(&p) + "\n"),
        Command::Info => info(&read_polytope(input)?, config)?,
        Command::Invariants => invariants(&read_polytope(input)?, config)?,
        Command::Ehrhart => ehrhart(&read_polytope(input)?, config)?,
        Command::Classify => serde_json::to_value(classify(&read_polytope(input)?)?)
            .map_err(|e| Error::Internal(e.to_string()))?,
    };
    let mut doc = Map::new();
    doc.insert("format_version".into(), json!(FORMAT_VERSION));
    doc.insert("command".into(), json!(config.command.name()));
    doc.insert("result".into(), body);
    let doc = Value::Object(doc);
    Ok(match config.output_format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Table => table(&doc),
    })
}

fn read_polytope(input: &[u8]) -> polydefect::Result<Polytope> {
    let text = std::str::from_utf8(input).map_err(|_| Error::malformed("$", "input is not UTF-8"))?;
    polytope_from_str(text)
}

fn read_summands(config: &CliConfig) -> polydefect::Result<Vec<Polytope>> {
    if config.summands.is_empty() {
        return Err(Error::malformed("--summand", "at least one summand file is required"));
    }
    config
        .summands
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::malformed("--summand", format!("{}: {e}", path.display())))?;
            polytope_from_str(&text).map_err(|e| match e {
                Error::Malformed { field, message } => {
                    Error::malformed(format!("{}: {field}", path.display()), message)
                }
                other => other,
            })
        })
        .collect()
}

fn summand_join(config: &CliConfig) -> polydefect::Result<Polytope> {
    join(read_summands(config)?)
}

fn require<T: Copy>(value: Option<T>, flag: &str) -> polydefect::Result<T> {
    value.ok_or_else(|| Error::malformed(flag, "required by this family"))
}

fn construct(config: &CliConfig) -> polydefect::Result<Polytope> {
    let family = require(config.family, "--family")?;
    match family {
        Family::Simplex => Ok(simplex(require(config.dim, "--dim")?)),
        Family::Cube => cube(require(config.dim, "--dim")?, config.len.unwrap_or(1)),
        Family::Hypersimplex => hypersimplex(require(config.k, "--k")?, require(config.n, "--n")?),
        Family::Product => {
            let parts = read_summands(config)?;
            let mut iter = parts.into_iter();
            let first = iter.next().expect("nonempty");
            Ok(iter.fold(first, |acc, q| product(&acc, &q)))
        }
        Family::Join => summand_join(config),
    }
}

fn header(p: &Polytope) -> Map<String, Value> {
    let mut m = Map::new();
    if let Some(name) = p.name() {
        m.insert("name".into(), json!(name));
    }
    m.insert("ambient_dim".into(), json!(p.ambient_dim()));
    m.insert("dim".into(), json!(p.dim()));
    m
}

fn counts(p: &Polytope, config: &CliConfig) -> Value {
    let m: Map<String, Value> =
        (1..=config.dilation_max).map(|n| (n.to_string(), int_value(&p.lattice_points(n)))).collect();
    Value::Object(m)
}

fn info(p: &Polytope, config: &CliConfig) -> polydefect::Result<Value> {
    let mut m = header(p);
    m.insert("num_vertices".into(), json!(p.num_vertices()));
    m.insert("vertices".into(), polytope_to_value(p)["vertices"].clone());
    let facets: Vec<Value> = p
        .ambient_facets()
        .iter()
        .map(|h| {
            json!({
                "normal": h.normal.iter().map(int_value).collect::<Vec<_>>(),
                "offset": int_value(&h.offset),
            })
        })
        .collect();
    m.insert("facets".into(), Value::Array(facets));
    m.insert("f_vector".into(), json!(p.f_vector()));
    m.insert("is_simple".into(), json!(p.is_simple()));
    m.insert("is_delzant".into(), json!(p.is_delzant()));
    m.insert("normalized_volume".into(), int_value(&p.normalized_volume()));
    m.insert("volume".into(), rat_value(&p.volume()));
    m.insert("lattice_points".into(), counts(p, config));
    Ok(Value::Object(m))
}

fn invariants(p: &Polytope, config: &CliConfig) -> polydefect::Result<Value> {
    let rep = report(p, config.t_range.iter().copied())?;
    let mut m = header(p);
    let body = serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?;
    if let Value::Object(fields) = body {
        for (k, v) in fields {
            if k != "dim" {
                m.insert(k, v);
            }
        }
    }
    let f: Map<String, Value> =
        (1..=config.dilation_max).map(|n| (n.to_string(), int_value(&f_value(p, n)))).collect();
    m.insert("f_values".into(), Value::Object(f));
    Ok(Value::Object(m))
}

fn ehrhart(p: &Polytope, config: &CliConfig) -> polydefect::Result<Value> {
    let data = p.ehrhart()?;
    let mut direct = BTreeMap::new();
    for n in 1..=config.dilation_max {
        let count = data.samples.get(&n).cloned().unwrap_or_else(|| p.lattice_points(n));
        if data.eval(n) != polydefect::linalg::Rat::from(count.clone()) {
            return Err(Error::Internal(format!("Ehrhart polynomial disagrees with the count at n = {n}")));
        }
        direct.insert(n, count);
    }
    let mut m = header(p);
    m.insert("normalized_volume".into(), int_value(&p.normalized_volume()));
    m.insert("volume".into(), rat_value(&p.volume()));
    m.insert("polynomial".into(), Value::Array(data.polynomial.iter().map(rat_value).collect()));
    m.insert(
        "lattice_points".into(),
        Value::Object(direct.iter().map(|(n, c)| (n.to_string(), int_value(c))).collect()),
    );
    Ok(Value::Object(m))
}

/// Two aligned columns: dotted key path and scalar value.
fn table(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join_key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join_key(k), x, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array() && x.as_array().is_some_and(|y| y.iter().any(Value::is_object))) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join_key(&i.to_string()), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
