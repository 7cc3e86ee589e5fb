//! Command-line front end. The binary only parses arguments and calls
//! [`run`]; everything here is testable in-process.
//!
//! Exit codes: 0 success, 1 domain error, 2 parse or I/O error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::homology::{kernel_basis, CurveClass, NamedBasis};
use crate::lattice::{
    compact_divisor_rays, cy_vector, height_one_polygon, is_fano_surface, validate_fan, Cone3, Fan,
};
use crate::surgery::{fixed_points_at_infinity, open_invariant_surgery};
use crate::vertex::{gw_table, open_gw, FixedPointChoice, OpenInvariantQuery};

/// A fan file: rays, cones and optional named curve classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rays: Vec<[i64; 3]>,
    pub cones: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, Vec<i64>>,
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::parse(format!("parse error at line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn from_fan(fan: &Fan) -> Self {
        Self {
            rays: fan.rays().iter().map(|r| r.0).collect(),
            cones: fan.cones().iter().map(|c| c.0).collect(),
            classes: BTreeMap::new(),
        }
    }

    pub fn fan(&self) -> Fan {
        Fan::from_arrays(&self.rays, &self.cones)
    }

    /// One ray or cone per line.
    pub fn to_text(&self) -> String {
        let list = |items: Vec<String>| format!("[\n    {}\n  ]", items.join(",\n    "));
        let mut s = String::from("{\n");
        let rays = self.rays.iter().map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2])).collect();
        let cones = self.cones.iter().map(|c| format!("[{}, {}, {}]", c[0], c[1], c[2])).collect();
        let _ = write!(s, "  \"rays\": {},\n  \"cones\": {}", list(rays), list(cones));
        if !self.classes.is_empty() {
            let entries: Vec<String> = self
                .classes
                .iter()
                .map(|(k, v)| format!("{}: {}", serde_json::to_string(k).unwrap(), serde_json::to_string(v).unwrap()))
                .collect();
            let _ = write!(s, ",\n  \"classes\": {{\n    {}\n  }}", entries.join(",\n    "));
        }
        s.push_str("\n}\n");
        s
    }

    /// Named classes in the order given, or all of them in name order.
    pub fn basis(&self, fan: &Fan, names: Option<&[String]>) -> Result<NamedBasis, CliError> {
        let names: Vec<String> = match names {
            Some(n) => n.to_vec(),
            None => self.classes.keys().cloned().collect(),
        };
        if names.is_empty() {
            return Ok(NamedBasis::from_walls(&kernel_basis(fan)?));
        }
        let mut named = Vec::new();
        for n in names {
            let v = self.classes.get(&n).ok_or_else(|| CliError::domain(format!("no class named {n:?}")))?;
            named.push((n, v.clone()));
        }
        Ok(NamedBasis::new(fan, named)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::parse(format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Self::parse(m),
            other => Self::domain(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "toric-gw", version, about = "Toric Calabi-Yau surgery and genus-zero invariants")]
pub struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Worker threads for the vertex sum (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a fan and print its Calabi-Yau data.
    Check { path: PathBuf },
    /// Tabulate genus-zero Gopakumar-Vafa invariants.
    Gw {
        path: PathBuf,
        /// Comma-separated class names from the document.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<String>>,
        /// Total number of boxes over internal edges.
        #[arg(long)]
        cap: usize,
        /// CSV output (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Structured JSON output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Open invariant of the disc class β₀ + α.
    Open {
        path: PathBuf,
        /// Compact divisor ray index.
        #[arg(long)]
        divisor: usize,
        /// Coordinates of α in the basis (or a full ray-indexed class).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<String>>,
        /// `all` or an index into the fixed points on D_∞.
        #[arg(long, default_value = "all")]
        fixed_point: String,
        /// Box cap on W₀ (default: smallest sufficient).
        #[arg(long)]
        cap: Option<usize>,
        /// Audit trace output (JSON).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the surgery pipeline only and print W₀.
    Pipeline {
        path: PathBuf,
        #[arg(long)]
        divisor: usize,
        #[arg(long, default_value = "0")]
        fixed_point: usize,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write W₀ as a fan document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::io(path, e))
}

/// Validation report, CY vector, compact divisors and polygon.
pub fn cmd_check(path: &Path) -> Result<String, CliError> {
    let doc = FanDocument::read(path)?;
    let fan = doc.fan();
    let report = validate_fan(&fan);
    let mut out = String::new();
    if !report.is_valid() {
        for v in &report.violations {
            let _ = writeln!(out, "violation: {v}");
        }
        return Err(CliError::domain(format!("{out}invalid fan")));
    }
    if !report.is_smooth() {
        let cones: Vec<String> = report.non_smooth_cones().iter().map(|(c, d)| format!("{c} |det| = {}", d.abs())).collect();
        return Err(CliError::domain(format!("valid fan; not smooth: {}", cones.join(", "))));
    }
    let cy = match cy_vector(&fan) {
        Ok(cy) => cy,
        Err(Error::NotCalabiYau) => return Err(CliError::domain("valid fan; not Calabi-Yau")),
        Err(e) => return Err(e.into()),
    };
    for (name, v) in &doc.classes {
        if let Err(e) = CurveClass::new(&fan, v.clone()) {
            return Err(CliError::domain(format!("class {name}: {e}")));
        }
    }
    let compact = compact_divisor_rays(&fan);
    let noun = if compact.len() == 1 { "divisor" } else { "divisors" };
    let _ = writeln!(out, "valid; CY; {} compact {noun}", compact.len());
    let _ = writeln!(out, "nu = ({}, {}, {})", cy.nu[0], cy.nu[1], cy.nu[2]);
    for &r in &compact {
        let fano = is_fano_surface(&fan, r)?;
        let _ = writeln!(out, "compact divisor: ray {r} {}{}", fan.ray(r), if fano { " (Fano)" } else { "" });
    }
    let poly = height_one_polygon(&fan, &cy)?;
    let pts: Vec<String> = poly.points.iter().map(|p| format!("({},{})", p[0], p[1])).collect();
    let _ = writeln!(out, "polygon points: {}", pts.join(" "));
    let tris: Vec<String> = poly.triangles.iter().map(|t| format!("[{},{},{}]", t[0], t[1], t[2])).collect();
    let _ = writeln!(out, "triangles: {}", tris.join(" "));
    Ok(out)
}

pub fn cmd_gw(
    path: &Path,
    basis: Option<&[String]>,
    cap: usize,
    out: Option<&Path>,
    json: Option<&Path>,
) -> Result<String, CliError> {
    let doc = FanDocument::read(path)?;
    let fan = doc.fan();
    let basis = doc.basis(&fan, basis)?;
    let table = gw_table(&fan, &basis, cap)?;
    let csv = table.to_csv();
    if let Some(j) = json {
        write_file(j, &table.to_json())?;
    }
    match out {
        Some(p) => {
            write_file(p, &csv)?;
            Ok(format!("{} classes written to {}\n", table.rows.len(), p.display()))
        }
        None => Ok(csv),
    }
}

fn parse_fixed_point(s: &str) -> Result<FixedPointChoice, CliError> {
    if s == "all" {
        return Ok(FixedPointChoice::All);
    }
    s.parse().map(FixedPointChoice::Index).map_err(|_| CliError::parse(format!("--fixed-point: expected `all` or an index, got {s:?}")))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_open(
    path: &Path,
    divisor: usize,
    alpha: &[i64],
    basis: Option<&[String]>,
    fixed_point: &str,
    cap: Option<usize>,
    trace: Option<&Path>,
) -> Result<String, CliError> {
    let doc = FanDocument::read(path)?;
    let fan = doc.fan();
    let choice = parse_fixed_point(fixed_point)?;
    let basis = doc.basis(&fan, basis)?;
    let class = if alpha.len() == basis.len() {
        basis.expand(alpha)
    } else if alpha.len() == fan.num_rays() {
        CurveClass::new(&fan, alpha.to_vec())?
    } else {
        return Err(CliError::domain(format!(
            "--alpha has {} entries; expected {} basis coordinates or {} ray entries",
            alpha.len(),
            basis.len(),
            fan.num_rays()
        )));
    };
    let query = OpenInvariantQuery { fan0: fan, d0: divisor, alpha: class, fixed_point: choice };
    let result = open_gw(&query, cap)?;
    let mut out = String::new();
    for r in &result.runs {
        let _ = writeln!(
            out,
            "fixed point {}: alpha' = {} (cap {}): n_b = {}",
            r.fixed_point, r.classes.alpha_prime, r.cap, r.value
        );
    }
    let _ = writeln!(
        out,
        "advisory: divisor surface is {}",
        if result.fano { "Fano" } else { "not Fano; curves may leave the zero section" }
    );
    if let Some(t) = trace {
        write_file(t, &serde_json::to_string_pretty(&result).expect("result serializes"))?;
    }
    Ok(out)
}

pub fn cmd_pipeline(
    path: &Path,
    divisor: usize,
    fixed_point: usize,
    trace: Option<&Path>,
    out_path: Option<&Path>,
) -> Result<String, CliError> {
    let doc = FanDocument::read(path)?;
    let fan = doc.fan();
    let points = fixed_points_at_infinity(&fan, divisor)?;
    let fp: Cone3 = *points
        .get(fixed_point)
        .ok_or_else(|| CliError::domain(format!("fixed point index {fixed_point} out of range ({} available)", points.len())))?;
    let (w0, tr, rays) = open_invariant_surgery(&fan, divisor, fp)?;
    let mut out = String::new();
    let _ = writeln!(out, "fixed point {fp}: w = {}, u0 = ray {}", tr.fans()?[2].ray(rays.w), rays.u0);
    for s in &tr.steps {
        let _ = writeln!(out, "step: {}", serde_json::to_string(s).expect("step serializes"));
    }
    let _ = writeln!(out, "W0: {w0}");
    if let Some(t) = trace {
        let audit = serde_json::json!({
            "convention_hash": crate::vertex::table::convention_hash(),
            "trace": tr,
        });
        write_file(t, &serde_json::to_string_pretty(&audit).unwrap())?;
    }
    if let Some(o) = out_path {
        write_file(o, &FanDocument::from_fan(&w0).to_text())?;
    }
    Ok(out)
}

/// Executes a parsed command line; returns the exit code and the text for
/// stdout or stderr.
pub fn run(cli: &Cli) -> (i32, String) {
    let go = || -> Result<String, CliError> {
        match &cli.command {
            Command::Check { path } => cmd_check(path),
            Command::Gw { path, basis, cap, out, json } => {
                cmd_gw(path, basis.as_deref(), *cap, out.as_deref(), json.as_deref())
            }
            Command::Open { path, divisor, alpha, basis, fixed_point, cap, trace } => {
                cmd_open(path, *divisor, alpha, basis.as_deref(), fixed_point, *cap, trace.as_deref())
            }
            Command::Pipeline { path, divisor, fixed_point, trace, out } => {
                cmd_pipeline(path, *divisor, *fixed_point, trace.as_deref(), out.as_deref())
            }
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Err(CliError::domain(format!("thread pool: {e}"))),
        },
        None => go(),
    };
    match result {
        Ok(s) => (0, s),
        Err(e) => (e.code, e.message),
    }
}
