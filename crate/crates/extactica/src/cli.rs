//! Command-line front end: one verb per library-level operation, JSON or
//! plain-text reports on standard output.
//!
//! Exit codes: 0 on success, 1 for usage or input-parsing errors, 2 for
//! computation errors (reported as a structured JSON object).

use std::collections::BTreeMap;
use std::io::Read as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::extactic::{
    contact_order, extactic, extactic_ideal_generators, extactic_system, ContactOrder,
    LinearSystem,
};
use crate::field::VectorField;
use crate::invariants::{
    curve_count_bound, family_analysis, field_extension_bound, first_integral_degree,
    invariance_cofactor, invariant_lines, invariant_lines_through_point, jouanolou_bound,
    solution_count_bound, Cofactor, RationalBound,
};
use crate::parse::{parse_polynomial, parse_vector_field, render};
use crate::poly::Rational;

#[derive(Parser)]
#[command(
    name = "extactica",
    about = "Exact extactic curves, invariant lines and first integrals of plane projective vector fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Presentation only; values are identical in both formats
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct FieldArg {
    /// Vector field description: a file path, or `-` for standard input
    #[arg(long)]
    field: String,
}

#[derive(Subcommand)]
enum Verb {
    /// n-th extactic polynomial of the field
    Extactic {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: u32,
    },
    /// Extactic polynomial with respect to an explicit linear system
    System {
        #[command(flatten)]
        field: FieldArg,
        /// File with one basis polynomial per line
        #[arg(long)]
        basis: String,
    },
    /// Smallest degree (up to --dmax) of a rational first integral
    FirstIntegral {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 3)]
        dmax: u32,
    },
    /// Invariance certificate for a curve: X(F) = L*F when invariant
    Invariance {
        #[command(flatten)]
        field: FieldArg,
        /// Curve polynomial text
        #[arg(long)]
        curve: String,
    },
    /// Rational invariant lines, with certificates
    Lines {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Rational invariant lines through a rational projective point
    LinesThrough {
        #[command(flatten)]
        field: FieldArg,
        /// Point as comma-separated rationals, e.g. 0,0,1
        #[arg(long)]
        point: String,
    },
    /// Contact order of a section with the field at a rational point
    Contact {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        point: String,
        /// Derivative cap; defaults to 4 times the system dimension
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Generators of the extactic ideal of a linear system
    Ideal {
        #[command(flatten)]
        field: FieldArg,
        /// File with one basis polynomial per line
        #[arg(long)]
        basis: String,
        /// Largest derivative index (at least dim V - 1)
        #[arg(long = "K")]
        k: u32,
    },
    /// Degree and count bounds for the field at level n
    Bounds {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: u32,
    },
    /// Parameter analysis of the pencil s*X + t*Y
    Family {
        /// First pencil generator: path or `-`
        #[arg(long = "fieldX")]
        field_x: String,
        /// Second pencil generator: path or `-`
        #[arg(long = "fieldY")]
        field_y: String,
        #[arg(long)]
        n: u32,
    },
}

/// Parse and dispatch; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.verb) {
        Ok(report) => {
            println!("{}", report.emit(cli.format));
            0
        }
        Err(RunError::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(RunError::Compute(e)) => {
            let obj = serde_json::json!({ "error": e.to_string() });
            println!("{obj}");
            2
        }
    }
}

enum RunError {
    /// Unreadable or unparsable input: exit 1.
    Input(String),
    /// The computation itself failed: exit 2.
    Compute(Error),
}

fn load_field(path: &str) -> std::result::Result<VectorField, RunError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| RunError::Input(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| RunError::Input(format!("reading {path}: {e}")))?
    };
    let parsed = parse_vector_field(&text).map_err(|e| RunError::Input(e.to_string()))?;
    VectorField::from_parsed(parsed).map_err(|e| RunError::Input(e.to_string()))
}

fn load_basis(path: &str, field: &VectorField) -> std::result::Result<LinearSystem, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("reading {path}: {e}")))?;
    let mut basis = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        basis.push(
            parse_polynomial(line, field.all_vars()).map_err(|e| RunError::Input(e.to_string()))?,
        );
    }
    LinearSystem::new(basis).map_err(RunError::Compute)
}

fn parse_point(text: &str, field: &VectorField) -> std::result::Result<Vec<Rational>, RunError> {
    let parts: Vec<&str> = text.split(',').collect();
    let expect = field.geometric_vars().len();
    if parts.len() != expect {
        return Err(RunError::Input(format!(
            "expected {expect} comma-separated coordinates, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<Rational>()
                .map_err(|e| RunError::Input(format!("coordinate {p:?}: {e}")))
        })
        .collect()
}

fn dispatch(verb: &Verb) -> std::result::Result<Report, RunError> {
    let compute = RunError::Compute;
    match verb {
        Verb::Extactic { field, n } => {
            let f = load_field(&field.field)?;
            let rep = extactic(&f, *n).map_err(compute)?;
            Ok(Report::Extactic(ExtacticJson::new(&rep, Some(*n))))
        }
        Verb::System { field, basis } => {
            let f = load_field(&field.field)?;
            let sys = load_basis(basis, &f)?;
            let rep = extactic_system(&f, &sys).map_err(compute)?;
            Ok(Report::Extactic(ExtacticJson::new(&rep, None)))
        }
        Verb::FirstIntegral { field, dmax } => {
            let f = load_field(&field.field)?;
            let degree = first_integral_degree(&f, *dmax).map_err(compute)?;
            Ok(Report::FirstIntegral { dmax: *dmax, degree })
        }
        Verb::Invariance { field, curve } => {
            let f = load_field(&field.field)?;
            let c = parse_polynomial(curve, f.all_vars())
                .map_err(|e| RunError::Input(e.to_string()))?;
            let cert = invariance_cofactor(&f, &c).map_err(compute)?;
            Ok(Report::Invariance(CofactorJson::new(&cert)))
        }
        Verb::Lines { field } => {
            let f = load_field(&field.field)?;
            let ext = extactic(&f, 1).map_err(compute)?;
            let lines = invariant_lines(&f).map_err(compute)?;
            Ok(Report::Lines {
                extactic: render(&ext.polynomial),
                lines: lines.iter().map(CofactorJson::new).collect(),
            })
        }
        Verb::LinesThrough { field, point } => {
            let f = load_field(&field.field)?;
            let p = parse_point(point, &f)?;
            let p: [Rational; 3] = p
                .try_into()
                .map_err(|_| RunError::Input("expected three coordinates".into()))?;
            let lines = invariant_lines_through_point(&f, &p).map_err(compute)?;
            Ok(Report::LinesThrough {
                point: point.to_string(),
                lines: lines.iter().map(CofactorJson::new).collect(),
            })
        }
        Verb::Contact {
            field,
            curve,
            point,
            cap,
        } => {
            let f = load_field(&field.field)?;
            let c = parse_polynomial(curve, f.all_vars())
                .map_err(|e| RunError::Input(e.to_string()))?;
            let coords = parse_point(point, &f)?;
            let map: BTreeMap<String, Rational> = f
                .all_vars()
                .iter()
                .cloned()
                .zip(coords)
                .collect();
            // the section alone spans a one-dimensional system
            let cap = cap.unwrap_or(4);
            let order = contact_order(&c, &f, &map, cap).map_err(compute)?;
            Ok(Report::Contact {
                section: render(&c),
                point: point.to_string(),
                cap,
                order,
            })
        }
        Verb::Ideal { field, basis, k } => {
            let f = load_field(&field.field)?;
            let sys = load_basis(basis, &f)?;
            let gens = extactic_ideal_generators(&f, &sys, *k).map_err(compute)?;
            Ok(Report::Ideal {
                k: *k,
                dim: sys.dim(),
                generators: gens.iter().map(render).collect(),
            })
        }
        Verb::Bounds { field, n } => {
            let f = load_field(&field.field)?;
            let d = f.degree();
            Ok(Report::Bounds {
                degree: d,
                n: *n,
                solution_count_bound: solution_count_bound(d, *n),
                curve_count_bound: BoundJson::new(&curve_count_bound(d, *n)),
                jouanolou_bound: BoundJson::new(&jouanolou_bound(d)),
                field_extension_bound: field_extension_bound(d, *n),
            })
        }
        Verb::Family {
            field_x,
            field_y,
            n,
        } => {
            let fx = load_field(field_x)?;
            let fy = load_field(field_y)?;
            let rep = family_analysis(&fx, &fy, *n).map_err(compute)?;
            let geo = fx.geometric_vars().to_vec();
            let mono = |m: &crate::poly::Monomial| -> String {
                let pieces: Vec<String> = m
                    .0
                    .iter()
                    .zip(&geo)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect();
                if pieces.is_empty() {
                    "1".to_string()
                } else {
                    pieces.join("*")
                }
            };
            Ok(Report::Family {
                pencil_degree: rep.pencil_degree,
                n: rep.n,
                params: vec![rep.param_names.0.clone(), rep.param_names.1.clone()],
                coefficient_forms: rep
                    .coefficient_forms
                    .iter()
                    .map(|(m, f)| (mono(m), render(f)))
                    .collect(),
                gcd_form: render(&rep.gcd_form),
                rational_roots: rep
                    .rational_roots
                    .iter()
                    .map(|(s, t)| format!("({s}:{t})"))
                    .collect(),
                degree_bound: rep.degree_bound,
                identically_zero: rep.identically_zero,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Serialize)]
struct ExtacticJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    polynomial: String,
    basis: Vec<String>,
    expected_degree: Option<i64>,
    row_degrees: Vec<i64>,
    vanished: bool,
}

impl ExtacticJson {
    fn new(rep: &crate::extactic::ExtacticReport, n: Option<u32>) -> ExtacticJson {
        ExtacticJson {
            n,
            polynomial: render(&rep.polynomial),
            basis: rep.basis.iter().map(render).collect(),
            expected_degree: rep.expected_degree,
            row_degrees: rep.row_degrees.clone(),
            vanished: rep.vanished,
        }
    }
}

#[derive(Serialize)]
struct CofactorJson {
    curve: String,
    cofactor: String,
    invariant: bool,
}

impl CofactorJson {
    fn new(c: &Cofactor) -> CofactorJson {
        CofactorJson {
            curve: render(&c.curve),
            cofactor: render(&c.cofactor),
            invariant: c.invariant,
        }
    }
}

#[derive(Serialize)]
struct BoundJson {
    exact: String,
    floor: i64,
}

impl BoundJson {
    fn new(b: &RationalBound) -> BoundJson {
        BoundJson {
            exact: b.exact.to_string(),
            floor: b.floor,
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Report {
    Extactic(ExtacticJson),
    FirstIntegral {
        dmax: u32,
        degree: Option<u32>,
    },
    Invariance(CofactorJson),
    Lines {
        extactic: String,
        lines: Vec<CofactorJson>,
    },
    LinesThrough {
        point: String,
        lines: Vec<CofactorJson>,
    },
    Contact {
        section: String,
        point: String,
        cap: u32,
        order: ContactOrder,
    },
    Ideal {
        k: u32,
        dim: usize,
        generators: Vec<String>,
    },
    Bounds {
        degree: u32,
        n: u32,
        solution_count_bound: i64,
        curve_count_bound: BoundJson,
        jouanolou_bound: BoundJson,
        field_extension_bound: i64,
    },
    Family {
        pencil_degree: u32,
        n: u32,
        params: Vec<String>,
        coefficient_forms: BTreeMap<String, String>,
        gcd_form: String,
        rational_roots: Vec<String>,
        degree_bound: Option<i64>,
        identically_zero: bool,
    },
}

impl Report {
    fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable report"),
            Format::Text => {
                let value = serde_json::to_value(self).expect("serializable report");
                let mut out = String::new();
                flatten_text("", &value, &mut out);
                out.trim_end().to_string()
            }
        }
    }
}

/// Deterministic plain-text rendering: dotted key paths, one per line, with
/// exactly the same values as the JSON report.
fn flatten_text(prefix: &str, value: &serde_json::Value, out: &mut String) {
    use serde_json::Value;
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_text(&key, v, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{prefix}: []\n"));
            }
            for (i, v) in items.iter().enumerate() {
                flatten_text(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::Null => out.push_str(&format!("{prefix}: none\n")),
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

/// Helper used by the library's own integration tests; returns the report
/// text instead of printing it.
pub fn run_capturing(args: &[&str]) -> (i32, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return (code, e.to_string());
        }
    };
    match dispatch(&cli.verb) {
        Ok(report) => (0, report.emit(cli.format)),
        Err(RunError::Input(msg)) => (1, format!("error: {msg}")),
        Err(RunError::Compute(e)) => {
            (2, serde_json::json!({ "error": e.to_string() }).to_string())
        }
    }
}
