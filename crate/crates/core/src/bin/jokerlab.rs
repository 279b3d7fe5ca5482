use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use jokerlab::cohom::{CohomClass, ExtQ8, FreeResolution, Nullhomotopy, CACHE_ENV};
use jokerlab::gmod::stable::endotrivial_report;
use jokerlab::gmod::{builtin, BUILTIN_MODULES};
use jokerlab::hecke::G24Hecke;
use jokerlab::morava::{g24_elements, q8_elements, CoactionSpec, Convention};
use jokerlab::verify::verify_paper_with;
use jokerlab::{Error, FieldElement, FiniteField, FiniteGroup, GModule, Result};

/// stdout writes that end the process quietly when the reader goes away.
macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*), false) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*), true) };
}

fn emit(args: std::fmt::Arguments, newline: bool) {
    let mut stdout = std::io::stdout().lock();
    let r = stdout.write_fmt(args).and_then(|_| {
        if newline {
            stdout.write_all(b"\n")
        } else {
            Ok(())
        }
    });
    if let Err(e) = r {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

#[derive(Parser)]
#[command(
    name = "jokerlab",
    version,
    about = "Exact computations for Q8 and G24 over F4"
)]
struct Cli {
    /// Print a group as JSON {order, names, table} and exit.
    #[arg(long, global = true, value_name = "GROUP")]
    dump_group: Option<String>,
    /// Directory for cached resolutions (overrides JOKERLAB_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify {
        /// Only run checks whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Load and check a module-definition file or `builtin:NAME`.
    Module {
        #[arg(long, value_name = "FILE")]
        check: String,
        #[arg(long)]
        json: bool,
    },
    /// Minimal resolution and Betti numbers.
    Ext {
        #[arg(long, default_value = "q8")]
        group: String,
        #[arg(long, default_value = "f4")]
        field: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Triple Massey product of degree-one classes over F4[Q8].
    Massey {
        #[arg(long, default_value = "u+w2*v")]
        a: String,
        #[arg(long, default_value = "u+w*v")]
        b: String,
        #[arg(long, default_value = "u+w2*v")]
        c: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a module is endotrivial.
    Endotrivial {
        #[arg(long)]
        module: String,
        #[arg(long)]
        json: bool,
    },
    /// Teichmuller digits of an element of Q8 or G24 inside O2.
    Teichmuller {
        #[arg(long)]
        element: String,
        #[arg(long)]
        digits: usize,
        /// Working precision m (arithmetic mod 2^m); defaults to the minimum.
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a coaction spec (file or `builtin:NAME`) on Q8.
    Coaction {
        #[arg(long)]
        spec: String,
        /// Enumerate all values of starred coefficients.
        #[arg(long)]
        complete: bool,
        #[arg(long)]
        json: bool,
    },
    /// The skew Hecke algebra and its action on fixed points.
    Hecke {
        #[arg(long, default_value = "g24")]
        group: String,
        #[arg(long, default_value = "c3")]
        subgroup: String,
        #[arg(long)]
        json: bool,
    },
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownName { .. }
            | Error::Io(_)
            | Error::Json(_)
            | Error::Parse(_)
            | Error::MalformedSpec(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}

fn print_json(value: &serde_json::Value) {
    outln!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(name) = &cli.dump_group {
        print_json(&FiniteGroup::by_name(name)?.to_json());
        if cli.command.is_none() {
            return Ok(0);
        }
    }
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let Some(command) = cli.command else {
        eprintln!("error: no subcommand given; see `jokerlab --help`");
        return Ok(2);
    };
    match command {
        Command::Verify { filter, json } => {
            let report = verify_paper_with(filter.as_deref(), cache_dir.as_deref());
            if report.checks.is_empty() {
                eprintln!(
                    "error: no check id starts with `{}`",
                    filter.unwrap_or_default()
                );
                return Ok(2);
            }
            if json {
                print_json(&report.to_json());
            } else {
                out!("{}", report.to_text());
            }
            Ok(report.exit_code() as u8)
        }
        Command::Module { check, json } => module_check(&check, json),
        Command::Ext {
            group,
            field,
            max_degree,
            json,
        } => ext(&group, &field, max_degree, json, cache_dir.as_deref()),
        Command::Massey { a, b, c, json } => massey(&a, &b, &c, json, cache_dir.as_deref()),
        Command::Endotrivial { module, json } => {
            let m = load_module(&module)?;
            let report = endotrivial_report(&m)?;
            if json {
                print_json(&json!({
                    "module": module,
                    "dim": m.dim(),
                    "endotrivial": report.endotrivial,
                    "direct": report.direct,
                    "restriction": report.restriction,
                }));
            } else {
                outln!("{}", report.endotrivial);
            }
            Ok(0)
        }
        Command::Teichmuller {
            element,
            digits,
            precision,
            json,
        } => teichmuller(&element, digits, precision, json),
        Command::Coaction {
            spec,
            complete,
            json,
        } => coaction(&spec, complete, json),
        Command::Hecke {
            group,
            subgroup,
            json,
        } => {
            if !group.eq_ignore_ascii_case("g24") || !subgroup.eq_ignore_ascii_case("c3") {
                eprintln!("error: only --group g24 --subgroup c3 is available");
                return Ok(2);
            }
            let h = G24Hecke::compute()?;
            if json {
                print_json(&h.to_json());
            } else {
                outln!("fixed basis: {}", h.module.names().join(", "));
                for (k, (label, m)) in h.basis_labels().iter().zip(&h.matrices).enumerate() {
                    outln!("{:>2}  {:<40}  [{}]", k + 1, label, m.to_text());
                }
            }
            Ok(0)
        }
    }
}

fn load_module(spec: &str) -> Result<GModule> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None if BUILTIN_MODULES.contains(&spec) => builtin(spec),
        None if Path::new(spec).exists() => {
            let text = fs::read_to_string(spec)?;
            GModule::from_json(&serde_json::from_str(&text)?)
        }
        None => Err(Error::UnknownName {
            kind: "module (or file)",
            name: spec.into(),
            valid: BUILTIN_MODULES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

fn module_check(path: &str, json: bool) -> Result<u8> {
    let m = match load_module(path) {
        Ok(m) => m,
        Err(Error::InconsistentAction(rel)) => {
            if json {
                print_json(&json!({"module": path, "valid": false, "violated": rel}));
            } else {
                outln!("invalid: relation {rel} is violated");
            }
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let fixed = m.fixed_points().cols();
    if json {
        print_json(&json!({
            "module": path,
            "valid": true,
            "field": m.field().name(),
            "group": m.group().name(),
            "dim": m.dim(),
            "fixed_points": fixed,
            "trivial": m.is_trivial(),
        }));
    } else {
        outln!(
            "valid {}-module over {} of dimension {}",
            m.group().name(),
            m.field().name(),
            m.dim()
        );
        outln!("fixed points: dimension {fixed}");
    }
    Ok(0)
}

fn ext(
    group: &str,
    field: &str,
    max_degree: usize,
    json: bool,
    cache: Option<&Path>,
) -> Result<u8> {
    let group = Arc::new(FiniteGroup::by_name(group)?);
    let field = FiniteField::from_name(field)?;
    let res = FreeResolution::cached(field, Arc::clone(&group), max_degree, cache)?;
    let ranks = res.ranks();
    if json {
        print_json(&json!({
            "group": group.name(),
            "field": field.name(),
            "max_degree": max_degree,
            "betti": ranks,
        }));
    } else {
        outln!("Ext over {}[{}]", field.name(), group.name());
        outln!("degree  dim");
        for (s, r) in ranks.iter().enumerate() {
            outln!("{s:>6}  {r:>3}");
        }
    }
    Ok(0)
}

/// Parses `x*u + y*v` with coefficients in F4 notation.
fn parse_degree_one(ext: &ExtQ8, text: &str) -> Result<CohomClass> {
    let field = ext.resolution.field();
    let (mut x, mut y) = (field.zero(), field.zero());
    for term in text.split('+').map(str::trim) {
        if term == "0" {
            continue;
        }
        let (coeff, var) = match term.rsplit_once('*') {
            Some((c, v)) => (field.parse_element(c.trim())?, v.trim()),
            None => (field.one(), term),
        };
        match var {
            "u" => x += coeff,
            "v" => y += coeff,
            other => return Err(Error::Parse(format!("expected u or v, got `{other}`"))),
        }
    }
    Ok(ext.degree_one(x, y))
}

fn coeff_text(c: FieldElement, var: &str) -> String {
    if c.is_one() {
        var.to_string()
    } else {
        format!("{c}*{var}")
    }
}

/// Writes a degree-two class as x u^2 + y v^2.
fn degree_two_text(ext: &ExtQ8, c: &CohomClass) -> Result<String> {
    let uu = ext.cup(&ext.u, &ext.u)?;
    let vv = ext.cup(&ext.v, &ext.v)?;
    let field = ext.resolution.field();
    for x in field.elements() {
        for y in field.elements() {
            if uu.scale(x).add(&vv.scale(y))? == *c {
                let parts: Vec<String> = [(x, "u^2"), (y, "v^2")]
                    .iter()
                    .filter(|(k, _)| !k.is_zero())
                    .map(|(k, v)| coeff_text(*k, v))
                    .collect();
                return Ok(if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                });
            }
        }
    }
    Err(Error::Internal(
        "class is not in the span of u^2 and v^2".into(),
    ))
}

/// Scales a nonzero class so its first nonzero coordinate is 1.
fn normalized(c: &CohomClass) -> Result<CohomClass> {
    match c.coeffs.iter().find(|x| !x.is_zero()) {
        Some(lead) => Ok(c.scale(lead.inverse()?)),
        None => Ok(c.clone()),
    }
}

fn massey(a: &str, b: &str, c: &str, json: bool, cache: Option<&Path>) -> Result<u8> {
    let q8 = Arc::new(FiniteGroup::q8());
    let ext = ExtQ8::from_resolution(FreeResolution::cached(FiniteField::f4(), q8, 4, cache)?)?;
    let (x, y, z) = (
        parse_degree_one(&ext, a)?,
        parse_degree_one(&ext, b)?,
        parse_degree_one(&ext, c)?,
    );
    let m = ext.resolution.massey(&x, &y, &z, Nullhomotopy::Minimal)?;
    let rep = degree_two_text(&ext, &m.representative)?;
    let indet: Vec<String> = m
        .indeterminacy
        .iter()
        .map(|k| degree_two_text(&ext, &normalized(k)?))
        .collect::<Result<_>>()?;
    if json {
        print_json(&json!({
            "bracket": [a, b, c],
            "representative": rep,
            "indeterminacy": indet,
        }));
    } else {
        outln!("<{a}, {b}, {c}>");
        outln!("representative  {rep}");
        outln!("indeterminacy   span{{{}}}", indet.join(", "));
    }
    Ok(0)
}

fn teichmuller(element: &str, digits: usize, precision: Option<u32>, json: bool) -> Result<u8> {
    let q8 = FiniteGroup::q8();
    let g24 = FiniteGroup::g24();
    let m = precision.unwrap_or_else(|| (digits as u32).div_ceil(2).max(3) + 1);
    let g = if let Some(idx) = q8.element(element) {
        q8_elements(m)?[idx]
    } else if let Some(idx) = g24.element(element) {
        g24_elements(m)?[idx]
    } else {
        return Err(Error::UnknownName {
            kind: "element",
            name: element.into(),
            valid: g24.names().to_vec(),
        });
    };
    let d = g.teichmuller_digits(digits)?;
    let residues: Vec<String> = d.residues().iter().map(ToString::to_string).collect();
    if json {
        print_json(&json!({
            "element": element,
            "precision": m,
            "digits": residues,
            "teichmuller": d.are_teichmuller(),
        }));
    } else {
        outln!("{}", residues.join(", "));
    }
    Ok(0)
}

fn load_spec(spec: &str) -> Result<CoactionSpec> {
    match spec.strip_prefix("builtin:") {
        Some(name) => CoactionSpec::builtin(name),
        None => {
            let text = fs::read_to_string(spec)?;
            CoactionSpec::from_json(&serde_json::from_str(&text)?)
        }
    }
}

fn coaction(spec_name: &str, complete: bool, json: bool) -> Result<u8> {
    let spec = load_spec(spec_name)?;
    let q8 = FiniteGroup::q8();
    let warnings = spec.degree_warnings();
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let text = |m: &jokerlab::Matrix| m.to_text().trim().replace('\n', "; ");
    if spec.unknown_count() > 0 || complete {
        let completions = spec.complete()?;
        if json {
            let items: Vec<_> = completions
                .iter()
                .map(|c| {
                    json!({
                        "values": c.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "center_trivial": c.center_trivial,
                        "matrices": named(&q8, c.matrices.iter().map(text).collect()),
                    })
                })
                .collect();
            print_json(&json!({"basis": spec.names(), "warnings": warnings, "completions": items}));
        } else {
            outln!("{} completions", completions.len());
            for c in &completions {
                let vals: Vec<String> = c.values.iter().map(ToString::to_string).collect();
                outln!(
                    "  * = ({})  i: [{}]  j: [{}]",
                    vals.join(", "),
                    text(&c.matrices[2]),
                    text(&c.matrices[4])
                );
            }
        }
        return Ok(0);
    }
    let right = spec.q8_matrices(Convention::Right)?;
    if json {
        print_json(&json!({
            "basis": spec.names(),
            "convention": "right",
            "warnings": warnings,
            "matrices": named(&q8, right.iter().map(text).collect()),
        }));
    } else {
        outln!("basis: {}", spec.names().join(", "));
        for (g, m) in right.iter().enumerate() {
            outln!("{:>3}  [{}]", q8.element_name(g), text(m));
        }
    }
    Ok(0)
}

fn named(group: &FiniteGroup, texts: Vec<String>) -> serde_json::Map<String, serde_json::Value> {
    texts
        .into_iter()
        .enumerate()
        .map(|(g, t)| {
            (
                group.element_name(g).to_string(),
                serde_json::Value::String(t),
            )
        })
        .collect()
}
