//! Command-line front end: weight-list parsing, analysis dispatch, and
//! deterministic JSON, CSV, and SVG emission.
//!
//! Exit codes: 0 success, 1 computation error (diagnostic JSON on stderr),
//! 2 usage error, 3 I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde::Serialize;
use wshift::circsym::circ_sym_table;
use wshift::{
    boundary_samples, check_equivalent_with_witness, decompose, disc_radius, is_reducible,
    kippenhahn_poly, ranges_equal, BoundarySamples, DecompositionReport, DiscRadius,
    WeightedShift64,
};

type C = Complex<f64>;

const MIN_SAMPLES: usize = 3;

#[derive(Parser, Debug)]
#[command(
    name = "wshift",
    version,
    about = "Analyzer for finite weighted shift matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide unitary equivalence of two shifts and emit a witness.
    Equiv(JobArgs),
    /// Classify reducibility; emit the block decomposition when reducible.
    Reduce(JobArgs),
    /// Closed-form boundary-curve polynomial data.
    Kipp(JobArgs),
    /// Decide whether two shifts have the same numerical range.
    Wequal(JobArgs),
    /// Sample the numerical range boundary.
    Boundary(JobArgs),
    /// Combined report: reduction, polynomial, disc, boundary.
    Analyze(JobArgs),
}

impl Command {
    fn args(&self) -> &JobArgs {
        match self {
            Command::Equiv(a)
            | Command::Reduce(a)
            | Command::Kipp(a)
            | Command::Wequal(a)
            | Command::Boundary(a)
            | Command::Analyze(a) => a,
        }
    }
}

#[derive(Args, Debug)]
pub struct JobArgs {
    /// Weight list: comma-separated a+bi tokens, or a JSON file path.
    #[arg(long)]
    pub weights: String,

    /// Second weight list, required by equiv and wequal.
    #[arg(long)]
    pub weights2: Option<String>,

    /// Decision tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Number of boundary samples, at least 3.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format; csv and svg apply to boundary only.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(wshift::Error),
    Io(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

#[derive(Serialize)]
struct Diagnostic {
    error: String,
}

/// Parses `argv`, runs the requested job, and returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome =
        execute(&cli.command).and_then(|text| deliver(&text, cli.command.args().out.as_deref()));
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let diag = to_json(&Diagnostic {
                error: e.to_string(),
            });
            eprint!("{diag}");
            1
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

fn deliver(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn execute(cmd: &Command) -> Result<String, Failure> {
    let args = cmd.args();
    validate(cmd, args)?;
    let a = load_weights(&args.weights)?;
    match cmd {
        Command::Equiv(_) => {
            let b = load_weights(args.weights2.as_deref().expect("validated"))?;
            let report =
                check_equivalent_with_witness(&a, &b, args.tol).map_err(Failure::Compute)?;
            Ok(to_json(&report))
        }
        Command::Reduce(_) => Ok(to_json(&reduction_report(&a, args.tol)?)),
        Command::Kipp(_) => Ok(to_json(&kipp_report(&a)?)),
        Command::Wequal(_) => {
            let b = load_weights(args.weights2.as_deref().expect("validated"))?;
            let equal = ranges_equal(&a, &b, args.tol).map_err(Failure::Compute)?;
            Ok(to_json(&WequalReport {
                equal,
                s_a: s_table(&a),
                s_b: s_table(&b),
                product_a: pair(a.product()),
                product_b: pair(b.product()),
            }))
        }
        Command::Boundary(_) => {
            let samples = boundary_samples(&a, args.samples).map_err(Failure::Compute)?;
            Ok(match args.format {
                Format::Json => to_json(&samples),
                Format::Csv => to_csv(&samples),
                Format::Svg => to_svg(&samples),
            })
        }
        Command::Analyze(_) => {
            let report = AnalyzeReport {
                n: a.n(),
                product: pair(a.product()),
                reduction: reduction_report(&a, args.tol)?,
                // Order 2 has no closed-form polynomial; everything else
                // in the combined report still applies.
                kippenhahn: kipp_report(&a).ok(),
                // Present exactly when some weight vanishes.
                disc: disc_radius(&a).ok(),
                boundary: boundary_samples(&a, args.samples).map_err(Failure::Compute)?,
                weights: a,
            };
            Ok(to_json(&report))
        }
    }
}

fn validate(cmd: &Command, args: &JobArgs) -> Result<(), Failure> {
    let two = matches!(cmd, Command::Equiv(_) | Command::Wequal(_));
    if two && args.weights2.is_none() {
        return usage("this command requires --weights2");
    }
    if !two && args.weights2.is_some() {
        return usage("--weights2 only applies to equiv and wequal");
    }
    if args.samples < MIN_SAMPLES {
        return usage(format!("--samples must be at least {MIN_SAMPLES}"));
    }
    if args.format != Format::Json && !matches!(cmd, Command::Boundary(_)) {
        return usage("csv and svg output apply to boundary only");
    }
    if !args.tol.is_finite() || args.tol < 0.0 {
        return usage("--tol must be a finite nonnegative real");
    }
    Ok(())
}

// ---------------------------------------------------------------- reports

#[derive(Serialize)]
struct KippReport {
    n: usize,
    #[serde(rename = "S_table")]
    s_table: Vec<f64>,
    radial_coeffs: Vec<f64>,
    product: [f64; 2],
}

#[derive(Serialize)]
struct WequalReport {
    equal: bool,
    #[serde(rename = "S_a")]
    s_a: Vec<f64>,
    #[serde(rename = "S_b")]
    s_b: Vec<f64>,
    product_a: [f64; 2],
    product_b: [f64; 2],
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    weights: WeightedShift64,
    product: [f64; 2],
    reduction: DecompositionReport<f64>,
    kippenhahn: Option<KippReport>,
    disc: Option<DiscRadius<f64>>,
    boundary: BoundarySamples<f64>,
}

fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

/// `reduce` never fails on an irreducible input: it reports the decision
/// and only attaches the certificate when one exists.
fn reduction_report(ws: &WeightedShift64, tol: f64) -> Result<DecompositionReport<f64>, Failure> {
    let decision = is_reducible(ws, tol);
    if decision.reducible {
        decompose(ws, tol).map_err(Failure::Compute)
    } else {
        Ok(decision)
    }
}

fn kipp_report(ws: &WeightedShift64) -> Result<KippReport, Failure> {
    let poly = kippenhahn_poly(ws).map_err(Failure::Compute)?;
    Ok(KippReport {
        n: poly.n,
        s_table: poly.s_values(),
        radial_coeffs: poly.radial.clone(),
        product: pair(poly.product_term),
    })
}

fn s_table(ws: &WeightedShift64) -> Vec<f64> {
    let sq: Vec<f64> = ws.moduli().iter().map(|m| m * m).collect();
    let table = circ_sym_table(&sq);
    (1..=table.max_order()).map(|r| table.get(r)).collect()
}

// ----------------------------------------------------------------- input

fn load_weights(spec: &str) -> Result<WeightedShift64, Failure> {
    let trimmed = spec.trim();
    let ws = if Path::new(trimmed).exists() {
        let text = std::fs::read_to_string(trimmed)
            .map_err(|e| Failure::Io(format!("reading {trimmed}: {e}")))?;
        weights_from_json(&text)?
    } else {
        inline_weights(trimmed)?
    };
    WeightedShift64::new(ws).map_err(|e| Failure::Usage(e.to_string()))
}

fn weights_from_json(text: &str) -> Result<Vec<C>, Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("weights file: {e}")))?;
    let Some(items) = value.as_array() else {
        return usage("weights file must hold a JSON array");
    };
    items
        .iter()
        .map(|item| match item {
            serde_json::Value::Number(x) => Ok(C::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
            serde_json::Value::Array(p) if p.len() == 2 => {
                let part = |v: &serde_json::Value| {
                    v.as_f64()
                        .ok_or_else(|| Failure::Usage("weight pair entries must be numbers".into()))
                };
                Ok(C::new(part(&p[0])?, part(&p[1])?))
            }
            _ => usage("weights file entries must be numbers or [re, im] pairs"),
        })
        .collect()
}

fn inline_weights(spec: &str) -> Result<Vec<C>, Failure> {
    spec.split(',').map(parse_complex_token).collect()
}

/// One inline weight: `a`, `bi`, or `a+bi` with optionally signed decimal
/// parts, e.g. `2`, `-1.5i`, `3+4i`, `1e-3-2.5e2i`, `i`, `-i`.
fn parse_complex_token(token: &str) -> Result<C, Failure> {
    let t = token.trim();
    let bad = || Failure::Usage(format!("cannot parse weight token '{t}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'I']) else {
        return t
            .parse::<f64>()
            .map(|re| C::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split off the imaginary part at the last sign that does not follow an
    // exponent marker; no such sign means the token is purely imaginary.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        0.0
    } else {
        re_text.trim().parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_text.trim() {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(C::new(re, im))
}

// ---------------------------------------------------------------- output

struct SciFormatter;

/// All reals go out as `{:.16e}`: 17 significant digits, enough to make
/// parsing back bit-exact, with no locale or shortest-representation
/// variability between runs.
impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + std::io::Write>(
        &mut self,
        writer: &mut W,
        value: f64,
    ) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + std::io::Write>(
        &mut self,
        writer: &mut W,
        value: f32,
    ) -> std::io::Result<()> {
        write!(writer, "{value:.8e}")
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser).expect("report serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("reports are utf8")
}

fn to_csv(samples: &BoundarySamples<f64>) -> String {
    let mut out = String::from("theta,support,re,im\n");
    for i in 0..samples.angles.len() {
        let _ = write!(
            out,
            "{:.16e},{:.16e},",
            samples.angles[i], samples.support[i]
        );
        match samples.points[i] {
            Some(p) => {
                let _ = writeln!(out, "{:.16e},{:.16e}", p.re, p.im);
            }
            None => out.push_str(",\n"),
        }
    }
    out
}

/// Minimal diff-stable plot: an axis cross and one closed polyline through
/// the defined boundary points, y flipped into screen coordinates.
fn to_svg(samples: &BoundarySamples<f64>) -> String {
    let pts: Vec<C> = samples.points.iter().flatten().copied().collect();
    let extent = pts
        .iter()
        .map(|p| p.re.abs().max(p.im.abs()))
        .fold(0.0f64, f64::max);
    let r = if extent > 0.0 { extent * 1.1 } else { 1.0 };
    let stroke = r / 100.0;
    let mut path = String::new();
    for p in &pts {
        let _ = write!(path, "{:.6},{:.6} ", p.re, -p.im);
    }
    if let Some(first) = pts.first() {
        let _ = write!(path, "{:.6},{:.6}", first.re, -first.im);
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{mr:.6} {mr:.6} {side:.6} {side:.6}\">\n\
         <line x1=\"{mr:.6}\" y1=\"0\" x2=\"{r:.6}\" y2=\"0\" stroke=\"gray\" stroke-width=\"{stroke:.6}\"/>\n\
         <line x1=\"0\" y1=\"{mr:.6}\" x2=\"0\" y2=\"{r:.6}\" stroke=\"gray\" stroke-width=\"{stroke:.6}\"/>\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{stroke:.6}\" points=\"{path}\"/>\n\
         </svg>\n",
        mr = -r,
        side = 2.0 * r,
    )
}
