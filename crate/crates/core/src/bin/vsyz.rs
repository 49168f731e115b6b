//! Command-line surface: parse curves, build resolutions, verify them, print
//! Betti tables, run the syzygy oracle and generate seeded test curves.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse/format error,
//! 3 precondition violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use veronese_syzygy::field::{Field, FieldError, PrimeField, Rationals};
use veronese_syzygy::json::{
    complex_to_json_string, load_complex, AnyComplex, FieldDesc, JsonError,
};
use veronese_syzygy::lift::LiftError;
use veronese_syzygy::poly::{Homogeneity, Polynomial};
use veronese_syzygy::verify::{
    check_complex, check_minimal, graded_exactness, theta_vanishing_check, ComplexCheck,
    ExactnessReport, MinimalityCheck, RankCache, ThetaCheck, VerifyError,
};
use veronese_syzygy::{
    build_even, build_odd, lift_even, lift_odd, parse_poly, random_curve, syzygy_oracle, Parity,
    ResolutionComplex, RingId,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const DEFAULT_PRIME: u64 = 32003;

#[derive(Parser)]
#[command(
    name = "vsyz",
    version,
    about = "Resolutions of plane curves under the Veronese embedding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Curve,
    Ambient,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graded free resolution of a curve ideal; emits complex JSON
    Resolve {
        /// Curve file: one polynomial in x0,x1,x2; '#' starts a comment
        #[arg(long)]
        input: PathBuf,
        /// Coefficient field: q or fp:<prime>
        #[arg(long, default_value = "q")]
        field: String,
        /// Write the complex here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Attest that the curve is irreducible (silences the warning)
        #[arg(long)]
        assume_irreducible: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a complex JSON file: composition, minimality, theta-vanishing,
    /// degree-wise exactness
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Largest internal degree checked; defaults to max twist + 2
        #[arg(long)]
        degree_bound: Option<u32>,
        /// Verification prime as fp:<prime> (used when the complex is over q)
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the Betti table of a curve file or complex JSON
    Betti {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Basis of the degree-n syzygies of the generators in a file
    Oracle {
        /// Generator file: one polynomial per line
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = RingArg::Ambient)]
        ring: RingArg,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the lift of a curve along the Veronese map
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Deterministic random homogeneous curve
    RandomCurve {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_PARSE, format!("io error: {e}"))
    }
}

impl From<veronese_syzygy::ParseError> for Failure {
    fn from(e: veronese_syzygy::ParseError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

impl From<veronese_syzygy::BuildError> for Failure {
    fn from(e: veronese_syzygy::BuildError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Field(f) => f.into(),
            JsonError::Lift(l) => l.into(),
            other => Failure::new(EXIT_PARSE, other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_data_file(path: &Path) -> Result<Vec<String>, Failure> {
    let text = std::fs::read_to_string(path)?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn read_curve_text(path: &Path) -> Result<String, Failure> {
    let lines = read_data_file(path)?;
    if lines.is_empty() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("{}: no polynomial found", path.display()),
        ));
    }
    Ok(lines.join(" "))
}

fn parse_field(desc: &str) -> Result<FieldDesc, Failure> {
    FieldDesc::parse(desc).map_err(Failure::from)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => println!("{content}"),
    }
    Ok(())
}

fn curve_degree<K: Field>(f: &Polynomial<K>) -> Result<u32, Failure> {
    match f.homogeneous_degree() {
        Homogeneity::Homogeneous(d) if d >= 2 => Ok(d),
        Homogeneity::Homogeneous(d) => Err(Failure::new(
            EXIT_PRECONDITION,
            format!("curve degree {d} is below 2"),
        )),
        Homogeneity::Zero => Err(Failure::new(EXIT_PRECONDITION, "curve polynomial is zero")),
        Homogeneity::Inhomogeneous => Err(Failure::new(
            EXIT_PRECONDITION,
            "curve polynomial is not homogeneous",
        )),
    }
}

fn build_any<K: Field>(f: &Polynomial<K>, attested: bool) -> Result<ResolutionComplex<K>, Failure> {
    let d = curve_degree(f)?;
    if !attested {
        eprintln!("warning: irreducibility of the curve is assumed but was not attested; pass --assume-irreducible to silence");
    }
    let c = match Parity::of(d) {
        Parity::Even => build_even(f, attested)?,
        Parity::Odd => build_odd(f, attested)?,
    };
    Ok(c)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Resolve {
            input,
            field,
            out,
            assume_irreducible,
            format,
        } => {
            let text = read_curve_text(&input)?;
            let rendered = match parse_field(&field)? {
                FieldDesc::Rational => {
                    let f = parse_poly(&text, RingId::Curve, Rationals)?;
                    let c = build_any(&f, assume_irreducible)?;
                    render_complex(&c, format)
                }
                FieldDesc::Prime(p) => {
                    let fp = PrimeField::new(p)?;
                    let f = parse_poly(&text, RingId::Curve, fp)?;
                    let c = build_any(&f, assume_irreducible)?;
                    render_complex(&c, format)
                }
            };
            emit(&out, &rendered)?;
            Ok(0)
        }
        Command::Verify {
            input,
            degree_bound,
            field,
            format,
        } => {
            let text = std::fs::read_to_string(&input)?;
            let complex = match load_complex(&text)? {
                AnyComplex::Prime(c) => {
                    if let Some(desc) = &field {
                        let FieldDesc::Prime(p) = parse_field(desc)? else {
                            return Err(Failure::new(
                                EXIT_PRECONDITION,
                                "verification requires a prime field (fp:<p>)",
                            ));
                        };
                        if p != c.field().prime() {
                            return Err(Failure::new(
                                EXIT_PRECONDITION,
                                format!(
                                    "complex is over fp:{} and cannot be re-reduced to fp:{p}",
                                    c.field().prime()
                                ),
                            ));
                        }
                    }
                    c
                }
                AnyComplex::Rational(c) => {
                    let p = match &field {
                        None => DEFAULT_PRIME,
                        Some(desc) => match parse_field(desc)? {
                            FieldDesc::Prime(p) => p,
                            FieldDesc::Rational => {
                                return Err(Failure::new(
                                    EXIT_PRECONDITION,
                                    "verification requires a prime field (fp:<p>)",
                                ))
                            }
                        },
                    };
                    c.to_prime_field(&PrimeField::new(p)?)?
                }
            };
            let bound = degree_bound.unwrap_or_else(|| {
                complex
                    .modules
                    .iter()
                    .flat_map(|m| m.twists())
                    .max()
                    .copied()
                    .unwrap_or(4)
                    + 2
            });
            verify_and_report(&complex, bound, format)
        }
        Command::Betti {
            input,
            field,
            format,
        } => {
            let raw = std::fs::read_to_string(&input)?;
            let table = if raw.trim_start().starts_with('{') {
                match load_complex(&raw)? {
                    AnyComplex::Rational(c) => c.betti_table(),
                    AnyComplex::Prime(c) => c.betti_table(),
                }
            } else {
                let text = read_curve_text(&input)?;
                match parse_field(&field)? {
                    FieldDesc::Rational => {
                        let f = parse_poly(&text, RingId::Curve, Rationals)?;
                        build_any(&f, true)?.betti_table()
                    }
                    FieldDesc::Prime(p) => {
                        let f = parse_poly(&text, RingId::Curve, PrimeField::new(p)?)?;
                        build_any(&f, true)?.betti_table()
                    }
                }
            };
            match format {
                Format::Text => print!("{table}"),
                Format::Json => {
                    let rows: Vec<_> = table
                        .entries
                        .iter()
                        .map(|(&(i, j), &count)| json!({"i": i, "j": j, "count": count}))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
            }
            Ok(0)
        }
        Command::Oracle {
            gens,
            degree,
            ring,
            field,
            format,
        } => {
            let lines = read_data_file(&gens)?;
            if lines.is_empty() {
                return Err(Failure::new(EXIT_PARSE, "no generators found"));
            }
            let ring = match ring {
                RingArg::Curve => RingId::Curve,
                RingArg::Ambient => RingId::Ambient,
            };
            match parse_field(&field)? {
                FieldDesc::Rational => oracle_report(&lines, ring, Rationals, degree, format),
                FieldDesc::Prime(p) => {
                    oracle_report(&lines, ring, PrimeField::new(p)?, degree, format)
                }
            }
        }
        Command::Lift {
            input,
            field,
            format,
        } => {
            let text = read_curve_text(&input)?;
            match parse_field(&field)? {
                FieldDesc::Rational => lift_report(&text, Rationals, format),
                FieldDesc::Prime(p) => lift_report(&text, PrimeField::new(p)?, format),
            }
        }
        Command::RandomCurve {
            degree,
            seed,
            field,
            out,
            format,
        } => {
            let f_text = match parse_field(&field)? {
                FieldDesc::Rational => random_curve(Rationals, degree, seed)
                    .map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?
                    .to_string(),
                FieldDesc::Prime(p) => random_curve(PrimeField::new(p)?, degree, seed)
                    .map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?
                    .to_string(),
            };
            let content = match format {
                Format::Text => format!("# degree {degree} seed {seed}\n{f_text}\n"),
                Format::Json => {
                    serde_json::to_string_pretty(&json!({"f": f_text, "d": degree, "seed": seed}))
                        .unwrap()
                }
            };
            emit(&out, &content)?;
            Ok(0)
        }
    }
}

fn render_complex<K: Field>(c: &ResolutionComplex<K>, format: Format) -> String {
    match format {
        Format::Json => complex_to_json_string(c),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("field: {}\n", c.field().descriptor()));
            if let Some((f, d)) = c.provenance.curve() {
                out.push_str(&format!("curve (degree {d}): {f}\n"));
            }
            for (i, m) in c.modules.iter().enumerate() {
                out.push_str(&format!("E{}: twists {:?}\n", i, m.twists()));
            }
            for i in 1..=c.len() {
                let d = c.differential(i);
                out.push_str(&format!("d{} ({}x{}):\n", i, d.rows(), d.cols()));
                for r in 0..d.rows() {
                    let row: Vec<String> = (0..d.cols())
                        .map(|col| d.entry(r, col).to_string())
                        .collect();
                    out.push_str(&format!("  [{}]\n", row.join(", ")));
                }
            }
            out
        }
    }
}

fn verify_and_report(
    complex: &ResolutionComplex<PrimeField>,
    bound: u32,
    format: Format,
) -> Result<u8, Failure> {
    let composition = check_complex(complex)?;
    let minimality = check_minimal(complex);
    let theta = theta_vanishing_check(complex)?;
    let cache = RankCache::new();
    let exactness: ExactnessReport = graded_exactness(complex, bound, &cache)?;
    let pass =
        composition.is_pass() && minimality.is_pass() && theta.is_pass() && exactness.all_exact;

    match format {
        Format::Json => {
            let witness = match &composition {
                ComplexCheck::Pass => json!(null),
                ComplexCheck::Fail {
                    position,
                    row,
                    col,
                    residual,
                } => json!({
                    "position": position, "row": row, "col": col, "residual": residual.to_string(),
                }),
            };
            let report = json!({
                "pass": pass,
                "complex": composition.is_pass(),
                "complex_witness": witness,
                "minimal": minimality.is_pass(),
                "theta_vanishing": theta.is_pass(),
                "exactness": serde_json::to_value(&exactness).unwrap(),
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            match &composition {
                ComplexCheck::Pass => println!("composition d.d = 0: PASS"),
                ComplexCheck::Fail {
                    position,
                    row,
                    col,
                    residual,
                } => println!(
                    "composition d.d = 0: FAIL at d{position}.d{} entry ({row},{col}): {residual}",
                    position + 1
                ),
            }
            match &minimality {
                MinimalityCheck::Pass => println!("minimality: PASS"),
                MinimalityCheck::Fail { position, row, col } => {
                    println!("minimality: FAIL unit entry in d{position} at ({row},{col})")
                }
            }
            match &theta {
                ThetaCheck::Pass => println!("theta vanishing: PASS"),
                ThetaCheck::Fail { column } => println!("theta vanishing: FAIL at column {column}"),
            }
            println!(
                "graded exactness (fp:{}, degrees 0..={}): {}",
                exactness.prime, exactness.degree_bound, exactness.summary
            );
            for row in exactness.positions.iter().filter(|r| !r.exact) {
                println!(
                    "  homology at position {} degree {}: dim {} rank {} kernel {} next {}",
                    row.position, row.degree, row.dim, row.rank, row.kernel, row.rank_next
                );
            }
            for check in exactness.ideal_checks.iter().filter(|c| !c.ok) {
                println!(
                    "  ideal dimension mismatch at degree {}: image {} expected {}",
                    check.degree, check.image_dim, check.expected_dim
                );
            }
            println!("verify: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if pass { 0 } else { EXIT_VERIFY_FAILED })
}

fn oracle_report<K: Field>(
    lines: &[String],
    ring: RingId,
    field: K,
    degree: i64,
    format: Format,
) -> Result<u8, Failure> {
    let gens: Result<Vec<_>, veronese_syzygy::ParseError> = lines
        .iter()
        .map(|l| parse_poly(l, ring, field.clone()))
        .collect();
    let gens = gens?;
    let basis =
        syzygy_oracle(&gens, degree).map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
    match format {
        Format::Text => {
            println!("dimension: {}", basis.len());
            for (i, vector) in basis.iter().enumerate() {
                let parts: Vec<String> = vector.iter().map(|p| p.to_string()).collect();
                println!("s{}: ({})", i + 1, parts.join(", "));
            }
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = basis
                .iter()
                .map(|v| v.iter().map(|p| p.to_string()).collect())
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"dimension": basis.len(), "basis": rows}))
                    .unwrap()
            );
        }
    }
    Ok(0)
}

fn lift_report<K: Field>(text: &str, field: K, format: Format) -> Result<u8, Failure> {
    let f = parse_poly(text, RingId::Curve, field)?;
    let d = curve_degree(&f)?;
    match Parity::of(d) {
        Parity::Even => {
            let el = lift_even(&f)?;
            match format {
                Format::Text => {
                    println!("parity: even (d = {d}, m = {})", el.half_degree);
                    println!("F = {}", el.lift);
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "parity": "even", "d": d, "m": el.half_degree, "F": el.lift.to_string(),
                    }))
                    .unwrap()
                ),
            }
        }
        Parity::Odd => {
            let ol = lift_odd(&f)?;
            match format {
                Format::Text => {
                    println!("parity: odd (d = {d}, m = {})", ol.half_degree);
                    for (name, p) in ["h_I", "h_II", "h_III", "h_IV"].iter().zip(&ol.h) {
                        println!("{name} = {p}");
                    }
                    for (n, p) in ol.f_lifts.iter().enumerate() {
                        println!("F{n} = {p}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "parity": "odd", "d": d, "m": ol.half_degree,
                        "h": ol.h.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "F": ol.f_lifts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    }))
                    .unwrap()
                ),
            }
        }
    }
    Ok(0)
}
