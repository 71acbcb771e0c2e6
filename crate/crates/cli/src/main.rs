use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use quadft::mub::{is_prime, mub_dim4, mub_prime, three_mub};
use quadft::qdft::{self, GaussSumArgs, QdftParams};
use quadft::verify::{self, Suite, VerifyConfig};
use quadft::weyl_pauli::{self, PauliIndex, SineIndex};
use quadft::wigner_racah::{fbar, fbar_conjugation_factor, parse_half_ints};
use quadft::{ComplexMatrix, ComplexVector, PhaseMatrix, Real};

mod output;

use output::{pair, Format, MatrixPayload, OutputDocument, Payload};

const MUB_TOLERANCE: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "quadft", version, about = "Quadratic DFT matrices, Pauli operators and mutually unbiased bases")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, env = "QUADFT_FORMAT", default_value = "pretty")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the operator matrices
    Matrix(MatrixArgs),
    /// Mutually unbiased bases
    Mub(MubArgs),
    /// Run invariant sweeps; exits 1 if any check fails
    Verify(VerifyArgs),
    /// Quadratic Gauss sum S(u, v, w)
    Gauss(GaussArgs),
    /// Apply F_ra (or its inverse) to a signal read from a file
    Transform(TransformArgs),
    /// f̄ symbol in the {j², x} scheme
    Fbar(FbarArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Fra,
    Hra,
    Dra,
    Vra,
    X,
    Z,
    Pr,
    Uab,
    T,
}

#[derive(clap::Args, Debug)]
struct MatrixArgs {
    #[arg(value_enum)]
    kind: MatrixKind,
    #[arg(long)]
    d: usize,
    /// Rational `p/q`, integer, or decimal (float path)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    b: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    n1: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    n2: i64,
}

#[derive(clap::Args, Debug)]
struct MubArgs {
    /// Prime dimension, or any dimension with --three-mub
    #[arg(long, required_unless_present = "dim4")]
    p: Option<usize>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    /// The five-basis set in dimension 4
    #[arg(long, conflicts_with_all = ["p", "three_mub"])]
    dim4: bool,
    /// B_0a, B_0(a+1) and the computational basis, valid in every dimension
    #[arg(long)]
    three_mub: bool,
    #[arg(long, default_value_t = 0)]
    a: usize,
    /// Append pairwise deviations; exits 1 above tolerance
    #[arg(long)]
    verify: bool,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = VerifyConfig::default().d_max)]
    d_max: usize,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
}

#[derive(clap::Args, Debug)]
struct GaussArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: i64,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, allow_hyphen_values = true)]
    w: i64,
}

#[derive(clap::Args, Debug)]
struct TransformArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    a: i64,
    /// JSON array of [re, im] pairs, or CSV with `re,im` columns
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    inverse: bool,
}

#[derive(clap::Args, Debug)]
struct FbarArgs {
    /// Three comma-separated half-integers, e.g. `1,1/2,1/2`
    #[arg(long)]
    j: String,
    /// Three comma-separated indices
    #[arg(long)]
    alpha: String,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

/// Integers and `p/q` stay exact; decimals fall back to floats with a warning.
fn parse_real(name: &str, s: &str) -> Result<Real> {
    if let Ok(r) = s.parse::<Rational64>() {
        return Ok(Real::Rational(r));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => {
            eprintln!("warning: --{name} {s} is not a fraction; using floating-point construction");
            Ok(Real::Float(x))
        }
        _ => Err(UsageError(format!("--{name}: cannot parse {s:?} as a rational or decimal number")).into()),
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, passed)) => match doc.render(cli.format) {
            Ok(text) => {
                print!("{text}");
                if passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<quadft::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: &Cli) -> Result<(OutputDocument, bool)> {
    match &cli.command {
        Command::Matrix(args) => cmd_matrix(args).map(|d| (d, true)),
        Command::Mub(args) => cmd_mub(args),
        Command::Verify(args) => Ok(cmd_verify(args)),
        Command::Gauss(args) => cmd_gauss(args).map(|d| (d, true)),
        Command::Transform(args) => cmd_transform(args).map(|d| (d, true)),
        Command::Fbar(args) => cmd_fbar(args).map(|d| (d, true)),
    }
}

fn kind_name(kind: MatrixKind) -> String {
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn cmd_matrix(args: &MatrixArgs) -> Result<OutputDocument> {
    let d = args.d;
    if d < 2 {
        return Err(usage(format!("--d must be at least 2, got {d}")));
    }
    let r = parse_real("r", &args.r)?;
    let a = args.a.rem_euclid(d as i64) as usize;
    let params = QdftParams::new(d, r, args.a)?;
    let exact = |m: PhaseMatrix| MatrixPayload::exact(&m);
    let complex = |m: ComplexMatrix| MatrixPayload::complex(&m);
    let matrix = match (args.kind, r) {
        (MatrixKind::Fra, Real::Rational(_)) => exact(qdft::fra_matrix(&params)?),
        (MatrixKind::Fra, Real::Float(_)) => complex(qdft::fra_complex(&params)),
        (MatrixKind::Hra, Real::Rational(_)) => exact(qdft::hra_matrix(&params)?),
        (MatrixKind::Hra, Real::Float(_)) => complex(qdft::hra_complex(&params)),
        (MatrixKind::Dra, Real::Rational(_)) => exact(qdft::dra_matrix(&params)?),
        (MatrixKind::Dra, Real::Float(_)) => complex(qdft::dra_complex(&params)),
        (MatrixKind::Vra, Real::Rational(q)) => exact(weyl_pauli::vra_matrix(d, q, a)),
        (MatrixKind::Vra, Real::Float(_)) => complex(weyl_pauli::vra_complex(d, r, a)),
        (MatrixKind::Pr, Real::Rational(q)) => exact(weyl_pauli::pr_matrix(d, q)),
        (MatrixKind::Pr, Real::Float(x)) => {
            let corner = Complex64::from_polar(1.0, std::f64::consts::PI * (d as f64 - 1.0) * x);
            let mut diag = vec![Complex64::new(1.0, 0.0); d];
            diag[d - 1] = corner;
            complex(quadft::linalg::diagonal(&diag))
        }
        (MatrixKind::X, _) => exact(weyl_pauli::x_matrix(d)),
        (MatrixKind::Z, _) => exact(weyl_pauli::z_matrix(d)),
        (MatrixKind::Uab, _) => exact(weyl_pauli::u_ab(d, PauliIndex::new(args.a, args.b, d))),
        (MatrixKind::T, _) => exact(weyl_pauli::t_matrix(d, SineIndex::new(args.n1, args.n2))),
    };
    let mut command = format!("matrix {} --d {d}", kind_name(args.kind));
    match args.kind {
        MatrixKind::Fra | MatrixKind::Hra | MatrixKind::Dra | MatrixKind::Vra => {
            command += &format!(" --r {r} --a {a}")
        }
        MatrixKind::Pr => command += &format!(" --r {r}"),
        MatrixKind::Uab => command += &format!(" --a {} --b {}", args.a, args.b),
        MatrixKind::T => command += &format!(" --n1 {} --n2 {}", args.n1, args.n2),
        MatrixKind::X | MatrixKind::Z => {}
    }
    Ok(OutputDocument::new(command, Payload::Matrix { matrix }))
}

fn cmd_mub(args: &MubArgs) -> Result<(OutputDocument, bool)> {
    let (set, command) = if args.dim4 {
        (mub_dim4()?, "mub --dim4".to_string())
    } else {
        let p = args.p.ok_or_else(|| usage("--p is required"))?;
        if args.three_mub {
            (three_mub(p, args.a)?, format!("mub --p {p} --three-mub --a {}", args.a))
        } else {
            if !is_prime(p as u64) {
                return Err(usage(format!(
                    "{p} is not prime, so no complete set is constructed; use --three-mub for a composite dimension"
                )));
            }
            let r = match parse_real("r", &args.r)? {
                Real::Rational(r) => r,
                Real::Float(_) => return Err(usage("--r must be a fraction for mub")),
            };
            (mub_prime(p, r)?, format!("mub --p {p} --r {r}"))
        }
    };
    let command = if args.verify { command + " --verify" } else { command };
    let payload = Payload::mub(&set, args.verify, MUB_TOLERANCE);
    let passed = match &payload {
        Payload::Mub { verification: Some(v), .. } => v.passed,
        _ => true,
    };
    Ok((OutputDocument::new(command, payload), passed))
}

fn cmd_verify(args: &VerifyArgs) -> (OutputDocument, bool) {
    let config = VerifyConfig { suite: args.suite, d_max: args.d_max, seed: args.seed };
    let report = verify::run(config);
    let command = format!("verify {} --d-max {} --seed {}", args.suite, args.d_max, args.seed);
    (OutputDocument::new(command, Payload::verify(&report)), report.passed())
}

fn cmd_gauss(args: &GaussArgs) -> Result<OutputDocument> {
    let v = parse_real("v", &args.v)?;
    let value = qdft::gauss_sum(&GaussSumArgs { u: args.u, v, w: args.w })?;
    Ok(OutputDocument::new(
        format!("gauss --u {} --v {v} --w {}", args.u, args.w),
        Payload::Gauss { u: args.u, v: v.to_string(), w: args.w, value: pair(value) },
    ))
}

fn cmd_transform(args: &TransformArgs) -> Result<OutputDocument> {
    let r = parse_real("r", &args.r)?;
    let params = QdftParams::new(args.d, r, args.a)?;
    let x = read_signal(&args.input)?;
    if x.len() != args.d {
        return Err(usage(format!("signal has {} samples but --d is {}", x.len(), args.d)));
    }
    let y = if args.inverse { qdft::inverse(&x, &params)? } else { qdft::forward(&x, &params)? };
    let direction = if args.inverse { "inverse" } else { "forward" };
    Ok(OutputDocument::new(
        format!("transform --d {} --r {r} --a {}{}", args.d, params.a, if args.inverse { " --inverse" } else { "" }),
        Payload::Transform {
            d: args.d,
            r: r.to_string(),
            a: params.a,
            direction: direction.into(),
            output: y.iter().map(|z| pair(*z)).collect(),
        },
    ))
}

fn read_signal(path: &Path) -> Result<ComplexVector> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let pairs: Vec<[f64; 2]> = if is_csv {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let headers = rdr.headers()?.clone();
        let col = |name: &str| {
            headers.iter().position(|h| h.trim() == name).ok_or_else(|| usage(format!("{}: missing `{name}` column", path.display())))
        };
        let (re, im) = (col("re")?, col("im")?);
        rdr.records()
            .map(|rec| {
                let rec = rec.map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let get = |i: usize| -> Result<f64> {
                    rec.get(i)
                        .and_then(|s| s.trim().parse().ok())
                        .ok_or_else(|| usage(format!("{}: malformed number in row {:?}", path.display(), rec)))
                };
                Ok([get(re)?, get(im)?])
            })
            .collect::<Result<_>>()?
    } else {
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: expected a JSON array of [re, im] pairs: {e}", path.display())))?
    };
    Ok(ComplexVector::from_iterator(pairs.len(), pairs.iter().map(|p| Complex64::new(p[0], p[1]))))
}

fn cmd_fbar(args: &FbarArgs) -> Result<OutputDocument> {
    let j = parse_half_ints(&args.j)?;
    let alpha: Vec<usize> = args
        .alpha
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("--alpha: cannot parse {s:?}"))))
        .collect::<Result<_>>()?;
    let (j, alpha): ([_; 3], [usize; 3]) = match (j.try_into(), alpha.try_into()) {
        (Ok(j), Ok(a)) => (j, a),
        _ => bail!(usage("--j and --alpha take exactly three values each")),
    };
    let value = fbar(j, alpha)?;
    let parity = if ((j[0].doubled() + j[1].doubled() + j[2].doubled()) / 2) % 2 == 0 { 1 } else { -1 };
    let transposed = fbar([j[1], j[0], j[2]], [alpha[1], alpha[0], alpha[2]])?;
    let cyclic = fbar([j[1], j[2], j[0]], [alpha[1], alpha[2], alpha[0]])?;
    let factor = fbar_conjugation_factor(j, alpha);
    let js: Vec<String> = j.iter().map(|x| x.to_string()).collect();
    Ok(OutputDocument::new(
        format!("fbar --j {} --alpha {}", js.join(","), alpha.map(|a| a.to_string()).join(",")),
        Payload::Fbar {
            j: js,
            alpha: alpha.to_vec(),
            value: pair(value),
            parity,
            transposed: pair(transposed),
            cyclic: pair(cyclic),
            conjugation_factor: pair(factor),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_parsing() {
        assert_eq!(parse_real("r", "1/2").unwrap(), Real::Rational(Rational64::new(1, 2)));
        assert_eq!(parse_real("r", "-3").unwrap(), Real::Rational(Rational64::from_integer(-3)));
        assert_eq!(parse_real("r", "0.25").unwrap(), Real::Float(0.25));
        assert!(parse_real("r", "abc").is_err());
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
