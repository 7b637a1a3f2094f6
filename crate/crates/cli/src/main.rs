use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use affschur::cell::{self, CellVector, Membership, Side, Tamper, VerifyConfig};
use affschur::hecke::{phi, phi_inverse, quotient_image};
use affschur::json;
use affschur::{AlgebraElement, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const DEFAULT_MAX_WINDOW: i64 = 64;

/// Exact arithmetic in the affine Schur algebra S(n, r) at q = 1.
#[derive(Parser)]
#[command(name = "affschur", version)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Read input from this file instead of stdin.
    #[arg(long, global = true)]
    file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product of a JSON array of elements, left to right.
    Mult,
    /// Re-emit an element in canonical form.
    Canon,
    /// Degree of each term of an element (triangular terms only).
    Grade,
    /// Coordinates over Π₁ (left, e_λS) or Π₂ (right, Se_λ) for n = r = 2.
    Decompose {
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Element of e_λSe_λ to a Laurent polynomial in x1, x2; `--inverse` goes back.
    Psi {
        #[arg(long)]
        inverse: bool,
    },
    /// Image in S/J = Q[x, x^-1] for n = r = 2.
    Quotient,
    /// Hecke element to e_νSe_ν; `--inverse` goes back.
    HeckeEmbed {
        #[arg(long)]
        inverse: bool,
    },
    /// Membership in J = Se_λS with its certificate tensor.
    Member {
        #[arg(long, default_value_t = 12)]
        window: i64,
    },
    /// Certify the affine cellular structure of S(2, 2).
    VerifyCell {
        #[arg(long, default_value_t = 12)]
        window: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Negative control: replace τ or σ by the identity.
        #[arg(long, value_enum)]
        tamper: Option<TamperArg>,
        /// Report zero milliseconds so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum TamperArg {
    Tau,
    Sigma,
}

/// Why a command did not succeed, mapped onto exit codes.
enum Failure {
    Invalid(String),
    Undecided(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Undecided(_) => Failure::Undecided(e.to_string()),
            Error::Underdetermined { .. } | Error::Internal(_) => Failure::Verification(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

struct Output {
    json: Value,
    pretty: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, pretty: impl Into<String>) -> Self {
        Self {
            json,
            pretty: pretty.into(),
            code: 0,
        }
    }
}

fn max_window() -> Result<i64, Failure> {
    match std::env::var("AFFSCHUR_MAX_WINDOW") {
        Ok(s) => s
            .trim()
            .parse::<i64>()
            .ok()
            .filter(|&w| w >= 1)
            .ok_or_else(|| Failure::Invalid(format!("AFFSCHUR_MAX_WINDOW must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_WINDOW),
    }
}

fn window_cap(window: i64) -> Result<i64, Failure> {
    if window < 1 {
        return Err(Failure::Invalid(format!("window must be positive, got {window}")));
    }
    Ok(window.min(max_window()?))
}

fn read_input(file: &Option<PathBuf>) -> Result<Value, Failure> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Invalid(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("input is not JSON: {e}")))
}

fn element(v: Value) -> Result<AlgebraElement, Failure> {
    Ok(json::element_from_value(v)?)
}

fn require_22(x: &AlgebraElement) -> Result<(), Failure> {
    if (x.n(), x.r()) != (2, 2) {
        return Err(Error::ParameterMismatch(2, 2, x.n(), x.r()).into());
    }
    Ok(())
}

fn pretty_vector(v: &CellVector) -> String {
    let names = match v.side {
        Side::Left => cell::pi1(),
        Side::Right => cell::pi2(),
    };
    names
        .iter()
        .zip(&v.coords)
        .map(|(a, c)| format!("{a}: {c}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn pretty_membership(m: &Membership) -> String {
    match m {
        Membership::Member(t) => {
            let mut lines = vec!["member".to_string()];
            let (p1, p2) = (cell::pi1(), cell::pi2());
            for (l, row) in t.coords.iter().enumerate() {
                for (k, p) in row.iter().enumerate() {
                    if !p.is_zero() {
                        lines.push(format!("  {} ⊗ ({p}) ⊗ {}", p2[l], p1[k]));
                    }
                }
            }
            lines.join("\n")
        }
        Membership::NotMember => "not a member within the window".into(),
        Membership::Undecided => "undecided: element wider than the window".into(),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if let Command::VerifyCell {
        window,
        seed,
        samples,
        tamper,
        no_timing,
    } = &cli.command
    {
        let cfg = VerifyConfig {
            window: window_cap(*window)?,
            seed: *seed,
            samples: *samples,
            tamper: tamper.map(|t| match t {
                TamperArg::Tau => Tamper::Tau,
                TamperArg::Sigma => Tamper::Sigma,
            }),
            timing: !no_timing,
        };
        let report = cell::verify_cell_chain(&cfg);
        let code = if report.any_failed() {
            1
        } else if report.any_undecided() {
            3
        } else {
            0
        };
        let json = serde_json::to_value(&report).expect("serializable");
        return Ok(Output {
            json,
            pretty: report.to_string(),
            code,
        });
    }

    let input = read_input(&cli.file)?;
    Ok(match &cli.command {
        Command::Mult => {
            let Value::Array(items) = input else {
                return Err(Failure::Invalid("mult expects a JSON array of elements".into()));
            };
            let mut factors = items.into_iter().map(element);
            let Some(first) = factors.next() else {
                return Err(Failure::Invalid("mult needs at least one element".into()));
            };
            let mut acc = first?;
            for y in factors {
                acc = affschur::multiply(&acc, &y?)?;
            }
            Output::ok(json::element_to_value(&acc), acc.to_string())
        }
        Command::Canon => {
            let x = element(input)?;
            Output::ok(json::element_to_value(&x), x.to_string())
        }
        Command::Grade => {
            let x = element(input)?;
            let mut terms = Vec::new();
            let mut grades = Vec::new();
            for (a, _) in x.terms() {
                let g = a.grade()?;
                grades.push(g);
                terms.push(json!({ "entries": json::matrix_entries(a), "grade": g }));
            }
            let homogeneous = grades.first().filter(|g| grades.iter().all(|h| h == *g)).copied();
            let pretty = x
                .terms()
                .zip(&grades)
                .map(|((a, _), g)| format!("{a}: {g}"))
                .collect::<Vec<_>>()
                .join("\n");
            Output::ok(json!({ "terms": terms, "grade": homogeneous }), pretty)
        }
        Command::Decompose { side } => {
            let x = element(input)?;
            require_22(&x)?;
            let v = match side {
                SideArg::Left => cell::pi1_decompose(&x)?,
                SideArg::Right => cell::pi2_decompose(&x)?,
            };
            Output::ok(json::cell_vector_to_value(&v), pretty_vector(&v))
        }
        Command::Psi { inverse: false } => {
            let x = element(input)?;
            require_22(&x)?;
            let p = cell::psi(&x, max_window()?)?;
            Output::ok(json::poly2_to_value(&p), p.to_string())
        }
        Command::Psi { inverse: true } => {
            let p = json::poly2_from_value(input)?;
            let x = cell::psi_inverse(&p);
            Output::ok(json::element_to_value(&x), x.to_string())
        }
        Command::Quotient => {
            let x = element(input)?;
            let p = quotient_image(&x)?;
            Output::ok(json::poly1_to_value(&p), p.to_string())
        }
        Command::HeckeEmbed { inverse: false } => {
            let h = json::hecke_from_value(input)?;
            let x = phi(&h);
            Output::ok(json::element_to_value(&x), x.to_string())
        }
        Command::HeckeEmbed { inverse: true } => {
            let x = element(input)?;
            let h = phi_inverse(&x)?;
            Output::ok(json::hecke_to_value(&h), h.to_string())
        }
        Command::Member { window } => {
            let x = element(input)?;
            require_22(&x)?;
            let m = cell::j_membership(&x, window_cap(*window)?)?;
            let code = if m == Membership::Undecided { 3 } else { 0 };
            Output {
                json: json::membership_to_value(&m),
                pretty: pretty_membership(&m),
                code,
            }
        }
        Command::VerifyCell { .. } => unreachable!("handled above"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.pretty {
                println!("{}", out.pretty);
            } else {
                println!("{}", serde_json::to_string(&out.json).expect("serializable"));
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Undecided(msg)) => {
            eprintln!("undecided: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
    }
}
