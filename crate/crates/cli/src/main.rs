//! `landen` — evaluate rational and elliptic integrals by iterating
//! integral-preserving coefficient transformations, trace the iterations,
//! and run randomized verification suites over every claimed invariant.

mod config;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use landen_core::{agm, AgmPair, Degree6Denominator, Quadratic};
use num_rational::BigRational as Rational;
use num_traits::Zero;
use serde::Serialize;

use config::{Format, Layers, Settings};
use output::{SexticDoc, SexticParams, SexticRowDoc, TraceDoc, TraceParams, TraceRowDoc};

#[derive(Parser)]
#[command(
    name = "landen",
    version,
    about = "Rational integrals by coefficient iteration: evaluation, traces, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Stopping tolerance (also LANDEN_TOL or `tol=` in the config file)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Iteration step budget (also LANDEN_MAX_ITER or `max_iter=`)
    #[arg(long, global = true)]
    max_iter: Option<usize>,

    /// Output format (also LANDEN_FORMAT or `format=`)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Optional key=value config file (lowest-precedence layer)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Hardware double precision.
    Float,
    /// Exact rational arithmetic; coefficients accept `p/q` and decimal forms.
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ∫ dx/(ax² + bx + c) over ℝ, by iteration and in closed form
    EvalQuad {
        /// Coefficient of x²
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Coefficient of x
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        /// Constant coefficient
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
    },
    /// Trace the coefficient iteration from (a, b, c)
    TraceQuad {
        /// Coefficient of x²
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Coefficient of x
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Constant coefficient
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Run exactly this many steps instead of iterating to tolerance
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
    },
    /// Arithmetic-geometric mean of two positive numbers
    Agm {
        /// First entry of the pair
        #[arg(long)]
        a: f64,
        /// Second entry of the pair
        #[arg(long)]
        b: f64,
    },
    /// Elliptic value G(a, b) = π/(2·AGM(a, b))
    Elliptic {
        /// First parameter of the integral
        #[arg(long)]
        a: f64,
        /// Second parameter of the integral
        #[arg(long)]
        b: f64,
    },
    /// Compare 1/AGM(1, √2) with the lemniscate arc-length integral
    Lemniscate,
    /// Trace the sextic denominator-parameter iteration from (a, b)
    #[command(name = "degree6")]
    Degree6 {
        /// Coefficient of x⁴ in x⁶ + ax⁴ + bx² + 1
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Coefficient of x²
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Run randomized verification suites over the library's invariants
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        /// Cases per suite (each suite has its own default)
        #[arg(long)]
        samples: Option<usize>,
        /// Sampling seed; identical seeds give identical output
        #[arg(long, default_value_t = 0xda7a)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let layers = Layers {
        flag_tol: cli.tol,
        flag_max_iter: cli.max_iter,
        flag_format: cli.format,
        config_path: cli.config.as_deref(),
    };
    let settings = match layers.resolve() {
        Ok(settings) => settings,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command, settings) {
        Ok(Outcome { stdout, ok }) => {
            print!("{stdout}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    stdout: String,
    ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, ok: true }
    }
}

fn run(command: Command, settings: Settings) -> Result<Outcome, String> {
    match command {
        Command::EvalQuad { a, b, c } => eval_quad(a, b, c, settings),
        Command::TraceQuad {
            a,
            b,
            c,
            iters,
            backend,
        } => match backend {
            Backend::Float => trace_quad_float(&a, &b, &c, iters, settings),
            Backend::Rational => trace_quad_rational(&a, &b, &c, iters, settings),
        },
        Command::Agm { a, b } => agm_value(a, b, settings),
        Command::Elliptic { a, b } => elliptic_value(a, b, settings),
        Command::Lemniscate => lemniscate(settings),
        Command::Degree6 { a, b } => degree6(a, b, settings),
        Command::Verify {
            suite,
            samples,
            seed,
        } => run_verify(suite, samples, seed, settings),
    }
}

fn text_only(format: Format, what: &str) -> Result<(), String> {
    if format == Format::Csv {
        Err(format!(
            "csv output is not defined for {what}; use text or json"
        ))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct EvalDoc {
    a: f64,
    b: f64,
    c: f64,
    tol: f64,
    iterated: f64,
    closed_form: f64,
}

fn eval_quad(a: f64, b: f64, c: f64, settings: Settings) -> Result<Outcome, String> {
    text_only(settings.format, "eval-quad")?;
    let q = Quadratic::new(a, b, c).map_err(|e| e.to_string())?;
    let iterated = q
        .evaluate_by_iteration(settings.tol)
        .map_err(|e| e.to_string())?;
    let doc = EvalDoc {
        a,
        b,
        c,
        tol: settings.tol,
        iterated,
        closed_form: q.integral_value(),
    };
    let stdout = match settings.format {
        Format::Json => output::to_json(&doc),
        _ => format!(
            "integral (iterated)    {}\nintegral (closed form) {}\n",
            doc.iterated, doc.closed_form
        ),
    };
    Ok(Outcome::ok(stdout))
}

fn render_trace<V>(doc: &TraceDoc<V>, format: Format) -> String
where
    V: std::fmt::Display + Serialize + serde::de::DeserializeOwned,
{
    match format {
        Format::Text => doc.to_text(),
        Format::Csv => doc.to_csv(),
        Format::Json => output::to_json(doc),
    }
}

fn trace_quad_float(
    a: &str,
    b: &str,
    c: &str,
    iters: Option<usize>,
    settings: Settings,
) -> Result<Outcome, String> {
    let parse = |name: &str, s: &str| {
        s.parse::<f64>()
            .map_err(|_| format!("invalid float coefficient --{name} {s:?}"))
    };
    let (a, b, c) = (parse("a", a)?, parse("b", b)?, parse("c", c)?);
    let q = Quadratic::new(a, b, c).map_err(|e| e.to_string())?;
    let (trace, limit) = match iters {
        Some(steps) => {
            let trace = q.trace(steps);
            let limit = *trace.last().state.a();
            (trace, limit)
        }
        None => {
            let (limit, trace) = q
                .iterate(settings.tol, settings.max_iter)
                .map_err(|e| e.to_string())?;
            (trace, limit)
        }
    };
    let doc = TraceDoc {
        params: TraceParams {
            a,
            b,
            c,
            tol: settings.tol,
            max_iter: settings.max_iter,
            iters,
            backend: "float".into(),
        },
        rows: trace
            .rows()
            .iter()
            .map(|row| TraceRowDoc {
                n: row.index,
                a: *row.state.a(),
                b: *row.state.b(),
                c: *row.state.c(),
                residual: row.residual,
            })
            .collect(),
        limit: Some(limit),
        closed_form: Some(q.discriminant().sqrt() / 2.0),
    };
    Ok(Outcome::ok(render_trace(&doc, settings.format)))
}

fn trace_quad_rational(
    a: &str,
    b: &str,
    c: &str,
    iters: Option<usize>,
    settings: Settings,
) -> Result<Outcome, String> {
    let (a, b, c) = (parse_exact(a)?, parse_exact(b)?, parse_exact(c)?);
    let q = Quadratic::new(a.clone(), b.clone(), c.clone()).map_err(|e| e.to_string())?;
    let trace = match iters {
        Some(steps) => q.trace(steps),
        None => {
            let tol = Rational::from_float(settings.tol).expect("validated tolerance is finite");
            let (_, trace) = q
                .iterate(tol, settings.max_iter)
                .map_err(|e| e.to_string())?;
            trace
        }
    };
    let doc = TraceDoc {
        params: TraceParams {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            tol: settings.tol,
            max_iter: settings.max_iter,
            iters,
            backend: "rational".into(),
        },
        rows: trace
            .rows()
            .iter()
            .map(|row| TraceRowDoc {
                n: row.index,
                a: row.state.a().to_string(),
                b: row.state.b().to_string(),
                c: row.state.c().to_string(),
                residual: row.residual.to_string(),
            })
            .collect(),
        limit: Some(trace.last().state.a().to_string()),
        // no square roots in exact mode
        closed_form: None,
    };
    Ok(Outcome::ok(render_trace(&doc, settings.format)))
}

/// Parses `p/q`, decimal, or integer notation into an exact rational.
fn parse_exact(input: &str) -> Result<Rational, String> {
    let s = input.trim();
    let bad = |_| format!("invalid rational coefficient {input:?}");
    if let Some((num, den)) = s.split_once('/') {
        let n: num_bigint::BigInt = num.trim().parse().map_err(bad)?;
        let d: num_bigint::BigInt = den.trim().parse().map_err(bad)?;
        if d.is_zero() {
            return Err(format!("zero denominator in {input:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("invalid rational coefficient {input:?}"));
    }
    if !int_part.chars().all(|ch| ch.is_ascii_digit())
        || !frac_part.chars().all(|ch| ch.is_ascii_digit())
    {
        return Err(format!("invalid rational coefficient {input:?}"));
    }
    let numerator: num_bigint::BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .expect("digit strings always parse");
    let denominator: num_bigint::BigInt = format!("1{}", "0".repeat(frac_part.len()))
        .parse()
        .expect("powers of ten always parse");
    let value = Rational::new(numerator, denominator);
    Ok(if negative { -value } else { value })
}

#[derive(Serialize)]
struct AgmDoc {
    a: f64,
    b: f64,
    tol: f64,
    agm: f64,
}

fn agm_value(a: f64, b: f64, settings: Settings) -> Result<Outcome, String> {
    text_only(settings.format, "agm")?;
    let pair = AgmPair::new(a, b).map_err(|e| e.to_string())?;
    let doc = AgmDoc {
        a,
        b,
        tol: settings.tol,
        agm: pair.agm(settings.tol),
    };
    let stdout = match settings.format {
        Format::Json => output::to_json(&doc),
        _ => format!("agm {}\n", doc.agm),
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Serialize)]
struct EllipticDoc {
    a: f64,
    b: f64,
    g: f64,
    agm: f64,
}

fn elliptic_value(a: f64, b: f64, settings: Settings) -> Result<Outcome, String> {
    text_only(settings.format, "elliptic")?;
    let pair = AgmPair::new(a, b).map_err(|e| e.to_string())?;
    let mean = pair.agm_machine();
    let doc = EllipticDoc {
        a,
        b,
        g: std::f64::consts::FRAC_PI_2 / mean,
        agm: mean,
    };
    let stdout = match settings.format {
        Format::Json => output::to_json(&doc),
        _ => format!("G {}\nagm {}\n", doc.g, doc.agm),
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Serialize)]
struct LemniscateDoc {
    agm_value: f64,
    integral_value: f64,
    difference: f64,
}

fn lemniscate(settings: Settings) -> Result<Outcome, String> {
    text_only(settings.format, "lemniscate")?;
    let check: agm::LemniscateCheck<f64> =
        agm::lemniscate_check_with(settings.tol.min(1e-10)).map_err(|e| e.to_string())?;
    let doc = LemniscateDoc {
        agm_value: check.agm_value,
        integral_value: check.integral_value,
        difference: check.difference(),
    };
    let stdout = match settings.format {
        Format::Json => output::to_json(&doc),
        _ => format!(
            "1/AGM(1, sqrt 2)     {}\nlemniscate integral  {}\ndifference           {:e}\n",
            doc.agm_value, doc.integral_value, doc.difference
        ),
    };
    Ok(Outcome::ok(stdout))
}

fn degree6(a: f64, b: f64, settings: Settings) -> Result<Outcome, String> {
    let state = Degree6Denominator::new(a, b).map_err(|e| e.to_string())?;
    let run = state
        .iterate(settings.tol, settings.max_iter)
        .map_err(|e| e.to_string())?;
    let doc = SexticDoc {
        params: SexticParams {
            a,
            b,
            tol: settings.tol,
            max_iter: settings.max_iter,
        },
        rows: run
            .rows
            .iter()
            .map(|row| SexticRowDoc {
                n: row.index,
                a: row.a,
                b: row.b,
                residual: row.residual,
            })
            .collect(),
        converged: run.converged,
    };
    let stdout = match settings.format {
        Format::Text => doc.to_text(),
        Format::Csv => doc.to_csv(),
        Format::Json => output::to_json(&doc),
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Serialize)]
struct VerifyDoc {
    suites: Vec<verify::SuiteReport>,
    ok: bool,
}

fn run_verify(
    suite: verify::Suite,
    samples: Option<usize>,
    seed: u64,
    settings: Settings,
) -> Result<Outcome, String> {
    text_only(settings.format, "verify")?;
    let reports = verify::run(suite, samples, seed);
    let ok = verify::all_passed(&reports);
    let stdout = match settings.format {
        Format::Json => output::to_json(&VerifyDoc {
            suites: reports,
            ok,
        }),
        _ => verify::render_text(&reports),
    };
    Ok(Outcome { stdout, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_parsing_forms() {
        assert_eq!(parse_exact("4").unwrap(), Rational::from_integer(4.into()));
        assert_eq!(
            parse_exact("3/2").unwrap(),
            Rational::new(3.into(), 2.into())
        );
        assert_eq!(
            parse_exact("-3/2").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        assert_eq!(
            parse_exact("0.5").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(
            parse_exact("-0.25").unwrap(),
            Rational::new((-1).into(), 4.into())
        );
        assert_eq!(parse_exact("2.").unwrap(), Rational::from_integer(2.into()));
        assert_eq!(
            parse_exact(".5").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        assert!(parse_exact("abc").is_err());
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("1.2.3").is_err());
        assert!(parse_exact("").is_err());
    }

    #[test]
    fn float_trace_emits_the_fixed_csv_schema() {
        let settings = Settings {
            format: Format::Csv,
            ..Settings::default()
        };
        let out = trace_quad_float("4", "3", "1", Some(1), settings).unwrap();
        assert!(out.stdout.starts_with("n,a,b,c,residual\n"));
        assert!(out.ok);
    }

    #[test]
    fn rational_trace_reports_exact_rows() {
        let settings = Settings {
            format: Format::Csv,
            ..Settings::default()
        };
        let out = trace_quad_rational("4", "3", "1", Some(1), settings).unwrap();
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[1], "0,4,3,1,6");
        // residual = |27/41| + |44/41 − 71/41| = 54/41
        assert_eq!(lines[2], "1,44/41,27/41,71/41,54/41");
    }

    #[test]
    fn invalid_coefficients_are_domain_errors() {
        let settings = Settings::default();
        assert!(eval_quad(1.0, 3.0, 1.0, settings).is_err());
        assert!(trace_quad_float("1", "2", "1", Some(1), settings).is_err());
        assert!(agm_value(-1.0, 1.0, settings).is_err());
    }
}
