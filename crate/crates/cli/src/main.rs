use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use f2sym::coordinates::standard_form;
use f2sym::involution::omega_table;
use f2sym::partitions::{count_self_conjugate, partition_count};
use f2sym::schur::{from_schur_basis, mn_multiply, to_schur_basis, SchurExpr};
use f2sym::verifier::{
    Check, CheckReport, GradedIdealFamily, Status, Verifier, VerifyConfig, MAX_VERIFY_DEGREE,
};
use f2sym::{Error, Poly};
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "f2sym",
    version,
    about = "Symmetric functions over GF(2) and the omega involution"
)]
struct Cli {
    /// Truncation bound N; every degree above it is dropped.
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: u32,

    /// Degree bound for the presentation check (default: min(10, N)).
    #[arg(long, global = true)]
    presentation_degree: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for the verifier (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the involution omega.
    Omega { expr: String },
    /// Apply d = 1 + omega.
    Dd { expr: String },
    /// The norm x * omega(x).
    Norm { expr: String },
    /// Rewrite in the standard basis p * a * d[w_2i]...
    StandardForm { expr: String },
    /// Expand a w-polynomial in Schur functions.
    ToSchur { expr: String },
    /// Expand a sum of Schur functions in w's.
    FromSchur { expr: String },
    /// Multiply a sum of Schur functions by p_k.
    Mn { k: u32, expr: String },
    /// Per-degree dimensions of R, S, I and S/I.
    Dims {
        /// Highest degree to tabulate (default: N).
        bound: Option<u32>,
    },
    /// Run a named check, or `all`.
    Verify { check: String },
}

/// Exit status plus what to print.
struct Output {
    code: u8,
    text: String,
    json: Value,
}

impl Output {
    fn value(command: &str, input: &str, result: String) -> Output {
        Output {
            code: 0,
            json: json!({ "schema": SCHEMA, "command": command, "input": input, "result": result }),
            text: result,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegreeOverflow { .. } | Error::ResourceLimit(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("plain JSON")
                ),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> f2sym::Result<Output> {
    let n = cli.max_degree;
    let poly = |s: &str| Poly::parse(s, n);
    let table = || {
        if n > MAX_VERIFY_DEGREE * 2 {
            return Err(Error::ResourceLimit(format!(
                "max degree {n} exceeds {}",
                MAX_VERIFY_DEGREE * 2
            )));
        }
        Ok(omega_table(n))
    };
    Ok(match &cli.command {
        Command::Omega { expr } => {
            Output::value("omega", expr, table()?.omega(&poly(expr)?)?.to_string())
        }
        Command::Dd { expr } => Output::value("dd", expr, table()?.dd(&poly(expr)?)?.to_string()),
        Command::Norm { expr } => {
            Output::value("norm", expr, table()?.norm(&poly(expr)?)?.to_string())
        }
        Command::StandardForm { expr } => Output::value(
            "standard-form",
            expr,
            standard_form(&poly(expr)?)?.to_string(),
        ),
        Command::ToSchur { expr } => {
            Output::value("to-schur", expr, to_schur_basis(&poly(expr)?)?.to_string())
        }
        Command::FromSchur { expr } => Output::value(
            "from-schur",
            expr,
            from_schur_basis(&SchurExpr::parse(expr, n)?).to_string(),
        ),
        Command::Mn { k, expr } => Output::value(
            "mn",
            expr,
            mn_multiply(*k, &SchurExpr::parse(expr, n)?)?.to_string(),
        ),
        Command::Dims { bound } => dims(n, bound.unwrap_or(n))?,
        Command::Verify { check } => verify(cli, check)?,
    })
}

fn dims(n: u32, bound: u32) -> f2sym::Result<Output> {
    if bound > n {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} exceeds max degree {n}"
        )));
    }
    if bound > MAX_VERIFY_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "dimension tables support degrees up to {MAX_VERIFY_DEGREE}, got {bound}"
        )));
    }
    let fam = GradedIdealFamily::build(bound, 1);
    let mut rows = Vec::new();
    let mut text = format!(
        "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}",
        "degree", "R", "S", "I", "S/I", "sc", "p"
    );
    for slice in fam.slices() {
        let d = slice.degree();
        let (r, s, i) = (slice.basis.len(), slice.s.dim(), slice.i.dim());
        let (sc, p) = (count_self_conjugate(d), partition_count(d));
        text.push_str(&format!(
            "\n{d:>6} {r:>6} {s:>6} {i:>6} {:>6} {sc:>6} {p:>6}",
            s - i
        ));
        rows.push(
            json!({ "degree": d, "r": r, "s": s, "i": i, "s_mod_i": s - i, "sc": sc, "p": p }),
        );
    }
    Ok(Output {
        code: 0,
        text,
        json: json!({ "schema": SCHEMA, "rows": rows }),
    })
}

fn verify(cli: &Cli, name: &str) -> f2sym::Result<Output> {
    let checks: Vec<Check> = if name == "all" {
        Check::ALL.to_vec()
    } else {
        vec![name.parse()?]
    };
    let mut config = VerifyConfig::new(cli.max_degree);
    if let Some(p) = cli.presentation_degree {
        config.presentation_degree = p;
    }
    let verifier = Verifier::new(config)?;
    let reports = checks
        .into_iter()
        .map(|c| verifier.run(c))
        .collect::<f2sym::Result<Vec<_>>>()?;
    let passed = reports.iter().all(CheckReport::passed);
    let text = reports.iter().map(render).collect::<Vec<_>>().join("\n");
    Ok(Output {
        code: if passed { 0 } else { 1 },
        text,
        json: json!({
            "schema": SCHEMA,
            "max_degree": config.max_degree,
            "presentation_degree": config.presentation_degree,
            "status": if passed { "pass" } else { "fail" },
            "reports": serde_json::to_value(&reports).expect("plain data"),
        }),
    })
}

fn render(report: &CheckReport) -> String {
    let degrees = report.degrees.iter().map(|r| r.degree);
    let (lo, hi) = (
        degrees.clone().min().unwrap_or(0),
        degrees.max().unwrap_or(0),
    );
    match report.status {
        Status::Pass => format!("PASS {} (degrees {lo}..={hi})", report.check),
        Status::Fail => {
            let mut out = format!("FAIL {}", report.check);
            for r in report.failures() {
                let witness = r.witness.as_deref().unwrap_or("no witness");
                out.push_str(&format!("\n  degree {}: {witness}", r.degree));
            }
            out
        }
        Status::Evidence => {
            let holding: Vec<String> = report
                .degrees
                .iter()
                .map(|r| format!("{}:{}", r.degree, if r.pass { "holds" } else { "fails" }))
                .collect();
            format!(
                "EVIDENCE {} ({}) {}",
                report.check,
                report.note.as_deref().unwrap_or(""),
                holding.join(" ")
            )
        }
    }
}
