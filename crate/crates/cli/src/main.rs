//! `pcoherence`: command-line front end for the coherence engine.
//!
//! Exit codes: 0 on success, 2 when `check` finds the assessments
//! inconsistent, 64 for unreadable or malformed input, 65 for degree errors
//! and 70 for LP anomalies (including unbounded programs).

mod demo;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pcoherence::coherence::{
    check_consistency, classical_oracle_prevision, hierarchy, hierarchy_csv, lower_prevision,
    updated_lower_prevision_with, upper_prevision, AssessmentSet, LikelihoodPolicy,
    PrevisionResult, UpdateOutcome,
};
use pcoherence::json::{
    assessment_set_from_json, certificate_to_json, format_rational, moment_state_from_json,
    parse_rational, polynomial_from_json,
};
use pcoherence::kv_cone::Certificate;
use pcoherence::polynomial::to_f64;
use pcoherence::{Error, Polynomial, Rational};
use serde_json::{json, Value};

const EXIT_INCONSISTENT: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DEGREE: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;

pub(crate) fn fmt_rat(r: &Rational) -> String {
    format_rational(r)
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "pcoherence",
    version,
    about = "Exact coherence checks for polynomial gambles"
)]
struct Cli {
    /// Print a machine-readable JSON document on stdout; the summary goes to stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DegreeArg {
    /// Working degree d of the Bernstein hierarchy.
    #[arg(long, short = 'd')]
    degree: u32,
}

#[derive(Args)]
struct QueryArgs {
    /// Polynomial JSON for the gamble q.
    #[arg(long)]
    gamble: PathBuf,
    /// Assessment-set JSON; an empty set when omitted.
    #[arg(long)]
    gambles: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an assessment set avoids sure loss at degree d.
    Check {
        #[arg(long)]
        gambles: PathBuf,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Lower prevision of a gamble.
    Prevision {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Upper prevision of a gamble.
    Upper {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Lower previsions for a range of degrees, as CSV.
    Hierarchy {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        dmin: u32,
        #[arg(long)]
        dmax: u32,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Updated lower prevision of q given a likelihood.
    Update {
        #[command(flatten)]
        query: QueryArgs,
        /// Polynomial JSON for the likelihood.
        #[arg(long)]
        likelihood: PathBuf,
        #[command(flatten)]
        degree: DegreeArg,
        /// Accept any likelihood, not only subset sums of the partition of unity.
        #[arg(long)]
        any_likelihood: bool,
    },
    /// Check a moment state against the generator constraints.
    StateValidate {
        #[arg(long)]
        state: PathBuf,
        /// Also require a valid extension two degrees higher.
        #[arg(long)]
        strict: bool,
    },
    /// Expectation of a gamble under a moment state.
    StateExpect {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        gamble: PathBuf,
    },
    /// Bell-type violation on the built-in two-coin state.
    DemoBell {
        #[arg(long, default_value = "1/100", value_parser = rational_arg)]
        epsilon: Rational,
        #[arg(long, default_value = "1/50", value_parser = rational_arg)]
        grid_step: Rational,
    },
    /// Conditional previsions and marginals of the two-coin state.
    DemoSocks {
        #[arg(long, default_value = "1/100", value_parser = rational_arg)]
        epsilon: Rational,
    },
    /// Classical lower prevision over distributions on a simplex grid.
    Oracle {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_parser = rational_arg)]
        grid_step: Rational,
    },
}

/// What a command produced: a summary, an optional JSON document and a status.
struct Output {
    summary: String,
    json: Value,
    status: u8,
}

impl Output {
    fn ok(summary: String, json: Value) -> Self {
        Output {
            summary,
            json,
            status: 0,
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::DegreeTooLow { .. } | Error::IndexDegree { .. } => EXIT_DEGREE,
        Error::Unbounded
        | Error::LpAnomaly(_)
        | Error::CertificateMismatch(_)
        | Error::NoGridModel => EXIT_SOFTWARE,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> pcoherence::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_polynomial(path: &Path) -> pcoherence::Result<Polynomial> {
    polynomial_from_json(&read(path)?)
}

fn read_query(q: &QueryArgs) -> pcoherence::Result<(Polynomial, AssessmentSet)> {
    let gamble = read_polynomial(&q.gamble)?;
    let set = match &q.gambles {
        Some(p) => assessment_set_from_json(&read(p)?)?,
        None => AssessmentSet::empty(gamble.n_vars()),
    };
    Ok((gamble, set))
}

fn check_degree(d: u32) -> pcoherence::Result<()> {
    if d == 0 {
        return Err(Error::DegreeTooLow {
            required: 1,
            given: 0,
        });
    }
    Ok(())
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn certificate_value(c: &Certificate) -> Value {
    serde_json::from_str(&certificate_to_json(c)).expect("certificate JSON is valid")
}

fn prevision_output(kind: &str, r: &PrevisionResult) -> Output {
    let summary = format!(
        "{kind} prevision at degree {}: {} ({})\nlambda: [{}]\ncertificate terms: {}\n",
        r.degree_used,
        fmt_rat(&r.value),
        to_f64(&r.value),
        rationals(&r.lambda_weights).join(", "),
        r.certificate.weights.len()
    );
    let json = json!({
        "kind": kind,
        "degree": r.degree_used,
        "value": fmt_rat(&r.value),
        "value_float": to_f64(&r.value),
        "lambda": rationals(&r.lambda_weights),
        "certificate": certificate_value(&r.certificate),
    });
    Output::ok(summary, json)
}

fn run(cli: &Cli) -> pcoherence::Result<Output> {
    match &cli.command {
        Command::Check { gambles, degree } => {
            check_degree(degree.degree)?;
            let set = assessment_set_from_json(&read(gambles)?)?;
            let verdict = check_consistency(&set, degree.degree)?;
            let mut summary = format!(
                "assessments are {} at degree {}\n",
                if verdict.consistent {
                    "consistent"
                } else {
                    "inconsistent"
                },
                verdict.degree
            );
            let mut json = json!({ "consistent": verdict.consistent, "degree": verdict.degree });
            if let Some(w) = &verdict.witness {
                summary.push_str(&format!(
                    "witness: lambda = [{}], certificate terms: {}\n",
                    rationals(&w.lambda_weights).join(", "),
                    w.certificate.weights.len()
                ));
                json["witness"] = json!({
                    "lambda": rationals(&w.lambda_weights),
                    "certificate": certificate_value(&w.certificate),
                });
            }
            Ok(Output {
                summary,
                json,
                status: if verdict.consistent {
                    0
                } else {
                    EXIT_INCONSISTENT
                },
            })
        }
        Command::Prevision { query, degree } => {
            check_degree(degree.degree)?;
            let (q, set) = read_query(query)?;
            Ok(prevision_output(
                "lower",
                &lower_prevision(&q, &set, degree.degree)?,
            ))
        }
        Command::Upper { query, degree } => {
            check_degree(degree.degree)?;
            let (q, set) = read_query(query)?;
            Ok(prevision_output(
                "upper",
                &upper_prevision(&q, &set, degree.degree)?,
            ))
        }
        Command::Hierarchy {
            query,
            dmin,
            dmax,
            out,
        } => {
            check_degree(*dmin)?;
            let (q, set) = read_query(query)?;
            let rows = hierarchy(&q, &set, *dmin, *dmax)?;
            let csv = hierarchy_csv(&rows);
            let summary = match out {
                Some(path) => {
                    fs::write(path, &csv)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    format!("wrote {} rows to {}\n", rows.len(), path.display())
                }
                None => csv,
            };
            let json = json!({
                "rows": rows.iter().map(|(d, v)| json!({
                    "d": d,
                    "value": fmt_rat(v),
                    "value_float": to_f64(v),
                })).collect::<Vec<_>>()
            });
            Ok(Output::ok(summary, json))
        }
        Command::Update {
            query,
            likelihood,
            degree,
            any_likelihood,
        } => {
            check_degree(degree.degree)?;
            let (q, set) = read_query(query)?;
            let pi = read_polynomial(likelihood)?;
            let policy = if *any_likelihood {
                LikelihoodPolicy::Any
            } else {
                LikelihoodPolicy::SubsetSum
            };
            match updated_lower_prevision_with(&q, &pi, &set, degree.degree, policy)? {
                UpdateOutcome::Bounded(r) => Ok(prevision_output("updated lower", &r)),
                UpdateOutcome::Vacuous { degree_used } => Ok(Output::ok(
                    format!("updated lower prevision at degree {degree_used}: vacuous\n"),
                    json!({ "kind": "updated lower", "degree": degree_used, "vacuous": true }),
                )),
            }
        }
        Command::StateValidate { state, strict } => {
            let state = moment_state_from_json(&read(state)?)?;
            let report = state.validity();
            let mut valid = report.is_valid();
            let mut summary = String::new();
            for (alpha, v) in &report.violations {
                summary.push_str(&format!("violated generator {alpha}: {}\n", fmt_rat(v)));
            }
            let mut json = json!({
                "unit_preserved": report.unit_preserved,
                "violations": report.violations.iter().map(|(a, v)| json!({
                    "index": a.as_slice(),
                    "value": fmt_rat(v),
                })).collect::<Vec<_>>(),
            });
            if *strict {
                let extends = valid && state.extends_to(state.degree() + 2)?;
                summary.push_str(&format!(
                    "extends to degree {}: {extends}\n",
                    state.degree() + 2
                ));
                json["extends"] = json!(extends);
                valid = extends;
            }
            summary.push_str(&format!(
                "state is {}\n",
                if valid { "valid" } else { "invalid" }
            ));
            json["valid"] = json!(valid);
            Ok(Output::ok(summary, json))
        }
        Command::StateExpect { state, gamble } => {
            let state = moment_state_from_json(&read(state)?)?;
            let q = read_polynomial(gamble)?;
            let v = state.expectation(&q)?;
            Ok(Output::ok(
                format!("expectation: {} ({})\n", fmt_rat(&v), to_f64(&v)),
                json!({ "value": fmt_rat(&v), "value_float": to_f64(&v) }),
            ))
        }
        Command::DemoBell { epsilon, grid_step } => {
            let report = demo::demo_bell(epsilon, grid_step)?;
            Ok(Output::ok(report.summary(), report.to_json()))
        }
        Command::DemoSocks { epsilon } => {
            let report = demo::demo_socks(epsilon)?;
            Ok(Output::ok(report.summary(), report.to_json()))
        }
        Command::Oracle { query, grid_step } => {
            let (q, set) = read_query(query)?;
            let r = classical_oracle_prevision(&q, &set, grid_step)?;
            let argmin = rationals(r.argmin());
            Ok(Output::ok(
                format!(
                    "grid lower prevision (step {}): {} ({}) at ({})\n",
                    fmt_rat(grid_step),
                    fmt_rat(&r.value),
                    to_f64(&r.value),
                    argmin.join(", ")
                ),
                json!({
                    "value": fmt_rat(&r.value),
                    "value_float": to_f64(&r.value),
                    "argmin": argmin,
                    "atoms": r.atoms.iter().map(|(w, p)| json!({
                        "weight": fmt_rat(w),
                        "point": rationals(p),
                    })).collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                eprint!("{}", out.summary);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                );
            } else {
                print!("{}", out.summary);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
