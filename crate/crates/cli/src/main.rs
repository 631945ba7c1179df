//! `chargraph` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification verb found a failure, 2 usage or
//! input error.

mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use chargraph::arith;
use chargraph::classify::{self, ClassifyError};
use chargraph::degrees;
use chargraph::shapes::{eval_shape, parse_shape};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const SEED_VAR: &str = "CHARGRAPH_SEED";

#[derive(Debug, Parser)]
#[command(name = "chargraph", version, about = "Character degree graphs of finite groups")]
struct Cli {
    /// Output format; each verb has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prime factorization of n.
    Factor { n: u64 },
    /// The set of primes dividing n.
    Pi { n: u64 },
    /// Smallest primitive prime divisor of base^n - 1.
    Zsigmondy { base: u64, n: u32 },
    /// Character graph of PSL2(q).
    #[command(name = "psl2-graph")]
    Psl2Graph { q: u64 },
    /// Parse a shape expression such as "K3^c * C4" and print its graph.
    #[command(name = "parse-shape")]
    ParseShape { expr: String },
    /// Test two graphs for isomorphism. Each argument is a JSON file, inline
    /// JSON, '-' for stdin, or a shape expression.
    Iso { first: String, second: String },
    /// Classify PSL2(2^f) by |π(2^f - 1)| and |π(2^f + 1)|.
    #[command(name = "classify-f")]
    ClassifyF { f: u32 },
    /// Build PSL2(2^f) × R and verify the expected character graph.
    #[command(name = "verify-main")]
    VerifyMain {
        #[arg(long)]
        f: u32,
        /// JSON array of degree sets for the radical factors. Defaults to a
        /// synthetic radical.
        #[arg(long)]
        radical: Option<String>,
    },
    /// Print the synthetic radical used when verify-main gets no --radical.
    #[command(name = "synthetic-radical")]
    SyntheticRadical { f: u32 },
    /// Run an enumeration scanner.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        /// Upper bound: f for interest/evenfive/cases, q for oddfour.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Solvable-group plausibility tests on the graph of a degree set.
    #[command(name = "check-solvable")]
    CheckSolvable { cd_file: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Interest,
    Evenfive,
    Oddfour,
    Cases,
}

enum Failure {
    /// Malformed input or arguments.
    Usage(anyhow::Error),
    /// Well-formed input that failed verification.
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Ok(raw) = std::env::var(SEED_VAR) {
        match input::parse_seed(&raw) {
            Some(seed) => arith::set_rho_seed(seed),
            None => {
                eprintln!("error: {SEED_VAR}={raw:?} is not an unsigned 64-bit integer");
                return ExitCode::from(2);
            }
        }
    }

    let (out, code) = match run(&cli) {
        Ok(out) => (out, 0),
        Err(Failure::Verification(out)) => (out, 1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Factor { n } => {
            let f = arith::factorize(*n).map_err(anyhow::Error::from)?;
            Ok(match format.unwrap_or(Format::Table) {
                Format::Json => json(&f),
                _ => format!("{f}\n"),
            })
        }
        Command::Pi { n } => {
            let primes = arith::prime_divisors(*n).map_err(anyhow::Error::from)?;
            Ok(match format.unwrap_or(Format::Table) {
                Format::Json => json(&serde_json::json!({ "n": n, "primes": primes })),
                _ => format!("π({n}) = {}\n", render::prime_set(&primes)),
            })
        }
        Command::Zsigmondy { base, n } => {
            let prime = arith::zsigmondy(*base, *n).map_err(anyhow::Error::from)?;
            Ok(match format.unwrap_or(Format::Table) {
                Format::Json => json(&serde_json::json!({ "base": base, "n": n, "prime": prime })),
                _ => match prime {
                    Some(p) => format!("{base}^{n} - 1: primitive prime divisor {p}\n"),
                    None => format!("{base}^{n} - 1: no primitive prime divisor (Zsigmondy exception)\n"),
                },
            })
        }
        Command::Psl2Graph { q } => {
            let g = degrees::graph_psl2(*q).map_err(anyhow::Error::from)?;
            Ok(render::graph(&g, format.unwrap_or(Format::Json), &format!("PSL2_{q}")))
        }
        Command::ParseShape { expr } => {
            let e = parse_shape(expr).map_err(|err| anyhow!("{err}\n  {expr}\n  {}^", " ".repeat(err.position)))?;
            let g = eval_shape(&e);
            Ok(match format {
                None => format!("{}\n{}", g.to_json(), g.to_dot("shape")),
                Some(Format::Table) => format!("{e}\n{}", render::graph_table(&g)),
                Some(f) => render::graph(&g, f, "shape"),
            })
        }
        Command::Iso { first, second } => {
            let a = input::load_graph(first)?;
            let b = input::load_graph(second)?;
            let mapping = a.isomorphism_to(&b).map_err(anyhow::Error::from)?;
            let out = match format.unwrap_or(Format::Table) {
                Format::Json => json(&serde_json::json!({
                    "isomorphic": mapping.is_some(),
                    "mapping": mapping.as_ref().map(|m| m.iter().map(|(a, b)| [*a, *b]).collect::<Vec<_>>()),
                })),
                _ => match &mapping {
                    Some(m) => format!("isomorphic: {}\n", render::mapping(m)),
                    None => "not isomorphic\n".to_string(),
                },
            };
            if mapping.is_some() {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::ClassifyF { f } => {
            let report = classify::classify_f(*f).map_err(anyhow::Error::from)?;
            Ok(match format.unwrap_or(Format::Table) {
                Format::Json => json(&report),
                Format::Dot => report.socle_graph.to_dot(&format!("PSL2_2_{f}")),
                Format::Table => render::case_report(&report),
            })
        }
        Command::VerifyMain { f, radical } => {
            let radical = match radical {
                Some(path) => input::load_radical(path)?,
                // no case: verify_main reports the validation failure itself
                None => match classify::synthetic_radical(*f) {
                    Err(ClassifyError::Validation(_)) => Vec::new(),
                    other => other.map_err(anyhow::Error::from)?,
                },
            };
            match classify::verify_main(*f, &radical) {
                Ok(report) => {
                    let out = match format.unwrap_or(Format::Table) {
                        Format::Json => json(&report),
                        Format::Dot => report.graph.as_ref().expect("verified report has a graph").to_dot("G"),
                        Format::Table => render::case_report(&report),
                    };
                    if report.verified {
                        Ok(out)
                    } else {
                        Err(Failure::Verification(out))
                    }
                }
                Err(ClassifyError::Validation(v)) => {
                    let out = match format.unwrap_or(Format::Table) {
                        Format::Json => json(&serde_json::json!({ "f": f, "verified": false, "validation": v })),
                        _ => format!("f = {f}: radical rejected: {v}\n"),
                    };
                    Err(Failure::Verification(out))
                }
                Err(e) => Err(Failure::Usage(e.into())),
            }
        }
        Command::SyntheticRadical { f } => {
            let radical = classify::synthetic_radical(*f).map_err(anyhow::Error::from)?;
            Ok(json(&radical))
        }
        Command::Scan { kind, max } => scan(*kind, *max, format.unwrap_or(Format::Table)),
        Command::CheckSolvable { cd_file } => {
            let cd = input::load_degree_set(cd_file)?;
            let check = classify::check_solvable(&cd).map_err(anyhow::Error::from)?;
            let out = match format.unwrap_or(Format::Table) {
                Format::Json => json(&serde_json::json!({
                    "degrees": cd.degrees(),
                    "graph": check.graph,
                    "palfy": check.palfy,
                    "solvable_shape": check.solvable_shape,
                    "plausible": check.plausible(),
                    "warning": check.vertex_bound_warning.map(|w| w.to_string()),
                })),
                Format::Dot => check.graph.to_dot("cd"),
                Format::Table => render::solvable_check(&check),
            };
            if check.plausible() {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn scan(kind: ScanKind, max: Option<u64>, format: Format) -> Outcome {
    let f_max = |default: u32| -> Result<u32, Failure> {
        let m = max.unwrap_or(u64::from(default));
        u32::try_from(m)
            .ok()
            .filter(|&m| m <= classify::MAX_F)
            .ok_or_else(|| Failure::Usage(anyhow!("--max {m} exceeds the cap of {}", classify::MAX_F)))
    };
    let (out, counterexamples) = match kind {
        ScanKind::Interest => {
            let hits = classify::scan_lemma_interest(f_max(40)?).context("scan failed")?;
            let bad = hits.iter().filter(|h| h.clause.is_none()).count();
            let out = match format {
                Format::Json => json(&hits),
                _ => render::interest_table(&hits),
            };
            (out, bad)
        }
        ScanKind::Evenfive => {
            let hits = classify::scan_lemma_evenfive(f_max(40)?).context("scan failed")?;
            let bad = hits.iter().filter(|h| !h.conforming).count();
            let out = match format {
                Format::Json => json(&hits),
                _ => render::evenfive_table(&hits),
            };
            (out, bad)
        }
        ScanKind::Oddfour => {
            let q_max = max.unwrap_or(10_000);
            if q_max > classify::MAX_ODD_Q {
                return Err(Failure::Usage(anyhow!("--max {q_max} exceeds the cap of {}", classify::MAX_ODD_Q)));
            }
            let hits = classify::scan_lemma_oddfour(q_max).context("scan failed")?;
            let bad = hits.iter().filter(|h| h.clause.is_none()).count();
            let out = match format {
                Format::Json => json(&hits),
                _ => render::oddfour_table(&hits),
            };
            (out, bad)
        }
        ScanKind::Cases => {
            let rows = classify::scan_cases(f_max(63)?).context("scan failed")?;
            let out = match format {
                Format::Json => json(&rows),
                _ => render::cases_table(&rows),
            };
            (out, 0)
        }
    };
    if counterexamples == 0 {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
