//! Command-line front end for the `monodigraph` library.

pub mod error;
pub mod explore;
pub mod ftable;
pub mod scan;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use monodigraph::field::DEFAULT_FIELD_CAP;
use monodigraph::waring::{self, Sign};
use monodigraph::walks::{self, WalkCertificate};
use monodigraph::{arith, curves, Diameter, Digraph, Elem, Field, Vertex};
use serde::Serialize;

pub use error::{CliError, CliResult};

use verify::{Claim, Ranges, Verifier};

pub const DIAMETER_CAP: u64 = 343;
pub const SCAN_CAP: u64 = 128;
pub const CURVE_CAP: u64 = 1024;

#[derive(Parser, Debug)]
#[command(name = "monodigraph", version, about = "Diameters of monomial digraphs D(q; m, n)")]
pub struct Cli {
    /// Output format; CSV applies to scan tables only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Override the field-size cap of the command.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Field modulus coefficients c0,c1,...,ce (monic, irreducible).
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Auto,
    Gcd,
    #[value(name = "2p1")]
    TwoPMinus1,
    #[value(name = "2p2")]
    TwoPMinus2,
    #[value(name = "13")]
    Thirteen,
    #[value(name = "9")]
    Nine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Strong connectivity and exact diameter of one digraph.
    Diameter {
        #[arg(long, required_unless_present = "table")]
        q: Option<u64>,
        #[arg(long, requires = "q")]
        m: Option<u32>,
        #[arg(long, requires = "q")]
        n: Option<u32>,
        /// f-table file describing D(q; f) instead of (q, m, n).
        #[arg(long, conflicts_with_all = ["q", "m", "n"])]
        table: Option<PathBuf>,
    },
    /// Diameters of D(q; m, n) for all 1 <= m <= n <= q-1.
    Scan {
        #[arg(long)]
        q: u64,
        /// Only pairs with n <= MAX_N.
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Waring numbers gamma(r, q) and delta(r, q) with bound checks.
    Waring {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: u64,
        /// Also print a shortest signed representation of every element.
        #[arg(long)]
        delta: bool,
    },
    /// Exhaustively check a diameter claim; CLAIM is an id or `all`.
    Verify {
        claim: String,
        #[arg(long)]
        qmin: Option<u64>,
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long)]
        pmax: Option<u64>,
        /// Desk-scale default ranges.
        #[arg(long)]
        small: bool,
        /// Print failing points only.
        #[arg(long)]
        failures_only: bool,
    },
    /// Observational scans for open problems 1, 2 and 3.
    Explore {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        problem: u8,
        #[arg(long)]
        qmin: Option<u64>,
        #[arg(long, alias = "pmax")]
        qmax: Option<u64>,
    },
    /// A certified walk between two vertices.
    Walk {
        #[arg(long, alias = "p")]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Start vertex `a,b`.
        #[arg(long, value_parser = parse_vertex)]
        from: Vertex,
        /// End vertex `u,v`.
        #[arg(long, value_parser = parse_vertex)]
        to: Vertex,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Point counts of a x^n - x y^n + c = 0 and the Hasse-Weil lower bound.
    Curve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        /// Check every a, c != 0 (the default without --a/--c).
        #[arg(long, conflicts_with_all = ["a", "c"])]
        all: bool,
        #[arg(long, requires = "c")]
        a: Option<u32>,
        #[arg(long, requires = "a")]
        c: Option<u32>,
    },
}

fn parse_vertex(s: &str) -> Result<Vertex, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Vertex::new(parse(a)?, parse(b)?))
}

/// Builds `GF(q)`, honoring `--modulus` and the size cap.
pub fn make_field(q: u64, modulus: Option<&[u32]>, cap: u64) -> CliResult<Field> {
    let (p, e) = arith::prime_power(q).ok_or_else(|| CliError::BadInput(format!("{q} is not a prime power")))?;
    if q > cap {
        return Err(CliError::Cap(format!("q = {q} exceeds the cap {cap} (raise it with --cap)")));
    }
    let field = match modulus {
        Some(c) => Field::with_modulus(p, e, c)?,
        None => Field::with_cap(p, e, cap.max(DEFAULT_FIELD_CAP))?,
    };
    Ok(field)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{s}")?;
    Ok(())
}

fn write_json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let s = serde_json::to_string(value).expect("serializable");
    writeln!(out, "{s}")?;
    Ok(())
}

#[derive(Serialize)]
struct DiameterOutput {
    q: u32,
    m: Option<u32>,
    n: Option<u32>,
    strong: bool,
    diameter: Diameter,
    representatives_used: usize,
}

#[derive(Serialize)]
struct SignedRepresentation {
    element: Elem,
    terms: Vec<(Sign, Elem)>,
}

#[derive(Serialize)]
struct WaringOutput {
    #[serde(flatten)]
    result: waring::WaringResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    signed_representations: Option<Vec<SignedRepresentation>>,
}

#[derive(Serialize)]
struct WalkOutput {
    strategy: &'static str,
    #[serde(flatten)]
    certificate: WalkCertificate,
}

#[derive(Serialize)]
struct CurveOutput {
    #[serde(flatten)]
    count: curves::CurveCount,
    nonsingular: bool,
    lower_bound_holds: bool,
    margin: i64,
}

#[derive(Serialize)]
struct CurveSweep {
    #[serde(flatten)]
    verdict: curves::HasseWeilVerdict,
    diam3_threshold: u64,
}

/// Executes one parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    if let Some(t) = cli.threads {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan { .. }) {
        return Err(CliError::BadInput("CSV output is only available for scan".into()));
    }
    let modulus = cli.modulus.as_deref();
    match &cli.command {
        Command::Diameter { q, m, n, table } => {
            let cap = cli.cap.unwrap_or(DIAMETER_CAP);
            let (g, q) = match table {
                Some(path) => {
                    let (q, t) = ftable::parse(&std::fs::read_to_string(path)?)?;
                    (Digraph::general(make_field(q, modulus, cap)?, t)?, q)
                }
                None => {
                    let q = q.expect("clap enforces --q");
                    let (Some(m), Some(n)) = (m, n) else {
                        return Err(CliError::BadInput("--m and --n are required with --q".into()));
                    };
                    (Digraph::monomial(make_field(q, modulus, cap)?, *m, *n)?, q)
                }
            };
            let strong = match g.is_strong_by_criterion() {
                Ok(s) => s,
                Err(_) => g.tarjan_scc().is_strong(),
            };
            let report = if strong {
                g.diameter_report()
            } else {
                monodigraph::digraph::DiameterReport {
                    diameter: Diameter::Infinite,
                    sources: 0,
                }
            };
            write_json(
                out,
                &DiameterOutput {
                    q: q as u32,
                    m: *m,
                    n: *n,
                    strong,
                    diameter: report.diameter,
                    representatives_used: report.sources,
                },
            )
        }
        Command::Scan { q, max_n } => {
            let field = make_field(*q, modulus, cli.cap.unwrap_or(SCAN_CAP))?;
            let report = scan::scan(&field, *max_n)?;
            match cli.format {
                Format::Json => write_json(out, &report),
                Format::Csv => {
                    out.write_all(report.to_csv().as_bytes())?;
                    Ok(())
                }
            }
        }
        Command::Waring { r, q, delta } => {
            let field = make_field(*q, modulus, cli.cap.unwrap_or(DEFAULT_FIELD_CAP))?;
            let result = waring::waring(*r, &field)?;
            let signed_representations = if *delta && result.exists {
                let mut reps = Vec::new();
                for a in field.elements() {
                    let terms = waring::signed_representation(a, *r, &field)?
                        .expect("every element is reachable when gamma exists");
                    reps.push(SignedRepresentation { element: a, terms });
                }
                Some(reps)
            } else {
                None
            };
            write_json(
                out,
                &WaringOutput {
                    result,
                    signed_representations,
                },
            )
        }
        Command::Verify {
            claim,
            qmin,
            qmax,
            pmax,
            small,
            failures_only,
        } => {
            let claims: Vec<Claim> = if claim == "all" {
                Claim::ALL.to_vec()
            } else {
                vec![Claim::parse(claim).ok_or_else(|| {
                    let ids: Vec<_> = Claim::ALL.iter().map(|c| c.id()).collect();
                    CliError::BadInput(format!("unknown claim `{claim}`; expected one of {} or all", ids.join(", ")))
                })?]
            };
            let ranges = Ranges {
                qmin: *qmin,
                qmax: *qmax,
                pmax: *pmax,
                small: *small,
            };
            let mut verifier = Verifier::new();
            let mut failures = 0;
            let mut io_error = None;
            for c in claims {
                let summary = verifier.run(c, &ranges, &mut |o| {
                    if !(*failures_only && o.pass) {
                        if let Err(e) = write_json_line(out, o) {
                            io_error.get_or_insert(e);
                        }
                    }
                })?;
                eprintln!(
                    "{}: {} points, {} failures",
                    summary.claim, summary.points, summary.failures
                );
                failures += summary.failures;
            }
            if let Some(e) = io_error {
                return Err(e);
            }
            if failures > 0 {
                return Err(CliError::VerificationFailed(format!("{failures} failing points")));
            }
            Ok(())
        }
        Command::Explore { problem, qmin, qmax } => {
            let mut v = Verifier::new();
            let lo = qmin.unwrap_or(2);
            let hi = qmax.unwrap_or(match problem {
                1 => 32,
                _ => 13,
            });
            if hi > cli.cap.unwrap_or(SCAN_CAP) {
                return Err(CliError::Cap(format!("range up to {hi} exceeds the scan cap")));
            }
            match problem {
                1 => explore::problem1(&mut v, lo, hi)?
                    .iter()
                    .try_for_each(|r| write_json_line(out, r)),
                2 => explore::problem2(&mut v, lo, hi)?
                    .iter()
                    .try_for_each(|r| write_json_line(out, r)),
                _ => explore::problem3(&mut v, lo, hi)?
                    .iter()
                    .try_for_each(|r| write_json_line(out, r)),
            }
        }
        Command::Walk {
            q,
            m,
            n,
            from,
            to,
            strategy,
        } => {
            let field = make_field(*q, modulus, cli.cap.unwrap_or(DIAMETER_CAP))?;
            let g = Digraph::monomial(field, *m, *n)?;
            let strategy = match strategy {
                Strategy::Auto => choose_strategy(&g),
                s => *s,
            };
            let (name, certificate) = match strategy {
                Strategy::Gcd => ("gcd", walks::construct_walk_gcd(&g, *from, *to)?),
                Strategy::TwoPMinus1 => ("2p1", walks::construct_walk_2p_minus_1(&g, *from, *to)?),
                Strategy::TwoPMinus2 => ("2p2", walks::construct_walk_2p_minus_2(&g, *from, *to)?),
                Strategy::Thirteen => ("13", walks::construct_walk_13(&g, *from, *to)?),
                Strategy::Nine => ("9", walks::construct_walk_9(&g, *from, *to)?),
                Strategy::Auto => {
                    return Err(CliError::Hypothesis(
                        "no walk construction applies to these parameters".into(),
                    ))
                }
            };
            write_json(
                out,
                &WalkOutput {
                    strategy: name,
                    certificate,
                },
            )
        }
        Command::Curve { q, n, all, a, c } => {
            let field = make_field(*q, modulus, cli.cap.unwrap_or(CURVE_CAP))?;
            if *n == 0 || *n >= field.q() {
                return Err(CliError::BadInput(format!("n must lie in 1..={}", field.q() - 1)));
            }
            match (a, c, all) {
                (Some(a), Some(c), false) => {
                    let (a, c) = (field.elem(*a)?, field.elem(*c)?);
                    let nonsingular = curves::check_nonsingular(a, c, *n, &field)?;
                    let count = curves::count_affine(a, c, *n, &field);
                    write_json(
                        out,
                        &CurveOutput {
                            lower_bound_holds: count.satisfies_hasse_weil(),
                            margin: count.margin(),
                            count,
                            nonsingular,
                        },
                    )
                }
                _ => {
                    let verdict = curves::hasse_weil_lower_bound(*n, &field)?;
                    let pass = verdict.all_pass;
                    write_json(
                        out,
                        &CurveSweep {
                            verdict,
                            diam3_threshold: curves::diam3_threshold(*n),
                        },
                    )?;
                    if !pass {
                        return Err(CliError::VerificationFailed("Hasse-Weil lower bound violated".into()));
                    }
                    Ok(())
                }
            }
        }
    }
}

/// The shortest applicable construction: gcd (3 or 4), then the prime-field
/// ladders, then the 9- and 13-walks.
fn choose_strategy(g: &Digraph) -> Strategy {
    let (m, n) = g.exponents().expect("monomial");
    let f = g.field();
    let order = f.q() as u64 - 1;
    let big = |r: u32| (f.q() as u128) > ((r as u128) - 1).pow(4);
    if arith::gcd(m as u64, order) == 1 || arith::gcd(n as u64, order) == 1 {
        Strategy::Gcd
    } else if m == n && big(n) {
        Strategy::Nine
    } else if f.is_prime_field() && (m, n) != (f.p() - 1, f.p() - 1) {
        Strategy::TwoPMinus2
    } else if f.is_prime_field() {
        Strategy::TwoPMinus1
    } else if big(m) {
        Strategy::Thirteen
    } else {
        Strategy::Auto
    }
}
