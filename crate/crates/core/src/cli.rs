//! Command-line front end.
//!
//! Exit codes: 0 when every applicable proven claim passes (conjecture
//! failures are flagged on stderr but do not fail the run), 1 on any proven
//! claim failure or oracle/fast disagreement, 2 on usage or configuration
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::claims::{
    boundary_anomalies, integrality_check, verify_batch, ClaimId, EvalPath, PathSelector, Status,
};
use crate::error::Error;
use crate::exact::fraction_string;
use crate::padic::MAX_PRIME;
use crate::report::{
    render, serialize_report, AnomalyRecord, CertificateRecord, EulerRecord, Format,
    IdentityRecord, IntegralityRecord,
};
use crate::sequences::{euler_exact, euler_mod_p, primes_in};
use crate::wz::{check_certificate, check_pair_one_identity, check_pair_two_identities, WzPairId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Upper end of the prime range the sieve accepts.
const MAX_SIEVE: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "supercong",
    version,
    about = "Exact verification of supercongruences and WZ certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// json, csv or table
    #[arg(long, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check registered claims over a prime range
    Verify {
        /// Comma-separated claim ids, or `all`
        #[arg(long)]
        claims: String,
        /// Inclusive range `lo..hi` (or a single number)
        #[arg(long)]
        primes: String,
        /// oracle, fast, both, or auto (both up to 200, fast above)
        #[arg(long, default_value = "auto")]
        path: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Record wall-clock time per check (makes output non-reproducible)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a WZ certificate on a grid
    Wz {
        /// 1 or 2; both pairs when omitted
        #[arg(long)]
        pair: Option<WzPairId>,
        #[arg(long)]
        nmax: i64,
        #[arg(long)]
        kmax: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the telescoped series identities for every index up to `mmax`
    Identities {
        #[arg(long)]
        mmax: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the integrality conjecture for 2 <= n <= nmax
    Integrality {
        #[arg(long)]
        nmax: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print Euler numbers, exactly or modulo a prime
    Euler {
        #[arg(long)]
        upto: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate every congruence at p = 3 regardless of its domain
    Anomalies {
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn parse_claims(spec: &str) -> Result<Vec<ClaimId>, Usage> {
    if spec.trim() == "all" {
        return Ok(ClaimId::ALL.to_vec());
    }
    let mut ids = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id: ClaimId = name.parse()?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    Ok(ids)
}

fn parse_range(spec: &str) -> Result<(u64, u64), Usage> {
    let bad = || Usage(format!("invalid prime range {spec:?}; expected lo..hi"));
    let (lo, hi) = match spec.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (spec.trim(), spec.trim()),
    };
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Usage(format!("prime range {spec:?} has lo > hi")));
    }
    if hi > MAX_SIEVE {
        return Err(Usage(format!(
            "prime range upper bound {hi} exceeds {MAX_SIEVE}"
        )));
    }
    Ok((lo, hi))
}

fn parse_path(spec: &str) -> Result<PathSelector, Usage> {
    if spec == "auto" {
        return Ok(PathSelector::Auto);
    }
    spec.parse::<EvalPath>()
        .map(PathSelector::Fixed)
        .map_err(|e| Usage(format!("{e}; expected oracle, fast, both or auto")))
}

struct Outcome {
    bytes: Vec<u8>,
    code: i32,
    notes: Vec<String>,
}

fn execute(command: Command) -> Result<(Outcome, OutputArgs), Usage> {
    match command {
        Command::Verify {
            claims,
            primes,
            path,
            jobs,
            timings,
            output,
        } => {
            let ids = parse_claims(&claims)?;
            let (lo, hi) = parse_range(&primes)?;
            let path = parse_path(&path)?;
            if jobs == 0 {
                return Err(Usage("--jobs must be at least 1".into()));
            }
            let primes = primes_in(lo, hi);
            if let Some(&p) = primes
                .iter()
                .find(|&&p| p > MAX_PRIME && path.for_prime(p) != EvalPath::Oracle)
            {
                return Err(Usage(format!(
                    "prime {p} exceeds {MAX_PRIME}, the largest the fast path supports"
                )));
            }
            let mut notes = Vec::new();
            let reports = match verify_batch(&ids, &primes, path, jobs) {
                Ok(r) => r,
                // a path mismatch is a bug sentinel, not a claim failure
                Err(e) => {
                    return Ok((
                        Outcome {
                            bytes: Vec::new(),
                            code: EXIT_FAILURE,
                            notes: vec![format!("error: {e}")],
                        },
                        output,
                    ));
                }
            };
            let mut code = EXIT_OK;
            for r in &reports {
                if r.status == Status::Fail {
                    if r.conjecture {
                        notes.push(format!("conjecture {} fails at p = {}", r.claim_id, r.p));
                    } else {
                        notes.push(format!("FAIL {} at p = {}", r.claim_id, r.p));
                        code = EXIT_FAILURE;
                    }
                }
            }
            let bytes = serialize_report(&reports, output.format, timings);
            Ok((Outcome { bytes, code, notes }, output))
        }
        Command::Wz {
            pair,
            nmax,
            kmax,
            output,
        } => {
            if nmax < 1 || kmax < 1 {
                return Err(Usage("--nmax and --kmax must be at least 1".into()));
            }
            let pairs = pair.map_or(WzPairId::ALL.to_vec(), |p| vec![p]);
            let records: Vec<CertificateRecord> = pairs
                .into_iter()
                .map(|pair| {
                    let grid = check_certificate(pair, nmax, kmax);
                    CertificateRecord {
                        pair: pair.to_string(),
                        n_max: nmax,
                        k_max: kmax,
                        cells: ((nmax + 1) * kmax) as u64,
                        failures: grid.failures.len(),
                        first_failure: grid.failures.first().map(|f| {
                            format!(
                                "{},{}: {} != {}",
                                f.n,
                                f.k,
                                fraction_string(&f.lhs),
                                fraction_string(&f.rhs)
                            )
                        }),
                        holds: grid.holds(),
                    }
                })
                .collect();
            let code = if records.iter().all(|r| r.holds) {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Ok((
                Outcome {
                    bytes: render(&records, output.format),
                    code,
                    notes: Vec::new(),
                },
                output,
            ))
        }
        Command::Identities { mmax, output } => {
            if mmax < 1 {
                return Err(Usage("--mmax must be at least 1".into()));
            }
            let mut records = Vec::new();
            for m in 1..=mmax {
                let c = check_pair_one_identity(m);
                records.push(IdentityRecord {
                    identity: "pair1_telescoped",
                    index: m,
                    lhs: fraction_string(&c.lhs),
                    rhs: fraction_string(&c.rhs),
                    rhs_alt: None,
                    holds: c.holds(),
                });
            }
            for n in 1..=mmax {
                let c = check_pair_two_identities(n);
                records.push(IdentityRecord {
                    identity: "pair2_telescoped",
                    index: n,
                    lhs: fraction_string(&c.lhs),
                    rhs: fraction_string(&c.rhs_direct),
                    rhs_alt: Some(fraction_string(&c.rhs_rearranged)),
                    holds: c.holds(),
                });
            }
            let code = if records.iter().all(|r| r.holds) {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Ok((
                Outcome {
                    bytes: render(&records, output.format),
                    code,
                    notes: Vec::new(),
                },
                output,
            ))
        }
        Command::Integrality { nmax, output } => {
            if nmax < 2 {
                return Err(Usage("--nmax must be at least 2".into()));
            }
            let reports: Vec<_> = (2..=nmax).map(integrality_check).collect();
            let notes = reports
                .iter()
                .filter(|r| !r.conjecture_consistent)
                .map(|r| {
                    format!(
                        "conjecture: unexpected denominator {} at n = {}",
                        r.denominator, r.n
                    )
                })
                .collect();
            let records: Vec<IntegralityRecord> = reports.iter().map(Into::into).collect();
            Ok((
                Outcome {
                    bytes: render(&records, output.format),
                    code: EXIT_OK,
                    notes,
                },
                output,
            ))
        }
        Command::Euler {
            upto,
            modulus,
            output,
        } => {
            let records: Vec<EulerRecord> = match modulus {
                None => euler_exact(upto)
                    .into_iter()
                    .enumerate()
                    .map(|(n, e)| EulerRecord {
                        n,
                        value: e.to_string(),
                        modulus: None,
                    })
                    .collect(),
                Some(p) => {
                    if !crate::claims::Domain::OddPrime.contains(p) {
                        return Err(Usage(format!("--mod {p} is not an odd prime")));
                    }
                    if upto as u64 >= p {
                        return Err(Usage(format!("--upto must be below the modulus {p}")));
                    }
                    euler_mod_p(p, upto)?
                        .into_iter()
                        .enumerate()
                        .map(|(n, e)| EulerRecord {
                            n,
                            value: e.to_string(),
                            modulus: Some(p),
                        })
                        .collect()
                }
            };
            Ok((
                Outcome {
                    bytes: render(&records, output.format),
                    code: EXIT_OK,
                    notes: Vec::new(),
                },
                output,
            ))
        }
        Command::Anomalies { output } => {
            let records: Vec<AnomalyRecord> = boundary_anomalies().iter().map(Into::into).collect();
            Ok((
                Outcome {
                    bytes: render(&records, output.format),
                    code: EXIT_OK,
                    notes: Vec::new(),
                },
                output,
            ))
        }
    }
}

/// Runs the CLI with explicit output streams.
pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let (outcome, output) = match execute(cli.command) {
        Ok(x) => x,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    let written = match &output.out {
        Some(path) => std::fs::write(path, &outcome.bytes)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(&outcome.bytes)
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    outcome.code
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}
