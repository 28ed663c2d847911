//! Command-line front end: every library operation and verification suite,
//! with JSON on stdout and diagnostics on stderr.
//!
//! Exit codes: 0 = success / all checks pass, 1 = a violation or finding
//! was discovered (witnesses are in the JSON), 2 = usage or input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibpart::delta::DeltaVector;
use fibpart::harness::{self, HarnessOptions, Theorem1Mode, DEFAULT_WITNESS_CAP};
use fibpart::intpoly::IntPoly;
use fibpart::{cyclo, fibparts, series};

#[derive(Parser)]
#[command(name = "fibpart")]
#[command(version)]
#[command(about = "Exact Fibonacci-partition statistics, determinant polynomials, \
and residue-class verification sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the partition-count polynomial of n (coefficient h = number
    /// of partitions into h distinct Fibonacci parts)
    Phi {
        n: u64,
        /// Restrict parts to Fibonacci indices a..=b (syntax a:b)
        #[arg(long, value_parser = parse_window)]
        window: Option<(u32, u32)>,
    },

    /// Print the signed tridiagonal determinant polynomial of a vector
    /// (comma-separated entries; "" is the empty vector)
    Delta { vector: String },

    /// Map a polynomial into K_d[T] by summing coefficients per exponent
    /// residue class
    Reduce {
        /// Vector whose determinant polynomial is reduced
        vector: Option<String>,
        /// Reduce this polynomial instead (textual form, e.g. "1+t^2-t^5")
        #[arg(long)]
        poly: Option<String>,
        /// Ring modulus
        #[arg(long, default_value_t = 3)]
        d: usize,
    },

    /// Test whether a polynomial's K_3 image is special; exits 1 when it
    /// is not
    Special {
        #[arg(long)]
        poly: String,
    },

    /// Print the S-value of a vector: its determinant's K_3 image times
    /// T - 1
    S { vector: String },

    /// Print the partition class counts of n by number of parts mod d
    Rcounts {
        n: u64,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Restrict parts to Fibonacci indices a..=b (syntax a:b)
        #[arg(long, value_parser = parse_window)]
        window: Option<(u32, u32)>,
        /// Emit CSV (header plus one row) instead of JSON
        #[arg(long)]
        csv: bool,
    },

    /// Print the coefficients of the signed product over all Fibonacci
    /// parts, truncated past n
    Chi {
        #[arg(long)]
        upto: u64,
        /// Emit n,coeff CSV instead of a JSON array
        #[arg(long)]
        csv: bool,
    },

    /// Expand the signed product over one part window (syntax a:b) and
    /// report its largest coefficient magnitude; exits 1 if any
    /// coefficient leaves {-1, 0, 1}
    Chiwindow { window: String },

    /// Run a verification suite and print its report; exits 1 if the
    /// sweep found violations
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },

    /// Exploratory sweeps that report extremal statistics rather than
    /// pass/fail checks
    Explore {
        #[command(subcommand)]
        target: Explore,
    },
}

#[derive(Args)]
struct Common {
    /// Worker threads for the sweep (default: all available cores)
    #[arg(long)]
    workers: Option<usize>,

    /// Seed for randomized sweeps; recorded in the report
    #[arg(long)]
    seed: Option<u64>,

    /// Maximum witnesses kept in the report
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    witness_cap: usize,

    /// Omit the duration field so repeat runs are byte-identical
    #[arg(long)]
    no_timing: bool,
}

impl Common {
    fn options(&self) -> HarnessOptions {
        let defaults = HarnessOptions::default();
        HarnessOptions {
            workers: self.workers,
            seed: self.seed.unwrap_or(defaults.seed),
            witness_cap: self.witness_cap,
            record_timing: !self.no_timing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepMode {
    /// Every vector with entries in {0,1,2} up to the length cap
    Exhaustive,
    /// Seeded random vectors up to the length and entry bounds
    Random,
}

#[derive(Subcommand)]
enum Suite {
    /// Determinants of {0,1,2}-vectors are 3-special with S-value in M[T]
    Theorem1 {
        #[arg(long, value_enum, default_value_t = SweepMode::Exhaustive)]
        mode: SweepMode,
        /// Longest vector length swept
        #[arg(long, default_value_t = 9)]
        max_m: usize,
        /// Largest entry drawn in random mode
        #[arg(long, default_value_t = 30)]
        entry_bound: u32,
        /// Vectors drawn in random mode
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },

    /// Reducing a vector's entries mod 3 shifts its determinant's K_3
    /// image by an integer multiple of 1 + T + T^2
    Lemma4 {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[arg(long, default_value_t = 30)]
        entry_bound: u32,
        #[command(flatten)]
        common: Common,
    },

    /// Partition class counts mod 3 differ pairwise by at most 1 and two
    /// of them always coincide
    Theorem2 {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 100_000)]
        to: u64,
        #[command(flatten)]
        common: Common,
    },

    /// The mod-3 spread and coincidence conditions hold for every part
    /// window a..=b
    Hypothesis1 {
        #[arg(long, default_value_t = 12)]
        a_max: u32,
        #[arg(long, default_value_t = 12)]
        b_max: u32,
        #[command(flatten)]
        common: Common,
    },

    /// Some two partition class counts mod d coincide at every n
    Hypothesis3 {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        upto: u64,
        #[command(flatten)]
        common: Common,
    },

    /// Cross-check the fast routines against independent implementations
    Oracles {
        /// Largest n for the partition and series sweeps
        #[arg(long, default_value_t = 500)]
        n_cap: u64,
        /// Longest vector for the determinant sweep (entries 0..=4)
        #[arg(long, default_value_t = 6)]
        m_cap: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum Explore {
    /// Track the record pairwise gap between class counts mod d as n
    /// grows
    Hypothesis2 {
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Largest n scanned
        #[arg(long, default_value_t = 10_000)]
        upto: u64,
        /// Report the record at every power of ten up to the bound, not
        /// just at the bound itself
        #[arg(long)]
        curve: bool,
        /// Emit d,n_max,spread,n_star,i,j CSV instead of JSON
        #[arg(long)]
        csv: bool,
    },
}

fn parse_window(text: &str) -> Result<(u32, u32), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got \"{text}\""))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad window start \"{a}\""))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad window end \"{b}\""))?;
    Ok((a, b))
}

fn parse_vector(text: &str) -> fibpart::Result<DeltaVector> {
    text.parse()
}

fn parse_poly(text: &str) -> fibpart::Result<IntPoly> {
    text.parse()
}

fn compact<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output values always serialize")
}

/// Writes to stdout, exiting quietly when the reader has gone away (the
/// `| head` case) instead of panicking.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let outcome = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    if let Err(e) = outcome {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(2);
    }
}

fn emit_line(text: &str) {
    emit(text);
    emit("\n");
}

fn emit_report(report: &harness::VerificationReport) -> i32 {
    emit_line(&report.to_json());
    if report.passed() {
        0
    } else {
        1
    }
}

fn probe_points(upto: u64) -> Vec<u64> {
    let mut points = Vec::new();
    let mut p = 100u64;
    while p < upto {
        points.push(p);
        p = p.saturating_mul(10);
    }
    points.push(upto);
    points
}

fn run(cli: Cli) -> fibpart::Result<i32> {
    match cli.command {
        Command::Phi { n, window } => {
            let poly = match window {
                None => fibparts::phi(n)?,
                Some((a, b)) => fibparts::phi_window(n, a, b)?,
            };
            emit_line(&compact(&poly));
            Ok(0)
        }
        Command::Delta { vector } => {
            let poly = fibpart::delta::delta(&parse_vector(&vector)?)?;
            emit_line(&compact(&poly));
            Ok(0)
        }
        Command::Reduce { vector, poly, d } => {
            let g = match (vector, poly) {
                (Some(v), None) => fibpart::delta::delta(&parse_vector(&v)?)?,
                (None, Some(p)) => parse_poly(&p)?,
                _ => {
                    return Err(fibpart::Error::Domain(
                        "give exactly one of a vector or --poly",
                    ))
                }
            };
            emit_line(&compact(&cyclo::reduce(&g, d)?));
            Ok(0)
        }
        Command::Special { poly } => {
            let image = cyclo::reduce(&parse_poly(&poly)?, 3)?;
            let verdict = image.is_special()?;
            let special = verdict.is_special;
            #[derive(serde::Serialize)]
            struct SpecialOutput {
                image: fibpart::CycloElement,
                is_special: bool,
                reason: fibpart::SpecialReason,
            }
            emit_line(&compact(&SpecialOutput {
                image,
                is_special: special,
                reason: verdict.reason,
            }));
            Ok(if special { 0 } else { 1 })
        }
        Command::S { vector } => {
            emit_line(&compact(&fibpart::delta::s_element(&parse_vector(&vector)?)?));
            Ok(0)
        }
        Command::Rcounts { n, d, window, csv } => {
            let stats = fibparts::r_counts(n, d, window)?;
            if csv {
                emit(&format!(
                    "{}\n{}\n",
                    fibpart::PartitionStats::csv_header(d),
                    stats.csv_row()
                ));
            } else {
                emit_line(&compact(&stats));
            }
            Ok(0)
        }
        Command::Chi { upto, csv } => {
            let chi = series::chi_series(upto)?;
            if csv {
                emit(&chi.to_csv());
            } else {
                emit_line(&compact(&chi.coeffs()));
            }
            Ok(0)
        }
        Command::Chiwindow { window } => {
            let (a, b) = parse_window(&window).map_err(fibpart::Error::Parse)?;
            let report = series::window_bound_report(a, b)?;
            emit_line(&compact(&report));
            Ok(if report.witness.is_none() { 0 } else { 1 })
        }
        Command::Verify { suite } => {
            let report = match &suite {
                Suite::Theorem1 {
                    mode,
                    max_m,
                    entry_bound,
                    trials,
                    common,
                } => {
                    let mode = match mode {
                        SweepMode::Exhaustive => Theorem1Mode::Exhaustive { max_m: *max_m },
                        SweepMode::Random => Theorem1Mode::Random {
                            max_m: *max_m,
                            entry_bound: *entry_bound,
                            trials: *trials,
                        },
                    };
                    harness::verify_theorem1(&mode, &common.options())?
                }
                Suite::Lemma4 {
                    trials,
                    max_m,
                    entry_bound,
                    common,
                } => harness::verify_lemma4(*trials, *max_m, *entry_bound, &common.options())?,
                Suite::Theorem2 { from, to, common } => {
                    harness::verify_theorem2(*from, *to, &common.options())?
                }
                Suite::Hypothesis1 { a_max, b_max, common } => {
                    harness::verify_hypothesis1(*a_max, *b_max, &common.options())?
                }
                Suite::Hypothesis3 { d, upto, common } => {
                    harness::verify_hypothesis3(*d, *upto, &common.options())?
                }
                Suite::Oracles { n_cap, m_cap, common } => {
                    harness::verify_oracles(*n_cap, *m_cap, &common.options())?
                }
            };
            Ok(emit_report(&report))
        }
        Command::Explore { target } => match target {
            Explore::Hypothesis2 { d, upto, curve, csv } => {
                let points = if curve {
                    harness::spread_curve(d, &probe_points(upto))?
                } else {
                    harness::spread_curve(d, &[upto])?
                };
                if csv {
                    emit(&harness::spread_curve_csv(&points));
                } else if curve {
                    emit_line(&serde_json::to_string_pretty(&points).unwrap());
                } else {
                    emit_line(&serde_json::to_string_pretty(&points[0].record).unwrap());
                }
                Ok(0)
            }
        },
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
