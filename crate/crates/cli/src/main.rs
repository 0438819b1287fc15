//! `incseq` — command-line front end for the library. Line-oriented JSON by
//! default; `--format pretty` renders tableaux as grids and polynomials in
//! q-notation; `verify` emits CSV (or JSON with `--format json`).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use incseq_core::bijections::{c_to_d, d_to_c, recurrence_merge, recurrence_split, ValueSubset};
use incseq_core::permbij::{lli, phi, psi};
use incseq_core::qpoly::thm2_rhs;
use incseq_core::tableau::{
    enumerate_crsk, enumerate_d, enumerate_pirsk, rsk, rsk_inverse, TableauPair,
};
use incseq_core::verify::{
    all_pass, reports_to_csv, thm1_rhs, verify_all, verify_dnks_count, verify_lemma_qinv_reports,
    verify_permsets, verify_q_recurrence, verify_recurrence, verify_rsk, verify_setie, verify_thm1,
    verify_thm2, VerificationReport, VerifyAllOptions, DEFAULT_SEED,
};
use incseq_core::{enumerate_c, enumerate_pi, enumerate_sn, Error, Permutation, DEFAULT_ENUM_CAP};

#[derive(Debug, Parser)]
#[command(
    name = "incseq",
    about = "Exact combinatorics of permutations with long increasing prefixes",
    version
)]
struct Cli {
    /// Output format. `verify` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Enumeration size cap (overrides the INCSEQ_MAX_N environment variable).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Descents, maj, imaj and longest-increasing-subsequence length.
    Stats { perm: String },
    /// Apply the row-insertion correspondence (or invert a pair with --invert).
    Rsk {
        /// Interpret the argument as a {"P":…,"Q":…} pair and invert it.
        #[arg(long)]
        invert: bool,
        input: String,
    },
    /// Forward shift map on an increasing-prefix permutation.
    Phi {
        #[arg(long)]
        s: usize,
        perm: String,
    },
    /// Inverse shift map.
    Psi {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        a: usize,
        perm: String,
    },
    /// Distinguished minimal increasing subsequence of length m (1-based indices).
    Lli {
        #[arg(long)]
        m: usize,
        perm: String,
    },
    /// Enumerate a family, one element per line, in lexicographic order.
    Enumerate {
        #[command(subcommand)]
        family: Family,
    },
    /// Closed-form count (or q-polynomial with --q) for the (n, k) cell.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Emit the q-analogue instead of the plain count.
        #[arg(long)]
        q: bool,
    },
    /// Run a verification battery; exit 0 iff every check passes.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Apply one of the tableau-pair bijections.
    Bijection {
        #[command(subcommand)]
        map: BijectionMap,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// All permutations of 1..n.
    Sn {
        #[arg(long)]
        n: usize,
    },
    /// Permutations whose first n-s entries increase.
    C {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Increasing-prefix permutations with longest increasing subsequence exactly n-k.
    Pi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Quasi-standard pairs with an s-step decreasing run after the fixed prefix.
    D {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
    /// Insertion/recording pairs of the increasing-prefix class.
    Crsk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Insertion/recording pairs with first row of length exactly n-k.
    Pirsk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Also report (without asserting) the out-of-regime cells n < 2k.
    #[arg(long)]
    explore: bool,
    /// Include wall-clock timings in the elapsed_ms column (non-deterministic).
    #[arg(long)]
    timings: bool,
    /// Seed for the randomized large-n round-trip checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    Thm1(VerifyArgs),
    Thm2(VerifyArgs),
    Recurrence(VerifyArgs),
    QRecurrence(VerifyArgs),
    Setie(VerifyArgs),
    Dnks(VerifyArgs),
    Permsets(VerifyArgs),
    LemmaQinv(VerifyArgs),
    Rsk(VerifyArgs),
    All(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum BijectionMap {
    /// Pair in the increasing-prefix image -> (smaller-cell pair, value subset).
    Split {
        #[arg(long)]
        k: usize,
        pair: String,
    },
    /// Inverse of split: (pair, subset) -> pair.
    Merge {
        #[arg(long)]
        k: usize,
        /// Comma-separated subset values, e.g. 3,6.
        #[arg(long)]
        b: String,
        pair: String,
    },
    /// Quasi-standard pair -> (image pair, first-row value subset).
    DToC {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        pair: String,
    },
    /// Inverse of d-to-c: (pair, subset) -> quasi-standard pair.
    CToD {
        #[arg(long)]
        k: usize,
        /// Comma-separated subset values, e.g. 3,6.
        #[arg(long)]
        a: String,
        pair: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn effective_cap(flag: Option<usize>) -> incseq_core::Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("INCSEQ_MAX_N") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::Parse(format!("INCSEQ_MAX_N is not an integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn parse_pair(s: &str) -> incseq_core::Result<TableauPair> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid tableau pair JSON: {e}")))
}

fn parse_subset(s: &str) -> incseq_core::Result<ValueSubset> {
    let values: Vec<usize> = s
        .split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid subset element: {t:?}")))
        })
        .collect::<incseq_core::Result<_>>()?;
    ValueSubset::new(values)
}

fn print_pair(pair: &TableauPair, format: Format) {
    if format == Format::Pretty {
        println!("P:\n{}", pair.p);
        println!("Q:\n{}", pair.q);
    } else {
        println!("{}", serde_json::to_string(pair).expect("serializable"));
    }
}

fn run(cli: Cli) -> incseq_core::Result<ExitCode> {
    let cap = effective_cap(cli.cap)?;
    let format = cli.format.unwrap_or(match cli.command {
        Command::Verify { .. } => Format::Csv,
        _ => Format::Json,
    });
    match cli.command {
        Command::Stats { perm } => {
            let w: Permutation = perm.parse()?;
            if format == Format::Pretty {
                println!("n = {}", w.n());
                println!("descents = {}", w.descent_set());
                println!("maj = {}", w.maj());
                println!("imaj = {}", w.imaj());
                println!("lis = {}", w.lis_length());
            } else {
                println!(
                    "{}",
                    serde_json::json!({
                        "n": w.n(),
                        "descents": w.descent_set().positions(),
                        "maj": w.maj(),
                        "imaj": w.imaj(),
                        "lis": w.lis_length(),
                    })
                );
            }
        }
        Command::Rsk { invert, input } => {
            if invert {
                let pair = parse_pair(&input)?;
                let w = rsk_inverse(&pair)?;
                println!("{w}");
            } else {
                let w: Permutation = input.parse()?;
                print_pair(&rsk(&w), format);
            }
        }
        Command::Phi { s, perm } => {
            let pi: Permutation = perm.parse()?;
            let result = phi(&pi, s)?;
            println!(
                "{}",
                serde_json::json!({ "w": result.w.to_string(), "a": result.a })
            );
        }
        Command::Psi { s, a, perm } => {
            let w: Permutation = perm.parse()?;
            let pi = psi(&w, a, s)?;
            println!("{pi}");
        }
        Command::Lli { m, perm } => {
            let pi: Permutation = perm.parse()?;
            match lli(&pi, m)? {
                Some(sub) => println!(
                    "{}",
                    serde_json::to_string(sub.indices()).expect("serializable")
                ),
                None => println!("null"),
            }
        }
        Command::Enumerate { family } => {
            let (perms, pairs): (Vec<Permutation>, Vec<TableauPair>) = match family {
                Family::Sn { n } => (enumerate_sn(n, cap)?, Vec::new()),
                Family::C { n, s } => (enumerate_c(n, s, cap)?, Vec::new()),
                Family::Pi { n, k } => (enumerate_pi(n, k, cap)?, Vec::new()),
                Family::D { n, k, s } => (Vec::new(), enumerate_d(n, k, s, cap)?),
                Family::Crsk { n, s } => (Vec::new(), enumerate_crsk(n, s, cap)?),
                Family::Pirsk { n, k } => (Vec::new(), enumerate_pirsk(n, k, cap)?),
            };
            for w in &perms {
                if format == Format::Pretty {
                    println!("{w}");
                } else {
                    println!("{}", serde_json::json!(w.to_string()));
                }
            }
            for pair in &pairs {
                print_pair(pair, format);
            }
        }
        Command::Count { n, k, q } => {
            if q {
                let poly = thm2_rhs(n, k)?;
                if format == Format::Pretty {
                    println!("{poly}");
                } else {
                    println!("{}", serde_json::to_string(&poly).expect("serializable"));
                }
            } else {
                println!("{}", thm1_rhs(n, k)?);
            }
        }
        Command::Verify { target } => {
            let (reports, args) = run_verify(target, cap)?;
            emit_reports(&reports, format, args.timings);
            if !all_pass(&reports) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bijection { map } => match map {
            BijectionMap::Split { k, pair } => {
                let pair = parse_pair(&pair)?;
                let (out, subset) = recurrence_split(&pair, k)?;
                println!(
                    "{}",
                    serde_json::json!({ "pair": out, "subset": subset.values() })
                );
            }
            BijectionMap::Merge { k, b, pair } => {
                let pair = parse_pair(&pair)?;
                let subset = parse_subset(&b)?;
                print_pair(&recurrence_merge(&pair, &subset, k)?, format);
            }
            BijectionMap::DToC { k, s, pair } => {
                let pair = parse_pair(&pair)?;
                let (out, subset) = d_to_c(&pair, k, s)?;
                println!(
                    "{}",
                    serde_json::json!({ "pair": out, "subset": subset.values() })
                );
            }
            BijectionMap::CToD { k, a, pair } => {
                let pair = parse_pair(&pair)?;
                let subset = parse_subset(&a)?;
                print_pair(&c_to_d(&pair, &subset, k)?, format);
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(
    target: VerifyTarget,
    cap: usize,
) -> incseq_core::Result<(Vec<VerificationReport>, VerifyArgs)> {
    let reports = match &target {
        VerifyTarget::Thm1(a) => {
            let mut out = verify_thm1(a.max_n, cap.max(a.max_n))?;
            if a.explore {
                out.extend(incseq_core::verify::explore_thm1_thm2(
                    a.max_n,
                    cap.max(a.max_n),
                )?);
            }
            out
        }
        VerifyTarget::Thm2(a) => verify_thm2(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::Recurrence(a) => verify_recurrence(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::QRecurrence(a) => verify_q_recurrence(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::Setie(a) => verify_setie(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::Dnks(a) => verify_dnks_count(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::Permsets(a) => verify_permsets(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::LemmaQinv(a) => verify_lemma_qinv_reports(a.max_n, cap.max(a.max_n))?,
        VerifyTarget::Rsk(a) => verify_rsk(a.max_n.min(7), 50, 1000, a.seed)?,
        VerifyTarget::All(a) => verify_all(&VerifyAllOptions {
            max_n: a.max_n,
            cap: cap.max(a.max_n),
            explore: a.explore,
            seed: a.seed,
        })?,
    };
    let args = match target {
        VerifyTarget::Thm1(a)
        | VerifyTarget::Thm2(a)
        | VerifyTarget::Recurrence(a)
        | VerifyTarget::QRecurrence(a)
        | VerifyTarget::Setie(a)
        | VerifyTarget::Dnks(a)
        | VerifyTarget::Permsets(a)
        | VerifyTarget::LemmaQinv(a)
        | VerifyTarget::Rsk(a)
        | VerifyTarget::All(a) => a,
    };
    Ok((reports, args))
}

fn emit_reports(reports: &[VerificationReport], format: Format, timings: bool) {
    match format {
        Format::Json => {
            for r in reports {
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
        }
        Format::Csv | Format::Pretty => {
            print!("{}", reports_to_csv(reports, timings));
        }
    }
}
