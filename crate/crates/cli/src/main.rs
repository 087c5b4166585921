use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use patwilf::enumerate::{count_avoiders, DEFAULT_ENUMERATION_CAP};
use patwilf::gentree::{census, Case69, Case88, RuleSystem};
use patwilf::gf::{eval, parse, CaseId, Registry};
use patwilf::perm::PatternTriple;
use patwilf::recurrences::{table_case231, table_case241, RecurrenceTable};
use patwilf::series::{LaurentSeries, DEFAULT_ORDER};
use patwilf::verify::{channels_for, summary_table, verify_all, verify_case, Channel, VerificationRecord};

const ORDER_ENV: &str = "PATWILF_ORDER";

#[derive(Parser)]
#[command(name = "patwilf", version, about = "Count and verify permutations avoiding triples of 4-letter patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Brute-force count of avoiders of length n.
    Count(CountArgs),
    /// Coefficients of a registry generating function or an expression.
    Series(SeriesArgs),
    /// Cross-check one case through the selected channels.
    Verify(VerifyArgs),
    /// Series check of every registry case.
    VerifyAll(VerifyAllArgs),
    /// The orbit of a triple under reverse, complement and inverse.
    Symmetry {
        #[arg(long)]
        triple: PatternTriple,
    },
    /// Per-level vertex totals of the generating forest for case 69 or 88.
    Tree {
        #[arg(long)]
        case: u32,
        #[arg(long)]
        n: usize,
        /// Also print the label census at every level.
        #[arg(long)]
        labels: bool,
    },
    /// Row sums of the first-letter recurrence for case 231 or 241.
    Recurrence {
        #[arg(long)]
        case: u32,
        #[arg(long)]
        n: usize,
        /// Print the refined tables a(n;j) and b(n;j) too.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, conflicts_with = "case", required_unless_present = "case")]
    triple: Option<PatternTriple>,
    #[arg(long)]
    case: Option<u32>,
    #[arg(long)]
    n: usize,
    /// Largest n allowed for enumeration.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    case: Option<CaseId>,
    #[arg(long)]
    expr: Option<String>,
    /// Number of coefficients (exponents below this are printed). Defaults to
    /// $PATWILF_ORDER, then 33.
    #[arg(long)]
    order: Option<i32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    case: u32,
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Comma-separated subset of series,tree,recurrence,refined; defaults to
    /// every channel that applies to the case.
    #[arg(long, value_delimiter = ',')]
    channels: Vec<Channel>,
    /// Write one JSON object per record to this file (`-` for stdout).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

type CliResult<T> = std::result::Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a check ran and failed.
fn run(cmd: Command) -> CliResult<bool> {
    let mut out = io::stdout().lock();
    match cmd {
        Command::Count(a) => {
            check_cap(a.n, a.cap)?;
            let triple = match (a.triple, a.case) {
                (Some(t), _) => t,
                (None, Some(c)) => registry()?.case(c).map_err(err)?.triple.clone(),
                (None, None) => unreachable!("clap requires one of --triple/--case"),
            };
            writeln!(out, "{}", count_avoiders(a.n, &triple)).map_err(err)?;
            Ok(true)
        }
        Command::Series(a) => {
            let order = match a.order {
                Some(o) => o,
                None => default_order()?,
            };
            if order < 1 {
                return Err(format!("--order must be at least 1, got {order}"));
            }
            let s = match (a.case, a.expr) {
                (Some(id), _) => registry()?.get(&id).map_err(err)?.series(order).map_err(err)?,
                (None, Some(text)) => eval(&parse(&text).map_err(err)?, order).map_err(err)?,
                (None, None) => unreachable!("clap requires one of --case/--expr"),
            };
            print_series(&mut out, &s, order)?;
            Ok(true)
        }
        Command::Verify(a) => {
            check_cap(a.n, a.cap)?;
            let reg = registry()?;
            let channels = if a.channels.is_empty() { channels_for(&reg, a.case) } else { a.channels };
            let records = verify_case(&reg, a.case, a.n, &channels).map_err(err)?;
            report(&records, a.report.as_ref())
        }
        Command::VerifyAll(a) => {
            check_cap(a.n, a.cap)?;
            let records = verify_all(&registry()?, a.n).map_err(err)?;
            report(&records, a.report.as_ref())
        }
        Command::Symmetry { triple } => {
            let orbit = triple.symmetry_class();
            writeln!(out, "orbit size {}", orbit.len()).map_err(err)?;
            for t in orbit {
                writeln!(out, "{t}").map_err(err)?;
            }
            Ok(true)
        }
        Command::Tree { case, n, labels } => {
            match case {
                69 => print_tree(&mut out, &Case69, n, labels)?,
                88 => print_tree(&mut out, &Case88, n, labels)?,
                _ => return Err(format!("no generating forest for case {case}; use 69 or 88")),
            }
            Ok(true)
        }
        Command::Recurrence { case, n, full } => {
            let table = match case {
                231 => table_case231(n.max(1)),
                241 => table_case241(n.max(2)),
                _ => return Err(format!("no recurrence for case {case}; use 231 or 241")),
            };
            print_recurrence(&mut out, &table, n, full)?;
            Ok(true)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn registry() -> CliResult<Registry> {
    Registry::from_env().map_err(err)
}

fn default_order() -> CliResult<i32> {
    match std::env::var(ORDER_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| format!("{ORDER_ENV} must be a positive integer, got `{v}`")),
        _ => Ok(DEFAULT_ORDER),
    }
}

fn check_cap(n: usize, cap: usize) -> CliResult<()> {
    if n > cap {
        return Err(format!("n = {n} exceeds the enumeration cap {cap}; raise it with --cap"));
    }
    Ok(())
}

fn print_series(out: &mut impl Write, s: &LaurentSeries, order: i32) -> CliResult<()> {
    let start = s.valuation().min(0);
    for k in start..order {
        let c = s.coefficient(k).map_err(err)?;
        writeln!(out, "{k} {c}").map_err(err)?;
    }
    Ok(())
}

fn print_tree<R: RuleSystem>(out: &mut impl Write, rs: &R, n: usize, labels: bool) -> CliResult<()>
where
    R::Label: std::fmt::Display,
{
    for level in 0..=n.min(1) {
        writeln!(out, "{level} 1").map_err(err)?;
    }
    for m in census(rs, n) {
        writeln!(out, "{} {}", m.level, m.total()).map_err(err)?;
        if labels {
            let parts: Vec<String> = m.counts.iter().map(|(l, c)| format!("{l}:{c}")).collect();
            writeln!(out, "  {}", parts.join(" ")).map_err(err)?;
        }
    }
    Ok(())
}

fn print_recurrence(out: &mut impl Write, t: &RecurrenceTable, n: usize, full: bool) -> CliResult<()> {
    for m in 0..=n {
        writeln!(out, "{m} {}", t.total(m)).map_err(err)?;
        if full && m >= 1 {
            let row = |r: &[BigUint]| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            writeln!(out, "  a: {}", row(t.row_a(m))).map_err(err)?;
            writeln!(out, "  b: {}", row(t.row_b(m))).map_err(err)?;
        }
    }
    Ok(())
}

/// Writes the JSON-lines report and the summary; `Ok(false)` on any mismatch.
fn report(records: &[VerificationRecord], path: Option<&PathBuf>) -> CliResult<bool> {
    let lines: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    let to_stdout = path.is_some_and(|p| p.as_os_str() == "-");
    match path {
        Some(_) if to_stdout => print!("{lines}"),
        Some(p) => fs::write(p, &lines).map_err(|e| format!("{}: {e}", p.display()))?,
        None => {}
    }
    let summary = summary_table(records);
    if to_stdout {
        eprint!("{summary}");
    } else {
        print!("{summary}");
    }
    let bad: Vec<&VerificationRecord> = records.iter().filter(|r| !r.matched).collect();
    for r in &bad {
        eprintln!("MISMATCH {}", r.to_json_line());
    }
    Ok(bad.is_empty())
}
