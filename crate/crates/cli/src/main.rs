//! Command-line front end for the `opav` counters: exact counts, sequence
//! tables (including OEIS b-file output), bijections, and conjecture checks.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a requested check
//! failed, 3 enumeration budget exceeded.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use opav::bijections::{
    block_swap, phi_123_to_132, phi_inverse, psi_word, sw_decode, sw_encode, StarEncoding,
};
use opav::error::Error;
use opav::formulas;
use opav::generate::{count_by_enumeration, count_nk_by_enumeration};
use opav::lab::{
    self, check_conjecture1, check_lower_bound_doubletons, check_monotonicity,
    check_oracle_sweep, check_subadditivity, growth_rate_table, sequence_table, CheckReport,
    SequenceTable, Verdict,
};
use opav::scheme;
use opav::{BlockSizes, Count, OrderedSetPartition, Pattern, Word, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "opav", version, about = "Exact counting of pattern-avoiding ordered set partitions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Memoized enumeration-scheme recursion (length-3 patterns).
    Scheme,
    /// Exhaustive generation, bounded by the enumeration budget.
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Bfile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    /// 123-avoider to 132-avoider, minima fixed.
    Phi,
    /// Inverse fill: non-minima descending.
    PhiInv,
    /// Adjacent block-size swap (requires --index).
    Swap,
    /// Word-level 123-to-132 bijection.
    Psi,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count avoiders of a pattern over fixed block sizes.
    Count {
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value = "scheme")]
        method: Method,
        /// Emit a JSON line instead of the bare number.
        #[arg(long)]
        json: bool,
    },
    /// Count avoiders with n elements and k blocks.
    CountNk {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        pattern: String,
        /// Allow empty blocks.
        #[arg(long)]
        star: bool,
        #[arg(long, value_enum, default_value = "scheme")]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a closed-form or raw-summation formula.
    Formula {
        #[arg(long)]
        name: String,
        /// Comma-separated integer arguments, e.g. --args 6,3.
        #[arg(long, value_delimiter = ',')]
        args: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a named sequence as json lines, csv, or an OEIS b-file.
    Sequence {
        #[arg(long)]
        name: String,
        /// Single integer parameter (kmax, n, or nmax depending on name).
        #[arg(long)]
        arg: Option<u64>,
        /// Block count for --name growth.
        #[arg(long)]
        k: Option<u32>,
        /// Largest n for --name growth.
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long, default_value = "123")]
        pattern: String,
        #[arg(long, value_enum, default_value = "bfile")]
        format: Format,
    },
    /// Apply a constructive bijection to one partition or word.
    Biject {
        #[arg(long, value_enum)]
        map: MapName,
        #[arg(long)]
        input: String,
        /// 1-based block index for --map swap.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Encode a star partition as a compact avoider plus a tag word.
    StarEncode {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: String,
    },
    /// Invert star-encode; input is "<partition> <tagword>".
    StarDecode {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: String,
    },
    /// Run a verification experiment and report its verdict.
    Check {
        #[arg(long)]
        name: String,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        total: Option<u32>,
        #[arg(long, default_value = "123")]
        pattern: String,
    },
    /// Count words over [k] of length n avoiding a pattern.
    Words {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        json: bool,
    },
}

fn budget() -> u64 {
    std::env::var("OPAV_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn emit_count(query: &str, method: &str, value: &Count, json: bool, started: Instant) {
    if json {
        let line = serde_json::json!({
            "query": query,
            "method": method,
            "value": value.to_string(),
            "elapsed_ms": started.elapsed().as_millis() as u64,
        });
        println!("{line}");
    } else {
        println!("{value}");
    }
}

fn require_len3(rho: &Pattern) -> Result<(), Error> {
    if rho.len() != 3 {
        return Err(Error::Domain(format!(
            "the scheme supports length-3 patterns only (every length-3 pattern \
             gives the same counts); got {rho}"
        )));
    }
    Ok(())
}

fn run_count(sizes: &str, pattern: &str, method: Method, json: bool) -> Result<(), Error> {
    let started = Instant::now();
    let sizes: BlockSizes = sizes.parse()?;
    let rho: Pattern = pattern.parse()?;
    let (value, method_name) = match method {
        Method::Scheme => {
            require_len3(&rho)?;
            (scheme::scheme_count(&sizes)?, "scheme")
        }
        Method::Brute => (count_by_enumeration(&sizes, &rho, budget())?, "brute"),
    };
    emit_count(&format!("count sizes={sizes} pattern={rho}"), method_name, &value, json, started);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_count_nk(
    n: u32,
    k: u32,
    pattern: &str,
    star: bool,
    method: Method,
    json: bool,
) -> Result<(), Error> {
    let started = Instant::now();
    let rho: Pattern = pattern.parse()?;
    let (value, method_name) = match method {
        Method::Scheme => {
            require_len3(&rho)?;
            if star {
                (lab::op_star_from_nonempty(n, k, &rho, budget())?, "scheme")
            } else {
                (scheme::op123_nk(n, k)?, "scheme")
            }
        }
        Method::Brute => (
            count_nk_by_enumeration(n, k as usize, &rho, star, budget())?,
            "brute",
        ),
    };
    let star_mark = if star { " star" } else { "" };
    emit_count(
        &format!("count-nk n={n} k={k} pattern={rho}{star_mark}"),
        method_name,
        &value,
        json,
        started,
    );
    Ok(())
}

fn arg_at(args: &[u64], i: usize, name: &str) -> Result<u64, Error> {
    args.get(i).copied().ok_or_else(|| {
        Error::Domain(format!("formula {name} needs at least {} argument(s)", i + 1))
    })
}

fn run_formula(name: &str, args: &[u64], json: bool) -> Result<(), Error> {
    let started = Instant::now();
    let value = match name {
        "op12" => formulas::op12_closed(arg_at(args, 0, name)?, arg_at(args, 1, name)?)?,
        "op123-k3" => formulas::op123_k3_closed(arg_at(args, 0, name)?)?,
        "op123-k3-rawsum" => formulas::op123_k3_raw_sum(arg_at(args, 0, name)?),
        "op132-k3-rawsum" => formulas::op132_k3_raw_sum(arg_at(args, 0, name)?),
        "op123-nminus1" => formulas::op123_nminus1_closed(arg_at(args, 0, name)?)?,
        "catalan" => formulas::catalan_number(arg_at(args, 0, name)?),
        "catalan-triangle" => {
            formulas::catalan_triangle_entry(arg_at(args, 0, name)?, arg_at(args, 1, name)?)?
        }
        "one-big-block" => {
            formulas::op123_one_big_block_closed(arg_at(args, 0, name)?, arg_at(args, 1, name)?)?
        }
        "one-block-theorem" => {
            formulas::op123_nk_one_block_p(arg_at(args, 0, name)?, arg_at(args, 1, name)?)?
        }
        other => return Err(Error::UnknownName(other.into())),
    };
    let rendered: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    emit_count(
        &format!("formula {name}({})", rendered.join(",")),
        "formula",
        &value,
        json,
        started,
    );
    Ok(())
}

fn print_table(table: &SequenceTable, format: Format, started: Instant) {
    match format {
        Format::Bfile => {
            for e in &table.entries {
                println!("{} {}", e.index, e.value);
            }
        }
        Format::Csv => {
            println!("index,value,method");
            for e in &table.entries {
                println!("{},{},{}", e.index, e.value, e.method);
            }
        }
        Format::Json => {
            for e in &table.entries {
                let line = serde_json::json!({
                    "query": format!("{}:{}", table.name, e.index),
                    "method": e.method.to_string(),
                    "value": e.value.to_string(),
                    "elapsed_ms": started.elapsed().as_millis() as u64,
                });
                println!("{line}");
            }
        }
    }
}

fn run_sequence(
    name: &str,
    arg: Option<u64>,
    k: Option<u32>,
    nmax: Option<u32>,
    pattern: &str,
    format: Format,
) -> Result<(), Error> {
    let started = Instant::now();
    if name == "growth" {
        let k = k.ok_or_else(|| Error::Domain("growth needs --k".into()))?;
        let nmax = nmax.ok_or_else(|| Error::Domain("growth needs --nmax".into()))?;
        let rho: Pattern = pattern.parse()?;
        let rows = growth_rate_table(k, &rho, nmax, budget())?;
        match format {
            Format::Bfile => {
                for r in &rows {
                    println!("{} {}", r.n, r.op);
                }
            }
            Format::Csv => {
                println!("n,op,op_star,op_root,op_star_root");
                for r in &rows {
                    println!("{},{},{},{},{}", r.n, r.op, r.op_star, r.op_root, r.op_star_root);
                }
            }
            Format::Json => {
                for r in &rows {
                    let line = serde_json::json!({
                        "query": format!("growth k={k} rho={rho} n={}", r.n),
                        "method": "scheme",
                        "value": r.op.to_string(),
                        "op_star": r.op_star.to_string(),
                        "op_root": r.op_root,
                        "op_star_root": r.op_star_root,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    });
                    println!("{line}");
                }
            }
        }
        return Ok(());
    }
    let arg = arg.ok_or_else(|| Error::Domain(format!("sequence {name} needs --arg")))?;
    let table = sequence_table(name, arg)?;
    print_table(&table, format, started);
    Ok(())
}

fn run_biject(map: MapName, input: &str, index: Option<usize>) -> Result<(), Error> {
    match map {
        MapName::Phi => {
            let p: OrderedSetPartition = input.parse()?;
            println!("{}", phi_123_to_132(&p)?);
        }
        MapName::PhiInv => {
            let p: OrderedSetPartition = input.parse()?;
            println!("{}", phi_inverse(&p)?);
        }
        MapName::Swap => {
            let i = index.ok_or_else(|| Error::Domain("swap needs --index".into()))?;
            let p: OrderedSetPartition = input.parse()?;
            println!("{}", block_swap(&p, i)?);
        }
        MapName::Psi => {
            let w = Word::parse(input)?;
            println!("{}", psi_word(&w)?);
        }
    }
    Ok(())
}

fn parse_tag(s: &str) -> Result<Vec<u32>, Error> {
    if s.contains(',') {
        s.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad tag character {c:?}")))
            })
            .collect()
    }
}

fn run_star_encode(pattern: &str, input: &str) -> Result<(), Error> {
    let rho: Pattern = pattern.parse()?;
    let p: OrderedSetPartition = input.parse::<OrderedSetPartition>()?.into_star();
    println!("{}", sw_encode(&p, &rho)?);
    Ok(())
}

fn run_star_decode(pattern: &str, input: &str) -> Result<(), Error> {
    let rho: Pattern = pattern.parse()?;
    let (compact_text, tag_text) = input
        .split_once(' ')
        .ok_or_else(|| Error::Parse("expected \"<partition> <tagword>\"".into()))?;
    let encoding = StarEncoding {
        compact: compact_text.trim().parse()?,
        tag: parse_tag(tag_text.trim())?,
    };
    println!("{}", sw_decode(&encoding, &rho)?);
    Ok(())
}

fn print_report(report: &CheckReport) {
    eprintln!("check {} ({})", report.name, report.params);
    for note in &report.notes {
        eprintln!("  note: {note}");
    }
    if let Some(w) = &report.witness {
        eprintln!("  witness: {w}");
    }
    eprintln!("  verdict: {}", report.verdict);
    let line = serde_json::json!({
        "query": format!("check {} {}", report.name, report.params),
        "method": "check",
        "value": report.verdict.to_string(),
        "witness": report.witness,
        "notes": report.notes,
    });
    println!("{line}");
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    name: &str,
    kmax: Option<u32>,
    n: Option<u32>,
    nmax: Option<u32>,
    k: Option<u32>,
    total: Option<u32>,
    pattern: &str,
) -> Result<Verdict, Error> {
    let rho: Pattern = pattern.parse()?;
    let report = match name {
        "conjecture1" => check_conjecture1(kmax.unwrap_or(6))?,
        "lower-bound" => check_lower_bound_doubletons(kmax.unwrap_or(6))?,
        "monotonicity" => {
            let n = n.ok_or_else(|| Error::Domain("monotonicity needs --n".into()))?;
            check_monotonicity(n, &rho, budget())?
        }
        "subadditivity" => {
            check_subadditivity(total.unwrap_or(7), k.unwrap_or(4), &rho, budget())?
        }
        "oracle-sweep" => check_oracle_sweep(nmax.unwrap_or(7), budget())?,
        other => return Err(Error::UnknownName(other.into())),
    };
    print_report(&report);
    Ok(report.verdict)
}

fn run_words(k: u32, n: u32, pattern: &str, json: bool) -> Result<(), Error> {
    let started = Instant::now();
    let rho: Pattern = pattern.parse()?;
    let value = opav::words::count_words_avoiding(k, n, &rho, budget())?;
    emit_count(&format!("words k={k} n={n} pattern={rho}"), "brute", &value, json, started);
    Ok(())
}

fn dispatch(cli: Cli) -> Result<Verdict, Error> {
    match cli.cmd {
        Cmd::Count { sizes, pattern, method, json } => {
            run_count(&sizes, &pattern, method, json)?;
        }
        Cmd::CountNk { n, k, pattern, star, method, json } => {
            run_count_nk(n, k, &pattern, star, method, json)?;
        }
        Cmd::Formula { name, args, json } => run_formula(&name, &args, json)?,
        Cmd::Sequence { name, arg, k, nmax, pattern, format } => {
            run_sequence(&name, arg, k, nmax, &pattern, format)?;
        }
        Cmd::Biject { map, input, index } => run_biject(map, &input, index)?,
        Cmd::StarEncode { pattern, input } => run_star_encode(&pattern, &input)?,
        Cmd::StarDecode { pattern, input } => run_star_decode(&pattern, &input)?,
        Cmd::Check { name, kmax, n, nmax, k, total, pattern } => {
            return run_check(&name, kmax, n, nmax, k, total, &pattern);
        }
        Cmd::Words { k, n, pattern, json } => run_words(k, n, &pattern, json)?,
    }
    Ok(Verdict::Holds)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(Verdict::Fails) => ExitCode::from(2),
        Ok(_) => ExitCode::SUCCESS,
        Err(Error::BudgetExceeded { needed, budget }) => {
            eprintln!("error: enumeration budget exceeded: needs {needed} objects, budget is {budget} (set OPAV_BUDGET to raise it)");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
