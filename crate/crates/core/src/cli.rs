//! Command-line front end: argument parsing, command execution and output
//! rendering in text, JSON or CSV.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::maps::{
    check_surjectivity, commute_verdict, counterexample_witness, f_k, fiber, image_misses,
    is_surjective, predicted_commute, CommuteInstance,
};
use crate::oddity::{dnk, odd_partitions};
use crate::oracle::cross_validate;
use crate::partition::Partition;
use crate::quotient::{k_data, KData};

/// Environment variable capping the `n` of exhaustive sweeps.
pub const MAX_N_VAR: &str = "ODDMAPS_MAX_N";
pub const DEFAULT_MAX_N: usize = 40;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "oddmaps",
    version,
    about = "Restriction maps between odd partitions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the odd partitions of n.
    OddList {
        #[arg(long)]
        n: usize,
    },
    /// Remove the odd 2^k-hook of an odd partition.
    Fk {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = partition_arg)]
        lambda: Partition,
    },
    /// Odd partitions of n that f_k sends to mu.
    Fiber {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = partition_arg)]
        mu: Partition,
    },
    /// Odd partitions of n - 2^k missed by f_k.
    Image {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
    /// Whether f_k is surjective on odd partitions of n.
    Surjective {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Also compute the image and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustively test whether f_k and f_l commute on odd partitions of n.
    Commute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Construct an odd partition on which f_k f_l and f_l f_k differ.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Show the k-data table of a partition.
    Tower {
        #[arg(long, value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long)]
        k: u32,
    },
    /// Cross-check f_k against the branching-rule oracle.
    Verify {
        #[arg(long, default_value_t = 18)]
        max_n: usize,
    },
}

/// Parses a bracketed partition literal such as `[5,4,2,2,1,1]`.
pub fn parse_partition_text(text: &str) -> Result<Partition, Error> {
    text.parse()
}

fn partition_arg(text: &str) -> Result<Partition, String> {
    parse_partition_text(text).map_err(|e| e.to_string())
}

/// Rendered command output and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            exit_code: EXIT_OK,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_internal() => EXIT_FAILURE,
            CliError::Io(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

fn sweep_cap() -> Result<usize, CliError> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_N_VAR} must be a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_cap(n: usize) -> Result<(), CliError> {
    let cap = sweep_cap()?;
    if n > cap {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds the sweep limit {cap} ({MAX_N_VAR})"
        )));
    }
    Ok(())
}

/// Centered triangle: one line per core row, then the quotient row.
pub fn render_kdata(data: &KData) -> String {
    let lines: Vec<String> = data
        .core_rows
        .iter()
        .chain(std::iter::once(&data.quotient_row))
        .map(|row| {
            row.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for line in &lines {
        let pad = (width - line.chars().count()) / 2;
        out.push_str(&" ".repeat(pad));
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    writer.write_record(header).map_err(io)?;
    for row in rows {
        writer.write_record(&row).map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn json_text(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn lines<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| format!("{}\n", i.to_string()))
        .collect()
}

/// Runs one command and renders its result.
pub fn execute(command: &Command, format: Format) -> Result<Output, CliError> {
    let out = match command {
        Command::OddList { n } => {
            check_cap(*n)?;
            let list = odd_partitions(*n);
            match format {
                Format::Text => lines(&list),
                Format::Json => json_text(json!({ "n": n, "result": list, "size": list.len() })),
                Format::Csv => csv_table(
                    &["n", "lambda"],
                    list.iter()
                        .map(|p| vec![n.to_string(), p.to_string()])
                        .collect(),
                )?,
            }
        }
        Command::Fk { n, k, lambda } => {
            if let Some(n) = n {
                if *n != lambda.size() {
                    return Err(CliError::Usage(format!(
                        "--n {n} does not match |lambda| = {}",
                        lambda.size()
                    )));
                }
            }
            let n = lambda.size();
            let mu = f_k(lambda, *k)?;
            match format {
                Format::Text => format!("{mu}\n"),
                Format::Json => {
                    json_text(json!({ "n": n, "k": k, "lambda": lambda, "result": mu }))
                }
                Format::Csv => csv_table(
                    &["n", "k", "lambda", "result"],
                    vec![vec![
                        n.to_string(),
                        k.to_string(),
                        lambda.to_string(),
                        mu.to_string(),
                    ]],
                )?,
            }
        }
        Command::Fiber { n, k, mu } => {
            let f = fiber(mu, *n, *k)?;
            match format {
                Format::Text => format!("{}size: {}\n", lines(&f.members), f.size),
                Format::Json => json_text(json!({
                    "n": n, "k": k, "mu": mu, "members": f.members, "size": f.size,
                })),
                Format::Csv => csv_table(
                    &["n", "k", "mu", "member"],
                    f.members
                        .iter()
                        .map(|m| vec![n.to_string(), k.to_string(), mu.to_string(), m.to_string()])
                        .collect(),
                )?,
            }
        }
        Command::Image { n, k } => {
            check_cap(*n)?;
            let misses = image_misses(*n, *k)?;
            let d = dnk(*n, *k)?.d;
            match format {
                Format::Text => format!("{}misses: {} (d = {d})\n", lines(&misses), misses.len()),
                Format::Json => json_text(json!({
                    "n": n, "k": k, "d": d, "result": misses, "size": misses.len(),
                })),
                Format::Csv => csv_table(
                    &["n", "k", "d", "mu"],
                    misses
                        .iter()
                        .map(|m| vec![n.to_string(), k.to_string(), d.to_string(), m.to_string()])
                        .collect(),
                )?,
            }
        }
        Command::Surjective { n, k, verify } => {
            let d = dnk(*n, *k)?.d;
            let result = is_surjective(*n, *k)?;
            let check = if *verify {
                check_cap(*n)?;
                Some(check_surjectivity(*n, *k)?)
            } else {
                None
            };
            if check.as_ref().is_some_and(|c| !c.consistent()) {
                return Err(Error::Internal(format!(
                    "criterion says surjective = {result} for (n, k) = ({n}, {k}) but the image disagrees"
                ))
                .into());
            }
            match format {
                Format::Text => {
                    let mut s = format!("surjective: {result} (d = {d})\n");
                    if let Some(c) = &check {
                        s.push_str(&format!("image misses: {} (consistent)\n", c.misses.len()));
                    }
                    s
                }
                Format::Json => {
                    let mut v = json!({ "n": n, "k": k, "d": d, "result": result });
                    if let Some(c) = &check {
                        v["report"] =
                            json!({ "image_misses": c.misses, "consistent": c.consistent() });
                    }
                    json_text(v)
                }
                Format::Csv => csv_table(
                    &["n", "k", "d", "result"],
                    vec![vec![
                        n.to_string(),
                        k.to_string(),
                        d.to_string(),
                        result.to_string(),
                    ]],
                )?,
            }
        }
        Command::Commute { n, k, l } => {
            check_cap(*n)?;
            let inst = CommuteInstance::new(*n, *k, *l)?;
            let verdict = commute_verdict(&inst)?;
            let predicted = predicted_commute(&inst);
            let witness = verdict.witness.as_ref().map(Partition::to_string);
            match format {
                Format::Text => {
                    let mut s = format!("commutes: {}\n", verdict.commutes);
                    if let Some(w) = &witness {
                        s.push_str(&format!("witness: {w}\n"));
                    }
                    s.push_str(&format!("predicted: {predicted}\n"));
                    s
                }
                Format::Json => json_text(json!({
                    "n": n, "k": k, "l": l,
                    "commutes": verdict.commutes,
                    "witness": verdict.witness,
                    "report": { "predicted": predicted, "agrees": predicted == verdict.commutes },
                })),
                Format::Csv => csv_table(
                    &["n", "k", "l", "commutes", "witness"],
                    vec![vec![
                        n.to_string(),
                        k.to_string(),
                        l.to_string(),
                        verdict.commutes.to_string(),
                        witness.unwrap_or_default(),
                    ]],
                )?,
            }
        }
        Command::Witness { n, k, l } => {
            let inst = CommuteInstance::new(*n, *k, *l)?;
            let w = counterexample_witness(&inst)?;
            match format {
                Format::Text => format!("{w}\n"),
                Format::Json => json_text(json!({ "n": n, "k": k, "l": l, "witness": w })),
                Format::Csv => csv_table(
                    &["n", "k", "l", "witness"],
                    vec![vec![
                        n.to_string(),
                        k.to_string(),
                        l.to_string(),
                        w.to_string(),
                    ]],
                )?,
            }
        }
        Command::Tower { lambda, k } => {
            let data = k_data(lambda, *k)?;
            match format {
                Format::Text => render_kdata(&data),
                Format::Json => json_text(json!({ "lambda": lambda, "k": k, "result": data })),
                Format::Csv => {
                    let mut rows = Vec::new();
                    for (j, row) in data.core_rows.iter().enumerate() {
                        for (i, p) in row.iter().enumerate() {
                            rows.push(vec![format!("C{j}"), i.to_string(), p.to_string()]);
                        }
                    }
                    for (i, p) in data.quotient_row.iter().enumerate() {
                        rows.push(vec![format!("Q{k}"), i.to_string(), p.to_string()]);
                    }
                    csv_table(&["row", "index", "entry"], rows)?
                }
            }
        }
        Command::Verify { max_n } => {
            check_cap(*max_n)?;
            let report = cross_validate(*max_n);
            let exit_code = if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            let body = match format {
                Format::Text => {
                    let mut s = format!(
                        "n_max: {}\nchecks: {}\nmismatches: {}\n",
                        report.n_max,
                        report.checks_run,
                        report.mismatches.len()
                    );
                    for m in &report.mismatches {
                        let k = m.k.map_or("-".to_string(), |k| k.to_string());
                        s.push_str(&format!(
                            "mismatch lambda={} k={k} expected={} got={}\n",
                            m.lambda, m.expected, m.got
                        ));
                    }
                    s
                }
                Format::Json => json_text(json!({ "n": max_n, "report": report })),
                Format::Csv => csv_table(
                    &["n_max", "checks_run", "mismatches"],
                    vec![vec![
                        report.n_max.to_string(),
                        report.checks_run.to_string(),
                        report.mismatches.len().to_string(),
                    ]],
                )?,
            };
            return Ok(Output { body, exit_code });
        }
    };
    Ok(Output::ok(out))
}

/// Parses arguments, runs the command inside a pool of `--jobs` threads and
/// writes the result. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run_parsed(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_parsed(cli: &Cli) -> Result<i32, CliError> {
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let output = pool.install(|| execute(&cli.command, cli.format))?;
    match &cli.out {
        Some(path) => std::fs::write(path, &output.body)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{}", output.body),
    }
    Ok(output.exit_code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_literals() {
        assert_eq!(
            parse_partition_text("[5,4,2,2,1,1]").unwrap(),
            p(&[5, 4, 2, 2, 1, 1])
        );
        assert_eq!(parse_partition_text("[]").unwrap(), Partition::empty());
        let err = parse_partition_text("[2,3]").unwrap_err();
        assert!(err.to_string().contains("parts must be weakly decreasing"));
    }

    #[test]
    fn kdata_tables_render_as_triangles() {
        let ex = render_kdata(&k_data(&p(&[5, 4, 2, 2, 1, 1]), 2).unwrap());
        assert_eq!(ex, "      [1]\n    [] [1]\n[1,1] [1] [] []\n");
        let trimmed: Vec<&str> = ex.lines().map(str::trim).collect();
        assert_eq!(trimmed, vec!["[1]", "[] [1]", "[1,1] [1] [] []"]);

        let one = render_kdata(&k_data(&p(&[1]), 1).unwrap());
        let trimmed: Vec<&str> = one.lines().map(str::trim).collect();
        assert_eq!(trimmed, vec!["[1]", "[] []"]);

        let mu = render_kdata(&k_data(&p(&[3, 2, 2, 2, 1, 1]), 2).unwrap());
        let trimmed: Vec<&str> = mu.lines().map(str::trim).collect();
        assert_eq!(trimmed, vec!["[1]", "[] [1]", "[1,1] [] [] []"]);
    }

    fn exec(args: &[&str]) -> Result<Output, CliError> {
        let cli =
            Cli::try_parse_from(std::iter::once("oddmaps").chain(args.iter().copied())).unwrap();
        execute(&cli.command, cli.format)
    }

    #[test]
    fn commands_render() {
        let out = exec(&["fk", "--n", "15", "--k", "2", "--lambda", "[5,4,2,2,1,1]"]).unwrap();
        assert_eq!(out, Output::ok("[3,2,2,2,1,1]\n".into()));

        let out = exec(&["fiber", "--n", "6", "--k", "2", "--mu", "[2]"]).unwrap();
        assert_eq!(out.body, "[6]\n[3,3]\n[2,2,1,1]\n[2,1,1,1,1]\nsize: 4\n");

        let out = exec(&[
            "--format", "csv", "witness", "--n", "12", "--k", "1", "--l", "2",
        ])
        .unwrap();
        assert_eq!(out.body, "n,k,l,witness\n12,1,2,\"[6,4,2]\"\n");

        let out = exec(&["verify", "--max-n", "6"]).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
    }

    #[test]
    fn usage_errors() {
        let err = exec(&["fk", "--n", "14", "--k", "2", "--lambda", "[5,4,2,2,1,1]"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let err = exec(&["fk", "--k", "0", "--lambda", "[2,1]"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let err = exec(&["tower", "--k", "0", "--lambda", "[2,1]"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let err =
            Cli::try_parse_from(["oddmaps", "fk", "--k", "0", "--lambda", "[2,3]"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }
}
