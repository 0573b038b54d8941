mod job;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genusfield::par::Exec;
use genusfield::parse::split_top_level;
use genusfield::selftest::{self, DEFAULT_SELFTEST_SEED};
use genusfield::Error;
use job::{field_input_from_q, FieldInput, Job, JobSpec, Options, Output};

#[derive(Parser)]
#[command(name = "genusfield", version, about = "Genus fields of abelian extensions of F_q(T)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// K = k(root(l, gamma D))
    Kummer(KummerArgs),
    /// K = k(y), y^p - y = alpha
    As(AsArgs),
    /// K = k(y), F(y) -W y = beta in W_n(k)
    Witt(WittArgs),
    /// subfield of k(Lambda_N) cut out by a group of Dirichlet characters
    Cyclo(CycloArgs),
    /// run the brute-force oracle suites
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    /// field size q = p^f
    #[arg(long, required_unless_present = "input")]
    q: Option<u64>,
    /// defining polynomial of F_q over F_p in the variable u
    #[arg(long)]
    modulus: Option<String>,
    /// seed for polynomial factorization
    #[arg(long)]
    seed: Option<u64>,
    /// largest accepted Witt length
    #[arg(long = "witt-cap")]
    witt_cap: Option<usize>,
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// JSON job file; replaces the inline job flags
    #[arg(long = "in", value_name = "PATH", conflicts_with_all = ["q", "modulus"])]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct KummerArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    l: Option<u32>,
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    gamma: Option<String>,
    #[arg(long = "D", required_unless_present = "input", conflicts_with = "input")]
    d: Option<String>,
}

#[derive(Args)]
struct AsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    alpha: Option<String>,
}

#[derive(Args)]
struct WittArgs {
    #[command(flatten)]
    common: Common,
    /// comma-separated entries, e.g. "1/T+1, 1/(T+1)+T"
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    beta: Option<String>,
}

#[derive(Args)]
struct CycloArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "N", required_unless_present = "input", conflicts_with = "input")]
    n: Option<String>,
    /// exponent vectors separated by ';', entries by ','; e.g. "1,0;0,2"
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    chars: Option<String>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    output: Option<Output>,
}

fn validation(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn parse_chars(s: &str) -> Result<Vec<Vec<i64>>, Error> {
    s.split(';')
        .filter(|v| !v.trim().is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad character exponent '{}'", x.trim()))))
                .collect()
        })
        .collect()
}

fn spec_from(common: &Common, command: &str, inline: impl FnOnce() -> Result<Job, Error>) -> Result<JobSpec, Error> {
    let mut spec = match &common.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| validation(format!("cannot read {}: {}", path.display(), e)))?;
            let spec: JobSpec = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
            if spec.job.command() != command {
                return Err(validation(format!(
                    "{} describes a '{}' job, not '{}'",
                    path.display(),
                    spec.job.command(),
                    command
                )));
            }
            spec
        }
        None => {
            let q = common.q.ok_or_else(|| validation("--q is required"))?;
            let field: FieldInput = field_input_from_q(q, common.modulus.clone())?;
            JobSpec { field, job: inline()?, options: Options::default() }
        }
    };
    if common.seed.is_some() {
        spec.options.seed = common.seed;
    }
    if common.witt_cap.is_some() {
        spec.options.witt_cap = common.witt_cap;
    }
    if common.output.is_some() {
        spec.options.output = common.output;
    }
    Ok(spec)
}

/// Runs one subcommand, returning the document to print and the exit code.
fn execute(cmd: Cmd) -> Result<(String, u8), Error> {
    let spec = match cmd {
        Cmd::Kummer(a) => spec_from(&a.common, "kummer", || {
            Ok(Job::Kummer { l: a.l.unwrap(), gamma: a.gamma.clone().unwrap(), d: a.d.clone().unwrap() })
        }),
        Cmd::As(a) => spec_from(&a.common, "as", || Ok(Job::ArtinSchreier { alpha: a.alpha.clone().unwrap() })),
        Cmd::Witt(a) => spec_from(&a.common, "witt", || {
            let beta = a.beta.as_deref().unwrap();
            let s = beta.trim();
            let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).filter(|x| split_top_level(x).len() > 1).unwrap_or(s);
            Ok(Job::Witt { beta: split_top_level(s).into_iter().map(String::from).collect() })
        }),
        Cmd::Cyclo(a) => spec_from(&a.common, "cyclo", || {
            Ok(Job::Cyclotomic { n: a.n.clone().unwrap(), characters: parse_chars(a.chars.as_deref().unwrap())? })
        }),
        Cmd::Selftest(a) => {
            let seed = a.seed.unwrap_or(DEFAULT_SELFTEST_SEED);
            let reports = selftest::run_all(Exec::default(), seed);
            let ok = reports.iter().all(|r| r.passed());
            let text = match a.output.unwrap_or(Output::Text) {
                Output::Text => render::selftest_text(&reports),
                Output::Json => render::canonical_json(&render::SelftestRecord::new(seed, &reports)),
            };
            return Ok((text, if ok { 0 } else { 3 }));
        }
    }?;
    let result = job::run(&spec)?;
    let text = match spec.options.output.unwrap_or(Output::Text) {
        Output::Text => render::text(&result),
        Output::Json => render::canonical_json(&result),
    };
    Ok((text, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.cmd) {
        Ok((out, code)) => {
            print!("{}", out);
            if code != 0 {
                eprintln!("genusfield: some oracle suites failed");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("genusfield: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for anything wrong with the input, 3 for a failed internal check.
fn exit_code(e: &Error) -> u8 {
    if e.is_internal() {
        3
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), 3);
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::Degenerate("x".into())), 2);
        assert_eq!(exit_code(&Error::LengthCap { n: 5, cap: 4 }), 2);
    }

    #[test]
    fn character_lists() {
        assert_eq!(parse_chars("1,0; 0,2").unwrap(), vec![vec![1, 0], vec![0, 2]]);
        assert!(parse_chars("1,x").is_err());
    }
}
