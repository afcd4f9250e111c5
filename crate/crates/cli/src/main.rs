use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};
use stieltjes_core::harness::compute::{compute, ComputeParams, IndexRange, Target};
use stieltjes_core::harness::{registry, verify, OutputFormat, RunConfig, Verdict};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ACCURACY: u8 = 3;

#[derive(Parser)]
#[command(name = "stieltjes", version, about = "Stieltjes constants, tail constants and identity checks")]
struct Cli {
    /// TOML run configuration; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Working precision in bits.
    #[arg(long, env = "STIELTJES_PREC", value_name = "BITS")]
    prec: Option<u32>,
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a table of constants.
    Compute {
        #[arg(value_parser = parse_target)]
        target: Target,
        #[arg(long, value_parser = parse_range)]
        j: Option<IndexRange>,
        #[arg(long, value_parser = parse_range)]
        k: Option<IndexRange>,
        #[arg(long, value_parser = parse_range)]
        n: Option<IndexRange>,
        /// Shift parameter, e.g. 0.5 or 1/3.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Sieve cutoff for the arithmetic η route.
        #[arg(long)]
        cutoff: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run registry identities whose id matches FILTER (a glob).
    Verify {
        filter: Option<String>,
        /// Leave the timestamp out so reruns are byte-identical.
        #[arg(long)]
        no_timestamp: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print the registry ids.
    List,
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<IndexRange, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, String> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            toml::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

fn apply(cfg: &mut RunConfig, out: Output) {
    if let Some(p) = out.prec {
        cfg.precision_bits = p;
    }
    if let Some(f) = out.format {
        cfg.format = f;
    }
    if out.out.is_some() {
        cfg.output = out.out;
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), String> {
    match &cfg.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    match cli.command {
        Command::List => {
            for c in registry() {
                println!("{}\t{}", c.id, c.equation_refs.join(","));
            }
            ExitCode::SUCCESS
        }
        Command::Compute {
            target,
            j,
            k,
            n,
            a,
            cutoff,
            output,
        } => {
            apply(&mut cfg, output);
            if let Err(e) = cfg.validate() {
                return usage(e);
            }
            let params = ComputeParams { j, k, n, a, cutoff };
            let table = match compute(target, &params, &cfg.context()) {
                Ok(t) => t,
                Err(e) => return usage(e),
            };
            if let Err(e) = emit(&cfg, &table.render(cfg.format)) {
                return usage(e);
            }
            match &table.error {
                Some(e) => {
                    eprintln!("incomplete: {e}");
                    ExitCode::from(EXIT_ACCURACY)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Command::Verify {
            filter,
            no_timestamp,
            output,
        } => {
            apply(&mut cfg, output);
            if let Some(f) = filter {
                cfg.filter = f;
            }
            if let Err(e) = cfg.validate() {
                return usage(e);
            }
            let stamp = (!no_timestamp).then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
            let report = match verify(&cfg, stamp) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            if let Err(e) = emit(&cfg, &report.render(cfg.format)) {
                return usage(e);
            }
            let fails = report.count(Verdict::Fail);
            eprintln!(
                "{} pass, {} fail, {} inconclusive",
                report.count(Verdict::Pass),
                fails,
                report.count(Verdict::Inconclusive)
            );
            if fails > 0 {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
