use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use germlab::{catalog, exit, exit_code_for};
use germlab_core::bases::Limits;
use regex::Regex;

#[derive(Parser)]
#[command(name = "germlab", version, about = "Multiple point spaces and image Milnor numbers of corank-one map germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Largest S-pair degree before giving up
    #[arg(long, default_value_t = Limits::default().max_pair_degree)]
    max_degree: u32,
    /// Largest basis size before giving up
    #[arg(long, default_value_t = Limits::default().max_basis)]
    max_basis: usize,
}

impl From<LimitArgs> for Limits {
    fn from(a: LimitArgs) -> Self {
        Limits { max_pair_degree: a.max_degree, max_basis: a.max_basis }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one germ file
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Analyse a one-parameter family at sampled parameter values
    Family {
        file: PathBuf,
        /// Comma-separated rational parameter values
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Run the built-in regression catalog
    Catalog {
        /// Only entries whose name matches this regular expression
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze { file, json, limits } => {
            let result = germlab::read_germ_file(&file).and_then(|f| germlab::analyze(&f, &limits.into()));
            match result {
                Ok((report, timings)) => {
                    if json {
                        println!("{}", to_json(&report));
                    } else {
                        print!("{}{}", report.render_text(), timings.render());
                    }
                    if report.unsupported.is_some() {
                        exit::UNSUPPORTED
                    } else {
                        exit::OK
                    }
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    exit_code_for(&e)
                }
            }
        }
        Command::Family { file, samples, json, limits } => {
            let limits: Limits = limits.into();
            let result = germlab::parse_samples(samples.as_deref().unwrap_or(""))
                .and_then(|s| germlab::read_germ_file(&file).map(|f| (f, s)))
                .and_then(|(f, s)| germlab::family(&f, &s, &limits));
            match result {
                Ok((report, timings)) => {
                    if json {
                        println!("{}", to_json(&report));
                    } else {
                        print!("{}{}", report.render_text(), timings.render());
                    }
                    match &report.semicontinuity {
                        Some(s) if !s.holds => exit::ERROR,
                        _ => exit::OK,
                    }
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    exit_code_for(&e)
                }
            }
        }
        Command::Catalog { filter, json } => {
            let filter = match filter.as_deref().map(Regex::new).transpose() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: invalid filter: {e}");
                    return exit::ERROR;
                }
            };
            let summary = catalog::run(filter.as_ref(), &Limits::default());
            if json {
                println!("{}", to_json(&summary));
            } else {
                print!("{}", summary.render_text());
            }
            if summary.failed == 0 {
                exit::OK
            } else {
                exit::ERROR
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = germlab::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(exit::ERROR as u8);
    }
    ExitCode::from(run(cli) as u8)
}
