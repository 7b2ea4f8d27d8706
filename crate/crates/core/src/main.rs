use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use condrev::script::{self, Format};
use condrev::verify::{self, Scope, DEFAULT_SAMPLES, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "condrev", version, about = "Revision of plausibility orders by conditionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script (from FILE, or stdin when omitted)
    Run {
        file: Option<PathBuf>,
        /// Emit a JSON report instead of text
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; exits nonzero on any failure
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::GoldenExamples)]
        scope: SuiteArg,
        /// Seed for the sampled suite
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Instances drawn by the sampled suite
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    GoldenExamples,
    N2Exhaustive,
    N3Sampled,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { file, json } => {
            let source = match file {
                Some(path) => std::fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map(|_| s)
                        .map_err(|e| format!("stdin: {e}"))
                }
            };
            let source = match source {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let format = if json { Format::Json } else { Format::Text };
            match script::run_script(&source, format) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::Verify { scope, seed, samples, json } => {
            let scope = match scope {
                SuiteArg::GoldenExamples => Scope::GoldenExamples,
                SuiteArg::N2Exhaustive => Scope::N2Exhaustive,
                SuiteArg::N3Sampled => Scope::N3Sampled { seed, samples },
            };
            let report = match verify::verify(scope) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            } else {
                print!("{}", report.render_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
