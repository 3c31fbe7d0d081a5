use std::path::PathBuf;

use clap::{Parser, Subcommand};
use minilog::cli;
use minilog_core::autoprove::SearchConfig;

#[derive(Parser)]
#[command(name = "minilog", version, about = "Proof checking, replay and search for minimal first-order logic")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check derivation files with the kernel.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run a tactic script against a theorem.
    Replay {
        theorem: PathBuf,
        script: PathBuf,
        /// Write the kernel derivation of a finished proof here.
        #[arg(long, value_name = "OUT")]
        emit_derivation: Option<PathBuf>,
        /// Print every intermediate goal list.
        #[arg(long)]
        trace: bool,
    },
    /// Search for a tactic script.
    Auto {
        theorem: PathBuf,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        nodes: usize,
    },
    /// Serve the session API.
    Serve {
        #[arg(long, env = "MINILOG_PORT", default_value_t = 8080)]
        port: u16,
        /// Keep session logs in this directory and restore them on start.
        #[arg(long, value_name = "DIR")]
        persist: Option<PathBuf>,
    },
}

fn main() {
    let args = Args::parse();
    let (mut out, mut err) = (std::io::stdout(), std::io::stderr());
    let code = match args.command {
        Command::Check { files } => cli::check(&files, &mut out, &mut err),
        Command::Replay {
            theorem,
            script,
            emit_derivation,
            trace,
        } => cli::replay(&theorem, &script, emit_derivation.as_deref(), trace, &mut out, &mut err),
        Command::Auto { theorem, depth, nodes } => {
            let cfg = SearchConfig {
                max_depth: depth,
                max_nodes: nodes,
                ..SearchConfig::default()
            };
            cli::auto(&theorem, &cfg, &mut out, &mut err)
        }
        Command::Serve { port, persist } => {
            let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
            match rt.block_on(minilog::server::serve(port, persist)) {
                Ok(()) => cli::OK,
                Err(e) => {
                    eprintln!("serve: {e}");
                    cli::BAD_INPUT
                }
            }
        }
    };
    std::process::exit(code);
}
