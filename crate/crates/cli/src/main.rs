use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use m22v::claims::{exit_code, list_claims, summary_table, verify, Config};

/// Environment variable naming the data directory when `--data` is not given.
const DATA_ENV: &str = "M22V_DATA";
/// Environment variable naming a configuration file when `--config` is not given.
const CONFIG_ENV: &str = "M22V_CONFIG";

#[derive(Parser)]
#[command(name = "m22v", version, about = "Recompute and check the M22 cover claims")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one claim, or `all`, printing one JSON report per line.
    Verify {
        claim: String,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        lambda: Option<u64>,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write the JSON lines here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// key=value configuration file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Claim ids, expected runtimes and descriptions.
    List,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("m22v: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            let mut out = std::io::stdout().lock();
            for c in list_claims() {
                let _ = writeln!(out, "{:<18} {:<28} {}", c.id, c.expected_runtime, c.description);
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            claim,
            threads,
            seed,
            lambda,
            data,
            checkpoint,
            json,
            config,
        } => {
            let mut cfg = Config::default();
            if let Ok(dir) = std::env::var(DATA_ENV) {
                cfg.data_dir = PathBuf::from(dir);
            }
            let config = config.or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
            if let Some(path) = config {
                let text = match std::fs::read_to_string(&path) {
                    Ok(t) => t,
                    Err(e) => return fail(format!("cannot read {}: {e}", path.display())),
                };
                if let Err(e) = cfg.apply_file_text(&text) {
                    return fail(e);
                }
            }
            if let Some(v) = threads {
                cfg.threads = v.max(1);
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = lambda {
                cfg.lambda = v;
            }
            if let Some(v) = data {
                cfg.data_dir = v;
            }
            if checkpoint.is_some() {
                cfg.checkpoint = checkpoint;
            }
            // the global pool serves the census and group code; point counting builds its own
            let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();

            let reports = match verify(&claim, &cfg) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let sink: Box<dyn Write> = match &json {
                Some(path) => match File::create(path) {
                    Ok(f) => Box::new(f),
                    Err(e) => return fail(format!("cannot create {}: {e}", path.display())),
                },
                None => Box::new(std::io::stdout().lock()),
            };
            let mut sink = BufWriter::new(sink);
            for r in &reports {
                if let Err(e) = writeln!(sink, "{}", r.to_json_line()) {
                    return fail(e);
                }
            }
            if let Err(e) = sink.flush() {
                return fail(e);
            }
            eprint!("{}", summary_table(&reports));
            ExitCode::from(exit_code(&reports) as u8)
        }
    }
}
