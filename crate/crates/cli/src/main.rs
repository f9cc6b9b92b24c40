use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use time::OffsetDateTime;
use toscasmell_core::{
    export_graph, render_rules_json, render_rules_text, scan_source, ConfigOverrides, RuleConfig,
    ScanError, ScanReport,
};
use toscasmell_service::{ServiceConfig, DEFAULT_MAX_BODY_BYTES};

const CLEAN: u8 = 0;
const SMELLS: u8 = 1;
const FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "toscasmell",
    version,
    about = "Find security and naming smells in TOSCA models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan files; exit 0 when clean, 1 when smells are found, 2 on errors.
    Scan {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        rules: RuleArgs,
        /// Add the scan time to each report.
        #[arg(long)]
        timestamp: bool,
    },
    /// Print the mapped graph as N-Triples.
    ExportGraph {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// List the rules.
    Rules {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, env = "TOSCASMELL_LISTEN", default_value = "127.0.0.1:8080")]
        listen: SocketAddr,
        #[arg(long, env = "TOSCASMELL_MAX_BODY_BYTES", default_value_t = DEFAULT_MAX_BODY_BYTES)]
        max_body_bytes: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RuleArgs {
    /// Only run these rules (comma-separated ids).
    #[arg(long, value_delimiter = ',')]
    enable: Option<Vec<String>>,
    /// Skip these rules.
    #[arg(long, value_delimiter = ',')]
    disable: Option<Vec<String>>,
    /// camel, snake, dash or auto.
    #[arg(long)]
    convention: Option<String>,
    /// Smallest acceptable key size in bits [default: 2048].
    #[arg(long)]
    min_key_size: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    suspicious_keywords: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    insecure_schemes: Option<Vec<String>>,
    /// Regex fragments matched at word boundaries.
    #[arg(long, value_delimiter = ',')]
    weak_algorithms: Option<Vec<String>>,
    /// Show secret values in full.
    #[arg(long)]
    no_redact: bool,
}

impl RuleArgs {
    fn overrides(&self) -> ConfigOverrides {
        let join = |v: &Option<Vec<String>>| v.as_ref().map(|items| items.join(","));
        ConfigOverrides {
            enable: join(&self.enable),
            disable: join(&self.disable),
            convention: self.convention.clone(),
            min_key_size: self.min_key_size,
            suspicious_keywords: join(&self.suspicious_keywords),
            insecure_schemes: join(&self.insecure_schemes),
            weak_algorithms: join(&self.weak_algorithms),
            no_redact: self.no_redact,
        }
    }
}

enum Outcome {
    Report(ScanReport),
    Failed(String),
}

fn scan_file(path: &PathBuf, config: &RuleConfig) -> Outcome {
    let name = path.display().to_string();
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return Outcome::Failed(format!("{name}: {e}")),
    };
    match scan_source(&source, &name, config) {
        Ok(report) => Outcome::Report(report),
        Err(ScanError::Parse(p)) => Outcome::Failed(
            p.diagnostics
                .iter()
                .map(|d| format!("{name}:{d}"))
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        Err(e) => Outcome::Failed(format!("{name}: {e}")),
    }
}

fn scan(paths: &[PathBuf], format: Format, rules: &RuleArgs, timestamp: bool) -> u8 {
    let config = match rules.overrides().to_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return FAILURE;
        }
    };
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| s.spawn(|| scan_file(p, &config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan thread"))
            .collect()
    });
    let mut stdout = std::io::stdout().lock();
    let mut code = CLEAN;
    for outcome in outcomes {
        match outcome {
            Outcome::Report(mut report) => {
                for d in &report.diagnostics {
                    eprintln!("{}:{d}", report.file);
                }
                if timestamp {
                    report = report.with_timestamp(OffsetDateTime::now_utc());
                }
                let text = match format {
                    Format::Json => report.render_json() + "\n",
                    Format::Text => report.render_text(),
                };
                if stdout.write_all(text.as_bytes()).is_err() {
                    return FAILURE;
                }
                if report.total > 0 && code == CLEAN {
                    code = SMELLS;
                }
            }
            Outcome::Failed(message) => {
                eprintln!("{message}");
                code = FAILURE;
            }
        }
    }
    code
}

fn export(paths: &[PathBuf]) -> u8 {
    let mut stdout = std::io::stdout().lock();
    for path in paths {
        let name = path.display().to_string();
        let result = std::fs::read_to_string(path)
            .map_err(|e| format!("{name}: {e}"))
            .and_then(|s| export_graph(&s, &name).map_err(|e| format!("{name}: {e}")));
        match result {
            Ok(nt) => {
                if stdout.write_all(nt.as_bytes()).is_err() {
                    return FAILURE;
                }
            }
            Err(message) => {
                eprintln!("{message}");
                return FAILURE;
            }
        }
    }
    CLEAN
}

fn serve(listen: SocketAddr, max_body_bytes: usize) -> u8 {
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return FAILURE;
        }
    };
    eprintln!("listening on {listen}");
    match runtime.block_on(toscasmell_service::serve(
        listen,
        ServiceConfig { max_body_bytes },
    )) {
        Ok(()) => CLEAN,
        Err(e) => {
            eprintln!("error: {e}");
            FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Scan {
            paths,
            format,
            rules,
            timestamp,
        } => scan(paths, *format, rules, *timestamp),
        Command::ExportGraph { paths } => export(paths),
        Command::Rules { format } => {
            match format {
                Format::Json => println!("{}", render_rules_json()),
                Format::Text => print!("{}", render_rules_text()),
            }
            CLEAN
        }
        Command::Serve {
            listen,
            max_body_bytes,
        } => serve(*listen, *max_body_bytes),
    };
    ExitCode::from(code)
}
