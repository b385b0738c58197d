use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use wsa::cli::{self, Input, Outcome};

#[derive(Parser)]
#[command(name = "wsa", version, about = "Build, resolve and compare socle deformed weighted surface algebras")]
struct Args {
    /// add wall-clock time to the report
    #[arg(long, global = true)]
    timing: bool,
    /// compact single-line JSON
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an algebra and report basis, Cartan matrix, socle and symmetry
    Build { spec: PathBuf },
    /// Syzygy orbit of a simple or projective module
    Syzygy {
        spec: PathBuf,
        /// S<vertex> or P<vertex>
        #[arg(long, default_value = "S1")]
        module: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Isomorphism search with witness or exhaustion certificate
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// node budget (default from WSA_BUDGET, then 1e8)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Isomorphism search on the socle quotients
    SocleEquiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the bundled verification suites
    VerifyPaper {
        #[arg(long, default_value = "all", value_parser = ["dims", "periods", "iso", "bimodule", "all"])]
        suite: String,
    },
}

fn run(cmd: &Cmd, timing: bool) -> wsa::Result<Outcome> {
    match cmd {
        Cmd::Build { spec } => cli::cmd_build(&Input::load(spec)?),
        Cmd::Syzygy { spec, module, steps } => cli::cmd_syzygy(&Input::load(spec)?, module, *steps),
        Cmd::Iso { a, b, budget } => cli::cmd_iso(&Input::load(a)?, &Input::load(b)?, *budget),
        Cmd::SocleEquiv { a, b, budget } => cli::cmd_socle_equiv(&Input::load(a)?, &Input::load(b)?, *budget),
        Cmd::VerifyPaper { suite } => cli::cmd_verify_paper(suite, timing),
    }
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Build { .. } => "build",
        Cmd::Syzygy { .. } => "syzygy",
        Cmd::Iso { .. } => "iso",
        Cmd::SocleEquiv { .. } => "socle-equiv",
        Cmd::VerifyPaper { .. } => "verify-paper",
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut out = run(&args.cmd, args.timing).unwrap_or_else(|e| {
        eprintln!("wsa: {e}");
        cli::error_outcome(name(&args.cmd), &e)
    });
    if args.timing {
        out.report["elapsed_ms"] = serde_json::json!(start.elapsed().as_millis() as u64);
    }
    let text = if args.compact { serde_json::to_string(&out.report) } else { serde_json::to_string_pretty(&out.report) };
    println!("{}", text.expect("reports serialize"));
    ExitCode::from(out.code as u8)
}
