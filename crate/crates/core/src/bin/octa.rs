use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use octa::cli::{
    cmd_analyze, cmd_table, cmd_verify, cmd_wl_stabilize, parse_check_level, render_analysis, render_stabilize,
    render_table, render_verify, Format, RunOptions, DEFAULT_MAX_POINTS,
};
use octa::scheme::CheckMode;

#[derive(Parser)]
#[command(name = "octa", version, about = "Octahedral designs over PSL(2,q) and their association schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// json, tsv or text
    #[arg(long, global = true, default_value = "text", value_parser = |s: &str| s.parse::<Format>().map_err(|e| e.to_string()))]
    format: Format,
    /// field spec `p alpha c0 .. c_alpha` (monic modulus, low degree first)
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// multiplicative generator as coefficients, constant term first
    #[arg(long, global = true)]
    generator: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: usize,
    /// run past --max-points
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true)]
    dump_design: Option<PathBuf>,
    /// WL scheme matrix; the tensor goes to PATH.tensor
    #[arg(long, global = true)]
    dump_scheme: Option<PathBuf>,
    /// full or sampled; by default full up to 702 points
    #[arg(long, global = true, value_parser = |s: &str| parse_check_level(s).map_err(|e| e.to_string()))]
    check_level: Option<CheckMode>,
    /// add per-phase timings to the report
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline for one q
    Analyze { q: u64 },
    /// One row per admissible q
    Table {
        #[arg(long, default_value_t = 49)]
        max_q: u64,
        /// compare with the published values
        #[arg(long)]
        expected: bool,
    },
    /// Every invariant check for one q
    Verify { q: u64 },
    /// Coherent closure of a coloring file
    WlStabilize {
        #[arg(long)]
        input: PathBuf,
    },
}

fn init_threads() {
    if let Some(n) = std::env::var("OCTA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    init_threads();
    let c = cli.common;
    let opts = RunOptions {
        modulus: c.modulus,
        generator: c.generator,
        max_points: c.max_points,
        force: c.force,
        check: c.check_level,
        dump_design: c.dump_design,
        dump_scheme: c.dump_scheme,
        timings: c.timings,
    };
    let (out, code) = match cli.command {
        Command::Analyze { q } => match cmd_analyze(q, &opts) {
            Ok(r) => (render_analysis(&r, c.format), 0),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
        Command::Table { max_q, expected } => {
            let t = cmd_table(max_q, expected, &opts);
            (render_table(&t, c.format), t.exit_code())
        }
        Command::Verify { q } => match cmd_verify(q, &opts) {
            Ok(v) => (render_verify(&v, c.format), v.exit_code()),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
        Command::WlStabilize { input } => {
            let text = match std::fs::read_to_string(&input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}: {e}", input.display());
                    return ExitCode::from(3);
                }
            };
            match cmd_wl_stabilize(&text, &opts) {
                Ok(r) => (render_stabilize(&r, c.format), 0),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            }
        }
    };
    print!("{out}");
    ExitCode::from(code as u8)
}
