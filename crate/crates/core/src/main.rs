use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use drinfeld_ut::fixtures;
use drinfeld_ut::report::{self, Format, Level};
use drinfeld_ut::verify::{run_theorem, TheoremId};
use drinfeld_ut::{CuspidalMode, Error, FieldParams, WeightParams};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "drinfeld-ut", version, about = "Exact U_t matrices on Drinfeld cusp forms of level t")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Single,
    Double,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Gamma1,
    Gamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<ModeArg> for CuspidalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Single => CuspidalMode::Single,
            ModeArg::Double => CuspidalMode::Double,
        }
    }
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Gamma1 => Level::Gamma1,
            LevelArg::Gamma => Level::Gamma,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print every block of U_t for one weight.
    Matrix {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "single")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "gamma1")]
        level: LevelArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Report every block for a range of weights.
    Scan {
        #[arg(long)]
        q: u64,
        #[arg(long, required = true, num_args = 2, value_names = ["MIN", "MAX"])]
        k_range: Vec<u64>,
        #[arg(long, value_enum, default_value = "single")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "gamma1")]
        level: LevelArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Run theorem-verification suites.
    Verify {
        /// Comma-separated ids (T3.1, T3.2, T4.3, T4.5, S4.2, T5.1); all if omitted.
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<String>,
        /// Comma-separated q values; each suite's default list if omitted.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long)]
        k_bound: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the regression fixtures and compare bit-exact.
    Fixtures {
        /// Directory of `*.txt` fixtures; the bundled set if omitted.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn check_q(q: u64) -> Result<(), ExitCode> {
    FieldParams::from_q(q).map(|_| ()).map_err(usage)
}

fn emit(text: &str) -> ExitCode {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error for a report stream
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    ExitCode::SUCCESS
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Matrix { q, k, mode, level, format } => {
            if let Err(code) = check_q(q) {
                return code;
            }
            let params = match WeightParams::for_q(q, k, mode.into()) {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            match report::block_reports(&params, level.into()) {
                Ok(r) => emit(&report::render(&r, format.into())),
                Err(e) => usage(e),
            }
        }
        Command::Scan { q, k_range, mode, level, format } => {
            if let Err(code) = check_q(q) {
                return code;
            }
            let (k_min, k_max) = (k_range[0], k_range[1]);
            if k_min > k_max {
                return emit(&report::render(&[], format.into()));
            }
            match report::scan_reports(q, k_min, k_max, mode.into(), level.into()) {
                Ok(r) => emit(&report::render(&r, format.into())),
                Err(e) => usage(e),
            }
        }
        Command::Verify { theorems, q, k_bound, json } => {
            let ids: Vec<TheoremId> = if theorems.is_empty() {
                TheoremId::ALL.to_vec()
            } else {
                match theorems.iter().map(|s| s.parse()).collect::<Result<_, Error>>() {
                    Ok(ids) => ids,
                    Err(e) => return usage(e),
                }
            };
            for &qv in &q {
                if let Err(code) = check_q(qv) {
                    return code;
                }
            }
            let q_list = (!q.is_empty()).then_some(q.as_slice());
            let mut results = Vec::new();
            for id in ids {
                match run_theorem(id, q_list, k_bound) {
                    Ok(r) => results.push(r),
                    Err(e) => return usage(format!("{id}: {e}")),
                }
            }
            if json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&results).expect("serialize")));
            } else {
                let lines: Vec<String> = results.iter().map(ToString::to_string).collect();
                emit(&format!("{}\n", lines.join("\n")));
            }
            if results.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Command::Fixtures { dir } => {
            let loaded = match &dir {
                Some(d) => fixtures::load_dir(d),
                None => fixtures::bundled(),
            };
            let set = match loaded {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let mut ok = true;
            let mut out = String::new();
            for fx in &set {
                match fx.check() {
                    Ok(diffs) if diffs.is_empty() => out += &format!("{}: ok ({} blocks)\n", fx.name, fx.blocks.len()),
                    Ok(diffs) => {
                        ok = false;
                        out += &format!("{}: MISMATCH\n{}", fx.name, fixtures::render_diff(fx, &diffs));
                    }
                    Err(e) => {
                        ok = false;
                        out += &format!("{}: error: {e}\n", fx.name);
                    }
                }
            }
            emit(&out);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    run(cli)
}
