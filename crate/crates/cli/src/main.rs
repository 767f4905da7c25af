use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use zetaline_core::report::{self, Command, Format, NuMethod, RunConfig, ZetaMethod};
use zetaline_core::Complex;

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "zetaline",
    version,
    about = "Line integrals of the zeta function against sech, checked three ways"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Target tolerance; also tightens every verification threshold.
    #[arg(long, global = true, env = "ZETALINE_TOL", default_value_t = report::DEFAULT_TOL, allow_negative_numbers = true)]
    tol: f64,

    /// Largest trapezoid grid per line integral.
    #[arg(long, global = true, default_value_t = 1 << 17)]
    max_nodes: usize,

    /// Fixed truncation half-width for line integrals (automatic when absent).
    #[arg(long, global = true)]
    trunc_x: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Stamp the report with the current Unix time (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timestamp: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate nu(omega).
    Nu {
        /// RE or RE,IM
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        omega: Complex,
        #[arg(long, value_enum, default_value_t = NuArg::Series)]
        method: NuArg,
    },
    /// Evaluate zeta(s).
    Zeta {
        /// RE or RE,IM
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex,
        #[arg(long, value_enum, default_value_t = ZetaArg::Em)]
        method: ZetaArg,
    },
    /// List the built-in constants with their provenance.
    Constants,
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// The five closed-form integrals.
    Corollary,
    /// Seeded cross-method agreement sweep.
    Cross(CrossArgs),
    /// Numerical replay of the contour argument.
    Proof(ProofArgs),
    /// Every suite.
    All {
        #[command(flatten)]
        cross: CrossArgs,
        #[command(flatten)]
        proof: ProofArgs,
    },
}

#[derive(Args, Debug)]
struct CrossArgs {
    #[arg(long, default_value_t = report::DEFAULT_SEED)]
    seed: u64,
    /// Points in the main sweep.
    #[arg(long, default_value_t = report::DEFAULT_CROSS_COUNT)]
    count: usize,
}

#[derive(Args, Debug)]
struct ProofArgs {
    #[arg(long, default_value_t = report::DEFAULT_R_MAX, value_parser = clap::value_parser!(u32).range(1..))]
    r_max: u32,
    /// Extra omega for the residue and assembly checks.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    omega: Option<Complex>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NuArg {
    Series,
    HalfLine,
    ThreeHalves,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ZetaArg {
    Em,
    Eta,
}

fn parse_complex(s: &str) -> Result<Complex, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex::new(num(re)?, 0.0),
        [re, im] => Complex::new(num(re)?, num(im)?),
        _ => return Err(format!("expected RE or RE,IM, got `{s}`")),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(z)
}

/// `verify-corollary` and friends are accepted as spellings of `verify corollary`.
fn expand_aliases(args: Vec<OsString>) -> Vec<OsString> {
    let mut out = Vec::with_capacity(args.len() + 1);
    let mut expanded = false;
    for (i, a) in args.into_iter().enumerate() {
        let suite = a
            .to_str()
            .and_then(|s| s.strip_prefix("verify-"))
            .filter(|s| matches!(*s, "corollary" | "cross" | "proof" | "all"))
            .map(str::to_owned);
        match suite {
            Some(s) if i > 0 && !expanded => {
                out.push(OsString::from("verify"));
                out.push(OsString::from(s));
                expanded = true;
            }
            _ => out.push(a),
        }
    }
    out
}

fn to_config(cli: Cli) -> RunConfig {
    let command = match &cli.command {
        Cmd::Nu { .. } => Command::Nu,
        Cmd::Zeta { .. } => Command::Zeta,
        Cmd::Constants => Command::Constants,
        Cmd::Verify { suite } => match suite {
            Suite::Corollary => Command::VerifyCorollary,
            Suite::Cross(_) => Command::VerifyCross,
            Suite::Proof(_) => Command::VerifyProof,
            Suite::All { .. } => Command::VerifyAll,
        },
    };
    let mut cfg = RunConfig::new(command);
    cfg.tol = cli.tol;
    cfg.max_nodes = cli.max_nodes;
    cfg.trunc_x = cli.trunc_x;
    cfg.format = match cli.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    cfg.output_path = cli.output;
    cfg.timestamp = cli.timestamp;
    let apply_cross = |c: &CrossArgs, cfg: &mut RunConfig| {
        cfg.seed = c.seed;
        cfg.count = c.count;
    };
    let apply_proof = |p: &ProofArgs, cfg: &mut RunConfig| {
        cfg.r_max = p.r_max;
        cfg.omega = p.omega;
    };
    match cli.command {
        Cmd::Nu { omega, method } => {
            cfg.omega = Some(omega);
            cfg.nu_method = match method {
                NuArg::Series => NuMethod::Series,
                NuArg::HalfLine => NuMethod::HalfLine,
                NuArg::ThreeHalves => NuMethod::ThreeHalves,
                NuArg::All => NuMethod::All,
            };
        }
        Cmd::Zeta { s, method } => {
            cfg.s = Some(s);
            cfg.zeta_method = match method {
                ZetaArg::Em => ZetaMethod::Em,
                ZetaArg::Eta => ZetaMethod::Eta,
            };
        }
        Cmd::Constants => {}
        Cmd::Verify { suite } => match suite {
            Suite::Corollary => {}
            Suite::Cross(c) => apply_cross(&c, &mut cfg),
            Suite::Proof(p) => apply_proof(&p, &mut cfg),
            Suite::All { cross, proof } => {
                apply_cross(&cross, &mut cfg);
                apply_proof(&proof, &mut cfg);
            }
        },
    }
    cfg
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(expand_aliases(std::env::args_os().collect())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = to_config(cli);
    let mut output = match report::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("zetaline: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if cfg.timestamp {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        output.set_timestamp(now);
    }
    let bytes = match report::serialize(&output, cfg.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("zetaline: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };
    let written = match &cfg.output_path {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("zetaline: cannot write report: {e}");
        return ExitCode::from(EXIT_IO);
    }
    let failed = output.failed();
    if failed > 0 {
        eprintln!("zetaline: {failed} verification record(s) failed");
        return ExitCode::from(EXIT_FAILURES);
    }
    ExitCode::SUCCESS
}
