use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};
use dioph_core::curves::WeierstrassCurve;
use dioph_core::fields::{parse_rational, Rational};
use dioph_core::harness::{run, HarnessError, SuiteConfig, SUBCOMMANDS};
use dioph_core::par::Execution;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Runs a verification suite and reports every check.
///
/// Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
/// usage or parameter error.
#[derive(Parser, Debug)]
#[command(name = "dioph", version)]
struct Cli {
    #[arg(value_parser = PossibleValuesParser::new(SUBCOMMANDS))]
    suite: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Weierstrass coefficients "a2,a4,a6"; entries may be "p/q".
    #[arg(long, default_value = "0,1,1")]
    curve: String,
    /// Largest multiple n for the twist suites.
    #[arg(long, default_value_t = 6)]
    nmax: i64,
    /// Also check the negative multiples -nmax..-1.
    #[arg(long)]
    signed: bool,
    #[arg(long, default_value_t = 12)]
    range: i64,
    /// Search box for zxz-verify (default 3·range + 5).
    #[arg(long = "box")]
    search_box: Option<i64>,
    /// Number of random instances.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    height_bound: Option<u64>,
    /// Largest height in the escalating witness search of qf-isotropy.
    #[arg(long, default_value_t = 10_000)]
    max_height: u64,
    #[arg(long, default_value = "1")]
    lambda: String,
    /// Comma-separated odd m for the divform suites.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Option<Vec<i64>>,
    #[arg(long, default_value_t = 12)]
    precision_t: i64,
    #[arg(long, default_value_t = 8)]
    precision_z: i64,
    /// Target T-precision for qf-hensel-lift.
    #[arg(long, default_value_t = 10)]
    target: i64,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

fn rational(name: &str, s: &str) -> Result<Rational, HarnessError> {
    parse_rational(s.trim()).ok_or_else(|| HarnessError::invalid(name, format!("`{s}` is not a rational number")))
}

fn config(cli: &Cli) -> Result<SuiteConfig, HarnessError> {
    let cs: Vec<Rational> = cli
        .curve
        .split(',')
        .map(|s| rational("curve", s))
        .collect::<Result<_, _>>()?;
    let [a2, a4, a6]: [Rational; 3] = cs
        .try_into()
        .map_err(|_| HarnessError::invalid("curve", "expected three coefficients a2,a4,a6"))?;
    let curve = WeierstrassCurve::new(a2, a4, a6).map_err(|e| HarnessError::invalid("curve", e))?;
    if cli.nmax < 1 {
        return Err(HarnessError::invalid("nmax", "must be at least 1"));
    }
    if cli.precision_t < 1 || cli.precision_z < 1 || cli.target < 1 {
        return Err(HarnessError::invalid("precision", "must be positive"));
    }
    Ok(SuiteConfig {
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
        seed: cli.seed,
        curve,
        nmax: cli.nmax,
        signed: cli.signed,
        range: cli.range,
        search_box: cli.search_box,
        count: cli.count,
        height_bound: cli.height_bound,
        max_height: cli.max_height,
        lambda: rational("lambda", &cli.lambda)?,
        ms: cli.m.clone(),
        precision_t: cli.precision_t,
        precision_z: cli.precision_z,
        target: cli.target,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            eprintln!("{}", Cli::command().render_usage());
            return ExitCode::from(2);
        }
    };
    let report = match config(&cli).and_then(|cfg| run(&cli.suite, &cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
