mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayclass::exactmath::Precision;
use rayclass::normal_basis::DEFAULT_SNAP_TOLERANCE;

use report::{Config, Output};

#[derive(Parser, Debug)]
#[command(name = "rayclass", version, about = "Singular Siegel values, Shimura reciprocity and normal bases of ray class fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced forms of discriminant d (the form class group as a set)
    Forms(FieldArgs),
    /// Galois conjugates of x = g_(0,1/N)(theta)^(-12N/gcd(6,N))
    Conjugates(LevelArgs),
    /// Check |x^gamma / x| < 1 and report the exponent m
    NormalBasis {
        #[command(flatten)]
        level: LevelArgs,
        /// Also expand the polynomial of x^m (coefficients grow quickly)
        #[arg(long)]
        expand_power: bool,
    },
    /// Integer polynomial with the conjugates of x as roots
    Minpoly {
        #[command(flatten)]
        level: LevelArgs,
        /// Fail unless the polynomial is monic
        #[arg(long)]
        monic: bool,
    },
    /// Siegel-Ramachandra invariant g_(0,1/N)(theta)^(12N)
    Invariant(LevelArgs),
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Fundamental discriminant d < 0
    #[arg(long = "disc", allow_hyphen_values = true)]
    disc: i64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
struct LevelArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Level N >= 2 of the ray class field
    #[arg(short = 'N', long = "level")]
    level: u64,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Working precision in bits
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    /// Guard bits added to the working precision
    #[arg(long, default_value_t = 64)]
    guard: u32,
    /// Absolute tolerance for snapping coefficients to integers
    #[arg(long, default_value_t = DEFAULT_SNAP_TOLERANCE, value_parser = positive_real)]
    snap_tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Bound the number of worker threads
    #[arg(long)]
    threads: Option<usize>,
    /// Include wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

fn config(command: &'static str, field: &FieldArgs, level: Option<u64>) -> Config {
    Config {
        command,
        disc: field.disc,
        level,
        precision: field.common.precision,
        guard: field.common.guard,
        snap_tolerance: field.common.snap_tolerance,
    }
}

fn run(cli: &Cli) -> rayclass::Result<(Output, &CommonArgs)> {
    let (cfg, common) = match &cli.command {
        Command::Forms(f) => (config("forms", f, None), &f.common),
        Command::Conjugates(l) | Command::Invariant(l) => {
            let name = if matches!(cli.command, Command::Conjugates(_)) { "conjugates" } else { "invariant" };
            (config(name, &l.field, Some(l.level)), &l.field.common)
        }
        Command::NormalBasis { level: l, .. } => (config("normal-basis", &l.field, Some(l.level)), &l.field.common),
        Command::Minpoly { level: l, .. } => (config("minpoly", &l.field, Some(l.level)), &l.field.common),
    };
    let precision = Precision::new(common.precision as usize, common.guard as usize);
    let start = Instant::now();
    let payload = match &cli.command {
        Command::Forms(_) => report::forms(&cfg)?,
        Command::Conjugates(_) => report::conjugates(&cfg, precision)?,
        Command::NormalBasis { expand_power, .. } => report::normal_basis(&cfg, precision, *expand_power)?,
        Command::Minpoly { monic, .. } => report::minpoly(&cfg, precision, *monic)?,
        Command::Invariant(_) => report::invariant(&cfg, precision)?,
    };
    let elapsed = common.timing.then(|| start.elapsed());
    Ok((Output::new(cfg, payload, elapsed), common))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match &cli.command {
        Command::Forms(f) => f.common.threads,
        Command::Conjugates(l) | Command::Invariant(l) => l.field.common.threads,
        Command::NormalBasis { level, .. } | Command::Minpoly { level, .. } => level.field.common.threads,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok((out, common)) => {
            match common.format {
                Format::Json => println!("{}", out.to_json()),
                Format::Text => print!("{}", out.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 3 })
        }
    }
}
