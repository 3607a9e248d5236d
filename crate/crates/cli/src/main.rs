use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use ppi_core::harness::{self, Configured, FuzzConfig, ModularDivider};
use ppi_core::{
    dmod_with, exact_div_with, hensel_code, par_mul, rational_period, Algorithm, Digit, DigitVec, Error, ModDivProblem,
    ParOptions, ParTrace, Radix, TraceRecord,
};

#[derive(Parser, Debug)]
#[command(name = "ppi", version, about = "Modular division and friends on multiprecision integers")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Radix β used internally; numerals are always decimal.
    #[arg(long, global = true, env = "PPI_RADIX", default_value_t = 10)]
    radix: u64,

    /// Precision: the result is reduced modulo β^s.
    #[arg(long, global = true)]
    s: Option<usize>,

    #[arg(long, global = true, default_value = "parppi2")]
    alg: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Decimal)]
    format: Format,

    /// Verify write disjointness and digit bounds on every parallel step.
    #[arg(long, global = true)]
    checked: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest period length searched by `period`.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Decimal,
    DigitsLsf,
    DigitsMsf,
    TraceRecord,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// x = u / v mod β^s
    Modiv { u: String, v: String },
    /// Exact quotient u / v.
    Ediv { u: String, v: String },
    /// Modular-style division: x, w, sign and r.
    Dmod { u: String, v: String },
    /// Product by carry-save multiplication.
    Mul { u: String, v: String },
    /// First s digits of the β-adic expansion of u / v, least significant first.
    Hensel { u: String, v: String },
    /// Period length and repeating block of u / v with 0 < u < v.
    Period { u: String, v: String },
    /// Compare every division algorithm with the oracle on random problems.
    Fuzz {
        count: usize,
        #[arg(long, default_value_t = 32)]
        max_s: usize,
        /// Comma-separated radixes; overrides --radix.
        #[arg(long, value_delimiter = ',')]
        radixes: Vec<u64>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// One trace record per size.
    Bench {
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
}

enum Failure {
    /// Output is still printed to stdout, but the exit status is 1.
    Report(String),
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

type CmdResult = Result<String, Failure>;

fn precondition(msg: impl Into<String>) -> Failure {
    Failure::Precondition(msg.into())
}

impl RunConfig {
    fn radix(&self) -> Result<Radix, Failure> {
        Ok(Radix::new(self.radix)?)
    }

    fn opts(&self) -> ParOptions {
        ParOptions { checked: self.checked, ..ParOptions::default() }
    }

    fn precision(&self) -> Result<usize, Failure> {
        match self.s {
            Some(0) => Err(Error::ZeroPrecision.into()),
            Some(s) => Ok(s),
            None => Err(precondition("--s is required for this command")),
        }
    }

    fn algorithm(&self) -> Result<Algorithm, Failure> {
        Ok(self.alg.parse()?)
    }

    fn parse_pair(&self, u: &str, v: &str) -> Result<(DigitVec, DigitVec), Failure> {
        let radix = self.radix()?;
        Ok((DigitVec::from_decimal_str(u, radix)?, DigitVec::from_decimal_str(v, radix)?))
    }
}

fn join(digits: impl IntoIterator<Item = Digit>) -> String {
    digits.into_iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

/// Formats a number; `width` pads digit lists with high zeros.
fn render(x: &DigitVec, width: usize, format: Format) -> String {
    let lsf = x.padded(width.max(x.digit_count()).max(1));
    match format {
        Format::Decimal | Format::TraceRecord => x.to_decimal_string(),
        Format::DigitsLsf => join(lsf),
        Format::DigitsMsf => join(lsf.into_iter().rev()),
    }
}

fn with_trace(mut out: String, config: &RunConfig, name: &str, s: usize, trace: Option<ParTrace>) -> String {
    if let (Format::TraceRecord, Some(trace)) = (config.format, trace) {
        let record = TraceRecord { algorithm: name.to_string(), beta: config.radix as Digit, s, trace };
        write!(out, "\n{record}").expect("writing to a String");
    }
    out
}

fn cmd_modiv(config: &RunConfig, u: &str, v: &str) -> CmdResult {
    let (u, v) = config.parse_pair(u, v)?;
    let s = config.precision()?;
    let alg = config.algorithm()?;
    if u.is_zero() {
        // 0 * v = 0 for every v, invertible or not
        if v.is_zero() {
            return Err(Error::DivisionByZero.into());
        }
        return Ok(render(&u, s, config.format));
    }
    let p = ModDivProblem::new(u, v, s)?;
    let (x, trace) = alg.run(&p, config.opts())?;
    Ok(with_trace(render(&x, s, config.format), config, alg.name(), s, trace))
}

fn cmd_ediv(config: &RunConfig, u: &str, v: &str) -> CmdResult {
    let (u, v) = config.parse_pair(u, v)?;
    let (q, trace) = exact_div_with(&u, &v, config.opts())?;
    Ok(with_trace(render(&q, 0, config.format), config, "ediv", u.digit_count(), Some(trace)))
}

fn cmd_dmod(config: &RunConfig, u: &str, v: &str) -> CmdResult {
    let (u, v) = config.parse_pair(u, v)?;
    let (d, trace) = dmod_with(&u, &v, config.opts())?;
    let out = format!(
        "x={} w={} sign={} r={}",
        render(&d.x, d.r, config.format),
        render(&d.w, 0, config.format),
        d.sign,
        d.r
    );
    Ok(with_trace(out, config, "dmod", u.digit_count(), Some(trace)))
}

fn cmd_mul(config: &RunConfig, u: &str, v: &str) -> CmdResult {
    let (u, v) = config.parse_pair(u, v)?;
    let (w, trace) = par_mul(&u, &v, config.opts())?;
    let n = u.digit_count().max(v.digit_count());
    Ok(with_trace(render(&w, 0, config.format), config, "mul", n, Some(trace)))
}

fn cmd_hensel(config: &RunConfig, u: &str, v: &str) -> CmdResult {
    let (u, v) = config.parse_pair(u, v)?;
    let code = hensel_code(&u, &v, config.precision()?)?;
    Ok(match config.format {
        Format::Decimal | Format::DigitsLsf | Format::TraceRecord => join(code.digits),
        Format::DigitsMsf => join(code.digits.into_iter().rev()),
    })
}

fn cmd_period(config: &RunConfig, u: &str, v: &str) -> CmdResult {
    let (u, v) = config.parse_pair(u, v)?;
    let p = rational_period(&u, &v, config.cap)?;
    Ok(format!("t={} T={}", p.t, render(&p.period, p.t, config.format)))
}

fn cmd_fuzz(config: &RunConfig, count: usize, max_s: usize, radixes: &[u64], inject_fault: bool) -> CmdResult {
    if count == 0 {
        return Err(precondition("fuzz needs a count of at least 1"));
    }
    if max_s == 0 {
        return Err(Error::ZeroPrecision.into());
    }
    let radixes = if radixes.is_empty() { vec![config.radix] } else { radixes.to_vec() };
    let radixes = radixes.into_iter().map(Radix::new).collect::<Result<Vec<_>, _>>()?;
    let fuzz = FuzzConfig { count, radixes, max_s, seed: config.seed };
    let opts = ParOptions { checked: true, ..ParOptions::default() };
    let algs: Vec<Configured> =
        Algorithm::DIVISION.into_iter().map(|algorithm| Configured { algorithm, opts }).collect();
    let mut dividers: Vec<&dyn ModularDivider> = algs.iter().map(|a| a as &dyn ModularDivider).collect();
    let faulty = Faulty;
    if inject_fault {
        dividers.push(&faulty);
    }
    let report = harness::run(&fuzz, &dividers)?;
    let mut out = String::new();
    for m in &report.mismatches {
        writeln!(
            out,
            "mismatch alg={} seed={} radix={} max_s={} s={} u={} v={} expected={} got={}",
            m.algorithm, m.case_seed, m.radix, m.max_s, m.s, m.u, m.v, m.expected, m.got
        )
        .expect("writing to a String");
    }
    write!(out, "{} mismatches", report.mismatches.len()).expect("writing to a String");
    if report.mismatches.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Report(out))
    }
}

/// Deliberately wrong divider for checking that fuzz reports failures.
struct Faulty;

impl ModularDivider for Faulty {
    fn name(&self) -> String {
        "faulty".into()
    }

    fn divide(&self, p: &ModDivProblem) -> ppi_core::Result<DigitVec> {
        let (x, _) = Algorithm::Ppi.run(p, ParOptions::default())?;
        Ok(x.add(&DigitVec::one(p.radix()))?.truncate_mod_power(p.s()))
    }
}

fn cmd_bench(config: &RunConfig, sizes: &[usize]) -> CmdResult {
    if sizes.contains(&0) {
        return Err(Error::ZeroPrecision.into());
    }
    let records = harness::trace_sweep(config.algorithm()?, config.radix()?, sizes, config.seed, config.opts())?;
    Ok(records.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let c = &cli.config;
    match &cli.command {
        Command::Modiv { u, v } => cmd_modiv(c, u, v),
        Command::Ediv { u, v } => cmd_ediv(c, u, v),
        Command::Dmod { u, v } => cmd_dmod(c, u, v),
        Command::Mul { u, v } => cmd_mul(c, u, v),
        Command::Hensel { u, v } => cmd_hensel(c, u, v),
        Command::Period { u, v } => cmd_period(c, u, v),
        Command::Fuzz { count, max_s, radixes, inject_fault } => cmd_fuzz(c, *count, *max_s, radixes, *inject_fault),
        Command::Bench { sizes } => cmd_bench(c, sizes),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Report(out)) => {
            println!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
