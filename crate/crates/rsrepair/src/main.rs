use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsrepair::config::max_field_bits;
use rsrepair::format::{FieldSummary, SchemeFile};
use rsrepair::metrics::{compute, cross_check, MetricsJson};
use rsrepair::tables::{self, Format, Which};
use rsrepair::verify::{self, Options, Suite};
use rsrepair::{simulate, AppError, AppResult};
use rsrepair_core::bounds::{Bound, BoundKind, BoundQuery};
use rsrepair_core::constructions::{construction1, construction2, Construction2Params, ThetaStrategy};
use rsrepair_core::gf::prime_power;
use rsrepair_core::{FieldTower, Method, RepairScheme};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "rsrepair", version, about = "Repair schemes for Reed-Solomon codes on subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF(q^ell) as built by the library.
    Field {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Build a scheme and write it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// I/O cost and bandwidth of a scheme file.
    Metrics {
        scheme: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
        /// Skip running the other two routes for comparison.
        #[arg(long)]
        no_cross_check: bool,
    },
    /// Repair random codewords and tally reads and sends.
    Simulate {
        scheme: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lower bounds on I/O cost or bandwidth.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum)]
        quantity: Option<QuantityArg>,
        #[arg(long, value_enum, default_value = "auto")]
        theorem: TheoremArg,
    },
    /// Comparison tables.
    Tables {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Numerical verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample count for randomized suites.
        #[arg(long, default_value_t = 200)]
        size: usize,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Full-length binary scheme from four quadratics (r = 3, even ell).
    C1 {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, default_value = "paper")]
        theta: ThetaArg,
        #[command(flatten)]
        out: Out,
    },
    /// Scheme on a d-dimensional subspace from a linearized polynomial.
    C2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Out {
    /// Where to write the scheme; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Weight,
    Expsum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    Io,
    Bandwidth,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Auto,
    Coro11,
    Thm4,
    Thm6,
    Thm5,
    Thm8,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaArg {
    Paper,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    #[value(name = "3a")]
    T3a,
    #[value(name = "3b")]
    T3b,
    #[value(name = "4")]
    T4,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Expsum,
    Weil,
    Char,
    Duality,
    Lemma5,
    R3cond,
    Tightness,
}

fn field_for_q(q: u64, ell: u32, max_bits: u32) -> AppResult<FieldTower> {
    let (p, a) = prime_power(q).ok_or_else(|| AppError::Invalid(format!("q = {q} is not a prime power")))?;
    Ok(FieldTower::with_max_bits(p, a, ell, max_bits)?)
}

fn print_json<T: Serialize>(value: &T) -> AppResult<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct Constructed {
    written: PathBuf,
    n: usize,
    ell: usize,
    r: usize,
    io_cost: u64,
    bandwidth: u64,
}

fn emit_scheme(tower: &FieldTower, scheme: &RepairScheme, out: &Out) -> AppResult<()> {
    let file = SchemeFile::from_scheme(tower, scheme);
    match &out.out {
        None => print_json(&file),
        Some(path) => {
            file.save(path)?;
            let m = scheme.metrics_direct(tower);
            print_json(&Constructed {
                written: path.clone(),
                n: scheme.code().n(),
                ell: scheme.ell(),
                r: scheme.code().r(),
                io_cost: m.io_cost,
                bandwidth: m.bandwidth,
            })
        }
    }
}

#[derive(Serialize)]
struct BoundJson {
    value: i64,
    theorem: &'static str,
    tight_known: bool,
    quantity: &'static str,
}

/// CLI tokens for the bound families.
fn theorem_token(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::IoWeil => "coro11",
        BoundKind::IoRedundancyTwo => "thm4",
        BoundKind::IoRedundancyThree => "thm6",
        BoundKind::BandwidthFullLength | BoundKind::BandwidthFullLengthBinary | BoundKind::BandwidthDivisible => "thm5",
        BoundKind::BandwidthRedundancyThree => "thm8",
    }
}

fn bound(q: &BoundQuery, quantity: Option<QuantityArg>, theorem: TheoremArg) -> AppResult<Bound> {
    let kinds: &[BoundKind] = match theorem {
        TheoremArg::Auto => {
            return Ok(match quantity.unwrap_or(QuantityArg::Io) {
                QuantityArg::Io => q.io_lower_bound()?,
                QuantityArg::Bandwidth => q.bandwidth_lower_bound()?,
            })
        }
        TheoremArg::Coro11 => &[BoundKind::IoWeil],
        TheoremArg::Thm4 => &[BoundKind::IoRedundancyTwo],
        TheoremArg::Thm6 => &[BoundKind::IoRedundancyThree],
        TheoremArg::Thm5 => &[
            BoundKind::BandwidthFullLength,
            BoundKind::BandwidthFullLengthBinary,
            BoundKind::BandwidthDivisible,
        ],
        TheoremArg::Thm8 => &[BoundKind::BandwidthRedundancyThree],
    };
    let is_io = matches!(theorem, TheoremArg::Coro11 | TheoremArg::Thm4 | TheoremArg::Thm6);
    if let Some(want) = quantity {
        if (want == QuantityArg::Io) != is_io {
            return Err(AppError::Invalid("--theorem does not bound the requested --quantity".into()));
        }
    }
    let mut last = None;
    for &k in kinds {
        let b = if is_io { q.io_bound(k) } else { q.bandwidth_bound(k) };
        match b {
            Ok(b) => return Ok(b),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one kind").into())
}

fn run(cli: Cli) -> AppResult<()> {
    let max_bits = max_field_bits()?;
    match cli.command {
        Command::Field { q, ell } => print_json(&FieldSummary::of(&field_for_q(q, ell, max_bits)?)),
        Command::Construct(Construct::C1 { ell, theta, out }) => {
            let f = FieldTower::with_max_bits(2, 1, ell, max_bits)?;
            let strategy = match theta {
                ThetaArg::Paper => ThetaStrategy::PaperExample,
                ThetaArg::Search => ThetaStrategy::Search,
            };
            let c = construction1(&f, strategy)?;
            if c.strategy != strategy {
                eprintln!("note: no defining-quadratic choice at ell = {ell}; used the first suitable primitive element");
            }
            emit_scheme(&f, &c.scheme, &out)
        }
        Command::Construct(Construct::C2 { q, ell, d, s, m, r, out }) => {
            let f = field_for_q(q, ell, max_bits)?;
            let c = construction2(&f, Construction2Params { d, s, m, r })?;
            emit_scheme(&f, &c.scheme, &out)
        }
        Command::Metrics { scheme, method, no_cross_check } => {
            let (f, s) = SchemeFile::load(&scheme)?.to_scheme(max_bits)?;
            let method = match method {
                MethodArg::Direct => Method::Direct,
                MethodArg::Weight => Method::WeightFormula,
                MethodArg::Expsum => Method::ExpSum,
            };
            let report = compute(&f, &s, method)?;
            let check = if no_cross_check { None } else { Some(cross_check(&f, &s)?) };
            print_json(&MetricsJson::new(&s, &report, check))
        }
        Command::Simulate { scheme, trials, seed } => {
            let (f, s) = SchemeFile::load(&scheme)?.to_scheme(max_bits)?;
            let report = simulate::run(&f, &s, trials, seed)?;
            print_json(&report)?;
            if report.passed() {
                Ok(())
            } else {
                Err(AppError::Mismatch("simulation disagrees with the analytic metrics".into()))
            }
        }
        Command::Bounds { q, ell, d, r, quantity, theorem } => {
            let query = BoundQuery::new(q, ell, d, r)?;
            let b = bound(&query, quantity, theorem)?;
            let quantity = match b.kind.quantity() {
                rsrepair_core::bounds::Quantity::Io => "io",
                rsrepair_core::bounds::Quantity::Bandwidth => "bandwidth",
            };
            print_json(&BoundJson { value: b.value, theorem: theorem_token(b.kind), tight_known: b.tight_known, quantity })
        }
        Command::Tables { which, format } => {
            let which = match which {
                WhichArg::T3a => Which::Bandwidth3a,
                WhichArg::T3b => Which::Io3b,
                WhichArg::T4 => Which::Ratio4,
            };
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Md => Format::Markdown,
            };
            print!("{}", tables::render(&tables::build(which, max_bits)?, format)?);
            Ok(())
        }
        Command::Verify { suite, seed, size } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::Expsum => vec![Suite::ExpSum],
                SuiteArg::Weil => vec![Suite::Weil],
                SuiteArg::Char => vec![Suite::Char],
                SuiteArg::Duality => vec![Suite::Duality],
                SuiteArg::Lemma5 => vec![Suite::Lemma5],
                SuiteArg::R3cond => vec![Suite::R3Cond],
                SuiteArg::Tightness => vec![Suite::Tightness],
            };
            let opts = Options { seed, size };
            let reports = suites.into_iter().map(|s| verify::run(s, opts)).collect::<AppResult<Vec<_>>>()?;
            let pass = reports.iter().all(|r| r.pass);
            print_json(&serde_json::json!({ "pass": pass, "seed": seed, "suites": reports }))?;
            if pass {
                Ok(())
            } else {
                Err(AppError::Mismatch("verification failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
