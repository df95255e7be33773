use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use galois_irred::certifier::{self, CertifyOutcome};
use galois_irred::elliptic::{CurveInvariants, EllipticCurve};
use galois_irred::fermat::{self, FermatInstance};
use galois_irred::frobenius::{self, DEFAULT_COUNT_BUDGET};
use galois_irred::reduction::{self, ReductionReport};
use galois_irred::{arith, sunit, Error, FieldElement, QuadraticField, Result, Splitting};

#[derive(Parser)]
#[command(name = "galois-irred", version, about = "Irreducibility certificates for mod-p Galois representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Squarefree integer d defining Q(√d)
    #[arg(short = 'd', allow_hyphen_values = true)]
    d: i64,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    field: FieldArg,
    /// "[a1; a2; a3; a4; a6]" or "[a4; a6]", coefficients as "(c0,c1)" or rationals
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
}

#[derive(Subcommand)]
enum Command {
    /// Field data
    Field {
        #[command(subcommand)]
        command: FieldCommand,
    },
    /// Curve data
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Search for an inert witness of multiplicative reduction and emit a certificate
    Certify {
        #[command(flatten)]
        curve: CurveArgs,
        /// Trial-division bound for factoring Norm(Δ)
        #[arg(long, default_value_t = arith::DEFAULT_FACTOR_BOUND)]
        budget: u64,
    },
    /// Frobenius-trace scan for primes p <= pmax
    Frobscan {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        pmax: u64,
        /// Largest residue characteristic used
        #[arg(long)]
        budget: u64,
        /// Largest residue field counted
        #[arg(long, default_value_t = DEFAULT_COUNT_BUDGET)]
        count_budget: u64,
    },
    /// Solve x + y = 1 in S-units with bounded exponents
    Sunit {
        #[command(flatten)]
        field: FieldArg,
        /// Comma-separated rational primes, possibly empty
        #[arg(short = 'S', default_value = "")]
        s: String,
        #[arg(long)]
        bound: u32,
        #[arg(long, default_value_t = sunit::DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Check the hypotheses for a putative solution of a^p + b^p + c^p = 0
    Fermat {
        #[command(flatten)]
        field: FieldArg,
        #[arg(short = 'S')]
        s: String,
        /// "a;b;c"
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        #[arg(short = 'p')]
        p: u64,
        /// Configured constant C_S (at least 163)
        #[arg(long)]
        cs: Option<u64>,
    },
}

#[derive(Subcommand)]
enum FieldCommand {
    Info {
        #[command(flatten)]
        field: FieldArg,
        /// Splitting table for primes up to this bound
        #[arg(long, default_value_t = 50)]
        up_to: u64,
    },
}

#[derive(Subcommand)]
enum CurveCommand {
    Analyze {
        #[command(flatten)]
        curve: CurveArgs,
        /// Report only the primes above q
        #[arg(long)]
        prime: Option<u64>,
    },
}

#[derive(Serialize)]
struct SplittingRow {
    q: u64,
    splitting: Splitting,
    generators: Vec<FieldElement>,
}

#[derive(Serialize)]
struct FieldInfo {
    d: i64,
    discriminant: i64,
    ring_of_integers_basis: &'static str,
    units: Option<Vec<FieldElement>>,
    splitting: Vec<SplittingRow>,
}

#[derive(Serialize)]
struct CurveReport {
    field: QuadraticField,
    curve: EllipticCurve,
    invariants: CurveInvariants,
    discriminant_norm: String,
    reductions: Vec<ReductionReport>,
}

enum Outcome {
    Done,
    NotApplicable,
}

fn parse_primes(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("prime {t:?}: {e}"))))
        .collect()
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn field_info(d: i64, up_to: u64) -> Result<Outcome> {
    let field = QuadraticField::new(d)?;
    let mut splitting = Vec::new();
    for q in arith::primes_up_to(up_to) {
        let primes = field.primes_above(q)?;
        splitting.push(SplittingRow {
            q,
            splitting: primes[0].splitting,
            generators: primes.iter().filter_map(|p| p.generator.clone()).collect(),
        });
    }
    let basis = match field.basis() {
        galois_irred::number_field::Basis::Sqrt => "{1, √d}",
        galois_irred::number_field::Basis::HalfInteger => "{1, (1 + √d)/2}",
    };
    emit(&FieldInfo {
        d,
        discriminant: field.discriminant(),
        ring_of_integers_basis: basis,
        units: field.units().ok(),
        splitting,
    })?;
    Ok(Outcome::Done)
}

fn load_curve(args: &CurveArgs) -> Result<EllipticCurve> {
    EllipticCurve::parse(QuadraticField::new(args.field.d)?, &args.curve)
}

fn curve_analyze(args: &CurveArgs, prime: Option<u64>) -> Result<Outcome> {
    let curve = load_curve(args)?;
    let reductions = match prime {
        Some(q) => {
            if !arith::is_prime(q) {
                return Err(Error::NotPrime(q));
            }
            curve.field().primes_above(q)?.iter().map(|p| reduction::reduction_type(&curve, p)).collect()
        }
        None => reduction::bad_reduction_reports(&curve, arith::DEFAULT_FACTOR_BOUND)?,
    };
    emit(&CurveReport {
        field: curve.field(),
        invariants: curve.invariants(),
        discriminant_norm: reduction::discriminant_norm(&curve).to_string(),
        curve,
        reductions,
    })?;
    Ok(Outcome::Done)
}

fn certify(args: &CurveArgs, budget: u64) -> Result<Outcome> {
    let curve = load_curve(args)?;
    match certifier::certify_with_budget(&curve, budget) {
        Ok(CertifyOutcome::Certificate(cert)) => {
            emit(&*cert)?;
            Ok(Outcome::Done)
        }
        Ok(CertifyOutcome::NotApplicable(reason)) => {
            emit(&serde_json::json!({ "not_applicable": reason }))?;
            Ok(Outcome::NotApplicable)
        }
        Err(e @ Error::FactorBudget { .. }) => {
            emit(&serde_json::json!({ "inconclusive": e.to_string() }))?;
            Ok(Outcome::NotApplicable)
        }
        Err(e) => Err(e),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Field { command: FieldCommand::Info { field, up_to } } => field_info(field.d, up_to),
        Command::Curve { command: CurveCommand::Analyze { curve, prime } } => curve_analyze(&curve, prime),
        Command::Certify { curve, budget } => certify(&curve, budget),
        Command::Frobscan { curve, pmax, budget, count_budget } => {
            let e = load_curve(&curve)?;
            emit(&frobenius::frobenius_scan(&e, budget, pmax, count_budget)?)?;
            Ok(Outcome::Done)
        }
        Command::Sunit { field, s, bound, cap } => {
            let f = QuadraticField::new(field.d)?;
            let s = parse_primes(&s)?;
            let sols = sunit::solve_with_cap(f, &s, bound, cap)?;
            eprintln!("{} solutions, complete for exponents |e| <= {bound}", sols.len());
            for sol in sols {
                println!("{sol}");
            }
            Ok(Outcome::Done)
        }
        Command::Fermat { field, s, triple, p, cs } => {
            let f = QuadraticField::new(field.d)?;
            let inst = FermatInstance::new(f, &parse_primes(&s)?, fermat::parse_triple(f, &triple)?, p, cs)?;
            emit(&fermat::check_instance(&inst)?)?;
            Ok(Outcome::Done)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NotApplicable) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
