use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dmkit::classify::{component_shapes, VERIFY_CAP};
use dmkit::{
    cross_check, delta_matroid_of_matrix, intersection_graph, is_normal_binary, normalize, ops, parse_set_system,
    twist_polynomial_fast, twist_polynomial_naive, DeltaMatroid, Gf2SymMatrix, SetSystem, TwistPolynomial,
};

#[derive(Parser)]
#[command(name = "dmkit", version, about = "Delta-matroids, binary matrices and twist polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Set-system text (`elements:` / `feasible:` lines)
    Dm,
    /// Symmetric 0/1 matrix
    Mat,
}

#[derive(Args)]
struct Input {
    /// Input file, or `-` for stdin
    file: PathBuf,
    /// Override the format implied by the file extension (.dm / .mat)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the symmetric exchange axiom and report flags
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Compute the twist polynomial
    Twistpoly {
        #[command(flatten)]
        input: Input,
        /// Subset-lattice path (twists to a normal delta-matroid first)
        #[arg(long, conflicts_with = "naive")]
        fast: bool,
        /// Measure the width of every twist directly
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print D(C) for a symmetric GF(2) matrix
    FromMatrix {
        #[command(flatten)]
        input: Input,
    },
    /// Print the matrix C with D(C) equal to a normal binary delta-matroid
    ToMatrix {
        #[command(flatten)]
        input: Input,
    },
    /// Apply one operation and print the resulting set system
    Transform {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        op: TransformOp,
    },
    /// Classify the intersection-graph components and predict monomiality
    Classify {
        #[command(flatten)]
        input: Input,
        /// Also compute the twist polynomial and compare
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustively check every symmetric matrix up to a given order
    Verify {
        #[arg(long, value_name = "N")]
        max_n: usize,
        #[arg(long, value_name = "J")]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TransformOp {
    #[arg(long, value_name = "SET")]
    twist: Option<String>,
    #[arg(long)]
    dual: bool,
    #[arg(long, value_name = "ELEMENT")]
    delete: Option<String>,
    #[arg(long, value_name = "ELEMENT")]
    contract: Option<String>,
    #[arg(long, value_name = "SET")]
    restrict: Option<String>,
}

/// Failure categories, one per exit code.
enum Failure {
    /// Not a delta-matroid, not normal binary, ...
    Domain(String),
    /// Bad arguments, unreadable or malformed input.
    Usage(String),
    /// The predicted and computed answers differ.
    Disagreement(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Disagreement(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) | Failure::Disagreement(m) => m,
        }
    }
}

impl From<dmkit::Error> for Failure {
    fn from(e: dmkit::Error) -> Self {
        match e {
            dmkit::Error::NotDeltaMatroid(_) | dmkit::Error::NotNormal | dmkit::Error::Trivial => {
                Failure::Domain(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn format_of(input: &Input) -> Format {
    input.format.unwrap_or_else(|| match input.file.extension().and_then(|e| e.to_str()) {
        Some("mat") => Format::Mat,
        _ => Format::Dm,
    })
}

fn parse_matrix(input: &Input) -> Result<Gf2SymMatrix, Failure> {
    let text = read_input(&input.file)?;
    text.parse().map_err(|e: dmkit::Error| Failure::Usage(format!("{}: {e}", input.file.display())))
}

/// Reads a set system, or the `D(C)` of a matrix file.
fn load_system(input: &Input) -> Result<SetSystem, Failure> {
    match format_of(input) {
        Format::Mat => Ok(delta_matroid_of_matrix(&parse_matrix(input)?)?.into_set_system()),
        Format::Dm => {
            let text = read_input(&input.file)?;
            let parsed =
                parse_set_system(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.file.display())))?;
            for dup in &parsed.duplicates {
                eprintln!("warning: duplicate feasible set {dup} ignored");
            }
            Ok(parsed.system)
        }
    }
}

fn load_delta_matroid(input: &Input) -> Result<DeltaMatroid, Failure> {
    Ok(DeltaMatroid::new(load_system(input)?)?)
}

fn cmd_check(input: &Input) -> CmdResult {
    let system = load_system(input)?;
    match system.check_exchange() {
        Ok(()) => {
            let flags = system.flags();
            let mut parts = vec!["delta-matroid: yes"];
            if flags.trivial {
                parts.push("trivial");
            }
            parts.push(if flags.normal { "normal" } else { "not normal" });
            parts.push(if flags.even { "even" } else { "odd" });
            println!("{}", parts.join("; "));
            Ok(())
        }
        Err(witness) => {
            let line = match witness {
                dmkit::ExchangeWitness::EmptyFamily => "delta-matroid: no; empty family".to_string(),
                w => format!("delta-matroid: no; witness {}", w.describe(system.ground())),
            };
            println!("{line}");
            Err(Failure::Domain(String::new()))
        }
    }
}

fn print_polynomial(p: &TwistPolynomial, json: bool) {
    if json {
        println!("{}", serde_json::to_string(p).expect("polynomial serializes"));
    } else {
        println!("{p}");
    }
}

fn cmd_twistpoly(input: &Input, naive: bool, json: bool) -> CmdResult {
    let d = load_delta_matroid(input)?;
    let p = if naive {
        twist_polynomial_naive(&d)?
    } else {
        let (normal, by) = normalize(&d);
        if !by.is_empty() {
            eprintln!("note: input is not normal; twisting by {} before the fast path", d.ground().format_set(by));
        }
        twist_polynomial_fast(&normal)?
    };
    print_polynomial(&p, json);
    Ok(())
}

fn cmd_from_matrix(input: &Input) -> CmdResult {
    let c = parse_matrix(input)?;
    print!("{}", delta_matroid_of_matrix(&c)?);
    Ok(())
}

/// The matrix behind a normal binary delta-matroid, or a domain failure.
fn binary_matrix(d: &DeltaMatroid) -> Result<Gf2SymMatrix, Failure> {
    if !d.flags().normal {
        return Err(Failure::Domain("not normal binary: the empty set is not feasible".into()));
    }
    is_normal_binary(d)?.ok_or_else(|| {
        Failure::Domain("not normal binary: the reconstructed matrix does not reproduce the feasible family".into())
    })
}

fn cmd_to_matrix(input: &Input) -> CmdResult {
    let d = load_delta_matroid(input)?;
    print!("{}", binary_matrix(&d)?);
    Ok(())
}

fn element(d: &DeltaMatroid, label: &str) -> Result<usize, Failure> {
    Ok(d.ground().index_of(label.trim())?)
}

fn cmd_transform(input: &Input, op: &TransformOp) -> CmdResult {
    let d = load_delta_matroid(input)?;
    let out = if let Some(set) = &op.twist {
        ops::twist(&d, d.ground().parse_set(set)?)?
    } else if op.dual {
        ops::dual(&d)
    } else if let Some(e) = &op.delete {
        ops::delete(&d, element(&d, e)?)?
    } else if let Some(e) = &op.contract {
        ops::contract(&d, element(&d, e)?)?
    } else if let Some(set) = &op.restrict {
        ops::restrict(&d, d.ground().parse_set(set)?)?
    } else {
        unreachable!("clap requires one operation")
    };
    print!("{out}");
    Ok(())
}

fn cmd_classify(input: &Input, verify: bool) -> CmdResult {
    let c = match format_of(input) {
        Format::Mat => parse_matrix(input)?,
        Format::Dm => binary_matrix(&load_delta_matroid(input)?)?,
    };
    let shapes = component_shapes(&intersection_graph(&c));
    let listed: Vec<String> = shapes.iter().map(ToString::to_string).collect();
    let check = cross_check(&c)?;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    println!("components: [{}]; monomial: {}", listed.join(", "), yes_no(check.predicted));
    if verify {
        if check.agrees() {
            println!("verified: {}", check.polynomial);
        } else {
            println!("DISAGREEMENT: polynomial {} is monomial: {}", check.polynomial, yes_no(check.actual));
            return Err(Failure::Disagreement("prediction and polynomial disagree".into()));
        }
    }
    Ok(())
}

fn cmd_verify(max_n: usize, jobs: Option<usize>, json: bool) -> CmdResult {
    if !(1..=VERIFY_CAP).contains(&max_n) {
        return Err(Failure::Usage(format!("--max-n must be between 1 and {VERIFY_CAP}, got {max_n}")));
    }
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let reports = dmkit::run_verify(max_n, jobs)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("report serializes"));
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    if reports.iter().any(|r| !r.counterexamples.is_empty()) {
        return Err(Failure::Disagreement("counterexamples found".into()));
    }
    if reports.iter().any(|r| !r.lemma_failures.is_empty()) {
        return Err(Failure::Disagreement("lemma failures found".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Check { input } => cmd_check(input),
        Command::Twistpoly { input, fast: _, naive, json } => cmd_twistpoly(input, *naive, *json),
        Command::FromMatrix { input } => cmd_from_matrix(input),
        Command::ToMatrix { input } => cmd_to_matrix(input),
        Command::Transform { input, op } => cmd_transform(input, op),
        Command::Classify { input, verify } => cmd_classify(input, *verify),
        Command::Verify { max_n, jobs, json } => cmd_verify(*max_n, *jobs, *json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message().is_empty() {
                eprintln!("error: {}", failure.message());
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
