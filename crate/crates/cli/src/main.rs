use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ordercheck::ehrhart::{
    ehrhart_polynomial, fraction_string, hstar_from_descents, hstar_from_ehrhart, order_polynomial, Algorithm,
    RatPolynomial,
};
use ordercheck::gen::{encode_digraph6, generate_all, parse_digraph6, GenerationShard};
use ordercheck::harness::{exit_code, sweep, HarnessError, Source, SweepConfig};
use ordercheck::polycheck::{count_distinct_real_roots, is_real_rooted, IntPolynomial};
use ordercheck::poset::{canonical_form, CanonicalForm};
use ordercheck::Poset;

#[derive(Parser)]
#[command(name = "ordercheck", version, about = "Exhaustive checks of order polynomials, Ehrhart polynomials and h*-vectors of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Digraph6,
    Canon,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Linear,
    Ideals,
    Auto,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Linear => Algorithm::Linear,
            AlgorithmArg::Ideals => Algorithm::Ideals,
            AlgorithmArg::Auto => Algorithm::Auto,
        }
    }
}

#[derive(clap::Args)]
struct RecordInput {
    /// A digraph6 line (starting with `&`) or a canonical form in hex.
    record: Option<String>,
    /// Read the first record of this file instead.
    #[arg(long, conflicts_with = "record")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: AlgorithmArg,
}

#[derive(clap::Args)]
struct ShardArgs {
    #[arg(long, default_value_t = 1)]
    shards: usize,
    #[arg(long, default_value_t = 0)]
    shard: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List every poset on p elements up to isomorphism, one per line.
    Gen {
        #[arg(short)]
        p: usize,
        #[command(flatten)]
        shards: ShardArgs,
        #[arg(long, value_enum, default_value = "digraph6")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Order polynomial coefficients, ascending.
    Omega(RecordInput),
    /// Ehrhart polynomial coefficients of the order polytope, ascending.
    Ehr(RecordInput),
    /// h*-vector of the order polytope.
    Hstar(RecordInput),
    /// Count distinct real roots of an integer polynomial.
    Sturm {
        /// Coefficients a0,a1,...,am.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
    },
    /// Verify every poset of a size, or every poset in a digraph6 file.
    Verify {
        #[arg(short, required_unless_present = "input", conflicts_with = "input")]
        p: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        shards: ShardArgs,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        summary_only: bool,
        /// Write records here; the summary then goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Stop after this many work units (resume later from the checkpoint).
        #[arg(long, hide = true)]
        max_units: Option<usize>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: exit_code::USAGE_OR_IO, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: exit_code::INTERNAL, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure { code: e.exit_code(), message: e.to_string() }
    }
}

fn parse_record(text: &str) -> Result<Poset, Failure> {
    let text = text.trim();
    let text = text.strip_prefix(">>digraph6<<").unwrap_or(text);
    if text.starts_with('&') {
        parse_digraph6(text.as_bytes()).map_err(|e| Failure::usage(format!("bad digraph6 record: {e}")))
    } else {
        CanonicalForm::from_hex(text).map_err(|e| Failure::usage(format!("bad canonical record: {e}")))
    }
}

fn read_record(input: &RecordInput) -> Result<Poset, Failure> {
    if let Some(r) = &input.record {
        return parse_record(r);
    }
    let reader: Box<dyn BufRead> = match &input.input {
        Some(path) => Box::new(io::BufReader::new(
            File::open(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdin().lock()),
    };
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            return parse_record(&line);
        }
    }
    Err(Failure::usage("no record in input"))
}

fn fraction_tokens(poly: &RatPolynomial) -> String {
    poly.to_fraction_strings().join(" ")
}

fn output_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Gen { p, shards, format, output } => {
            let shard = GenerationShard::new(p, shards.shard, shards.shards).map_err(|e| Failure::usage(e.to_string()))?;
            let posets = generate_all(p, Some(&shard)).map_err(|e| Failure::usage(e.to_string()))?;
            let mut out = output_writer(&output)?;
            for q in posets {
                match format {
                    Format::Digraph6 => writeln!(out, "{}", encode_digraph6(&q))?,
                    Format::Canon => writeln!(out, "{}", canonical_form(&q).to_hex())?,
                }
            }
            out.flush()?;
            Ok(exit_code::PASS)
        }
        Command::Omega(input) => {
            let poset = read_record(&input)?;
            println!("{}", fraction_tokens(&order_polynomial(&poset, input.algorithm.into())));
            Ok(exit_code::PASS)
        }
        Command::Ehr(input) => {
            let poset = read_record(&input)?;
            println!("{}", fraction_tokens(&ehrhart_polynomial(&poset, input.algorithm.into())));
            Ok(exit_code::PASS)
        }
        Command::Hstar(input) => {
            let poset = read_record(&input)?;
            let ehr = ehrhart_polynomial(&poset, input.algorithm.into());
            let h = hstar_from_ehrhart(&ehr, poset.len()).map_err(|e| Failure::internal(e.to_string()))?;
            if h != hstar_from_descents(&poset) {
                return Err(Failure::internal("h* routes disagree"));
            }
            let tokens: Vec<String> = h.entries().iter().map(|x| fraction_string(&x.clone().into())).collect();
            println!("{}", tokens.join(" "));
            Ok(exit_code::PASS)
        }
        Command::Sturm { coeffs } => {
            let coeffs = coeffs
                .iter()
                .map(|c| c.trim().parse().map_err(|_| Failure::usage(format!("bad coefficient {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let f = IntPolynomial::new(coeffs);
            let roots = count_distinct_real_roots(&f).map_err(|e| Failure::usage(e.to_string()))?;
            let real = is_real_rooted(&f).map_err(|e| Failure::usage(e.to_string()))?;
            println!("distinct_real_roots {roots}");
            println!("real_rooted {real}");
            Ok(exit_code::PASS)
        }
        Command::Verify { p, input, jobs, shards, checkpoint, summary_only, output, max_units } => {
            let source = match (p, input) {
                (_, Some(path)) => Source::Digraph6File { path },
                (Some(p), None) => Source::Generate { p },
                (None, None) => return Err(Failure::usage("need -p or --input")),
            };
            if shards.shards == 0 || shards.shard >= shards.shards {
                return Err(Failure::usage(format!("shard {} out of range for {} shards", shards.shard, shards.shards)));
            }
            let summary_to_stdout = summary_only || output.is_some();
            let config = SweepConfig {
                source,
                shards: shards.shards,
                shard: shards.shard,
                jobs,
                checkpoint,
                output,
                summary_only,
                max_units,
            };
            let stdout = io::stdout();
            let summary = {
                let mut records = BufWriter::new(stdout.lock());
                let s = sweep(&config, &mut records)?;
                records.flush()?;
                s
            };
            for record in &summary.counterexamples {
                let failed: Vec<&str> = record.failed_properties().iter().map(|q| q.name()).collect();
                eprintln!(
                    "counterexample [{}]: {}",
                    failed.join(","),
                    serde_json::to_string(record).expect("record serializes")
                );
            }
            let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
            if summary_to_stdout {
                println!("{text}");
            } else {
                eprintln!("{text}");
            }
            Ok(summary.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("ordercheck: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
