//! Command-line front end. `run` takes the argument list and output streams
//! and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asymptotics::{ratio_series, AsymptoticsError, DEFAULT_PRECISION_BITS, DEFAULT_TERMS};
use crate::canonical::{sqrt, CanonicalError};
use crate::classcount::{count_classes, count_elements, euler_product_class_counts, Backend, CountError, CountReport, Ring};
use crate::f2linalg::{gray_code_census, BitMatrix, LinalgError};
use crate::partitions::ClassFamily;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

pub const MAX_N: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Mat,
    Gl,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Mat => Ring::Mat,
            RingArg::Gl => Ring::Gl,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Squares,
    Semisimple,
    Separable,
    All,
}

impl From<FamilyArg> for ClassFamily {
    fn from(f: FamilyArg) -> ClassFamily {
        match f {
            FamilyArg::Squares => ClassFamily::Squares,
            FamilyArg::Semisimple => ClassFamily::Semisimple,
            FamilyArg::Separable => ClassFamily::Separable,
            FamilyArg::All => ClassFamily::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rational,
    Crt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Euler,
}

fn parse_max_n(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a positive integer"))?;
    if (1..=MAX_N).contains(&n) {
        Ok(n)
    } else {
        Err(format!("must lie in 1..={MAX_N}"))
    }
}

/// Counts squares in matrix rings over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "f2squares", version)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Element counts for n = 1..=max-n
    Count(CountArgs),
    /// Conjugacy-class counts of squares
    Classes(ClassesArgs),
    /// Brute-force census of squares
    Oracle(OracleArgs),
    /// Square root of a matrix read from a file
    Sqrt(SqrtArgs),
    /// Ratio sequence and limit estimate as CSV
    Ratios(RatiosArgs),
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub ring: RingArg,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_parser = parse_max_n)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "rational")]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct ClassesArgs {
    #[arg(long, value_enum)]
    pub ring: RingArg,
    #[arg(long, value_parser = parse_max_n)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: MethodArg,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub invertible: bool,
    #[arg(long = "i-know-this-is-slow")]
    pub allow_long: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct SqrtArgs {
    #[arg(long)]
    pub matrix_file: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct RatiosArgs {
    #[arg(long, value_enum)]
    pub ring: RingArg,
    #[arg(long, value_enum, default_value = "squares")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub terms: usize,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl CliConfig {
    /// Canonical argument list with every flag spelled out.
    pub fn normalized_args(&self) -> Vec<String> {
        let mut a = vec!["f2squares".to_string()];
        let mut push = |k: &str, v: String| {
            a.push(format!("--{k}"));
            a.push(v);
        };
        match &self.command {
            Command::Count(c) => {
                push("ring", value_name(c.ring));
                push("family", value_name(c.family));
                push("max-n", c.max_n.to_string());
                push("backend", value_name(c.backend));
                push("format", value_name(c.format));
                a.insert(1, "count".into());
            }
            Command::Classes(c) => {
                push("ring", value_name(c.ring));
                push("max-n", c.max_n.to_string());
                push("method", value_name(c.method));
                a.insert(1, "classes".into());
            }
            Command::Oracle(c) => {
                push("n", c.n.to_string());
                a.insert(1, "oracle".into());
                if c.invertible {
                    a.push("--invertible".into());
                }
                if c.allow_long {
                    a.push("--i-know-this-is-slow".into());
                }
            }
            Command::Sqrt(c) => {
                push("matrix-file", c.matrix_file.display().to_string());
                a.insert(1, "sqrt".into());
            }
            Command::Ratios(c) => {
                push("ring", value_name(c.ring));
                push("family", value_name(c.family));
                push("terms", c.terms.to_string());
                push("precision-bits", c.precision_bits.to_string());
                a.insert(1, "ratios".into());
            }
        }
        a
    }
}

enum Failure {
    Refused(String),
    Usage(String),
    Integrity(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        Failure::Integrity(e.to_string())
    }
}

impl From<AsymptoticsError> for Failure {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Count(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let result = execute(&config, out);
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Refused(msg)) => {
            let _ = writeln!(out, "{msg}");
            EXIT_REFUSED
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Integrity(msg)) => {
            let _ = writeln!(err, "integrity failure: {msg}");
            EXIT_INTEGRITY
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "i/o error: {e}");
            EXIT_INTEGRITY
        }
    }
}

fn execute(config: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match &config.command {
        Command::Count(c) => {
            let backend = match c.backend {
                BackendArg::Rational => Backend::Rational,
                BackendArg::Crt => Backend::Crt,
            };
            let reports = count_elements(c.family.into(), c.ring.into(), c.max_n, backend)?;
            match c.format {
                FormatArg::Csv => {
                    writeln!(out, "{}", CountReport::CSV_HEADER)?;
                    for r in &reports {
                        writeln!(out, "{}", r.csv_row())?;
                    }
                }
                FormatArg::Json => {
                    for r in &reports {
                        writeln!(out, "{}", r.json_line())?;
                    }
                }
            }
        }
        Command::Classes(c) => {
            let counts = match c.method {
                MethodArg::Direct => count_classes(ClassFamily::Squares, c.ring.into(), c.max_n)?,
                MethodArg::Euler => euler_product_class_counts(c.ring.into(), c.max_n),
            };
            writeln!(out, "n,class_count")?;
            for (i, v) in counts.iter().enumerate() {
                writeln!(out, "{},{v}", i + 1)?;
            }
        }
        Command::Oracle(c) => {
            let count = gray_code_census(c.n, c.invertible, c.allow_long).map_err(|e| match e {
                LinalgError::CensusNeedsOverride(_) | LinalgError::CensusOutOfRange(_) => Failure::Usage(e.to_string()),
                other => Failure::Integrity(other.to_string()),
            })?;
            writeln!(out, "{count}")?;
        }
        Command::Sqrt(c) => {
            let text = std::fs::read_to_string(&c.matrix_file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", c.matrix_file.display())))?;
            let a: BitMatrix = text.parse().map_err(|e: LinalgError| Failure::Usage(e.to_string()))?;
            match sqrt(&a) {
                Ok(b) => {
                    if b.square() != a {
                        return Err(Failure::Integrity("computed root does not square to the input".into()));
                    }
                    write!(out, "{b}")?;
                }
                Err(CanonicalError::NotSquare { phi, partition }) => {
                    return Err(Failure::Refused(format!("not a square: witness ({phi}, {partition})")));
                }
            }
        }
        Command::Ratios(c) => {
            let series = ratio_series(c.family.into(), c.ring.into(), c.terms, c.precision_bits)?;
            write!(out, "{}", series.to_csv())?;
        }
    }
    Ok(())
}
