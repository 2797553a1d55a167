//! Command-line front end for `ddf-core`.
//!
//! [`run`] takes the argument list and output streams explicitly so tests
//! can drive it in-process. Exit codes: 0 success or verdict produced, 1
//! validation failure or exceeded budget, 2 usage error.

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ddf_core::cyclotomy::{
    check_row_sums, check_sum_relation, check_unknown_quadruples, closed_form_order_2e, closed_form_order_e,
    count_summary, cyclotomic_table, CyclotomicTable, SumCheck,
};
use ddf_core::designs::{
    develop, iso_oracle, profile_direct, profile_via_differences, read_design, verify_2design, write_design, Design,
    PairCheck,
};
use ddf_core::families::{read_family, validate_ddf, write_family};
use ddf_core::isogate::{certify, gate};
use ddf_core::{build_field, Construction, DifferenceFamily, Error};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ddf",
    version,
    about = "Disjoint difference families, their designs and intersection profiles"
)]
pub struct Cli {
    /// Worker threads for the profile reduction (default: all cores).
    #[arg(long, global = true, env = "DDF_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct Source {
    /// Family file (or, where accepted, design file) to read.
    #[arg(long, short, conflicts_with_all = ["construction", "p", "r", "e"])]
    input: Option<PathBuf>,
    /// Named construction to build instead of reading a file.
    #[arg(long, short)]
    construction: Option<Construction>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u32>,
    /// Cyclotomic order for the Wilson constructions.
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Differences,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableSource {
    Brute,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a family and write it as a family file.
    Construct {
        #[command(flatten)]
        source: Source,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Develop a family into a design file.
    Develop {
        #[command(flatten)]
        source: Source,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Intersection profile as JSON.
    Profile {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "differences")]
        method: Method,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Cyclotomic-number table of order e over F_{p^n}.
    Cyclo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        e: u32,
        #[arg(long, value_enum, default_value = "brute")]
        source: TableSource,
        /// Compare brute force against the closed forms instead of printing a table.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Whether the nonisomorphism argument applies at (p, r).
    Gate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
    },
    /// Compare two constructions and emit a certificate.
    Compare {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value = "wilson-half")]
        a: Construction,
        #[arg(long, default_value = "gr-squares")]
        b: Construction,
        /// Also run the point-map search when profiles agree.
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Validate a family and check that its development is a 2-design.
    Verify {
        #[command(flatten)]
        source: Source,
    },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Fail {
    Usage(String),
    Failed(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_) | Error::InvalidParameters(_) | Error::NotADivisor { .. } | Error::Mismatch(_) => {
                Fail::Usage(e.to_string())
            }
            _ => Fail::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Failed(e.to_string())
    }
}

type CmdResult = Result<i32, Fail>;

enum Loaded {
    Family(DifferenceFamily),
    Design(Design),
}

fn read_input(path: &PathBuf) -> Result<String, Fail> {
    let mut s = String::new();
    File::open(path)
        .map_err(|e| Fail::Failed(format!("{}: {e}", path.display())))?
        .read_to_string(&mut s)?;
    Ok(s)
}

/// A family file has a four-field header (or a `# group` line); a design
/// file has three.
fn looks_like_design(text: &str) -> bool {
    for line in text.lines().map(str::trim) {
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if c.trim().starts_with("group") {
                return false;
            }
            continue;
        }
        return line.split_whitespace().count() == 3;
    }
    false
}

impl Source {
    fn load(&self, allow_design: bool) -> Result<Loaded, Fail> {
        if let Some(path) = &self.input {
            let text = read_input(path)?;
            if looks_like_design(&text) {
                if !allow_design {
                    return Err(Fail::Usage(format!(
                        "{} is a design file; a family is needed",
                        path.display()
                    )));
                }
                return Ok(Loaded::Design(read_design(BufReader::new(text.as_bytes()))?));
            }
            return Ok(Loaded::Family(read_family(BufReader::new(text.as_bytes()))?));
        }
        let Some(c) = self.construction else {
            return Err(Fail::Usage("give --input or --construction".into()));
        };
        let fam = match (self.p, self.r) {
            (Some(p), Some(r)) => c.build_with_order(p, r, self.e)?,
            (None, None) if !c.uses_parameters() => c.build_with_order(0, 0, self.e)?,
            _ => return Err(Fail::Usage(format!("{c} needs --p and --r"))),
        };
        Ok(Loaded::Family(fam))
    }

    fn family(&self) -> Result<DifferenceFamily, Fail> {
        match self.load(false)? {
            Loaded::Family(f) => Ok(f),
            Loaded::Design(_) => unreachable!("designs rejected by load"),
        }
    }
}

fn emit(output: &Option<PathBuf>, out: &mut dyn Write, bytes: &[u8]) -> Result<(), Fail> {
    match output {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(bytes))
            .map_err(|e| Fail::Failed(format!("{}: {e}", path.display()))),
        None => Ok(out.write_all(bytes)?),
    }
}

fn json_line<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("serializable");
    v.push(b'\n');
    v
}

fn cmd_profile(source: &Source, method: Method, output: &Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let profile = match (source.load(true)?, method) {
        (Loaded::Design(d), Method::Direct) => profile_direct(&d)?,
        (Loaded::Design(_), _) => {
            return Err(Fail::Usage("a design file only supports --method direct".into()));
        }
        (Loaded::Family(f), Method::Differences) => profile_via_differences(&f)?,
        (Loaded::Family(f), Method::Direct) => profile_direct(&develop(&f))?,
        (Loaded::Family(f), Method::Both) => {
            let direct = profile_direct(&develop(&f))?;
            let fast = profile_via_differences(&f)?;
            if direct != fast {
                return Err(Fail::Failed(format!(
                    "profiles disagree: direct {direct}, via differences {fast}"
                )));
            }
            fast
        }
    };
    let mut bytes = profile.to_json().into_bytes();
    bytes.push(b'\n');
    emit(output, out, &bytes)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CycloCheck {
    p: u64,
    n: u32,
    e: u32,
    q: u64,
    closed_form: Option<&'static str>,
    known_mismatches: Vec<(u32, u32)>,
    unknown_quadruples_ok: Option<bool>,
    sum_relation: Option<SumCheck>,
    row_sums_ok: bool,
    counts_ok: Option<bool>,
    pass: bool,
}

fn closed_form_for(p: u64, n: u32, e: u32) -> Result<Option<(u32, CyclotomicTable)>, Fail> {
    if n % 2 != 0 {
        return Ok(None);
    }
    let r = n / 2;
    let q = p.checked_pow(r).ok_or(Error::Overflow("p^r"))?;
    if e as u64 == q + 1 {
        return Ok(Some((1, closed_form_order_e(p, r)?)));
    }
    if e as u64 == 2 * (q + 1) && p != 2 {
        return Ok(Some((2, closed_form_order_2e(p, r)?)));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn cmd_cyclo(
    p: u64,
    n: u32,
    e: u32,
    source: TableSource,
    check: bool,
    format: Format,
    output: &Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let field = build_field(p, n)?;
    let closed = closed_form_for(p, n, e)?;
    if !check {
        let table = match source {
            TableSource::Brute => cyclotomic_table(&field, e)?,
            TableSource::ClosedForm => match closed {
                Some((_, t)) => t,
                None => {
                    return Err(Fail::Usage(format!(
                        "no closed form for e = {e} over F_{{{p}^{n}}}; e must be p^(n/2)+1 or twice that"
                    )))
                }
            },
        };
        let bytes = match format {
            Format::Csv => table.to_csv().into_bytes(),
            Format::Json => json_line(&table),
        };
        emit(output, out, &bytes)?;
        return Ok(EXIT_OK);
    }
    let brute = cyclotomic_table(&field, e)?;
    let row_sums_ok = check_row_sums(&field, &brute).is_none();
    let mut report = CycloCheck {
        p,
        n,
        e,
        q: field.order() as u64,
        closed_form: None,
        known_mismatches: Vec::new(),
        unknown_quadruples_ok: None,
        sum_relation: None,
        row_sums_ok,
        counts_ok: None,
        pass: row_sums_ok,
    };
    match closed {
        Some((1, t)) => {
            report.closed_form = Some("order-e");
            report.known_mismatches = t.known_mismatches(&brute)?;
            report.counts_ok = Some(count_summary(&brute).is_ok());
        }
        Some((_, t)) => {
            report.closed_form = Some("order-2e");
            report.known_mismatches = t.known_mismatches(&brute)?;
            report.unknown_quadruples_ok = Some(check_unknown_quadruples(&t, &brute)?.is_none());
            let te = cyclotomic_table(&field, e / 2)?;
            report.sum_relation = Some(check_sum_relation(&te, &brute)?);
        }
        None => {}
    }
    report.pass = report.row_sums_ok
        && report.known_mismatches.is_empty()
        && report.unknown_quadruples_ok != Some(false)
        && report.counts_ok != Some(false)
        && report.sum_relation.as_ref().is_none_or(|s| *s == SumCheck::Pass);
    emit(output, out, &json_line(&report))?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Serialize)]
struct VerifyReport {
    v: u32,
    k: u32,
    lambda: u32,
    b: usize,
    validation: ddf_core::ValidationReport,
    two_design: PairCheck,
    duplicate_blocks: usize,
}

fn cmd_verify(source: &Source, out: &mut dyn Write) -> CmdResult {
    let fam = source.family()?;
    let validation = validate_ddf(&fam);
    let design = develop(&fam);
    let two_design = verify_2design(&design, fam.lambda())?;
    let ok = validation.is_difference_family && two_design == PairCheck::Pass;
    let report = VerifyReport {
        v: fam.v(),
        k: fam.k(),
        lambda: fam.lambda(),
        b: fam.b(),
        validation,
        two_design,
        duplicate_blocks: design.duplicate_blocks(),
    };
    out.write_all(&json_line(&report))?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Construct { source, output } => {
            let fam = source.family()?;
            let mut buf = Vec::new();
            write_family(&fam, &mut buf)?;
            emit(output, out, &buf)?;
            Ok(EXIT_OK)
        }
        Command::Develop { source, output } => {
            let fam = source.family()?;
            let mut buf = Vec::new();
            write_design(&develop(&fam), &mut buf)?;
            emit(output, out, &buf)?;
            Ok(EXIT_OK)
        }
        Command::Profile { source, method, output } => cmd_profile(source, *method, output, out),
        Command::Cyclo {
            p,
            n,
            e,
            source,
            check,
            format,
            output,
        } => cmd_cyclo(*p, *n, *e, *source, *check, *format, output, out),
        Command::Gate { p, r } => {
            out.write_all(&json_line(&gate(*p, *r)?))?;
            Ok(EXIT_OK)
        }
        Command::Compare {
            p,
            r,
            a,
            b,
            node_budget,
            output,
        } => {
            if p.is_some() != r.is_some() {
                return Err(Fail::Usage("--p and --r go together".into()));
            }
            let mut cert = certify(*p, *r, *a, *b)?;
            if let (Some(budget), None) = (node_budget, cert.witness_key) {
                let build = |c: &Construction| c.build(p.unwrap_or(0), r.unwrap_or(0));
                let (da, db) = (develop(&build(a)?), develop(&build(b)?));
                cert.iso_search = Some(iso_oracle(&da, &db, *budget)?);
            }
            let mut bytes = cert.to_json().into_bytes();
            bytes.push(b'\n');
            emit(output, out, &bytes)?;
            Ok(EXIT_OK)
        }
        Command::Verify { source } => cmd_verify(source, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    // Output is buffered so the command can run inside a dedicated pool.
    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(Fail::Usage("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut buf)),
            Err(e) => Err(Fail::Failed(e.to_string())),
        },
        None => dispatch(&cli.command, &mut buf),
    };
    if let Err(e) = out.write_all(&buf) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_FAILURE;
    }
    match result {
        Ok(code) => code,
        Err(Fail::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Fail::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
