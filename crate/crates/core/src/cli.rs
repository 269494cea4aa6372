//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::dp::{self, Engine};
use crate::io::fasta::{self, FastaError};
use crate::io::matrix;
use crate::io::render::RenderOptions;
use crate::io::report::{AlignmentReport, Parameters, EXTENSION_FREE_LABEL};
use crate::model::{CodingSequence, ExtensionCharge, GeneticCode, NucleotideScores, ScoringScheme};
use crate::oracle;

#[derive(Parser, Debug)]
#[command(name = "fsalign", version, about = "Align protein-coding DNA sequences with frameshift opening and extension costs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Align two sequences: one FASTA file with two records, or two files.
    Align(AlignArgs),
    /// Score a given alignment (two-record gapped FASTA).
    Rescore(RescoreArgs),
    /// Compare the aligners with exhaustive search on random small inputs.
    #[command(hide = true)]
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct AlignArgs {
    /// One file holding two records, or two files holding one record each.
    #[arg(required_unless_present = "pairs", num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Manifest of pairs to align, one per line: `A.fa B.fa` or `AB.fa`.
    #[arg(long, conflicts_with = "files")]
    pairs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = EngineArg::Exact)]
    engine: EngineArg,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct RescoreArgs {
    /// Gapped FASTA file with the two alignment rows.
    alignment: PathBuf,
    /// FASTA file with the two ungapped sequences the rows must strip to.
    #[arg(long)]
    sequences: Option<PathBuf>,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 200)]
    pairs: usize,
    #[arg(long, default_value_t = 5)]
    schemes: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ScoringArgs {
    /// NCBI-format amino-acid matrix; the bundled BLOSUM62 by default.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    gap_cost: f64,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    fs_open_cost: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    fs_extension_cost: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    nuc_match: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    nuc_mismatch: f64,
    /// Set the frameshift extension cost to zero.
    #[arg(long)]
    no_extension: bool,
    /// Charge half the extension cost per direction (split) or all of it.
    #[arg(long, value_enum, default_value_t = ChargeArg::Split)]
    extension_charge: ChargeArg,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Columns per rendered block.
    #[arg(long, default_value_t = 60)]
    wrap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Color frameshift markers in the rendered alignment.
    #[arg(long)]
    color: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Exact,
    TwoTable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChargeArg {
    Split,
    Full,
}

/// A failure that maps to exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code: 0 on success, 1 on invalid input, 2 on misuse.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Align(args) => run_align(args, out),
        Command::Rescore(args) => run_rescore(args, out),
        Command::Selftest(args) => run_selftest(args, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

struct Setup {
    scheme: ScoringScheme,
    params: Parameters,
}

fn setup(s: &ScoringArgs) -> Result<Setup, Failure> {
    let (amino, name) = match &s.matrix {
        Some(p) => (matrix::load_matrix(p)?, p.display().to_string()),
        None => (matrix::blosum62(), "BLOSUM62".to_string()),
    };
    let ext = if s.no_extension { 0.0 } else { s.fs_extension_cost };
    let charge = match s.extension_charge {
        ChargeArg::Split => ExtensionCharge::Split,
        ChargeArg::Full => ExtensionCharge::Full,
    };
    let scheme = ScoringScheme::new(
        amino,
        NucleotideScores::match_mismatch(s.nuc_match, s.nuc_mismatch)?,
        s.gap_cost,
        s.fs_open_cost,
        ext,
    )?
    .with_extension_charge(charge);
    let mut params = Parameters::from_scheme(&scheme, name);
    params.nuc_match = Some(s.nuc_match);
    params.nuc_mismatch = Some(s.nuc_mismatch);
    params.mode = s.no_extension.then_some(EXTENSION_FREE_LABEL);
    Ok(Setup { scheme, params })
}

fn render_options(o: &OutputArgs) -> RenderOptions {
    RenderOptions { width: o.wrap, color: o.color }
}

fn emit(report: &AlignmentReport, o: &OutputArgs, out: &mut dyn Write) -> Result<(), Failure> {
    match o.format {
        Format::Text => write!(out, "{}", report.to_text())?,
        Format::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(())
}

fn load_pair(files: &[PathBuf]) -> Result<(CodingSequence, CodingSequence), Failure> {
    match files {
        [one] => {
            let mut seqs = fasta::read_fasta(one)?;
            if seqs.len() != 2 {
                return Err(FastaError::RecordCount { expected: 2, found: seqs.len() }.into());
            }
            let b = seqs.pop().unwrap();
            Ok((seqs.pop().unwrap(), b))
        }
        [fa, fb] => Ok((first_record(fa)?, first_record(fb)?)),
        _ => Err(Failure("expected one or two FASTA files".into())),
    }
}

fn first_record(path: &Path) -> Result<CodingSequence, Failure> {
    let mut seqs = fasta::read_fasta(path)?;
    if seqs.len() != 1 {
        return Err(Failure(format!(
            "{}: expected 1 record, found {}",
            path.display(),
            seqs.len()
        )));
    }
    Ok(seqs.remove(0))
}

fn align_pair(
    a: &CodingSequence,
    b: &CodingSequence,
    setup: &Setup,
    engine: Engine,
    render: RenderOptions,
) -> Result<AlignmentReport, Failure> {
    let code = GeneticCode::standard();
    let result = dp::align_with(a, b, &setup.scheme, &code, engine)?;
    let mut params = setup.params.clone();
    params.engine = Some(engine);
    Ok(AlignmentReport::build(a, b, &result.alignment, Some(result.score), &setup.scheme, &code, params, render)?)
}

fn run_align(args: AlignArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let setup = setup(&args.scoring)?;
    let engine = match args.engine {
        EngineArg::Exact => Engine::Exact,
        EngineArg::TwoTable => Engine::TwoTable,
    };
    let render = render_options(&args.output);
    let reports = match &args.pairs {
        None => vec![align_pair_files(&args.files, &setup, engine, render)?],
        Some(manifest) => {
            let base = manifest.parent().unwrap_or(Path::new(""));
            let text = fasta::read_text(manifest)?;
            let jobs: Vec<Vec<PathBuf>> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.split_whitespace().map(|p| base.join(p)).collect())
                .collect();
            jobs.par_iter()
                .map(|files| align_pair_files(files, &setup, engine, render))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    if let Some(path) = &args.output.report {
        let json = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        std::fs::write(path, json + "\n").map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    if reports.len() > 1 && matches!(args.output.format, Format::Json) {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
        return Ok(0);
    }
    for (k, r) in reports.iter().enumerate() {
        if k > 0 {
            writeln!(out)?;
        }
        emit(r, &args.output, out)?;
    }
    Ok(0)
}

fn align_pair_files(
    files: &[PathBuf],
    setup: &Setup,
    engine: Engine,
    render: RenderOptions,
) -> Result<AlignmentReport, Failure> {
    let (a, b) = load_pair(files)?;
    align_pair(&a, &b, setup, engine, render)
}

fn run_rescore(args: RescoreArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let setup = setup(&args.scoring)?;
    let (alignment, mut a, mut b) = fasta::read_alignment(&args.alignment)?;
    if let Some(path) = &args.sequences {
        let (sa, sb) = load_pair(std::slice::from_ref(path))?;
        alignment.check_against(&sa, &sb)?;
        (a, b) = (sa, sb);
    }
    let code = GeneticCode::standard();
    let report = AlignmentReport::build(
        &a,
        &b,
        &alignment,
        None,
        &setup.scheme,
        &code,
        setup.params.clone(),
        render_options(&args.output),
    )?;
    if let Some(path) = &args.output.report {
        std::fs::write(path, report.to_json() + "\n").map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    emit(&report, &args.output, out)?;
    Ok(0)
}

fn run_selftest(args: SelftestArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let summary = oracle::campaign(args.pairs, args.schemes, args.seed);
    writeln!(
        out,
        "pairs: {}  schemes: {}  exact engine mismatches: {}  two-table engine mismatches: {}",
        summary.pairs,
        summary.schemes,
        summary.exact_mismatches.len(),
        summary.two_table_mismatches.len()
    )?;
    for m in &summary.exact_mismatches {
        writeln!(out, "exact mismatch: scheme {} {} {} optimum {} got {}", m.scheme, m.a, m.b, m.optimum, m.reported)?;
    }
    Ok(if summary.exact_mismatches.is_empty() { 0 } else { 1 })
}
