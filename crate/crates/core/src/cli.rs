//! Command-line front end. `run` is the whole program minus process exit, so
//! it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::bounds::{compare_thm_vs_szsz, comparison_table, DigitMode};
use crate::engine::{
    k_cutoff, optimize_delta, tail_threshold, theorem_delta, verify_delta, verify_range, xu_survivor_count,
    Candidate, DeltaPolicy, FilterSet, RangeOutcome, Verdict, VerifyOptions,
};
use crate::error::Error;
use crate::quad::{is_perfect_square, Rational};
use crate::report::{
    emit_certificate, emit_optimize, emit_range, emit_table, format_rational, parse_rational, CertificateDocument,
    Command, Format, OptimizeDocument, RangeDocument, RunConfig, Timings,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fpp-seshadri", version, about = "Exact certificates for multipoint Seshadri bounds on fake projective planes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exhaustively exclude submaximal curves below 1/(√r + δ).
    Verify(VerifyArgs),
    /// Run `verify` for every non-square r in a range.
    VerifyRange(RangeArgs),
    /// Smallest passing δ on a grid.
    Optimize(OptimizeArgs),
    /// Degree above which no check is needed.
    Cutoff(CutoffArgs),
    /// Comparison table against ℙ².
    Table(TableArgs),
    /// Compare 1/(√r + δ) with √(49r+8)/(7r+1).
    Compare(CompareArgs),
    /// Large-r closure: no Xu survivors above k_max² − 3.
    Tail(TailArgs),
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn filters_arg(s: &str) -> Result<FilterSet, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    /// Comma-separated subset of threshold, roth_def, roth_b, xu.
    #[arg(long, value_parser = filters_arg, default_value = "threshold,roth_def,xu")]
    filters: FilterSet,
    /// Force the degree bound (49 reproduces the uniform bound).
    #[arg(long = "kmax")]
    k_max: Option<u64>,
    /// List threshold rejections individually.
    #[arg(long)]
    full: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    r: u64,
    /// Exact rational such as 0.031 or 31/1000; defaults to the tabulated δ(r).
    #[arg(long, value_parser = rational_arg)]
    delta: Option<Rational>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long)]
    r_from: u64,
    #[arg(long)]
    r_to: u64,
    /// Uniform δ; defaults to the tabulated δ(r).
    #[arg(long, value_parser = rational_arg)]
    delta: Option<Rational>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long)]
    r: u64,
    #[arg(long, value_parser = rational_arg, default_value = "1/1000")]
    grid: Rational,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CutoffArgs {
    #[arg(long, value_parser = rational_arg)]
    delta: Rational,
    /// Also report whether the cutoff inequalities hold for this r.
    #[arg(long)]
    r: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 2)]
    r_from: u64,
    #[arg(long, default_value_t = 16)]
    r_to: u64,
    #[arg(long, value_enum, default_value = "four")]
    digits: DigitMode,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, conflicts_with_all = ["r_from", "r_to"])]
    r: Option<u64>,
    #[arg(long, requires = "r_to")]
    r_from: Option<u64>,
    #[arg(long, requires = "r_from")]
    r_to: Option<u64>,
    #[arg(long, value_parser = rational_arg, default_value = "13/1000")]
    delta: Rational,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TailArgs {
    /// Degree bound; defaults to k_cutoff(δ) − 1.
    #[arg(long = "kmax")]
    k_max: Option<u64>,
    #[arg(long, value_parser = rational_arg, default_value = "1/100")]
    delta: Rational,
    #[command(flatten)]
    output: Output,
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, output: &Output, text: &str) -> Result<(), Error> {
        match &output.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::OutOfRange(format!("cannot write {}: {e}", path.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::OutOfRange(format!("stdout: {e}"))),
        }
    }

    fn note(&mut self, line: &str) {
        let _ = writeln!(self.stderr, "{line}");
    }
}

fn config(command: Command, output: &Output, format: Format) -> RunConfig {
    RunConfig {
        format,
        output_path: output.out.clone(),
        ..RunConfig::new(command)
    }
}

fn with_engine(mut cfg: RunConfig, engine: &EngineArgs) -> RunConfig {
    cfg.filters = engine.filters.clone();
    cfg.k_max_override = engine.k_max;
    cfg.full = engine.full;
    cfg
}

fn options(engine: &EngineArgs, output: &Output) -> VerifyOptions {
    VerifyOptions {
        k_max: engine.k_max,
        full: engine.full,
        threads: output.threads,
    }
}

fn elapsed(start: Instant) -> Timings {
    Timings::from_millis(start.elapsed().as_millis())
}

/// `(k, m, M, ratio, case, f)`
pub fn witness_line(c: &Candidate) -> String {
    format!(
        "({}, {}, {}, {}, {}, {})",
        c.k(),
        c.m(),
        c.big_m(),
        format_rational(&c.ratio()),
        c.case_id(),
        c.f_value()
    )
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
    }
}

fn run_verify(io: &mut Io, a: &VerifyArgs) -> Result<i32, Error> {
    let delta = match &a.delta {
        Some(d) => d.clone(),
        None => theorem_delta(a.r).ok_or(Error::PerfectSquare(a.r))?,
    };
    let start = Instant::now();
    let cert = verify_delta(a.r, &delta, &a.engine.filters, &options(&a.engine, &a.output))?;
    let format = a.output.format.unwrap_or_default();
    let mut cfg = with_engine(config(Command::Verify, &a.output, format), &a.engine);
    cfg.r = Some(a.r);
    cfg.delta = Some(delta.into());
    let doc = CertificateDocument::new(cfg, &cert, elapsed(start));
    io.emit(&a.output, &emit_certificate(&doc, format)?)?;
    io.note(&format!(
        "{} r={} delta={} k_max={} survivors={}",
        cert.verdict,
        cert.r,
        format_rational(&cert.delta),
        cert.k_max,
        cert.survivors.len()
    ));
    for c in &cert.survivors {
        io.note(&format!("witness {}", witness_line(c)));
    }
    Ok(exit_for(cert.verdict))
}

fn run_range(io: &mut Io, a: &RangeArgs) -> Result<i32, Error> {
    let policy = match &a.delta {
        Some(d) => DeltaPolicy::Uniform(d.clone()),
        None => DeltaPolicy::Theorem,
    };
    let start = Instant::now();
    let opts = options(&a.engine, &a.output);
    let report = verify_range(a.r_from, a.r_to, &policy, &a.engine.filters, &opts)?;
    let tail = match &a.delta {
        Some(d) => {
            let k_max = a.engine.k_max.unwrap_or(k_cutoff(d)? - 1);
            (k_max >= 2).then(|| tail_threshold(k_max)).transpose()?
        }
        None => None,
    };
    let format = a.output.format.unwrap_or_default();
    let mut cfg = with_engine(config(Command::VerifyRange, &a.output, format), &a.engine);
    cfg.r_from = Some(a.r_from);
    cfg.r_to = Some(a.r_to);
    cfg.delta = a.delta.clone().map(Into::into);
    let doc = RangeDocument::new(cfg, &report, &a.engine.filters, tail, elapsed(start));
    io.emit(&a.output, &emit_range(&doc, format)?)?;
    io.note(&format!("{} r={}..{}", report.verdict, a.r_from, a.r_to));
    for entry in report.failures() {
        if let RangeOutcome::Verified(cert) = &entry.outcome {
            for c in &cert.survivors {
                io.note(&format!("witness r={} {}", entry.r, witness_line(c)));
            }
        }
    }
    Ok(exit_for(report.verdict))
}

fn run_optimize(io: &mut Io, a: &OptimizeArgs) -> Result<i32, Error> {
    let start = Instant::now();
    let res = optimize_delta(a.r, &a.grid, &a.engine.filters, &options(&a.engine, &a.output))?;
    let format = a.output.format.unwrap_or_default();
    let mut cfg = with_engine(config(Command::Optimize, &a.output, format), &a.engine);
    cfg.r = Some(a.r);
    cfg.grid_step = Some(a.grid.clone().into());
    let doc = OptimizeDocument::new(cfg, &res, &a.engine.filters, elapsed(start));
    io.emit(&a.output, &emit_optimize(&doc, format)?)?;
    io.note(&format!("optimal delta for r={}: {}", a.r, format_rational(&res.delta)));
    for c in &res.binding {
        io.note(&format!("binding {}", witness_line(c)));
    }
    Ok(EXIT_PASS)
}

fn run_cutoff(io: &mut Io, a: &CutoffArgs) -> Result<i32, Error> {
    let k = k_cutoff(&a.delta)?;
    let text = match (a.output.format, a.r) {
        (None, _) => format!("{k}\n"),
        (Some(Format::Json), Some(r)) => {
            let rec = crate::engine::cutoff_record(r, &a.delta, None)?;
            serde_json::to_string_pretty(&rec).map_err(|e| Error::OutOfRange(e.to_string()))? + "\n"
        }
        (Some(Format::Json), None) => format!("{{\n  \"k_cutoff\": {k},\n  \"k_max\": {}\n}}\n", k - 1),
        (Some(Format::Csv), _) => format!("k_cutoff,k_max\n{k},{}\n", k - 1),
        (Some(Format::Md), _) => format!("| k_cutoff | k_max |\n|---|---|\n| {k} | {} |\n", k - 1),
    };
    io.emit(&a.output, &text)?;
    Ok(EXIT_PASS)
}

fn run_table(io: &mut Io, a: &TableArgs) -> Result<i32, Error> {
    let rows = comparison_table(a.r_from, a.r_to)?;
    io.emit(&a.output, &emit_table(&rows, a.output.format.unwrap_or(Format::Md), a.digits)?)?;
    Ok(EXIT_PASS)
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Greater => "theorem_greater",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Less => "szsz_greater",
    }
}

fn run_compare(io: &mut Io, a: &CompareArgs) -> Result<i32, Error> {
    let (from, to) = match (a.r, a.r_from, a.r_to) {
        (Some(r), _, _) => (r, r),
        (None, Some(f), Some(t)) => (f, t),
        _ => (10, 22),
    };
    let mut rows = Vec::new();
    for r in from..=to {
        if is_perfect_square(r) && a.r.is_none() {
            continue;
        }
        rows.push((r, ordering_name(compare_thm_vs_szsz(r, &a.delta)?)));
    }
    let text = match a.output.format {
        None => rows.iter().map(|(r, o)| format!("{r} {o}\n")).collect::<String>(),
        Some(Format::Json) => {
            let v: Vec<_> = rows
                .iter()
                .map(|(r, o)| serde_json::json!({ "r": r, "delta": format_rational(&a.delta), "ordering": o }))
                .collect();
            serde_json::to_string_pretty(&v).map_err(|e| Error::OutOfRange(e.to_string()))? + "\n"
        }
        Some(Format::Csv) => {
            let mut s = String::from("r,delta,ordering\n");
            for (r, o) in &rows {
                s += &format!("{r},{},{o}\n", format_rational(&a.delta));
            }
            s
        }
        Some(Format::Md) => {
            let mut s = String::from("| r | ordering |\n|---|---|\n");
            for (r, o) in &rows {
                s += &format!("| {r} | {o} |\n");
            }
            s
        }
    };
    io.emit(&a.output, &text)?;
    Ok(EXIT_PASS)
}

fn run_tail(io: &mut Io, a: &TailArgs) -> Result<i32, Error> {
    let k_max = match a.k_max {
        Some(k) => k,
        None => k_cutoff(&a.delta)? - 1,
    };
    let rec = tail_threshold(k_max)?;
    let spot_r = rec.r_threshold + 1;
    let survivors = xu_survivor_count(spot_r, k_max);
    let text = match a.output.format {
        None => format!("{}\n", rec.r_threshold),
        Some(format) => {
            let v = serde_json::json!({
                "tail_record": rec,
                "spot_check_r": spot_r,
                "xu_survivors": survivors,
            });
            match format {
                Format::Json => serde_json::to_string_pretty(&v).map_err(|e| Error::OutOfRange(e.to_string()))? + "\n",
                Format::Csv => format!(
                    "k_max,r_threshold,spot_check_r,xu_survivors\n{k_max},{},{spot_r},{survivors}\n",
                    rec.r_threshold
                ),
                Format::Md => format!(
                    "- k_max: {k_max}\n- r threshold: {}\n- spot check at r = {spot_r}: {survivors} Xu survivors\n- {}\n",
                    rec.r_threshold, rec.statement
                ),
            }
        }
    };
    io.emit(&a.output, &text)?;
    io.note(&format!("spot check r={spot_r}: {survivors} Xu-surviving patterns"));
    Ok(if survivors == 0 { EXIT_PASS } else { EXIT_FAIL })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_PASS
            };
        }
    };
    let mut io = Io { stdout, stderr };
    let result = match &cli.command {
        Cmd::Verify(a) => run_verify(&mut io, a),
        Cmd::VerifyRange(a) => run_range(&mut io, a),
        Cmd::Optimize(a) => run_optimize(&mut io, a),
        Cmd::Cutoff(a) => run_cutoff(&mut io, a),
        Cmd::Table(a) => run_table(&mut io, a),
        Cmd::Compare(a) => run_compare(&mut io, a),
        Cmd::Tail(a) => run_tail(&mut io, a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            io.note(&format!("error: {e}"));
            EXIT_USAGE
        }
    }
}
