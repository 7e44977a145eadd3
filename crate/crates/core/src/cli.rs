//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::analysis::{density_series, write_density_csv, DensityOptions};
use crate::constructions::{
    build_theorem27, build_theorem29_linf, build_theorem29_lp, dirac, Construction, Growth, Mode, Relaxation, Theorem,
    DEFAULT_CEILING_BITS,
};
use crate::continuum::{maximal_centered_cont, maximal_uncentered_cont, StepFunction};
use crate::corpus::{binary_signals, oracle_diff, random_signals};
use crate::error::{Error, Result};
use crate::growth::GrowthSpec;
use crate::io::{certificate_to_json, read_signal_file, signal_to_json, step_to_json, write_json, SignalFile};
use crate::maxengine::{profile, FrequencyRecord, PointSet, ProfileOptions};
use crate::rational::{format_rat, parse_int, parse_rat, Rat};
use crate::signal::{AnySignal, Caps};
use crate::verify::{
    verify_delta, verify_theorem27, verify_theorem29_linf, verify_theorem29_lp, Outcome, Theorem27Options,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hlfreq",
    version,
    about = "Exact maximal and frequency functions on Z and on the line"
)]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

/// Resource limits, shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct CapArgs {
    /// Widest range materialized densely.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    dense_width_cap: u64,
    /// Longest power-law range summed term by term.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    summation_cap: u64,
    /// Working precision of enclosures, in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: u32,
}

impl CapArgs {
    fn caps(&self) -> Result<Caps> {
        if self.dense_width_cap == 0 || self.summation_cap == 0 || self.precision_bits == 0 {
            return Err(Error::ParameterViolation("caps must be positive".into()));
        }
        Ok(Caps {
            dense_width_cap: self.dense_width_cap,
            summation_cap: self.summation_cap,
            precision_bits: self.precision_bits,
            ..Caps::default()
        })
    }
}

/// Parameters shared by `construct` and `verify`.
#[derive(Args, Debug, Clone)]
struct ConstructionArgs {
    /// Growth function: log, loglog, logpow B, power B or table:N=g,...
    #[arg(long, num_args = 1..=2, default_values_t = [String::from("log")])]
    g: Vec<String>,
    /// Number of blocks.
    #[arg(long)]
    k: Option<u32>,
    /// paper or relaxed.
    #[arg(long, default_value = "paper")]
    mode: String,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    /// First scale in relaxed mode.
    #[arg(long)]
    n1: Option<String>,
    /// Ratio between consecutive scales in relaxed mode.
    #[arg(long)]
    growth_factor: Option<String>,
}

impl ConstructionArgs {
    fn growth(&self) -> Result<GrowthSpec> {
        GrowthSpec::parse(&self.g.join(" "))
    }

    fn mode(&self) -> Result<Mode> {
        match self.mode.as_str() {
            "paper" | "paper_exact" => {
                if self.n1.is_some() || self.growth_factor.is_some() {
                    return Err(Error::ParameterViolation(
                        "--n1 and --growth-factor need --mode relaxed".into(),
                    ));
                }
                Ok(Mode::PaperExact)
            }
            "relaxed" => Ok(Mode::Relaxed(Relaxation {
                n1: self.n1.as_deref().map(parse_int).transpose()?,
                growth: self
                    .growth_factor
                    .as_deref()
                    .map(|f| parse_int(f).map(Growth::Factor))
                    .transpose()?,
            })),
            m => Err(Error::Parse(format!("unknown mode `{m}`"))),
        }
    }

    fn p_alpha(&self) -> Result<(Rat, Rat)> {
        let p = parse_rat(self.p.as_deref().unwrap_or("2"))?;
        let alpha = parse_rat(self.alpha.as_deref().unwrap_or("3/5"))?;
        Ok((p, alpha))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a signal and, optionally, its certificate.
    Construct {
        /// delta, theorem27, theorem27-continuous, theorem29-linf or theorem29-lp
        theorem: String,
        #[command(flatten)]
        params: ConstructionArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Frequency profile of a signal at chosen points.
    Profile {
        #[arg(long)]
        signal: PathBuf,
        /// Inclusive range A..B.
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        range: Option<String>,
        /// Comma-separated points.
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        uncentered: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Density table of the frequency sets.
    Density {
        #[arg(long)]
        signal: PathBuf,
        #[arg(long = "N-list")]
        n_list: String,
        #[arg(long = "C", default_value = "2")]
        c: String,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        #[arg(long, num_args = 1..=2)]
        g: Option<Vec<String>>,
        #[arg(long)]
        uncentered: bool,
        /// Most points evaluated one by one.
        #[arg(long, default_value_t = 2_000_000)]
        max_points: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        /// delta, theorem27, theorem29-linf or theorem29-lp
        subject: String,
        #[command(flatten)]
        params: ConstructionArgs,
        /// Largest |n| for the delta suite.
        #[arg(long, default_value_t = 1000)]
        radius: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare the event engines with the brute-force oracles.
    OracleDiff {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        max_width: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also include every 0/1 signal up to this width.
        #[arg(long, default_value_t = 0)]
        binary_width: usize,
    },
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            let msg = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{msg}");
            if e.is_resource_cap() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let caps = cli.caps.caps()?;
    match cli.command {
        Command::Construct {
            theorem,
            params,
            out,
            cert,
        } => construct(&theorem, &params, &caps, &out, cert.as_deref()),
        Command::Profile {
            signal,
            range,
            points,
            uncentered,
            out,
        } => {
            let set = match (range, points) {
                (Some(r), _) => parse_range(&r)?,
                (None, Some(p)) => PointSet::List(parse_list(&p)?),
                (None, None) => return Err(Error::Parse("--range or --points is required".into())),
            };
            run_profile(&read_signal_file(&signal, &caps)?, &set, uncentered, &out)
        }
        Command::Density {
            signal,
            n_list,
            c,
            epsilon,
            g,
            uncentered,
            max_points,
            out,
        } => {
            let SignalFile::Discrete(sig) = read_signal_file(&signal, &caps)? else {
                return Err(Error::InvalidSignal(
                    "density tables need a signal on the integers".into(),
                ));
            };
            let opts = DensityOptions {
                c: parse_rat(&c)?,
                epsilon: parse_rat(&epsilon)?,
                growth: g.map(|g| GrowthSpec::parse(&g.join(" "))).transpose()?,
                uncentered,
                max_points,
            };
            let ns = parse_list(&n_list)?;
            let (rows, code) = match density_series(&sig, &ns, &opts) {
                Ok(rows) => (rows, EXIT_PASS),
                Err(Error::BudgetExceeded { partial }) => {
                    eprintln!(
                        "{}",
                        json!({ "error": "BudgetExceeded", "message": format!("{} rows completed", partial.len()) })
                    );
                    (*partial, EXIT_CAP)
                }
                Err(e) => return Err(e),
            };
            write_density_csv(&rows, File::create(&out)?)?;
            Ok(code)
        }
        Command::Verify {
            subject,
            params,
            radius,
            report,
        } => {
            let rep = match subject.as_str() {
                "delta" => verify_delta(radius)?,
                "theorem27" => verify_theorem27(&Theorem27Options {
                    g: params.growth()?,
                    k_max: params.k.unwrap_or(4),
                    mode: params.mode()?,
                    ..Theorem27Options::default()
                })?,
                "theorem29-linf" => verify_theorem29_linf(params.k.unwrap_or(5), &params.mode()?)?,
                "theorem29-lp" => {
                    let (p, alpha) = params.p_alpha()?;
                    verify_theorem29_lp(&p, &alpha, params.k.unwrap_or(4), &params.mode()?, &caps)?
                }
                s => return Err(Error::Parse(format!("unknown verification subject `{s}`"))),
            };
            for c in &rep.claims {
                println!(
                    "{:<13} {:<16} {}  ({})",
                    c.verdict.label(),
                    c.basis.label(),
                    c.claim,
                    c.detail
                );
            }
            if let Some(path) = report {
                write_json(&path, &rep.to_json())?;
            }
            Ok(match rep.outcome() {
                Outcome::Pass => EXIT_PASS,
                Outcome::Fail => EXIT_FAIL,
                Outcome::CapExceeded => EXIT_CAP,
            })
        }
        Command::OracleDiff {
            trials,
            max_width,
            seed,
            binary_width,
        } => {
            let mut signals = random_signals(trials, max_width, seed);
            signals.extend(binary_signals(binary_width));
            let summary = oracle_diff(&signals)?;
            for m in summary.mismatches.iter().take(20) {
                println!("mismatch: signal {} at n = {}: {}", m.signal, m.n, m.what);
            }
            println!(
                "{} signals, {} points, {} mismatches",
                summary.signals,
                summary.points,
                summary.mismatches.len()
            );
            Ok(if summary.mismatches.is_empty() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
    }
}

fn construct(
    theorem: &str,
    params: &ConstructionArgs,
    caps: &Caps,
    out: &Path,
    cert_path: Option<&Path>,
) -> Result<i32> {
    if theorem == "delta" {
        write_json(out, &signal_to_json(&AnySignal::Blocks(dirac())))?;
        return Ok(EXIT_PASS);
    }
    let mode = params.mode()?;
    let (signal_json, cert) = match Theorem::parse(theorem)? {
        t @ (Theorem::T27Discrete | Theorem::T27Continuous) => {
            let continuous = t == Theorem::T27Continuous;
            let (c, cert) = build_theorem27(
                &params.growth()?,
                params.k.unwrap_or(4),
                &mode,
                continuous,
                DEFAULT_CEILING_BITS,
            )?;
            let j = match c {
                Construction::Blocks(b) => signal_to_json(&AnySignal::Blocks(b)),
                Construction::Step(s) => step_to_json(&s),
            };
            (j, cert)
        }
        Theorem::T29Linf => {
            let (s, cert) = build_theorem29_linf(params.k.unwrap_or(5), &mode)?;
            (signal_to_json(&AnySignal::Blocks(s)), cert)
        }
        Theorem::T29Lp => {
            let (p, alpha) = params.p_alpha()?;
            let (s, cert) = build_theorem29_lp(&p, &alpha, params.k.unwrap_or(4), &mode, caps)?;
            (signal_to_json(&AnySignal::Blocks(s)), cert)
        }
    };
    write_json(out, &signal_json)?;
    if let Some(path) = cert_path {
        write_json(path, &certificate_to_json(&cert))?;
    }
    for c in &cert.conditions {
        println!("{:<10} {:<18} {}", c.status.label(), c.name, c.note);
    }
    Ok(EXIT_PASS)
}

fn parse_range(s: &str) -> Result<PointSet> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("range `{s}` must look like A..B")))?;
    Ok(PointSet::Range(parse_int(a)?, parse_int(b)?))
}

fn parse_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',').map(|x| parse_int(x.trim())).collect()
}

fn run_profile(file: &SignalFile, points: &PointSet, uncentered: bool, out: &Path) -> Result<i32> {
    let mut w = csv::Writer::from_writer(File::create(out)?);
    match file {
        SignalFile::Discrete(sig) => {
            let opts = ProfileOptions {
                include_uncentered: uncentered,
                ..ProfileOptions::default()
            };
            let rows = profile(sig, points, &opts)?;
            write_profile_rows(&mut w, &rows, uncentered)?;
        }
        SignalFile::Step(step) => {
            let xs: Vec<Rat> = match points {
                PointSet::List(v) => v.iter().cloned().map(Rat::from_integer).collect(),
                PointSet::Range(a, b) => {
                    let mut xs = Vec::new();
                    let mut n = a.clone();
                    while &n <= b {
                        xs.push(Rat::from_integer(n.clone()));
                        n += 1;
                    }
                    xs
                }
            };
            write_step_rows(&mut w, step, &xs, uncentered)?;
        }
    }
    w.flush()?;
    Ok(EXIT_PASS)
}

fn write_profile_rows<W: Write>(w: &mut csv::Writer<W>, rows: &[FrequencyRecord], uncentered: bool) -> Result<()> {
    let mut header = vec!["n", "max_value", "r_n", "certified"];
    if uncentered {
        header.extend(["max_value_uncentered", "min_diameter", "r_tilde"]);
    }
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.n.to_string(),
            r.max_value.render(),
            r.r_n.to_string(),
            r.certified.to_string(),
        ];
        if let Some(u) = &r.uncentered {
            rec.extend([
                u.max_value.render(),
                u.min_diameter.to_string(),
                format_rat(&u.r_tilde()),
            ]);
        }
        w.write_record(&rec)?;
    }
    Ok(())
}

fn write_step_rows<W: Write>(w: &mut csv::Writer<W>, step: &StepFunction, xs: &[Rat], uncentered: bool) -> Result<()> {
    let mut header = vec!["x", "max_value", "radius", "attained"];
    if uncentered {
        header.extend(["max_value_uncentered", "radius_uncentered", "attained_uncentered"]);
    }
    w.write_record(&header)?;
    for x in xs {
        let c = maximal_centered_cont(step, x)?;
        let mut rec = vec![
            format_rat(x),
            format_rat(&c.max_value),
            format_rat(&c.radius),
            c.attained.to_string(),
        ];
        if uncentered {
            let u = maximal_uncentered_cont(step, x)?;
            rec.extend([format_rat(&u.max_value), format_rat(&u.radius), u.attained.to_string()]);
        }
        w.write_record(&rec)?;
    }
    Ok(())
}
