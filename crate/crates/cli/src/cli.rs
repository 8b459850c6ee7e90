//! Argument parsing and command dispatch. Exit codes: 0 success, 1 usage or
//! unreadable input, 2 domain error, 3 verification failure.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cubeiso_core::classify::{classify, profile, profile2d, ProfileEntry};
use cubeiso_core::search::continuous_bound;
use cubeiso_core::symmetrize::{steiner, symmetrize_all};
use cubeiso_core::variation::{check_stationarity, reduce_to_special};
use cubeiso_core::{CubicalSet, Rat};

use crate::acceptance::{self, Config};
use crate::format::{parse_set, set_json, to_text};
use crate::parallel::sweep;
use crate::report::{classification_json, firstvar_json, profile_csv, reduction_jsonl, search_csv};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cubeiso", version, about = "Relative isoperimetry of cubical sets in the unit cube")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Precision {
    /// Bits of precision for irrational enclosures.
    #[arg(long = "precision-bits", default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..=4096))]
    pub bits: u32,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Set file (box or voxel JSON), or `-` for stdin.
    pub input: String,
}

fn rational(s: &str) -> Result<Rat, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Isoperimetric profile table as CSV.
    Profile {
        /// 2 for the square, 3 for the cube.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// A single volume `p/q`.
        #[arg(long, conflicts_with_all = ["range", "step"], value_parser = rational)]
        volume: Option<Rat>,
        /// Volume range `LO,HI` inside (0, 1/2].
        #[arg(long, default_value = "1/100,1/2")]
        range: String,
        #[arg(long, default_value = "1/100", value_parser = rational)]
        step: Rat,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        out: Output,
    },
    /// Steiner symmetrization along one axis, or along all of them.
    Symmetrize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        axis: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Reduce to a special set; the step log goes to `--log` as JSON lines.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Classify a set in the cube against the cube, tube and slab.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        out: Output,
    },
    /// First variation of every interior singular slice.
    Firstvar {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive discrete minima over monotone voxel sets, as CSV.
    Search {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        res: usize,
        /// One cell count; all counts up to half the grid when absent.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        out: Output,
    },
    /// Wavefront OBJ of the relative boundary of a 3D set.
    ExportMesh {
        #[command(flatten)]
        input: Input,
        /// Split each quad into two triangles.
        #[arg(long)]
        triangulate: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Also list every individual check.
        #[arg(long)]
        verbose: bool,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Verify(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Verify(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Verify(m) => f.write_str(m),
        }
    }
}

fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_input(input: &Input) -> Result<CubicalSet, CliError> {
    let text = if input.input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&input.input).map_err(|e| CliError::Usage(format!("{}: {e}", input.input)))?
    };
    parse_set(&text).map_err(|e| CliError::Domain(format!("{}: {e}", input.input)))
}

fn write_output(out: &Output, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut so = io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

fn parse_range(s: &str) -> Result<(Rat, Rat), CliError> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| CliError::Usage(format!("range `{s}`: expected LO,HI")))?;
    let parse = |t: &str| t.trim().parse::<Rat>().map_err(|e| CliError::Usage(format!("range `{s}`: {e}")));
    Ok((parse(lo)?, parse(hi)?))
}

fn profile_rows(dim: usize, volumes: &[Rat], bits: u32) -> Result<Vec<ProfileEntry>, CliError> {
    volumes
        .iter()
        .map(|v| match dim {
            2 => profile2d(v, bits).map_err(domain),
            3 => profile(v, bits).map_err(domain),
            _ => Err(CliError::Domain(format!("profile supports dimensions 2 and 3, got {dim}"))),
        })
        .collect()
}

fn cmd_profile(dim: usize, volume: Option<Rat>, range: &str, step: &Rat, bits: u32) -> Result<String, CliError> {
    let volumes = match volume {
        Some(v) => vec![v],
        None => {
            let (lo, hi) = parse_range(range)?;
            let half = Rat::new(1, 2);
            if !lo.is_positive() || hi > half || lo > hi {
                return Err(CliError::Domain(format!("range [{lo}, {hi}] is not inside (0, 1/2]")));
            }
            if !step.is_positive() {
                return Err(CliError::Domain(format!("step {step} must be positive")));
            }
            let mut out = Vec::new();
            let mut v = lo;
            while v <= hi {
                out.push(v.clone());
                v += step;
            }
            out
        }
    };
    profile_csv(&profile_rows(dim, &volumes, bits)?).map_err(domain)
}

fn cmd_search(dim: usize, res: usize, k: Option<usize>, jobs: usize, bits: u32) -> Result<String, CliError> {
    let rows = sweep(dim, res, k, jobs).map_err(domain)?;
    if let Some(k) = k {
        if rows.is_empty() {
            return Err(CliError::Domain(format!("cell count {k} exceeds {}", res.pow(dim as u32) / 2)));
        }
    }
    let with_bounds = rows
        .into_iter()
        .map(|r| continuous_bound(dim, res, r.k, bits).map(|b| (r, b)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(domain)?;
    search_csv(&with_bounds).map_err(domain)
}

fn cmd_verify(cfg: &Config, only: &[u8], verbose: bool, out: &Output) -> Result<(), CliError> {
    let ids: Vec<u8> =
        if only.is_empty() { acceptance::CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut text = String::new();
    let mut failed = Vec::new();
    for id in ids {
        let rep = acceptance::run_criterion(id, cfg).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?;
        let mut line = rep.line();
        if verbose {
            for c in &rep.checks {
                let mark = if c.passed { "ok" } else { "FAILED" };
                line.push_str(&format!("\n    {mark} {}: {}", c.name, c.detail));
            }
        }
        if out.out.is_some() {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
        text.push_str(&line);
        text.push('\n');
        if !rep.passed() {
            failed.push(id.to_string());
        }
    }
    if out.out.is_some() {
        write_output(out, &text)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(format!("criteria failed: {}", failed.join(", "))))
    }
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Profile { dim, volume, range, step, precision, out } => {
            write_output(&out, &cmd_profile(dim, volume, &range, &step, precision.bits)?)
        }
        Command::Symmetrize { input, axis, out } => {
            let x = read_input(&input)?;
            let y = match axis {
                Some(a) => steiner(&x, a).map_err(domain)?,
                None => symmetrize_all(&x).map_err(domain)?,
            };
            write_output(&out, &to_text(&set_json(&y)))
        }
        Command::Reduce { input, log, out } => {
            let x = read_input(&input)?;
            let red = reduce_to_special(&x).map_err(domain)?;
            let jsonl = reduction_jsonl(&red.log);
            match log {
                Some(path) => fs::write(&path, jsonl).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
                None => eprintln!("reduced in {} steps", red.log.len()),
            }
            write_output(&out, &to_text(&set_json(&red.set)))
        }
        Command::Classify { input, precision, out } => {
            let x = read_input(&input)?;
            let res = classify(&x, precision.bits).map_err(domain)?;
            for note in &res.notes {
                eprintln!("note: {note}");
            }
            write_output(&out, &to_text(&classification_json(&res)))
        }
        Command::Firstvar { input, out } => {
            let x = read_input(&input)?;
            let rep = check_stationarity(&x).map_err(domain)?;
            write_output(&out, &to_text(&firstvar_json(&rep)))
        }
        Command::Search { dim, res, k, jobs, precision, out } => {
            write_output(&out, &cmd_search(dim, res, k, jobs, precision.bits)?)
        }
        Command::ExportMesh { input, triangulate, out } => {
            let x = read_input(&input)?;
            write_output(&out, &crate::mesh::obj(&x, triangulate).map_err(domain)?)
        }
        Command::Verify { seed, jobs, only, verbose, precision, out } => {
            cmd_verify(&Config { seed, jobs, bits: precision.bits }, &only, verbose, &out)
        }
    }
}

/// Parse, run and map the outcome to an exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["cubeiso", "nonsense"]), EXIT_USAGE);
        assert_eq!(run(["cubeiso", "profile", "--volume", "1/x"]), EXIT_USAGE);
        assert_eq!(run(["cubeiso", "--version"]), 0);
    }

    #[test]
    fn domain_errors_exit_two() {
        assert_eq!(run(["cubeiso", "profile", "--volume", "3/4"]), EXIT_DOMAIN);
        assert_eq!(run(["cubeiso", "search", "--dim", "3", "--res", "9"]), EXIT_DOMAIN);
    }

    #[test]
    fn profile_range_has_fifty_rows() {
        let text = cmd_profile(3, None, "1/100,1/2", &Rat::new(1, 100), 64).unwrap();
        assert_eq!(text.lines().count(), 51);
    }
}
