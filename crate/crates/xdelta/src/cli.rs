//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 table mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use xdelta_core::arith::{self, SubgroupDelta, DEFAULT_LEVEL_CEILING};
use xdelta_core::canonical::{self, CanonicalError, Mode};
use xdelta_core::gonality::{self, TableId};
use xdelta_core::modcurve;

use crate::formsio;
use crate::report::{self, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "xdelta",
    version,
    about = "Genus and gonality of the modular curves X_Delta(N)"
)]
pub struct Cli {
    /// Largest level accepted.
    #[arg(long, global = true, env = "XDELTA_LEVEL_CEILING", default_value_t = DEFAULT_LEVEL_CEILING)]
    pub ceiling: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Certify,
    Probe,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Certify => Mode::Certify,
            ModeArg::Probe => Mode::Probe,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index, elliptic points, cusps and genus of one curve.
    Genus {
        level: u64,
        /// Generators or residues of Δ, comma-separated; closed under
        /// multiplication and ±1.
        #[arg(long, default_value = "")]
        delta: String,
    },
    /// Every Δ at one level with its invariants.
    Enumerate { level: u64 },
    /// Hyperelliptic and trigonal verdicts with their evidence.
    Classify {
        level: u64,
        #[arg(long, default_value = "")]
        delta: String,
        /// Forms file for the canonical-ideal tests.
        #[arg(long)]
        forms: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Probe)]
        mode: ModeArg,
    },
    /// Recompute one of the gold tables and report mismatches.
    Tables {
        /// 1, 2 or 3.
        table: u8,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Relations of one degree among the forms in a file.
    Relations {
        forms: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        degree: u8,
        #[arg(long, value_enum, default_value_t = ModeArg::Probe)]
        mode: ModeArg,
    },
    /// Petri cubic-generator count for a genus >= 5 basis.
    Petri {
        forms: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Probe)]
        mode: ModeArg,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn data(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

fn canonical_failure(e: CanonicalError) -> Failure {
    data(e)
}

fn parse_delta(level: u64, spec: &str, ceiling: u64) -> Result<SubgroupDelta, Failure> {
    let gens = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| usage(format!("invalid delta generator `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    arith::closure_with_ceiling(level, &gens, ceiling).map_err(usage)
}

fn check_level(level: u64, ceiling: u64) -> Result<(), Failure> {
    if level == 0 {
        return Err(usage("level must be positive"));
    }
    if level > ceiling {
        return Err(usage(format!(
            "level {level} exceeds the ceiling {ceiling} (set --ceiling or XDELTA_LEVEL_CEILING)"
        )));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let ceiling = cli.ceiling;
    let mut emit = |text: &str| out.write_all(text.as_bytes()).map_err(data);
    match &cli.command {
        Command::Genus { level, delta } => {
            check_level(*level, ceiling)?;
            let delta = parse_delta(*level, delta, ceiling)?;
            let inv = modcurve::genus(*level, &delta).map_err(data)?;
            let orbits = modcurve::cusp_orbits(*level, &delta).map_err(data)?;
            emit(&report::genus_report(&inv, &orbits))?;
        }
        Command::Enumerate { level } => {
            check_level(*level, ceiling)?;
            let all = arith::enumerate_subgroups_with_ceiling(*level, ceiling).map_err(usage)?;
            let rows = all
                .into_iter()
                .map(|d| modcurve::genus(*level, &d).map(|inv| (d, inv)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(data)?;
            emit(&report::enumerate_report(*level, &rows))?;
        }
        Command::Classify {
            level,
            delta,
            forms,
            mode,
        } => {
            check_level(*level, ceiling)?;
            let delta = parse_delta(*level, delta, ceiling)?;
            let basis = match forms {
                Some(path) => {
                    let file = formsio::load(path).map_err(data)?;
                    if file.level() != *level || file.delta() != &delta {
                        return Err(data(format!(
                            "forms are for level {} with delta {}, not level {level} with delta {delta}",
                            file.level(),
                            file.delta()
                        )));
                    }
                    Some(file.to_basis((*mode).into()).map_err(canonical_failure)?)
                }
                None => None,
            };
            let verdict = gonality::classify(*level, &delta, basis.as_ref()).map_err(data)?;
            emit(&report::verdict_report(&verdict))?;
        }
        Command::Tables { table, format } => {
            let id = TableId::new(*table)
                .ok_or_else(|| usage(format!("unknown table {table}; use 1, 2 or 3")))?;
            let rows = gonality::reproduce_table(id);
            emit(&report::table_report(id, &rows, *format))?;
            let mismatches = report::mismatch_lines(id, &rows);
            if !mismatches.is_empty() {
                let mut text = format!("\n{} mismatches:\n", mismatches.len());
                for m in &mismatches {
                    text.push_str(m);
                    text.push('\n');
                }
                emit(&text)?;
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Relations {
            forms,
            degree,
            mode,
        } => {
            let file = formsio::load(forms).map_err(data)?;
            let basis = file.to_basis((*mode).into()).map_err(canonical_failure)?;
            let rel = canonical::relations(&basis, *degree as usize).map_err(canonical_failure)?;
            let mut text = format!(
                "{} degree-{degree} relations at precision {} ({})\n",
                rel.relations.dimension(),
                basis.precision,
                report::grade_label(rel.grade)
            );
            for r in rel.relations.render() {
                text.push_str(&r);
                text.push('\n');
            }
            emit(&text)?;
        }
        Command::Petri { forms, mode } => {
            let file = formsio::load(forms).map_err(data)?;
            let basis = file.to_basis((*mode).into()).map_err(canonical_failure)?;
            let report = canonical::petri_test(&basis).map_err(canonical_failure)?;
            emit(&report::petri_report(&report))?;
        }
    }
    Ok(EXIT_OK)
}
