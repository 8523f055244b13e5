//! `multitile` command-line frontend.
//!
//! Exit codes: 0 decided or verified, 1 negative verdict, 2 input error,
//! 3 hypothesis of the requested criterion not met.

mod plot;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multitile::criteria::{self, IntervalSet};
use multitile::decomp::{check_certificate, equidecompose_with, replay, represent_zero_tiler};
use multitile::invariants::{equidecomposable, hadwiger_accumulate_with, is_tiling_with};
use multitile::verify::{fourier_check_with, sample_tiling_with};
use multitile::{io, par, Error, Exec, GroupElement, Lattice, Polytope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "multitile", version, about = "Exact multiple-tiling tests for polytopes under lattice translations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,

    /// Also write the report here (the SVG file for `plot`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Skip the pairwise overlap check on input polytopes.
    #[arg(long, global = true)]
    pub skip_validation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[value(name = "1d")]
    OneD,
    Bolle,
    Kol,
    Frames3d,
    Grs,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::OneD => "1d",
            Method::Bolle => "bolle",
            Method::Kol => "kol",
            Method::Frames3d => "frames3d",
            Method::Grs => "grs",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether P tiles by L, and at which level.
    Tiles { p: PathBuf, l: PathBuf },
    /// List the nonvanishing Hadwiger functionals of P.
    Invariants { p: PathBuf, l: PathBuf },
    /// Decide whether A and B are L-equidecomposable.
    Equidecomposable { a: PathBuf, b: PathBuf, l: PathBuf },
    /// Build and check an equidecomposition certificate from A to B.
    Decompose {
        a: PathBuf,
        b: PathBuf,
        l: PathBuf,
        /// Indicator samples per side in the certificate check.
        #[arg(long, default_value_t = 1000)]
        check_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a level-zero tiler as a sum of moves [A] - [A + lambda].
    RepresentZero { p: PathBuf, l: PathBuf },
    /// Random-point check of the tiling equation.
    Verify {
        p: PathBuf,
        l: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that the Fourier transform of P vanishes on the dual lattice.
    Fourier {
        p: PathBuf,
        l: PathBuf,
        #[arg(long, default_value_t = 5)]
        radius: u32,
        #[arg(long, default_value_t = 1e-20)]
        tol: f64,
        /// Working precision in decimal digits.
        #[arg(long, default_value_t = 50)]
        precision: usize,
    },
    /// Apply a dimension-specific criterion.
    Criteria {
        p: PathBuf,
        l: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// For `grs`: require facet-carrying vectors in L instead of vertices.
        #[arg(long)]
        relaxed: bool,
    },
    /// Draw P and its translates over a 3x3 block of fundamental cells (d = 2).
    Plot { p: PathBuf, l: PathBuf },
}

/// Exit code plus the rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn located<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse { path: p, msg } => Error::Parse {
            path: format!("{}: {p}", path.display()),
            msg,
        },
        other => other,
    })
}

struct Inputs {
    validate: bool,
}

impl Inputs {
    fn polytope(&self, path: &Path) -> Result<Polytope, Error> {
        located(path, io::parse_polytope(&read(path)?, self.validate))
    }

    fn group(&self, path: &Path) -> Result<GroupElement, Error> {
        located(path, io::parse_group_element(&read(path)?, self.validate))
    }

    fn lattice(&self, path: &Path) -> Result<Lattice, Error> {
        located(path, io::parse_lattice(&read(path)?))
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::HypothesisNotMet(_) => EXIT_HYPOTHESIS,
        Error::NotEquidecomposable(_) | Error::NotZeroTiler(_) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn execute(cli: &Cli) -> Result<(i32, Value), Error> {
    let inputs = Inputs {
        validate: !cli.skip_validation,
    };
    let exec = if cli.threads == 1 { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Tiles { p, l } => {
            let v = is_tiling_with(&inputs.group(p)?, &inputs.lattice(l)?, exec)?;
            Ok((verdict(v.tiles), io::verdict_json(&v)))
        }
        Command::Invariants { p, l } => {
            let r = hadwiger_accumulate_with(&inputs.group(p)?, &inputs.lattice(l)?, exec)?;
            Ok((EXIT_OK, json!({"vanishes": r.is_empty(), "entries": io::report_json(&r)})))
        }
        Command::Equidecomposable { a, b, l } => {
            let ok = equidecomposable(&inputs.polytope(a)?, &inputs.polytope(b)?, &inputs.lattice(l)?)?;
            Ok((verdict(ok), json!({ "equidecomposable": ok })))
        }
        Command::Decompose {
            a,
            b,
            l,
            check_samples,
            seed,
        } => {
            let (a, b, l) = (inputs.polytope(a)?, inputs.polytope(b)?, inputs.lattice(l)?);
            let cert = equidecompose_with(&a, &b, &l, exec)?;
            let check = check_certificate(&cert, &a, &b, &l, *check_samples, *seed);
            let mut doc = io::certificate_json(&cert);
            doc["check"] = io::certificate_check_json(&check);
            Ok((verdict(check.passed()), doc))
        }
        Command::RepresentZero { p, l } => {
            let p = inputs.group(p)?;
            let moves = represent_zero_tiler(&p, &inputs.lattice(l)?)?;
            let empty = replay(&p, &moves).is_empty();
            let mut doc = io::pieces_json(&moves);
            doc["replay_empty"] = Value::Bool(empty);
            Ok((verdict(empty), doc))
        }
        Command::Verify { p, l, samples, seed } => {
            let r = sample_tiling_with(&inputs.group(p)?, &inputs.lattice(l)?, *samples, *seed, exec)?;
            Ok((verdict(r.constant), io::sample_report_json(&r)))
        }
        Command::Fourier {
            p,
            l,
            radius,
            tol,
            precision,
        } => {
            let r = fourier_check_with(&inputs.group(p)?, &inputs.lattice(l)?, *radius, *tol, *precision, exec)?;
            Ok((verdict(r.pass), io::fourier_report_json(&r)))
        }
        Command::Criteria { p, l, method, relaxed } => {
            let (p, l) = (inputs.polytope(p)?, inputs.lattice(l)?);
            let r = match method {
                Method::OneD => criteria::tiles_1d(&IntervalSet::from_polytope(&p)?, &l)?,
                Method::Bolle => criteria::bolle(&p, &l)?,
                Method::Kol => criteria::kolountzakis(&p, &l)?,
                Method::Frames3d => criteria::frames_3d(&p, &l)?,
                Method::Grs => criteria::grs_sufficient(&p, &l, *relaxed)?,
            };
            Ok((verdict(r.holds()), io::criterion_json(method.name(), &r)))
        }
        Command::Plot { p, l } => {
            let Some(out) = &cli.out else {
                return Err(Error::Parse {
                    path: "--out".into(),
                    msg: "plot needs an output path".into(),
                });
            };
            let svg = plot::render(&inputs.group(p)?, &inputs.lattice(l)?)?;
            fs::write(out, svg).map_err(|e| Error::Parse {
                path: out.display().to_string(),
                msg: e.to_string(),
            })?;
            Ok((EXIT_OK, json!({ "svg": out.display().to_string() })))
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string(),
        Format::Pretty => serde_json::to_string_pretty(v).expect("values serialize"),
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome {
                code,
                report: e.render().to_string(),
            };
        }
    };
    let (code, doc) = match par::with_threads(cli.threads, || execute(&cli)) {
        Ok(r) => r,
        Err(e) => (exit_code_for(&e), json!({ "error": e.to_string() })),
    };
    let report = render(&doc, cli.output);
    if let (Some(out), false) = (&cli.out, matches!(cli.command, Command::Plot { .. })) {
        if let Err(e) = fs::write(out, &report) {
            return Outcome {
                code: EXIT_INPUT,
                report: json!({ "error": format!("cannot write {}: {e}", out.display()) }).to_string(),
            };
        }
    }
    Outcome { code, report }
}
