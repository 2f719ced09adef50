//! Command-line front end.
//!
//! Exit codes: 0 success / representative / feasible, 1 Leslie demo
//! mismatch, 2 invalid input, 3 not representative / infeasible,
//! 4 undecided.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::behavior::{build_hankel, Trajectory, DEFAULT_MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::io;
use crate::linalg::{numeric_rank, DenseMatrix};
use crate::mpum::mpum_finite;
use crate::nnrank::{NnRankBounds, NnRankConfig, DEFAULT_SEED};
use crate::pecheck::{pe_check, ModelClass, MonomialStatus, PeConfig, PeReport, Verdict};
use crate::statespace::{leslie_model, StateTrajectory};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "behavior-cones",
    version,
    about = "Data-driven representations of linear, affine and positive systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth-L Hankel matrix of a trajectory, as matrix JSON.
    Hankel {
        /// Trajectory CSV (header u1..um,y1..yp).
        input: PathBuf,
        #[arg(short = 'L', long)]
        length: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Persistence-of-excitation check for a model class.
    PeCheck {
        input: PathBuf,
        /// State CSV (header x1..xn); required for positive classes.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, value_parser = parse_class)]
        class: ModelClass,
        #[arg(short = 'm', long = "inputs")]
        inputs: usize,
        #[arg(short = 'n', long = "order")]
        order: usize,
        #[arg(short = 'L', long)]
        length: usize,
        /// Relative rank tolerance (0 selects the default).
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Membership of a window in a behavior.
    Member {
        /// Behavior JSON.
        behavior: PathBuf,
        /// Window as a trajectory CSV with L rows.
        window: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MEMBERSHIP_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Simulates a model JSON, writing trajectory and state CSV.
    Simulate {
        model: PathBuf,
        /// Initial state, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        /// Number of samples.
        #[arg(short = 'T', long)]
        steps: usize,
        /// Input CSV (header u1..um) with at least T rows.
        #[arg(long = "input")]
        input: Option<PathBuf>,
        #[arg(long)]
        state_output: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Most powerful unfalsified model at horizon L, as behavior JSON.
    Mpum {
        input: PathBuf,
        #[arg(short = 'L', long)]
        length: usize,
        #[arg(long, value_parser = parse_class)]
        class: ModelClass,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reproduces the Leslie population example.
    LeslieDemo {
        /// Claimed order used by the checks.
        #[arg(short = 'n', long = "order", default_value_t = 4)]
        order: usize,
        #[arg(short = 'L', long, default_value_t = 4)]
        length: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Master seed for factorization restarts.
    #[arg(long, env = "BEHAVIOR_CONES_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

fn parse_class(s: &str) -> std::result::Result<ModelClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl SearchArgs {
    fn config(&self, rank_tol: f64) -> PeConfig {
        PeConfig {
            rank_tol,
            nn: NnRankConfig {
                seed: self.seed,
                restarts: self.restarts,
                rank_tol,
                ..NnRankConfig::default()
            },
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Representative => EXIT_OK,
        Verdict::NotRepresentative => EXIT_NEGATIVE,
        Verdict::Undecided => EXIT_UNDECIDED,
    }
}

fn parse_x0(s: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse(format!("`{t}` is not a finite number")))
        })
        .collect()
}

/// Runs a parsed command and returns its exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Hankel { input, length, out } => {
            let w = io::parse_trajectory_csv(&read(input)?)?;
            let h = build_hankel(&w, *length)?;
            emit(out, &io::matrix_to_json(h.entries()), stdout)?;
            Ok(EXIT_OK)
        }
        Command::PeCheck { input, state, class, inputs, order, length, tol, search, out } => {
            let w = io::parse_trajectory_csv(&read(input)?)?;
            let x = match state {
                Some(p) => Some(io::parse_state_csv(&read(p)?)?),
                None => None,
            };
            let report = pe_check(&w, x.as_ref(), *class, *inputs, *order, *length, &search.config(*tol))?;
            emit(out, &io::pe_report_to_json(&report), stdout)?;
            Ok(verdict_code(report.verdict))
        }
        Command::Member { behavior, window, tol, out } => {
            let b = io::parse_behavior_json(&read(behavior)?)?;
            let w = io::parse_trajectory_csv(&read(window)?)?;
            if w.q() != b.q() || w.len() != b.horizon() {
                return Err(Error::Input(format!(
                    "window is {}x{}, behavior expects {}x{}",
                    w.len(),
                    w.q(),
                    b.horizon(),
                    b.q()
                )));
            }
            let cert = b.membership(&w.stacked(), *tol)?;
            emit(out, &io::certificate_to_json(&cert), stdout)?;
            Ok(if cert.feasible { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Simulate { model, x0, steps, input, state_output, out } => {
            let model = io::parse_model_json(&read(model)?)?;
            let u = match input {
                Some(p) => Some(io::parse_input_csv(&read(p)?)?),
                None => None,
            };
            let (w, x) = model.simulate(&parse_x0(x0)?, u.as_ref(), *steps)?;
            emit(out, &io::write_trajectory_csv(&w), stdout)?;
            if let Some(path) = state_output {
                std::fs::write(path, io::write_state_csv(&x))?;
            }
            Ok(EXIT_OK)
        }
        Command::Mpum { input, length, class, out } => {
            let w = io::parse_trajectory_csv(&read(input)?)?;
            let r = mpum_finite(&w, *length, *class)?;
            emit(out, &io::behavior_to_json(&r.behavior), stdout)?;
            Ok(EXIT_OK)
        }
        Command::LeslieDemo { order, length, search, out } => {
            let report = leslie_demo(*order, *length, &search.config(0.0))?;
            emit(out, &report.render(), stdout)?;
            Ok(if report.all_match() { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// One comparison against a published value.
#[derive(Clone, Debug, PartialEq)]
pub struct DemoCheck {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl DemoCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug)]
pub struct LeslieDemoReport {
    pub order: usize,
    pub depth: usize,
    pub trajectory: Trajectory,
    pub states: StateTrajectory,
    pub hankel: DenseMatrix,
    pub rank: usize,
    pub nn_bounds: NnRankBounds,
    pub linear: PeReport,
    pub affine: PeReport,
    pub positive: PeReport,
    pub positive_affine: PeReport,
    pub checks: Vec<DemoCheck>,
}

/// The published depth-4 Hankel matrix of the Leslie trajectory.
pub const LESLIE_H4: [[f64; 4]; 4] =
    [[0.0, 0.0, 1.0, 1.0], [0.0, 1.0, 1.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 1.0]];

/// Published Leslie output sequence from `x0 = e1`.
pub const LESLIE_OUTPUT: [f64; 7] = [0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0];

/// Leslie model with four age classes: only the oldest class reproduces,
/// every class survives, the two oldest classes are observed. Runs all four
/// checks with the claimed `order` and `depth` and compares
/// against the published values.
pub fn leslie_demo(order: usize, depth: usize, config: &PeConfig) -> Result<LeslieDemoReport> {
    let model = leslie_model(&[0.0, 0.0, 0.0, 1.0], &[1.0, 1.0, 1.0], 2)?;
    let (w, x) = model.simulate(&[1.0, 0.0, 0.0, 0.0], None, LESLIE_OUTPUT.len())?;
    let hankel = build_hankel(&w, depth)?.into_entries();
    let rank = numeric_rank(&hankel, config.rank_tol)?;
    let check = |class| pe_check(&w, Some(&x), class, 0, order, depth, config);
    let linear = check(ModelClass::Linear)?;
    let affine = check(ModelClass::Affine)?;
    let positive = check(ModelClass::PositiveLinear)?;
    let positive_affine = check(ModelClass::PositiveAffine)?;
    let nn_bounds = positive.nn_bounds.clone().expect("positive check reports bounds");

    let published_h4 = DenseMatrix::from_rows(&LESLIE_H4)?;
    let monomial = match &positive.monomial {
        Some(MonomialStatus::Found(c)) => {
            format!("order {}, rows {:?}, cols {:?}", c.order, c.row_indices, c.col_indices)
        }
        Some(MonomialStatus::NotFound) => "none".into(),
        Some(MonomialStatus::NotChecked) | None => "not checked".into(),
    };
    let mk = |name, expected: String, actual: String| DemoCheck { name, expected, actual };
    let checks = vec![
        mk("output", format!("{:?}", LESLIE_OUTPUT), format!("{:?}", w.outputs().column(0))),
        mk("hankel", format!("{:?}", published_h4.to_rows()), format!("{:?}", hankel.to_rows())),
        mk("rank", "3".into(), rank.to_string()),
        mk(
            "nonnegative rank bounds",
            "(4, 4)".into(),
            format!("({}, {})", nn_bounds.lower, fmt_upper(nn_bounds.upper)),
        ),
        mk("monomial certificate", "order 4, rows [0, 1, 2, 3], cols [0, 1, 2, 3]".into(), monomial),
        mk("linear verdict", Verdict::NotRepresentative.to_string(), linear.verdict.to_string()),
        mk("positive verdict", Verdict::Representative.to_string(), positive.verdict.to_string()),
    ];
    Ok(LeslieDemoReport {
        order,
        depth,
        trajectory: w,
        states: x,
        hankel,
        rank,
        nn_bounds,
        linear,
        affine,
        positive,
        positive_affine,
        checks,
    })
}

fn fmt_upper(u: Option<usize>) -> String {
    u.map_or_else(|| "?".into(), |u| u.to_string())
}

impl LeslieDemoReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(DemoCheck::ok)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Leslie population model, claimed n = {}, L = {}", self.order, self.depth);
        let _ = writeln!(s, "w_d = {:?}", self.trajectory.outputs().column(0));
        let _ = writeln!(s, "H_{} (w_d) =", self.depth);
        for row in self.hankel.to_rows() {
            let _ = writeln!(s, "  {row:?}");
        }
        let _ = writeln!(s, "rank = {}", self.rank);
        let _ = writeln!(
            s,
            "nonnegative rank in [{}, {}]",
            self.nn_bounds.lower,
            fmt_upper(self.nn_bounds.upper)
        );
        for r in [&self.linear, &self.affine, &self.positive, &self.positive_affine] {
            let _ = writeln!(
                s,
                "{:<15} required {} rank {} -> {}",
                r.class.as_str(),
                r.required_rank,
                r.ordinary_rank,
                r.verdict
            );
        }
        if let Some(rep) = &self.positive.representation {
            let _ = writeln!(s, "representation: {} of {} generators", rep.hull(), rep.generators().cols());
        }
        for c in &self.checks {
            let mark = if c.ok() { "ok" } else { "MISMATCH" };
            let _ = writeln!(s, "[{mark}] {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
        s
    }
}
