//! Command-line front end: `solve`, `verify`, `sweep`, and `cutoffs`.
//!
//! Exit codes: 0 success or equilibrium, 1 usage or I/O error, 2 budget on
//! the regime boundary, 3 profile is not an equilibrium, 4 internal
//! self-check failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::format::sig9;
use crate::informed_game::{
    equilibrium_informed, is_equilibrium_informed, outcome, InformedProfile, Placement, Regime,
};
use crate::interval_set::IntervalSet;
use crate::svg::{LineChart, Series, PALETTE};
use crate::uninformed_game::{
    equilibrium_uninformed, equilibrium_uninformed_ext, outcome_for, UninformedProfile, VoterInformation,
};
use crate::verifier::{self, GridGame, VerificationReport};
use crate::voter_model::{regime_boundary, ModelParams, Politician};
use crate::welfare::{
    welfare_cutoff, welfare_cutoff_bisect, welfare_cutoff_ext, welfare_numeric, Allocation, WelfareReport,
    DEFAULT_GRID_N,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REGIME_BOUNDARY: i32 = 2;
pub const EXIT_NOT_EQUILIBRIUM: i32 = 3;
pub const EXIT_SELF_CHECK: i32 = 4;

/// Agreement required between closed forms and their numerical checks.
pub const SELF_CHECK_TOL: f64 = 1e-8;

/// Exact header of the sweep CSV.
pub const SWEEP_HEADER: [&str; 9] = [
    "alpha",
    "v",
    "regime",
    "welfare_informed_worst",
    "welfare_informed_best",
    "welfare_uninformed",
    "welfare_uninformed_ext",
    "cutoff_prop3",
    "cutoff_ext",
];

pub const CUTOFFS_HEADER: [&str; 5] = ["alpha", "regime_boundary", "cutoff_closed", "cutoff_bisect", "cutoff_ext"];

#[derive(Debug, Parser)]
#[command(name = "targeting", version, about = "Solve, verify, and sweep electoral targeting games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the equilibrium of one scenario.
    Solve(SolveArgs),
    /// Check whether a strategy profile is an equilibrium.
    Verify(VerifyArgs),
    /// Tabulate voter welfare over a range of budgets.
    Sweep(SweepArgs),
    /// Tabulate the welfare cutoffs for a list of alphas.
    Cutoffs(CutoffsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Informed,
    Uninformed,
    UninformedExt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlacementArg {
    Worst,
    Best,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Worst => Placement::WorstCase,
            PlacementArg::Best => Placement::BestCase,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Informed,
    Uninformed,
    UninformedExt,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub mode: Mode,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub v: f64,
    #[arg(long, value_enum, default_value = "worst")]
    pub placement: PlacementArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub mode: Mode,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub v: f64,
    /// Incumbent strategy: an interval-set literal such as "0.4,0.5;0.6,0.7"
    /// in informed mode, a share in [0, 1] otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub si: String,
    /// Challenger strategy, in the same format as --si.
    #[arg(long, allow_hyphen_values = true)]
    pub sc: String,
    #[arg(long, default_value_t = verifier::DEFAULT_GRID_LEFT)]
    pub grid_left: usize,
    #[arg(long, default_value_t = verifier::DEFAULT_GRID_RIGHT)]
    pub grid_right: usize,
    /// Points in the share grid scanned in the uninformed modes.
    #[arg(long, default_value_t = verifier::DEFAULT_SHARE_GRID)]
    pub share_grid: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.9")]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub v_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub v_max: f64,
    #[arg(long, default_value_t = 50)]
    pub v_steps: usize,
    /// Curves drawn in the SVG; the CSV always carries every column.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "informed,uninformed,uninformed-ext")]
    pub scenarios: Vec<Scenario>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG chart next to the CSV (same path, `.svg` extension).
    #[arg(long)]
    pub svg: bool,
    /// Recompute every welfare value by numerical integration and fail on
    /// disagreement.
    #[arg(long)]
    pub self_check: bool,
}

#[derive(Debug, Args)]
pub struct CutoffsArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub alpha: Vec<f64>,
}

/// Validated sweep parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alphas: Vec<f64>,
    pub v_min: f64,
    pub v_max: f64,
    pub v_steps: usize,
    pub scenarios: Vec<Scenario>,
    pub output_path: Option<PathBuf>,
    pub emit_svg: bool,
}

impl SweepConfig {
    pub fn new(
        alphas: Vec<f64>,
        v_min: f64,
        v_max: f64,
        v_steps: usize,
        scenarios: Vec<Scenario>,
        output_path: Option<PathBuf>,
        emit_svg: bool,
    ) -> crate::Result<Self> {
        if !(v_min > 0.0 && v_min < v_max && v_max <= 1.0) {
            return Err(Error::Domain(format!("need 0 < v_min < v_max <= 1, got {v_min}, {v_max}")));
        }
        if v_steps < 2 {
            return Err(Error::Domain(format!("need at least 2 budget steps, got {v_steps}")));
        }
        if alphas.is_empty() {
            return Err(Error::Domain("need at least one alpha".into()));
        }
        if let Some(a) = alphas.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1), got {a}")));
        }
        if emit_svg && output_path.is_none() {
            return Err(Error::Domain("--svg needs --out to name the chart file".into()));
        }
        let mut alphas = alphas;
        alphas.sort_by(f64::total_cmp);
        alphas.dedup();
        Ok(SweepConfig { alphas, v_min, v_max, v_steps, scenarios, output_path, emit_svg })
    }

    pub fn budgets(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.v_max - self.v_min;
        let last = self.v_steps - 1;
        (0..self.v_steps).map(move |i| if i == last { self.v_max } else { self.v_min + span * i as f64 / last as f64 })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub welfare: WelfareReport,
    pub cutoff: f64,
    pub cutoff_ext: f64,
}

impl SweepRow {
    pub fn record(&self) -> Vec<String> {
        let w = &self.welfare;
        vec![
            sig9(w.alpha),
            sig9(w.v),
            w.regime.label().to_string(),
            sig9(w.informed_worst),
            sig9(w.informed_best),
            sig9(w.uninformed),
            sig9(w.uninformed_ext),
            sig9(self.cutoff),
            sig9(self.cutoff_ext),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// `(alpha, v)` pairs dropped because `v` is on the regime boundary.
    pub skipped: Vec<(f64, f64)>,
}

/// Computes the sweep rows in ascending `(alpha, v)` order.
pub fn sweep(config: &SweepConfig) -> crate::Result<SweepTable> {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &alpha in &config.alphas {
        let cutoff = welfare_cutoff(alpha)?;
        let cutoff_ext = welfare_cutoff_ext(alpha)?;
        for v in config.budgets() {
            let params = ModelParams::new(alpha, v)?;
            match WelfareReport::at(&params) {
                Ok(welfare) => rows.push(SweepRow { welfare, cutoff, cutoff_ext }),
                Err(Error::RegimeBoundary { .. }) => skipped.push((alpha, v)),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SweepTable { rows, skipped })
}

pub fn write_sweep_csv<W: Write>(table: &SweepTable, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in &table.rows {
        w.write_record(row.record())?;
    }
    w.flush()
}

/// Largest disagreement between a row's closed-form welfare values and the
/// numerically integrated welfare of the corresponding equilibria.
pub fn self_check_row(row: &SweepRow) -> crate::Result<f64> {
    let w = &row.welfare;
    let params = ModelParams::new(w.alpha, w.v)?;
    let integrate = |alloc: Allocation| welfare_numeric(Politician::Incumbent, &alloc, &params, DEFAULT_GRID_N);
    let worst = equilibrium_informed(&params, Placement::WorstCase)?;
    let best = equilibrium_informed(&params, Placement::BestCase)?;
    let pairs = [
        (w.informed_worst, integrate(Allocation::Targeted(worst.incumbent().clone()))?),
        (w.informed_best, integrate(Allocation::Targeted(best.incumbent().clone()))?),
        (w.uninformed, integrate(Allocation::Share(equilibrium_uninformed(&params).s_incumbent()))?),
        (w.uninformed_ext, integrate(Allocation::Share(equilibrium_uninformed_ext(&params).s_incumbent()))?),
    ];
    Ok(pairs.iter().map(|(closed, numeric)| (closed - numeric).abs()).fold(0.0, f64::max))
}

/// Welfare curves against the budget, one set per alpha. Informed curves
/// break at the regime boundary.
pub fn sweep_chart(table: &SweepTable, scenarios: &[Scenario]) -> LineChart {
    let mut series = Vec::new();
    let mut alphas: Vec<f64> = table.rows.iter().map(|r| r.welfare.alpha).collect();
    alphas.dedup();
    let mut color = 0;
    for &alpha in &alphas {
        let rows: Vec<&SweepRow> = table.rows.iter().filter(|r| r.welfare.alpha == alpha).collect();
        let curve = |pick: fn(&WelfareReport) -> f64, break_at_regime: bool| {
            let mut pts = Vec::with_capacity(rows.len() + 1);
            for (k, r) in rows.iter().enumerate() {
                if break_at_regime && k > 0 && rows[k - 1].welfare.regime != r.welfare.regime {
                    pts.push((r.welfare.v, f64::NAN));
                }
                pts.push((r.welfare.v, pick(&r.welfare)));
            }
            pts
        };
        let mut add = |name: String, points: Vec<(f64, f64)>, dashed: bool| {
            series.push(Series { name, points, color: PALETTE[color % PALETTE.len()].to_string(), dashed });
            color += 1;
        };
        let tag = if alphas.len() > 1 { format!(" a={}", sig9(alpha)) } else { String::new() };
        for s in scenarios {
            match s {
                Scenario::Informed => {
                    add(format!("informed worst{tag}"), curve(|w| w.informed_worst, true), false);
                    add(format!("informed best{tag}"), curve(|w| w.informed_best, true), true);
                }
                Scenario::Uninformed => add(format!("uninformed{tag}"), curve(|w| w.uninformed, false), false),
                Scenario::UninformedExt => {
                    add(format!("uninformed ext{tag}"), curve(|w| w.uninformed_ext, false), true)
                }
            }
        }
    }
    let title = match alphas.as_slice() {
        [a] => format!("Social welfare of voters, alpha = {}", sig9(*a)),
        _ => "Social welfare of voters".to_string(),
    };
    LineChart { title, x_label: "budget v".into(), y_label: "welfare".into(), series }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Cutoffs(a) => cmd_cutoffs(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RegimeBoundary { .. } => EXIT_REGIME_BOUNDARY,
            Error::Oracle(_) => EXIT_SELF_CHECK,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

fn render_set(s: &IntervalSet) -> String {
    s.intervals().iter().map(|i| format!("{},{}", sig9(i.lo()), sig9(i.hi()))).collect::<Vec<_>>().join(";")
}

fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::Informed => "informed",
        Mode::Uninformed => "uninformed",
        Mode::UninformedExt => "uninformed-ext",
    }
}

fn voters_for(mode: Mode) -> VoterInformation {
    if mode == Mode::UninformedExt {
        VoterInformation::Uninformed
    } else {
        VoterInformation::Informed
    }
}

const SOLVE_HEADER: [&str; 12] = [
    "mode",
    "alpha",
    "v",
    "regime",
    "placement",
    "strategy_incumbent",
    "strategy_challenger",
    "incumbent_share",
    "winner",
    "payoff_incumbent",
    "payoff_challenger",
    "indifferent_voter",
];

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let params = ModelParams::new(args.alpha, args.v)?;
    let mut fields: Vec<(&str, String)> =
        vec![("mode", mode_label(args.mode).into()), ("alpha", sig9(args.alpha)), ("v", sig9(args.v))];
    match args.mode {
        Mode::Informed => {
            let regime = Regime::classify(&params)?;
            let profile = equilibrium_informed(&params, args.placement.into())?;
            let o = outcome(&profile);
            let placement = match (regime, args.placement) {
                (Regime::LargeBudget, _) => "",
                (_, PlacementArg::Worst) => "worst",
                (_, PlacementArg::Best) => "best",
            };
            fields.extend([
                ("regime", regime.label().into()),
                ("placement", placement.into()),
                ("strategy_incumbent", render_set(profile.incumbent())),
                ("strategy_challenger", render_set(profile.challenger())),
                ("incumbent_share", sig9(o.incumbent_share)),
                ("winner", o.winner.to_string()),
                ("payoff_incumbent", sig9(o.payoff_incumbent)),
                ("payoff_challenger", sig9(o.payoff_challenger)),
                ("indifferent_voter", String::new()),
            ]);
        }
        Mode::Uninformed | Mode::UninformedExt => {
            let profile = match args.mode {
                Mode::Uninformed => equilibrium_uninformed(&params),
                _ => equilibrium_uninformed_ext(&params),
            };
            let o = outcome_for(&profile, voters_for(args.mode));
            fields.extend([
                ("regime", String::new()),
                ("placement", String::new()),
                ("strategy_incumbent", sig9(profile.s_incumbent())),
                ("strategy_challenger", sig9(profile.s_challenger())),
                ("incumbent_share", sig9(o.incumbent_share)),
                ("winner", o.winner.to_string()),
                ("payoff_incumbent", sig9(o.payoff_incumbent)),
                ("payoff_challenger", sig9(o.payoff_challenger)),
                ("indifferent_voter", o.indifferent_voter.map(sig9).unwrap_or_default()),
            ]);
        }
    }
    debug_assert_eq!(fields.iter().map(|f| f.0).collect::<Vec<_>>(), SOLVE_HEADER);
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(SOLVE_HEADER)?;
            w.write_record(fields.iter().map(|f| f.1.as_str()))?;
            w.flush()?;
        }
        Format::Text => {
            for (k, v) in fields.iter().filter(|f| !f.1.is_empty()) {
                writeln!(out, "{k}: {v}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn parse_share(literal: &str) -> Result<f64, Error> {
    let s: f64 = literal.trim().parse().map_err(|e: std::num::ParseFloatError| Error::Parse {
        literal: literal.to_string(),
        reason: e.to_string(),
    })?;
    Ok(s)
}

fn print_report(out: &mut dyn Write, title: &str, report: &VerificationReport) -> io::Result<()> {
    writeln!(out, "[{title}]")?;
    write!(out, "{report}")
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let params = ModelParams::new(args.alpha, args.v)?;
    writeln!(out, "mode: {}", mode_label(args.mode))?;
    writeln!(out, "alpha: {}", sig9(args.alpha))?;
    writeln!(out, "v: {}", sig9(args.v))?;
    let passed = match args.mode {
        Mode::Informed => {
            let si: IntervalSet = args.si.parse()?;
            let sc: IntervalSet = args.sc.parse()?;
            let profile = InformedProfile::new(si, sc, params)?;
            let analytic = is_equilibrium_informed(&profile);
            let game = GridGame::aligned_to(&profile, args.grid_left, args.grid_right)?;
            let grid = verifier::verify_equilibrium_grid(&profile, &game, verifier::DEFAULT_TOL)?;
            print_report(out, "analytic", &analytic)?;
            print_report(out, &format!("grid {}+{}", game.n_left(), game.n_right()), &grid)?;
            analytic.is_equilibrium() && grid.is_equilibrium()
        }
        Mode::Uninformed | Mode::UninformedExt => {
            let profile = UninformedProfile::new(parse_share(&args.si)?, parse_share(&args.sc)?, params)?;
            let report = verifier::verify_uninformed_grid(
                &profile,
                voters_for(args.mode),
                args.share_grid,
                verifier::DEFAULT_TOL,
            )?;
            print_report(out, &format!("share grid {}", args.share_grid), &report)?;
            report.is_equilibrium()
        }
    };
    writeln!(out, "result: {}", if passed { "equilibrium" } else { "not_equilibrium" })?;
    Ok(if passed { EXIT_OK } else { EXIT_NOT_EQUILIBRIUM })
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let config = SweepConfig::new(
        args.alpha.clone(),
        args.v_min,
        args.v_max,
        args.v_steps,
        args.scenarios.clone(),
        args.out.clone(),
        args.svg,
    )?;
    let table = sweep(&config)?;
    for (alpha, v) in &table.skipped {
        writeln!(err, "skipping alpha={} v={}: budget on the regime boundary", sig9(*alpha), sig9(*v))?;
    }
    if args.self_check {
        for row in &table.rows {
            let gap = self_check_row(row)?;
            if gap > SELF_CHECK_TOL {
                return Err(Failure {
                    code: EXIT_SELF_CHECK,
                    message: format!(
                        "welfare at alpha={} v={} differs from numerical integration by {}",
                        sig9(row.welfare.alpha),
                        sig9(row.welfare.v),
                        sig9(gap)
                    ),
                });
            }
        }
    }
    match &config.output_path {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            write_sweep_csv(&table, io::BufWriter::new(file))?;
            if config.emit_svg {
                let svg_path = path.with_extension("svg");
                fs::write(&svg_path, sweep_chart(&table, &config.scenarios).render()).map_err(|e| Failure {
                    code: EXIT_USAGE,
                    message: format!("cannot write {}: {e}", svg_path.display()),
                })?;
            }
        }
        None => write_sweep_csv(&table, &mut *out)?,
    }
    Ok(EXIT_OK)
}

/// One row of the cutoff table: regime boundary, closed-form and bisected
/// welfare cutoff, extension cutoff.
pub fn cutoff_row(alpha: f64) -> crate::Result<[f64; 5]> {
    let closed = welfare_cutoff(alpha)?;
    let bisected = welfare_cutoff_bisect(alpha, 1e-12)?;
    if (closed - bisected).abs() > SELF_CHECK_TOL {
        return Err(Error::Oracle(format!(
            "closed-form cutoff {closed} and bisected cutoff {bisected} disagree at alpha = {alpha}"
        )));
    }
    Ok([alpha, regime_boundary(alpha), closed, bisected, welfare_cutoff_ext(alpha)?])
}

fn cmd_cutoffs(args: &CutoffsArgs, out: &mut dyn Write) -> CmdResult {
    let rows = args.alpha.iter().map(|&a| cutoff_row(a)).collect::<crate::Result<Vec<_>>>()?;
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(CUTOFFS_HEADER)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| sig9(x)))?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}
