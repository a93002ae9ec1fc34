//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use langcomp_core::analysis::{e7_locus, scenario_classify, SweepAxes, DEFAULT_BETA};
use langcomp_core::competency::{bilingual_status, mutuality, CompetencyProfile, MutualityPair};
use langcomp_core::dynamics::{integrate, integrate_field, project_simplex, IntegratorOptions, Method, Trajectory};
use langcomp_core::equilibria::{available_equilibria, classify_eigenvalues, jacobian_reduced, reduced_eigenvalues, EquilibriumKind};
use langcomp_core::model::{ModelParams, PopulationState};

use crate::config::{self, KeyValues, MODEL_KEYS, MP_KEYS, MW_KEYS, VAZ_KEYS};
use crate::error::{CliError, Result};
use crate::io::{emit, fmt_f64, json_bytes, trajectory_csv, Csv};
use crate::parallel;
use crate::report::{self, label, BasinReport, EquilibriumReport, ParamsReport, SweepReport, ThresholdReport};
use crate::reproduce::{reproduce, FIGURE_IDS};

#[derive(Debug, Parser)]
#[command(name = "langcomp", version, about = "Three-group language competition model")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutuality and bilingual status from two competency profiles.
    Status(StatusArgs),
    /// Integrate one trajectory (`t,m1,m2,b`).
    Simulate(SimulateArgs),
    /// Closed-form equilibria with eigenvalues and stability.
    Equilibria(EquilibriaArgs),
    /// Reduced Jacobian at a point, or stability and trace conditions for every equilibrium.
    Stability(StabilityArgs),
    /// Estimate the coexistence threshold d for each bilingual status.
    Threshold(ThresholdArgs),
    /// Equilibrium stability (and optional attractors) over a gap × status grid.
    Sweep(SweepArgs),
    /// Attractor label for every cell of an interior initial-condition lattice.
    Basin(BasinArgs),
    /// Coexistence point as the bilingual status varies.
    Locus(LocusArgs),
    /// Integrate a comparison model.
    Baseline(BaselineArgs),
    /// Regenerate the data behind a figure.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Parameter file (`key = value` lines).
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub s_m1: Option<f64>,
    #[arg(long)]
    pub s_m2: Option<f64>,
    #[arg(long)]
    pub s_b: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
}

impl ParamArgs {
    fn key_values(&self) -> Result<KeyValues> {
        let mut kv = match &self.params {
            Some(path) => config::read_key_values(path, &MODEL_KEYS)?,
            None => KeyValues::new(),
        };
        for (k, v) in [
            ("s_m1", self.s_m1),
            ("s_m2", self.s_m2),
            ("s_b", self.s_b),
            ("lambda", self.lambda),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if let Some(v) = v {
                kv.insert(k.to_string(), v);
            }
        }
        Ok(kv)
    }

    pub fn resolve(&self) -> Result<ModelParams> {
        config::model_params(&self.key_values()?)
    }

    /// For commands that set `s_B` and `α` themselves: placeholders fill in
    /// whatever is missing, `β` defaults to the sweep convention.
    fn resolve_base(&self) -> Result<ModelParams> {
        let mut kv = self.key_values()?;
        kv.entry("beta".into()).or_insert(DEFAULT_BETA);
        let beta = kv["beta"];
        kv.entry("alpha".into()).or_insert(beta);
        kv.entry("s_b".into()).or_insert(0.5);
        config::model_params(&kv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Rk45,
    Rk4,
}

#[derive(Debug, Args)]
pub struct IntegratorArgs {
    #[arg(long, value_enum, default_value = "rk45")]
    pub method: MethodArg,
    /// Fixed step for rk4.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rtol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub atol: f64,
    #[arg(long)]
    pub max_time: Option<f64>,
    /// Convergence threshold on `‖rhs‖∞ / λ`.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

impl IntegratorArgs {
    fn options(&self, base: IntegratorOptions) -> Result<IntegratorOptions> {
        let method = match self.method {
            MethodArg::Rk45 => Method::Rk45 { rtol: self.rtol, atol: self.atol },
            MethodArg::Rk4 => Method::Rk4 { step: self.step },
        };
        let mut o = base.with_method(method);
        if let Some(t) = self.max_time {
            o.max_time = t;
        }
        if let Some(e) = self.epsilon {
            o.convergence_epsilon = e;
        }
        o.validate()?;
        Ok(o)
    }
}

#[derive(Debug, Args)]
pub struct StatusArgs {
    /// First speaker's competencies `c_m1,c_m2`.
    #[arg(long, value_delimiter = ',', requires = "c2", conflicts_with = "mutuality")]
    pub c1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub c2: Option<Vec<f64>>,
    /// Mutuality `x_m1,x_m2` given directly.
    #[arg(long, value_delimiter = ',')]
    pub mutuality: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.3)]
    pub s_m1: f64,
    #[arg(long, default_value_t = 0.7)]
    pub s_m2: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Initial condition `m1,m2,b`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub ic: Vec<f64>,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EquilibriaArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Evaluate the reduced Jacobian at `m1,m2,b` instead.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Bilingual statuses; defaults to 0.1, 0.2, …, 1.0.
    #[arg(long, value_delimiter = ',')]
    pub s_bs: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.02)]
    pub resolution: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Values of `α − β`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub gaps: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub s_bs: Vec<f64>,
    /// Also match attractors from an interior lattice with this many points per side.
    #[arg(long)]
    pub ic_grid: Option<usize>,
    /// Threshold used for the scenario column.
    #[arg(long, default_value_t = 0.75)]
    pub d: f64,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BasinArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LocusArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_delimiter = ',')]
    pub s_bs: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineModel {
    Mw,
    Mp,
    Vaz,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long, value_enum)]
    pub model: BaselineModel,
    /// Parameter file with the model's keys.
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Inline `key=value` overrides, e.g. `--set a=1.3`.
    #[arg(long = "set", value_parser = parse_assignment)]
    pub set: Vec<(String, f64)>,
    /// Initial condition (x, y, third group).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub ic: Vec<f64>,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// One of E7_1, E7_diff, E2_sB_0.6, E4_sB_0.1, E4_sB_0.5, E7_sB_0.99, E7E4.
    pub figure: String,
    /// Bundle directory; defaults to `figures/<id>`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn parse_assignment(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn state(values: &[f64], what: &str) -> Result<PopulationState> {
    match values {
        [a, b, c] => Ok(project_simplex([*a, *b, *c])?),
        _ => Err(CliError::validation(format!("{what} needs three comma-separated values"))),
    }
}

fn unit_steps() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

/// Parses `argv` and runs the command; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { crate::error::EXIT_VALIDATION } else { 0 };
        }
    };
    match execute(&cfg.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Status(a) => status(a),
        Command::Simulate(a) => simulate(a),
        Command::Equilibria(a) => equilibria(a),
        Command::Stability(a) => stability(a),
        Command::Threshold(a) => threshold(a),
        Command::Sweep(a) => sweep(a),
        Command::Basin(a) => basin(a),
        Command::Locus(a) => locus(a),
        Command::Baseline(a) => baseline(a),
        Command::Reproduce(a) => reproduce_cmd(a),
    }
}

fn status(a: &StatusArgs) -> Result<()> {
    let pair = |v: &Vec<f64>, flag: &str| match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::validation(format!("{flag} needs two comma-separated values"))),
    };
    let m = match (&a.c1, &a.c2, &a.mutuality) {
        (Some(c1), Some(c2), None) => {
            let (c1, c2) = (pair(c1, "--c1")?, pair(c2, "--c2")?);
            mutuality(&CompetencyProfile::new(c1.0, c1.1)?, &CompetencyProfile::new(c2.0, c2.1)?)
        }
        (None, None, Some(x)) => {
            let x = pair(x, "--mutuality")?;
            MutualityPair::new(x.0, x.1)?
        }
        _ => return Err(CliError::validation("give either --c1 and --c2, or --mutuality")),
    };
    let s_b = bilingual_status(&m, a.s_m1, a.s_m2)?;
    #[derive(Serialize)]
    struct Out {
        x_m1: f64,
        x_m2: f64,
        s_b: f64,
    }
    let bytes = match a.output.format_or(Format::Json) {
        Format::Json => json_bytes(&Out { x_m1: m.x_m1, x_m2: m.x_m2, s_b }),
        Format::Csv => {
            let mut c = Csv::new(&["x_m1", "x_m2", "s_b"]);
            c.floats(&[m.x_m1, m.x_m2, s_b]);
            c.into_bytes()
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

#[derive(Serialize)]
struct TrajectoryReport {
    times: Vec<f64>,
    states: Vec<[f64; 3]>,
    max_simplex_drift: f64,
}

fn trajectory_bytes<P>(traj: &Trajectory<P>, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => trajectory_csv(traj),
        Format::Json => json_bytes(&TrajectoryReport {
            times: traj.times.clone(),
            states: traj.states.iter().map(|s| s.to_array()).collect(),
            max_simplex_drift: traj.max_simplex_drift,
        }),
    }
}

fn simulate(a: &SimulateArgs) -> Result<()> {
    let p = a.params.resolve()?;
    let ic = state(&a.ic, "--ic")?;
    let opts = a.integrator.options(IntegratorOptions::default())?;
    let traj = integrate(&p, &ic, &opts)?;
    emit(a.output.out.as_deref(), &trajectory_bytes(&traj, a.output.format_or(Format::Csv)))
}

fn equilibria(a: &EquilibriaArgs) -> Result<()> {
    let p = a.params.resolve()?;
    let eq = available_equilibria(&p);
    let bytes = match a.output.format_or(Format::Json) {
        Format::Json => json_bytes(&eq.iter().map(EquilibriumReport::from).collect::<Vec<_>>()),
        Format::Csv => {
            let mut c = Csv::new(&["kind", "m1", "m2", "b", "re1", "im1", "re2", "im2", "stability"]);
            for e in &eq {
                let s = e.location.representative();
                let mut row = vec![e.kind.as_str().to_string()];
                row.extend([s.m1(), s.m2(), s.b()].map(fmt_f64));
                for z in e.eigenvalues {
                    row.extend([fmt_f64(z.re), fmt_f64(z.im)]);
                }
                row.push(e.stability.as_str().to_string());
                c.row(row);
            }
            c.into_bytes()
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn stability(a: &StabilityArgs) -> Result<()> {
    let p = a.params.resolve()?;
    let bytes = match &a.at {
        Some(at) => {
            let s = state(at, "--at")?;
            let jac = jacobian_reduced(&p, s.m1(), s.m2())?;
            let ev = reduced_eigenvalues(&p, &s);
            #[derive(Serialize)]
            struct Out {
                point: [f64; 3],
                jacobian_reduced: [[f64; 2]; 2],
                eigenvalues: Vec<[f64; 2]>,
                stability: &'static str,
            }
            json_bytes(&Out {
                point: s.to_array(),
                jacobian_reduced: jac,
                eigenvalues: report::complex_pairs(&ev),
                stability: classify_eigenvalues(&ev, p.lambda).as_str(),
            })
        }
        None => {
            #[derive(Serialize)]
            struct Out {
                params: ParamsReport,
                equilibria: Vec<EquilibriumReport>,
                trace_conditions: Vec<report::TraceReport>,
            }
            json_bytes(&Out {
                params: (&p).into(),
                equilibria: available_equilibria(&p).iter().map(Into::into).collect(),
                trace_conditions: report::trace_reports(&p),
            })
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn threshold(a: &ThresholdArgs) -> Result<()> {
    let base = a.params.resolve_base()?;
    let s_bs = a.s_bs.clone().unwrap_or_else(unit_steps);
    let pool = parallel::thread_pool()?;
    let results = parallel::thresholds(&pool, &base, &s_bs, a.resolution);
    if let Some(Err(e @ langcomp_core::Error::InvalidOptions(_) | e @ langcomp_core::Error::InvalidParams(_))) =
        results.iter().find(|r| r.is_err())
    {
        return Err(e.clone().into());
    }
    let reports: Vec<ThresholdReport> = s_bs.iter().zip(&results).map(|(s, r)| ThresholdReport::new(*s, r)).collect();
    let bytes = match a.output.format_or(Format::Csv) {
        Format::Json => json_bytes(&reports),
        Format::Csv => {
            let mut c = Csv::new(&["s_b", "d", "lower", "upper", "width"]);
            for r in &reports {
                let f = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), fmt_f64);
                c.row([fmt_f64(r.s_b), f(r.d), f(r.lower), f(r.upper), f(r.width)]);
            }
            c.into_bytes()
        }
    };
    emit(a.output.out.as_deref(), &bytes)?;
    match results.iter().find_map(|r| r.as_ref().err()) {
        Some(e) => Err(CliError::Runtime(e.to_string())),
        None => Ok(()),
    }
}

fn sweep(a: &SweepArgs) -> Result<()> {
    let base = a.params.resolve_base()?;
    let axes = SweepAxes {
        base,
        gaps: a.gaps.clone(),
        s_bs: a.s_bs.clone(),
        ic_grid_n: a.ic_grid,
        options: a.integrator.options(IntegratorOptions::attractor_matching())?,
    };
    let pool = parallel::thread_pool()?;
    let records = parallel::sweep(&pool, &axes)?;
    let bytes = match a.output.format_or(Format::Csv) {
        Format::Json => json_bytes(&records.iter().map(SweepReport::from).collect::<Vec<_>>()),
        Format::Csv => {
            let mut header = vec!["gap".to_string(), "s_b".into(), "alpha".into(), "beta".into(), "scenario".into()];
            header.extend(EquilibriumKind::ALL.iter().map(|k| k.as_str().to_string()));
            if a.ic_grid.is_some() {
                header.extend(EquilibriumKind::ALL.iter().map(|k| format!("n_{k}")));
                header.push("n_none".into());
            }
            let refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut c = Csv::new(&refs);
            for r in &records {
                let p = &r.params;
                let mut row = vec![fmt_f64(p.gap()), fmt_f64(p.s_b), fmt_f64(p.alpha), fmt_f64(p.beta)];
                row.push(scenario_classify(p, a.d).as_str().to_string());
                for k in EquilibriumKind::ALL {
                    row.push(r.stability_of(k).map_or("absent", |s| s.as_str()).to_string());
                }
                if let Some(att) = &r.attractors {
                    for k in EquilibriumKind::ALL {
                        row.push(att.iter().filter(|l| **l == Some(k)).count().to_string());
                    }
                    row.push(att.iter().filter(|l| l.is_none()).count().to_string());
                }
                c.row(row);
            }
            c.into_bytes()
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn basin(a: &BasinArgs) -> Result<()> {
    let p = a.params.resolve()?;
    let opts = a.integrator.options(IntegratorOptions::attractor_matching())?;
    let pool = parallel::thread_pool()?;
    let map = parallel::basin_map(&pool, &p, a.grid, &opts)?;
    let bytes = match a.output.format_or(Format::Csv) {
        Format::Json => json_bytes(&BasinReport::from(&map)),
        Format::Csv => {
            let mut c = Csv::new(&["m1", "m2", "label"]);
            for cell in &map.cells {
                c.row([fmt_f64(cell.ic.m1()), fmt_f64(cell.ic.m2()), label(cell.label).to_string()]);
            }
            c.into_bytes()
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn locus(a: &LocusArgs) -> Result<()> {
    let mut kv = a.params.key_values()?;
    kv.entry("s_b".into()).or_insert(1.0);
    let base = config::model_params(&kv)?;
    let s_bs = a.s_bs.clone().unwrap_or_else(unit_steps);
    let pts = e7_locus(&base, &s_bs)?;
    let bytes = match a.output.format_or(Format::Csv) {
        Format::Json => json_bytes(&pts.iter().map(|(s, e)| (*s, e.to_array())).collect::<Vec<_>>()),
        Format::Csv => {
            let mut c = Csv::new(&["s_b", "m1", "m2", "b"]);
            for (s_b, e) in &pts {
                c.floats(&[*s_b, e.m1(), e.m2(), e.b()]);
            }
            c.into_bytes()
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn baseline(a: &BaselineArgs) -> Result<()> {
    let keys: &[&str] = match a.model {
        BaselineModel::Mw => &MW_KEYS,
        BaselineModel::Mp => &MP_KEYS,
        BaselineModel::Vaz => &VAZ_KEYS,
    };
    let mut kv = match &a.params {
        Some(path) => config::read_key_values(path, keys)?,
        None => KeyValues::new(),
    };
    for (k, v) in &a.set {
        if !keys.contains(&k.as_str()) {
            return Err(CliError::validation(format!("unknown key `{k}` for this model")));
        }
        kv.insert(k.clone(), *v);
    }
    let ic = state(&a.ic, "--ic")?;
    let opts = a.integrator.options(IntegratorOptions::default())?;
    let format = a.output.format_or(Format::Csv);
    let bytes = match a.model {
        BaselineModel::Mw => trajectory_bytes(&integrate_field(&config::mw_params(&kv)?, &ic, &opts)?, format),
        BaselineModel::Mp => trajectory_bytes(&integrate_field(&config::mp_params(&kv)?, &ic, &opts)?, format),
        BaselineModel::Vaz => trajectory_bytes(&integrate_field(&config::vaz_params(&kv)?, &ic, &opts)?, format),
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn reproduce_cmd(a: &ReproduceArgs) -> Result<()> {
    if !FIGURE_IDS.contains(&a.figure.as_str()) {
        return Err(CliError::validation(format!(
            "unknown figure `{}` (expected one of {})",
            a.figure,
            FIGURE_IDS.join(", ")
        )));
    }
    let dir = a.out_dir.clone().unwrap_or_else(|| PathBuf::from("figures").join(&a.figure));
    let pool = parallel::thread_pool()?;
    for path in reproduce(&a.figure, &dir, &pool)? {
        println!("{}", path.display());
    }
    Ok(())
}
