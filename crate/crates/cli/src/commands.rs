//! The subcommands. Each writes its tables under an output directory and
//! returns the figures it checked so that callers can report them.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use mhd2d::analysis::{
    compute_norms, decay_table, read_norms_csv, write_decay_csv, write_norms_csv, DecayRow, NormReport,
};
use mhd2d::nonlinear::energy::{energy_residuals, EnergyLog, EnergySample};
use mhd2d::nonlinear::{duhamel_reconstruct, run_observed, run_with, Forcing, Observer, RunOptions};
use mhd2d::propagator::apply_semigroup;
use mhd2d::propagator::sweep::{self, check_identities, check_multipliers, richardson_ratio, sweep_points};
use mhd2d::regions::{frozen_constant, verify_bounds, write_bounds_csv, BoundReport, SweepSpec};
use mhd2d::spectral::dump::write_field;
use mhd2d::tolerances;
use mhd2d::State;

use crate::config::RunConfig;
use crate::output::{self, Manifest, OutDir};
use crate::CliError;

/// Frequency sweep used by `verify bounds` and for the bundled constants.
pub const BOUNDS_SEED: u64 = 7;
pub const BOUNDS_PER_REGION: usize = 10_000;
/// Sweep size behind `crates/core/data/bound_constants.csv`.
pub const FROZEN_PER_REGION: usize = 100_000;

pub const ORACLE_TOL: f64 = tolerances::MULTIPLIER_VS_ORACLE;
pub const INVARIANT_TOL: f64 = tolerances::MULTIPLIER_IDENTITY;
pub const IDENTITY_STEP: f64 = 1e-4;
pub const IDENTITY_TOL: f64 = 1e-6;
/// Accepted band for a ratio of second-order errors under step halving.
pub const RICHARDSON_BAND: (f64, f64) = (3.0, 5.0);
pub const BOUND_GROWTH_TOL: f64 = 0.01;
pub const DUHAMEL_TOL: f64 = 1e-4;
pub const ENERGY_TOL: f64 = 1e-3;
pub const ENERGY_HORIZON: f64 = 1.0;

fn in_band(r: f64) -> bool {
    (RICHARDSON_BAND.0..=RICHARDSON_BAND.1).contains(&r)
}

/// `‖a - b‖ / ‖b‖` in `L²` over all four fields.
pub fn relative_l2(a: &State, b: &State) -> f64 {
    let mut num = 0.0;
    for (fa, fb) in a.fields().iter().zip(b.fields()) {
        num += fa.add_scaled(-1.0, fb).map(|d| d.l2_norm_sq()).unwrap_or(f64::INFINITY);
    }
    let den = b.energy();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub reports: Vec<NormReport>,
    pub decay: Option<Vec<DecayRow>>,
    pub steps: usize,
    /// Largest `|dE/dt + 2‖∇u⃗‖²| / (2‖∇u⃗‖²)` over all interior steps.
    pub max_energy_residual: Option<f64>,
}

struct SimObserver<'a> {
    regularity: u32,
    fields: Option<&'a OutDir>,
    reports: Vec<NormReport>,
    energy: Vec<EnergySample>,
    sample_steps: Vec<usize>,
    files: Vec<String>,
}

impl Observer<f64> for SimObserver<'_> {
    fn sample(&mut self, t: f64, s: &State, _f: &Forcing<f64>) -> mhd2d::Result<()> {
        self.sample_steps.push(self.energy.len() - 1);
        self.reports.push(compute_norms(s, t, self.regularity));
        self.files.push(match self.fields {
            Some(out) => dump_state(out, self.reports.len() - 1, s)?,
            None => String::new(),
        });
        Ok(())
    }

    fn step(&mut self, t: f64, s: &State) -> mhd2d::Result<()> {
        self.energy.push(EnergySample::of(t, s));
        Ok(())
    }
}

/// Writes `u, v, b, B` back to back into `fields/sNNNN.bin`.
fn dump_state(out: &OutDir, index: usize, s: &State) -> mhd2d::Result<String> {
    let name = format!("{}/s{index:04}.bin", output::FIELDS_DIR);
    let path = out.path(&name);
    std::fs::create_dir_all(path.parent().expect("nested path"))?;
    let mut w = std::io::BufWriter::new(File::create(&path)?);
    for f in s.fields() {
        write_field(&mut w, f)?;
    }
    w.flush()?;
    Ok(name)
}

fn write_trajectory_index(
    out: &OutDir,
    steps: &[usize],
    reports: &[NormReport],
    files: &[String],
) -> Result<(), CliError> {
    let mut wr = csv::Writer::from_writer(out.file(output::TRAJECTORY)?);
    wr.write_record(["index", "step", "time", "file"])?;
    for (i, ((step, r), f)) in steps.iter().zip(reports).zip(files).enumerate() {
        wr.write_record([i.to_string(), step.to_string(), r.time.to_string(), f.clone()])?;
    }
    wr.flush()?;
    Ok(())
}

fn write_decay(out: &OutDir, cfg: &RunConfig, reports: &[NormReport]) -> Result<Option<Vec<DecayRow>>, CliError> {
    let window = cfg.fit_window()?;
    if !(window.0 < window.1) {
        eprintln!("warning: fit window [{}, {}] is empty; no decay table written", window.0, window.1);
        return Ok(None);
    }
    let rows = decay_table(reports, window, cfg.fit.abscissa.into());
    write_decay_csv(out.file(output::DECAY)?, &rows)?;
    Ok(Some(rows))
}

/// Trapezoid rule over the sample times.
fn cumulative_integral(ts: &[f64], ys: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = vec![0.0; ts.len()];
    for j in 1..ts.len() {
        acc += 0.5 * (ts[j] - ts[j - 1]) * (ys[j] + ys[j - 1]);
        out[j] = acc;
    }
    out
}

const SPACE_TIME_COLUMN: &str = "HN-1(dx b_vec)^2";

/// Full run: norms at the samples, decay fits, energy balance, optional field dumps.
pub fn simulate(cfg: &RunConfig, out: &Path) -> Result<SimOutcome, CliError> {
    let linear_only = cfg.run.linear_only;
    let s0 = cfg.initial_state()?;
    let times = cfg.sample_times()?;
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("simulate", linear_only, Some(cfg)))?;
    let mut obs = SimObserver {
        regularity: cfg.run.regularity,
        fields: cfg.samples.write_fields.then_some(&out),
        reports: vec![],
        energy: vec![],
        sample_steps: vec![],
        files: vec![],
    };
    run_observed(&s0, cfg.run.t_final, cfg.run.dt, &times, linear_only, &mut obs)?;
    let SimObserver { reports, energy, sample_steps, files, .. } = obs;

    write_norms_csv(out.file(output::NORMS)?, &reports)?;
    write_trajectory_index(&out, &sample_steps, &reports, &files)?;
    let residuals = energy_residuals(&energy).ok();
    let ts: Vec<f64> = reports.iter().map(|r| r.time).collect();
    let integrand: Vec<f64> = reports.iter().map(|r| r.get(SPACE_TIME_COLUMN).expect("catalogue column")).collect();
    let integral = cumulative_integral(&ts, &integrand);
    let mut wr = csv::Writer::from_writer(out.file(output::ENERGY)?);
    wr.write_record(["time", "energy", "dissipation", "residual", "int_dx_b_sq"])?;
    for ((&step, r), acc) in sample_steps.iter().zip(&reports).zip(&integral) {
        let e = energy[step];
        let res = match &residuals {
            Some(rs) if step >= 1 && step < energy.len() - 1 => rs[step - 1].1.to_string(),
            _ => String::new(),
        };
        wr.write_record([r.time.to_string(), e.energy.to_string(), e.dissipation.to_string(), res, acc.to_string()])?;
    }
    wr.flush()?;

    let max_energy_residual = residuals.map(|rs| rs.iter().map(|r| r.1).fold(0.0, f64::max));
    let decay = write_decay(&out, cfg, &reports)?;
    let steps = energy.len() - 1;
    out.write_summary(&[
        ("steps", steps.to_string()),
        ("dt", cfg.run.dt.to_string()),
        ("final_time", energy.last().map(|e| e.t).unwrap_or(0.0).to_string()),
        ("final_energy", energy.last().map(|e| e.energy).unwrap_or(0.0).to_string()),
        ("max_energy_residual", max_energy_residual.map(|r| r.to_string()).unwrap_or_default()),
    ])?;
    Ok(SimOutcome { reports, decay, steps, max_energy_residual })
}

/// Linear evolution evaluated directly with the semigroup at each sample time.
pub fn linear_decay(cfg: &RunConfig, out: &Path) -> Result<SimOutcome, CliError> {
    let s0 = cfg.initial_state()?;
    let times = cfg.sample_times()?;
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("linear-decay", true, Some(cfg)))?;
    let mut reports = Vec::with_capacity(times.len());
    let mut files = Vec::with_capacity(times.len());
    for &t in &times {
        let s = apply_semigroup(&s0, t)?;
        reports.push(compute_norms(&s, t, cfg.run.regularity));
        files.push(if cfg.samples.write_fields { dump_state(&out, reports.len() - 1, &s)? } else { String::new() });
    }
    write_norms_csv(out.file(output::NORMS)?, &reports)?;
    let steps: Vec<usize> = vec![0; times.len()];
    write_trajectory_index(&out, &steps, &reports, &files)?;
    let decay = write_decay(&out, cfg, &reports)?;
    Ok(SimOutcome { reports, decay, steps: 0, max_energy_residual: None })
}

/// Re-fits `decay.csv` from an existing `norms.csv`. The window defaults to
/// the one of the run recorded in the manifest.
pub fn report(dir: &Path, t1: Option<f64>, t2: Option<f64>) -> Result<Vec<DecayRow>, CliError> {
    let norms_path = dir.join(output::NORMS);
    let file =
        File::open(&norms_path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", norms_path.display())))?;
    let reports = read_norms_csv(file)?;
    let manifest = Manifest::read(dir).ok();
    let cfg = manifest.as_ref().and_then(|m| m.config.as_ref());
    let (w1, w2, abscissa) = match cfg {
        Some(c) => {
            let (a, b) = c.fit_window()?;
            (Some(a), Some(b), c.fit.abscissa.into())
        }
        None => (None, None, Default::default()),
    };
    let window = match (t1.or(w1), t2.or(w2)) {
        (Some(a), Some(b)) if a < b => (a, b),
        (Some(a), Some(b)) => return Err(CliError::Config(format!("fit window [{a}, {b}] is empty"))),
        _ => return Err(CliError::Config("no fit window: pass --t1/--t2 or keep the run manifest".into())),
    };
    let rows = decay_table(&reports, window, abscissa);
    write_decay_csv(File::create(dir.join(output::DECAY))?, &rows)?;
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSummary {
    pub samples: usize,
    pub max_oracle: f64,
    pub max_trace: f64,
    pub max_det: f64,
}

pub fn verify_multipliers(
    seed: u64,
    n_random: usize,
    n_near: usize,
    out: &Path,
) -> Result<MultiplierSummary, CliError> {
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("verify multipliers", false, None))?;
    let checks = check_multipliers(&sweep_points(seed, n_random, n_near))?;
    let mut wr = csv::Writer::from_writer(out.file("multipliers.csv")?);
    wr.write_record(["xi", "eta", "t", "near_degenerate", "oracle", "trace", "det"])?;
    for c in &checks {
        let p = c.point;
        wr.write_record([
            p.xi.to_string(),
            p.eta.to_string(),
            p.t.to_string(),
            p.near_degenerate.to_string(),
            c.oracle.to_string(),
            c.trace.to_string(),
            c.det.to_string(),
        ])?;
    }
    wr.flush()?;
    let summary = MultiplierSummary {
        samples: checks.len(),
        max_oracle: checks.iter().map(|c| c.oracle).fold(0.0, f64::max),
        max_trace: checks.iter().map(|c| c.trace).fold(0.0, f64::max),
        max_det: checks.iter().map(|c| c.det).fold(0.0, f64::max),
    };
    if let Some((n, c)) = checks
        .iter()
        .enumerate()
        .find(|(_, c)| !(c.oracle <= ORACLE_TOL && c.trace <= INVARIANT_TOL && c.det <= INVARIANT_TOL))
    {
        return Err(CliError::Verification(format!(
            "sample {n} at (xi, eta, t) = ({}, {}, {}): oracle {:e}, trace {:e}, det {:e}",
            c.point.xi, c.point.eta, c.point.t, c.oracle, c.trace, c.det
        )));
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySummary {
    pub samples: usize,
    pub max_residual: f64,
    pub richardson: f64,
}

pub fn verify_identities(
    seed: u64,
    n_random: usize,
    n_near: usize,
    h: f64,
    out: &Path,
) -> Result<IdentitySummary, CliError> {
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("verify identities", false, None))?;
    let checks = check_identities(&sweep_points(seed, n_random, n_near), h)?;
    let mut wr = csv::Writer::from_writer(out.file("identities.csv")?);
    wr.write_record(["xi", "eta", "t", "r_m2_h", "r_m1_h", "r_m2_half", "r_m1_half"])?;
    for c in &checks {
        let p = c.point;
        wr.write_record([p.xi, p.eta, p.t, c.at_h.0, c.at_h.1, c.at_half.0, c.at_half.1].map(|v| v.to_string()))?;
    }
    wr.flush()?;
    let summary = IdentitySummary {
        samples: checks.len(),
        max_residual: checks.iter().map(|c| c.worst()).fold(0.0, f64::max),
        richardson: richardson_ratio(&checks),
    };
    if let Some((n, c)) = checks.iter().enumerate().find(|(_, c)| !(c.worst() <= IDENTITY_TOL)) {
        return Err(CliError::Verification(format!(
            "sample {n} at (xi, eta, t) = ({}, {}, {}): residual {:e}",
            c.point.xi,
            c.point.eta,
            c.point.t,
            c.worst()
        )));
    }
    if !in_band(summary.richardson) {
        return Err(CliError::Verification(format!(
            "Richardson ratio {} outside {:?}",
            summary.richardson, RICHARDSON_BAND
        )));
    }
    Ok(summary)
}

/// Sup ratios on the sweep, checked for growth between the short and full
/// horizons and against the bundled constants. `freeze` writes the measured
/// sups in the bundled-constants format instead of checking them.
pub fn verify_bounds_cmd(spec: &SweepSpec, out: &Path, freeze: Option<&Path>) -> Result<Vec<BoundReport>, CliError> {
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("verify bounds", false, None))?;
    let reports = verify_bounds(spec)?;
    write_bounds_csv(out.file("bounds.csv")?, &reports)?;
    if let Some(path) = freeze {
        let mut wr = csv::Writer::from_path(path)?;
        wr.write_record(["region", "i", "constant"])?;
        for r in &reports {
            wr.write_record([r.region.to_string(), r.i.to_string(), r.sup_ratio.to_string()])?;
        }
        wr.flush()?;
        return Ok(reports);
    }
    let mut failures = Vec::new();
    for r in &reports {
        if r.growth() > 1.0 + BOUND_GROWTH_TOL {
            failures.push(format!(
                "({}, i = {}) sup ratio grows by {:.4} past t = {}, argmax at (xi, eta, t) = ({}, {}, {})",
                r.region,
                r.i,
                r.growth(),
                spec.short_horizon,
                r.argmax_xi,
                r.argmax_eta,
                r.argmax_t
            ));
        }
        let c = frozen_constant(r.region, r.i).expect("bundled constants cover every pair");
        if ((r.sup_ratio - c) / c).abs() > tolerances::BOUND_CONSTANT_DRIFT {
            failures.push(format!("({}, i = {}) sup ratio {} drifts from the bundled {c}", r.region, r.i, r.sup_ratio));
        }
    }
    if !failures.is_empty() {
        return Err(CliError::Verification(failures.join("; ")));
    }
    Ok(reports)
}

/// Reconstructs sampled states from the recorded forcings; returns `(t, relative L² error)`.
pub fn verify_duhamel(cfg: &RunConfig, out: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let s0 = cfg.initial_state()?;
    let times = cfg.sample_times()?;
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("verify duhamel", cfg.run.linear_only, Some(cfg)))?;
    let traj = run_with(
        &s0,
        cfg.run.t_final,
        cfg.run.dt,
        &times,
        RunOptions { linear_only: cfg.run.linear_only, record_forcing: true },
    )?;
    let n = traj.times.len();
    let stride = (n / 10).max(1);
    let mut rows = Vec::new();
    for j in (0..n).filter(|j| j % stride == 0 || *j == n - 1) {
        let t = traj.times[j];
        let r = duhamel_reconstruct(&traj, t)?;
        rows.push((t, relative_l2(&r, &traj.states[j])));
    }
    let mut wr = csv::Writer::from_writer(out.file("duhamel.csv")?);
    wr.write_record(["time", "relative_error"])?;
    for (t, e) in &rows {
        wr.write_record([t.to_string(), e.to_string()])?;
    }
    wr.flush()?;
    if let Some(&(t, e)) = rows.iter().find(|r| !(r.1 <= DUHAMEL_TOL)) {
        return Err(CliError::Verification(format!("relative error {e:e} at t = {t} exceeds {DUHAMEL_TOL:e}")));
    }
    Ok(rows)
}

/// Largest energy residual over all interior steps of a run.
pub fn max_energy_residual(s0: &State, t_final: f64, dt: f64, linear_only: bool) -> Result<f64, CliError> {
    let mut log = EnergyLog::default();
    run_observed(s0, t_final, dt, &[], linear_only, &mut log)?;
    Ok(energy_residuals(&log.samples)?.iter().map(|r| r.1).fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergySummary {
    pub max_residual: f64,
    pub horizon: f64,
    /// Largest residual on `[0, horizon]` at `dt` and at `dt/2`.
    pub short: (f64, f64),
    pub richardson: f64,
}

/// Energy-balance residual ratio under step halving on `[0, horizon]`.
pub fn energy_richardson(cfg: &RunConfig, horizon: f64) -> Result<(f64, f64, f64), CliError> {
    let s0 = cfg.initial_state()?;
    let h = horizon.min(cfg.run.t_final);
    let a = max_energy_residual(&s0, h, cfg.run.dt, cfg.run.linear_only)?;
    let b = max_energy_residual(&s0, h, cfg.run.dt / 2.0, cfg.run.linear_only)?;
    Ok((a, b, a / b))
}

pub fn verify_energy(cfg: &RunConfig, out: &Path, horizon: f64) -> Result<EnergySummary, CliError> {
    let s0 = cfg.initial_state()?;
    let out = OutDir::create(out)?;
    out.write_manifest(&Manifest::new("verify energy", cfg.run.linear_only, Some(cfg)))?;
    let max_residual = max_energy_residual(&s0, cfg.run.t_final, cfg.run.dt, cfg.run.linear_only)?;
    let (a, b, ratio) = energy_richardson(cfg, horizon)?;
    let horizon = horizon.min(cfg.run.t_final);
    let mut wr = csv::Writer::from_writer(out.file("energy_check.csv")?);
    wr.write_record(["dt", "t_final", "max_residual"])?;
    for (dt, t, r) in
        [(cfg.run.dt, cfg.run.t_final, max_residual), (cfg.run.dt, horizon, a), (cfg.run.dt / 2.0, horizon, b)]
    {
        wr.write_record([dt.to_string(), t.to_string(), r.to_string()])?;
    }
    wr.flush()?;
    let summary = EnergySummary { max_residual, horizon, short: (a, b), richardson: ratio };
    if !(max_residual <= ENERGY_TOL) {
        return Err(CliError::Verification(format!("energy residual {max_residual:e} exceeds {ENERGY_TOL:e}")));
    }
    if !in_band(ratio) {
        return Err(CliError::Verification(format!("Richardson ratio {ratio} outside {RICHARDSON_BAND:?}")));
    }
    Ok(summary)
}

/// Default sweep sizes of `verify multipliers` and `verify identities`.
pub fn default_sweep() -> (u64, usize, usize) {
    (sweep::DEFAULT_SEED, sweep::DEFAULT_RANDOM, sweep::DEFAULT_NEAR)
}
