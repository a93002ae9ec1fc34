//! Time integration on the simplex.
//!
//! Every accepted step is projected back onto the simplex (negative
//! components clipped to zero, then divided by the sum). A component that
//! reaches exactly zero stays there because each face of the simplex is
//! invariant under the flow.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::equilibria::{equilibrium_location, EquilibriumKind, Location};
use crate::math::sqrt;
use crate::model::{self, ModelParams, PopulationState};
use crate::{Error, IntegrationFailure};

/// Euclidean radius within which a final state is matched to a fixed point;
/// also the `b` threshold for the E4 line.
pub const MATCH_TOLERANCE: f64 = 1e-4;

/// A vector field on `[x, y, z]` whose components sum to zero.
pub trait SimplexField {
    fn derivative(&self, y: &[f64; 3]) -> [f64; 3];
}

impl SimplexField for ModelParams {
    fn derivative(&self, y: &[f64; 3]) -> [f64; 3] {
        model::field(self, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Classical fourth-order Runge–Kutta with a fixed step.
    Rk4 { step: f64 },
    /// Dormand–Prince 5(4) with error control.
    Rk45 { rtol: f64, atol: f64 },
}

impl Default for Method {
    fn default() -> Self {
        Method::Rk45 { rtol: 1e-10, atol: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub method: Method,
    pub max_time: f64,
    /// `converge` stops once `‖rhs‖∞ / λ` drops below this. Near a
    /// strongly attracting point the adaptive stepper settles at its
    /// stability limit and leaves `‖rhs‖∞` jittering around `λ·1e-11`, so
    /// the test is taken in units of the rate scale.
    pub convergence_epsilon: f64,
    /// Hard cap on accepted + rejected steps.
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            method: Method::default(),
            max_time: 50.0,
            convergence_epsilon: 1e-10,
            max_steps: 10_000_000,
        }
    }
}

impl IntegratorOptions {
    /// Horizon used for attractor matching. Approach to the boundary
    /// equilibria is algebraic rather than exponential, so reaching the
    /// `1e-4` matching radius takes a few thousand time units at λ = 400.
    pub fn attractor_matching() -> Self {
        Self { max_time: 3000.0, ..Self::default() }
    }

    pub fn with_max_time(mut self, max_time: f64) -> Self {
        self.max_time = max_time;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.max_time.is_finite() && self.max_time > 0.0) {
            return Err(Error::InvalidOptions("max_time must be positive"));
        }
        if self.convergence_epsilon.is_nan() || self.convergence_epsilon < 0.0 {
            return Err(Error::InvalidOptions("convergence epsilon must be nonnegative"));
        }
        match self.method {
            Method::Rk4 { step } if !(step.is_finite() && step > 0.0) => {
                Err(Error::InvalidOptions("rk4 step must be positive"))
            }
            Method::Rk45 { rtol, atol } if !(rtol > 0.0 && atol > 0.0) => {
                Err(Error::InvalidOptions("tolerances must be positive"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<P = ModelParams> {
    /// Strictly increasing, starting at 0.
    pub times: Vec<f64>,
    pub states: Vec<PopulationState>,
    pub params: P,
    pub initial_condition: PopulationState,
    /// Largest `|Σ components − 1|` seen before renormalisation.
    pub max_simplex_drift: f64,
}

impl<P> Trajectory<P> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> PopulationState {
        *self.states.last().unwrap_or(&self.initial_condition)
    }

    pub fn final_time(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &PopulationState)> {
        self.times.iter().copied().zip(self.states.iter())
    }
}

/// Clip tiny negatives and renormalise a raw triple.
///
/// Components below `-1e-9` or a sum further than `1e-6` from 1 are
/// rejected.
pub fn project_simplex(raw: [f64; 3]) -> Result<PopulationState, Error> {
    let [m1, m2, b] = raw;
    let sum: f64 = raw.iter().sum();
    let ok = raw.iter().all(|v| v.is_finite() && *v >= -1e-9) && (sum - 1.0).abs() <= 1e-6;
    if !ok {
        return Err(Error::OffSimplex { m1, m2, b });
    }
    Ok(clip_normalise(raw))
}

fn clip_normalise(raw: [f64; 3]) -> PopulationState {
    let c = raw.map(|v| v.max(0.0));
    let sum = c[0] + c[1] + c[2];
    PopulationState::from_parts(c[0] / sum, c[1] / sum, c[2] / sum)
}

fn sup_norm(v: &[f64; 3]) -> f64 {
    v[0].abs().max(v[1].abs()).max(v[2].abs())
}

struct RunSummary {
    final_state: PopulationState,
    time: f64,
    converged: bool,
    max_drift: f64,
}

/// Core stepping loop. `observe` sees every accepted point (including the
/// initial one). With `stop_below = Some(eps)` the run ends as soon as
/// `‖rhs‖∞ < eps`.
fn run<F, O>(
    field: &F,
    ic: &PopulationState,
    opts: &IntegratorOptions,
    stop_below: Option<f64>,
    mut observe: O,
) -> Result<RunSummary, Error>
where
    F: SimplexField + ?Sized,
    O: FnMut(f64, &PopulationState),
{
    opts.validate()?;
    let mut t = 0.0;
    let mut y = ic.to_array();
    let mut f = field.derivative(&y);
    let mut max_drift = 0.0f64;
    let mut history_t: Vec<f64> = Vec::new();
    let mut history_s: Vec<PopulationState> = Vec::new();
    observe(t, ic);
    history_t.push(t);
    history_s.push(*ic);

    let converged_now = |f: &[f64; 3]| stop_below.is_some_and(|eps| sup_norm(f) < eps);
    if converged_now(&f) {
        return Ok(RunSummary { final_state: *ic, time: 0.0, converged: true, max_drift });
    }

    let mut h = match opts.method {
        Method::Rk4 { step } => step,
        Method::Rk45 { rtol, atol } => initial_step(&y, &f, rtol, atol, opts.max_time),
    };
    let mut steps = 0usize;
    let fail = |t: f64, h: f64, times: Vec<f64>, states: Vec<PopulationState>| {
        Error::Integration(Box::new(IntegrationFailure { t, step: h, times, states }))
    };

    while t < opts.max_time {
        steps += 1;
        if steps > opts.max_steps {
            return Err(fail(t, h, history_t, history_s));
        }
        let last = t + h >= opts.max_time;
        let h_try = if last { opts.max_time - t } else { h };
        let (y_new, accepted, h_next) = match opts.method {
            Method::Rk4 { step } => (rk4_step(field, &y, &f, h_try), true, step),
            Method::Rk45 { rtol, atol } => {
                let (y_new, err) = dopri_step(field, &y, &f, h_try, rtol, atol);
                let accepted = err <= 1.0;
                let factor = if err.is_nan() {
                    0.1
                } else if err == 0.0 {
                    5.0
                } else {
                    (0.9 * libm::pow(err, -0.2)).clamp(0.2, 5.0)
                };
                (y_new, accepted, h_try * if accepted { factor } else { factor.min(1.0) })
            }
        };
        if !accepted {
            h = h_next;
            if h < 1e-14 * t.max(1.0) {
                return Err(fail(t, h, history_t, history_s));
            }
            continue;
        }
        let sum: f64 = y_new.iter().sum();
        max_drift = max_drift.max((sum - 1.0).abs());
        let state = clip_normalise(y_new);
        t = if last { opts.max_time } else { t + h_try };
        y = state.to_array();
        f = field.derivative(&y);
        observe(t, &state);
        if history_t.len() < 64 {
            history_t.push(t);
            history_s.push(state);
        } else {
            // keep the tail for failure reports
            history_t.remove(0);
            history_s.remove(0);
            history_t.push(t);
            history_s.push(state);
        }
        if converged_now(&f) {
            return Ok(RunSummary { final_state: state, time: t, converged: true, max_drift });
        }
        if !last || matches!(opts.method, Method::Rk4 { .. }) {
            h = h_next;
        }
    }
    Ok(RunSummary {
        final_state: PopulationState::from_parts(y[0], y[1], y[2]),
        time: t,
        converged: false,
        max_drift,
    })
}

fn axpy(y: &[f64; 3], h: f64, terms: &[(f64, &[f64; 3])]) -> [f64; 3] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..3 {
            out[i] += h * c * k[i];
        }
    }
    out
}

fn rk4_step<F: SimplexField + ?Sized>(field: &F, y: &[f64; 3], k1: &[f64; 3], h: f64) -> [f64; 3] {
    let k2 = field.derivative(&axpy(y, h, &[(0.5, k1)]));
    let k3 = field.derivative(&axpy(y, h, &[(0.5, &k2)]));
    let k4 = field.derivative(&axpy(y, h, &[(1.0, &k3)]));
    axpy(y, h, &[(1.0 / 6.0, k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)])
}

/// One Dormand–Prince 5(4) step; returns the fifth-order solution and the
/// scaled RMS error estimate.
fn dopri_step<F: SimplexField + ?Sized>(
    field: &F,
    y: &[f64; 3],
    k1: &[f64; 3],
    h: f64,
    rtol: f64,
    atol: f64,
) -> ([f64; 3], f64) {
    let k2 = field.derivative(&axpy(y, h, &[(1.0 / 5.0, k1)]));
    let k3 = field.derivative(&axpy(y, h, &[(3.0 / 40.0, k1), (9.0 / 40.0, &k2)]));
    let k4 = field.derivative(&axpy(
        y,
        h,
        &[(44.0 / 45.0, k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)],
    ));
    let k5 = field.derivative(&axpy(
        y,
        h,
        &[
            (19372.0 / 6561.0, k1),
            (-25360.0 / 2187.0, &k2),
            (64448.0 / 6561.0, &k3),
            (-212.0 / 729.0, &k4),
        ],
    ));
    let k6 = field.derivative(&axpy(
        y,
        h,
        &[
            (9017.0 / 3168.0, k1),
            (-355.0 / 33.0, &k2),
            (46732.0 / 5247.0, &k3),
            (49.0 / 176.0, &k4),
            (-5103.0 / 18656.0, &k5),
        ],
    ));
    let y5 = axpy(
        y,
        h,
        &[
            (35.0 / 384.0, k1),
            (500.0 / 1113.0, &k3),
            (125.0 / 192.0, &k4),
            (-2187.0 / 6784.0, &k5),
            (11.0 / 84.0, &k6),
        ],
    );
    let k7 = field.derivative(&y5);
    // b5 - b4
    let e = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let ks = [k1, &k2, &k3, &k4, &k5, &k6, &k7];
    let mut acc = 0.0;
    for i in 0..3 {
        let err: f64 = h * ks.iter().zip(e.iter()).map(|(k, c)| c * k[i]).sum::<f64>();
        let scale = atol + rtol * y[i].abs().max(y5[i].abs());
        acc += (err / scale) * (err / scale);
    }
    (y5, sqrt(acc / 3.0))
}

fn initial_step(y: &[f64; 3], f: &[f64; 3], rtol: f64, atol: f64, max_time: f64) -> f64 {
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..3 {
        let sc = atol + rtol * y[i].abs();
        d0 += (y[i] / sc) * (y[i] / sc);
        d1 += (f[i] / sc) * (f[i] / sc);
    }
    let (d0, d1) = (sqrt(d0 / 3.0), sqrt(d1 / 3.0));
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(max_time)
}

fn check_strictly_positive(ic: &PopulationState) -> Result<(), Error> {
    if ic.is_strictly_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveInitialCondition)
    }
}

/// Integrates a field from `ic` over `[0, max_time]`, recording every
/// accepted step.
pub fn integrate_field<F>(field: &F, ic: &PopulationState, opts: &IntegratorOptions) -> Result<Trajectory<F>, Error>
where
    F: SimplexField + Clone,
{
    let mut times = Vec::new();
    let mut states = Vec::new();
    let summary = run(field, ic, opts, None, |t, s| {
        times.push(t);
        states.push(*s);
    })?;
    Ok(Trajectory {
        times,
        states,
        params: field.clone(),
        initial_condition: *ic,
        max_simplex_drift: summary.max_drift,
    })
}

/// Trajectory of the three-group model. The initial condition must be
/// strictly positive in every group.
pub fn integrate(p: &ModelParams, ic: &PopulationState, opts: &IntegratorOptions) -> Result<Trajectory, Error> {
    p.validate()?;
    check_strictly_positive(ic)?;
    integrate_field(p, ic, opts)
}

/// Outcome of running to (approximate) rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    pub final_state: PopulationState,
    pub matched: Option<EquilibriumKind>,
    /// Time at which `‖rhs‖∞` fell below the epsilon, or `max_time`.
    pub time: f64,
    pub converged: bool,
    pub max_simplex_drift: f64,
}

/// Nearest fixed point within [`MATCH_TOLERANCE`]; otherwise E4 when the
/// bilingual fraction is below the same tolerance. Exact ties go to the
/// lower-numbered equilibrium.
pub fn match_equilibrium(p: &ModelParams, s: &PopulationState, tol: f64) -> Option<EquilibriumKind> {
    let mut best: Option<(EquilibriumKind, f64)> = None;
    for kind in EquilibriumKind::ALL {
        let Ok(Location::Point(e)) = equilibrium_location(p, kind) else {
            continue;
        };
        let d = s.distance(&e);
        if best.is_none_or(|(_, bd)| d < bd - 1e-12) {
            best = Some((kind, d));
        }
    }
    match best {
        Some((kind, d)) if d <= tol => Some(kind),
        _ if s.b() < tol => Some(EquilibriumKind::E4),
        _ => None,
    }
}

/// Integrates until `‖rhs‖∞ / λ` falls below `convergence_epsilon` or
/// `max_time` is reached, then matches the final state to a fixed point.
///
/// Unlike [`integrate`], states on the boundary are accepted; each face is
/// invariant so the run stays on it.
pub fn converge(p: &ModelParams, ic: &PopulationState, opts: &IntegratorOptions) -> Result<Convergence, Error> {
    p.validate()?;
    let summary = run(p, ic, opts, Some(opts.convergence_epsilon * p.lambda), |_, _| {})?;
    Ok(Convergence {
        final_state: summary.final_state,
        matched: match_equilibrium(p, &summary.final_state, MATCH_TOLERANCE),
        time: summary.time,
        converged: summary.converged,
        max_simplex_drift: summary.max_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::e7_coords;
    use approx::assert_relative_eq;

    fn fig_e7_1() -> ModelParams {
        ModelParams::standard(0.1, 1.1, 3.6).unwrap()
    }

    #[test]
    fn projection() {
        let s = project_simplex([0.5, 0.3, 0.2]).unwrap();
        assert_relative_eq!(s.m1(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(s.m2(), 0.3, epsilon = 1e-15);
        let s = project_simplex([0.5, 0.5 + 1e-10, -1e-10]).unwrap();
        assert_eq!(s.b(), 0.0);
        assert_relative_eq!(s.m1(), 0.5, epsilon = 1e-9);
        assert_relative_eq!(s.m2(), 0.5, epsilon = 1e-9);
        assert!(project_simplex([0.2, 0.2, 0.2]).is_err());
        assert!(project_simplex([0.6, 0.6, -0.2]).is_err());
    }

    #[test]
    fn coexistence_run_reaches_e7() {
        let p = fig_e7_1();
        let ic = PopulationState::new(0.5, 0.3, 0.2).unwrap();
        let traj = integrate(&p, &ic, &IntegratorOptions::default()).unwrap();
        let e7 = e7_coords(&p).unwrap();
        assert!(traj.final_state().distance(&e7) < 1e-6);
        assert!(traj.max_simplex_drift < 1e-9);
        assert_eq!(traj.times[0], 0.0);
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(traj.final_time(), 50.0);
    }

    #[test]
    fn equilibrium_start_is_stationary() {
        let p = fig_e7_1();
        let e7 = e7_coords(&p).unwrap();
        let traj = integrate(&p, &e7, &IntegratorOptions::default()).unwrap();
        let dev = traj.states.iter().map(|s| s.distance(&e7)).fold(0.0, f64::max);
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn rk4_agrees_with_rk45() {
        let p = fig_e7_1();
        let ic = PopulationState::new(0.2, 0.2, 0.6).unwrap();
        let opts = IntegratorOptions::default().with_max_time(5.0);
        let a = integrate(&p, &ic, &opts).unwrap().final_state();
        let opts = opts.with_method(Method::Rk4 { step: 1e-3 });
        let b = integrate(&p, &ic, &opts).unwrap().final_state();
        assert!(a.distance(&b) < 1e-8);
    }

    #[test]
    fn rejects_boundary_ic_and_bad_options() {
        let p = fig_e7_1();
        let ic = PopulationState::new(0.5, 0.5, 0.0).unwrap();
        assert_eq!(
            integrate(&p, &ic, &IntegratorOptions::default()),
            Err(Error::NonPositiveInitialCondition)
        );
        let ic = PopulationState::new(0.5, 0.3, 0.2).unwrap();
        let bad = IntegratorOptions::default().with_method(Method::Rk4 { step: 0.0 });
        assert!(matches!(integrate(&p, &ic, &bad), Err(Error::InvalidOptions(_))));
    }

    #[test]
    fn step_cap_reports_partial_path() {
        let p = fig_e7_1();
        let ic = PopulationState::new(0.5, 0.3, 0.2).unwrap();
        let opts = IntegratorOptions { max_steps: 10, ..IntegratorOptions::default() };
        match integrate(&p, &ic, &opts) {
            Err(Error::Integration(f)) => {
                assert!(!f.times.is_empty());
                assert!(f.t < 50.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn e4_point_matches_immediately() {
        let p = ModelParams::standard(0.1, 2.0, 1.1).unwrap();
        let ic = PopulationState::new(0.3, 0.7, 0.0).unwrap();
        let c = converge(&p, &ic, &IntegratorOptions::default()).unwrap();
        assert_eq!(c.matched, Some(EquilibriumKind::E4));
        assert_eq!(c.time, 0.0);
        assert!(c.converged);
    }

    #[test]
    fn converge_to_e7() {
        let p = fig_e7_1();
        let ic = PopulationState::new(0.1, 0.8, 0.1).unwrap();
        let c = converge(&p, &ic, &IntegratorOptions::default()).unwrap();
        assert!(c.converged);
        assert_eq!(c.matched, Some(EquilibriumKind::E7));
        assert!(c.time > 0.0 && c.time < 50.0);
    }

    #[test]
    fn zero_component_stays_zero() {
        let p = ModelParams::standard(0.6, 2.0, 1.1).unwrap();
        let ic = PopulationState::new(0.0, 0.4, 0.6).unwrap();
        let traj = integrate_field(&p, &ic, &IntegratorOptions::default().with_max_time(5.0)).unwrap();
        assert!(traj.states.iter().all(|s| s.m1() == 0.0));
    }
}
