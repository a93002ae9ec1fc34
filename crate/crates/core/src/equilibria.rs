//! Fixed points, Jacobians and local stability.
//!
//! All non-trivial fixed points are closed form in the exponent
//! `δ = 1/(1 + β − α)` and the status ratios `r_i = (s_Mi/s_B)^δ`:
//!
//! | kind | coordinates `(m1, m2, b)` |
//! |------|---------------------------|
//! | E1   | `(1, 0, 0)` |
//! | E2   | `(0, 1, 0)` |
//! | E3   | `(0, 0, 1)` |
//! | E4   | the line `(t, 1 − t, 0)` |
//! | E5   | `(r1, 0, 1) / (1 + r1)` |
//! | E6   | `(0, r2, 1) / (1 + r2)` |
//! | E7   | `(r1, r2, 1) / (1 + r1 + r2)` |
//!
//! The ratios overflow long before `α − β` reaches 1 (`δ = 10⁴` at
//! `α − β = 0.9999`), so coordinates are evaluated as a softmax over
//! `δ·ln(s_Mi/s_B)`.
//!
//! Stability is read off the reduced 2×2 Jacobian in `(m1, m2)`. The 3×3
//! Jacobian of the full system always carries one extra zero eigenvalue
//! belonging to the conservation law; its characteristic polynomial is
//! `μ` times that of the reduced one.

use alloc::vec::Vec;
use core::fmt;

use crate::math::{self, eigenvalues_2x2, pow, Complex64};
use crate::model::{check_reduced, ModelParams, PopulationState};
use crate::Error;

pub use crate::math::{char_poly_2x2, char_poly_3x3};

/// Real parts with `|Re μ| < ZERO_EIGENVALUE_TOLERANCE · λ` count as zero.
///
/// The tolerance is applied to the λ-free Jacobian so that a classification
/// does not change under the time rescaling `λ → cλ`.
pub const ZERO_EIGENVALUE_TOLERANCE: f64 = 1e-9;

/// `|1 + β − α|` below this is treated as the degenerate exponent.
pub const DELTA_DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaExponent {
    Finite(f64),
    /// `α − β = 1`.
    Degenerate,
}

impl DeltaExponent {
    pub fn value(self) -> Option<f64> {
        match self {
            DeltaExponent::Finite(d) => Some(d),
            DeltaExponent::Degenerate => None,
        }
    }
}

pub fn delta_exponent(alpha: f64, beta: f64) -> DeltaExponent {
    let denom = 1.0 + beta - alpha;
    if denom.abs() < DELTA_DEGENERACY_TOLERANCE {
        DeltaExponent::Degenerate
    } else {
        DeltaExponent::Finite(1.0 / denom)
    }
}

fn delta_of(p: &ModelParams) -> Result<f64, Error> {
    delta_exponent(p.alpha, p.beta)
        .value()
        .ok_or(Error::DegenerateDelta { alpha: p.alpha, beta: p.beta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquilibriumKind {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
}

impl EquilibriumKind {
    pub const ALL: [EquilibriumKind; 7] = [
        EquilibriumKind::E1,
        EquilibriumKind::E2,
        EquilibriumKind::E3,
        EquilibriumKind::E4,
        EquilibriumKind::E5,
        EquilibriumKind::E6,
        EquilibriumKind::E7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquilibriumKind::E1 => "E1",
            EquilibriumKind::E2 => "E2",
            EquilibriumKind::E3 => "E3",
            EquilibriumKind::E4 => "E4",
            EquilibriumKind::E5 => "E5",
            EquilibriumKind::E6 => "E6",
            EquilibriumKind::E7 => "E7",
        }
    }
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for EquilibriumKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        EquilibriumKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or(())
    }
}

/// The E4 family: every state with no bilinguals, `(t, 1 − t, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BilingualFreeLine;

impl BilingualFreeLine {
    /// `(t, 1 − t, 0)` for `t ∈ (0, 1)`.
    pub fn sample(&self, t: f64) -> Result<PopulationState, Error> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::OutsideReducedDomain { m1: t, m2: 1.0 - t });
        }
        Ok(PopulationState::from_parts(t, 1.0 - t, 0.0))
    }

    /// Midpoint used when a single representative is needed.
    pub fn representative(&self) -> PopulationState {
        PopulationState::from_parts(0.5, 0.5, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Point(PopulationState),
    Line(BilingualFreeLine),
}

impl Location {
    pub fn representative(&self) -> PopulationState {
        match self {
            Location::Point(s) => *s,
            Location::Line(l) => l.representative(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    /// Every eigenvalue of the reduced Jacobian has negative real part.
    Stable,
    /// At least one eigenvalue with positive real part and none negative.
    Unstable,
    /// Real eigenvalues of opposite sign.
    Saddle,
    /// A zero eigenvalue (within tolerance) and no positive one; the
    /// linearisation does not decide stability.
    NonHyperbolic,
    /// The E4 family, whose Jacobian is identically zero.
    DegenerateLine,
    /// The monolingual vertices E1 and E2.
    UndefinedDynamics,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Saddle => "saddle",
            Stability::NonHyperbolic => "non-hyperbolic",
            Stability::DegenerateLine => "degenerate-line",
            Stability::UndefinedDynamics => "undefined-dynamics",
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPoint {
    pub kind: EquilibriumKind,
    pub location: Location,
    /// Spectrum of the reduced Jacobian (at the representative point for E4).
    pub eigenvalues: [Complex64; 2],
    pub stability: Stability,
}

impl EquilibriumPoint {
    pub fn point(&self) -> Option<PopulationState> {
        match self.location {
            Location::Point(s) => Some(s),
            Location::Line(_) => None,
        }
    }
}

/// Softmax of `logs`; the entries are `ln` of the unnormalised weights.
fn normalised_weights<const N: usize>(logs: [f64; N]) -> [f64; N] {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut w = logs.map(|l| math::exp(l - max));
    let sum: f64 = w.iter().sum();
    for x in &mut w {
        *x /= sum;
    }
    w
}

fn log_ratio(delta: f64, s: f64, s_b: f64) -> f64 {
    delta * (math::ln(s) - math::ln(s_b))
}

/// Closed-form location of a fixed point.
pub fn equilibrium_location(p: &ModelParams, kind: EquilibriumKind) -> Result<Location, Error> {
    use EquilibriumKind::*;
    let loc = match kind {
        E1 => Location::Point(PopulationState::from_parts(1.0, 0.0, 0.0)),
        E2 => Location::Point(PopulationState::from_parts(0.0, 1.0, 0.0)),
        E3 => Location::Point(PopulationState::from_parts(0.0, 0.0, 1.0)),
        E4 => Location::Line(BilingualFreeLine),
        E5 => {
            let d = delta_of(p)?;
            let [m1, b] = normalised_weights([log_ratio(d, p.s_m1, p.s_b), 0.0]);
            Location::Point(PopulationState::from_parts(m1, 0.0, b))
        }
        E6 => {
            let d = delta_of(p)?;
            let [m2, b] = normalised_weights([log_ratio(d, p.s_m2, p.s_b), 0.0]);
            Location::Point(PopulationState::from_parts(0.0, m2, b))
        }
        E7 => Location::Point(e7_coords(p)?),
    };
    Ok(loc)
}

/// Interior coexistence point.
pub fn e7_coords(p: &ModelParams) -> Result<PopulationState, Error> {
    let d = delta_of(p)?;
    let [m1, m2, b] = normalised_weights([
        log_ratio(d, p.s_m1, p.s_b),
        log_ratio(d, p.s_m2, p.s_b),
        0.0,
    ]);
    Ok(PopulationState::from_parts(m1, m2, b))
}

/// All seven fixed points with spectra and stability, in order E1..E7.
pub fn equilibria_all(p: &ModelParams) -> Result<Vec<EquilibriumPoint>, Error> {
    delta_of(p)?;
    EquilibriumKind::ALL
        .iter()
        .map(|&kind| equilibrium(p, kind))
        .collect()
}

/// Fixed points that exist for every exponent: E1–E4, plus E5–E7 when δ is
/// defined.
pub fn available_equilibria(p: &ModelParams) -> Vec<EquilibriumPoint> {
    EquilibriumKind::ALL
        .iter()
        .filter_map(|&kind| equilibrium(p, kind).ok())
        .collect()
}

pub fn equilibrium(p: &ModelParams, kind: EquilibriumKind) -> Result<EquilibriumPoint, Error> {
    let location = equilibrium_location(p, kind)?;
    let rep = location.representative();
    let jac = jacobian_reduced(p, rep.m1(), rep.m2())?;
    let eigenvalues = eigenvalues_2x2(&jac);
    let mut e = EquilibriumPoint {
        kind,
        location,
        eigenvalues,
        stability: Stability::Stable,
    };
    e.stability = classify_stability(p, &e);
    Ok(e)
}

/// `(∂F/∂m, ∂F/∂b)` for the flux `F = λ(s m^α b^(β+1) − s_B b^α m^(β+1))`.
#[inline]
fn flux_partials(p: &ModelParams, s_m: f64, m: f64, b: f64) -> (f64, f64) {
    let (a, be, sb) = (p.alpha, p.beta, p.s_b);
    let d_m = a * s_m * pow(m, a - 1.0) * pow(b, be + 1.0) - (be + 1.0) * sb * pow(b, a) * pow(m, be);
    let d_b = (be + 1.0) * s_m * pow(m, a) * pow(b, be) - a * sb * pow(b, a - 1.0) * pow(m, be + 1.0);
    (p.lambda * d_m, p.lambda * d_b)
}

/// Jacobian of the two-dimensional system in `(m1, m2)`:
/// `[[f_m1 − f_b, f_m2 − f_b], [g_m1 − g_b, g_m2 − g_b]]` with
/// `b = 1 − m1 − m2`.
pub fn jacobian_reduced(p: &ModelParams, m1: f64, m2: f64) -> Result<[[f64; 2]; 2], Error> {
    check_reduced(m1, m2)?;
    let b = (1.0 - m1 - m2).max(0.0);
    let (f_m1, f_b) = flux_partials(p, p.s_m1, m1, b);
    let (g_m2, g_b) = flux_partials(p, p.s_m2, m2, b);
    // f does not depend on m2, g not on m1.
    Ok([[f_m1 - f_b, -f_b], [-g_b, g_m2 - g_b]])
}

/// Jacobian of `(f, g, h)` with respect to `(m1, m2, b)`, treating the
/// three fractions as independent; `h = −f − g`.
pub fn jacobian_full(p: &ModelParams, s: &PopulationState) -> [[f64; 3]; 3] {
    let (f_m1, f_b) = flux_partials(p, p.s_m1, s.m1(), s.b());
    let (g_m2, g_b) = flux_partials(p, p.s_m2, s.m2(), s.b());
    [
        [f_m1, 0.0, f_b],
        [0.0, g_m2, g_b],
        [-f_m1, -g_m2, -(f_b + g_b)],
    ]
}

pub fn reduced_eigenvalues(p: &ModelParams, s: &PopulationState) -> [Complex64; 2] {
    let j = jacobian_reduced(p, s.m1(), s.m2()).unwrap_or([[f64::NAN; 2]; 2]);
    eigenvalues_2x2(&j)
}

/// Classifies a reduced-Jacobian spectrum. `lambda` sets the scale of the
/// zero tolerance.
pub fn classify_eigenvalues(eigenvalues: &[Complex64], lambda: f64) -> Stability {
    let tol = ZERO_EIGENVALUE_TOLERANCE * lambda;
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for ev in eigenvalues {
        if !ev.re.is_finite() {
            // NaN only arises from an invalid evaluation point.
            return Stability::NonHyperbolic;
        }
        if ev.re.abs() < tol {
            zero += 1;
        } else if ev.re > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    match (pos, neg, zero) {
        (p, n, _) if p > 0 && n > 0 => Stability::Saddle,
        (p, _, _) if p > 0 => Stability::Unstable,
        (_, _, z) if z > 0 => Stability::NonHyperbolic,
        _ => Stability::Stable,
    }
}

pub fn classify_stability(p: &ModelParams, e: &EquilibriumPoint) -> Stability {
    match (e.kind, e.location) {
        (EquilibriumKind::E1 | EquilibriumKind::E2, _) => Stability::UndefinedDynamics,
        (_, Location::Line(_)) => Stability::DegenerateLine,
        (_, Location::Point(s)) => classify_eigenvalues(&reduced_eigenvalues(p, &s), p.lambda),
    }
}

/// Terms of the trace-negativity condition at E7.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceCondition {
    pub delta: f64,
    /// `1/(−δ)`.
    pub sign_factor: f64,
    /// `(s_M1/s_B)^(−δ)`.
    pub ratio_m1: f64,
    /// `(s_M2/s_B)^(−δ)`.
    pub ratio_m2: f64,
    /// `Σ s_Mi^((β+1)δ)/s_B^(αδ) + s_Mi^(βδ)/s_B^((α−1)δ)`.
    pub bracket: f64,
    /// The three factors other than `1/(−δ)` are positive.
    pub factors_positive: bool,
    /// The product is negative.
    pub holds: bool,
}

/// `s^(num·δ) / s_B^(den·δ)` evaluated through logarithms.
fn status_power_ratio(s: f64, s_b: f64, num: f64, den: f64, delta: f64) -> f64 {
    math::exp(delta * (num * math::ln(s) - den * math::ln(s_b)))
}

pub fn e7_trace_condition(p: &ModelParams) -> Result<TraceCondition, Error> {
    let d = delta_of(p)?;
    let (a, be) = (p.alpha, p.beta);
    let ratio_m1 = math::exp(-log_ratio(d, p.s_m1, p.s_b));
    let ratio_m2 = math::exp(-log_ratio(d, p.s_m2, p.s_b));
    let bracket = [p.s_m1, p.s_m2]
        .iter()
        .map(|&s| {
            status_power_ratio(s, p.s_b, be + 1.0, a, d)
                + status_power_ratio(s, p.s_b, be, a - 1.0, d)
        })
        .sum();
    // Powers of positive numbers are positive; a zero or infinite value here
    // is only under/overflow of the evaluated magnitude.
    let factors_positive = [ratio_m1, ratio_m2, bracket].iter().all(|v| !v.is_nan());
    let sign_factor = -1.0 / d;
    Ok(TraceCondition {
        delta: d,
        sign_factor,
        ratio_m1,
        ratio_m2,
        bracket,
        factors_positive,
        holds: factors_positive && sign_factor < 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryEquilibrium {
    /// Higher-status language M2 extinct.
    E5,
    /// Lower-status language M1 extinct.
    E6,
}

/// Terms of the trace-negativity condition at E5 or E6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCondition {
    pub which: BoundaryEquilibrium,
    pub delta: f64,
    pub sign_factor: f64,
    /// `(s_M/s_B)^(−δ)` for the surviving monolingual group.
    pub ratio: f64,
    /// `s_M^((β+2)δ)/s_B^((α+1)δ) + s_M^((β+1)δ)/s_B^(αδ)`.
    pub bracket: f64,
    pub factors_positive: bool,
    /// `sign_factor · ratio · bracket < 0`.
    pub trace_negative: bool,
}

pub fn boundary_conditions(
    p: &ModelParams,
    which: BoundaryEquilibrium,
) -> Result<BoundaryCondition, Error> {
    let d = delta_of(p)?;
    let s = match which {
        BoundaryEquilibrium::E5 => p.s_m1,
        BoundaryEquilibrium::E6 => p.s_m2,
    };
    let (a, be) = (p.alpha, p.beta);
    let ratio = math::exp(-log_ratio(d, s, p.s_b));
    let bracket = status_power_ratio(s, p.s_b, be + 2.0, a + 1.0, d)
        + status_power_ratio(s, p.s_b, be + 1.0, a, d);
    let factors_positive = !ratio.is_nan() && !bracket.is_nan();
    let sign_factor = -1.0 / d;
    Ok(BoundaryCondition {
        which,
        delta: d,
        sign_factor,
        ratio,
        bracket,
        factors_positive,
        trace_negative: factors_positive && sign_factor < 0.0,
    })
}

/// The all-bilingual limit reached as `α − β → 1⁻`, together with the E7
/// location at the current exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct E3Approach {
    pub limit: PopulationState,
    pub e7: PopulationState,
    pub gap: f64,
}

pub fn e3_limit(p: &ModelParams) -> Result<E3Approach, Error> {
    Ok(E3Approach {
        limit: PopulationState::vertex(crate::model::Group::B),
        e7: e7_coords(p)?,
        gap: p.gap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rhs_full;
    use approx::assert_relative_eq;

    fn fig_e7_1() -> ModelParams {
        ModelParams::standard(0.1, 1.1, 3.6).unwrap()
    }

    fn fig_e2() -> ModelParams {
        ModelParams::standard(0.6, 2.0, 1.1).unwrap()
    }

    #[test]
    fn delta_values() {
        let d = delta_exponent(1.1, 3.6).value().unwrap();
        assert_relative_eq!(d, 1.0 / 3.5, max_relative = 1e-14);
        assert_relative_eq!(d, 0.285714, epsilon = 1e-6);
        let d = delta_exponent(2.0, 1.1).value().unwrap();
        assert_relative_eq!(d, 10.0, max_relative = 1e-12);
        assert_eq!(delta_exponent(2.1, 1.1), DeltaExponent::Degenerate);
        assert_eq!(delta_exponent(3.0, 2.0), DeltaExponent::Degenerate);
    }

    #[test]
    fn e7_of_coexistence_set() {
        let e = e7_coords(&fig_e7_1()).unwrap();
        assert_relative_eq!(e.m1(), 0.33283, epsilon = 5e-6);
        assert_relative_eq!(e.m2(), 0.42400, epsilon = 5e-6);
        assert_relative_eq!(e.b(), 0.24317, epsilon = 5e-6);
    }

    #[test]
    fn e6_with_high_bilingual_status() {
        let Location::Point(e) = equilibrium_location(&fig_e2(), EquilibriumKind::E6).unwrap()
        else {
            panic!("E6 is a point")
        };
        // r2 = (0.7/0.6)^10, computed directly
        let r2 = libm::pow(0.7 / 0.6, 10.0);
        assert_eq!(e.m1(), 0.0);
        assert_relative_eq!(e.m2(), r2 / (1.0 + r2), max_relative = 1e-13);
        assert_relative_eq!(e.m2(), 0.823684, epsilon = 1e-6);
        assert_relative_eq!(e.b(), 0.176316, epsilon = 1e-6);
    }

    #[test]
    fn equal_statuses_centre_e7() {
        let p = ModelParams::new(0.4, 0.4, 0.4, 400.0, 1.5, 2.0).unwrap();
        let e = e7_coords(&p).unwrap();
        for v in e.to_array() {
            assert_relative_eq!(v, 1.0 / 3.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn every_equilibrium_is_stationary() {
        for p in [fig_e7_1(), fig_e2(), ModelParams::standard(0.9, 4.0, 1.1).unwrap()] {
            let all = equilibria_all(&p).unwrap();
            assert_eq!(all.len(), 7);
            for e in &all {
                let s = e.location.representative();
                let d = rhs_full(&p, &s);
                assert!(d.max_abs() < 1e-10, "{} {:?}", e.kind, d);
            }
        }
    }

    #[test]
    fn degenerate_delta_is_an_error() {
        let p = ModelParams::standard(0.5, 2.1, 1.1).unwrap();
        assert!(matches!(equilibria_all(&p), Err(Error::DegenerateDelta { .. })));
        assert_eq!(available_equilibria(&p).len(), 4);
        assert!(e7_trace_condition(&p).is_err());
        assert!(boundary_conditions(&p, BoundaryEquilibrium::E6).is_err());
    }

    #[test]
    fn e4_line_has_zero_jacobian() {
        let p = fig_e2();
        for t in [0.1, 0.37, 0.5, 0.93] {
            let s = BilingualFreeLine.sample(t).unwrap();
            let j = jacobian_reduced(&p, s.m1(), s.m2()).unwrap();
            assert_eq!(j, [[0.0; 2]; 2]);
        }
        assert!(BilingualFreeLine.sample(0.0).is_err());
        let e4 = equilibrium(&p, EquilibriumKind::E4).unwrap();
        assert_eq!(e4.stability, Stability::DegenerateLine);
    }

    #[test]
    fn stability_of_reference_cases() {
        let e7 = equilibrium(&fig_e7_1(), EquilibriumKind::E7).unwrap();
        assert_eq!(e7.stability, Stability::Stable);
        assert!(e7.eigenvalues.iter().all(|ev| ev.re < 0.0));
        for kind in [EquilibriumKind::E1, EquilibriumKind::E2] {
            assert_eq!(
                equilibrium(&fig_e7_1(), kind).unwrap().stability,
                Stability::UndefinedDynamics
            );
        }
    }

    #[test]
    fn e5_never_stable_when_m1_is_lower_status() {
        for i in 1..=10 {
            let s_b = i as f64 / 10.0;
            for j in 1..10 {
                let gap = 0.5 + 0.05 * j as f64;
                let p = ModelParams::standard(s_b, 1.1 + gap, 1.1).unwrap();
                let e5 = equilibrium(&p, EquilibriumKind::E5).unwrap();
                assert_ne!(e5.stability, Stability::Stable, "s_b={s_b} gap={gap}");
            }
        }
    }

    #[test]
    fn classification_rules() {
        let c = |a: f64, b: f64| {
            classify_eigenvalues(&[Complex64::new(a, 0.0), Complex64::new(b, 0.0)], 1.0)
        };
        assert_eq!(c(-1.0, -2.0), Stability::Stable);
        assert_eq!(c(1.0, -2.0), Stability::Saddle);
        assert_eq!(c(1.0, 2.0), Stability::Unstable);
        assert_eq!(c(0.0, -2.0), Stability::NonHyperbolic);
        assert_eq!(c(1e-12, 3.0), Stability::Unstable);
        assert_eq!(c(0.0, 0.0), Stability::NonHyperbolic);
        let pair = [Complex64::new(-0.5, 1.0), Complex64::new(-0.5, -1.0)];
        assert_eq!(classify_eigenvalues(&pair, 1.0), Stability::Stable);
    }

    #[test]
    fn trace_condition_signs() {
        let t = e7_trace_condition(&fig_e7_1()).unwrap();
        assert!(t.delta > 0.0 && t.sign_factor < 0.0);
        assert!(t.ratio_m1 > 0.0 && t.ratio_m2 > 0.0 && t.bracket > 0.0);
        assert!(t.holds);

        let past_one = ModelParams::standard(0.1, 4.0, 1.1).unwrap();
        let t = e7_trace_condition(&past_one).unwrap();
        assert!(t.delta < 0.0);
        assert!(t.factors_positive);
        assert!(!t.holds);
    }

    #[test]
    fn e6_condition_agrees_with_reduced_trace() {
        let p = fig_e2();
        let c = boundary_conditions(&p, BoundaryEquilibrium::E6).unwrap();
        assert!(c.trace_negative);
        let e6 = equilibrium_location(&p, EquilibriumKind::E6).unwrap().representative();
        let j = jacobian_reduced(&p, e6.m1(), e6.m2()).unwrap();
        assert!(j[0][0] + j[1][1] < 0.0);
    }

    #[test]
    fn e5_condition_is_e6_with_m1_status() {
        let p = fig_e2();
        let e5 = boundary_conditions(&p, BoundaryEquilibrium::E5).unwrap();
        let swapped = ModelParams { s_m1: p.s_m2, s_m2: p.s_m1, ..p };
        let e6 = boundary_conditions(&swapped, BoundaryEquilibrium::E6).unwrap();
        assert_eq!(e5.ratio, e6.ratio);
        assert_eq!(e5.bracket, e6.bracket);
        assert_eq!(e5.trace_negative, e6.trace_negative);
    }

    #[test]
    fn all_bilingual_limit() {
        let near = ModelParams::standard(0.9, 2.0999, 1.1).unwrap();
        let a = e3_limit(&near).unwrap();
        assert_eq!(a.limit.to_array(), [0.0, 0.0, 1.0]);
        assert!(a.e7.b() > 0.99);
        let far = ModelParams::standard(0.9, 1.6, 1.1).unwrap();
        assert!(e3_limit(&far).unwrap().e7.b() < a.e7.b());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("e7".parse::<EquilibriumKind>(), Ok(EquilibriumKind::E7));
        assert!("E8".parse::<EquilibriumKind>().is_err());
    }
}
