//! Parameters, simplex states and the right-hand side of the three-group
//! system.
//!
//! A speaker moves from group `i` to group `j` at rate
//! `λ · s_j · (fraction_j)^α · (fraction_i)^β`. Direct M1 ↔ M2 moves do not
//! exist; every switch passes through the bilingual group. Multiplying the
//! rate by the size of the source group gives the flux, so
//!
//! ```text
//! dm_i/dt = λ·s_Mi·m_i^α·b^(β+1) − λ·s_B·b^α·m_i^(β+1)
//! db/dt   = −(dm1/dt + dm2/dt)
//! ```

use alloc::vec::Vec;
use core::fmt;

use crate::math::pow;
use crate::{Error, ParamViolation};

/// Absolute tolerance on `m1 + m2 + b = 1` when a state is constructed.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// Monolingual statuses and rate scale used for every numerical experiment.
pub const STANDARD_S_M1: f64 = 0.3;
pub const STANDARD_S_M2: f64 = 0.7;
pub const STANDARD_LAMBDA: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    M1,
    M2,
    B,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::M1 => "M1",
            Group::M2 => "M2",
            Group::B => "B",
        })
    }
}

/// Statuses, rate scale and the attraction/survival exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub s_m1: f64,
    pub s_m2: f64,
    pub s_b: f64,
    pub lambda: f64,
    /// Ease of attraction, exponent on the attracting group's fraction.
    pub alpha: f64,
    /// Ease of survival, exponent on the withdrawing group's fraction.
    pub beta: f64,
}

impl ModelParams {
    pub fn new(
        s_m1: f64,
        s_m2: f64,
        s_b: f64,
        lambda: f64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self, Error> {
        let p = Self { s_m1, s_m2, s_b, lambda, alpha, beta };
        validate_params(&p).map_err(Error::InvalidParams)?;
        Ok(p)
    }

    /// Standard statuses (0.3, 0.7) and λ = 400 with the given bilingual status
    /// and exponents.
    pub fn standard(s_b: f64, alpha: f64, beta: f64) -> Result<Self, Error> {
        Self::new(STANDARD_S_M1, STANDARD_S_M2, s_b, STANDARD_LAMBDA, alpha, beta)
    }

    /// `α − β`, the attraction/survival trade-off.
    pub fn gap(&self) -> f64 {
        self.alpha - self.beta
    }

    /// Same parameters with `α = β + gap`.
    pub fn with_gap(mut self, gap: f64) -> Self {
        self.alpha = self.beta + gap;
        self
    }

    pub fn with_s_b(mut self, s_b: f64) -> Self {
        self.s_b = s_b;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        validate_params(self).map_err(Error::InvalidParams)
    }
}

/// Every violated range constraint, in field order.
pub fn validate_params(p: &ModelParams) -> Result<(), Vec<ParamViolation>> {
    let mut out = Vec::new();
    let fields = [
        ("s_m1", p.s_m1),
        ("s_m2", p.s_m2),
        ("s_b", p.s_b),
        ("lambda", p.lambda),
        ("alpha", p.alpha),
        ("beta", p.beta),
    ];
    for (name, value) in fields {
        if !value.is_finite() {
            out.push(ParamViolation::NotFinite(name));
        }
    }
    for (name, value) in [("s_m1", p.s_m1), ("s_m2", p.s_m2)] {
        if value.is_finite() && !(value > 0.0 && value < 1.0) {
            out.push(ParamViolation::StatusOutOfRange { name, value });
        }
    }
    if p.s_b.is_finite() && !(p.s_b > 0.0 && p.s_b <= 1.0) {
        out.push(ParamViolation::StatusOutOfRange { name: "s_b", value: p.s_b });
    }
    if p.lambda.is_finite() && p.lambda <= 0.0 {
        out.push(ParamViolation::LambdaNotPositive(p.lambda));
    }
    if p.alpha.is_finite() && p.alpha < 1.0 {
        out.push(ParamViolation::AlphaBelowOne(p.alpha));
    }
    if p.beta.is_finite() && p.beta < 1.0 {
        out.push(ParamViolation::BetaBelowOne(p.beta));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A point `(m1, m2, b)` on the 2-simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationState {
    m1: f64,
    m2: f64,
    b: f64,
}

impl PopulationState {
    /// Accepts nonnegative components summing to 1 within
    /// [`SIMPLEX_TOLERANCE`], then divides by the sum.
    pub fn new(m1: f64, m2: f64, b: f64) -> Result<Self, Error> {
        let ok = [m1, m2, b].iter().all(|v| v.is_finite() && *v >= 0.0);
        let sum = m1 + m2 + b;
        if !ok || (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::OffSimplex { m1, m2, b });
        }
        Ok(Self { m1: m1 / sum, m2: m2 / sum, b: b / sum })
    }

    /// `(m1, m2, 1 − m1 − m2)`.
    pub fn from_reduced(m1: f64, m2: f64) -> Result<Self, Error> {
        check_reduced(m1, m2)?;
        Ok(Self { m1, m2, b: (1.0 - m1 - m2).max(0.0) })
    }

    /// Caller guarantees nonnegative components with unit sum.
    pub(crate) const fn from_parts(m1: f64, m2: f64, b: f64) -> Self {
        Self { m1, m2, b }
    }

    pub const fn vertex(group: Group) -> Self {
        match group {
            Group::M1 => Self::from_parts(1.0, 0.0, 0.0),
            Group::M2 => Self::from_parts(0.0, 1.0, 0.0),
            Group::B => Self::from_parts(0.0, 0.0, 1.0),
        }
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn fraction(&self, group: Group) -> f64 {
        match group {
            Group::M1 => self.m1,
            Group::M2 => self.m2,
            Group::B => self.b,
        }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.m1, self.m2, self.b]
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.m1 > 0.0 && self.m2 > 0.0 && self.b > 0.0
    }

    /// Euclidean distance between two states.
    pub fn distance(&self, other: &Self) -> f64 {
        let d = [self.m1 - other.m1, self.m2 - other.m2, self.b - other.b];
        crate::math::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
    }
}

pub(crate) fn check_reduced(m1: f64, m2: f64) -> Result<(), Error> {
    let ok = m1.is_finite()
        && m2.is_finite()
        && m1 >= 0.0
        && m2 >= 0.0
        && m1 + m2 <= 1.0 + SIMPLEX_TOLERANCE;
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideReducedDomain { m1, m2 })
    }
}

/// Time derivative of a [`PopulationState`]. The components always sum to
/// exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    pub dm1: f64,
    pub dm2: f64,
    pub db: f64,
    /// Set at the monolingual vertices (1,0,0) and (0,1,0). The derivative
    /// is zero there because no transition has a source and target, not
    /// because two flows balance.
    pub degenerate: bool,
}

impl StateDerivative {
    pub fn to_array(&self) -> [f64; 3] {
        [self.dm1, self.dm2, self.db]
    }

    pub fn max_abs(&self) -> f64 {
        self.dm1.abs().max(self.dm2.abs()).max(self.db.abs())
    }
}

/// Rate at which a single speaker moves from `from` to `to`.
pub fn transition_rate(
    p: &ModelParams,
    from: Group,
    to: Group,
    s: &PopulationState,
) -> Result<f64, Error> {
    let status = match (from, to) {
        (Group::M1, Group::B) | (Group::M2, Group::B) => p.s_b,
        (Group::B, Group::M1) => p.s_m1,
        (Group::B, Group::M2) => p.s_m2,
        _ => return Err(Error::UnsupportedTransition { from, to }),
    };
    Ok(p.lambda * status * pow(s.fraction(to), p.alpha) * pow(s.fraction(from), p.beta))
}

/// Net flux into one monolingual group, `λ(s_M m^α b^(β+1) − s_B b^α m^(β+1))`.
#[inline]
pub(crate) fn monolingual_flux(p: &ModelParams, s_m: f64, m: f64, b: f64) -> f64 {
    let gain = s_m * pow(m, p.alpha) * pow(b, p.beta + 1.0);
    let loss = p.s_b * pow(b, p.alpha) * pow(m, p.beta + 1.0);
    p.lambda * (gain - loss)
}

/// Raw field on `[m1, m2, b]`; components are clamped at zero so that
/// integrator stage points slightly outside the simplex stay finite.
#[inline]
pub(crate) fn field(p: &ModelParams, y: &[f64; 3]) -> [f64; 3] {
    let m1 = y[0].max(0.0);
    let m2 = y[1].max(0.0);
    let b = y[2].max(0.0);
    let dm1 = monolingual_flux(p, p.s_m1, m1, b);
    let dm2 = monolingual_flux(p, p.s_m2, m2, b);
    [dm1, dm2, -(dm1 + dm2)]
}

pub fn rhs_full(p: &ModelParams, s: &PopulationState) -> StateDerivative {
    let [dm1, dm2, db] = field(p, &s.to_array());
    StateDerivative {
        dm1,
        dm2,
        db,
        degenerate: s.m1 == 1.0 || s.m2 == 1.0,
    }
}

/// The field restricted to `(m1, m2)` with `b = 1 − m1 − m2`.
pub fn rhs_reduced(p: &ModelParams, m1: f64, m2: f64) -> Result<(f64, f64), Error> {
    check_reduced(m1, m2)?;
    let b = (1.0 - m1 - m2).max(0.0);
    Ok((
        monolingual_flux(p, p.s_m1, m1, b),
        monolingual_flux(p, p.s_m2, m2, b),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn e7_params() -> ModelParams {
        ModelParams::new(0.3, 0.7, 0.1, 400.0, 1.1, 3.6).unwrap()
    }

    #[test]
    fn rate_matches_scalar_formula() {
        let p = e7_params();
        let s = PopulationState::new(0.5, 0.3, 0.2).unwrap();
        let got = transition_rate(&p, Group::M1, Group::B, &s).unwrap();
        let want = 400.0 * 0.1 * libm::pow(0.2, 1.1) * libm::pow(0.5, 3.6);
        assert_relative_eq!(got, want, max_relative = 1e-15);

        let got = transition_rate(&p, Group::B, Group::M2, &s).unwrap();
        let want = 400.0 * 0.7 * libm::pow(0.3, 1.1) * libm::pow(0.2, 3.6);
        assert_relative_eq!(got, want, max_relative = 1e-15);
    }

    #[test]
    fn rate_vanishes_with_empty_groups() {
        let p = e7_params();
        let no_b = PopulationState::new(0.4, 0.6, 0.0).unwrap();
        assert_eq!(transition_rate(&p, Group::B, Group::M1, &no_b).unwrap(), 0.0);
        let no_m1 = PopulationState::new(0.0, 0.6, 0.4).unwrap();
        assert_eq!(transition_rate(&p, Group::M1, Group::B, &no_m1).unwrap(), 0.0);
    }

    #[test]
    fn direct_monolingual_switch_is_rejected() {
        let p = e7_params();
        let s = PopulationState::new(0.5, 0.3, 0.2).unwrap();
        for (from, to) in [(Group::M1, Group::M2), (Group::M2, Group::M1), (Group::B, Group::B)] {
            assert_eq!(
                transition_rate(&p, from, to, &s),
                Err(Error::UnsupportedTransition { from, to })
            );
        }
    }

    #[test]
    fn flux_is_rate_times_source() {
        let p = e7_params();
        let s = PopulationState::new(0.45, 0.25, 0.3).unwrap();
        let d = rhs_full(&p, &s);
        let r = |a, b| transition_rate(&p, a, b, &s).unwrap();
        let dm1 = s.b() * r(Group::B, Group::M1) - s.m1() * r(Group::M1, Group::B);
        let dm2 = s.b() * r(Group::B, Group::M2) - s.m2() * r(Group::M2, Group::B);
        assert_relative_eq!(d.dm1, dm1, max_relative = 1e-12);
        assert_relative_eq!(d.dm2, dm2, max_relative = 1e-12);
        assert_eq!(d.dm1 + d.dm2 + d.db, 0.0);
    }

    #[test]
    fn vertices_are_frozen() {
        let p = e7_params();
        for g in [Group::M1, Group::M2, Group::B] {
            let d = rhs_full(&p, &PopulationState::vertex(g));
            assert_eq!(d.to_array(), [0.0, 0.0, 0.0]);
            assert_eq!(d.degenerate, g != Group::B);
        }
    }

    #[test]
    fn symmetric_statuses_give_symmetric_flux() {
        let p = ModelParams::new(0.4, 0.4, 0.5, 400.0, 1.5, 2.0).unwrap();
        let d = rhs_full(&p, &PopulationState::new(0.3, 0.3, 0.4).unwrap());
        assert_eq!(d.dm1, d.dm2);
    }

    #[test]
    fn reduced_agrees_and_vanishes_on_hypotenuse() {
        let p = e7_params();
        let (a, b) = rhs_reduced(&p, 0.5, 0.3).unwrap();
        let full = rhs_full(&p, &PopulationState::from_reduced(0.5, 0.3).unwrap());
        assert_eq!((a, b), (full.dm1, full.dm2));
        assert_eq!(rhs_reduced(&p, 0.25, 0.75).unwrap(), (0.0, 0.0));
        assert!(matches!(
            rhs_reduced(&p, 0.7, 0.5),
            Err(Error::OutsideReducedDomain { .. })
        ));
    }

    #[test]
    fn validation_reports_every_violation() {
        assert!(ModelParams::standard(0.1, 1.1, 3.6).is_ok());
        let p = ModelParams { s_m1: 0.3, s_m2: 0.7, s_b: 0.1, lambda: 400.0, alpha: 0.5, beta: 1.1 };
        let errs = validate_params(&p).unwrap_err();
        assert_eq!(errs, [ParamViolation::AlphaBelowOne(0.5)]);
        assert!(alloc::format!("{}", errs[0]).contains("alpha below 1"));

        let p = ModelParams { lambda: 0.0, ..p };
        let errs = validate_params(&p).unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(alloc::format!("{}", errs[0]).contains("lambda must be positive"));

        let p = ModelParams { s_m1: 1.0, s_b: 1.0, alpha: 1.0, lambda: 1.0, ..p };
        assert_eq!(
            validate_params(&p).unwrap_err(),
            [ParamViolation::StatusOutOfRange { name: "s_m1", value: 1.0 }]
        );
    }

    #[test]
    fn state_construction() {
        let s = PopulationState::new(0.5, 0.3, 0.2).unwrap();
        assert_relative_eq!(s.m1() + s.m2() + s.b(), 1.0, epsilon = 1e-15);
        assert!(PopulationState::new(0.5, 0.6, 0.2).is_err());
        assert!(PopulationState::new(-0.1, 0.6, 0.5).is_err());
        assert!(PopulationState::new(f64::NAN, 0.6, 0.4).is_err());
    }
}
