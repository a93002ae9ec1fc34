//! Mean-field comparison models on the same simplex.
//!
//! * Wang–Minett: monolinguals `x`, `y` and bilinguals `z`, with
//!   generational replacement at rate `mu`.
//! * Mira–Paredes: monolinguals `x`, `y` and bilinguals `b`, with
//!   interlinguistic similarity `k`.
//! * Vázquez: the mean-field form of the three-state agent model, with
//!   neighbour densities replaced by global fractions.
//!
//! Each derivative is built so that its third component is exactly
//! `-(first + second)`.

use crate::dynamics::SimplexField;
use crate::math::pow;
use crate::Error;

fn check_unit_open(name: &'static str, value: f64) -> Result<(), Error> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::StatusOutOfRange { name, value })
    }
}

fn check_nonnegative(what: &'static str, value: f64) -> Result<(), Error> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidOptions(what))
    }
}

#[inline]
fn close(dx: f64, dy: f64) -> [f64; 3] {
    [dx, dy, -(dx + dy)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MWParams {
    /// Status of X; `s_y = 1 − s_x`.
    pub s_x: f64,
    pub c_zx: f64,
    pub c_zy: f64,
    pub c_xz: f64,
    pub c_yz: f64,
    pub a: f64,
    /// Replacement rate in (0, 1).
    pub mu: f64,
}

impl MWParams {
    pub fn validate(&self) -> Result<(), Error> {
        check_unit_open("s_x", self.s_x)?;
        check_unit_open("mu", self.mu)?;
        for c in [self.c_zx, self.c_zy, self.c_xz, self.c_yz] {
            check_nonnegative("switch rates must be nonnegative", c)?;
        }
        check_nonnegative("exponent must be nonnegative", self.a)
    }
}

/// `dx = μ z c_zx s_x x^a − (1−μ) x c_xz s_y y^a`, `dy` by symmetry.
pub fn mw_rhs(p: &MWParams, state: &[f64; 3]) -> [f64; 3] {
    let [x, y, z] = *state;
    let s_y = 1.0 - p.s_x;
    let dx = p.mu * z * p.c_zx * p.s_x * pow(x, p.a) - (1.0 - p.mu) * x * p.c_xz * s_y * pow(y, p.a);
    let dy = p.mu * z * p.c_zy * s_y * pow(y, p.a) - (1.0 - p.mu) * y * p.c_yz * p.s_x * pow(x, p.a);
    close(dx, dy)
}

impl SimplexField for MWParams {
    fn derivative(&self, y: &[f64; 3]) -> [f64; 3] {
        mw_rhs(self, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MPParams {
    pub s_x: f64,
    pub c: f64,
    /// Similarity of the two languages, in [0, 1].
    pub k: f64,
    pub a: f64,
}

impl MPParams {
    pub fn validate(&self) -> Result<(), Error> {
        check_unit_open("s_x", self.s_x)?;
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidOptions("rate constant must be positive"));
        }
        if !(0.0..=1.0).contains(&self.k) {
            return Err(Error::InvalidOptions("similarity must lie in [0, 1]"));
        }
        check_nonnegative("exponent must be nonnegative", self.a)
    }
}

/// Transition probabilities `(P_YX, P_YB, P_XY, P_XB)`. Bilinguals drop a
/// language at the monolingual rates: `P_BX = P_YX`, `P_BY = P_XY`.
pub fn mp_rates(p: &MPParams, x: f64, y: f64) -> [f64; 4] {
    let s_y = 1.0 - p.s_x;
    let to_x = p.c * p.s_x * pow(1.0 - y, p.a);
    let to_y = p.c * s_y * pow(1.0 - x, p.a);
    [(1.0 - p.k) * to_x, p.k * to_x, (1.0 - p.k) * to_y, p.k * to_y]
}

pub fn mp_rhs(p: &MPParams, state: &[f64; 3]) -> [f64; 3] {
    let [x, y, b] = *state;
    let [p_yx, p_yb, p_xy, p_xb] = mp_rates(p, x, y);
    let (p_bx, p_by) = (p_yx, p_xy);
    let dx = y * p_yx + b * p_bx - x * (p_xy + p_xb);
    let dy = x * p_xy + b * p_by - y * (p_yx + p_yb);
    close(dx, dy)
}

impl SimplexField for MPParams {
    fn derivative(&self, y: &[f64; 3]) -> [f64; 3] {
        mp_rhs(self, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VazParams {
    /// Prestige of X, in (0, 1).
    pub s: f64,
    /// Volatility exponent.
    pub a: f64,
}

impl VazParams {
    pub fn validate(&self) -> Result<(), Error> {
        check_unit_open("S", self.s)?;
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidOptions("volatility must be positive"));
        }
        Ok(())
    }
}

/// Only `Z → X`, `Z → Y`, `X → Z` and `Y → Z` occur; there is no direct
/// switch between the two monolingual states.
pub fn vaz_meanfield_rhs(p: &VazParams, state: &[f64; 3]) -> [f64; 3] {
    let [x, y, z] = *state;
    let dx = z * p.s * pow(1.0 - y, p.a) - x * (1.0 - p.s) * pow(y, p.a);
    let dy = z * (1.0 - p.s) * pow(1.0 - x, p.a) - y * p.s * pow(x, p.a);
    close(dx, dy)
}

impl SimplexField for VazParams {
    fn derivative(&self, y: &[f64; 3]) -> [f64; 3] {
        vaz_meanfield_rhs(self, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mw() -> MWParams {
        MWParams { s_x: 0.6, c_zx: 1.0, c_zy: 1.0, c_xz: 1.0, c_yz: 1.0, a: 1.3, mu: 0.5 }
    }

    #[test]
    fn mw_vertex_is_fixed() {
        assert_eq!(mw_rhs(&mw(), &[1.0, 0.0, 0.0]), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn mw_symmetric() {
        let p = MWParams { s_x: 0.5, ..mw() };
        let d = mw_rhs(&p, &[0.3, 0.3, 0.4]);
        assert_eq!(d[0], d[1]);
    }

    #[test]
    fn mp_limits_of_similarity() {
        let p = MPParams { s_x: 0.6, c: 1.0, k: 0.0, a: 1.3 };
        let [_, p_yb, _, p_xb] = mp_rates(&p, 0.3, 0.5);
        assert_eq!((p_yb, p_xb), (0.0, 0.0));
        let p = MPParams { k: 1.0, ..p };
        let [p_yx, _, p_xy, _] = mp_rates(&p, 0.3, 0.5);
        assert_eq!((p_yx, p_xy), (0.0, 0.0));
    }

    #[test]
    fn vaz_symmetry_and_sources() {
        let p = VazParams { s: 0.5, a: 1.5 };
        let d = vaz_meanfield_rhs(&p, &[0.35, 0.35, 0.3]);
        assert_eq!(d[0], d[1]);
        let d = vaz_meanfield_rhs(&p, &[1.0, 0.0, 0.0]);
        assert_eq!(d[0], 0.0);
    }

    #[test]
    fn sums_vanish() {
        let s = [0.2, 0.45, 0.35];
        let mp = MPParams { s_x: 0.4, c: 2.0, k: 0.3, a: 1.2 };
        let vz = VazParams { s: 0.3, a: 2.0 };
        for d in [mw_rhs(&mw(), &s), mp_rhs(&mp, &s), vaz_meanfield_rhs(&vz, &s)] {
            assert_eq!(d[0] + d[1] + d[2], 0.0);
        }
    }

    #[test]
    fn validation() {
        assert!(mw().validate().is_ok());
        assert!(MWParams { mu: 1.0, ..mw() }.validate().is_err());
        assert!(MPParams { s_x: 0.5, c: 1.0, k: 1.2, a: 1.0 }.validate().is_err());
        assert!(VazParams { s: 0.0, a: 1.0 }.validate().is_err());
    }
}
