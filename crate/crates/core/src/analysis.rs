//! Threshold estimation, the regime table, basin maps, the E7 locus and
//! parameter sweeps.
//!
//! Sweeps and basin maps are split into a point list plus a per-item
//! function, so a caller can evaluate items in any order (or in parallel)
//! and reassemble them by index. The sequential drivers here do exactly
//! that in order.

use alloc::vec::Vec;
use core::fmt;

use crate::dynamics::{converge, IntegratorOptions};
use crate::equilibria::{
    available_equilibria, delta_exponent, e7_coords, equilibrium, DeltaExponent, EquilibriumKind, Stability,
};
use crate::model::{ModelParams, PopulationState};
use crate::Error;

/// Default exponent on the withdrawing group's fraction in sweeps.
pub const DEFAULT_BETA: f64 = 1.1;

/// Upper end of the threshold bracket, just below the degenerate gap 1.
pub const THRESHOLD_GAP_MAX: f64 = 0.9999;

/// Distance from `α − β = 1` treated as "approaching 1 from below".
pub const NEAR_ONE: f64 = 1e-3;

/// Margin of the standard interior initial-condition lattice.
pub const IC_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdEstimate {
    pub s_b: f64,
    /// Midpoint of the final bracket.
    pub d: f64,
    /// Largest gap tested with E7 stable.
    pub lower: f64,
    /// Smallest gap tested with E7 not stable.
    pub upper: f64,
    pub width: f64,
}

fn e7_stable(p: &ModelParams) -> bool {
    matches!(equilibrium(p, EquilibriumKind::E7), Ok(e) if e.stability == Stability::Stable)
}

/// Bisection on `α − β` (with `β` from `base`) for the gap at which E7
/// stops being stable.
///
/// The bracket runs from `α = 1` up to [`THRESHOLD_GAP_MAX`]. If E7 is not
/// stable at the bottom or still stable at the top there is nothing to
/// bracket and [`Error::NoThreshold`] is returned.
pub fn threshold_d(base: &ModelParams, s_b: f64, resolution: f64) -> Result<ThresholdEstimate, Error> {
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(Error::InvalidOptions("resolution must be positive"));
    }
    let base = base.with_s_b(s_b);
    let mut lo = 1.0 - base.beta;
    let mut hi = THRESHOLD_GAP_MAX;
    base.with_gap(lo).validate()?;
    if lo >= hi || !e7_stable(&base.with_gap(lo)) || e7_stable(&base.with_gap(hi)) {
        return Err(Error::NoThreshold { s_b });
    }
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if e7_stable(&base.with_gap(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdEstimate { s_b, d: 0.5 * (lo + hi), lower: lo, upper: hi, width: hi - lo })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    CoexistenceE7,
    /// The lower-status monolingual group dies out.
    LowerStatusDiesE6,
    MonolingualsDieE3,
    BilingualsDieE4,
    BistableE3E4,
    BifurcationBandUnresolved,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::CoexistenceE7 => "coexistence-E7",
            Scenario::LowerStatusDiesE6 => "lower-status-dies-E6",
            Scenario::MonolingualsDieE3 => "monolinguals-die-E3",
            Scenario::BilingualsDieE4 => "bilinguals-die-E4",
            Scenario::BistableE3E4 => "bistable-E3-E4",
            Scenario::BifurcationBandUnresolved => "bifurcation-band-unresolved",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime expected from the gap `α − β` relative to `d` and 1, and from
/// where `s_B` sits among the two monolingual statuses.
pub fn scenario_classify(p: &ModelParams, d: f64) -> Scenario {
    let gap = p.gap();
    if gap < d {
        return Scenario::CoexistenceE7;
    }
    if delta_exponent(p.alpha, p.beta) == DeltaExponent::Degenerate {
        return Scenario::BifurcationBandUnresolved;
    }
    if gap > 1.0 {
        return Scenario::BistableE3E4;
    }
    let near_one = 1.0 - gap < NEAR_ONE;
    let low = p.s_m1.min(p.s_m2);
    let high = p.s_m1.max(p.s_m2);
    let s_b = p.s_b;
    if s_b <= low {
        Scenario::BilingualsDieE4
    } else if s_b < high {
        if near_one {
            Scenario::BilingualsDieE4
        } else {
            Scenario::LowerStatusDiesE6
        }
    } else if s_b == high {
        Scenario::LowerStatusDiesE6
    } else if near_one {
        Scenario::MonolingualsDieE3
    } else {
        Scenario::LowerStatusDiesE6
    }
}

/// Strictly interior triangular lattice: `m1 = margin + i·h`,
/// `m2 = margin + j·h` with `i + j ≤ n − 1` and `h = (1 − 3·margin)/(n − 1)`,
/// so every component is at least `margin`. Row-major in `i`, then `j`.
pub fn ic_grid(n: usize, margin: f64) -> Result<Vec<PopulationState>, Error> {
    if n < 2 {
        return Err(Error::InvalidGrid("grid needs at least 2 points per side"));
    }
    if !(margin > 0.0 && 3.0 * margin < 1.0) {
        return Err(Error::InvalidGrid("margin must lie in (0, 1/3)"));
    }
    let h = (1.0 - 3.0 * margin) / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..n - i {
            let m1 = margin + i as f64 * h;
            let m2 = margin + j as f64 * h;
            out.push(PopulationState::from_parts(m1, m2, 1.0 - m1 - m2));
        }
    }
    Ok(out)
}

/// One basin cell: run to rest and keep the matched attractor, if any.
pub fn basin_cell(p: &ModelParams, ic: &PopulationState, opts: &IntegratorOptions) -> Result<Option<EquilibriumKind>, Error> {
    Ok(converge(p, ic, opts)?.matched)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasinMap {
    pub params: ModelParams,
    pub grid_n: usize,
    pub cells: Vec<BasinCell>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasinCell {
    pub ic: PopulationState,
    /// `None` when the final state matched no fixed point.
    pub label: Option<EquilibriumKind>,
}

impl BasinMap {
    pub fn count(&self, kind: EquilibriumKind) -> usize {
        self.cells.iter().filter(|c| c.label == Some(kind)).count()
    }

    pub fn unresolved(&self) -> usize {
        self.cells.iter().filter(|c| c.label.is_none()).count()
    }

    /// Distinct labels in first-seen order.
    pub fn labels(&self) -> Vec<Option<EquilibriumKind>> {
        let mut out: Vec<Option<EquilibriumKind>> = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.label) {
                out.push(c.label);
            }
        }
        out
    }
}

pub fn basin_map(p: &ModelParams, grid_n: usize, opts: &IntegratorOptions) -> Result<BasinMap, Error> {
    let ics = ic_grid(grid_n, IC_MARGIN)?;
    let cells = ics
        .iter()
        .map(|ic| Ok(BasinCell { ic: *ic, label: basin_cell(p, ic, opts)? }))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(BasinMap { params: *p, grid_n, cells })
}

/// E7 for each bilingual status, other parameters from `base`. Needs
/// `α − β < 1`.
pub fn e7_locus(base: &ModelParams, s_bs: &[f64]) -> Result<Vec<(f64, PopulationState)>, Error> {
    match delta_exponent(base.alpha, base.beta) {
        DeltaExponent::Degenerate => {
            return Err(Error::DegenerateDelta { alpha: base.alpha, beta: base.beta })
        }
        DeltaExponent::Finite(delta) if delta <= 0.0 => return Err(Error::DeltaNotPositive { delta }),
        DeltaExponent::Finite(_) => {}
    }
    s_bs.iter()
        .map(|&s_b| {
            let p = base.with_s_b(s_b);
            p.validate()?;
            Ok((s_b, e7_coords(&p)?))
        })
        .collect()
}

/// Cartesian grid over `α − β` and `s_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxes {
    /// Statuses, λ and β come from here; `α` and `s_B` are overwritten.
    pub base: ModelParams,
    pub gaps: Vec<f64>,
    pub s_bs: Vec<f64>,
    /// Side of the interior IC lattice used for attractor matching, if any.
    pub ic_grid_n: Option<usize>,
    pub options: IntegratorOptions,
}

impl SweepAxes {
    /// Grid points, gap-major.
    pub fn points(&self) -> Vec<ModelParams> {
        let mut out = Vec::with_capacity(self.gaps.len() * self.s_bs.len());
        for &gap in &self.gaps {
            for &s_b in &self.s_bs {
                out.push(self.base.with_s_b(s_b).with_gap(gap));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub params: ModelParams,
    /// Stability of every fixed point that exists at these parameters.
    pub stability: Vec<(EquilibriumKind, Stability)>,
    /// Matched attractor per lattice IC, when requested.
    pub attractors: Option<Vec<Option<EquilibriumKind>>>,
}

impl SweepRecord {
    pub fn stability_of(&self, kind: EquilibriumKind) -> Option<Stability> {
        self.stability.iter().find(|(k, _)| *k == kind).map(|(_, s)| *s)
    }
}

pub fn sweep_record(p: &ModelParams, axes: &SweepAxes) -> Result<SweepRecord, Error> {
    p.validate()?;
    let stability = available_equilibria(p).iter().map(|e| (e.kind, e.stability)).collect();
    let attractors = match axes.ic_grid_n {
        None => None,
        Some(n) => Some(
            ic_grid(n, IC_MARGIN)?
                .iter()
                .map(|ic| basin_cell(p, ic, &axes.options))
                .collect::<Result<Vec<_>, Error>>()?,
        ),
    };
    Ok(SweepRecord { params: *p, stability, attractors })
}

pub fn sweep(axes: &SweepAxes) -> Result<Vec<SweepRecord>, Error> {
    axes.points().iter().map(|p| sweep_record(p, axes)).collect()
}
