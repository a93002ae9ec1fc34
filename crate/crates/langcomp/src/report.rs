//! JSON shapes written by the CLI.

use serde::Serialize;

use langcomp_core::analysis::{BasinMap, SweepRecord, ThresholdEstimate};
use langcomp_core::equilibria::{
    boundary_conditions, e7_trace_condition, BoundaryEquilibrium, EquilibriumKind, EquilibriumPoint, Location,
};
use langcomp_core::model::{ModelParams, PopulationState};
use langcomp_core::Complex64;

#[derive(Debug, Serialize)]
pub struct ParamsReport {
    pub s_m1: f64,
    pub s_m2: f64,
    pub s_b: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl From<&ModelParams> for ParamsReport {
    fn from(p: &ModelParams) -> Self {
        Self { s_m1: p.s_m1, s_m2: p.s_m2, s_b: p.s_b, lambda: p.lambda, alpha: p.alpha, beta: p.beta }
    }
}

pub fn coords(s: &PopulationState) -> [f64; 3] {
    s.to_array()
}

pub fn complex_pairs(ev: &[Complex64]) -> Vec<[f64; 2]> {
    ev.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Debug, Serialize)]
pub struct EquilibriumReport {
    pub kind: &'static str,
    /// `null` for the E4 line.
    pub coords: Option<[f64; 3]>,
    /// Point at which the eigenvalues were evaluated.
    pub representative: [f64; 3],
    pub line: bool,
    pub eigenvalues: Vec<[f64; 2]>,
    pub stability: &'static str,
}

impl From<&EquilibriumPoint> for EquilibriumReport {
    fn from(e: &EquilibriumPoint) -> Self {
        Self {
            kind: e.kind.as_str(),
            coords: e.point().map(|s| coords(&s)),
            representative: coords(&e.location.representative()),
            line: matches!(e.location, Location::Line(_)),
            eigenvalues: complex_pairs(&e.eigenvalues),
            stability: e.stability.as_str(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceReport {
    pub equilibrium: &'static str,
    pub delta: f64,
    pub sign_factor: f64,
    pub ratios: Vec<f64>,
    pub bracket: f64,
    pub factors_positive: bool,
    pub trace_negative: bool,
}

/// Printed trace conditions for E5, E6 and E7 (empty when δ is undefined).
pub fn trace_reports(p: &ModelParams) -> Vec<TraceReport> {
    let mut out = Vec::new();
    for which in [BoundaryEquilibrium::E5, BoundaryEquilibrium::E6] {
        if let Ok(c) = boundary_conditions(p, which) {
            out.push(TraceReport {
                equilibrium: match which {
                    BoundaryEquilibrium::E5 => "E5",
                    BoundaryEquilibrium::E6 => "E6",
                },
                delta: c.delta,
                sign_factor: c.sign_factor,
                ratios: vec![c.ratio],
                bracket: c.bracket,
                factors_positive: c.factors_positive,
                trace_negative: c.trace_negative,
            });
        }
    }
    if let Ok(c) = e7_trace_condition(p) {
        out.push(TraceReport {
            equilibrium: "E7",
            delta: c.delta,
            sign_factor: c.sign_factor,
            ratios: vec![c.ratio_m1, c.ratio_m2],
            bracket: c.bracket,
            factors_positive: c.factors_positive,
            trace_negative: c.holds,
        });
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ThresholdReport {
    pub s_b: f64,
    pub d: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub width: Option<f64>,
    pub error: Option<String>,
}

impl ThresholdReport {
    pub fn new(s_b: f64, r: &Result<ThresholdEstimate, langcomp_core::Error>) -> Self {
        match r {
            Ok(e) => Self {
                s_b,
                d: Some(e.d),
                lower: Some(e.lower),
                upper: Some(e.upper),
                width: Some(e.width),
                error: None,
            },
            Err(e) => Self { s_b, d: None, lower: None, upper: None, width: None, error: Some(e.to_string()) },
        }
    }
}

pub fn label(l: Option<EquilibriumKind>) -> &'static str {
    l.map_or("none", EquilibriumKind::as_str)
}

#[derive(Debug, Serialize)]
pub struct BasinReport {
    pub params: ParamsReport,
    pub grid_n: usize,
    pub counts: Vec<(String, usize)>,
    pub cells: Vec<([f64; 3], &'static str)>,
}

impl From<&BasinMap> for BasinReport {
    fn from(m: &BasinMap) -> Self {
        let counts = m.labels().into_iter().map(|l| (label(l).to_string(), m.cells.iter().filter(|c| c.label == l).count())).collect();
        Self {
            params: (&m.params).into(),
            grid_n: m.grid_n,
            counts,
            cells: m.cells.iter().map(|c| (coords(&c.ic), label(c.label))).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub gap: f64,
    pub params: ParamsReport,
    pub stability: Vec<(&'static str, &'static str)>,
    pub attractors: Option<Vec<&'static str>>,
}

impl From<&SweepRecord> for SweepReport {
    fn from(r: &SweepRecord) -> Self {
        Self {
            gap: r.params.gap(),
            params: (&r.params).into(),
            stability: r.stability.iter().map(|(k, s)| (k.as_str(), s.as_str())).collect(),
            attractors: r.attractors.as_ref().map(|a| a.iter().map(|l| label(*l)).collect()),
        }
    }
}
