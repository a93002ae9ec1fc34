//! Figure bundles: each figure's parameters and initial conditions, run and
//! written to one directory per figure.
//!
//! Each panel writes `params*.toml`, `equilibria*.json`, `portrait*.csv`
//! (direction field, `m1,m2,dm1,dm2`) and one `trajectory*.csv` per initial
//! condition. `E7_diff` adds `locus.csv`; `E7E4` adds `basin*.csv`.

use std::path::{Path, PathBuf};

use langcomp_core::analysis::e7_locus;
use langcomp_core::dynamics::{integrate, IntegratorOptions};
use langcomp_core::equilibria::available_equilibria;
use langcomp_core::model::{rhs_reduced, ModelParams, PopulationState};

use crate::config::format_model_params;
use crate::error::{CliError, Result};
use crate::io::{fmt_f64, json_bytes, trajectory_csv, write_atomic, Csv};
use crate::parallel::{self, par_map};
use crate::report::{label, EquilibriumReport};

pub const FIGURE_IDS: [&str; 7] = ["E7_1", "E7_diff", "E2_sB_0.6", "E4_sB_0.1", "E4_sB_0.5", "E7_sB_0.99", "E7E4"];

/// Points per side of the direction-field lattice.
pub const PORTRAIT_N: usize = 21;
pub const BASIN_N: usize = 11;

#[derive(Debug, Clone)]
struct Panel {
    suffix: String,
    params: ModelParams,
    ics: Vec<[f64; 3]>,
    options: IntegratorOptions,
    basin: bool,
}

fn standard(s_b: f64, alpha: f64, beta: f64) -> ModelParams {
    ModelParams::standard(s_b, alpha, beta).expect("standard parameters are valid")
}

fn status_grid() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

fn panels(id: &str) -> Option<Vec<Panel>> {
    let short = IntegratorOptions::default();
    let long = IntegratorOptions::attractor_matching();
    let one = |params, ic: [f64; 3], options| {
        vec![Panel { suffix: String::new(), params, ics: vec![ic], options, basin: false }]
    };
    Some(match id {
        "E7_1" => one(standard(0.1, 1.1, 3.6), [0.5, 0.3, 0.2], short),
        "E2_sB_0.6" => one(standard(0.6, 2.0, 1.1), [0.6, 0.25, 0.15], long),
        "E4_sB_0.1" => one(standard(0.1, 2.0, 1.1), [0.5, 0.1, 0.4], long),
        "E4_sB_0.5" => one(standard(0.5, 2.0999, 1.1), [0.8, 0.15, 0.05], long),
        "E7_sB_0.99" => one(standard(0.9, 2.0999, 1.1), [0.4, 0.4, 0.2], long),
        "E7_diff" => status_grid()
            .into_iter()
            .map(|s_b| Panel {
                suffix: format!("_sB_{s_b}"),
                params: standard(s_b, 1.1, 3.6),
                ics: vec![[0.5, 0.3, 0.2]],
                options: short,
                basin: false,
            })
            .collect(),
        "E7E4" => [0.1, 0.9]
            .into_iter()
            .map(|s_b| Panel {
                suffix: format!("_sB_{s_b}"),
                params: standard(s_b, 4.0, 1.1),
                ics: vec![[0.4, 0.4, 0.2], [0.1, 0.1, 0.8]],
                options: long,
                basin: true,
            })
            .collect(),
        _ => return None,
    })
}

/// `m1,m2,dm1,dm2` on the closed triangle `m1, m2 ≥ 0, m1 + m2 ≤ 1`.
pub fn portrait_csv(p: &ModelParams, n: usize) -> Result<Vec<u8>> {
    let mut csv = Csv::new(&["m1", "m2", "dm1", "dm2"]);
    let h = 1.0 / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n - i {
            let (m1, m2) = (i as f64 * h, j as f64 * h);
            let (d1, d2) = rhs_reduced(p, m1, m2.min(1.0 - m1))?;
            csv.floats(&[m1, m2, d1, d2]);
        }
    }
    Ok(csv.into_bytes())
}

fn write(dir: &Path, name: &str, bytes: &[u8], written: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    write_atomic(&path, bytes)?;
    written.push(path);
    Ok(())
}

/// Runs the bundle for `id` into `dir` and returns the files written, in
/// order.
pub fn reproduce(id: &str, dir: &Path, pool: &rayon::ThreadPool) -> Result<Vec<PathBuf>> {
    let panels = panels(id).ok_or_else(|| {
        CliError::validation(format!("unknown figure `{id}` (expected one of {})", FIGURE_IDS.join(", ")))
    })?;
    let mut written = Vec::new();
    for panel in &panels {
        let sfx = &panel.suffix;
        let p = &panel.params;
        write(dir, &format!("params{sfx}.toml"), format_model_params(p).as_bytes(), &mut written)?;
        let eq: Vec<EquilibriumReport> = available_equilibria(p).iter().map(Into::into).collect();
        write(dir, &format!("equilibria{sfx}.json"), &json_bytes(&eq), &mut written)?;
        write(dir, &format!("portrait{sfx}.csv"), &portrait_csv(p, PORTRAIT_N)?, &mut written)?;
        let trajectories = par_map(pool, &panel.ics, |ic| {
            let ic = PopulationState::new(ic[0], ic[1], ic[2])?;
            integrate(p, &ic, &panel.options)
        });
        let many = panel.ics.len() > 1;
        for (k, traj) in trajectories.into_iter().enumerate() {
            let name = if many { format!("trajectory{sfx}_{}.csv", k + 1) } else { format!("trajectory{sfx}.csv") };
            write(dir, &name, &trajectory_csv(&traj?), &mut written)?;
        }
        if panel.basin {
            let map = parallel::basin_map(pool, p, BASIN_N, &panel.options)?;
            let mut csv = Csv::new(&["m1", "m2", "label"]);
            for c in &map.cells {
                csv.row([fmt_f64(c.ic.m1()), fmt_f64(c.ic.m2()), label(c.label).to_string()]);
            }
            write(dir, &format!("basin{sfx}.csv"), &csv.into_bytes(), &mut written)?;
        }
    }
    if id == "E7_diff" {
        let s_bs = status_grid();
        let mut csv = Csv::new(&["s_b", "m1", "m2", "b"]);
        for (s_b, e) in e7_locus(&panels[0].params, &s_bs)? {
            csv.floats(&[s_b, e.m1(), e.m2(), e.b()]);
        }
        write(dir, "locus.csv", &csv.into_bytes(), &mut written)?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_has_panels() {
        for id in FIGURE_IDS {
            assert!(!panels(id).unwrap().is_empty(), "{id}");
        }
        assert!(panels("E9").is_none());
    }

    #[test]
    fn portrait_covers_triangle() {
        let p = ModelParams::standard(0.1, 1.1, 3.6).unwrap();
        let text = String::from_utf8(portrait_csv(&p, 5).unwrap()).unwrap();
        assert_eq!(text.lines().count(), 1 + 15);
        assert!(text.starts_with("m1,m2,dm1,dm2\n"));
    }
}
