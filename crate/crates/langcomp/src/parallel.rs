//! Data-parallel drivers over the core's per-item functions. Results keep
//! input order whatever the scheduling.

use rayon::prelude::*;

use langcomp_core::analysis::{
    basin_cell, ic_grid, sweep_record, threshold_d, BasinCell, BasinMap, SweepAxes, SweepRecord, ThresholdEstimate,
    IC_MARGIN,
};
use langcomp_core::dynamics::IntegratorOptions;
use langcomp_core::model::ModelParams;

use crate::error::{CliError, Result};

pub const THREADS_ENV: &str = "LANGCOMP_THREADS";

/// Pool sized by `LANGCOMP_THREADS` (a positive integer), or rayon's
/// default when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::validation(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Runtime(e.to_string()))
}

pub fn par_map<T, R, F>(pool: &rayon::ThreadPool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool.install(|| items.par_iter().map(f).collect())
}

pub fn basin_map(pool: &rayon::ThreadPool, p: &ModelParams, grid_n: usize, opts: &IntegratorOptions) -> Result<BasinMap> {
    let ics = ic_grid(grid_n, IC_MARGIN)?;
    let cells = par_map(pool, &ics, |ic| basin_cell(p, ic, opts).map(|label| BasinCell { ic: *ic, label }))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BasinMap { params: *p, grid_n, cells })
}

pub fn sweep(pool: &rayon::ThreadPool, axes: &SweepAxes) -> Result<Vec<SweepRecord>> {
    let points = axes.points();
    Ok(par_map(pool, &points, |p| sweep_record(p, axes)).into_iter().collect::<Result<Vec<_>, _>>()?)
}

pub fn thresholds(
    pool: &rayon::ThreadPool,
    base: &ModelParams,
    s_bs: &[f64],
    resolution: f64,
) -> Vec<Result<ThresholdEstimate, langcomp_core::Error>> {
    par_map(pool, s_bs, |&s_b| threshold_d(base, s_b, resolution))
}
