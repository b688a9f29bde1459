//! Multi-threaded bootstrap driver.
//!
//! Produces reports bit-identical to [`catshrink_core::bootstrap::run`]:
//! replicate `k` always reads RNG stream `k`, and the summary sorts the
//! statistics before extracting quantiles.

use catshrink_core::bootstrap::{
    replicate_statistic, summarize, BootstrapConfig, BootstrapReport, HomogeneityNull, McNemarNull,
    NullModel,
};
use catshrink_core::{ContingencyTable, Result};
use rayon::prelude::*;

pub fn par_run<M: NullModel + Sync + ?Sized>(model: &M, cfg: &BootstrapConfig) -> BootstrapReport {
    let stats: Vec<f64> = (0..cfg.replicates() as u64)
        .into_par_iter()
        .map(|k| replicate_statistic(model, cfg.seed(), k))
        .collect();
    summarize(stats, model.observed(), model.lambda(), cfg)
}

pub fn par_bootstrap_homogeneity(
    t: &ContingencyTable,
    lambda: f64,
    cfg: &BootstrapConfig,
) -> Result<BootstrapReport> {
    Ok(par_run(&HomogeneityNull::new(t, lambda)?, cfg))
}

pub fn par_bootstrap_mcnemar(
    t: &ContingencyTable,
    lambda: f64,
    tau: f64,
    cfg: &BootstrapConfig,
) -> Result<BootstrapReport> {
    Ok(par_run(&McNemarNull::new(t, lambda, tau)?, cfg))
}
