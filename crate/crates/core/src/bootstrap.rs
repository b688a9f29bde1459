//! Parametric bootstrap of the regularized homogeneity and McNemar tests.
//!
//! Replicate `k` draws from its own ChaCha8 stream (`stream = k`) of a
//! generator keyed by the user seed, so the statistic of a replicate depends
//! only on `(seed, k)`. Any execution order, serial or parallel, produces the
//! same multiset of statistics and hence the same report.
//!
//! Null models:
//!
//! - homogeneity: column totals fixed, each column an independent binomial
//!   with the pooled success rate n₁./n. The pooled rate is its own shrinkage
//!   target, so λ only rescales the statistic.
//! - McNemar: multinomial with the observed total. All four cells are shrunk
//!   toward τ, the discordant pair is replaced by its average, and the table
//!   is renormalized.
//!
//! A replicate whose statistic is undefined (an empty row in the homogeneity
//! table, no discordant pairs in the McNemar table) has equal group rates and
//! scores 0.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Binomial, Distribution};

use crate::error::{check_closed, check_scaling_lambda};
use crate::normal::two_sided_p;
use crate::tests::{homogeneity_regularized, mcnemar_regularized};
use crate::{ContingencyTable, Error, Result};

/// Probability levels reported in every [`BootstrapReport`].
pub const QUANTILE_LEVELS: [f64; 6] = [0.005, 0.025, 0.05, 0.95, 0.975, 0.995];

pub const MIN_REPLICATES: usize = 100;
pub const DEFAULT_REPLICATES: usize = 10_000;
pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BootstrapConfig {
    replicates: usize,
    seed: u64,
    alpha: f64,
}

impl BootstrapConfig {
    pub fn new(replicates: usize, seed: u64, alpha: f64) -> Result<Self> {
        if replicates < MIN_REPLICATES {
            return Err(Error::InsufficientReplicates {
                requested: replicates,
                minimum: MIN_REPLICATES,
            });
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
            });
        }
        Ok(Self {
            replicates,
            seed,
            alpha,
        })
    }

    /// 10 000 replicates at α = 0.05.
    pub fn with_seed(seed: u64) -> Self {
        Self {
            replicates: DEFAULT_REPLICATES,
            seed,
            alpha: DEFAULT_ALPHA,
        }
    }

    pub fn replicates(&self) -> usize {
        self.replicates
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuantilePoint {
    pub level: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BootstrapReport {
    /// Inverted-CDF (type 1) quantiles of the scaled statistic, ascending in level.
    pub empirical_quantiles: Vec<QuantilePoint>,
    /// Share of replicates with two-sided asymptotic p-value ≤ α.
    pub rejection_rate: f64,
    /// Scaled statistic of the observed table.
    pub observed: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub replicates: usize,
    pub seed: u64,
}

impl BootstrapReport {
    pub fn quantile(&self, level: f64) -> Option<f64> {
        self.empirical_quantiles
            .iter()
            .find(|q| q.level == level)
            .map(|q| q.value)
    }
}

/// A fitted null model producing one scaled statistic per replicate.
pub trait NullModel {
    fn lambda(&self) -> f64;

    /// Scaled statistic of the observed data.
    fn observed(&self) -> f64;

    /// Scaled statistic of one table drawn from the null.
    fn replicate(&self, rng: &mut ChaCha8Rng) -> f64;
}

/// Generator for replicate `index`: the ChaCha8 stream `index` under `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Scaled statistic of replicate `index`.
pub fn replicate_statistic<M: NullModel + ?Sized>(model: &M, seed: u64, index: u64) -> f64 {
    model.replicate(&mut replicate_rng(seed, index))
}

/// Binomial(n, p) draw; `p` is clamped to [0, 1].
pub fn sample_binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    let p = p.clamp(0.0, 1.0);
    if n == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return n;
    }
    Binomial::new(n, p)
        .expect("probability clamped to [0, 1]")
        .sample(rng)
}

/// Multinomial(n, probs) via conditional binomials. `probs` should sum to one.
pub fn sample_multinomial(rng: &mut ChaCha8Rng, n: u64, probs: &[f64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(probs.len());
    let mut remaining_n = n;
    let mut remaining_p = 1.0;
    for (k, &p) in probs.iter().enumerate() {
        if k + 1 == probs.len() {
            out.push(remaining_n);
            break;
        }
        let draw = if remaining_p > 0.0 {
            sample_binomial(rng, remaining_n, p / remaining_p)
        } else {
            0
        };
        out.push(draw);
        remaining_n -= draw;
        remaining_p -= p;
    }
    out
}

/// Two binomial columns with a shared success probability.
#[derive(Debug, Clone)]
pub struct HomogeneityNull {
    col_totals: (u64, u64),
    success_prob: f64,
    lambda: f64,
    observed: f64,
}

impl HomogeneityNull {
    pub fn new(t: &ContingencyTable, lambda: f64) -> Result<Self> {
        let observed = homogeneity_regularized(t, lambda)?.scaled_statistic;
        let c = t.two_by_two()?;
        let (r1, _) = c.row_totals();
        let pooled = r1 as f64 / c.total() as f64;
        // λ·pooled + (1−λ)·pooled
        let success_prob = lambda * pooled + (1.0 - lambda) * pooled;
        Ok(Self {
            col_totals: c.col_totals(),
            success_prob,
            lambda,
            observed,
        })
    }

    pub fn success_prob(&self) -> f64 {
        self.success_prob
    }
}

impl NullModel for HomogeneityNull {
    fn lambda(&self) -> f64 {
        self.lambda
    }

    fn observed(&self) -> f64 {
        self.observed
    }

    fn replicate(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (c1, c2) = self.col_totals;
        let x1 = sample_binomial(rng, c1, self.success_prob);
        let x2 = sample_binomial(rng, c2, self.success_prob);
        let table = ContingencyTable::from_cells(2, 2, alloc::vec![x1, x2, c1 - x1, c2 - x2])
            .expect("column totals are positive");
        match homogeneity_regularized(&table, self.lambda) {
            Ok(report) => report.scaled_statistic,
            Err(Error::DegenerateMargin) => 0.0,
            Err(e) => unreachable!("validated null model: {e}"),
        }
    }
}

/// Multinomial paired table with symmetric discordant cells.
#[derive(Debug, Clone)]
pub struct McNemarNull {
    n: u64,
    probs: [f64; 4],
    lambda: f64,
    tau: f64,
    observed: f64,
}

impl McNemarNull {
    pub fn new(t: &ContingencyTable, lambda: f64, tau: f64) -> Result<Self> {
        let observed = mcnemar_regularized(t, lambda, tau)?.scaled_statistic;
        let lambda = check_scaling_lambda(lambda)?;
        let tau = check_closed("tau", tau, 0.0, 1.0)?;
        let c = t.two_by_two()?;
        let n = c.total();
        let shrink = |count: u64| lambda * (count as f64 / n as f64) + (1.0 - lambda) * tau;
        let discordant = 0.5 * (shrink(c.n12) + shrink(c.n21));
        let raw = [shrink(c.n11), discordant, discordant, shrink(c.n22)];
        let total = crate::sum::neumaier(raw.iter().copied());
        Ok(Self {
            n,
            probs: raw.map(|p| p / total),
            lambda,
            tau,
            observed,
        })
    }

    /// Null cell probabilities, row-major.
    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }
}

impl NullModel for McNemarNull {
    fn lambda(&self) -> f64 {
        self.lambda
    }

    fn observed(&self) -> f64 {
        self.observed
    }

    fn replicate(&self, rng: &mut ChaCha8Rng) -> f64 {
        let cells = sample_multinomial(rng, self.n, &self.probs);
        let table = ContingencyTable::from_cells(2, 2, cells).expect("total is positive");
        match mcnemar_regularized(&table, self.lambda, self.tau) {
            Ok(report) => report.scaled_statistic,
            Err(Error::NoDiscordantPairs) => 0.0,
            Err(e) => unreachable!("validated null model: {e}"),
        }
    }
}

/// Inverted-CDF quantile of an ascending sample: the ⌈p·B⌉-th order statistic.
pub fn type1_quantile(sorted: &[f64], level: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let b = sorted.len();
    // Guard against p·B landing a hair above an integer.
    let rank = libm::ceil(level * b as f64 - 1e-9) as usize;
    sorted[rank.clamp(1, b) - 1]
}

/// Builds the report from replicate statistics in any order.
pub fn summarize(
    mut statistics: Vec<f64>,
    observed: f64,
    lambda: f64,
    cfg: &BootstrapConfig,
) -> BootstrapReport {
    let rejections = statistics
        .iter()
        .filter(|&&s| two_sided_p(s) <= cfg.alpha)
        .count();
    statistics.sort_by(f64::total_cmp);
    let empirical_quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&level| QuantilePoint {
            level,
            value: type1_quantile(&statistics, level),
        })
        .collect();
    BootstrapReport {
        empirical_quantiles,
        rejection_rate: rejections as f64 / statistics.len() as f64,
        observed,
        lambda,
        alpha: cfg.alpha,
        replicates: statistics.len(),
        seed: cfg.seed,
    }
}

/// Runs all replicates serially.
pub fn run<M: NullModel + ?Sized>(model: &M, cfg: &BootstrapConfig) -> BootstrapReport {
    let stats = (0..cfg.replicates as u64)
        .map(|k| replicate_statistic(model, cfg.seed, k))
        .collect();
    summarize(stats, model.observed(), model.lambda(), cfg)
}

pub fn bootstrap_homogeneity(
    t: &ContingencyTable,
    lambda: f64,
    cfg: &BootstrapConfig,
) -> Result<BootstrapReport> {
    Ok(run(&HomogeneityNull::new(t, lambda)?, cfg))
}

pub fn bootstrap_mcnemar(
    t: &ContingencyTable,
    lambda: f64,
    tau: f64,
    cfg: &BootstrapConfig,
) -> Result<BootstrapReport> {
    Ok(run(&McNemarNull::new(t, lambda, tau)?, cfg))
}
