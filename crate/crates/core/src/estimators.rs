//! Point estimators of a binomial proportion.
//!
//! Every Bayesian estimator here is the posterior mean under a beta prior and
//! can be written as a convex combination of the MLE and the prior mean:
//!
//! ```text
//! (x + a) / (n + a + b) = λ · x/n + (1 − λ) · a/(a + b),   λ = n / (n + a + b)
//! ```
//!
//! | estimator      | prior           | λ          | target |
//! |----------------|-----------------|------------|--------|
//! | MLE            | none            | 1          | –      |
//! | beta posterior | Beta(a, b)      | n/(n+a+b)  | a/(a+b)|
//! | Bayes–Laplace  | Beta(1, 1)      | n/(n+2)    | 1/2    |
//! | Jeffreys       | Beta(1/2, 1/2)  | n/(n+1)    | 1/2    |

use crate::error::check_closed;
use crate::{Error, Result};

/// Beta(a, b) prior (or posterior) on a Bernoulli probability.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BetaPrior {
    a: f64,
    b: f64,
}

/// Raised, not enforced, for shape parameters below one.
///
/// Such priors can put the posterior mode on the boundary when counts are
/// small. Jeffreys' Beta(1/2, 1/2) is the common example.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorAdvisory {
    ShapeBelowOne,
}

impl BetaPrior {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter { name, value: v });
            }
        }
        Ok(Self { a, b })
    }

    /// Beta(1, 1), the uniform (Bayes–Laplace) prior.
    pub const fn uniform() -> Self {
        Self { a: 1.0, b: 1.0 }
    }

    /// Beta(1/2, 1/2).
    pub const fn jeffreys() -> Self {
        Self { a: 0.5, b: 0.5 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Prior mean a/(a+b).
    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }

    pub fn advisory(&self) -> Option<PriorAdvisory> {
        (self.a < 1.0 || self.b < 1.0).then_some(PriorAdvisory::ShapeBelowOne)
    }
}

/// `successes` out of `trials` Bernoulli draws. Zero trials is allowed;
/// operations that need data reject it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BinomialSample {
    successes: u64,
    trials: u64,
}

impl BinomialSample {
    pub fn new(successes: u64, trials: u64) -> Result<Self> {
        if successes > trials {
            return Err(Error::SuccessesExceedTrials { successes, trials });
        }
        Ok(Self { successes, trials })
    }

    pub fn successes(&self) -> u64 {
        self.successes
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn failures(&self) -> u64 {
        self.trials - self.successes
    }
}

/// Weight λ on the data estimate and the value it is shrunk toward.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ShrinkageConfig {
    lambda: f64,
    target: f64,
}

impl ShrinkageConfig {
    pub fn new(lambda: f64, target: f64) -> Result<Self> {
        Ok(Self {
            lambda: check_closed("lambda", lambda, 0.0, 1.0)?,
            target: check_closed("target", target, 0.0, 1.0)?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    /// `λ·estimate + (1−λ)·target`.
    #[inline]
    pub fn apply(&self, estimate: f64) -> f64 {
        self.lambda * estimate + (1.0 - self.lambda) * self.target
    }
}

/// x/n. Undefined without data.
pub fn mle(s: BinomialSample) -> Result<f64> {
    if s.trials == 0 {
        return Err(Error::EmptySample);
    }
    Ok(s.successes as f64 / s.trials as f64)
}

/// Shrinks the MLE toward `c.target()` with weight `c.lambda()`.
pub fn shrink(s: BinomialSample, c: ShrinkageConfig) -> Result<f64> {
    Ok(c.apply(mle(s)?))
}

/// Conjugate update: Beta(a + x, b + n − x).
pub fn posterior_beta(p: BetaPrior, s: BinomialSample) -> BetaPrior {
    BetaPrior {
        a: p.a + s.successes as f64,
        b: p.b + s.failures() as f64,
    }
}

/// Posterior mean (x + a)/(n + a + b).
pub fn posterior_mean_beta(p: BetaPrior, s: BinomialSample) -> f64 {
    (s.successes as f64 + p.a) / (s.trials as f64 + p.a + p.b)
}

/// (x + 1)/(n + 2).
pub fn bayes_laplace(s: BinomialSample) -> f64 {
    (s.successes as f64 + 1.0) / (s.trials as f64 + 2.0)
}

/// (x + 1/2)/(n + 1).
pub fn jeffreys(s: BinomialSample) -> f64 {
    (s.successes as f64 + 0.5) / (s.trials as f64 + 1.0)
}

/// Where the posterior density peaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ModeKind {
    /// Unique interior maximum.
    Interior,
    /// Density is monotone; the mode sits at 0 or 1.
    BoundaryMode,
    /// No unique mode: flat Beta(1, 1), or U-shaped with both shapes below one.
    UndefinedMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MapEstimate {
    pub value: f64,
    pub kind: ModeKind,
}

/// Posterior mode (MAP estimate).
///
/// Boundary and non-unique modes are reported through [`ModeKind`] rather
/// than as errors; a non-unique mode reports 0.5.
pub fn map_estimate(p: BetaPrior, s: BinomialSample) -> MapEstimate {
    let post = posterior_beta(p, s);
    let (a, b) = (post.a, post.b);
    let (value, kind) = if a > 1.0 && b > 1.0 {
        ((a - 1.0) / (a + b - 2.0), ModeKind::Interior)
    } else if (a == 1.0 && b == 1.0) || (a < 1.0 && b < 1.0) {
        // Flat, or U-shaped with modes at both ends.
        (0.5, ModeKind::UndefinedMode)
    } else if a <= 1.0 {
        // b ≥ 1 and not both equal to one: nonincreasing density.
        (0.0, ModeKind::BoundaryMode)
    } else {
        (1.0, ModeKind::BoundaryMode)
    };
    MapEstimate { value, kind }
}

/// Writes the Beta(a, b) posterior mean for `n` trials in shrinkage form.
pub fn decompose_shrinkage(p: BetaPrior, n: u64) -> Result<ShrinkageConfig> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let n = n as f64;
    ShrinkageConfig::new(n / (n + p.a + p.b), p.mean())
}
