use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A table with zero rows or zero columns.
    EmptyTable,
    /// Row `row` has a different length than row 0.
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    NegativeCell {
        row: usize,
        col: usize,
        value: i64,
    },
    /// All cells are zero.
    ZeroTotal,
    /// The table total does not fit in 64 bits.
    CountOverflow,
    /// A real-valued parameter outside its domain (or not finite).
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    /// More successes than trials.
    SuccessesExceedTrials {
        successes: u64,
        trials: u64,
    },
    /// The operation needs at least one trial.
    EmptySample,
    NotTwoByTwo {
        rows: usize,
        cols: usize,
    },
    /// A row or column total of a 2×2 table is zero.
    DegenerateMargin,
    /// McNemar with `n12 + n21 = 0`.
    NoDiscordantPairs,
    /// λ = 0 where the statistic is scaled by 1/λ.
    ZeroLambda,
    /// Cramér's V needs at least two categories on each side.
    InvalidDims {
        rows: usize,
        cols: usize,
    },
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Shrinkage targets violate their marginal constraints.
    InvalidTargets(&'static str),
    /// A regularized margin of the mutual information is zero.
    ZeroMargin {
        axis: Axis,
        index: usize,
    },
    /// The zero-count elision identity was asked for outside its hypothesis.
    HypothesisViolated(&'static str),
    InsufficientReplicates {
        requested: usize,
        minimum: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyTable => f.write_str("table has no rows or no columns"),
            Error::RaggedRow {
                row,
                expected,
                found,
            } => write!(
                f,
                "row {} has {} cells, expected {}",
                row + 1,
                found,
                expected
            ),
            Error::NegativeCell { row, col, value } => {
                write!(f, "cell ({}, {}) is negative: {}", row + 1, col + 1, value)
            }
            Error::ZeroTotal => f.write_str("table total is zero"),
            Error::CountOverflow => f.write_str("table total overflows 64 bits"),
            Error::InvalidParameter { name, value } => {
                write!(f, "parameter `{name}` out of range: {value}")
            }
            Error::SuccessesExceedTrials { successes, trials } => {
                write!(f, "successes ({successes}) exceed trials ({trials})")
            }
            Error::EmptySample => f.write_str("sample has zero trials"),
            Error::NotTwoByTwo { rows, cols } => {
                write!(f, "expected a 2x2 table, got {rows}x{cols}")
            }
            Error::DegenerateMargin => f.write_str("a row or column total is zero"),
            Error::NoDiscordantPairs => f.write_str("no discordant pairs (n12 + n21 = 0)"),
            Error::ZeroLambda => f.write_str("lambda must be positive for a scaled statistic"),
            Error::InvalidDims { rows, cols } => {
                write!(f, "need at least 2 rows and 2 columns, got {rows}x{cols}")
            }
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::InvalidTargets(why) => write!(f, "invalid shrinkage targets: {why}"),
            Error::ZeroMargin { axis, index } => {
                write!(f, "regularized {} margin {} is zero", axis, index + 1)
            }
            Error::HypothesisViolated(why) => write!(f, "hypothesis violated: {why}"),
            Error::InsufficientReplicates { requested, minimum } => write!(
                f,
                "{requested} bootstrap replicates requested, at least {minimum} required"
            ),
        }
    }
}

impl core::error::Error for Error {}

/// Checks that `value` is finite and lies in `[lo, hi]`.
pub(crate) fn check_closed(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

/// λ for a scaled statistic: must lie in (0, 1].
pub(crate) fn check_scaling_lambda(lambda: f64) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::ZeroLambda);
    }
    check_closed("lambda", lambda, 0.0, 1.0)
}
