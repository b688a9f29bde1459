//! Plug-in and regularized mutual information of a two-way table.
//!
//! The regularized estimate shrinks every cell toward a target table `t`
//! whose row and column sums are `zeta` and `eta`:
//!
//! ```text
//! π*ᵢⱼ = λ·π̂ᵢⱼ + (1−λ)·tᵢⱼ
//! MI*  = Σᵢⱼ π*ᵢⱼ · log( π*ᵢⱼ / ((λπ̂ᵢ. + (1−λ)ζᵢ)(λπ̂.ⱼ + (1−λ)ηⱼ)) )
//! ```
//!
//! Values are in nats. Terms with π*ᵢⱼ = 0 contribute 0, and a cell with a
//! zero count and a zero target is skipped altogether: its term is exactly
//! zero whatever the margins are.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::error::check_closed;
use crate::sum::NeumaierSum;
use crate::{Axis, ContingencyTable, Error, Result};

/// Tolerance on the marginal constraints of a target table.
pub const TARGET_TOLERANCE: f64 = 1e-12;

/// Shrinkage target for the joint distribution and its two margins.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MITargetSpec {
    rows: usize,
    cols: usize,
    t: Vec<f64>,
    zeta: Vec<f64>,
    eta: Vec<f64>,
}

impl MITargetSpec {
    /// Validates a row-major target table against explicit margins.
    pub fn new(
        rows: usize,
        cols: usize,
        t: Vec<f64>,
        zeta: Vec<f64>,
        eta: Vec<f64>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        if t.len() != rows * cols || zeta.len() != rows || eta.len() != cols {
            return Err(Error::InvalidTargets(
                "lengths do not match the table shape",
            ));
        }
        for &v in &t {
            check_closed("target", v, 0.0, 1.0)?;
        }
        if zeta
            .iter()
            .chain(&eta)
            .any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(Error::InvalidTargets(
                "margins must be finite and nonnegative",
            ));
        }
        let spec = Self {
            rows,
            cols,
            t,
            zeta,
            eta,
        };
        let total = crate::sum::neumaier(spec.t.iter().copied());
        if (total - 1.0).abs() > TARGET_TOLERANCE {
            return Err(Error::InvalidTargets("target cells do not sum to one"));
        }
        for i in 0..rows {
            if (spec.target_row_sum(i) - spec.zeta[i]).abs() > TARGET_TOLERANCE {
                return Err(Error::InvalidTargets("row sums differ from zeta"));
            }
        }
        for j in 0..cols {
            if (spec.target_col_sum(j) - spec.eta[j]).abs() > TARGET_TOLERANCE {
                return Err(Error::InvalidTargets("column sums differ from eta"));
            }
        }
        Ok(spec)
    }

    /// Derives `zeta` and `eta` from the target table itself.
    pub fn from_table(rows: usize, cols: usize, t: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        if t.len() != rows * cols {
            return Err(Error::InvalidTargets(
                "lengths do not match the table shape",
            ));
        }
        let zeta = (0..rows)
            .map(|i| crate::sum::neumaier(t[i * cols..(i + 1) * cols].iter().copied()))
            .collect();
        let eta = (0..cols)
            .map(|j| crate::sum::neumaier((0..rows).map(|i| t[i * cols + j])))
            .collect();
        Self::new(rows, cols, t, zeta, eta)
    }

    /// tᵢⱼ = 1/(IJ), ζᵢ = 1/I, ηⱼ = 1/J.
    pub fn uniform(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        let cell = 1.0 / (rows * cols) as f64;
        Self::new(
            rows,
            cols,
            alloc::vec![cell; rows * cols],
            alloc::vec![1.0 / rows as f64; rows],
            alloc::vec![1.0 / cols as f64; cols],
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn target(&self, row: usize, col: usize) -> f64 {
        self.t[row * self.cols + col]
    }

    pub fn targets(&self) -> &[f64] {
        &self.t
    }

    pub fn zeta(&self) -> &[f64] {
        &self.zeta
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn transpose(&self) -> Self {
        let mut t = Vec::with_capacity(self.t.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                t.push(self.target(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            t,
            zeta: self.eta.clone(),
            eta: self.zeta.clone(),
        }
    }

    fn target_row_sum(&self, i: usize) -> f64 {
        crate::sum::neumaier(self.t[i * self.cols..(i + 1) * self.cols].iter().copied())
    }

    fn target_col_sum(&self, j: usize) -> f64 {
        crate::sum::neumaier((0..self.rows).map(|i| self.target(i, j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MIResult {
    /// Mutual information in nats.
    pub value: f64,
    pub lambda: f64,
    /// Cells skipped because both the count and the target are zero.
    pub cells_elided: usize,
}

impl MIResult {
    pub fn bits(&self) -> f64 {
        self.value / LN_2
    }
}

/// Plug-in mutual information Σ π̂ᵢⱼ log(π̂ᵢⱼ / (π̂ᵢ. π̂.ⱼ)) over nonzero cells.
pub fn mi_mle(t: &ContingencyTable) -> f64 {
    let n = t.total() as f64;
    let rows = t.row_totals();
    let cols = t.col_totals();
    let mut acc = NeumaierSum::new();
    for (i, &ri) in rows.iter().enumerate() {
        for (j, &cj) in cols.iter().enumerate() {
            let nij = t.get(i, j);
            if nij == 0 {
                continue;
            }
            let nij = nij as f64;
            // π̂ᵢⱼ/(π̂ᵢ.π̂.ⱼ) = nᵢⱼ·n/(nᵢ.·n.ⱼ), exact 1 for independent cells.
            let ratio = (nij * n) / (ri as f64 * cj as f64);
            acc.add(nij / n * libm::log(ratio));
        }
    }
    acc.total().max(0.0)
}

struct Regularized {
    cells: Vec<f64>,
    rows: Vec<f64>,
    cols: Vec<f64>,
}

fn regularize(t: &ContingencyTable, lambda: f64, targets: &MITargetSpec) -> Regularized {
    let n = t.total() as f64;
    let keep = 1.0 - lambda;
    let cells = t
        .cells()
        .iter()
        .zip(targets.targets())
        .map(|(&c, &tc)| lambda * (c as f64 / n) + keep * tc)
        .collect();
    let rows = t
        .row_totals()
        .iter()
        .zip(targets.zeta())
        .map(|(&r, &z)| lambda * (r as f64 / n) + keep * z)
        .collect();
    let cols = t
        .col_totals()
        .iter()
        .zip(targets.eta())
        .map(|(&c, &e)| lambda * (c as f64 / n) + keep * e)
        .collect();
    Regularized { cells, rows, cols }
}

#[inline]
fn mi_term(joint: f64, row: f64, col: f64) -> f64 {
    if joint == 0.0 {
        0.0
    } else {
        joint * libm::log(joint / (row * col))
    }
}

fn check_shape(t: &ContingencyTable, targets: &MITargetSpec) -> Result<()> {
    if t.shape() != targets.shape() {
        return Err(Error::DimensionMismatch {
            expected: t.shape(),
            found: targets.shape(),
        });
    }
    Ok(())
}

/// Regularized mutual information with weight `lambda` on the data.
///
/// At λ = 1 this is [`mi_mle`]; at λ = 0 it is the mutual information of the
/// target table. Every regularized margin must be positive.
pub fn mi_regularized(
    t: &ContingencyTable,
    lambda: f64,
    targets: &MITargetSpec,
) -> Result<MIResult> {
    let lambda = check_closed("lambda", lambda, 0.0, 1.0)?;
    check_shape(t, targets)?;
    let reg = regularize(t, lambda, targets);
    if let Some(i) = reg.rows.iter().position(|&r| r <= 0.0) {
        return Err(Error::ZeroMargin {
            axis: Axis::Row,
            index: i,
        });
    }
    if let Some(j) = reg.cols.iter().position(|&c| c <= 0.0) {
        return Err(Error::ZeroMargin {
            axis: Axis::Column,
            index: j,
        });
    }
    let cols = t.cols();
    let mut acc = NeumaierSum::new();
    let mut cells_elided = 0;
    for (k, &joint) in reg.cells.iter().enumerate() {
        if t.cells()[k] == 0 && targets.targets()[k] == 0.0 {
            cells_elided += 1;
            continue;
        }
        acc.add(mi_term(joint, reg.rows[k / cols], reg.cols[k % cols]));
    }
    Ok(MIResult {
        value: acc.total().max(0.0),
        lambda,
        cells_elided,
    })
}

/// Checks that skipping zero-count cells leaves the regularized mutual
/// information unchanged (to 1e-12).
///
/// Requires positive count margins and a zero target at every zero-count
/// cell; otherwise returns [`Error::HypothesisViolated`].
pub fn verify_zero_elision(
    t: &ContingencyTable,
    lambda: f64,
    targets: &MITargetSpec,
) -> Result<bool> {
    let lambda = check_closed("lambda", lambda, 0.0, 1.0)?;
    check_shape(t, targets)?;
    if t.row_totals().contains(&0) {
        return Err(Error::HypothesisViolated("a row of the table is empty"));
    }
    if t.col_totals().contains(&0) {
        return Err(Error::HypothesisViolated("a column of the table is empty"));
    }
    if t.cells()
        .iter()
        .zip(targets.targets())
        .any(|(&c, &tc)| c == 0 && tc != 0.0)
    {
        return Err(Error::HypothesisViolated(
            "nonzero target at a zero-count cell",
        ));
    }
    let reg = regularize(t, lambda, targets);
    let cols = t.cols();
    let mut full = NeumaierSum::new();
    let mut elided = NeumaierSum::new();
    for (k, &joint) in reg.cells.iter().enumerate() {
        let term = mi_term(joint, reg.rows[k / cols], reg.cols[k % cols]);
        full.add(term);
        if t.cells()[k] != 0 {
            elided.add(term);
        }
    }
    Ok((full.total() - elided.total()).abs() <= 1e-12)
}
