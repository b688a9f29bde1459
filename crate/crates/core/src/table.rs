//! Contingency tables and their maximum-likelihood cell probabilities.

use alloc::vec::Vec;

use crate::{Error, Result};

/// An I×J table of nonnegative counts with a positive total.
///
/// Cells are stored row-major. Marginals are always recomputed from the
/// cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    cells: Vec<u64>,
    total: u64,
}

/// The four cells of a 2×2 table.
///
/// Row 1 / column 1 are "success" / "group A" in the homogeneity layout and
/// "before A" / "after A" in the paired (McNemar) layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoByTwo {
    pub n11: u64,
    pub n12: u64,
    pub n21: u64,
    pub n22: u64,
}

impl TwoByTwo {
    pub fn total(&self) -> u64 {
        self.n11 + self.n12 + self.n21 + self.n22
    }

    pub fn row_totals(&self) -> (u64, u64) {
        (self.n11 + self.n12, self.n21 + self.n22)
    }

    pub fn col_totals(&self) -> (u64, u64) {
        (self.n11 + self.n21, self.n12 + self.n22)
    }
}

impl ContingencyTable {
    /// Builds a table from signed rows, rejecting negative or ragged input.
    pub fn new<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::EmptyTable);
        }
        let mut cells = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: n_cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 0 {
                    return Err(Error::NegativeCell {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                cells.push(v as u64);
            }
        }
        Self::from_cells(n_rows, n_cols, cells)
    }

    /// Builds a table from row-major unsigned cells.
    pub fn from_cells(rows: usize, cols: usize, cells: Vec<u64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (cells.len() / cols.max(1), cols),
            });
        }
        let total = cells
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::CountOverflow)?;
        if total == 0 {
            return Err(Error::ZeroTotal);
        }
        Ok(Self {
            rows,
            cols,
            cells,
            total,
        })
    }

    pub fn from_two_by_two(t: TwoByTwo) -> Result<Self> {
        Self::from_cells(2, 2, alloc::vec![t.n11, t.n12, t.n21, t.n22])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Total count n.
    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        assert!(
            row < self.rows && col < self.cols,
            "cell index out of range"
        );
        self.cells[row * self.cols + col]
    }

    /// Row-major view of the cells.
    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_total(&self, row: usize) -> u64 {
        self.row(row).iter().sum()
    }

    pub fn col_total(&self, col: usize) -> u64 {
        (0..self.rows).map(|i| self.get(i, col)).sum()
    }

    pub fn row_totals(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.row_total(i)).collect()
    }

    pub fn col_totals(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.col_total(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.cells.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn is_two_by_two(&self) -> bool {
        self.rows == 2 && self.cols == 2
    }

    /// The cells of a 2×2 table, or [`Error::NotTwoByTwo`].
    pub fn two_by_two(&self) -> Result<TwoByTwo> {
        if !self.is_two_by_two() {
            return Err(Error::NotTwoByTwo {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(TwoByTwo {
            n11: self.cells[0],
            n12: self.cells[1],
            n21: self.cells[2],
            n22: self.cells[3],
        })
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            cells,
            total: self.total,
        }
    }

    /// Plug-in probabilities `n_ij / n`.
    pub fn mle_probs(&self) -> ProbTable {
        let n = self.total as f64;
        ProbTable {
            rows: self.rows,
            cols: self.cols,
            probs: self.cells.iter().map(|&c| c as f64 / n).collect(),
        }
    }

    /// Removes all-zero rows and columns; the remaining cells keep their
    /// relative order.
    pub fn drop_empty_margins(&self) -> Result<Self> {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&i| self.row_total(i) > 0).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&j| self.col_total(j) > 0).collect();
        if keep_rows.is_empty() || keep_cols.is_empty() {
            return Err(Error::ZeroTotal);
        }
        let mut cells = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &i in &keep_rows {
            for &j in &keep_cols {
                cells.push(self.get(i, j));
            }
        }
        Self::from_cells(keep_rows.len(), keep_cols.len(), cells)
    }
}

/// An I×J table of cell probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl ProbTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(
            row < self.rows && col < self.cols,
            "cell index out of range"
        );
        self.probs[row * self.cols + col]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn row_margin(&self, row: usize) -> f64 {
        crate::sum::neumaier(
            self.probs[row * self.cols..(row + 1) * self.cols]
                .iter()
                .copied(),
        )
    }

    pub fn col_margin(&self, col: usize) -> f64 {
        crate::sum::neumaier((0..self.rows).map(|i| self.get(i, col)))
    }

    pub fn total(&self) -> f64 {
        crate::sum::neumaier(self.probs.iter().copied())
    }
}
