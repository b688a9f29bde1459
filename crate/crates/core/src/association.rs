//! Association measures built on the homogeneity statistic.
//!
//! All three measures are functions of Z² (Pearson's χ²). The regularized
//! versions plug in Z*(λ) from [`homogeneity_regularized`], which equals λ·Z,
//! so they keep the ordering of the classical measures.

use crate::tests::{homogeneity_regularized, pearson_chi_square};
use crate::{ContingencyTable, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AssociationReport {
    pub pearson_c: f64,
    pub phi: f64,
    pub cramers_v: f64,
    pub lambda: f64,
    /// Z*(λ) for 2×2 tables (signed); √χ² for larger tables.
    pub z_star: f64,
    pub n: u64,
}

fn check_n(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroTotal);
    }
    Ok(n as f64)
}

/// C_P = √(Z²/(Z² + n)), in [0, 1).
pub fn pearson_c(z: f64, n: u64) -> Result<f64> {
    let n = check_n(n)?;
    // Written as 1/√(1 + n/Z²) so huge |z| does not overflow Z².
    Ok(1.0 / libm::sqrt(1.0 + n / (z * z)))
}

/// φ = √(Z²/n) = |Z|/√n.
pub fn phi_coefficient(z: f64, n: u64) -> Result<f64> {
    Ok(z.abs() / libm::sqrt(check_n(n)?))
}

/// V = √(Z²/(n(q − 1))) with q = min(I, J).
pub fn cramers_v(z: f64, n: u64, rows: usize, cols: usize) -> Result<f64> {
    if rows < 2 || cols < 2 {
        return Err(Error::InvalidDims { rows, cols });
    }
    let q = rows.min(cols) as f64;
    Ok(z.abs() / libm::sqrt(check_n(n)? * (q - 1.0)))
}

/// C*_P(λ), φ*(λ) and V*(λ) for a 2×2 table.
pub fn regularized_association(t: &ContingencyTable, lambda: f64) -> Result<AssociationReport> {
    let z_star = homogeneity_regularized(t, lambda)?.statistic;
    let n = t.total();
    Ok(AssociationReport {
        pearson_c: pearson_c(z_star, n)?,
        phi: phi_coefficient(z_star, n)?,
        cramers_v: cramers_v(z_star, n, 2, 2)?,
        lambda,
        z_star,
        n,
    })
}

/// Classical measures from a caller-supplied χ² for an I×J table.
pub fn association_from_chi_square(
    chi_square: f64,
    n: u64,
    rows: usize,
    cols: usize,
) -> Result<AssociationReport> {
    if !(chi_square.is_finite() && chi_square >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "chi_square",
            value: chi_square,
        });
    }
    let z = libm::sqrt(chi_square);
    Ok(AssociationReport {
        pearson_c: pearson_c(z, n)?,
        phi: phi_coefficient(z, n)?,
        cramers_v: cramers_v(z, n, rows, cols)?,
        lambda: 1.0,
        z_star: z,
        n,
    })
}

/// Classical measures for any I×J table via Pearson's χ².
pub fn table_association(t: &ContingencyTable) -> Result<AssociationReport> {
    let (rows, cols) = t.shape();
    association_from_chi_square(pearson_chi_square(t)?, t.total(), rows, cols)
}
