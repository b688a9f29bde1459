//! Regularized (shrinkage) estimation and inference for categorical data.
//!
//! The crate is `no_std` and only needs an allocator. It covers:
//!
//! - [`table`]: validated I×J contingency tables and their plug-in probabilities.
//! - [`estimators`]: MLE and beta-prior Bayesian estimators of a binomial
//!   proportion, written as convex shrinkage `λ·x/n + (1−λ)·target`.
//! - [`tests`]: sign, homogeneity and McNemar tests with λ-regularized
//!   estimates and their λ-scaled standard normal nulls.
//! - [`association`]: Pearson's contingency coefficient, φ and Cramér's V,
//!   classical and regularized.
//! - [`mutual_info`]: plug-in and regularized mutual information with
//!   shrinkage targets and zero-count elision.
//! - [`bootstrap`]: parametric bootstrap under the shrunken null, with one
//!   counter-based RNG stream per replicate.
//!
//! IO, file formats and the command-line front end live in the `catshrink`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod association;
pub mod bootstrap;
mod error;
pub mod estimators;
pub mod mutual_info;
pub mod normal;
pub mod sum;
pub mod table;

pub use error::{Axis, Error, Result};
pub use table::{ContingencyTable, ProbTable};
