//! Acceptance checks for `catshrink` live in `tests/acceptance.rs`; run them with `cargo test -p catshrink-validation`.
