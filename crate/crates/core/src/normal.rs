//! Standard normal distribution function.

use core::f64::consts::FRAC_1_SQRT_2;

/// Φ(z), the standard normal CDF.
///
/// Computed as `erfc(−z/√2)/2`, so the lower tail keeps full relative
/// precision down to underflow.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Upper tail 1 − Φ(z), without cancellation.
pub fn std_normal_sf(z: f64) -> f64 {
    std_normal_cdf(-z)
}

/// Two-sided p-value 2·(1 − Φ(|z|)), clamped to 1.
pub fn two_sided_p(z: f64) -> f64 {
    (2.0 * std_normal_sf(z.abs())).min(1.0)
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * libm::exp(-0.5 * z * z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_is_one_half() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
    }

    #[test]
    fn upper_quantile() {
        assert!((std_normal_cdf(1.959964) - 0.975).abs() < 1e-6);
    }

    /// Oracle: asymptotic tail series φ(z)/|z| · Σ (−1)^k (2k−1)!! / z^{2k}.
    #[test]
    fn far_lower_tail_matches_asymptotic_series() {
        let z: f64 = 8.0;
        let z2 = z * z;
        let mut term = 1.0;
        let mut series = 1.0;
        // Sum until the terms stop shrinking (optimal truncation, k < z²/2).
        for k in 1..32 {
            term *= -((2 * k - 1) as f64) / z2;
            series += term;
        }
        let oracle = std_normal_pdf(z) / z * series;
        let got = std_normal_cdf(-8.0);
        assert!(got > 0.0 && got < 1e-15);
        assert!(((got - oracle) / oracle).abs() < 1e-12, "{got} vs {oracle}");
        assert!((got - 6.22e-16).abs() < 0.01e-16);
    }

    #[test]
    fn symmetry_and_monotonicity() {
        let mut prev = 0.0;
        for k in -800..=800 {
            let z = k as f64 / 100.0;
            let p = std_normal_cdf(z);
            assert!(p >= prev);
            prev = p;
            assert!((p + std_normal_cdf(-z) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn two_sided_p_is_symmetric() {
        for z in [0.0, 0.3, 1.0, 1.959964, 4.0] {
            assert_eq!(two_sided_p(z), two_sided_p(-z));
        }
        assert_eq!(two_sided_p(0.0), 1.0);
        assert!((two_sided_p(1.959964) - 0.05).abs() < 1e-6);
    }
}
