//! Standard normal helpers shared by the link function and the priors.

use libm::erfc;

pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
pub const INV_2PI: f64 = 0.159_154_943_091_895_35;
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Standard normal density.
#[inline]
pub fn pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

#[inline]
pub fn ln_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// Standard normal cdf, accurate in relative terms in the lower tail.
#[inline]
pub fn cdf(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Upper tail `1 - cdf(x)`.
#[inline]
pub fn sf(x: f64) -> f64 {
    0.5 * erfc(x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Inverse of the standard normal cdf.
///
/// The library inverse is only good to about 1e-11, so one Halley step
/// against the accurate cdf polishes it to full precision.
pub fn quantile(p: f64) -> f64 {
    let x = statrs::function::erf::erfc_inv(2.0 * p) * -std::f64::consts::SQRT_2;
    if !x.is_finite() {
        return x;
    }
    // work in whichever tail keeps the residual free of cancellation
    let e = if x < 0.0 {
        cdf(x) - p
    } else {
        (1.0 - p) - sf(x)
    };
    let u = e / pdf(x);
    x - u / (1.0 + 0.5 * x * u)
}
