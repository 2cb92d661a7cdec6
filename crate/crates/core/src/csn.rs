//! Centred skew-normal distribution.
//!
//! The centred skew normal (CSN) is the skew-normal law rescaled to mean 0
//! and variance 1 and indexed by its Pearson skewness `γ`. Internally every
//! evaluation goes through the direct parametrisation `(ξ, ω, α)`:
//!
//! ```text
//! c = s·γ^{1/3}          (signed real cube root)
//! ξ = -c
//! ω = sqrt(1 + c²)
//! α = c / sqrt(r² + c²(r² - 1))
//! ```
//!
//! with `r = sqrt(2/π)` and `s = (2/(4-π))^{1/3}`, so that
//! `pdf(u) = (2/ω) φ(z) Φ(αz)` and `cdf(u) = Φ(z) - 2T(z, α)`, `z = (u-ξ)/ω`.

use std::sync::OnceLock;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::normal;
use crate::owen::owens_t;

/// Open upper bound on `|γ|`: the skewness of the half-normal limit,
/// truncated to five decimals.
pub const GAMMA_MAX: f64 = 0.99527;

/// `sqrt(2/π)`
pub const R: f64 = 0.797_884_560_802_865_4;

/// `(2/(4-π))^{1/3}`
pub const S: f64 = 1.325_700_815_100_011_2;

/// Pearson skewness of a CSN law, guaranteed to satisfy `|γ| < GAMMA_MAX`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Skewness(f64);

impl Skewness {
    pub const ZERO: Skewness = Skewness(0.0);

    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma.abs() < GAMMA_MAX {
            Ok(Skewness(gamma))
        } else {
            Err(Error::Domain(format!(
                "skewness {gamma} outside (-{GAMMA_MAX}, {GAMMA_MAX})"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Skewness {
    type Error = Error;

    fn try_from(gamma: f64) -> Result<Self> {
        Skewness::new(gamma)
    }
}

/// Direct skew-normal parameters equivalent to a centred law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectParams {
    pub xi: f64,
    pub omega: f64,
    pub alpha: f64,
    pub delta: f64,
}

/// `s·γ^{1/3}`, the standardised mean of the underlying direct law.
#[inline]
fn centred_mean(gamma: Skewness) -> f64 {
    S * gamma.0.cbrt()
}

/// Shape `α = g(γ)` of the direct parametrisation. Odd and strictly
/// increasing in `γ`.
pub fn shape_g(gamma: Skewness) -> f64 {
    let c = centred_mean(gamma);
    c / (R * R + c * c * (R * R - 1.0)).sqrt()
}

/// Maps a centred skewness to the direct parameters of the skew-normal law
/// with mean 0, variance 1 and that skewness.
pub fn to_direct(gamma: Skewness) -> DirectParams {
    let c = centred_mean(gamma);
    let alpha = shape_g(gamma);
    DirectParams {
        xi: -c,
        omega: (1.0 + c * c).sqrt(),
        alpha,
        delta: alpha / (1.0 + alpha * alpha).sqrt(),
    }
}

/// `α²x²` beyond which the short tail is integrated directly rather than
/// formed as `Φ(z) - 2T(z, α)`, a difference that cancels to noise there.
const TAIL_SWITCH: f64 = 16.0;

/// `P(Z <= -x)` for a standard skew normal `Z` with shape `α > 0`, `x > 0`:
/// the tail on the short side, which decays like `exp(-(1+α²)x²/2)`.
///
/// Equals `(1/π) ∫_α^∞ exp(-x²(1+t²)/2) / (1+t²) dt`. Putting
/// `t² = α² + 2y/x²` turns it into
/// `(2/(π x²)) e^{-x²(1+α²)/2} ∫₀^∞ e^{-y} / (2 sqrt(t²) (1+t²)) dy`,
/// a Laguerre integral whose integrand is smooth once `α²x²` is moderately
/// large.
fn short_tail(x: f64, alpha: f64) -> f64 {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    let rule = RULE.get_or_init(|| crate::quad::gauss_laguerre(24));
    let x2 = x * x;
    let a2 = alpha * alpha;
    let sum: f64 = rule
        .iter()
        .map(|&(y, w)| {
            let s = a2 + 2.0 * y / x2;
            w / (s.sqrt() * (1.0 + s))
        })
        .sum();
    (-0.5 * x2 * (1.0 + a2)).exp() * sum / (std::f64::consts::PI * x2)
}

/// A CSN law with its direct parameters precomputed, for repeated
/// evaluation at a fixed `γ`.
#[derive(Debug, Clone, Copy)]
pub struct Csn {
    gamma: Skewness,
    params: DirectParams,
}

impl Csn {
    pub fn new(gamma: Skewness) -> Self {
        Csn {
            gamma,
            params: to_direct(gamma),
        }
    }

    pub fn gamma(&self) -> Skewness {
        self.gamma
    }

    pub fn params(&self) -> DirectParams {
        self.params
    }

    #[inline]
    fn standardise(&self, u: f64) -> f64 {
        (u - self.params.xi) / self.params.omega
    }

    pub fn pdf(&self, u: f64) -> f64 {
        if self.gamma.0 == 0.0 {
            return normal::pdf(u);
        }
        let z = self.standardise(u);
        2.0 / self.params.omega * normal::pdf(z) * normal::cdf(self.params.alpha * z)
    }

    /// `P(X <= u)`.
    #[inline]
    pub fn cdf(&self, u: f64) -> f64 {
        if self.gamma.0 == 0.0 {
            return normal::cdf(u);
        }
        if u.is_infinite() {
            return if u > 0.0 { 1.0 } else { 0.0 };
        }
        let z = self.standardise(u);
        let alpha = self.params.alpha;
        if z < 0.0 && alpha > 0.0 && alpha * alpha * z * z > TAIL_SWITCH {
            return short_tail(-z, alpha);
        }
        (normal::cdf(z) - 2.0 * owens_t(z, alpha)).clamp(0.0, 1.0)
    }

    /// `P(X > u)`, evaluated without forming `1 - cdf(u)`.
    #[inline]
    pub fn sf(&self, u: f64) -> f64 {
        if self.gamma.0 == 0.0 {
            return normal::sf(u);
        }
        if u.is_infinite() {
            return if u > 0.0 { 0.0 } else { 1.0 };
        }
        let z = self.standardise(u);
        let alpha = self.params.alpha;
        if z > 0.0 && alpha < 0.0 && alpha * alpha * z * z > TAIL_SWITCH {
            // -X is skew normal with shape -α
            return short_tail(z, -alpha);
        }
        (normal::sf(z) + 2.0 * owens_t(z, alpha)).clamp(0.0, 1.0)
    }

    /// Draws one variate through the stochastic representation
    /// `ξ + ω(δ|U₀| + sqrt(1-δ²)U₁)`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u0: f64 = StandardNormal.sample(rng);
        let u1: f64 = StandardNormal.sample(rng);
        let d = self.params.delta;
        let x0 = d * u0.abs() + (1.0 - d * d).sqrt() * u1;
        self.params.xi + self.params.omega * x0
    }
}

impl Distribution<f64> for Csn {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.draw(rng)
    }
}

pub fn cdf(u: f64, gamma: Skewness) -> f64 {
    Csn::new(gamma).cdf(u)
}

pub fn pdf(u: f64, gamma: Skewness) -> f64 {
    Csn::new(gamma).pdf(u)
}

/// `n` i.i.d. CSN(γ) variates.
pub fn sample<R: Rng + ?Sized>(gamma: Skewness, n: usize, rng: &mut R) -> Vec<f64> {
    let law = Csn::new(gamma);
    (0..n).map(|_| law.draw(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sk(g: f64) -> Skewness {
        Skewness::new(g).unwrap()
    }

    #[test]
    fn constants_match_closed_forms() {
        assert!((R - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-16);
        assert!((S - (2.0 / (4.0 - std::f64::consts::PI)).cbrt()).abs() < 1e-15);
    }

    #[test]
    fn skewness_bounds_are_open() {
        assert!(Skewness::new(GAMMA_MAX).is_err());
        assert!(Skewness::new(-GAMMA_MAX).is_err());
        assert!(Skewness::new(f64::NAN).is_err());
        assert!(Skewness::new(0.99526).is_ok());
    }

    #[test]
    fn symmetric_case_is_standard_normal() {
        let p = to_direct(Skewness::ZERO);
        assert_eq!((p.xi, p.omega, p.alpha, p.delta), (0.0, 1.0, 0.0, 0.0));
        assert_eq!(cdf(0.0, Skewness::ZERO), 0.5);
        assert!((pdf(0.0, Skewness::ZERO) - 0.398_942_280_401_432_7).abs() < 1e-16);
    }

    #[test]
    fn shape_is_odd() {
        assert_eq!(shape_g(Skewness::ZERO), 0.0);
        assert_eq!(shape_g(sk(-0.5)), -shape_g(sk(0.5)));
    }

    #[test]
    fn delta_approaches_one_at_the_bound() {
        let p = to_direct(sk(0.995_27 - 1e-9));
        assert!(p.delta > 0.99 && p.delta < 1.0);
        assert!(p.alpha > 50.0);
    }

    #[test]
    fn cdf_limits() {
        for g in [-0.9, 0.0, 0.7] {
            assert_eq!(cdf(f64::INFINITY, sk(g)), 1.0);
            assert_eq!(cdf(f64::NEG_INFINITY, sk(g)), 0.0);
            assert!(cdf(40.0, sk(g)) > 1.0 - 1e-15);
            assert!(cdf(-40.0, sk(g)) < 1e-15);
        }
    }

    #[test]
    fn reflection() {
        assert!((pdf(0.7, sk(0.6)) - pdf(-0.7, sk(-0.6))).abs() < 1e-15);
        let law = Csn::new(sk(0.6));
        let mirror = Csn::new(sk(-0.6));
        for k in -20..=20 {
            let u = k as f64 * 0.3;
            assert!((law.cdf(u) + mirror.cdf(-u) - 1.0).abs() < 1e-14);
            assert!((law.sf(u) - mirror.cdf(-u)).abs() < 1e-15);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample(sk(0.4), 5, &mut ChaCha8Rng::seed_from_u64(9));
        let b = sample(sk(0.4), 5, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }
}
