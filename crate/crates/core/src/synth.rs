//! Synthetic response data with known ground truth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::csn::{Csn, Skewness, GAMMA_MAX};
use crate::error::{Error, Result};
use crate::model::{predictor, Abilities, ResponseMatrix};

/// Seed for the item parameters of the presets. Fixed so that every preset
/// run sees the same 40 items whatever seed drives the respondents.
pub const PRESET_ITEM_SEED: u64 = 0x5eed_0040;

/// Skewness grid of the asymmetric preset, monotone from -0.99 to 0.99.
pub const ASYMMETRIC_GAMMAS: [f64; 40] = [
    -0.99, -0.99, -0.95, -0.93, -0.91, -0.90, -0.87, -0.83, -0.79, -0.74, //
    -0.69, -0.63, -0.52, -0.39, -0.30, -0.21, -0.15, -0.11, -0.06, -0.02, //
    0.02, 0.04, 0.09, 0.14, 0.19, 0.24, 0.34, 0.44, 0.60, 0.65, //
    0.71, 0.78, 0.81, 0.85, 0.88, 0.91, 0.92, 0.95, 0.98, 0.99,
];

pub const PRESETS: [&str; 2] = ["all-symmetric-40", "all-asymmetric-40"];

/// True item parameters plus the size and seed of the respondent sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub n_subjects: usize,
    pub true_a: Vec<f64>,
    pub true_b: Vec<f64>,
    pub true_c: Vec<f64>,
    pub true_gamma: Vec<f64>,
    pub seed: u64,
}

impl Scenario {
    pub fn new(
        n_subjects: usize,
        true_a: Vec<f64>,
        true_b: Vec<f64>,
        true_c: Vec<f64>,
        true_gamma: Vec<f64>,
        seed: u64,
    ) -> Result<Self> {
        let s = Scenario {
            n_subjects,
            true_a,
            true_b,
            true_c,
            true_gamma,
            seed,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn n_items(&self) -> usize {
        self.true_a.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.true_a.len();
        if n == 0 || self.n_subjects == 0 {
            return Err(Error::Domain(
                "scenario needs at least one item and subject".into(),
            ));
        }
        if [self.true_b.len(), self.true_c.len(), self.true_gamma.len()] != [n; 3] {
            return Err(Error::Domain("scenario vectors differ in length".into()));
        }
        if self.true_a.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
            return Err(Error::Domain(
                "true discriminations must be positive".into(),
            ));
        }
        if self.true_b.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("true difficulties must be finite".into()));
        }
        if self.true_c.iter().any(|c| !(0.0..1.0).contains(c)) {
            return Err(Error::Domain("true guessing must lie in [0, 1)".into()));
        }
        if self
            .true_gamma
            .iter()
            .any(|g| g.is_nan() || g.abs() >= GAMMA_MAX)
        {
            return Err(Error::Domain(format!(
                "true skewness must satisfy |γ| < {GAMMA_MAX}"
            )));
        }
        Ok(())
    }

    /// `0`, `-1` or `1` per item, by the sign of the true skewness.
    pub fn true_classes(&self) -> Vec<i8> {
        self.true_gamma
            .iter()
            .map(|&g| if g == 0.0 { 0 } else { g.signum() as i8 })
            .collect()
    }
}

/// One of the 40-item scenarios. Item parameters come from
/// `a ~ N(1, 0.7²)` truncated to `a > 0` and `b ~ N(0, 1)` under
/// [`PRESET_ITEM_SEED`]; guessing is zero.
pub fn preset(name: &str, n_subjects: usize, seed: u64) -> Result<Scenario> {
    let true_gamma = match name {
        "all-symmetric-40" => vec![0.0; 40],
        "all-asymmetric-40" => ASYMMETRIC_GAMMAS.to_vec(),
        _ => {
            return Err(Error::Config(format!(
                "unknown preset '{name}' (expected one of {})",
                PRESETS.join(", ")
            )))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(PRESET_ITEM_SEED);
    let mut true_a = Vec::with_capacity(40);
    let mut true_b = Vec::with_capacity(40);
    for _ in 0..40 {
        let a = loop {
            let a = 1.0 + 0.7 * rng.sample::<f64, _>(StandardNormal);
            if a > 0.0 {
                break a;
            }
        };
        true_a.push(a);
        true_b.push(rng.sample::<f64, _>(StandardNormal));
    }
    Scenario::new(n_subjects, true_a, true_b, vec![0.0; 40], true_gamma, seed)
}

/// Draws `θ_j ~ N(0, 1)` and the responses. Items are `item1..itemI`,
/// respondents `s1..sJ`.
pub fn generate(s: &Scenario) -> Result<(ResponseMatrix, Abilities)> {
    s.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let theta: Vec<f64> = (0..s.n_subjects)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    let mut y = Vec::with_capacity(s.n_items() * s.n_subjects);
    for i in 0..s.n_items() {
        let law = Csn::new(Skewness::new(s.true_gamma[i])?);
        let c = s.true_c[i];
        for &t in &theta {
            let p = c + (1.0 - c) * law.cdf(predictor(s.true_a[i], s.true_b[i], t));
            y.push((rng.random::<f64>() < p) as u8);
        }
    }
    let item_ids = (1..=s.n_items()).map(|i| format!("item{i}")).collect();
    let subject_ids = (1..=s.n_subjects).map(|j| format!("s{j}")).collect();
    Ok((
        ResponseMatrix::new(item_ids, subject_ids, y)?,
        Abilities::new(theta)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let s = preset("all-symmetric-40", 1000, 1).unwrap();
        assert!(s.true_gamma.iter().all(|&g| g == 0.0));
        let s = preset("all-asymmetric-40", 1000, 1).unwrap();
        assert_eq!(s.true_gamma[0], -0.99);
        assert_eq!(s.true_gamma[39], 0.99);
        assert!(s.true_gamma.windows(2).all(|w| w[0] <= w[1]));
        assert!(s.true_a.iter().all(|&a| a > 0.0));
        assert!(preset("nope", 10, 1).is_err());
    }

    #[test]
    fn item_parameters_ignore_respondent_seed() {
        let a = preset("all-symmetric-40", 10, 1).unwrap();
        let b = preset("all-symmetric-40", 10, 2).unwrap();
        assert_eq!(a.true_a, b.true_a);
        assert_eq!(a.true_b, b.true_b);
    }

    #[test]
    fn generated_dimensions() {
        let s = preset("all-asymmetric-40", 1000, 7).unwrap();
        let (y, theta) = generate(&s).unwrap();
        assert_eq!((y.n_items(), y.n_subjects()), (40, 1000));
        assert_eq!(theta.len(), 1000);
        assert_eq!(generate(&s).unwrap().0, y);
    }

    #[test]
    fn rejects_bad_scenarios() {
        assert!(Scenario::new(5, vec![1.0], vec![0.0], vec![0.0], vec![0.996], 0).is_err());
        assert!(Scenario::new(5, vec![-1.0], vec![0.0], vec![0.0], vec![0.0], 0).is_err());
        assert!(Scenario::new(5, vec![1.0], vec![0.0], vec![1.0], vec![0.0], 0).is_err());
        assert!(Scenario::new(5, vec![1.0, 1.0], vec![0.0], vec![0.0], vec![0.0], 0).is_err());
    }
}
