use crate::error::{Error, Result};
use crate::model::{Abilities, Component};
use crate::synth::Scenario;

use super::{AbilitySummary, ItemSummary};

/// `(true, estimated)` pairs for one parameter class with their RMSE and
/// Pearson correlation.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamRecovery {
    pub pairs: Vec<(f64, f64)>,
    pub rmse: f64,
    /// `NaN` when either side is constant.
    pub pearson: f64,
}

impl ParamRecovery {
    fn new(pairs: Vec<(f64, f64)>) -> Self {
        let (t, e): (Vec<f64>, Vec<f64>) = pairs.iter().cloned().unzip();
        ParamRecovery {
            rmse: rmse(&t, &e),
            pearson: pearson(&t, &e),
            pairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryReport {
    pub a: ParamRecovery,
    pub b: ParamRecovery,
    pub theta: ParamRecovery,
    /// Counts by true class (rows) and estimated class (columns), both in
    /// the order symmetric, negative, positive. The true class is the sign
    /// of the generating `γ`.
    pub confusion: [[usize; 3]; 3],
}

impl RecoveryReport {
    /// Share of items whose classification matches the truth.
    pub fn accuracy(&self) -> f64 {
        let total: usize = self.confusion.iter().flatten().sum();
        let hits: usize = (0..3).map(|k| self.confusion[k][k]).sum();
        hits as f64 / total as f64
    }
}

pub fn rmse(truth: &[f64], est: &[f64]) -> f64 {
    let n = truth.len() as f64;
    (truth
        .iter()
        .zip(est)
        .map(|(t, e)| (t - e).powi(2))
        .sum::<f64>()
        / n)
        .sqrt()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

fn true_component(gamma: f64) -> Component {
    if gamma < 0.0 {
        Component::Negative
    } else if gamma > 0.0 {
        Component::Positive
    } else {
        Component::Symmetric
    }
}

/// Compares posterior summaries with the generating values.
pub fn recovery_report(
    items: &[ItemSummary],
    abilities: &[AbilitySummary],
    truth: &Scenario,
    true_theta: &Abilities,
) -> Result<RecoveryReport> {
    if items.len() != truth.n_items() || abilities.len() != true_theta.len() {
        return Err(Error::Data(format!(
            "summary covers {} items and {} respondents, truth has {} and {}",
            items.len(),
            abilities.len(),
            truth.n_items(),
            true_theta.len()
        )));
    }
    let mut confusion = [[0; 3]; 3];
    for (it, &g) in items.iter().zip(&truth.true_gamma) {
        confusion[true_component(g).index()][it.classification.index()] += 1;
    }
    Ok(RecoveryReport {
        a: ParamRecovery::new(
            truth
                .true_a
                .iter()
                .cloned()
                .zip(items.iter().map(|i| i.post_mean_a))
                .collect(),
        ),
        b: ParamRecovery::new(
            truth
                .true_b
                .iter()
                .cloned()
                .zip(items.iter().map(|i| i.post_mean_b))
                .collect(),
        ),
        theta: ParamRecovery::new(
            true_theta
                .theta
                .iter()
                .cloned()
                .zip(abilities.iter().map(|s| s.mean))
                .collect(),
        ),
        confusion,
    })
}
