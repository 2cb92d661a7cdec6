//! Reductions of stored draws: per-item posterior summaries, symmetry
//! classification, recovery against known truth, and convergence
//! diagnostics.
//!
//! Every reduction sorts its values before summing, so results do not
//! depend on the order in which chains are supplied.

mod diagnostics;
mod recovery;

use crate::error::{Error, Result};
use crate::model::Component;
use crate::sampler::DrawStore;

pub use diagnostics::{diagnostics, ess, split_rhat, ChainDiagnostics, ParamDiagnostic};
pub use recovery::{pearson, recovery_report, rmse, ParamRecovery, RecoveryReport};

/// Below this posterior |γ| the asymmetry is reported as insignificant.
pub const INSIGNIFICANT_SKEW: f64 = 0.4;
/// Above this posterior |γ| the asymmetry is reported as clear.
pub const CLEAR_SKEW: f64 = 0.9;
/// Posterior mean discrimination below which an item is flagged as barely
/// related to the trait.
pub const WEAK_DISCRIMINATION: f64 = 0.25;

/// Reading aid for the size of an item's estimated skewness. Does not
/// affect the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewStrength {
    Symmetric,
    Insignificant,
    Moderate,
    Clear,
}

impl SkewStrength {
    pub fn of(gamma_est: f64) -> Self {
        let g = gamma_est.abs();
        if g == 0.0 {
            SkewStrength::Symmetric
        } else if g < INSIGNIFICANT_SKEW {
            SkewStrength::Insignificant
        } else if g > CLEAR_SKEW {
            SkewStrength::Clear
        } else {
            SkewStrength::Moderate
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SkewStrength::Symmetric => "symmetric",
            SkewStrength::Insignificant => "insignificant",
            SkewStrength::Moderate => "moderate",
            SkewStrength::Clear => "clear",
        }
    }
}

/// Equal-tailed credible interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItemSummary {
    pub item_id: String,
    pub post_mean_a: f64,
    pub post_mean_b: f64,
    pub post_mean_c: f64,
    pub ci_a: Interval,
    pub ci_b: Interval,
    pub ci_c: Interval,
    /// Posterior probabilities of the symmetric, negative and positive
    /// components.
    pub z_probs: [f64; 3],
    /// Modal component; ties go to the earlier component.
    pub classification: Component,
    /// Posterior mean of `γ` over the draws in the modal component, or 0
    /// when that component is the symmetric one.
    pub gamma_est: f64,
    /// Interval for `γ` over the same draws; `None` when symmetric.
    pub ci_gamma: Option<Interval>,
    pub strength: SkewStrength,
    pub weak_discrimination: bool,
}

/// Posterior mean and sd of one respondent's trait.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbilitySummary {
    pub mean: f64,
    pub sd: f64,
}

/// Order-independent mean: sorts a copy, then sums.
pub(crate) fn sorted_mean(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    // fixed parameters come back exactly, not with summation round-off
    if values.first() == values.last() {
        return values[0];
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// Linear-interpolation quantile of sorted data.
pub(crate) fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn interval(sorted: &[f64], level: f64) -> Interval {
    let tail = 0.5 * (1.0 - level);
    Interval {
        lo: quantile_sorted(sorted, tail),
        hi: quantile_sorted(sorted, 1.0 - tail),
    }
}

/// Checks that the stores describe the same items and respondents and hold
/// enough draws.
pub(crate) fn check_stores(stores: &[DrawStore], min_draws: usize) -> Result<()> {
    let first = stores
        .first()
        .ok_or_else(|| Error::Data("no chains to summarise".into()))?;
    for s in stores {
        if s.item_ids != first.item_ids || s.n_subjects != first.n_subjects {
            return Err(Error::Data(format!(
                "chain {} does not match chain {} in items or respondents",
                s.chain_id, first.chain_id
            )));
        }
        if s.draws.len() < min_draws {
            return Err(Error::Data(format!(
                "chain {} holds {} draws, need at least {min_draws}",
                s.chain_id,
                s.draws.len()
            )));
        }
    }
    Ok(())
}

/// Per-item posterior summaries, pooled over all chains.
pub fn summarize_items(stores: &[DrawStore], level: f64) -> Result<Vec<ItemSummary>> {
    check_stores(stores, 2)?;
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Config("credible level must lie in (0, 1)".into()));
    }
    let n_draws: usize = stores.iter().map(|s| s.draws.len()).sum();
    let draws = || stores.iter().flat_map(|s| &s.draws);

    let mut out = Vec::with_capacity(stores[0].n_items());
    for (i, id) in stores[0].item_ids.iter().enumerate() {
        let mut a: Vec<f64> = draws().map(|d| d.items[i].a).collect();
        let mut b: Vec<f64> = draws().map(|d| d.items[i].b).collect();
        let mut c: Vec<f64> = draws().map(|d| d.items[i].c).collect();
        let mut counts = [0usize; 3];
        for d in draws() {
            counts[d.items[i].z.index()] += 1;
        }
        let z_probs = counts.map(|k| k as f64 / n_draws as f64);
        // first maximum wins
        let modal = (0..3).fold(0, |best, k| if counts[k] > counts[best] { k } else { best });
        let classification = Component::from_index(modal).expect("three components");

        let (gamma_est, ci_gamma) = if classification == Component::Symmetric {
            (0.0, None)
        } else {
            let mut g: Vec<f64> = draws()
                .filter(|d| d.items[i].z == classification)
                .map(|d| d.items[i].gamma())
                .collect();
            let m = sorted_mean(&mut g);
            (m, Some(interval(&g, level)))
        };

        let post_mean_a = sorted_mean(&mut a);
        out.push(ItemSummary {
            item_id: id.clone(),
            post_mean_a,
            post_mean_b: sorted_mean(&mut b),
            post_mean_c: sorted_mean(&mut c),
            ci_a: interval(&a, level),
            ci_b: interval(&b, level),
            ci_c: interval(&c, level),
            z_probs,
            classification,
            gamma_est,
            ci_gamma,
            strength: SkewStrength::of(gamma_est),
            weak_discrimination: post_mean_a < WEAK_DISCRIMINATION,
        });
    }
    Ok(out)
}

/// Posterior mean and sd of every `θ_j`, pooled over all chains.
pub fn summarize_abilities(stores: &[DrawStore]) -> Result<Vec<AbilitySummary>> {
    check_stores(stores, 2)?;
    let n = stores[0].n_subjects;
    let mut out = Vec::with_capacity(n);
    let mut buf = Vec::new();
    for j in 0..n {
        buf.clear();
        buf.extend(
            stores
                .iter()
                .flat_map(|s| s.draws.iter().map(|d| d.theta[j])),
        );
        let mean = sorted_mean(&mut buf);
        let var = buf.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (buf.len() - 1) as f64;
        out.push(AbilitySummary {
            mean,
            sd: var.sqrt(),
        });
    }
    Ok(out)
}
