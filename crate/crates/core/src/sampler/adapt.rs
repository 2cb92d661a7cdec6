use super::steps::BlockTally;
use super::TuningConfig;

/// Current proposal scales. These start from the [`TuningConfig`] values
/// and are rescaled during burn-in.
#[derive(Debug, Clone, PartialEq)]
pub struct ProposalScales {
    pub theta: f64,
    /// Per-item multiplier on the Cholesky factor of `sigma_ab`.
    pub ab: Vec<f64>,
    pub gamma_neg: Vec<f64>,
    pub gamma_pos: Vec<f64>,
}

impl ProposalScales {
    pub fn new(tuning: &TuningConfig, n_items: usize) -> Self {
        ProposalScales {
            theta: tuning.sigma_theta,
            ab: vec![1.0; n_items],
            gamma_neg: vec![tuning.tau_gamma_neg; n_items],
            gamma_pos: vec![tuning.tau_gamma_pos; n_items],
        }
    }
}

/// Batch Robbins–Monro scaling: after every window of iterations each
/// log-scale moves by `(rate - target) / sqrt(batch)`.
#[derive(Debug, Clone)]
pub(crate) struct Adapter {
    window: usize,
    target: f64,
    target_ab: f64,
    batch: usize,
    elapsed: usize,
    theta: BlockTally,
    ab: Vec<BlockTally>,
    gamma_neg: Vec<BlockTally>,
    gamma_pos: Vec<BlockTally>,
}

impl Adapter {
    pub(crate) fn new(tuning: &TuningConfig, n_items: usize) -> Self {
        Adapter {
            window: tuning.adapt_window,
            target: tuning.adapt_target,
            target_ab: tuning.adapt_target_ab,
            batch: 0,
            elapsed: 0,
            theta: BlockTally::default(),
            ab: vec![BlockTally::default(); n_items],
            gamma_neg: vec![BlockTally::default(); n_items],
            gamma_pos: vec![BlockTally::default(); n_items],
        }
    }

    pub(crate) fn record_theta(&mut self, t: BlockTally) {
        self.theta += t;
    }

    pub(crate) fn record_ab(&mut self, i: usize, accepted: bool) {
        self.ab[i].record(accepted);
    }

    pub(crate) fn record_gamma_neg(&mut self, i: usize, accepted: bool) {
        self.gamma_neg[i].record(accepted);
    }

    pub(crate) fn record_gamma_pos(&mut self, i: usize, accepted: bool) {
        self.gamma_pos[i].record(accepted);
    }

    /// Closes one iteration; rescales at the end of each window.
    pub(crate) fn end_iteration(&mut self, scales: &mut ProposalScales) {
        self.elapsed += 1;
        if self.elapsed < self.window {
            return;
        }
        self.elapsed = 0;
        self.batch += 1;
        let gain = 1.0 / (self.batch as f64).sqrt();

        scales.theta = rescale(scales.theta, &mut self.theta, self.target, gain, 1e-3, 10.0);
        for (s, t) in scales.ab.iter_mut().zip(&mut self.ab) {
            *s = rescale(*s, t, self.target_ab, gain, 1e-3, 1e3);
        }
        for (s, t) in scales.gamma_neg.iter_mut().zip(&mut self.gamma_neg) {
            *s = rescale(*s, t, self.target, gain, 1e-4, 1.0);
        }
        for (s, t) in scales.gamma_pos.iter_mut().zip(&mut self.gamma_pos) {
            *s = rescale(*s, t, self.target, gain, 1e-4, 1.0);
        }
    }
}

fn rescale(scale: f64, tally: &mut BlockTally, target: f64, gain: f64, lo: f64, hi: f64) -> f64 {
    let Some(rate) = tally.rate() else {
        return scale;
    };
    *tally = BlockTally::default();
    (scale * (gain * (rate - target)).exp()).clamp(lo, hi)
}
