//! Metropolis-within-Gibbs sampler for the mixture skew-probit models.
//!
//! One sweep updates the blocks in the order
//! `θ → (a, b) → (w, Z) → (γ₋, γ₊) → D → c`. The four likelihood-bearing
//! blocks are random-walk or independence Metropolis–Hastings steps; `D`
//! and `c` are exact Gibbs draws. Proposal scales are tuned during burn-in
//! only and frozen afterwards.

mod adapt;
mod state;
mod steps;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{ItemState, PriorConfig, ResponseMatrix};

pub use adapt::ProposalScales;
pub use state::ChainState;
pub use steps::{sample_dirichlet, BlockTally, Sampler};

/// Which model is fitted.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    /// Symmetric two-parameter normal ogive: `Z₀ = 1` and `c = 0` fixed.
    TwoPno,
    /// Two-parameter centred skew-probit, `c = 0`.
    TwoPcsp,
    /// Three-parameter centred skew-probit with estimated guessing.
    ThreePcsp,
    /// Three-parameter model with guessing fixed at the given values.
    ThreePcspFixedC(Vec<f64>),
}

impl ModelKind {
    pub fn has_guessing(&self) -> bool {
        matches!(self, ModelKind::ThreePcsp | ModelKind::ThreePcspFixedC(_))
    }

    pub fn estimates_guessing(&self) -> bool {
        matches!(self, ModelKind::ThreePcsp)
    }

    pub fn has_skew_mixture(&self) -> bool {
        !matches!(self, ModelKind::TwoPno)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::TwoPno => "2pno",
            ModelKind::TwoPcsp => "2pcsp",
            ModelKind::ThreePcsp => "3pcsp",
            ModelKind::ThreePcspFixedC(_) => "3pcsp-fixed-c",
        }
    }
}

/// Proposal tuning for the Metropolis–Hastings blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct TuningConfig {
    /// Random-walk sd for `γ₋`.
    pub tau_gamma_neg: f64,
    /// Random-walk sd for `γ₊`.
    pub tau_gamma_pos: f64,
    /// Proposal covariance of `(a, b)` as `[var_a, cov_ab, var_b]`.
    pub sigma_ab: [f64; 3],
    /// Random-walk sd for each `θ_j`.
    pub sigma_theta: f64,
    /// Target acceptance of the scalar blocks (`θ`, `γ₋`, `γ₊`).
    pub adapt_target: f64,
    /// Target acceptance of the bivariate `(a, b)` block.
    pub adapt_target_ab: f64,
    /// Iterations per adaptation batch.
    pub adapt_window: usize,
}

impl Default for TuningConfig {
    fn default() -> Self {
        TuningConfig {
            tau_gamma_neg: 0.05,
            tau_gamma_pos: 0.05,
            sigma_ab: [0.05 * 0.05, 0.0, 0.05 * 0.05],
            sigma_theta: 0.5,
            adapt_target: 0.44,
            adapt_target_ab: 0.234,
            adapt_window: 50,
        }
    }
}

impl TuningConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !(positive(self.tau_gamma_neg) && positive(self.tau_gamma_pos)) {
            return Err(Error::Config(
                "skewness proposal sds must be positive".into(),
            ));
        }
        if !positive(self.sigma_theta) {
            return Err(Error::Config("sigma_theta must be positive".into()));
        }
        let [va, cov, vb] = self.sigma_ab;
        if !(positive(va) && positive(vb) && va * vb - cov * cov > 0.0) {
            return Err(Error::Config("sigma_ab must be positive definite".into()));
        }
        for t in [self.adapt_target, self.adapt_target_ab] {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::Config(
                    "adaptation targets must lie in (0, 1)".into(),
                ));
            }
        }
        if self.adapt_window == 0 {
            return Err(Error::Config("adapt_window must be positive".into()));
        }
        Ok(())
    }

    /// Lower Cholesky factor `[l11, l21, l22]` of `sigma_ab`.
    pub(crate) fn ab_cholesky(&self) -> [f64; 3] {
        let [va, cov, vb] = self.sigma_ab;
        let l11 = va.sqrt();
        let l21 = cov / l11;
        [l11, l21, (vb - l21 * l21).sqrt()]
    }
}

/// Length and seeding of one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainConfig {
    pub iterations: usize,
    pub burnin: usize,
    pub thin: usize,
    pub seed: u64,
    /// Selects an independent random stream for the same seed.
    pub chain_id: u64,
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations <= self.burnin {
            return Err(Error::Config("iterations must exceed burnin".into()));
        }
        if self.thin == 0 {
            return Err(Error::Config("thin must be at least 1".into()));
        }
        Ok(())
    }

    pub fn stored_draws(&self) -> usize {
        (self.iterations - self.burnin) / self.thin
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.chain_id);
        rng
    }
}

/// Accepted / proposed counts per Metropolis–Hastings block.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Acceptance {
    pub theta: BlockTally,
    pub ab: BlockTally,
    pub zw: BlockTally,
    pub gamma_neg: BlockTally,
    pub gamma_pos: BlockTally,
}

impl Acceptance {
    pub fn blocks(&self) -> [(&'static str, BlockTally); 5] {
        [
            ("theta", self.theta),
            ("ab", self.ab),
            ("zw", self.zw),
            ("gamma_neg", self.gamma_neg),
            ("gamma_pos", self.gamma_pos),
        ]
    }

    pub fn block_mut(&mut self, name: &str) -> Option<&mut BlockTally> {
        Some(match name {
            "theta" => &mut self.theta,
            "ab" => &mut self.ab,
            "zw" => &mut self.zw,
            "gamma_neg" => &mut self.gamma_neg,
            "gamma_pos" => &mut self.gamma_pos,
            _ => return None,
        })
    }
}

/// One stored posterior draw.
#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    /// Zero-based sweep index after which the draw was taken.
    pub iteration: usize,
    pub items: Vec<ItemState>,
    pub theta: Vec<f64>,
    /// `Σ_j D_ij` per item.
    pub guess_count: Vec<u32>,
}

/// Post-burn-in, thinned output of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawStore {
    pub chain_id: u64,
    pub seed: u64,
    pub item_ids: Vec<String>,
    pub n_subjects: usize,
    pub draws: Vec<Draw>,
    /// Counts over post-burn-in sweeps.
    pub acceptance: Acceptance,
    /// Key/value echo of the run configuration.
    pub config: Vec<(String, String)>,
}

impl DrawStore {
    pub fn n_items(&self) -> usize {
        self.item_ids.len()
    }
}

/// Runs one chain and returns its thinned post-burn-in draws.
pub fn run_chain(
    y: &ResponseMatrix,
    model: &ModelKind,
    priors: &PriorConfig,
    tuning: &TuningConfig,
    chain: &ChainConfig,
) -> Result<DrawStore> {
    chain.validate()?;
    let mut sampler = Sampler::new(y, model.clone(), priors.clone(), tuning.clone())?;
    let mut rng = chain.rng();
    let mut state = sampler.init_state(&mut rng)?;

    let mut draws = Vec::with_capacity(chain.stored_draws());
    let mut acceptance = Acceptance::default();
    for t in 0..chain.iterations {
        let adapting = t < chain.burnin;
        let sweep = sampler.sweep(&mut state, &mut rng, adapting);
        if !adapting {
            acceptance.theta += sweep.theta;
            acceptance.ab += sweep.ab;
            acceptance.zw += sweep.zw;
            acceptance.gamma_neg += sweep.gamma_neg;
            acceptance.gamma_pos += sweep.gamma_pos;
            if (t + 1 - chain.burnin).is_multiple_of(chain.thin) {
                draws.push(state.snapshot());
            }
        }
    }

    Ok(DrawStore {
        chain_id: chain.chain_id,
        seed: chain.seed,
        item_ids: y.item_ids().to_vec(),
        n_subjects: y.n_subjects(),
        draws,
        acceptance,
        config: echo_config(model, priors, tuning, chain),
    })
}

/// Runs `n_chains` independent chains on separate random streams,
/// concurrently.
pub fn run_chains(
    y: &ResponseMatrix,
    model: &ModelKind,
    priors: &PriorConfig,
    tuning: &TuningConfig,
    chain: &ChainConfig,
    n_chains: usize,
) -> Result<Vec<DrawStore>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n_chains as u64)
            .map(|k| {
                let cfg = ChainConfig {
                    chain_id: chain.chain_id + k,
                    ..*chain
                };
                scope.spawn(move || run_chain(y, model, priors, tuning, &cfg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("chain thread panicked"))
            .collect()
    })
}

fn echo_config(
    model: &ModelKind,
    priors: &PriorConfig,
    tuning: &TuningConfig,
    chain: &ChainConfig,
) -> Vec<(String, String)> {
    let list = |xs: &[f64]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut out = vec![
        ("model".to_string(), model.name().to_string()),
        ("priors.dirichlet".into(), list(&priors.dirichlet)),
        (
            "priors.beta_skew".into(),
            list(&[priors.beta_skew.0, priors.beta_skew.1]),
        ),
        ("priors.mu_a".into(), priors.mu_a.to_string()),
        ("priors.sigma_a".into(), priors.sigma_a.to_string()),
        ("priors.mu_b".into(), priors.mu_b.to_string()),
        ("priors.sigma_b".into(), priors.sigma_b.to_string()),
        (
            "priors.beta_guess".into(),
            list(&[priors.beta_guess.0, priors.beta_guess.1]),
        ),
        (
            "tuning.tau_gamma_neg".into(),
            tuning.tau_gamma_neg.to_string(),
        ),
        (
            "tuning.tau_gamma_pos".into(),
            tuning.tau_gamma_pos.to_string(),
        ),
        ("tuning.sigma_ab".into(), list(&tuning.sigma_ab)),
        ("tuning.sigma_theta".into(), tuning.sigma_theta.to_string()),
        (
            "tuning.adapt_target".into(),
            tuning.adapt_target.to_string(),
        ),
        (
            "tuning.adapt_target_ab".into(),
            tuning.adapt_target_ab.to_string(),
        ),
        (
            "tuning.adapt_window".into(),
            tuning.adapt_window.to_string(),
        ),
        ("mcmc.iterations".into(), chain.iterations.to_string()),
        ("mcmc.burnin".into(), chain.burnin.to_string()),
        ("mcmc.thin".into(), chain.thin.to_string()),
        ("mcmc.seed".into(), chain.seed.to_string()),
    ];
    if let ModelKind::ThreePcspFixedC(c) = model {
        out.push(("fixed_c".into(), list(c)));
    }
    out
}
