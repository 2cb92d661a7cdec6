use std::ops::AddAssign;

use rand::Rng;
use rand_distr::{Beta, Distribution, Gamma, StandardNormal};

use crate::csn::{Csn, Skewness, GAMMA_MAX};
use crate::error::{Error, Result};
use crate::model::{predictor, AuxIndicators, Component, ItemState, PriorConfig, ResponseMatrix};
use crate::normal;

use super::adapt::{Adapter, ProposalScales};
use super::state::{response_term, ChainState};
use super::{Acceptance, ModelKind, TuningConfig};

/// Accepted and proposed move counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BlockTally {
    pub accepted: u64,
    pub proposed: u64,
}

impl BlockTally {
    #[inline]
    pub fn record(&mut self, accepted: bool) {
        self.proposed += 1;
        self.accepted += accepted as u64;
    }

    pub fn rate(&self) -> Option<f64> {
        (self.proposed > 0).then(|| self.accepted as f64 / self.proposed as f64)
    }
}

impl AddAssign for BlockTally {
    fn add_assign(&mut self, rhs: BlockTally) {
        self.accepted += rhs.accepted;
        self.proposed += rhs.proposed;
    }
}

/// Draws `w ~ Dirichlet(alpha)`.
///
/// Small concentrations make the Gamma variates underflow, so each is drawn
/// in log space as `log G(α+1) + log(U)/α` and normalised by log-sum-exp.
/// Components that still underflow are floored at the smallest normal
/// double.
pub fn sample_dirichlet<R: Rng + ?Sized>(alpha: &[f64; 3], rng: &mut R) -> [f64; 3] {
    let mut logx = [0.0; 3];
    for (lx, &a) in logx.iter_mut().zip(alpha) {
        let g: f64 = Gamma::new(a + 1.0, 1.0)
            .expect("positive concentration")
            .sample(rng);
        let u: f64 = rng.random::<f64>();
        *lx = g.ln() + u.ln() / a;
    }
    let top = logx.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = top + logx.iter().map(|&l| (l - top).exp()).sum::<f64>().ln();
    logx.map(|l| (l - lse).exp().max(f64::MIN_POSITIVE))
}

fn sample_component<R: Rng + ?Sized>(w: &[f64; 3], rng: &mut R) -> Component {
    let u = rng.random::<f64>() * (w[0] + w[1] + w[2]);
    if u < w[0] {
        Component::Symmetric
    } else if u < w[0] + w[1] {
        Component::Negative
    } else {
        Component::Positive
    }
}

#[inline]
fn accept<R: Rng + ?Sized>(log_ratio: f64, rng: &mut R) -> bool {
    if log_ratio >= 0.0 {
        return true;
    }
    // NaN compares false and is rejected
    rng.random::<f64>().ln() < log_ratio
}

/// Masked sum of cached terms for item `i`.
fn masked_sum(terms: &[f64], d: &[u8]) -> f64 {
    terms
        .iter()
        .zip(d)
        .filter(|(_, &dv)| dv == 0)
        .map(|(t, _)| t)
        .sum()
}

/// Sampler bound to one response matrix. Holds the model, priors, and the
/// current proposal scales.
#[derive(Debug, Clone)]
pub struct Sampler<'a> {
    y: &'a ResponseMatrix,
    model: ModelKind,
    priors: PriorConfig,
    tuning: TuningConfig,
    chol: [f64; 3],
    scales: ProposalScales,
    adapter: Adapter,
    adapting: bool,
    scratch: Vec<f64>,
}

impl<'a> Sampler<'a> {
    pub fn new(
        y: &'a ResponseMatrix,
        model: ModelKind,
        priors: PriorConfig,
        tuning: TuningConfig,
    ) -> Result<Self> {
        priors.validate()?;
        tuning.validate()?;
        if let ModelKind::ThreePcspFixedC(c) = &model {
            if c.len() != y.n_items() {
                return Err(Error::Data(format!(
                    "{} fixed guessing values for {} items",
                    c.len(),
                    y.n_items()
                )));
            }
            if c.iter().any(|c| !(0.0..1.0).contains(c)) {
                return Err(Error::Domain(
                    "fixed guessing values must lie in [0, 1)".into(),
                ));
            }
        }
        let n_items = y.n_items();
        Ok(Sampler {
            y,
            chol: tuning.ab_cholesky(),
            scales: ProposalScales::new(&tuning, n_items),
            adapter: Adapter::new(&tuning, n_items),
            adapting: false,
            scratch: Vec::with_capacity(y.n_subjects().max(n_items)),
            model,
            priors,
            tuning,
        })
    }

    pub fn model(&self) -> &ModelKind {
        &self.model
    }

    pub fn priors(&self) -> &PriorConfig {
        &self.priors
    }

    pub fn tuning(&self) -> &TuningConfig {
        &self.tuning
    }

    pub fn scales(&self) -> &ProposalScales {
        &self.scales
    }

    pub fn set_scales(&mut self, scales: ProposalScales) {
        self.scales = scales;
    }

    /// Data-driven starting point: standardised sum scores for `θ`, probit
    /// of the item facility for `b`, unit discrimination, prior means for
    /// `c` and `w`, `γ∓ = ∓0.5`, and every item symmetric.
    pub fn init_state<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ChainState> {
        let y = self.y;
        let scores: Vec<f64> = y.subject_scores().into_iter().map(f64::from).collect();
        let n = scores.len() as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let sd = (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n).sqrt();
        let mut theta: Vec<f64> = scores
            .iter()
            .map(|s| if sd > 0.0 { (s - mean) / sd } else { 0.0 })
            .collect();

        let w = self.priors.dirichlet_mean();
        let items: Vec<ItemState> = y
            .facility()
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                let b = if f <= 0.0 {
                    4.0
                } else if f >= 1.0 {
                    -4.0
                } else {
                    normal::quantile(1.0 - f).clamp(-4.0, 4.0)
                };
                ItemState {
                    a: 1.0,
                    b,
                    c: match &self.model {
                        ModelKind::ThreePcsp => self.priors.guess_mean(),
                        ModelKind::ThreePcspFixedC(c) => c[i],
                        _ => 0.0,
                    },
                    gamma_neg: -0.5,
                    gamma_pos: 0.5,
                    z: Component::Symmetric,
                    w,
                }
            })
            .collect();

        let d = AuxIndicators::zeros(y.n_items(), y.n_subjects());
        let mut state = ChainState::new(items, theta.clone(), d, y)?;
        for _ in 0..10 {
            if state.loglik().is_finite() {
                return Ok(state);
            }
            for t in theta.iter_mut() {
                *t += 0.1 * rng.sample::<f64, _>(StandardNormal);
            }
            state.theta.clone_from(&theta);
            state.refresh_terms(y);
        }
        Err(Error::Numerical(
            "log-likelihood not finite at the starting point".into(),
        ))
    }

    /// One full sweep over all blocks.
    pub fn sweep<R: Rng + ?Sized>(
        &mut self,
        state: &mut ChainState,
        rng: &mut R,
        adapt: bool,
    ) -> Acceptance {
        self.adapting = adapt;
        let theta = self.step_theta(state, rng);
        let ab = self.step_ab(state, rng);
        let zw = self.step_zw(state, rng);
        let (gamma_neg, gamma_pos) = self.step_gamma(state, rng);
        self.step_d(state, rng);
        self.step_c(state, rng);
        if adapt {
            self.adapter.record_theta(theta);
            self.adapter.end_iteration(&mut self.scales);
        }
        self.adapting = false;
        state.iteration += 1;
        Acceptance {
            theta,
            ab,
            zw,
            gamma_neg,
            gamma_pos,
        }
    }

    /// Random-walk update of every `θ_j` against its `N(0, 1)` prior.
    pub fn step_theta<R: Rng + ?Sized>(
        &mut self,
        state: &mut ChainState,
        rng: &mut R,
    ) -> BlockTally {
        let laws: Vec<Csn> = state
            .items
            .iter()
            .map(|it| Csn::new(it.skewness()))
            .collect();
        let n = state.n_subjects;
        let mut tally = BlockTally::default();
        let new_terms = &mut self.scratch;
        for j in 0..n {
            let current = state.theta[j];
            let proposal = current + self.scales.theta * rng.sample::<f64, _>(StandardNormal);
            new_terms.clear();
            let mut delta = normal::ln_pdf(proposal) - normal::ln_pdf(current);
            for (i, (item, law)) in state.items.iter().zip(&laws).enumerate() {
                let idx = i * n + j;
                let t = response_term(law, predictor(item.a, item.b, proposal), self.y.get(i, j));
                if state.d.get(i, j) == 0 {
                    delta += t - state.terms[idx];
                }
                new_terms.push(t);
            }
            let ok = accept(delta, rng);
            if ok {
                state.theta[j] = proposal;
                for (i, &t) in new_terms.iter().enumerate() {
                    state.terms[i * n + j] = t;
                }
            }
            tally.record(ok);
        }
        tally
    }

    /// Fills the scratch buffer with item `i`'s terms under `(a, b, law)`
    /// and returns their masked sum.
    fn propose_item_terms(
        &mut self,
        state: &ChainState,
        i: usize,
        a: f64,
        b: f64,
        law: &Csn,
    ) -> f64 {
        self.scratch.clear();
        let mut total = 0.0;
        for ((&yv, &dv), &th) in self.y.item(i).iter().zip(state.d.item(i)).zip(&state.theta) {
            let t = response_term(law, predictor(a, b, th), yv);
            if dv == 0 {
                total += t;
            }
            self.scratch.push(t);
        }
        total
    }

    fn commit_item_terms(&self, state: &mut ChainState, i: usize) {
        let n = state.n_subjects;
        state.terms[i * n..(i + 1) * n].copy_from_slice(&self.scratch);
    }

    /// Bivariate random-walk update of each `(a_i, b_i)`.
    pub fn step_ab<R: Rng + ?Sized>(&mut self, state: &mut ChainState, rng: &mut R) -> BlockTally {
        let mut tally = BlockTally::default();
        let [l11, l21, l22] = self.chol;
        for i in 0..state.items.len() {
            let s = self.scales.ab[i];
            let (z1, z2): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            let item = &state.items[i];
            let a_new = item.a + s * l11 * z1;
            let b_new = item.b + s * (l21 * z1 + l22 * z2);
            let prior_delta = self.priors.ln_prior_a(a_new) - self.priors.ln_prior_a(item.a)
                + self.priors.ln_prior_b(b_new)
                - self.priors.ln_prior_b(item.b);
            let ok = if prior_delta == f64::NEG_INFINITY {
                false
            } else {
                let law = Csn::new(item.skewness());
                let current = masked_sum(state.item_terms(i), state.d.item(i));
                let proposed = self.propose_item_terms(state, i, a_new, b_new, &law);
                let ok = accept(proposed - current + prior_delta, rng);
                if ok {
                    state.items[i].a = a_new;
                    state.items[i].b = b_new;
                    self.commit_item_terms(state, i);
                }
                ok
            };
            if self.adapting {
                self.adapter.record_ab(i, ok);
            }
            tally.record(ok);
        }
        tally
    }

    /// Joint independence proposal of `(w_i, Z_i)` from the prior, accepted
    /// by the likelihood ratio at the implied skewness.
    pub fn step_zw<R: Rng + ?Sized>(&mut self, state: &mut ChainState, rng: &mut R) -> BlockTally {
        let mut tally = BlockTally::default();
        if !self.model.has_skew_mixture() {
            return tally;
        }
        for i in 0..state.items.len() {
            let w_new = sample_dirichlet(&self.priors.dirichlet, rng);
            let z_new = sample_component(&w_new, rng);
            let item = &state.items[i];
            let ok = if item.component_gamma(z_new) == item.gamma() {
                true
            } else {
                let law = Csn::new(
                    Skewness::new(item.component_gamma(z_new))
                        .expect("component skewness in range"),
                );
                let (a, b) = (item.a, item.b);
                let current = masked_sum(state.item_terms(i), state.d.item(i));
                let proposed = self.propose_item_terms(state, i, a, b, &law);
                let ok = accept(proposed - current, rng);
                if ok {
                    self.commit_item_terms(state, i);
                }
                ok
            };
            if ok {
                state.items[i].w = w_new;
                state.items[i].z = z_new;
            }
            tally.record(ok);
        }
        tally
    }

    /// Random-walk update of the active skewness component of each item;
    /// inactive components carry over. Returns `(γ₋, γ₊)` tallies.
    pub fn step_gamma<R: Rng + ?Sized>(
        &mut self,
        state: &mut ChainState,
        rng: &mut R,
    ) -> (BlockTally, BlockTally) {
        let mut neg = BlockTally::default();
        let mut pos = BlockTally::default();
        if !self.model.has_skew_mixture() {
            return (neg, pos);
        }
        for i in 0..state.items.len() {
            let item = &state.items[i];
            let (current_gamma, sd) = match item.z {
                Component::Symmetric => continue,
                Component::Negative => (item.gamma_neg, self.scales.gamma_neg[i]),
                Component::Positive => (item.gamma_pos, self.scales.gamma_pos[i]),
            };
            let proposal = current_gamma + sd * rng.sample::<f64, _>(StandardNormal);
            let in_support = match item.z {
                Component::Negative => proposal < 0.0 && proposal > -GAMMA_MAX,
                _ => proposal > 0.0 && proposal < GAMMA_MAX,
            };
            let ok = in_support && {
                let prior_delta = self.priors.ln_prior_skew_magnitude(proposal.abs())
                    - self.priors.ln_prior_skew_magnitude(current_gamma.abs());
                let law = Csn::new(Skewness::new(proposal).expect("checked support"));
                let (a, b) = (item.a, item.b);
                let current = masked_sum(state.item_terms(i), state.d.item(i));
                let proposed = self.propose_item_terms(state, i, a, b, &law);
                let ok = accept(proposed - current + prior_delta, rng);
                if ok {
                    self.commit_item_terms(state, i);
                }
                ok
            };
            let item = &mut state.items[i];
            if item.z == Component::Negative {
                if ok {
                    item.gamma_neg = proposal;
                }
                if self.adapting {
                    self.adapter.record_gamma_neg(i, ok);
                }
                neg.record(ok);
            } else {
                if ok {
                    item.gamma_pos = proposal;
                }
                if self.adapting {
                    self.adapter.record_gamma_pos(i, ok);
                }
                pos.record(ok);
            }
        }
        (neg, pos)
    }

    /// Exact Gibbs draw of the guessing indicators. Incorrect responses are
    /// never guesses; a correct one is a guess with probability
    /// `c / (c + (1 - c)·Φ_CSN(m, γ))`.
    pub fn step_d<R: Rng + ?Sized>(&mut self, state: &mut ChainState, rng: &mut R) {
        if !self.model.has_guessing() {
            return;
        }
        let n = state.n_subjects;
        for i in 0..state.items.len() {
            let c = state.items[i].c;
            let terms = &state.terms[i * n..(i + 1) * n];
            let d = state.d.item_mut(i);
            for ((dv, &yv), &t) in d.iter_mut().zip(self.y.item(i)).zip(terms) {
                *dv = if yv == 0 || c == 0.0 {
                    0
                } else {
                    let r = c / (c + (1.0 - c) * t.exp());
                    (rng.random::<f64>() < r) as u8
                };
            }
        }
    }

    /// Conjugate draw `c_i ~ Beta(Σ_j D_ij + α_c, J - Σ_j D_ij + β_c)`.
    pub fn step_c<R: Rng + ?Sized>(&mut self, state: &mut ChainState, rng: &mut R) {
        if !self.model.estimates_guessing() {
            return;
        }
        let n = state.n_subjects as f64;
        let (ac, bc) = self.priors.beta_guess;
        for i in 0..state.items.len() {
            let k = state.d.item_count(i) as f64;
            let c: f64 = Beta::new(k + ac, n - k + bc)
                .expect("positive beta parameters")
                .sample(rng);
            // keep c inside [0, 1) when the draw rounds to 1
            state.items[i].c = c.min(1.0 - f64::EPSILON);
        }
    }
}
