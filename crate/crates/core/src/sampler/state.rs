use crate::csn::Csn;
use crate::error::{Error, Result};
use crate::model::{predictor, AuxIndicators, ItemState, ResponseMatrix};

use super::Draw;

/// Floor applied to probabilities before taking logs.
pub(crate) const PROB_FLOOR: f64 = 1e-300;

/// Log-likelihood contribution of one response at linear predictor `m`.
#[inline]
pub(crate) fn response_term(law: &Csn, m: f64, y: u8) -> f64 {
    let p = if y == 1 { law.cdf(m) } else { law.sf(m) };
    p.max(PROB_FLOOR).ln()
}

/// Full parameter vector at one iteration.
///
/// Alongside the parameters it caches the log-likelihood term of every
/// response, so each Metropolis–Hastings step only evaluates the proposed
/// side of its ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub(crate) items: Vec<ItemState>,
    pub(crate) theta: Vec<f64>,
    pub(crate) d: AuxIndicators,
    pub(crate) iteration: usize,
    /// Item-major `log P(y_ij | D_ij = 0, ·)`.
    pub(crate) terms: Vec<f64>,
    pub(crate) n_subjects: usize,
}

impl ChainState {
    pub fn new(
        items: Vec<ItemState>,
        theta: Vec<f64>,
        d: AuxIndicators,
        y: &ResponseMatrix,
    ) -> Result<Self> {
        if items.len() != y.n_items() || theta.len() != y.n_subjects() {
            return Err(Error::Data(
                "chain state does not match response dimensions".into(),
            ));
        }
        for item in &items {
            item.validate()?;
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Domain("abilities must be finite".into()));
        }
        d.check_against(y)?;
        let mut state = ChainState {
            items,
            theta,
            d,
            iteration: 0,
            terms: Vec::new(),
            n_subjects: y.n_subjects(),
        };
        state.refresh_terms(y);
        Ok(state)
    }

    pub(crate) fn refresh_terms(&mut self, y: &ResponseMatrix) {
        let n = self.n_subjects;
        self.terms.clear();
        self.terms.reserve(self.items.len() * n);
        for (i, item) in self.items.iter().enumerate() {
            let law = Csn::new(item.skewness());
            for (j, &yv) in y.item(i).iter().enumerate() {
                let m = predictor(item.a, item.b, self.theta[j]);
                self.terms.push(response_term(&law, m, yv));
            }
        }
    }

    pub fn items(&self) -> &[ItemState] {
        &self.items
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn d(&self) -> &AuxIndicators {
        &self.d
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    #[inline]
    pub(crate) fn item_terms(&self, i: usize) -> &[f64] {
        &self.terms[i * self.n_subjects..(i + 1) * self.n_subjects]
    }

    /// Log-likelihood over responses with `D_ij = 0`, from the cache.
    pub fn loglik(&self) -> f64 {
        (0..self.items.len())
            .map(|i| {
                self.item_terms(i)
                    .iter()
                    .zip(self.d.item(i))
                    .filter(|(_, &d)| d == 0)
                    .map(|(t, _)| t)
                    .sum::<f64>()
            })
            .sum()
    }

    pub(crate) fn snapshot(&self) -> Draw {
        Draw {
            iteration: self.iteration,
            items: self.items.clone(),
            theta: self.theta.clone(),
            guess_count: (0..self.items.len())
                .map(|i| self.d.item_count(i))
                .collect(),
        }
    }
}
