use crate::error::{Error, Result};
use crate::sampler::{Acceptance, DrawStore};

use super::check_stores;

/// Convergence summary of one scalar parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamDiagnostic {
    pub name: String,
    /// `None` for constant parameters.
    pub ess: Option<f64>,
    /// Split-R̂; `None` for constant parameters or a single chain.
    pub rhat: Option<f64>,
    pub constant: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainDiagnostics {
    pub params: Vec<ParamDiagnostic>,
    /// Post-burn-in acceptance counts per chain id.
    pub acceptance: Vec<(u64, Acceptance)>,
}

impl ChainDiagnostics {
    /// Largest split-R̂ over non-constant parameters.
    pub fn max_rhat(&self) -> Option<f64> {
        self.params.iter().filter_map(|p| p.rhat).reduce(f64::max)
    }

    /// Smallest ESS over non-constant parameters.
    pub fn min_ess(&self) -> Option<f64> {
        self.params.iter().filter_map(|p| p.ess).reduce(f64::min)
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn var(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() - 1) as f64
}

fn is_constant(chains: &[&[f64]]) -> bool {
    let first = chains[0][0];
    chains.iter().all(|c| c.iter().all(|&v| v == first))
}

/// `(W, var⁺)`: mean within-chain variance and the pooled estimate of the
/// marginal posterior variance.
fn variance_components(chains: &[&[f64]]) -> (f64, f64) {
    let n = chains[0].len() as f64;
    let w = mean(&chains.iter().map(|c| var(c)).collect::<Vec<_>>());
    let b_over_n = if chains.len() > 1 {
        var(&chains.iter().map(|c| mean(c)).collect::<Vec<_>>())
    } else {
        0.0
    };
    (w, (n - 1.0) / n * w + b_over_n)
}

/// Effective sample size of equal-length chains, combining within-chain
/// autocorrelation with between-chain variance and truncating the
/// autocorrelation sum by Geyer's initial monotone sequence.
///
/// Returns `None` if every value is identical.
pub fn ess(chains: &[&[f64]]) -> Option<f64> {
    if is_constant(chains) {
        return None;
    }
    let m = chains.len();
    let n = chains[0].len();
    let (w, var_plus) = variance_components(chains);
    let means: Vec<f64> = chains.iter().map(|c| mean(c)).collect();

    // rho_t from the chain-averaged biased autocovariance
    let rho = |t: usize| -> f64 {
        let acov = chains
            .iter()
            .zip(&means)
            .map(|(c, &mu)| {
                (0..n - t)
                    .map(|k| (c[k] - mu) * (c[k + t] - mu))
                    .sum::<f64>()
                    / n as f64
            })
            .sum::<f64>()
            / m as f64;
        1.0 - (w - acov) / var_plus
    };

    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut t = 0;
    while t + 1 < n {
        let r0 = if t == 0 { 1.0 } else { rho(t) };
        let pair = r0 + rho(t + 1);
        if pair < 0.0 {
            break;
        }
        let pair = pair.min(prev);
        sum += pair;
        prev = pair;
        t += 2;
    }
    let tau = (-1.0 + 2.0 * sum).max(1.0 / ((m * n) as f64).log10());
    Some((m * n) as f64 / tau)
}

/// Split-R̂: each chain is halved (dropping the middle draw of an odd
/// length) and the potential scale reduction is computed over the halves.
///
/// Returns `None` if every value is identical; `+∞` if the halves are each
/// constant but disagree.
pub fn split_rhat(chains: &[&[f64]]) -> Option<f64> {
    if is_constant(chains) {
        return None;
    }
    let half = chains[0].len() / 2;
    let halves: Vec<&[f64]> = chains
        .iter()
        .flat_map(|c| [&c[..half], &c[c.len() - half..]])
        .collect();
    let (w, var_plus) = variance_components(&halves);
    if w == 0.0 {
        return Some(f64::INFINITY);
    }
    Some((var_plus / w).sqrt())
}

/// ESS and split-R̂ for every scalar parameter.
///
/// Parameters are `a[i]`, `b[i]`, `c[i]`, `gamma[i]` (the skewness in
/// force), `z0[i]` (indicator of the symmetric component) and `theta[j]`,
/// all zero-based. Chains are truncated to the shortest one; R̂ needs at
/// least two chains.
pub fn diagnostics(stores: &[DrawStore]) -> Result<ChainDiagnostics> {
    check_stores(stores, 4)?;
    let n = stores.iter().map(|s| s.draws.len()).min().unwrap_or(0);
    if n < 4 {
        return Err(Error::Data("need at least 4 draws per chain".into()));
    }
    let n_items = stores[0].n_items();
    let n_subjects = stores[0].n_subjects;

    let mut params = Vec::new();
    let mut buf: Vec<Vec<f64>> = vec![Vec::with_capacity(n); stores.len()];
    let mut push = |name: String, get: &dyn Fn(&crate::sampler::Draw) -> f64| {
        for (b, s) in buf.iter_mut().zip(stores) {
            b.clear();
            b.extend(s.draws[..n].iter().map(get));
        }
        let chains: Vec<&[f64]> = buf.iter().map(Vec::as_slice).collect();
        let ess = ess(&chains);
        params.push(ParamDiagnostic {
            name,
            constant: ess.is_none(),
            ess,
            rhat: if chains.len() > 1 {
                split_rhat(&chains)
            } else {
                None
            },
        });
    };
    for i in 0..n_items {
        push(format!("a[{i}]"), &|d| d.items[i].a);
        push(format!("b[{i}]"), &|d| d.items[i].b);
        push(format!("c[{i}]"), &|d| d.items[i].c);
        push(format!("gamma[{i}]"), &|d| d.items[i].gamma());
        push(format!("z0[{i}]"), &|d| {
            (d.items[i].z == crate::model::Component::Symmetric) as u8 as f64
        });
    }
    for j in 0..n_subjects {
        push(format!("theta[{j}]"), &|d| d.theta[j]);
    }

    Ok(ChainDiagnostics {
        params,
        acceptance: stores.iter().map(|s| (s.chain_id, s.acceptance)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn white_noise(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
    }

    #[test]
    fn white_noise_ess_is_close_to_the_draw_count() {
        let a = white_noise(4000, 1);
        let b = white_noise(4000, 2);
        let e = ess(&[&a, &b]).unwrap();
        assert!((e / 8000.0 - 1.0).abs() < 0.15, "ess = {e}");
    }

    #[test]
    fn ar1_ess_matches_theory() {
        // ESS/N = (1 - φ)/(1 + φ) for an AR(1) chain
        let phi: f64 = 0.8;
        let eps = white_noise(50_000, 3);
        let mut x = vec![0.0; eps.len()];
        for k in 1..x.len() {
            x[k] = phi * x[k - 1] + (1.0 - phi * phi).sqrt() * eps[k];
        }
        let e = ess(&[&x]).unwrap() / x.len() as f64;
        assert!(
            (e / ((1.0 - phi) / (1.0 + phi)) - 1.0).abs() < 0.15,
            "ess/N = {e}"
        );
    }

    #[test]
    fn identical_chains() {
        let a = white_noise(1000, 4);
        let r = split_rhat(&[&a, &a]).unwrap();
        assert!((r - 1.0).abs() < 0.01, "rhat = {r}");
    }

    #[test]
    fn shifted_chains_are_flagged() {
        let a = white_noise(1000, 5);
        let b: Vec<f64> = white_noise(1000, 6).iter().map(|v| v + 3.0).collect();
        assert!(split_rhat(&[&a, &b]).unwrap() > 1.5);
    }

    #[test]
    fn constants() {
        let a = [0.2; 10];
        assert_eq!(ess(&[&a, &a]), None);
        assert_eq!(split_rhat(&[&a, &a]), None);
        let b = [0.3; 10];
        assert_eq!(split_rhat(&[&a, &b]), Some(f64::INFINITY));
    }
}
