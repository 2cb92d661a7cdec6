mod common;

use common::{bin, chi_square, integrate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use skewirt::model::{loglik, predictor};
use skewirt::sampler::{ChainState, Sampler};
use skewirt::summary::{pearson, summarize_abilities};
use skewirt::synth::{generate, Scenario};
use skewirt::{
    run_chain, run_chains, Abilities, AuxIndicators, ChainConfig, Component, Csn, ItemState,
    ModelKind, PriorConfig, ResponseMatrix, Skewness, TuningConfig, GAMMA_MAX,
};

fn item(a: f64, b: f64, z: Component) -> ItemState {
    ItemState {
        a,
        b,
        c: 0.0,
        gamma_neg: -0.6,
        gamma_pos: 0.5,
        z,
        w: [0.6, 0.2, 0.2],
    }
}

fn law(g: f64) -> Csn {
    Csn::new(Skewness::new(g).unwrap())
}

fn p_obs(it: &ItemState, theta: f64, y: u8) -> f64 {
    let p = law(it.gamma()).cdf(predictor(it.a, it.b, theta));
    if y == 1 {
        p
    } else {
        1.0 - p
    }
}

/// Bin probabilities of an unnormalised density on `[lo, hi]`.
fn bin_probs<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, edges: &[f64]) -> Vec<f64> {
    let mut cuts = vec![lo];
    cuts.extend_from_slice(edges);
    cuts.push(hi);
    let mass: Vec<f64> = cuts
        .windows(2)
        .map(|w| integrate(&f, w[0], w[1], 1e-12))
        .collect();
    let total: f64 = mass.iter().sum();
    mass.iter().map(|m| m / total).collect()
}

fn small_data(rows: &[Vec<u8>]) -> ResponseMatrix {
    ResponseMatrix::from_rows(rows).unwrap()
}

#[test]
fn theta_block_targets_its_conditional() {
    let y = small_data(&[vec![1, 0], vec![0, 1]]);
    let items = vec![
        item(1.4, 0.3, Component::Negative),
        item(0.8, -0.5, Component::Positive),
    ];
    let tuning = TuningConfig {
        sigma_theta: 2.0,
        ..TuningConfig::default()
    };
    let mut s = Sampler::new(&y, ModelKind::TwoPcsp, PriorConfig::default(), tuning).unwrap();
    let d = AuxIndicators::zeros(2, 2);
    let mut st = ChainState::new(items.clone(), vec![0.0, 0.0], d, &y).unwrap();
    let edges = [-1.5, -0.75, 0.0, 0.75, 1.5];
    let mut counts = [0usize; 6];
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in 0..400_000 {
        s.step_theta(&mut st, &mut rng);
        if t % 20 == 0 {
            counts[bin(st.theta()[0], &edges)] += 1;
        }
    }
    let dens = |th: f64| common::phi(th) * p_obs(&items[0], th, 1) * p_obs(&items[1], th, 0);
    let probs = bin_probs(dens, -10.0, 10.0, &edges);
    let (stat, crit) = chi_square(&counts, &probs);
    assert!(stat < crit, "chi-square {stat} vs {crit}");
}

#[test]
fn gamma_block_targets_its_conditional() {
    let rows: Vec<Vec<u8>> = vec![
        (0..30).map(|j| (j % 3 != 0) as u8).collect(),
        (0..30).map(|j| (j % 2) as u8).collect(),
    ];
    let y = small_data(&rows);
    let theta: Vec<f64> = (0..30).map(|j| -2.0 + 4.0 * j as f64 / 29.0).collect();
    let items = vec![
        item(1.6, -0.4, Component::Negative),
        item(1.0, 0.0, Component::Symmetric),
    ];
    let priors = PriorConfig {
        beta_skew: (2.0, 1.5),
        ..PriorConfig::default()
    };
    let tuning = TuningConfig {
        tau_gamma_neg: 0.4,
        ..TuningConfig::default()
    };
    let mut s = Sampler::new(&y, ModelKind::TwoPcsp, priors.clone(), tuning).unwrap();
    let d = AuxIndicators::zeros(2, 30);
    let mut st = ChainState::new(items.clone(), theta.clone(), d, &y).unwrap();
    let edges = [-0.8, -0.6, -0.4, -0.2];
    let mut counts = [0usize; 5];
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for t in 0..300_000 {
        let (neg, pos) = s.step_gamma(&mut st, &mut rng);
        assert_eq!(pos.proposed, 0);
        assert_eq!(neg.proposed, 1);
        assert_eq!(st.items()[1].gamma_neg, -0.6);
        if t % 20 == 0 {
            counts[bin(st.items()[0].gamma_neg, &edges)] += 1;
        }
    }
    let dens = |g: f64| {
        let it = ItemState {
            gamma_neg: g,
            ..items[0]
        };
        let ll: f64 = (0..30).map(|j| p_obs(&it, theta[j], rows[0][j]).ln()).sum();
        (priors.ln_prior_skew_magnitude(-g) + ll).exp()
    };
    let probs = bin_probs(dens, -GAMMA_MAX, 0.0, &edges);
    let (stat, crit) = chi_square(&counts, &probs);
    assert!(
        stat < crit,
        "chi-square {stat} vs {crit}: {counts:?} {probs:?}"
    );
}

#[test]
fn zw_block_targets_component_posterior() {
    let rows: Vec<Vec<u8>> = vec![(0..30).map(|j| (j % 3 != 0) as u8).collect()];
    let y = small_data(&rows);
    let theta: Vec<f64> = (0..30).map(|j| -1.5 + 3.0 * j as f64 / 29.0).collect();
    let mut it = item(1.2, -0.2, Component::Symmetric);
    it.gamma_neg = -0.8;
    it.gamma_pos = 0.7;
    let priors = PriorConfig {
        dirichlet: [1.0, 0.5, 0.5],
        ..PriorConfig::default()
    };
    let mut s = Sampler::new(
        &y,
        ModelKind::TwoPcsp,
        priors.clone(),
        TuningConfig::default(),
    )
    .unwrap();
    let mut st = ChainState::new(vec![it], theta.clone(), AuxIndicators::zeros(1, 30), &y).unwrap();
    let mut counts = [0usize; 3];
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for t in 0..200_000 {
        s.step_zw(&mut st, &mut rng);
        if t % 4 == 0 {
            counts[st.items()[0].z.index()] += 1;
        }
    }
    let weight = |z: Component| {
        let cand = ItemState { z, ..it };
        let ll: f64 = (0..30)
            .map(|j| p_obs(&cand, theta[j], rows[0][j]).ln())
            .sum();
        priors.dirichlet[z.index()] * ll.exp()
    };
    let w: Vec<f64> = Component::ALL.iter().map(|&z| weight(z)).collect();
    let total: f64 = w.iter().sum();
    let probs: Vec<f64> = w.iter().map(|x| x / total).collect();
    let (stat, crit) = chi_square(&counts, &probs);
    assert!(
        stat < crit,
        "chi-square {stat} vs {crit}: {counts:?} {probs:?}"
    );
}

#[test]
fn zw_acceptance_is_the_likelihood_ratio() {
    // one subject at m = 0 answering correctly: from the symmetric
    // component (p = 1/2) a move to γ* is accepted with min(1, 2·Φ_CSN(0, γ*))
    let y = small_data(&[vec![1]]);
    let priors = PriorConfig {
        dirichlet: [1.0, 1.0, 1.0],
        ..PriorConfig::default()
    };
    let mut it = item(1.0, 0.0, Component::Symmetric);
    it.gamma_neg = -0.9;
    it.gamma_pos = 0.9;
    let base = ChainState::new(vec![it], vec![0.0], AuxIndicators::zeros(1, 1), &y).unwrap();
    let mut s = Sampler::new(&y, ModelKind::TwoPcsp, priors, TuningConfig::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let n = 200_000;
    let mut moved = [0usize; 3];
    for _ in 0..n {
        let mut st = base.clone();
        s.step_zw(&mut st, &mut rng);
        moved[st.items()[0].z.index()] += 1;
    }
    let q_neg = law(-0.9).cdf(0.0);
    let q_pos = law(0.9).cdf(0.0);
    assert!(q_neg < 0.5 && q_pos > 0.5);
    for (k, want) in [(1, 2.0 * q_neg / 3.0), (2, 1.0 / 3.0)] {
        let got = moved[k] as f64 / n as f64;
        assert!(
            (got - want).abs() < 4.0 * common::binomial_se(want, n),
            "{k}: {got} vs {want}"
        );
    }
}

#[test]
fn zw_always_accepts_when_every_response_is_a_guess() {
    let y = small_data(&[vec![1, 1, 1]]);
    let d = AuxIndicators::new(&y, vec![1, 1, 1]).unwrap();
    let mut it = item(1.0, 0.0, Component::Symmetric);
    it.c = 0.3;
    let mut st = ChainState::new(vec![it], vec![-2.0, 0.0, 1.0], d, &y).unwrap();
    let priors = PriorConfig {
        dirichlet: [1.0, 1.0, 1.0],
        ..PriorConfig::default()
    };
    let mut s = Sampler::new(
        &y,
        ModelKind::ThreePcspFixedC(vec![0.3]),
        priors,
        TuningConfig::default(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..1000 {
        let t = s.step_zw(&mut st, &mut rng);
        assert_eq!(t.accepted, t.proposed);
    }
}

#[test]
fn supports_are_never_left() {
    let y = small_data(&[vec![1, 0, 1], vec![0, 0, 1]]);
    let mut a = item(0.05, 0.0, Component::Positive);
    a.gamma_pos = 0.99;
    let mut b = item(0.1, 1.0, Component::Negative);
    b.gamma_neg = -0.99;
    let tuning = TuningConfig {
        tau_gamma_neg: 0.5,
        tau_gamma_pos: 0.5,
        sigma_ab: [1.0, 0.0, 1.0],
        ..TuningConfig::default()
    };
    let mut st = ChainState::new(
        vec![a, b],
        vec![0.0, 0.5, -0.5],
        AuxIndicators::zeros(2, 3),
        &y,
    )
    .unwrap();
    let mut s = Sampler::new(&y, ModelKind::TwoPcsp, PriorConfig::default(), tuning).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..20_000 {
        s.step_ab(&mut st, &mut rng);
        s.step_gamma(&mut st, &mut rng);
        for it in st.items() {
            assert!(it.a > 0.0);
            assert!(it.gamma_pos > 0.0 && it.gamma_pos < GAMMA_MAX);
            assert!(it.gamma_neg < 0.0 && it.gamma_neg > -GAMMA_MAX);
        }
    }
}

#[test]
fn symmetric_items_keep_their_skewness() {
    let y = small_data(&[vec![1, 0], vec![0, 1]]);
    let items = vec![
        item(1.0, 0.0, Component::Symmetric),
        item(1.0, 0.5, Component::Symmetric),
    ];
    let mut st = ChainState::new(
        items.clone(),
        vec![0.3, -0.3],
        AuxIndicators::zeros(2, 2),
        &y,
    )
    .unwrap();
    let mut s = Sampler::new(
        &y,
        ModelKind::TwoPcsp,
        PriorConfig::default(),
        TuningConfig::default(),
    )
    .unwrap();
    let (neg, pos) = s.step_gamma(&mut st, &mut ChaCha8Rng::seed_from_u64(1));
    assert_eq!((neg.proposed, pos.proposed), (0, 0));
    assert_eq!(st.items(), &items[..]);
}

fn three_pl_fixture() -> (ResponseMatrix, Scenario) {
    let s = Scenario::new(
        40,
        vec![1.0, 1.5, 0.7, 1.2],
        vec![-0.5, 0.0, 0.5, 1.0],
        vec![0.2, 0.1, 0.25, 0.15],
        vec![-0.6, 0.0, 0.4, 0.8],
        9,
    )
    .unwrap();
    (generate(&s).unwrap().0, s)
}

fn same_except(before: &ChainState, after: &ChainState, block: &str) {
    let keep = |x: &ItemState, y: &ItemState| {
        let mut y = *y;
        match block {
            "ab" => (y.a, y.b) = (x.a, x.b),
            "zw" => (y.z, y.w) = (x.z, x.w),
            "gamma" => (y.gamma_neg, y.gamma_pos) = (x.gamma_neg, x.gamma_pos),
            "c" => y.c = x.c,
            _ => {}
        }
        *x == y
    };
    for (x, y) in before.items().iter().zip(after.items()) {
        assert!(keep(x, y), "{block} changed {x:?} into {y:?}");
    }
    if block != "theta" {
        assert_eq!(before.theta(), after.theta(), "{block} changed theta");
    }
    if block != "d" {
        assert_eq!(before.d(), after.d(), "{block} changed D");
    }
}

#[test]
fn blocks_only_touch_their_own_parameters() {
    let (y, _) = three_pl_fixture();
    let tuning = TuningConfig {
        tau_gamma_neg: 0.3,
        tau_gamma_pos: 0.3,
        sigma_ab: [0.1, 0.0, 0.1],
        ..TuningConfig::default()
    };
    let priors = PriorConfig {
        dirichlet: [1.0, 1.0, 1.0],
        ..PriorConfig::default()
    };
    let mut s = Sampler::new(&y, ModelKind::ThreePcsp, priors, tuning).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let mut st = s.init_state(&mut rng).unwrap();
    let mut changed = std::collections::HashSet::new();
    for _ in 0..50 {
        for block in ["theta", "ab", "zw", "gamma", "d", "c"] {
            let before = st.clone();
            match block {
                "theta" => {
                    let _ = s.step_theta(&mut st, &mut rng);
                }
                "ab" => {
                    let _ = s.step_ab(&mut st, &mut rng);
                }
                "zw" => {
                    let _ = s.step_zw(&mut st, &mut rng);
                }
                "gamma" => {
                    let _ = s.step_gamma(&mut st, &mut rng);
                }
                "d" => s.step_d(&mut st, &mut rng),
                _ => s.step_c(&mut st, &mut rng),
            }
            same_except(&before, &st, block);
            if before != st {
                changed.insert(block);
            }
            // the cached likelihood follows every accepted move
            let theta = Abilities::new(st.theta().to_vec()).unwrap();
            let direct = loglik(st.items(), &theta, &y, st.d()).unwrap();
            assert!((st.loglik() - direct).abs() < 1e-9 * direct.abs().max(1.0));
        }
    }
    assert_eq!(
        changed.len(),
        6,
        "every block should move at least once: {changed:?}"
    );
}

#[test]
fn adaptation_runs_only_when_asked() {
    let (y, _) = three_pl_fixture();
    let mut s = Sampler::new(
        &y,
        ModelKind::TwoPcsp,
        PriorConfig::default(),
        TuningConfig::default(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    let mut st = s.init_state(&mut rng).unwrap();
    let start = s.scales().clone();
    for _ in 0..200 {
        s.sweep(&mut st, &mut rng, false);
    }
    assert_eq!(s.scales(), &start);
    for _ in 0..200 {
        s.sweep(&mut st, &mut rng, true);
    }
    let tuned = s.scales().clone();
    assert_ne!(tuned, start);
    for _ in 0..200 {
        s.sweep(&mut st, &mut rng, false);
    }
    assert_eq!(s.scales(), &tuned);
}

fn chain(iterations: usize, burnin: usize, thin: usize, seed: u64) -> ChainConfig {
    ChainConfig {
        iterations,
        burnin,
        thin,
        seed,
        chain_id: 0,
    }
}

#[test]
fn stored_draw_count() {
    let (y, _) = three_pl_fixture();
    let cfg = chain(100, 50, 5, 3);
    let store = run_chain(
        &y,
        &ModelKind::ThreePcsp,
        &PriorConfig::default(),
        &TuningConfig::default(),
        &cfg,
    )
    .unwrap();
    assert_eq!(store.draws.len(), 10);
    assert_eq!(cfg.stored_draws(), 10);
    assert_eq!(store.draws[0].iteration, 55);
    assert_eq!(store.acceptance.ab.proposed, 50 * 4);
}

#[test]
fn same_seed_same_draws() {
    let (y, _) = three_pl_fixture();
    let run = |seed, id| {
        let cfg = ChainConfig {
            chain_id: id,
            ..chain(60, 20, 2, seed)
        };
        run_chain(
            &y,
            &ModelKind::ThreePcsp,
            &PriorConfig::default(),
            &TuningConfig::default(),
            &cfg,
        )
        .unwrap()
    };
    assert_eq!(run(5, 0), run(5, 0));
    assert_ne!(run(5, 0).draws, run(6, 0).draws);
    assert_ne!(run(5, 0).draws, run(5, 1).draws);

    let parallel = run_chains(
        &y,
        &ModelKind::ThreePcsp,
        &PriorConfig::default(),
        &TuningConfig::default(),
        &chain(60, 20, 2, 5),
        3,
    )
    .unwrap();
    for (k, store) in parallel.iter().enumerate() {
        assert_eq!(store, &run(5, k as u64));
    }
}

#[test]
fn guessing_augmentation_preserves_the_response_law() {
    // alternate Y | D and D | Y: the chain's Y marginal must be
    // c + (1 - c)·Φ_CSN(m, γ)
    let (c, g, theta) = (0.3, 0.5, 0.2);
    let y1 = small_data(&[vec![1]]);
    let mut it = item(1.0, 0.0, Component::Positive);
    it.c = c;
    it.gamma_pos = g;
    let mut st = ChainState::new(vec![it], vec![theta], AuxIndicators::zeros(1, 1), &y1).unwrap();
    let mut s = Sampler::new(
        &y1,
        ModelKind::ThreePcspFixedC(vec![c]),
        PriorConfig::default(),
        TuningConfig::default(),
    )
    .unwrap();
    let p = law(g).cdf(theta);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let (batches, per_batch) = (200, 2000);
    let mut means = Vec::with_capacity(batches);
    let mut yv = 1u8;
    for _ in 0..batches {
        let mut ones = 0;
        for _ in 0..per_batch {
            let dv = if yv == 1 {
                s.step_d(&mut st, &mut rng);
                st.d().get(0, 0)
            } else {
                0
            };
            yv = if dv == 1 {
                1
            } else {
                (rng.random::<f64>() < p) as u8
            };
            ones += yv as usize;
        }
        means.push(ones as f64 / per_batch as f64);
    }
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    let se = (var / batches as f64).sqrt();
    let want = c + (1.0 - c) * p;
    assert!((mean - want).abs() < 3.0 * se, "{mean} vs {want} (se {se})");
}

// -- comparison against an independent data-augmentation Gibbs sampler --

fn normal_tail<R: Rng>(l: f64, rng: &mut R) -> f64 {
    if l < 0.45 {
        loop {
            let x: f64 = rng.sample(StandardNormal);
            if x > l {
                return x;
            }
        }
    }
    let rate = 0.5 * (l + (l * l + 4.0).sqrt());
    loop {
        let e: f64 = rng.sample(Exp1);
        let x = l + e / rate;
        if rng.random::<f64>() < (-0.5 * (x - rate).powi(2)).exp() {
            return x;
        }
    }
}

/// `N(μ, 1)` truncated to `(0, ∞)` when `positive`, else to `(-∞, 0)`.
fn truncated<R: Rng>(mu: f64, positive: bool, rng: &mut R) -> f64 {
    if positive {
        mu + normal_tail(-mu, rng)
    } else {
        -(-mu + normal_tail(mu, rng))
    }
}

/// Latent-normal Gibbs sampler for the two-parameter probit model with the
/// same priors. Returns per-draw `(a, b, θ)`.
fn probit_gibbs(
    y: &ResponseMatrix,
    iters: usize,
    burn: usize,
    seed: u64,
) -> Vec<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let pr = PriorConfig::default();
    let (ni, nj) = (y.n_items(), y.n_subjects());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![1.0; ni];
    let mut b = vec![0.0; ni];
    let mut th = vec![0.0; nj];
    let mut z = vec![0.0; ni * nj];
    let mut out = Vec::new();
    for t in 0..iters {
        for i in 0..ni {
            for j in 0..nj {
                z[i * nj + j] = truncated(a[i] * (th[j] - b[i]), y.get(i, j) == 1, &mut rng);
            }
        }
        for j in 0..nj {
            let prec = 1.0 + a.iter().map(|x| x * x).sum::<f64>();
            let s: f64 = (0..ni).map(|i| a[i] * (z[i * nj + j] + a[i] * b[i])).sum();
            th[j] = s / prec + rng.sample::<f64, _>(StandardNormal) / prec.sqrt();
        }
        for i in 0..ni {
            let zi = &z[i * nj..(i + 1) * nj];
            // a | b: regression of z on (θ - b) with a truncated normal prior
            let sa2 = pr.sigma_a * pr.sigma_a;
            let prec = 1.0 / sa2 + th.iter().map(|t| (t - b[i]).powi(2)).sum::<f64>();
            let m = (pr.mu_a / sa2 + th.iter().zip(zi).map(|(t, z)| (t - b[i]) * z).sum::<f64>())
                / prec;
            let sd = prec.sqrt().recip();
            a[i] = m + sd * normal_tail(-m / sd, &mut rng);
            // b | a: a·θ - z = a·b + ε
            let prec = 1.0 / (pr.sigma_b * pr.sigma_b) + nj as f64 * a[i] * a[i];
            let s: f64 = th.iter().zip(zi).map(|(t, z)| a[i] * (a[i] * t - z)).sum();
            let m = (pr.mu_b / (pr.sigma_b * pr.sigma_b) + s) / prec;
            b[i] = m + rng.sample::<f64, _>(StandardNormal) / prec.sqrt();
        }
        if t >= burn {
            out.push((a.clone(), b.clone(), th.clone()));
        }
    }
    out
}

fn mean_sd(x: impl Iterator<Item = f64>) -> (f64, f64) {
    let v: Vec<f64> = x.collect();
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    (
        m,
        (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt(),
    )
}

fn probit_scenario() -> Scenario {
    Scenario::new(
        200,
        vec![0.8, 1.2, 1.0, 1.5, 0.6],
        vec![-1.0, -0.3, 0.2, 0.8, 1.4],
        vec![0.0; 5],
        vec![0.0; 5],
        31,
    )
    .unwrap()
}

#[test]
fn symmetric_model_matches_latent_gibbs_reference() {
    let (y, _) = generate(&probit_scenario()).unwrap();
    let reference = probit_gibbs(&y, 22_000, 2_000, 7);
    let store = run_chain(
        &y,
        &ModelKind::TwoPno,
        &PriorConfig::default(),
        &TuningConfig::default(),
        &chain(24_000, 4_000, 1, 8),
    )
    .unwrap();
    for i in 0..5 {
        for (name, ours, theirs) in [
            (
                "a",
                mean_sd(store.draws.iter().map(|d| d.items[i].a)),
                mean_sd(reference.iter().map(|r| r.0[i])),
            ),
            (
                "b",
                mean_sd(store.draws.iter().map(|d| d.items[i].b)),
                mean_sd(reference.iter().map(|r| r.1[i])),
            ),
        ] {
            assert!(
                (ours.0 - theirs.0).abs() < 0.2 * theirs.1,
                "{name}[{i}] mean {ours:?} vs {theirs:?}"
            );
            assert!(
                (ours.1 / theirs.1 - 1.0).abs() < 0.15,
                "{name}[{i}] sd {ours:?} vs {theirs:?}"
            );
        }
    }
    let mut worst: f64 = 0.0;
    for j in 0..200 {
        let ours = mean_sd(store.draws.iter().map(|d| d.theta[j]));
        let theirs = mean_sd(reference.iter().map(|r| r.2[j]));
        worst = worst.max((ours.0 - theirs.0).abs() / theirs.1);
    }
    assert!(worst < 0.25, "worst standardised ability gap {worst}");
}

#[test]
fn abilities_are_recovered_on_small_probit_data() {
    let scenario = probit_scenario();
    let (y, truth) = generate(&scenario).unwrap();
    let store = run_chain(
        &y,
        &ModelKind::TwoPno,
        &PriorConfig::default(),
        &TuningConfig::default(),
        &chain(4000, 2000, 2, 10),
    )
    .unwrap();
    let est: Vec<f64> = summarize_abilities(&[store])
        .unwrap()
        .iter()
        .map(|a| a.mean)
        .collect();
    let r = pearson(&truth.theta, &est);
    assert!(r > 0.8, "r = {r}");
}
