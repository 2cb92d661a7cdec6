//! Three-parameter fits: guessing estimated through the latent guess
//! indicators, and guessing fixed at known values with some items
//! excluded.
//!
//! cargo run --release --example fixed_guessing

use skewirt::summary::summarize_items;
use skewirt::synth::{generate, Scenario};
use skewirt::{run_chain, ChainConfig, ModelKind, PriorConfig, TuningConfig};

fn main() -> skewirt::Result<()> {
    let true_c = vec![0.25, 0.1, 0.2, 0.0, 0.15, 0.3];
    let scenario = Scenario::new(
        2000,
        vec![1.2, 0.9, 1.6, 1.0, 1.4, 0.8],
        vec![-0.8, -0.2, 0.0, 0.4, 0.9, 1.3],
        true_c.clone(),
        vec![0.0, -0.6, 0.0, 0.7, 0.0, 0.0],
        5,
    )?;
    let (y, _) = generate(&scenario)?;
    let chain = ChainConfig {
        iterations: 3000,
        burnin: 1500,
        thin: 3,
        seed: 2,
        chain_id: 0,
    };
    let priors = PriorConfig {
        dirichlet: [1.0, 0.5, 0.5],
        ..PriorConfig::default()
    };
    let tuning = TuningConfig::default();

    let estimated = run_chain(&y, &ModelKind::ThreePcsp, &priors, &tuning, &chain)?;
    println!("estimated guessing (prior Beta{:?}):", priors.beta_guess);
    for (s, c) in summarize_items(&[estimated], 0.9)?.iter().zip(&true_c) {
        println!(
            "  {}: c = {:.3} [{:.3}, {:.3}] (true {c}), class {}",
            s.item_id,
            s.post_mean_c,
            s.ci_c.lo,
            s.ci_c.hi,
            s.classification.label()
        );
    }

    // drop an item and hold guessing at the generating values
    let kept = y.without_items(&["item6".to_string()])?;
    let model = ModelKind::ThreePcspFixedC(true_c[..5].to_vec());
    let fixed = run_chain(&kept, &model, &priors, &tuning, &chain)?;
    println!("\nguessing fixed, item6 excluded:");
    for s in summarize_items(&[fixed], 0.9)? {
        println!(
            "  {}: a = {:.3}, b = {:.3}, c = {}",
            s.item_id, s.post_mean_a, s.post_mean_b, s.post_mean_c
        );
    }
    Ok(())
}
