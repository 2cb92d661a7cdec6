//! Fit the two-parameter mixture skew-probit model to simulated data and
//! print the per-item summary table: posterior means, component
//! probabilities and the skewness of the most likely component.
//!
//! cargo run --release --example fit_skew_mixture

use skewirt::io::format_item_summaries;
use skewirt::summary::summarize_items;
use skewirt::synth::{generate, preset};
use skewirt::{run_chains, ChainConfig, ModelKind, PriorConfig, TuningConfig};

fn main() -> skewirt::Result<()> {
    let scenario = preset("all-asymmetric-40", 1000, 3)?;
    let (y, _) = generate(&scenario)?;
    let priors = PriorConfig {
        dirichlet: [0.05, 0.01, 0.01],
        ..PriorConfig::default()
    };
    let chain = ChainConfig {
        iterations: 2000,
        burnin: 1000,
        thin: 2,
        seed: 1,
        chain_id: 0,
    };
    let stores = run_chains(
        &y,
        &ModelKind::TwoPcsp,
        &priors,
        &TuningConfig::default(),
        &chain,
        2,
    )?;
    let items = summarize_items(&stores, 0.95)?;
    print!("{}", format_item_summaries(&items));

    eprintln!("\n true gamma  Z0    Z1    Z2    class      gamma_est");
    for (s, g) in items.iter().zip(&scenario.true_gamma) {
        eprintln!(
            "{g:+10.2}  {:.2}  {:.2}  {:.2}  {:<9}  {:+.2}",
            s.z_probs[0],
            s.z_probs[1],
            s.z_probs[2],
            s.classification.label(),
            s.gamma_est
        );
    }
    Ok(())
}
