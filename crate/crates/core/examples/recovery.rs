//! Parameter recovery on a simulated symmetric test: RMSE and correlation
//! of posterior means against the generating values, and the confusion
//! matrix of the symmetry classification.
//!
//! cargo run --release --example recovery

use skewirt::io::format_recovery;
use skewirt::summary::{recovery_report, summarize_abilities, summarize_items};
use skewirt::synth::{generate, preset};
use skewirt::{run_chain, ChainConfig, ModelKind, PriorConfig, TuningConfig};

fn main() -> skewirt::Result<()> {
    let scenario = preset("all-symmetric-40", 1000, 8)?;
    let (y, theta) = generate(&scenario)?;
    let chain = ChainConfig {
        iterations: 2000,
        burnin: 1000,
        thin: 2,
        seed: 3,
        chain_id: 0,
    };
    for model in [ModelKind::TwoPno, ModelKind::TwoPcsp] {
        let store = run_chain(
            &y,
            &model,
            &PriorConfig::default(),
            &TuningConfig::default(),
            &chain,
        )?;
        let stores = [store];
        let report = recovery_report(
            &summarize_items(&stores, 0.95)?,
            &summarize_abilities(&stores)?,
            &scenario,
            &theta,
        )?;
        println!("== {} ==", model.name());
        print!("{}", format_recovery(&report));
        println!("classification accuracy {:.3}\n", report.accuracy());
    }
    Ok(())
}
