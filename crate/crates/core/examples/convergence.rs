//! Several chains from one seed on separate random streams, then effective
//! sample sizes, split R-hat and acceptance rates.
//!
//! cargo run --release --example convergence

use skewirt::io::format_acceptance;
use skewirt::summary::diagnostics;
use skewirt::synth::{generate, preset};
use skewirt::{run_chains, ChainConfig, ModelKind, PriorConfig, TuningConfig};

fn main() -> skewirt::Result<()> {
    let (y, _) = generate(&preset("all-symmetric-40", 500, 4)?)?;
    let chain = ChainConfig {
        iterations: 2000,
        burnin: 1000,
        thin: 2,
        seed: 10,
        chain_id: 0,
    };
    let stores = run_chains(
        &y,
        &ModelKind::TwoPcsp,
        &PriorConfig::default(),
        &TuningConfig::default(),
        &chain,
        4,
    )?;
    let diag = diagnostics(&stores)?;

    let mut worst: Vec<_> = diag.params.iter().filter(|p| p.rhat.is_some()).collect();
    worst.sort_by(|a, b| b.rhat.unwrap().total_cmp(&a.rhat.unwrap()));
    println!("largest split R-hat:");
    for p in worst.iter().take(8) {
        println!(
            "  {:<10} R-hat {:.3}  ESS {:.0}",
            p.name,
            p.rhat.unwrap(),
            p.ess.unwrap_or(f64::NAN)
        );
    }
    let constant = diag.params.iter().filter(|p| p.constant).count();
    println!("{constant} parameters are constant (e.g. c in a two-parameter fit)");
    println!(
        "min ESS {:.0}, max R-hat {:.3}\n",
        diag.min_ess().unwrap(),
        diag.max_rhat().unwrap()
    );
    print!("{}", format_acceptance(&diag));
    Ok(())
}
