//! The file-driven workflow used by the command-line tool: write data and
//! a config file, fit from the config, store the draws, read them back and
//! summarise.
//!
//! cargo run --release --example config_pipeline

use skewirt::io::{self, format_item_summaries, read_config, read_draws_dir, write_draws};
use skewirt::pipeline;
use skewirt::summary::summarize_items;
use skewirt::synth::{generate, preset};

fn main() -> skewirt::Result<()> {
    let dir = std::env::temp_dir().join("skewirt-pipeline");
    let (y, _) = generate(&preset("all-asymmetric-40", 400, 1)?)?;
    io::write_responses(&dir.join("responses.csv"), &y)?;
    io::write_text(
        &dir.join("run.cfg"),
        "# two chains of the three-parameter model, one item left out\n\
         model = 3pcsp\n\
         priors.dirichlet = 0.05, 0.01, 0.01\n\
         mcmc.iterations = 600\n\
         mcmc.burnin = 300\n\
         mcmc.thin = 3\n\
         mcmc.chains = 2\n\
         mcmc.seed = 12\n\
         data.responses = responses.csv\n\
         data.exclude_items = item20\n",
    )?;

    let cfg = read_config(&dir.join("run.cfg"))?;
    let stores = pipeline::fit(&cfg)?;
    let draws = dir.join("draws");
    for s in &stores {
        write_draws(s, &draws.join(io::draws_file_name(s.chain_id)))?;
    }
    let back = read_draws_dir(&draws)?;
    assert_eq!(back, stores, "draw files reproduce the stores exactly");

    let table = format_item_summaries(&summarize_items(&back, 0.95)?);
    for line in table.lines().take(6) {
        println!("{line}");
    }
    println!(
        "... {} items; files under {}",
        back[0].n_items(),
        dir.display()
    );
    Ok(())
}
