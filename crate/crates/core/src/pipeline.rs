//! Config-driven fitting: load the data a [`RunConfig`] points to, apply
//! item exclusions, and run the chains.

use crate::error::Result;
use crate::io::{read_fixed_c, read_responses, ModelName, RunConfig};
use crate::model::ResponseMatrix;
use crate::sampler::{run_chains, DrawStore, ModelKind};

/// Response matrix with excluded items removed, and the model to fit.
pub fn prepare(cfg: &RunConfig) -> Result<(ResponseMatrix, ModelKind)> {
    let full = read_responses(&cfg.data.responses)?;
    let y = if cfg.data.exclude_items.is_empty() {
        full.clone()
    } else {
        full.without_items(&cfg.data.exclude_items)?
    };
    let model = match cfg.model {
        ModelName::TwoPno => ModelKind::TwoPno,
        ModelName::TwoPcsp => ModelKind::TwoPcsp,
        ModelName::ThreePcsp => ModelKind::ThreePcsp,
        ModelName::ThreePcspFixedC => {
            let path = cfg
                .data
                .fixed_c
                .as_ref()
                .expect("validated with the config");
            let all = read_fixed_c(path, full.item_ids())?;
            let kept = full
                .item_ids()
                .iter()
                .zip(all)
                .filter(|(id, _)| !cfg.data.exclude_items.contains(id))
                .map(|(_, c)| c)
                .collect();
            ModelKind::ThreePcspFixedC(kept)
        }
    };
    Ok((y, model))
}

/// Runs `mcmc.chains` chains on chain ids `0..chains`.
pub fn fit(cfg: &RunConfig) -> Result<Vec<DrawStore>> {
    let (y, model) = prepare(cfg)?;
    let mut stores = run_chains(
        &y,
        &model,
        &cfg.priors,
        &cfg.tuning,
        &cfg.mcmc.chain(),
        cfg.mcmc.chains,
    )?;
    if !cfg.data.exclude_items.is_empty() {
        let excluded = cfg.data.exclude_items.join(", ");
        for s in &mut stores {
            s.config
                .push(("data.exclude_items".into(), excluded.clone()));
        }
    }
    Ok(stores)
}
