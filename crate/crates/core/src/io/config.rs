//! Run configuration as flat `key = value` lines with dotted keys:
//!
//! ```text
//! # comments and blank lines are ignored
//! model = 3pcsp
//! priors.dirichlet = 0.05, 0.01, 0.01
//! mcmc.iterations = 10000
//! data.responses = responses.csv
//! ```
//!
//! Every key is optional except `data.responses`; defaults are those of
//! [`PriorConfig`], [`TuningConfig`] and [`McmcConfig`]. Relative paths are
//! resolved against the directory of the config file.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::PriorConfig;
use crate::sampler::{ChainConfig, TuningConfig};

/// Model family named in a config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelName {
    TwoPno,
    TwoPcsp,
    ThreePcsp,
    ThreePcspFixedC,
}

impl ModelName {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "2pno" => ModelName::TwoPno,
            "2pcsp" => ModelName::TwoPcsp,
            "3pcsp" => ModelName::ThreePcsp,
            "3pcsp-fixed-c" => ModelName::ThreePcspFixedC,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McmcConfig {
    pub iterations: usize,
    pub burnin: usize,
    pub thin: usize,
    pub chains: usize,
    pub seed: u64,
}

impl Default for McmcConfig {
    fn default() -> Self {
        McmcConfig {
            iterations: 10_000,
            burnin: 5_000,
            thin: 5,
            chains: 4,
            seed: 1,
        }
    }
}

impl McmcConfig {
    /// Settings of the first chain; the others follow with consecutive
    /// chain ids.
    pub fn chain(&self) -> ChainConfig {
        ChainConfig {
            iterations: self.iterations,
            burnin: self.burnin,
            thin: self.thin,
            seed: self.seed,
            chain_id: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DataConfig {
    pub responses: PathBuf,
    pub fixed_c: Option<PathBuf>,
    pub exclude_items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelName,
    pub priors: PriorConfig,
    pub tuning: TuningConfig,
    pub mcmc: McmcConfig,
    pub data: DataConfig,
}

pub fn read_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_config(&text, base)
}

fn floats<const N: usize>(key: &str, value: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("{key} takes {N} comma-separated numbers"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p
            .parse()
            .map_err(|_| format!("{key}: '{p}' is not a number"))?;
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("{key}: '{value}' is not a valid value"))
}

pub fn parse_config(text: &str, base: &Path) -> Result<RunConfig> {
    let mut model = ModelName::ThreePcsp;
    let mut priors = PriorConfig::default();
    let mut tuning = TuningConfig::default();
    let mut mcmc = McmcConfig::default();
    let mut data = DataConfig::default();
    let mut have_responses = false;
    let mut seen = HashSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Config(format!("line {}: {message}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected 'key = value', found '{line}'")))?;
        if !seen.insert(key.to_string()) {
            return Err(err(format!("duplicate key '{key}'")));
        }
        let path = |v: &str| base.join(v);
        let set: std::result::Result<(), String> = (|| {
            match key {
                "model" => {
                    model = ModelName::parse(value).ok_or_else(|| {
                        format!("unknown model '{value}' (2pno, 2pcsp, 3pcsp, 3pcsp-fixed-c)")
                    })?
                }
                "priors.dirichlet" => priors.dirichlet = floats::<3>(key, value)?,
                "priors.beta_skew" => {
                    let [a, b] = floats::<2>(key, value)?;
                    priors.beta_skew = (a, b);
                }
                "priors.mu_a" => priors.mu_a = number(key, value)?,
                "priors.sigma_a" => priors.sigma_a = number(key, value)?,
                "priors.mu_b" => priors.mu_b = number(key, value)?,
                "priors.sigma_b" => priors.sigma_b = number(key, value)?,
                "priors.beta_guess" => {
                    let [a, b] = floats::<2>(key, value)?;
                    priors.beta_guess = (a, b);
                }
                "tuning.tau_gamma_neg" => tuning.tau_gamma_neg = number(key, value)?,
                "tuning.tau_gamma_pos" => tuning.tau_gamma_pos = number(key, value)?,
                "tuning.sigma_ab" => tuning.sigma_ab = floats::<3>(key, value)?,
                "tuning.sigma_theta" => tuning.sigma_theta = number(key, value)?,
                "tuning.adapt_target" => tuning.adapt_target = number(key, value)?,
                "tuning.adapt_target_ab" => tuning.adapt_target_ab = number(key, value)?,
                "tuning.adapt_window" => tuning.adapt_window = number(key, value)?,
                "mcmc.iterations" => mcmc.iterations = number(key, value)?,
                "mcmc.burnin" => mcmc.burnin = number(key, value)?,
                "mcmc.thin" => mcmc.thin = number(key, value)?,
                "mcmc.chains" => mcmc.chains = number(key, value)?,
                "mcmc.seed" => mcmc.seed = number(key, value)?,
                "data.responses" => {
                    data.responses = path(value);
                    have_responses = true;
                }
                "data.fixed_c" => data.fixed_c = Some(path(value)),
                "data.exclude_items" => {
                    data.exclude_items = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect()
                }
                _ => return Err(format!("unknown key '{key}'")),
            }
            Ok(())
        })();
        set.map_err(err)?;
    }

    if !have_responses {
        return Err(Error::Config(
            "missing required key 'data.responses'".into(),
        ));
    }
    if (model == ModelName::ThreePcspFixedC) != data.fixed_c.is_some() {
        return Err(Error::Config(
            "data.fixed_c must be given exactly when model = 3pcsp-fixed-c".into(),
        ));
    }
    if mcmc.chains == 0 {
        return Err(Error::Config("mcmc.chains must be at least 1".into()));
    }
    priors.validate()?;
    tuning.validate()?;
    mcmc.chain().validate()?;
    Ok(RunConfig {
        model,
        priors,
        tuning,
        mcmc,
        data,
    })
}
