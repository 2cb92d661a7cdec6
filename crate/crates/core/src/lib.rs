//! Finite-mixture centred skew-probit item response models.
//!
//! The item characteristic curve is
//! `P(y = 1 | θ) = c + (1 - c)·Φ_CSN(a(θ - b); γ)`, where `Φ_CSN` is the
//! cdf of a skew-normal law standardised to mean zero and unit variance
//! with Pearson skewness `γ`. Each item's `γ` comes from a three-way
//! mixture of a point mass at zero, a negative and a positive component,
//! which lets the sampler classify items as symmetric or skewed.

pub mod csn;
pub mod error;
pub mod io;
pub mod model;
pub mod normal;
pub mod owen;
pub mod pipeline;
mod quad;
pub mod sampler;
pub mod summary;
pub mod synth;

pub use csn::{Csn, Skewness, GAMMA_MAX};
pub use error::{Error, Result};
pub use model::{Abilities, AuxIndicators, Component, ItemState, PriorConfig, ResponseMatrix};
pub use sampler::{run_chain, run_chains, ChainConfig, DrawStore, ModelKind, TuningConfig};
