//! Tuning a binary reconfigurable intelligent surface (RIS) inside a dynamic
//! rich-scattering enclosure.
//!
//! The crate covers the full pipeline at desk scale:
//!
//! * [`physics`] — a 2D coupled-dipole simulator of an irregular metallic
//!   enclosure with a rotating perturber; the ground-truth channel generator.
//! * [`dataset`] — supervised data of (RIS configuration, channel moment)
//!   pairs, with persistence and train/validation/test splitting.
//! * [`surrogate`] — a from-scratch MLP regressor mapping RIS bits to
//!   per-bin mean squared channel magnitudes, trained with Adam.
//! * [`rate`] — ergodic-rate estimators: Monte-Carlo and the low-SNR
//!   moment-based approximation used as the optimization objective.
//! * [`ga`] — a genetic algorithm over bit strings (tournament selection,
//!   uniform crossover with complemented second offspring, flip-bit mutation).
//! * [`baselines`] — random-search and exhaustive-search comparison curves
//!   evaluated against the true simulator.
//!
//! Every randomized operation takes an explicit seed and is bit-reproducible;
//! see [`rng`] for the generator contract.

pub mod baselines;
pub mod config;
pub mod dataset;
pub mod error;
pub mod ga;
pub mod physics;
pub mod rate;
pub mod rng;
pub mod scenario;
pub mod surrogate;
pub(crate) mod util;

pub use error::{Error, Result};
