//! Phase-variable control of a powered knee-ankle prosthesis.
//!
//! A thigh-angle phase variable (`phase`) indexes periodic Fourier joint
//! constraints (`fourier`) fitted to a reference stride (`reference`); a PD
//! loop (`control`) tracks them. `sim` closes the loop over synthetic or
//! replayed sensor streams and `metrics` scores the resulting gait.

pub mod cli;
pub mod columns;
pub mod control;
pub mod error;
pub mod filter;
pub mod fourier;
pub mod kv;
pub mod metrics;
pub mod phase;
pub mod reference;
pub mod scalar;
pub mod sim;

pub use error::{Error, Result};
