//! Host-side companion to `lucaskit-core`: the `lucaskit` command line,
//! multi-threaded verification sweeps, per-modulus evaluator caching and
//! environment configuration.

pub mod cache;
pub mod cli;
pub mod config;
pub mod parallel;

pub use lucaskit_core as core;
