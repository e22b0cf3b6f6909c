//! Deterministic simulator of UAV-provided emergency wireless coverage.
//!
//! After a disaster takes the terrestrial network down, a UAV hovers over
//! the zone and ground devices with enough residual energy are elected as
//! cluster heads: they pick up the UAV's coverage on a ground-to-air link
//! and redistribute it to nearby devices over short-range D2D. This crate
//! models that uplink end to end:
//!
//! * [`geometry`] — slant distance, ground range, elevation angle;
//! * [`channel`] — sigmoid LoS probability and its inverse, coverage
//!   bounds, received power, minimum transmit power, QPSK BER;
//! * [`clustering`] — Poisson-disc device placement, residual-energy head
//!   election, nearest-head member assignment;
//! * [`scenario`] — per-head link reports, the five standard parameter
//!   sweeps, minimum-altitude planning, end-to-end runs;
//! * [`config`], [`commands`], [`report`], [`plot`] — JSON configuration,
//!   the CLI command bodies, CSV/JSON emitters, and SVG charts.
//!
//! Everything is seeded and byte-stable: the same configuration always
//! produces identical files. Start with the runnable programs under
//! `examples/`, for instance:
//!
//! ```bash
//! cargo run --example single_link
//! cargo run --example figure_sweeps
//! ```

pub mod channel;
pub mod clustering;
pub mod commands;
pub mod config;
mod erf;
pub mod error;
pub mod fmt;
pub mod geometry;
pub mod plot;
pub mod report;
pub mod rng;
pub mod scenario;

pub use error::{Error, Result};
