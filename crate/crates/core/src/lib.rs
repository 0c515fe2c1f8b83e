//! Analytical bit-error probabilities and a Monte Carlo link simulator for a
//! two-relay (diamond) cooperative network using power-domain NOMA.
//!
//! The source superposes two BPSK streams `x1` (high power) and `x2` (low
//! power). Relay R1 decodes `x1` directly, relay R2 decodes `x2` with
//! successive interference cancellation (SIC). Both relays forward their
//! decisions simultaneously, and the destination separates them with SIC.
//!
//! - [`model`]: scenario description, validation and superposition energy levels
//! - [`analytic`]: closed-form and quadrature error probabilities per hop and end to end
//! - [`rayleigh`]: densities of the sum and difference of two Rayleigh variates
//! - [`priori`]: second-phase event probabilities (same-sign vs. opposite-sign relay outputs)
//! - [`sim`]: trial-level simulator used as the independent oracle

// Range checks are written `!(x > lo)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod model;
pub mod priori;
pub mod quadrature;
pub mod rayleigh;
pub mod sim;
pub mod special;
pub mod stats;

pub use error::{Error, QuadratureError, Result, ValidationError, Violation};
