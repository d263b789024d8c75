//! Exact verification of lower bounds `ε(X, L₁; r) >= 1/(√r + δ)` for
//! multipoint Seshadri constants of fake projective planes.
//!
//! Every inequality is decided in `ℚ(√n)` without floating point. The
//! [`engine`] enumerates candidate submaximal curves and produces an
//! [`engine::ExclusionCertificate`]; [`bounds`] holds the reference values it
//! is compared against; [`report`] and [`cli`] turn both into documents.

pub mod bounds;
pub mod cli;
pub mod engine;
pub mod error;
pub mod quad;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
