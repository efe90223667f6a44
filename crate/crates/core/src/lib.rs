//! Risk prioritization of failure modes from multi-expert linguistic
//! judgments.
//!
//! The crate covers the full workflow:
//!
//! - [`fuzzy`]: triangular fuzzy numbers, Z-numbers and the linguistic scales.
//! - [`swara`]: Z-SWARA criterion weights from ranked expert judgments.
//! - [`waspas`]: Z-WASPAS alternative ranking and the fuzzy-WASPAS baseline.
//! - [`fmea`]: conventional RPN scoring over SODCT factors and the
//!   three-method comparison.
//! - [`sensitivity`]: weight-case sweeps and rank-stability reporting.
//! - [`stats`]: questionnaire statistics (Cronbach's alpha, Kruskal-Wallis,
//!   mean ranks, moderated regression).
//! - [`io`]: CSV/JSON ingestion, analysis orchestration and report emission.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod error;
pub mod fmea;
pub mod fuzzy;
pub mod io;
pub mod ranking;
pub mod sensitivity;
pub mod stats;
pub mod swara;
pub mod waspas;

pub use error::{Error, Result};
pub use fuzzy::{Tfn, ZNumber};
