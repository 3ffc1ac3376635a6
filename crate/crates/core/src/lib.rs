//! Numerics for the softmax seam: dual potentials, screen forms, and replicator flows.
//!
//! - [`duality`]: log-sum-exp, negative entropy, softmax, the zero-mean gauge and the Fenchel–Young gap.
//! - [`geometry`]: pointwise `α`, `dα`, `ω_q`, their coordinate matrices and rank/kernel reports.
//! - [`flows`]: bias shifts and the replicator flow to the softmax equilibrium.
//! - [`figures`]: grid datasets and their CSV/JSON/SVG encodings.
//! - [`verify`]: seeded property suites over all of the above.

pub mod duality;
pub mod error;
pub mod figures;
pub mod flows;
pub mod geometry;
pub mod linalg;
pub mod verify;

pub use duality::{GapReport, LogitClass, Logits, Probabilities};
pub use error::{Error, Result};
pub use geometry::{CollarPoint, CollarTangent, RankReport, SeamDiagnostics};
