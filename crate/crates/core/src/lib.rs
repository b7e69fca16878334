//! Exact verification toolkit for generalized complex structures on complex
//! tori, their B-field transforms and mirror duals, trivial gerbes with flat
//! connections, and the line-bundle objects on both sides of the mirror.
//!
//! Everything is computed over the Gaussian rationals; π is a formal symbol
//! in form coefficients, so every identity is checked exactly.

pub mod bundles;
pub mod dg;
pub mod forms;
pub mod gcs;
pub mod gerbe;
pub mod linalg;
pub mod report;
pub mod sample;
pub mod section;
pub mod symplectic;
