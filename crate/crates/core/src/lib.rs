//! Exact-arithmetic toolkit for MDS convolutional codes over finite fields.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! gf -> polymat -> minorlab -> { distance | criteria -> planner -> search }
//! ```
//!
//! * [`gf`] — exact arithmetic in GF(p^m), primitive elements, moduli.
//! * [`polymat`] — polynomial generator matrices, block-matrix windows,
//!   encoding, reverse codes and the code file format.
//! * [`minorlab`] — trivially-zero detection, full-size-minor certification
//!   and superregularity tests.
//! * [`distance`] — column distances, reverse column distances and free
//!   distance (trellis and brute-force oracles).
//! * [`criteria`] — the sufficiency certificates for MDS-ness, plus the
//!   prior-work comparison checker.
//! * [`planner`] — condition-relaxation procedures that weaken the
//!   certificate matrices as far as the weight accounting allows.
//! * [`search`] — the explicit power-of-alpha construction and seeded
//!   candidate search over small fields.
//! * [`reference`] — the bundled reference codes used by `verify-paper`.

pub mod criteria;
pub mod distance;
pub mod gf;
pub mod mat;
pub mod minorlab;
pub mod planner;
pub mod polymat;
pub mod reference;
pub mod search;
