//! Explicit three-dimensional internal water waves on the f-plane.
//!
//! The wave lives in a light layer between a motionless denser layer below
//! and an upper interface. [`setup::WaveSetup`] takes the physical inputs,
//! solves the dispersion relation and returns a [`flowfield::Wave`] whose
//! positions, velocities, pressure and vorticity are all closed forms in the
//! Lagrangian labels. [`verify`] checks those closed forms against the
//! governing equations.

// `!(x < y)` is used on purpose so that NaN inputs fail the gates
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dispersion;
pub mod error;
pub mod flowfield;
pub mod geo;
pub mod setup;
pub mod verify;

pub use error::{Error, Result};
