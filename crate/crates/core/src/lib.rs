//! Quartic twists of the supersingular curve `y^2 + y = x^3 + x` over
//! rational function fields in characteristic 2: Artin–Schreier towers,
//! Mordell–Weil ranks from genera, the fiber at infinity, and brute-force
//! checks of all of it over small binary fields.

pub mod ascurves;
pub mod binfield;
pub mod elliptic;
pub mod error;
pub mod families;
pub mod fibration;
pub mod polyalg;
pub mod verify;

pub use error::{Error, Result};
