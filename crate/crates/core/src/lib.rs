//! The online firefighter game on the square lattice: simulation,
//! strategies, adversaries and outcome certification.

pub mod adversaries;
pub mod analysis;
pub mod config;
pub mod engine;
pub mod lattice;
pub mod render;
pub mod strategies;
pub mod trace;
