//! Shooting-based numerics for one-dimensional p-Laplacian eigenvalue,
//! half-eigenvalue and bifurcation problems with jumping nonlinearities.

pub mod branch;
pub mod cli;
pub mod comparison;
pub mod error;
pub mod ivp;
pub mod problem;
pub mod roots;
pub mod scalar;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Sign;
