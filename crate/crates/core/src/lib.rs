//! Exact cycle and cut spaces of finite graphs, invariant and minimal
//! projections onto cycle spaces, and transportation cost norms.

pub mod caps;
pub mod cube;
pub mod error;
pub mod family;
pub mod graph;
pub mod invariant;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod symmetry;
pub mod transport;

pub use caps::Caps;
pub use error::{Error, Result};
pub use linalg::RatMatrix;
pub use rational::Rational;
