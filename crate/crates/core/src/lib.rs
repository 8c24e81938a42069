//! Deterministic and stochastic dynamics of two-state recurrent networks.
//!
//! The crate is organized around five subsystems:
//!
//! - [`network`] — the general two-state network model: topology, parameters,
//!   states, update schedules, and asynchronous threshold updates.
//! - [`hopfield`] — symmetric networks over `{-1, +1}`: the energy function,
//!   convergence runners with the `n * 2^n` cyclic bound, and Hebbian storage
//!   of pairwise-orthogonal patterns.
//! - [`gibbs`] — stochastic single-site dynamics driven by the same energy:
//!   Gibbs conditionals, random-scan stepping, chain sampling, and the
//!   zero-temperature limit.
//! - [`oracle`] — exhaustive enumeration of the `2^n` state space: the exact
//!   Boltzmann distribution, the exact random-scan transition matrix, and
//!   detailed-balance / invariance / stationary-vector checks.
//! - [`spectral`] — a Perron-Frobenius toolkit for non-negative matrices:
//!   graph irreducibility, Collatz-Wielandt brackets, and certified Perron
//!   roots and stationary distributions.
//!
//! [`verify`] ties everything together into the acceptance suite that the
//! `spinnet verify` command and the `acceptance` test target run.

pub mod error;
pub mod gibbs;
pub mod hopfield;
pub mod io;
pub mod matrix;
pub mod network;
pub mod oracle;
pub mod rng;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use gibbs::{BoltzmannMachine, SiteDistribution, Temperature};
pub use hopfield::{ConvergenceReport, HopfieldParams};
pub use matrix::SquareMatrix;
pub use network::{NetworkSpec, NetworkState, Params, Schedule, TwoState};
pub use oracle::{ColumnStochasticMatrix, ProbabilityVector};
pub use rng::RngStream;
pub use spectral::{NonNegMatrix, PerronCertificate, PositiveVector};
