//! Distance graphs over `F_q^d` and over discretized AD-regular
//! fractals, with exact extremal-graph oracles.
//!
//! - [`field`]: arithmetic in `F_{p^k}` and the quadratic norm on `F_q^d`.
//! - [`graphs`]: bitset graphs, the cycle/path/hypercube/shattering catalog,
//!   bipartitions and subgraph containment.
//! - [`ffgeom`]: point sets, distance histograms, the distance-count
//!   remainder check and `G`-distance sets.
//! - [`extremal`]: exact `ex(n, G)` and the threshold exponent arithmetic.
//! - [`adreg`]: Cantor-product clouds, greedy nets, annulus statistics,
//!   approximate distance graphs and `(G, t, eps)`-approximations.
//! - [`experiments`]: seeded sweeps, configs and CSV/JSON reports.

pub mod adreg;
pub mod experiments;
pub mod extremal;
pub mod ffgeom;
pub mod field;
pub mod graphs;
pub mod limits;
pub mod rng;

pub use limits::Limits;
