//! Exact solutions of TU cooperative games defined on three lattices:
//! coalitions (`2^N`), partitions (`P^N`) and embedded subsets (`E^N`).
//!
//! A solution maps a game to one share per atom: players on `2^N`, pairs
//! of players (network edges) on `P^N`, and the `C(n+1, 2)` atoms of
//! `E^N`. The crate provides the Shapley value in both its marginal and
//! dividend forms, the size-uniform (SU) and chain-uniform (CU) solutions,
//! the egalitarian split, the Myerson value of graph-restricted games,
//! exact core feasibility and additive-separability diagnostics.
//!
//! All arithmetic is exact ([`Rational`] is a big rational); all chain
//! counts are big integers.

pub mod coresep;
pub mod error;
pub mod games;
pub mod io;
pub mod lattice;
pub mod limits;
pub mod rational;
pub mod solutions;
pub mod transform;

pub use error::{Error, Result};
pub use lattice::{
    ChainStats, ClassVector, Element, ElementClass, EmbeddedSubset, Lattice, LatticeKind, Partition,
};
pub use limits::Limits;
pub use rational::Rational;
pub use solutions::{NodeShares, Solution};
pub use transform::{LatticeGame, MobiusCoefficients};
