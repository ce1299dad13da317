//! Fixtures shared by the criterion benches.

use std::sync::Arc;

use lattice_games::rational::ratio;
use lattice_games::{Lattice, LatticeGame, LatticeKind, Limits};

pub fn lattice(kind: LatticeKind, n: usize) -> Arc<Lattice> {
    Lattice::new(kind, n, &Limits::default()).expect("bench lattice within cap")
}

/// Deterministic pseudo-random rational game (linear congruential values).
pub fn pseudo_random_game(lattice: &Arc<Lattice>, seed: u64) -> LatticeGame {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    LatticeGame::from_fn(lattice.clone(), |_| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let numer = ((state >> 33) % 19) as i64 - 9;
        let denom = ((state >> 17) % 5) as i64 + 1;
        ratio(numer, denom)
    })
}
