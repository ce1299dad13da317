//! Moving games and solutions along `E^n ≅ P^{n+1}`.

use std::sync::Arc;

use num_traits::Zero;

use super::Solution;
use crate::error::{Error, Result};
use crate::lattice::{Element, Lattice, LatticeKind};
use crate::rational::Rational;
use crate::transform::LatticeGame;

fn check_pair(embedded: &Lattice, plus: &Lattice) -> Result<()> {
    if embedded.kind() != LatticeKind::Embedded {
        return Err(Error::WrongLattice {
            expected: LatticeKind::Embedded.name(),
            found: embedded.kind().name(),
        });
    }
    if plus.kind() != LatticeKind::Partitions {
        return Err(Error::WrongLattice {
            expected: LatticeKind::Partitions.name(),
            found: plus.kind().name(),
        });
    }
    if plus.n() != embedded.n() + 1 {
        return Err(Error::domain(format!(
            "E^N over {} players pairs with P^N over {}, not {}",
            embedded.n(),
            embedded.n() + 1,
            plus.n()
        )));
    }
    Ok(())
}

/// `image[x]` is the index in `plus` of the embedded element `x`.
fn element_map(embedded: &Lattice, plus: &Lattice) -> Result<Vec<usize>> {
    check_pair(embedded, plus)?;
    embedded
        .elements()
        .iter()
        .map(|e| match e {
            Element::Embedded(e) => plus.index_of(&Element::Partition(e.to_plus_partition())),
            _ => unreachable!(),
        })
        .collect()
}

fn atom_map(embedded: &Lattice, plus: &Lattice, image: &[usize]) -> Vec<usize> {
    embedded
        .atoms()
        .iter()
        .map(|&x| plus.atom_position(image[x]).expect("atoms map to atoms"))
        .collect()
}

pub fn transport_game_to_plus(h: &LatticeGame, plus: &Arc<Lattice>) -> Result<LatticeGame> {
    let image = element_map(h.lattice(), plus)?;
    let mut values = vec![Rational::zero(); plus.len()];
    for (x, &y) in image.iter().enumerate() {
        values[y] = h.value(x).clone();
    }
    LatticeGame::new(plus.clone(), values)
}

pub fn transport_game_from_plus(f: &LatticeGame, embedded: &Arc<Lattice>) -> Result<LatticeGame> {
    let image = element_map(embedded, f.lattice())?;
    LatticeGame::new(embedded.clone(), image.iter().map(|&y| f.value(y).clone()).collect())
}

/// Relabels shares of an `E^n` solution onto the atoms of `P^{n+1}`.
pub fn transport_solution_to_plus(sol: &Solution, plus: &Arc<Lattice>) -> Result<Solution> {
    let image = element_map(sol.lattice(), plus)?;
    let atoms = atom_map(sol.lattice(), plus, &image);
    let mut shares = vec![Rational::zero(); plus.num_atoms()];
    for (a, &b) in atoms.iter().enumerate() {
        shares[b] = sol.share(a).clone();
    }
    Ok(Solution::new(plus.clone(), shares)?.with_bottom_shift(sol.bottom_shift().clone()))
}

pub fn transport_solution_from_plus(sol: &Solution, embedded: &Arc<Lattice>) -> Result<Solution> {
    let image = element_map(embedded, sol.lattice())?;
    let atoms = atom_map(embedded, sol.lattice(), &image);
    let shares = atoms.iter().map(|&b| sol.share(b).clone()).collect();
    Ok(Solution::new(embedded.clone(), shares)?.with_bottom_shift(sol.bottom_shift().clone()))
}
