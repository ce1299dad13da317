//! Point-valued solutions: shares on atoms.
//!
//! A [`Solution`] assigns one share to every atom. Expanding it by
//! summing shares below each element gives a lattice function whose
//! Möbius inversion lives on atoms only.

mod shapley;
mod split;
mod transport;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::games::{symmetric_expand, SymmetricGame};
use crate::lattice::chains::pair_ratio_closed_form;
use crate::lattice::{ClassVector, Element, Lattice, LatticeKind};
use crate::rational::{int, Rational};
use crate::transform::{mobius, LatticeGame};

pub use shapley::{graph_restrict, myerson, shapley_chain, shapley_dividends};
pub use split::{split_to_nodes, EdgeWeights, NodeShares};
pub use transport::{
    transport_game_from_plus, transport_game_to_plus, transport_solution_from_plus,
    transport_solution_to_plus,
};

/// Shares per atom, in the lattice's canonical atom order.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    lattice: Arc<Lattice>,
    shares: Vec<Rational>,
    bottom_shift: Rational,
}

impl Solution {
    pub fn new(lattice: Arc<Lattice>, shares: Vec<Rational>) -> Result<Self> {
        if shares.len() != lattice.num_atoms() {
            return Err(Error::domain(format!(
                "{} shares for {} atoms",
                shares.len(),
                lattice.num_atoms()
            )));
        }
        Ok(Solution {
            lattice,
            shares,
            bottom_shift: Rational::zero(),
        })
    }

    pub fn zero(lattice: Arc<Lattice>) -> Self {
        let shares = vec![Rational::zero(); lattice.num_atoms()];
        Solution {
            lattice,
            shares,
            bottom_shift: Rational::zero(),
        }
    }

    /// Records the constant subtracted from the game before solving.
    pub fn with_bottom_shift(mut self, shift: Rational) -> Self {
        self.bottom_shift = shift;
        self
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn shares(&self) -> &[Rational] {
        &self.shares
    }

    /// Share of the atom at position `atom`.
    pub fn share(&self, atom: usize) -> &Rational {
        &self.shares[atom]
    }

    /// Share of the atom with the given key, e.g. `"1,2"` on `P^N`.
    pub fn share_of(&self, key: &str) -> Result<&Rational> {
        Ok(&self.shares[self.lattice.parse_atom(key)?])
    }

    pub fn bottom_shift(&self) -> &Rational {
        &self.bottom_shift
    }

    /// `Σ_a φ_a`.
    pub fn total(&self) -> Rational {
        self.shares.iter().sum()
    }

    /// `(atom key, share)` pairs in canonical order.
    pub fn entries(&self) -> Vec<(String, &Rational)> {
        (0..self.shares.len())
            .map(|a| (self.lattice.atom_key(a), &self.shares[a]))
            .collect()
    }

    pub fn scaled(&self, alpha: &Rational) -> Solution {
        Solution {
            lattice: self.lattice.clone(),
            shares: self.shares.iter().map(|s| s * alpha).collect(),
            bottom_shift: &self.bottom_shift * alpha,
        }
    }
}

/// The solvers the command line exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Shapley,
    Su,
    Cu,
    Egalitarian,
    Myerson,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Shapley => "shapley",
            Solver::Su => "su",
            Solver::Cu => "cu",
            Solver::Egalitarian => "egalitarian",
            Solver::Myerson => "myerson",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "shapley" => Ok(Solver::Shapley),
            "su" | "size-uniform" => Ok(Solver::Su),
            "cu" | "chain-uniform" => Ok(Solver::Cu),
            "egalitarian" | "eg" => Ok(Solver::Egalitarian),
            "myerson" => Ok(Solver::Myerson),
            other => Err(Error::parse(format!("unknown solver {other:?}"))),
        }
    }
}

/// Runs `solver` on `f`, first subtracting `f(x_⊥)` when `normalize` is set.
/// Myerson needs a graph and is not handled here.
pub fn solve(solver: Solver, f: &LatticeGame, normalize: bool) -> Result<Solution> {
    let (game, shift) = if normalize {
        f.normalized()
    } else {
        (f.clone(), Rational::zero())
    };
    let sol = match solver {
        Solver::Shapley => shapley_chain(&game)?,
        Solver::Su => su(&game),
        Solver::Cu => cu(&game),
        Solver::Egalitarian => egalitarian(&game),
        Solver::Myerson => {
            return Err(Error::domain("the Myerson value needs a communication graph"));
        }
    };
    Ok(sol.with_bottom_shift(shift))
}

/// Size-uniform: `φ_a = Σ_{x≥a} μ^f(x)/s(x)`.
pub fn su(f: &LatticeGame) -> Solution {
    let l = f.lattice().clone();
    let mu = mobius(f);
    let mut shares = vec![Rational::zero(); l.num_atoms()];
    for x in 1..l.len() {
        let m = mu.get(x);
        if m.is_zero() {
            continue;
        }
        let part = m / int(l.size(x) as i64);
        for (a, share) in shares.iter_mut().enumerate() {
            if l.atom_below(a, x) {
                *share += &part;
            }
        }
    }
    Solution {
        lattice: l,
        shares,
        bottom_shift: Rational::zero(),
    }
}

/// Chain-uniform: `φ_a = Σ_{x⋡a} (κ_x^a/κ)·[f(x∨a)−f(x)]/[s(x∨a)−s(x)]`.
pub fn cu(f: &LatticeGame) -> Solution {
    let n = f.lattice().n();
    cu_with_ratios(f, |l, x| pair_ratio_closed_form(n, l.element(x)))
}

/// The chain-uniform sum with a caller-supplied ratio table `x ↦ κ_x^a/κ`.
pub fn cu_with_ratios(f: &LatticeGame, ratio: impl Fn(&Lattice, usize) -> Rational) -> Solution {
    let l = f.lattice().clone();
    let mut shares = vec![Rational::zero(); l.num_atoms()];
    for x in 0..l.top() {
        let weight = ratio(&l, x);
        for (a, share) in shares.iter_mut().enumerate() {
            let y = l.join_atom(x, a);
            if y == x {
                continue;
            }
            let jump = int((l.size(y) - l.size(x)) as i64);
            *share += &weight * (f.value(y) - f.value(x)) / jump;
        }
    }
    Solution {
        lattice: l,
        shares,
        bottom_shift: Rational::zero(),
    }
}

/// Chain-uniform shares by walking every maximal chain: each covering step
/// `x ⋖ y` credits `[f(y)−f(x)]/[s(y)−s(x)]` to every atom `a ⋠ x` with
/// `x ∨ a = y`, and the credit is averaged over all chains.
pub fn cu_chain_oracle(f: &LatticeGame) -> Result<Solution> {
    let l = f.lattice().clone();
    let chains = l.maximal_chains()?;
    let mut shares = vec![Rational::zero(); l.num_atoms()];
    for chain in &chains {
        for step in chain.windows(2) {
            let (x, y) = (step[0], step[1]);
            let jump = int((l.size(y) - l.size(x)) as i64);
            let credit = (f.value(y) - f.value(x)) / jump;
            for (a, share) in shares.iter_mut().enumerate() {
                if l.join_atom(x, a) == y {
                    *share += &credit;
                }
            }
        }
    }
    let count = int(chains.len() as i64);
    for s in &mut shares {
        *s /= &count;
    }
    Solution::new(l, shares)
}

/// `φ_a = [f(x^⊤) − f(x_⊥)] / |atoms|` for every atom.
pub fn egalitarian(f: &LatticeGame) -> Solution {
    let l = f.lattice().clone();
    if l.num_atoms() == 0 {
        return Solution::zero(l);
    }
    let each = (f.top_value() - f.bottom_value()) / int(l.num_atoms() as i64);
    Solution {
        shares: vec![each; l.num_atoms()],
        lattice: l,
        bottom_shift: Rational::zero(),
    }
}

/// Closed form for symmetric games: the top worth spread evenly over atoms.
///
/// On `E^N` the atoms `(i, P_⊥)` and `(∅, [ij])` lie in different classes,
/// so class symmetry alone does not force equal shares. There the game must
/// also be symmetric as a game on `P^{n+1}`, where all atoms are alike.
pub fn symmetric_solution(g: &SymmetricGame, lattice: &Arc<Lattice>) -> Result<Solution> {
    let f = symmetric_expand(g, lattice)?;
    if lattice.kind() == LatticeKind::Embedded && !plus_symmetric(&f) {
        return Err(Error::domain(
            "embedded game is not symmetric over the n+1 points of the partition image",
        ));
    }
    if lattice.num_atoms() == 0 {
        return Ok(Solution::zero(lattice.clone()));
    }
    let each = (f.top_value() - f.bottom_value()) / int(lattice.num_atoms() as i64);
    Solution::new(lattice.clone(), vec![each; lattice.num_atoms()])
}

/// Whether equal classes of the images in `P^{n+1}` carry equal worths.
pub fn plus_symmetric(f: &LatticeGame) -> bool {
    let l = f.lattice();
    let mut seen: HashMap<ClassVector, &Rational> = HashMap::new();
    l.elements().iter().enumerate().all(|(x, e)| {
        let class = match e {
            Element::Embedded(e) => e.to_plus_partition().class_vector(),
            Element::Partition(p) => p.class_vector(),
            Element::Subset(_) => return true,
        };
        *seen.entry(class).or_insert(f.value(x)) == f.value(x)
    })
}

/// `φ(f)(x) = Σ_{a≤x} φ_a`.
pub fn expand(sol: &Solution) -> LatticeGame {
    let l = sol.lattice.clone();
    let ll = l.clone();
    LatticeGame::from_fn(l, |x| {
        sol.shares
            .iter()
            .enumerate()
            .filter(|&(a, _)| ll.atom_below(a, x))
            .map(|(_, s)| s)
            .sum()
    })
}

/// Whether `solver` reproduces `f` exactly: `φ(f) = f`.
pub fn is_fixed_point(solver: Solver, f: &LatticeGame) -> Result<bool> {
    let sol = solve(solver, f, false)?;
    Ok(&expand(&sol) == f)
}

/// Atoms on `2^N` are singletons; other lattices have pair-like atoms.
pub(crate) fn require_subsets(l: &Lattice) -> Result<()> {
    if l.kind() != LatticeKind::Subsets {
        return Err(Error::WrongLattice {
            expected: LatticeKind::Subsets.name(),
            found: l.kind().name(),
        });
    }
    Ok(())
}
