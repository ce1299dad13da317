//! Game constructors and structural predicates.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{Element, ElementClass, Lattice, LatticeKind};
use crate::rational::Rational;
use crate::transform::{mobius, zeta_expand, LatticeGame, MobiusCoefficients};

/// Outcome of a structural predicate. Failures carry a counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// The inequality fails for the pair `(x, y)`.
    FailsPair(usize, usize),
    /// The condition fails at a single element.
    FailsAt(usize),
}

impl Check {
    pub fn holds(self) -> bool {
        self == Check::Holds
    }
}

fn require(lattice: &Lattice, kind: LatticeKind) -> Result<()> {
    if lattice.kind() != kind {
        return Err(Error::WrongLattice {
            expected: kind.name(),
            found: lattice.kind().name(),
        });
    }
    Ok(())
}

fn set_function_on(v: &LatticeGame, target: &Lattice) -> Result<()> {
    require(v.lattice(), LatticeKind::Subsets)?;
    if v.lattice().n() != target.n() {
        return Err(Error::domain(format!(
            "set function over {} players, target lattice over {}",
            v.lattice().n(),
            target.n()
        )));
    }
    Ok(())
}

fn block_sum(v: &LatticeGame, blocks: &[u64]) -> Rational {
    blocks
        .iter()
        .map(|&b| v.coalition_value(b).expect("mask within n"))
        .sum()
}

/// `f(P) = Σ_{A∈P} v(A)` for a set function `v` given as a game on `2^N`.
pub fn additive_global(v: &LatticeGame, target: &Arc<Lattice>) -> Result<LatticeGame> {
    require(target, LatticeKind::Partitions)?;
    set_function_on(v, target)?;
    let l = target.clone();
    Ok(LatticeGame::from_fn(target.clone(), |x| match l.element(x) {
        Element::Partition(p) => block_sum(v, &p.block_masks()),
        _ => unreachable!(),
    }))
}

/// `h(A,P) = v(A) + Σ_{B∈P} v(B)`; the first term is `v(∅)` when `A = ∅`.
pub fn additive_pff(v: &LatticeGame, target: &Arc<Lattice>) -> Result<LatticeGame> {
    require(target, LatticeKind::Embedded)?;
    set_function_on(v, target)?;
    let l = target.clone();
    Ok(LatticeGame::from_fn(target.clone(), |x| match l.element(x) {
        Element::Embedded(e) => {
            v.coalition_value(e.subset()).expect("mask within n")
                + block_sum(v, &e.partition().block_masks())
        }
        _ => unreachable!(),
    }))
}

/// A game constant on classes: one worth per orbit of player relabelings.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGame {
    pub kind: LatticeKind,
    pub n: usize,
    pub class_values: BTreeMap<ElementClass, Rational>,
}

impl SymmetricGame {
    pub fn new(kind: LatticeKind, n: usize, class_values: BTreeMap<ElementClass, Rational>) -> Self {
        SymmetricGame {
            kind,
            n,
            class_values,
        }
    }

    pub fn value(&self, class: &ElementClass) -> Option<&Rational> {
        self.class_values.get(class)
    }
}

/// Assigns `classValues[c^x]` to every element `x`.
pub fn symmetric_expand(g: &SymmetricGame, lattice: &Arc<Lattice>) -> Result<LatticeGame> {
    if lattice.kind() != g.kind || lattice.n() != g.n {
        return Err(Error::domain(format!(
            "symmetric game on {} n={} cannot expand onto {} n={}",
            g.kind.symbol(),
            g.n,
            lattice.kind().symbol(),
            lattice.n()
        )));
    }
    let values = (0..lattice.len())
        .map(|x| {
            let c = lattice.class_of(x);
            g.value(&c)
                .cloned()
                .ok_or_else(|| Error::Totality(format!("class {c}")))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeGame::new(lattice.clone(), values)
}

/// The class-compressed form of `f`, if all elements of a class share a worth.
pub fn is_symmetric(f: &LatticeGame) -> Option<SymmetricGame> {
    let l = f.lattice();
    let mut class_values = BTreeMap::new();
    for x in 0..l.len() {
        let c = l.class_of(x);
        match class_values.get(&c) {
            Some(v) if v != f.value(x) => return None,
            Some(_) => {}
            None => {
                class_values.insert(c, f.value(x).clone());
            }
        }
    }
    Some(SymmetricGame::new(l.kind(), l.n(), class_values))
}

/// Keeps the Möbius mass of `f` on the down-set of `p_star` and drops the
/// rest, so that the restricted game reaches `f(p_star)` at the top.
pub fn clustering_restrict(f: &LatticeGame, p_star: usize) -> Result<LatticeGame> {
    let l = f.lattice().clone();
    if p_star >= l.len() {
        return Err(Error::domain(format!("element index {p_star} out of range")));
    }
    let mu = mobius(f);
    let kept = (0..l.len())
        .map(|x| {
            if l.leq(x, p_star).expect("in range") {
                mu.get(x).clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    Ok(zeta_expand(&MobiusCoefficients::new(l, kept)?))
}

/// `f(x∧y) + f(x∨y) ≥ f(x) + f(y)` over all unordered pairs.
pub fn is_supermodular(f: &LatticeGame) -> Check {
    let l = f.lattice();
    for x in 0..l.len() {
        for y in x + 1..l.len() {
            let meet = l.meet(x, y).expect("in range");
            let join = l.join(x, y).expect("in range");
            if f.value(meet) + f.value(join) < f.value(x) + f.value(y) {
                return Check::FailsPair(x, y);
            }
        }
    }
    Check::Holds
}

/// All Möbius coefficients nonnegative. The bottom coefficient is `f(x_⊥)`
/// and is ignored.
pub fn is_totally_positive(f: &LatticeGame) -> Check {
    let mu = mobius(f);
    (1..f.lattice().len())
        .find(|&x| mu.get(x) < &Rational::zero())
        .map_or(Check::Holds, Check::FailsAt)
}

/// `x ≤ y ⇒ f(x) ≤ f(y)`, checked on covering pairs.
pub fn is_monotone(f: &LatticeGame) -> Check {
    let l = f.lattice();
    for x in 0..l.len() {
        for &y in l.upper_covers(x) {
            if f.value(x) > f.value(y) {
                return Check::FailsPair(x, y);
            }
        }
    }
    Check::Holds
}

/// The game `g` with `g(π x) = f(x)`, where player `i` is renamed `perm[i-1]`.
pub fn permute_players(f: &LatticeGame, perm: &[usize]) -> Result<LatticeGame> {
    let l = f.lattice();
    let mut values = vec![Rational::zero(); l.len()];
    for x in 0..l.len() {
        values[l.permute(x, perm)?] = f.value(x).clone();
    }
    LatticeGame::new(l.clone(), values)
}
