//! Additive separability of partition functions and PFF games.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::games::{additive_global, additive_pff};
use crate::lattice::{subset, Element, EmbeddedSubset, Lattice, LatticeKind, Partition};
use crate::rational::{int, Rational};
use crate::transform::LatticeGame;

/// Set functions separating a game.
///
/// For partition functions, two members differ by `δ(A) = Σ_{i∈A} δ_i` on
/// nonempty coalitions with `Σ δ_i = 0`, and arbitrarily on `∅`. Fixing the
/// singleton values therefore fixes every nonempty coalition. For PFF games
/// the separating set function is unique.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingFamily {
    game: LatticeGame,
    base: LatticeGame,
}

impl SeparatingFamily {
    /// The game being separated.
    pub fn game(&self) -> &LatticeGame {
        &self.game
    }

    /// The canonical member, a game on `2^N`.
    pub fn base(&self) -> &LatticeGame {
        &self.base
    }

    /// Whether members other than the base exist.
    pub fn has_freedom(&self) -> bool {
        self.game.lattice().kind() == LatticeKind::Partitions
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Separability {
    Separable(SeparatingFamily),
    /// The first element where the candidate set function fails.
    NotSeparable {
        element: usize,
        expected: Rational,
        found: Rational,
    },
}

fn coalitions(n: usize, l: &Lattice) -> Result<Arc<Lattice>> {
    Lattice::new(LatticeKind::Subsets, n, l.limits())
}

fn separated_by(f: &LatticeGame, v: &LatticeGame) -> Result<Option<(usize, Rational, Rational)>> {
    let rebuilt = match f.lattice().kind() {
        LatticeKind::Partitions => additive_global(v, f.lattice())?,
        LatticeKind::Embedded => additive_pff(v, f.lattice())?,
        LatticeKind::Subsets => unreachable!(),
    };
    Ok((0..f.lattice().len())
        .find(|&x| rebuilt.value(x) != f.value(x))
        .map(|x| (x, f.value(x).clone(), rebuilt.value(x).clone())))
}

/// Builds the canonical candidate and checks it on every element.
///
/// Partition functions: `v(∅) = 0`, `v({i}) = f(P_⊥)/n`, and for `|A| > 1`
/// `v(A) = f(P^A) − Σ_{i∉A} v({i})` where `P^A` has `A` as its only
/// non-singleton block. PFF games: with `d_i = h({i},P_⊥) − h(∅,P_⊥)`,
/// `v(∅) = (h(∅,P_⊥) − Σ d_i)/(n+1)` and `v(A) = h(A,P^A) − h(∅,P^A) + v(∅)`.
pub fn separability_test(f: &LatticeGame) -> Result<Separability> {
    let l = f.lattice();
    let n = l.n();
    let sets = coalitions(n, l)?;
    let base = match l.kind() {
        LatticeKind::Partitions => {
            let single = f.bottom_value() / int(n as i64);
            LatticeGame::from_fn(sets.clone(), |x| {
                let mask = match sets.element(x) {
                    Element::Subset(m) => *m,
                    _ => unreachable!(),
                };
                match mask.count_ones() {
                    0 => Rational::zero(),
                    1 => single.clone(),
                    k => {
                        let at = l
                            .index_of(&Element::Partition(one_block(n, mask)))
                            .expect("partition in lattice");
                        f.value(at) - &single * int((n - k as usize) as i64)
                    }
                }
            })
        }
        LatticeKind::Embedded => {
            let value = |a: u64, p: Partition| -> Rational {
                let e = EmbeddedSubset::new(a, p).expect("valid embedded subset");
                f.value(l.index_of(&Element::Embedded(e)).expect("element")).clone()
            };
            let bottom = Partition::bottom(n);
            let h0 = value(0, bottom.clone());
            let d: Vec<Rational> = (0..n).map(|i| value(1 << i, bottom.clone()) - &h0).collect();
            let empty = (&h0 - d.iter().sum::<Rational>()) / int(n as i64 + 1);
            LatticeGame::from_fn(sets.clone(), |x| {
                let mask = match sets.element(x) {
                    Element::Subset(m) => *m,
                    _ => unreachable!(),
                };
                if mask == 0 {
                    return empty.clone();
                }
                let p = one_block(n, mask);
                value(mask, p.clone()) - value(0, p) + &empty
            })
        }
        LatticeKind::Subsets => {
            return Err(Error::domain("separability applies to partition and PFF games"));
        }
    };
    Ok(match separated_by(f, &base)? {
        None => Separability::Separable(SeparatingFamily {
            game: f.clone(),
            base,
        }),
        Some((element, expected, found)) => Separability::NotSeparable {
            element,
            expected,
            found,
        },
    })
}

fn one_block(n: usize, mask: u64) -> Partition {
    let mut blocks = vec![subset::members(mask)];
    blocks.extend((1..=n).filter(|i| mask & (1 << (i - 1)) == 0).map(|i| vec![i]));
    Partition::from_blocks(n, &blocks).expect("valid blocks")
}

/// The member of the family with the given singleton values and `v(∅)`:
/// `v′(A) = v(A) + Σ_{i∈A} (v′({i}) − v({i}))` for `A ≠ ∅`. Singletons must
/// sum to `f(P_⊥)`; the result is re-verified.
pub fn separating_variant(
    fam: &SeparatingFamily,
    singletons: &[Rational],
    empty: Rational,
) -> Result<LatticeGame> {
    let sets = fam.base.lattice().clone();
    let n = sets.n();
    if singletons.len() != n {
        return Err(Error::domain(format!("{} singleton values for {n} players", singletons.len())));
    }
    let delta: Vec<Rational> = (0..n)
        .map(|i| &singletons[i] - fam.base.coalition_value(1 << i).expect("singleton"))
        .collect();
    let drift: Rational = delta.iter().sum();
    if !drift.is_zero() {
        return Err(Error::domain(format!(
            "singleton values sum to {}, not {}",
            singletons.iter().sum::<Rational>(),
            singletons.iter().sum::<Rational>() - drift
        )));
    }
    let v = LatticeGame::from_fn(sets.clone(), |x| {
        let mask = match sets.element(x) {
            Element::Subset(m) => *m,
            _ => unreachable!(),
        };
        if mask == 0 {
            return empty.clone();
        }
        fam.base.value(x) + subset::members(mask).iter().map(|&i| &delta[i - 1]).sum::<Rational>()
    });
    if let Some((x, expected, found)) = separated_by(&fam.game, &v)? {
        return Err(Error::domain(format!(
            "variant fails at {}: {found} instead of {expected}",
            fam.game.lattice().element(x)
        )));
    }
    Ok(v)
}
