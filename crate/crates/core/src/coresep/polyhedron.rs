//! The core: share vectors dominating the game everywhere, with equality
//! at the top.

use num_traits::{One, Signed, Zero};

use super::simplex::{phase_one, Phase1};
use crate::error::{Error, Result};
use crate::games::Check;
use crate::lattice::Lattice;
use crate::rational::Rational;
use crate::solutions::Solution;
use crate::transform::LatticeGame;

/// `Σ_{a≤x} φ_a ≥ f(x)`, or `=` at the top.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreConstraint {
    pub element: usize,
    /// Atom positions below the element.
    pub atoms: Vec<usize>,
    pub bound: Rational,
    pub equality: bool,
}

/// One constraint per lattice element over one variable per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreSystem {
    pub variables: usize,
    pub constraints: Vec<CoreConstraint>,
}

impl CoreSystem {
    fn lhs(&self, c: &CoreConstraint, shares: &[Rational]) -> Rational {
        c.atoms.iter().map(|&a| &shares[a]).sum()
    }

    /// Elements whose constraint `shares` violates, in lattice order.
    pub fn violations(&self, shares: &[Rational]) -> Vec<usize> {
        self.constraints
            .iter()
            .filter(|c| {
                let lhs = self.lhs(c, shares);
                if c.equality { lhs != c.bound } else { lhs < c.bound }
            })
            .map(|c| c.element)
            .collect()
    }
}

pub fn core_system(f: &LatticeGame) -> CoreSystem {
    let l: &Lattice = f.lattice();
    let constraints = (0..l.len())
        .map(|x| CoreConstraint {
            element: x,
            atoms: (0..l.num_atoms()).filter(|&a| l.atom_below(a, x)).collect(),
            bound: f.value(x).clone(),
            equality: x == l.top(),
        })
        .collect();
    CoreSystem {
        variables: l.num_atoms(),
        constraints,
    }
}

/// Nonnegative multipliers `y_x` (free in sign at the top) with
/// `Σ_x y_x·[a≤x] = 0` for every atom and `Σ_x y_x f(x) = 1`: summing the
/// weighted constraints yields `0 ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub multipliers: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoreOutcome {
    Nonempty(Solution),
    Empty(Certificate),
}

impl CoreOutcome {
    pub fn is_empty(&self) -> bool {
        matches!(self, CoreOutcome::Empty(_))
    }
}

/// Exact decision of core non-emptiness.
///
/// Solves the alternative system for a certificate; when none exists the
/// phase-one duals give a core point. Either answer is re-verified.
pub fn core_feasible(f: &LatticeGame) -> Result<CoreOutcome> {
    let l = f.lattice().clone();
    let sys = core_system(f);
    let atoms = l.num_atoms();
    // columns: y_x for every x, then −y_top for the free top multiplier
    let mut columns: Vec<(usize, Rational)> = (0..l.len()).map(|x| (x, Rational::one())).collect();
    columns.push((l.top(), -Rational::one()));
    let mut a = vec![vec![Rational::zero(); columns.len()]; atoms + 1];
    for (j, (x, s)) in columns.iter().enumerate() {
        let c = &sys.constraints[*x];
        for &atom in &c.atoms {
            a[atom][j] = s.clone();
        }
        a[atoms][j] = s * &c.bound;
    }
    let mut b = vec![Rational::zero(); atoms + 1];
    b[atoms] = Rational::one();

    match phase_one(&a, &b) {
        Phase1::Feasible(y) => {
            let mut multipliers: Vec<(usize, Rational)> = Vec::new();
            for (j, (x, s)) in columns.iter().enumerate() {
                if y[j].is_zero() {
                    continue;
                }
                let w = s * &y[j];
                match multipliers.iter_mut().find(|(e, _)| e == x) {
                    Some((_, v)) => *v += w,
                    None => multipliers.push((*x, w)),
                }
            }
            multipliers.retain(|(_, v)| !v.is_zero());
            multipliers.sort_by_key(|(x, _)| *x);
            let cert = Certificate { multipliers };
            if !verify_certificate(f, &cert) {
                return Err(Error::domain("internal: emptiness certificate failed verification"));
            }
            Ok(CoreOutcome::Empty(cert))
        }
        Phase1::Infeasible(z) => {
            let t = &z[atoms];
            let shares = z[..atoms].iter().map(|w| -w / t).collect();
            let witness = Solution::new(l, shares)?;
            if !sys.violations(witness.shares()).is_empty() {
                return Err(Error::domain("internal: core witness failed verification"));
            }
            Ok(CoreOutcome::Nonempty(witness))
        }
    }
}

/// Checks a certificate: signs, atom cancellation and `Σ y_x f(x) > 0`.
pub fn verify_certificate(f: &LatticeGame, cert: &Certificate) -> bool {
    let l = f.lattice();
    let signs_ok = cert
        .multipliers
        .iter()
        .all(|(x, y)| *x < l.len() && (*x == l.top() || !y.is_negative()));
    if !signs_ok {
        return false;
    }
    let cancels = (0..l.num_atoms()).all(|a| {
        cert.multipliers
            .iter()
            .filter(|(x, _)| l.atom_below(a, *x))
            .map(|(_, y)| y)
            .sum::<Rational>()
            .is_zero()
    });
    let value: Rational = cert.multipliers.iter().map(|(x, y)| y * f.value(*x)).sum();
    cancels && value.is_positive()
}

/// Exact membership; failures name the first violated element.
pub fn core_contains(f: &LatticeGame, sol: &Solution) -> Result<Check> {
    if sol.lattice() != f.lattice() {
        return Err(Error::domain("solution and game live on different lattices"));
    }
    let violated = core_system(f).violations(sol.shares());
    Ok(violated.first().map_or(Check::Holds, |&x| Check::FailsAt(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::is_supermodular;
    use crate::lattice::LatticeKind;
    use crate::limits::Limits;
    use crate::rational::{int, ratio};
    use crate::solutions::{shapley_dividends, Solution};
    use crate::transform::{zeta_expand, zeta_game, MobiusCoefficients};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn lat(kind: LatticeKind, n: usize) -> Arc<Lattice> {
        Lattice::new(kind, n, &Limits::default()).unwrap()
    }

    fn example_game() -> LatticeGame {
        LatticeGame::new(lat(LatticeKind::Partitions, 3), vec![int(0), int(1), int(1), int(1), int(2)]).unwrap()
    }

    #[test]
    fn system_shapes() {
        for (kind, n, len, vars) in [
            (LatticeKind::Partitions, 3, 5, 3),
            (LatticeKind::Subsets, 3, 8, 3),
            (LatticeKind::Embedded, 2, 5, 3),
        ] {
            let sys = core_system(&LatticeGame::zero(lat(kind, n)));
            assert_eq!((sys.constraints.len(), sys.variables), (len, vars));
            assert_eq!(sys.constraints.iter().filter(|c| c.equality).count(), 1);
            assert!(sys.constraints.last().unwrap().equality);
        }
    }

    #[test]
    fn example_game_has_empty_core() {
        let f = example_game();
        match core_feasible(&f).unwrap() {
            CoreOutcome::Empty(cert) => assert!(verify_certificate(&f, &cert)),
            other => panic!("expected an empty core, got {other:?}"),
        }
        let any = Solution::new(f.lattice().clone(), vec![ratio(2, 3); 3]).unwrap();
        assert!(!core_contains(&f, &any).unwrap().holds());
    }

    #[test]
    fn scaled_size_has_uniform_witness() {
        for l in [lat(LatticeKind::Partitions, 4), lat(LatticeKind::Embedded, 3), lat(LatticeKind::Subsets, 4)] {
            for alpha in [int(1), ratio(5, 2)] {
                let f = LatticeGame::size(l.clone()).scaled(&alpha);
                let ones = Solution::new(l.clone(), vec![alpha.clone(); l.num_atoms()]).unwrap();
                assert!(core_contains(&f, &ones).unwrap().holds());
                match core_feasible(&f).unwrap() {
                    CoreOutcome::Nonempty(w) => assert_eq!(w, ones),
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn simple_memberships() {
        let l = lat(LatticeKind::Subsets, 2);
        let z = zeta_game(&l, l.top()).unwrap();
        let half = Solution::new(l.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(core_contains(&z, &half).unwrap().holds());
        let off = Solution::new(l.clone(), vec![int(1), int(1)]).unwrap();
        assert_eq!(core_contains(&z, &off).unwrap(), Check::FailsAt(l.top()));
        let other = Solution::zero(lat(LatticeKind::Subsets, 3));
        assert!(core_contains(&z, &other).is_err());
    }

    #[test]
    fn positive_bottom_is_blocking() {
        let l = lat(LatticeKind::Partitions, 3);
        let f = LatticeGame::from_fn(l, |_| int(1));
        match core_feasible(&f).unwrap() {
            CoreOutcome::Empty(cert) => assert!(verify_certificate(&f, &cert)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn supermodular_coalitional_games_contain_shapley() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 2..=5 {
            let l = lat(LatticeKind::Subsets, n);
            for _ in 0..4 {
                // nonnegative dividends give a convex game
                let coeffs = (0..l.len())
                    .map(|x| if x == 0 { int(0) } else { ratio(rng.gen_range(0..5), rng.gen_range(1..3)) })
                    .collect();
                let v = zeta_expand(&MobiusCoefficients::new(l.clone(), coeffs).unwrap());
                assert!(is_supermodular(&v).holds());
                assert!(!core_feasible(&v).unwrap().is_empty());
                assert!(core_contains(&v, &shapley_dividends(&v).unwrap()).unwrap().holds());
            }
        }
    }

    #[test]
    fn random_outcomes_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (kind, n) in [(LatticeKind::Partitions, 4), (LatticeKind::Embedded, 3), (LatticeKind::Subsets, 4)] {
            let l = lat(kind, n);
            let mut empties = 0;
            for _ in 0..15 {
                let f = LatticeGame::from_fn(l.clone(), |x| if x == 0 { int(0) } else { int(rng.gen_range(-2..5)) });
                match core_feasible(&f).unwrap() {
                    CoreOutcome::Empty(cert) => {
                        empties += 1;
                        assert!(verify_certificate(&f, &cert));
                    }
                    CoreOutcome::Nonempty(w) => assert!(core_contains(&f, &w).unwrap().holds()),
                }
            }
            assert!(empties > 0);
        }
    }
}
