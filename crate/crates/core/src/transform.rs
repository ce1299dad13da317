//! Lattice functions, Möbius inversion and the zeta basis.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::rational::Rational;

/// A game: one exact worth per lattice element, indexed like the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeGame {
    lattice: Arc<Lattice>,
    values: Vec<Rational>,
}

impl LatticeGame {
    pub fn new(lattice: Arc<Lattice>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::Totality(format!(
                "{} values given for a lattice of {} elements",
                values.len(),
                lattice.len()
            )));
        }
        Ok(LatticeGame { lattice, values })
    }

    pub fn from_fn(lattice: Arc<Lattice>, mut f: impl FnMut(usize) -> Rational) -> Self {
        let values = (0..lattice.len()).map(&mut f).collect();
        LatticeGame { lattice, values }
    }

    pub fn zero(lattice: Arc<Lattice>) -> Self {
        LatticeGame::from_fn(lattice, |_| Rational::zero())
    }

    /// The size function `s`.
    pub fn size(lattice: Arc<Lattice>) -> Self {
        let l = lattice.clone();
        LatticeGame::from_fn(lattice, |x| Rational::from_integer(l.size(x).into()))
    }

    /// The rank function `r`.
    pub fn rank(lattice: Arc<Lattice>) -> Self {
        let l = lattice.clone();
        LatticeGame::from_fn(lattice, |x| Rational::from_integer(l.rank(x).into()))
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn set(&mut self, x: usize, value: Rational) {
        self.values[x] = value;
    }

    pub fn bottom_value(&self) -> &Rational {
        &self.values[self.lattice.bottom()]
    }

    pub fn top_value(&self) -> &Rational {
        &self.values[self.lattice.top()]
    }

    /// Flags games whose bottom worth is not zero.
    pub fn has_nonzero_bottom(&self) -> bool {
        !self.bottom_value().is_zero()
    }

    /// `f − f(x_⊥)·1`, together with the subtracted constant.
    pub fn normalized(&self) -> (LatticeGame, Rational) {
        let shift = self.bottom_value().clone();
        let values = self.values.iter().map(|v| v - &shift).collect();
        (
            LatticeGame {
                lattice: self.lattice.clone(),
                values,
            },
            shift,
        )
    }

    fn same_lattice(&self, other: &LatticeGame) -> Result<()> {
        if self.lattice.kind() != other.lattice.kind() || self.lattice.n() != other.lattice.n() {
            return Err(Error::domain("games live on different lattices"));
        }
        Ok(())
    }

    pub fn scaled(&self, alpha: &Rational) -> LatticeGame {
        LatticeGame {
            lattice: self.lattice.clone(),
            values: self.values.iter().map(|v| v * alpha).collect(),
        }
    }

    pub fn plus(&self, other: &LatticeGame) -> Result<LatticeGame> {
        self.same_lattice(other)?;
        Ok(LatticeGame {
            lattice: self.lattice.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// Worth of the coalition `mask` (`2^N` only).
    pub fn coalition_value(&self, mask: u64) -> Result<&Rational> {
        Ok(&self.values[self.lattice.subset_index(mask)?])
    }
}

/// Möbius coefficients `μ^f`, indexed like the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusCoefficients {
    lattice: Arc<Lattice>,
    coeffs: Vec<Rational>,
}

impl MobiusCoefficients {
    pub fn new(lattice: Arc<Lattice>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != lattice.len() {
            return Err(Error::Totality(format!(
                "{} coefficients for a lattice of {} elements",
                coeffs.len(),
                lattice.len()
            )));
        }
        Ok(MobiusCoefficients { lattice, coeffs })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn get(&self, x: usize) -> &Rational {
        &self.coeffs[x]
    }

    /// Elements carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&x| !self.coeffs[x].is_zero()).collect()
    }
}

/// `μ^f(x) = f(x) − Σ_{y<x} μ^f(y)`, bottom-up over the graded order.
pub fn mobius(f: &LatticeGame) -> MobiusCoefficients {
    let lattice = f.lattice.clone();
    let mut mu: Vec<Rational> = Vec::with_capacity(lattice.len());
    for x in 0..lattice.len() {
        let below: Rational = lattice.strictly_below(x).iter().map(|&y| &mu[y]).sum();
        mu.push(&f.values[x] - below);
    }
    MobiusCoefficients { lattice, coeffs: mu }
}

/// `f(x) = Σ_{y≤x} μ(y)`.
pub fn zeta_expand(mu: &MobiusCoefficients) -> LatticeGame {
    let lattice = mu.lattice.clone();
    let l = lattice.clone();
    LatticeGame::from_fn(lattice, |x| {
        let below: Rational = l.strictly_below(x).iter().map(|&y| &mu.coeffs[y]).sum();
        below + &mu.coeffs[x]
    })
}

/// `ζ_x(y) = 1` iff `y ≥ x`.
pub fn zeta_game(lattice: &Arc<Lattice>, x: usize) -> Result<LatticeGame> {
    if x >= lattice.len() {
        return Err(Error::domain(format!("element index {x} out of range")));
    }
    let l = lattice.clone();
    Ok(LatticeGame::from_fn(lattice.clone(), |y| {
        if y == x || l.strictly_below(y).binary_search(&x).is_ok() {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeKind;
    use crate::limits::Limits;
    use crate::rational::{int, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lat(kind: LatticeKind, n: usize) -> Arc<Lattice> {
        Lattice::new(kind, n, &Limits::default()).unwrap()
    }

    fn random_game(l: &Arc<Lattice>, rng: &mut ChaCha8Rng) -> LatticeGame {
        LatticeGame::from_fn(l.clone(), |_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
    }

    #[test]
    fn size_has_mobius_on_atoms() {
        let l = lat(LatticeKind::Partitions, 4);
        let mu = mobius(&LatticeGame::size(l.clone()));
        for x in 0..l.len() {
            let expected = if l.size(x) == 1 { int(1) } else { int(0) };
            assert_eq!(mu.get(x), &expected);
        }
    }

    #[test]
    fn rank_mobius_on_three() {
        let l = lat(LatticeKind::Partitions, 3);
        let mu = mobius(&LatticeGame::rank(l.clone()));
        for &a in l.atoms() {
            assert_eq!(mu.get(a), &int(1));
        }
        assert_eq!(mu.get(l.top()), &int(-1));
        assert_eq!(mu.get(l.bottom()), &int(0));
    }

    #[test]
    fn zero_game_zero_mobius() {
        let l = lat(LatticeKind::Embedded, 3);
        assert!(mobius(&LatticeGame::zero(l)).support().is_empty());
    }

    #[test]
    fn zeta_examples() {
        let l = lat(LatticeKind::Partitions, 3);
        let a12 = l.parse_element("1,2|3").unwrap();
        let z = zeta_game(&l, a12).unwrap();
        let ones: Vec<usize> = (0..l.len()).filter(|&x| z.value(x).is_one()).collect();
        assert_eq!(ones, vec![a12, l.top()]);
        assert_eq!(mobius(&z).support(), vec![a12]);
        let zb = zeta_game(&l, l.bottom()).unwrap();
        assert!(zb.values().iter().all(|v| v.is_one()));

        let e = lat(LatticeKind::Embedded, 2);
        let x = e.parse_element("{}:1,2").unwrap();
        let z = zeta_game(&e, x).unwrap();
        let ones: Vec<String> = (0..e.len())
            .filter(|&y| z.value(y).is_one())
            .map(|y| e.element(y).to_string())
            .collect();
        assert_eq!(ones, ["{}:1,2", "{1,2}:1,2"]);
    }

    #[test]
    fn atom_supported_expansion() {
        let l = lat(LatticeKind::Partitions, 4);
        let weights: Vec<Rational> = (0..l.num_atoms()).map(|a| ratio(a as i64 + 1, 2)).collect();
        let mut coeffs = vec![int(0); l.len()];
        for (p, &a) in l.atoms().iter().enumerate() {
            coeffs[a] = weights[p].clone();
        }
        let f = zeta_expand(&MobiusCoefficients::new(l.clone(), coeffs).unwrap());
        for x in 0..l.len() {
            let expected: Rational = (0..l.num_atoms())
                .filter(|&a| l.atom_below(a, x))
                .map(|a| weights[a].clone())
                .sum();
            assert_eq!(f.value(x), &expected);
        }
    }

    #[test]
    fn round_trips_and_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (kind, n) in [
            (LatticeKind::Subsets, 4),
            (LatticeKind::Partitions, 4),
            (LatticeKind::Embedded, 3),
        ] {
            let l = lat(kind, n);
            for _ in 0..10 {
                let f = random_game(&l, &mut rng);
                let g = random_game(&l, &mut rng);
                assert_eq!(zeta_expand(&mobius(&f)), f);
                let mu = MobiusCoefficients::new(l.clone(), f.values().to_vec()).unwrap();
                assert_eq!(mobius(&zeta_expand(&mu)), mu);

                let (alpha, beta) = (ratio(3, 2), ratio(-2, 7));
                let combo = f.scaled(&alpha).plus(&g.scaled(&beta)).unwrap();
                let lhs = mobius(&combo);
                let (mf, mg) = (mobius(&f), mobius(&g));
                for x in 0..l.len() {
                    assert_eq!(lhs.get(x), &(mf.get(x) * &alpha + mg.get(x) * &beta));
                }

                // f = Σ_x μ^f(x) ζ_x pointwise
                let mut sum = LatticeGame::zero(l.clone());
                for x in 0..l.len() {
                    sum = sum.plus(&zeta_game(&l, x).unwrap().scaled(mf.get(x))).unwrap();
                }
                assert_eq!(sum, f);
            }
        }
    }

    #[test]
    fn normalization_records_shift() {
        let l = lat(LatticeKind::Partitions, 3);
        let f = LatticeGame::from_fn(l.clone(), |x| int(x as i64 + 2));
        assert!(f.has_nonzero_bottom());
        let (g, shift) = f.normalized();
        assert_eq!(shift, int(2));
        assert!(!g.has_nonzero_bottom());
        assert!(LatticeGame::new(l, vec![int(0)]).is_err());
    }
}
