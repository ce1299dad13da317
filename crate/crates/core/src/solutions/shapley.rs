//! The Shapley value on `2^N` and its graph-restricted variant.

use num_traits::Zero;

use super::{require_subsets, Solution};
use crate::error::{Error, Result};
use crate::lattice::Element;
use crate::rational::{factorial, int, ratio_of, Rational};
use crate::transform::{mobius, zeta_expand, LatticeGame, MobiusCoefficients};

fn mask_of(l: &crate::lattice::Lattice, x: usize) -> u64 {
    match l.element(x) {
        Element::Subset(m) => *m,
        _ => unreachable!("coalition lattice"),
    }
}

/// Marginal-contribution form: `φ_i = Σ_{A⊆N∖i} [v(A∪i) − v(A)]·|A|!(n−|A|−1)!/n!`.
pub fn shapley_chain(v: &LatticeGame) -> Result<Solution> {
    let l = v.lattice().clone();
    require_subsets(&l)?;
    let n = l.n();
    let weights: Vec<Rational> = (0..n)
        .map(|k| ratio_of(&(factorial(k) * factorial(n - k - 1)), &factorial(n)))
        .collect();
    let mut shares = vec![Rational::zero(); n];
    for x in 0..l.len() {
        let a = mask_of(&l, x);
        let k = a.count_ones() as usize;
        for (i, share) in shares.iter_mut().enumerate() {
            if a & (1 << i) != 0 {
                continue;
            }
            let with = v.coalition_value(a | 1 << i)?;
            *share += (with - v.value(x)) * &weights[k];
        }
    }
    Solution::new(l, shares)
}

/// Dividend form: `φ_i = Σ_{A∋i} μ^v(A)/|A|`.
pub fn shapley_dividends(v: &LatticeGame) -> Result<Solution> {
    let l = v.lattice().clone();
    require_subsets(&l)?;
    let mu = mobius(v);
    let mut shares = vec![Rational::zero(); l.n()];
    for x in 1..l.len() {
        let a = mask_of(&l, x);
        let part = mu.get(x) / int(a.count_ones() as i64);
        for (i, share) in shares.iter_mut().enumerate() {
            if a & (1 << i) != 0 {
                *share += &part;
            }
        }
    }
    Solution::new(l, shares)
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u64>> {
    let mut adj = vec![0u64; n];
    for &(i, j) in edges {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::domain(format!("edge ({i},{j}) is not a pair of distinct players in 1..{n}")));
        }
        adj[i - 1] |= 1 << (j - 1);
        adj[j - 1] |= 1 << (i - 1);
    }
    Ok(adj)
}

fn connected(mask: u64, adj: &[u64]) -> bool {
    if mask == 0 {
        return true;
    }
    let mut reached = 1u64 << mask.trailing_zeros();
    loop {
        let mut next = reached;
        let mut rest = reached;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= adj[i] & mask;
        }
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

/// The graph-restricted game `v/G`: Möbius mass of `v` is kept on coalitions
/// that induce a connected subgraph and set to zero elsewhere, with the
/// mass on connected coalitions chosen so that `v/G` agrees with `v` there.
pub fn graph_restrict(v: &LatticeGame, edges: &[(usize, usize)]) -> Result<LatticeGame> {
    let l = v.lattice().clone();
    require_subsets(&l)?;
    let adj = adjacency(l.n(), edges)?;
    let mut mu: Vec<Rational> = Vec::with_capacity(l.len());
    for x in 0..l.len() {
        if connected(mask_of(&l, x), &adj) {
            let below: Rational = l.strictly_below(x).iter().map(|&y| &mu[y]).sum();
            mu.push(v.value(x) - below);
        } else {
            mu.push(Rational::zero());
        }
    }
    Ok(zeta_expand(&MobiusCoefficients::new(l, mu)?))
}

/// Shapley value of the graph-restricted game.
pub fn myerson(v: &LatticeGame, edges: &[(usize, usize)]) -> Result<Solution> {
    shapley_dividends(&graph_restrict(v, edges)?)
}
