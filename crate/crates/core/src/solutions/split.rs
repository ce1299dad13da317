//! Splitting edge shares between endnodes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Solution;
use crate::error::{Error, Result};
use crate::lattice::{Element, LatticeKind};
use crate::rational::{ratio, Rational};

/// Per-edge weights `(w_i, w_j)` for edges `i < j`, each pair summing to 1.
/// Edges without an entry are split equally.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeWeights {
    weights: BTreeMap<(usize, usize), (Rational, Rational)>,
}

impl EdgeWeights {
    pub fn new() -> Self {
        EdgeWeights::default()
    }

    /// Sets the weights of edge `{i,j}`; `wi` goes to `i` and `wj` to `j`.
    pub fn insert(&mut self, i: usize, j: usize, wi: Rational, wj: Rational) -> Result<()> {
        if i == j {
            return Err(Error::domain(format!("edge {i},{j} is a loop")));
        }
        if &wi + &wj != Rational::one() {
            return Err(Error::domain(format!(
                "weights for edge {i},{j} sum to {}, not 1",
                &wi + &wj
            )));
        }
        let entry = if i < j { ((i, j), (wi, wj)) } else { ((j, i), (wj, wi)) };
        self.weights.insert(entry.0, entry.1);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&(Rational, Rational)> {
        self.weights.get(&(i.min(j), i.max(j)))
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Shares per node `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeShares {
    shares: Vec<Rational>,
}

impl NodeShares {
    pub fn shares(&self) -> &[Rational] {
        &self.shares
    }

    /// Share of node `i` (1-based).
    pub fn node(&self, i: usize) -> &Rational {
        &self.shares[i - 1]
    }

    pub fn total(&self) -> Rational {
        self.shares.iter().sum()
    }
}

/// Node `i` receives `Σ_{j} w_i({i,j})·φ_{[ij]}`, with `w = 1/2` by default.
pub fn split_to_nodes(sol: &Solution, weights: Option<&EdgeWeights>) -> Result<NodeShares> {
    let l = sol.lattice();
    if l.kind() != LatticeKind::Partitions {
        return Err(Error::WrongLattice {
            expected: LatticeKind::Partitions.name(),
            found: l.kind().name(),
        });
    }
    let n = l.n();
    if let Some(w) = weights {
        if let Some(&(i, j)) = w.weights.keys().find(|&&(_, j)| j > n) {
            return Err(Error::domain(format!("weights name edge {i},{j} outside 1..{n}")));
        }
    }
    let half = ratio(1, 2);
    let mut shares = vec![Rational::zero(); n];
    for (a, &x) in l.atoms().iter().enumerate() {
        let (i, j) = match l.element(x) {
            Element::Partition(p) => p.atom_pair().expect("atom"),
            _ => unreachable!(),
        };
        let (wi, wj) = weights
            .and_then(|w| w.get(i, j))
            .cloned()
            .unwrap_or_else(|| (half.clone(), half.clone()));
        shares[i - 1] += &wi * sol.share(a);
        shares[j - 1] += &wj * sol.share(a);
    }
    Ok(NodeShares { shares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::limits::Limits;
    use crate::rational::int;

    fn solution(shares: Vec<Rational>) -> Solution {
        let p = Lattice::new(LatticeKind::Partitions, 3, &Limits::default()).unwrap();
        Solution::new(p, shares).unwrap()
    }

    #[test]
    fn equal_split() {
        let sol = solution(vec![ratio(2, 3), ratio(1, 6), ratio(1, 6)]);
        let nodes = split_to_nodes(&sol, None).unwrap();
        assert_eq!(nodes.shares(), [ratio(5, 12), ratio(5, 12), ratio(1, 6)]);
        assert_eq!(nodes.total(), sol.total());
        let zero = split_to_nodes(&solution(vec![int(0); 3]), None).unwrap();
        assert!(zero.shares().iter().all(Zero::is_zero));
    }

    #[test]
    fn cluster_head_takes_all() {
        let sol = solution(vec![int(4), int(1), int(3)]);
        let mut w = EdgeWeights::new();
        w.insert(1, 2, int(1), int(0)).unwrap();
        w.insert(3, 1, int(0), int(1)).unwrap();
        let nodes = split_to_nodes(&sol, Some(&w)).unwrap();
        assert_eq!(nodes.node(1), &int(5));
        assert_eq!(nodes.shares(), [int(5), ratio(3, 2), ratio(3, 2)]);
        assert_eq!(nodes.total(), sol.total());
    }

    #[test]
    fn weights_are_validated() {
        let mut w = EdgeWeights::new();
        assert!(w.insert(1, 2, ratio(1, 2), ratio(1, 3)).is_err());
        assert!(w.insert(2, 2, int(1), int(0)).is_err());
        w.insert(1, 7, int(1), int(0)).unwrap();
        assert!(split_to_nodes(&solution(vec![int(1); 3]), Some(&w)).is_err());
    }
}
