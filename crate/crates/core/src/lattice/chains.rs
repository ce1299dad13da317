//! Maximal-chain statistics.
//!
//! Counts are exact big integers built from segment decompositions: the
//! interval below a partition is a product of smaller partition lattices,
//! the interval above it is again a partition lattice, and intervals of
//! `E^N` decompose the same way. A maximal chain of a product interleaves
//! maximal chains of its factors, so product counts carry a multinomial
//! factor. The pair ratios `κ_x^a / κ` are also available as closed-form
//! factorial quotients, which serve as a second route.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{Element, Lattice, LatticeKind};
use crate::rational::{binomial, exact_div, factorial, pow2, ratio_of, Rational};

/// Chain statistics for an element `x` and an atom `a ⋠ x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStats {
    /// `κ`, all maximal chains.
    pub total: BigUint,
    /// Maximal chains meeting `x`.
    pub through: BigUint,
    /// `κ_x^a`, maximal chains meeting both `x` and `x ∨ a`.
    pub pair: BigUint,
    /// `κ_x^a / κ`.
    pub ratio: Rational,
}

/// Maximal chains in the partition lattice of a `k`-set:
/// `C(k,2)·C(k−1,2)···C(2,2)`.
pub fn partition_chains(k: usize) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, j| acc * binomial(j, 2))
}

/// Maximal chains in the embedded-subset lattice of a `k`-set.
pub fn embedded_chains(k: usize) -> BigUint {
    partition_chains(k + 1)
}

/// `κ` for the chosen lattice over `n` players.
pub fn chain_count_total(kind: LatticeKind, n: usize) -> BigUint {
    match kind {
        LatticeKind::Subsets => factorial(n),
        LatticeKind::Partitions => partition_chains(n),
        LatticeKind::Embedded => embedded_chains(n),
    }
}

/// Chains in a product of graded lattices: the per-factor chains times the
/// number of ways to interleave their steps, `(Σ r_i)! / Π r_i!`.
fn interleaved(factors: impl IntoIterator<Item = (usize, BigUint)>) -> BigUint {
    let mut total_rank = 0;
    let mut acc = BigUint::one();
    let mut denom = BigUint::one();
    for (rank, chains) in factors {
        total_rank += rank;
        acc *= chains;
        denom *= factorial(rank);
    }
    exact_div(acc * factorial(total_rank), &denom)
}

/// Chains of `[P_⊥, P] ≅ Π_{B∈P} P^{|B|}`.
fn partition_lower(sizes: impl IntoIterator<Item = usize>) -> BigUint {
    interleaved(sizes.into_iter().map(|k| (k - 1, partition_chains(k))))
}

/// Chains of `[(∅,P_⊥), (A,P)] ≅ E^{|A|} × Π_{B∈P^{A^c}} P^{|B|}`.
fn embedded_lower(a: usize, complement_sizes: impl IntoIterator<Item = usize>) -> BigUint {
    let head = std::iter::once((a, embedded_chains(a)));
    interleaved(head.chain(complement_sizes.into_iter().map(|k| (k - 1, partition_chains(k)))))
}

fn embedded_lower_of(e: &crate::lattice::EmbeddedSubset) -> BigUint {
    let a = e.subset().count_ones() as usize;
    if a == 0 {
        partition_lower(e.partition().block_sizes())
    } else {
        embedded_lower(a, e.complement_partition_sizes())
    }
}

/// Maximal chains meeting `x`: chains of `[x_⊥, x]` times chains of `[x, x^⊤]`.
pub fn chain_count_through(n: usize, x: &Element) -> BigUint {
    match x {
        Element::Subset(m) => {
            let a = m.count_ones() as usize;
            factorial(a) * factorial(n - a)
        }
        Element::Partition(p) => partition_lower(p.block_sizes()) * partition_chains(p.num_blocks()),
        Element::Embedded(e) => {
            let blocks = e.partition().num_blocks();
            let upper = if e.subset() == 0 {
                embedded_chains(blocks)
            } else {
                partition_chains(blocks)
            };
            embedded_lower_of(e) * upper
        }
    }
}

/// `κ_x^a`: maximal chains through `x` and `x ∨ a`. Depends only on `x`;
/// `x` must not be the top.
pub fn chain_pair_count(n: usize, x: &Element) -> BigUint {
    match x {
        Element::Subset(m) => {
            let a = m.count_ones() as usize;
            factorial(a) * factorial(n - a - 1)
        }
        Element::Partition(p) => {
            partition_lower(p.block_sizes()) * partition_chains(p.num_blocks() - 1)
        }
        Element::Embedded(e) => {
            let blocks = e.partition().num_blocks();
            // [x ∨ a, top] is E^{|P|-1} when A = ∅ and P^{|P|-1} otherwise
            let upper = if e.subset() == 0 {
                embedded_chains(blocks - 1)
            } else {
                partition_chains(blocks - 1)
            };
            embedded_lower_of(e) * upper
        }
    }
}

fn factorial_product(sizes: impl IntoIterator<Item = usize>) -> BigUint {
    sizes
        .into_iter()
        .fold(BigUint::one(), |acc, k| acc * factorial(k))
}

/// `κ_x^a / κ` as a single factorial quotient:
///
/// * `2^N`: `|A|!(n−|A|−1)!/n!`
/// * `P^N`: `2 (n−|P|)! Π_{B∈P} |B|! · (|P|−1)!(|P|−2)! / (n!(n−1)!)`
/// * `E^N`, `A ≠ ∅`: `2 (n−|P|+1)! (|A|+1)! Π_{B∈P^{A^c}} |B|! · (|P|−1)!(|P|−2)! / ((n+1)!n!)`
/// * `E^N`, `A = ∅`: `2 (n−|P|)! Π_{B∈P} |B|! · |P|!(|P|−1)! / ((n+1)!n!)`
///
/// The leading `(rank)!` factor counts interleavings of the independent
/// blocks of `[x_⊥, x]`; where at most one block is larger than a
/// singleton it reduces to `Π (|B|−1)!`. `x` must not be the top element.
pub fn pair_ratio_closed_form(n: usize, x: &Element) -> Rational {
    let two = BigUint::from(2u32);
    match x {
        Element::Subset(m) => {
            let a = m.count_ones() as usize;
            ratio_of(&(factorial(a) * factorial(n - a - 1)), &factorial(n))
        }
        Element::Partition(p) => {
            let b = p.num_blocks();
            let numer = &two
                * factorial(n - b)
                * factorial_product(p.block_sizes())
                * factorial(b - 1)
                * factorial(b - 2);
            ratio_of(&numer, &(factorial(n) * factorial(n - 1)))
        }
        Element::Embedded(e) => {
            let a = e.subset().count_ones() as usize;
            let b = e.partition().num_blocks();
            let denom = factorial(n + 1) * factorial(n);
            let numer = if a == 0 {
                &two * factorial(n - b)
                    * factorial_product(e.partition().block_sizes())
                    * factorial(b)
                    * factorial(b - 1)
            } else {
                &two * factorial(n - b + 1)
                    * factorial(a + 1)
                    * factorial_product(e.complement_partition_sizes())
                    * factorial(b - 1)
                    * factorial(b - 2)
            };
            ratio_of(&numer, &denom)
        }
    }
}

/// Literal totals `n!`, `n!(n−1)!/2^{n−1}` and `(n+1)!n!/2^n`.
pub fn chain_count_total_literal(kind: LatticeKind, n: usize) -> BigUint {
    match kind {
        LatticeKind::Subsets => factorial(n),
        LatticeKind::Partitions => exact_div(factorial(n) * factorial(n - 1), &pow2(n - 1)),
        LatticeKind::Embedded => exact_div(factorial(n + 1) * factorial(n), &pow2(n)),
    }
}

impl Lattice {
    pub fn chain_count_total(&self) -> BigUint {
        chain_count_total(self.kind(), self.n())
    }

    pub fn chain_count_through(&self, x: usize) -> BigUint {
        chain_count_through(self.n(), self.element(x))
    }

    /// `κ_x^a / κ` for `x` and the atom at position `atom`; requires `a ⋠ x`.
    pub fn chain_pair_ratio(&self, x: usize, atom: usize) -> Result<Rational> {
        self.require_not_below(x, atom)?;
        Ok(pair_ratio_closed_form(self.n(), self.element(x)))
    }

    pub fn chain_stats(&self, x: usize, atom: usize) -> Result<ChainStats> {
        self.require_not_below(x, atom)?;
        let total = self.chain_count_total();
        let pair = chain_pair_count(self.n(), self.element(x));
        Ok(ChainStats {
            through: self.chain_count_through(x),
            ratio: ratio_of(&pair, &total),
            pair,
            total,
        })
    }

    fn require_not_below(&self, x: usize, atom: usize) -> Result<()> {
        if x >= self.len() || atom >= self.num_atoms() {
            return Err(Error::domain("element or atom index out of range"));
        }
        if self.atom_below(atom, x) {
            return Err(Error::domain(format!(
                "atom {} lies below {}",
                self.atom_key(atom),
                self.element(x)
            )));
        }
        Ok(())
    }

    /// Every maximal chain as a bottom-to-top list of element indices.
    pub fn maximal_chains(&self) -> Result<Vec<Vec<usize>>> {
        self.limits().check_chains(self.n())?;
        let mut out = Vec::new();
        let mut path = vec![self.bottom()];
        self.extend_chains(&mut path, &mut out);
        Ok(out)
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("nonempty path");
        let covers = self.upper_covers(last);
        if covers.is_empty() {
            out.push(path.clone());
            return;
        }
        for &y in covers {
            path.push(y);
            self.extend_chains(path, out);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::rational::ratio;
    use std::sync::Arc;

    fn lat(kind: LatticeKind, n: usize) -> Arc<Lattice> {
        Lattice::new(kind, n, &Limits::default()).unwrap()
    }

    #[test]
    fn totals() {
        assert_eq!(chain_count_total(LatticeKind::Partitions, 3), BigUint::from(3u32));
        assert_eq!(chain_count_total(LatticeKind::Subsets, 3), BigUint::from(6u32));
        assert_eq!(chain_count_total(LatticeKind::Embedded, 2), BigUint::from(3u32));
        for n in 1..=10 {
            for kind in [LatticeKind::Subsets, LatticeKind::Partitions, LatticeKind::Embedded] {
                assert_eq!(chain_count_total(kind, n), chain_count_total_literal(kind, n));
            }
        }
    }

    #[test]
    fn small_ratios() {
        let l = lat(LatticeKind::Partitions, 3);
        let a12 = l.atom_position(l.parse_element("1,2|3").unwrap()).unwrap();
        assert_eq!(l.chain_pair_ratio(l.bottom(), a12).unwrap(), ratio(1, 3));
        let x13 = l.parse_element("1,3|2").unwrap();
        assert_eq!(l.chain_pair_ratio(x13, a12).unwrap(), ratio(1, 3));
        assert!(l.chain_pair_ratio(l.top(), a12).is_err());
        let x12 = l.parse_element("1,2|3").unwrap();
        assert!(l.chain_pair_ratio(x12, a12).is_err());
    }

    #[test]
    fn enumeration_small() {
        let l = lat(LatticeKind::Partitions, 3);
        assert_eq!(l.maximal_chains().unwrap().len(), 3);
        let b = lat(LatticeKind::Subsets, 2);
        let chains: Vec<Vec<String>> = b
            .maximal_chains()
            .unwrap()
            .iter()
            .map(|c| c.iter().map(|&x| b.element(x).to_string()).collect())
            .collect();
        assert_eq!(chains, [["{}", "{1}", "{1,2}"], ["{}", "{2}", "{1,2}"]]);
        assert_eq!(lat(LatticeKind::Embedded, 2).maximal_chains().unwrap().len(), 3);
        let big = Lattice::new(LatticeKind::Partitions, 6, &Limits::default()).unwrap();
        assert!(matches!(big.maximal_chains(), Err(Error::SizeLimit { cap: 5, .. })));
    }

    #[test]
    fn through_endpoints_equal_total() {
        for (kind, n) in [
            (LatticeKind::Subsets, 4),
            (LatticeKind::Partitions, 5),
            (LatticeKind::Embedded, 4),
        ] {
            let l = lat(kind, n);
            assert_eq!(l.chain_count_through(l.top()), l.chain_count_total());
            assert_eq!(l.chain_count_through(l.bottom()), l.chain_count_total());
        }
    }

    #[test]
    fn ratios_sum_to_one_for_every_atom() {
        for (kind, n) in [
            (LatticeKind::Subsets, 5),
            (LatticeKind::Partitions, 6),
            (LatticeKind::Embedded, 5),
        ] {
            let l = lat(kind, n);
            for a in 0..l.num_atoms() {
                let sum: Rational = (0..l.len())
                    .filter(|&x| !l.atom_below(a, x))
                    .map(|x| l.chain_pair_ratio(x, a).unwrap())
                    .sum();
                assert_eq!(sum, ratio(1, 1), "{kind:?} n={n} atom {}", l.atom_key(a));
            }
        }
    }

    #[test]
    fn product_intervals_need_interleavings() {
        // [P_⊥, 1,2|3,4] has two maximal chains: via [12] or via [34]
        let l = lat(LatticeKind::Partitions, 4);
        let x = l.parse_element("1,2|3,4").unwrap();
        let through_chains = l
            .maximal_chains()
            .unwrap()
            .iter()
            .filter(|c| c.contains(&x))
            .count();
        assert_eq!(through_chains, 2);
        assert_eq!(l.chain_count_through(x), BigUint::from(2u32));
        let per_block_only: BigUint = partition_chains(2) * partition_chains(2) * partition_chains(2);
        assert_eq!(per_block_only, BigUint::one());
    }

    #[test]
    fn counts_match_enumeration() {
        let mut cases = vec![];
        for n in 1..=5 {
            cases.push((LatticeKind::Subsets, n));
            cases.push((LatticeKind::Partitions, n));
        }
        for n in 1..=4 {
            cases.push((LatticeKind::Embedded, n));
        }
        for (kind, n) in cases {
            let l = lat(kind, n);
            let chains = l.maximal_chains().unwrap();
            let total = BigUint::from(chains.len());
            assert_eq!(total, l.chain_count_total(), "{kind:?} n={n}");
            let mut through = vec![0usize; l.len()];
            for c in &chains {
                for &x in c {
                    through[x] += 1;
                }
            }
            for (x, &count) in through.iter().enumerate() {
                assert_eq!(BigUint::from(count), l.chain_count_through(x));
                for a in (0..l.num_atoms()).filter(|&a| !l.atom_below(a, x)) {
                    let y = l.join_atom(x, a);
                    let pair = chains
                        .iter()
                        .filter(|c| c.windows(2).any(|w| w[0] == x && w[1] == y))
                        .count();
                    let stats = l.chain_stats(x, a).unwrap();
                    assert_eq!(stats.pair, BigUint::from(pair), "{kind:?} n={n} x={}", l.element(x));
                    assert_eq!(
                        l.chain_pair_ratio(x, a).unwrap(),
                        ratio_of(&BigUint::from(pair), &total)
                    );
                }
            }
        }
    }

    #[test]
    fn segment_counts_agree_with_closed_forms() {
        for (kind, n) in [
            (LatticeKind::Subsets, 6),
            (LatticeKind::Partitions, 7),
            (LatticeKind::Embedded, 6),
        ] {
            let l = lat(kind, n);
            for x in 0..l.len() {
                if x == l.top() {
                    continue;
                }
                let a = (0..l.num_atoms()).find(|&a| !l.atom_below(a, x)).unwrap();
                let stats = l.chain_stats(x, a).unwrap();
                assert_eq!(stats.ratio, l.chain_pair_ratio(x, a).unwrap());
                assert!(stats.pair <= stats.through && stats.through <= stats.total);
            }
        }
    }
}
