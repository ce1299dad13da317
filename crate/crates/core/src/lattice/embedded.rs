//! Embedded subsets `(A, P)` with `A ∈ P` or `A = ∅`, realized through the
//! bijection with partitions of `{1..n+1}`: player `n + 1` joins block `A`,
//! or stands alone when `A` is empty.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::classes::ClassVector;
use crate::lattice::partition::{enumerate_partitions, Partition};
use crate::lattice::subset;
use crate::limits::Limits;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EmbeddedSubset {
    subset: u64,
    partition: Partition,
}

impl EmbeddedSubset {
    pub fn new(subset: u64, partition: Partition) -> Result<Self> {
        if subset != 0 && !partition.block_masks().contains(&subset) {
            return Err(Error::domain(format!(
                "{} is neither empty nor a block of {partition}",
                subset::render(subset)
            )));
        }
        Ok(EmbeddedSubset { subset, partition })
    }

    pub fn bottom(n: usize) -> Self {
        EmbeddedSubset {
            subset: 0,
            partition: Partition::bottom(n),
        }
    }

    pub fn top(n: usize) -> Self {
        EmbeddedSubset {
            subset: subset::full(n),
            partition: Partition::top(n),
        }
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn subset(&self) -> u64 {
        self.subset
    }

    pub fn members(&self) -> Vec<usize> {
        subset::members(self.subset)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `r(A,P) = r(P) + min(|A|, 1)`.
    pub fn rank(&self) -> usize {
        self.partition.rank() + usize::from(self.subset != 0)
    }

    /// `s(A,P) = |A| + s(P)`.
    pub fn size(&self) -> usize {
        self.subset.count_ones() as usize + self.partition.size()
    }

    /// `c^{A,P} = (|A|, c^P)`.
    pub fn class(&self) -> (usize, ClassVector) {
        (self.subset.count_ones() as usize, self.partition.class_vector())
    }

    /// The partition `P^{A^c}` of the complement induced by `P`.
    pub fn complement_partition_sizes(&self) -> Vec<usize> {
        self.partition
            .block_masks()
            .into_iter()
            .filter(|&b| b != self.subset)
            .map(|b| b.count_ones() as usize)
            .collect()
    }

    /// Image in the partition lattice over `n + 1` players.
    pub fn to_plus_partition(&self) -> Partition {
        let n = self.n();
        let mut labels: Vec<usize> = self.partition.rgs().iter().map(|&l| l as usize).collect();
        let extra = if self.subset == 0 {
            self.partition.num_blocks()
        } else {
            self.partition.block_of(self.subset.trailing_zeros() as usize + 1)
        };
        labels.push(extra);
        debug_assert_eq!(labels.len(), n + 1);
        Partition::from_labels(&labels)
    }

    /// Inverse of [`EmbeddedSubset::to_plus_partition`].
    pub fn from_plus_partition(plus: &Partition) -> Result<Self> {
        let m = plus.n();
        if m < 2 {
            return Err(Error::domain("need at least two elements to drop the extra player"));
        }
        let extra_mask = 1u64 << (m - 1);
        let block = plus
            .block_masks()
            .into_iter()
            .find(|b| b & extra_mask != 0)
            .expect("extra player lies in some block");
        let subset = block & !extra_mask;
        let partition = Partition::from_labels(&plus.rgs()[..m - 1]);
        Ok(EmbeddedSubset { subset, partition })
    }

    /// Relabels players: element `i` becomes `perm[i - 1]`.
    pub fn permute(&self, perm: &[usize]) -> EmbeddedSubset {
        let subset = subset::members(self.subset)
            .into_iter()
            .fold(0u64, |m, i| m | 1 << (perm[i - 1] - 1));
        EmbeddedSubset {
            subset,
            partition: self.partition.permute(perm),
        }
    }

    /// Parses `A:P`, e.g. `{1,2}:1,2|3` or `{}:1|2|3`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let (a, p) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("embedded subset {text:?} lacks ':'")))?;
        let partition = Partition::parse(n, p)?;
        let subset = subset::parse(n, a)?;
        EmbeddedSubset::new(subset, partition).map_err(|e| Error::parse(e.to_string()))
    }
}

impl fmt::Display for EmbeddedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", subset::render(self.subset), self.partition)
    }
}

/// JSON record form `{"A": [...], "P": "blocks"}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedRecord {
    #[serde(rename = "A")]
    pub subset: Vec<usize>,
    #[serde(rename = "P")]
    pub partition: String,
}

impl From<&EmbeddedSubset> for EmbeddedRecord {
    fn from(x: &EmbeddedSubset) -> Self {
        EmbeddedRecord {
            subset: x.members(),
            partition: x.partition.to_string(),
        }
    }
}

impl EmbeddedRecord {
    pub fn to_embedded(&self) -> Result<EmbeddedSubset> {
        let partition: Partition = self.partition.parse()?;
        let n = partition.n();
        if self.subset.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::parse(format!("record subset {:?} outside 1..{n}", self.subset)));
        }
        EmbeddedSubset::new(subset::mask_of(&self.subset), partition)
    }
}

/// All `Bell(n + 1)` embedded subsets, graded by rank; within a rank, the
/// nonempty `A` come first, ordered by `A` and then by `P`.
pub fn enumerate_embedded(n: usize, limits: &Limits) -> Result<Vec<EmbeddedSubset>> {
    limits.check_lattice(crate::lattice::LatticeKind::Embedded, n)?;
    let mut out: Vec<EmbeddedSubset> = enumerate_partitions(n + 1, limits)?
        .iter()
        .map(|p| EmbeddedSubset::from_plus_partition(p).expect("n + 1 >= 2"))
        .collect();
    out.sort_by_key(embedded_order);
    Ok(out)
}

pub(crate) fn embedded_order(x: &EmbeddedSubset) -> (usize, bool, Vec<usize>, Vec<u8>) {
    (x.rank(), x.subset == 0, x.members(), x.partition.rgs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, s: &str) -> EmbeddedSubset {
        EmbeddedSubset::parse(n, s).unwrap()
    }

    #[test]
    fn transport_examples() {
        assert_eq!(e(2, "{}:1|2").to_plus_partition().to_string(), "1|2|3");
        assert_eq!(e(2, "{1,2}:1,2").to_plus_partition().to_string(), "1,2,3");
        assert_eq!(e(2, "{1}:1|2").to_plus_partition().to_string(), "1,3|2");
        assert_eq!(e(2, "{2}:1|2").to_plus_partition().to_string(), "1|2,3");
        assert_eq!(e(2, "{}:1,2").to_plus_partition().to_string(), "1,2|3");
    }

    #[test]
    fn round_trip_all() {
        let limits = Limits::default();
        for n in 1..=5 {
            let all = enumerate_embedded(n, &limits).unwrap();
            assert_eq!(all.len(), enumerate_partitions(n + 1, &limits).unwrap().len());
            for x in &all {
                let back = EmbeddedSubset::from_plus_partition(&x.to_plus_partition()).unwrap();
                assert_eq!(&back, x);
                assert_eq!(x.rank(), x.to_plus_partition().rank());
                assert_eq!(x.size(), x.to_plus_partition().size());
            }
        }
    }

    #[test]
    fn malformed_rejected() {
        let p: Partition = "1,2|3".parse().unwrap();
        assert!(EmbeddedSubset::new(0b001, p.clone()).is_err());
        assert!(EmbeddedSubset::new(0b011, p).is_ok());
        assert!(EmbeddedSubset::parse(3, "{1}:1,2|3").is_err());
        assert!(EmbeddedSubset::parse(3, "1,2|3").is_err());
    }

    #[test]
    fn rank_size_class() {
        let x = e(3, "{1,2}:1,2|3");
        assert_eq!((x.rank(), x.size()), (2, 3));
        assert_eq!(x.class().0, 2);
        assert_eq!(e(3, "{}:1,2|3").rank(), 1);
    }

    #[test]
    fn record_round_trip() {
        let x = e(3, "{3}:1,2|3");
        let rec = EmbeddedRecord::from(&x);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"A":[3],"P":"1,2|3"}"#);
        let back: EmbeddedRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_embedded().unwrap(), x);
    }

    #[test]
    fn atoms_listed_first_with_nonempty_subsets() {
        let all = enumerate_embedded(2, &Limits::default()).unwrap();
        let shown: Vec<String> = all.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["{}:1|2", "{1}:1|2", "{2}:1|2", "{}:1,2", "{1,2}:1,2"]);
    }
}
