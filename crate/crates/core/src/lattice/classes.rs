//! Block-size classes (types) of partitions and the orbit counts behind
//! symmetric games.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::rational::factorial;

/// `c^P`: `counts[k - 1]` is the number of `k`-element blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassVector {
    counts: Vec<usize>,
}

impl ClassVector {
    /// Validates `Σ k·λ_k = n` where `n = counts.len()`.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        let total: usize = counts.iter().enumerate().map(|(k, c)| (k + 1) * c).sum();
        if total != n {
            return Err(Error::domain(format!(
                "class vector {counts:?} sums to {total}, expected {n}"
            )));
        }
        Ok(ClassVector { counts })
    }

    pub fn from_block_sizes(n: usize, sizes: &[usize]) -> Self {
        let mut counts = vec![0; n];
        for &k in sizes {
            counts[k - 1] += 1;
        }
        ClassVector { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of `k`-blocks, `k ≥ 1`.
    pub fn get(&self, k: usize) -> usize {
        self.counts.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn num_blocks(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Block sizes, largest first.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.num_blocks());
        for k in (1..=self.n()).rev() {
            sizes.extend(std::iter::repeat_n(k, self.get(k)));
        }
        sizes
    }

    /// Parses an integer partition written as `"2+1+1"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut counts = vec![0; n];
        for part in text.split('+') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad class {text:?}")))?;
            if k == 0 || k > n {
                return Err(Error::parse(format!("block size {k} out of range in {text:?}")));
            }
            counts[k - 1] += 1;
        }
        ClassVector::new(counts).map_err(|e| Error::parse(e.to_string()))
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.block_sizes().iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

/// Number of set partitions of `{1..n}` with class `λ`:
/// `n! / Π_k (k!^{λ_k} λ_k!)`.
pub fn class_count(class: &ClassVector) -> BigUint {
    let mut denom = BigUint::from(1u32);
    for k in 1..=class.n() {
        let c = class.get(k);
        denom *= factorial(k).pow(c as u32) * factorial(c);
    }
    factorial(class.n()) / denom
}

/// All classes of `n` (integer partitions), in lexicographic order of
/// their descending part lists.
pub fn all_classes(n: usize) -> Vec<ClassVector> {
    let mut out = Vec::new();
    fn rec(remaining: usize, max: usize, parts: &mut Vec<usize>, n: usize, out: &mut Vec<ClassVector>) {
        if remaining == 0 {
            out.push(ClassVector::from_block_sizes(n, parts));
            return;
        }
        for k in (1..=remaining.min(max)).rev() {
            parts.push(k);
            rec(remaining - k, k, parts, n, out);
            parts.pop();
        }
    }
    rec(n, n, &mut Vec::new(), n, &mut out);
    out
}
