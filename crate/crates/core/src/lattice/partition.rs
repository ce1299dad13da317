//! Set partitions of `{1..n}` stored as restricted-growth strings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::classes::ClassVector;
use crate::limits::Limits;

/// Largest ground set a partition may have (block masks are `u64`).
pub const MAX_GROUND: usize = 63;

/// A partition of `{1..n}` in canonical restricted-growth form: element
/// `i` (1-based) carries label `rgs[i - 1]`, and labels are numbered by
/// the minimum element of their block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rgs: Vec<u8>,
}

impl Partition {
    /// `P_⊥`: all singletons.
    pub fn bottom(n: usize) -> Self {
        Partition {
            rgs: (0..n as u8).collect(),
        }
    }

    /// `P^⊤`: a single block.
    pub fn top(n: usize) -> Self {
        Partition { rgs: vec![0; n] }
    }

    /// The atom `[ij]`: one pair block, every other element alone.
    pub fn atom(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain(format!("no atom [{i}{j}] for n={n}")));
        }
        Ok(Partition::bottom(n).merge(i, j))
    }

    /// Builds a partition from arbitrary labels, renumbering them canonically.
    pub fn from_labels<T: PartialEq + Copy>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(p) => p as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Partition { rgs }
    }

    /// Validates a restricted-growth string.
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        if rgs.len() > MAX_GROUND {
            return Err(Error::domain(format!("ground set larger than {MAX_GROUND}")));
        }
        let mut next = 0u8;
        for &l in &rgs {
            if l > next {
                return Err(Error::parse(format!(
                    "not a restricted-growth string: {rgs:?}"
                )));
            }
            if l == next {
                next += 1;
            }
        }
        Ok(Partition { rgs })
    }

    /// Builds a partition from 1-based blocks.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::domain(format!("ground set larger than {MAX_GROUND}")));
        }
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &i in block {
                if i == 0 || i > n {
                    return Err(Error::domain(format!("element {i} outside 1..{n}")));
                }
                if labels[i - 1] != usize::MAX {
                    return Err(Error::domain(format!("element {i} appears twice")));
                }
                labels[i - 1] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::domain(format!("element {} not covered", i + 1)));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Parses block notation `"1,2|3"` over `{1..n}`, or a restricted-growth
    /// string such as `"001"` (recognized by its leading `0`).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let p: Partition = text.parse()?;
        if p.n() != n {
            return Err(Error::domain(format!(
                "partition {text:?} has ground size {}, expected {n}",
                p.n()
            )));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn rgs_string(&self) -> String {
        self.rgs.iter().map(|&l| label_char(l)).collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Label of the block holding element `i` (1-based).
    pub fn block_of(&self, i: usize) -> usize {
        self.rgs[i - 1] as usize
    }

    /// Blocks as bit masks (bit `i - 1` for element `i`), ordered by minimum.
    pub fn block_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.num_blocks()];
        for (i, &l) in self.rgs.iter().enumerate() {
            masks[l as usize] |= 1 << i;
        }
        masks
    }

    /// Blocks as sorted 1-based element lists, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.rgs.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &l in &self.rgs {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// `r(P) = n − |P|`.
    pub fn rank(&self) -> usize {
        self.n() - self.num_blocks()
    }

    /// `s(P) = Σ C(|A|, 2)`, the number of atoms below `P`.
    pub fn size(&self) -> usize {
        self.block_sizes().iter().map(|&k| k * k.saturating_sub(1) / 2).sum()
    }

    pub fn class_vector(&self) -> ClassVector {
        ClassVector::from_block_sizes(self.n(), &self.block_sizes())
    }

    pub fn is_bottom(&self) -> bool {
        self.num_blocks() == self.n()
    }

    pub fn is_top(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// The pair `(i, j)` with `i < j` when this partition is an atom.
    pub fn atom_pair(&self) -> Option<(usize, usize)> {
        if self.rank() != 1 {
            return None;
        }
        let mask = self.block_masks().into_iter().find(|m| m.count_ones() == 2)?;
        let i = mask.trailing_zeros() as usize + 1;
        let j = (63 - mask.leading_zeros()) as usize + 1;
        Some((i, j))
    }

    /// Joins with the atom `[ij]`, merging the blocks of `i` and `j`.
    pub fn merge(&self, i: usize, j: usize) -> Partition {
        let (a, b) = (self.rgs[i - 1], self.rgs[j - 1]);
        if a == b {
            return self.clone();
        }
        let (keep, drop) = (a.min(b), a.max(b));
        let labels: Vec<u8> = self
            .rgs
            .iter()
            .map(|&l| if l == drop { keep } else { l })
            .collect();
        Partition::from_labels(&labels)
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::domain(format!(
                "partitions over different ground sets ({} vs {})",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    /// `self ≥ other`: every block of `other` lies inside a block of `self`.
    pub fn coarsens(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.coarsens_unchecked(other))
    }

    pub(crate) fn coarsens_unchecked(&self, other: &Partition) -> bool {
        // elements sharing a label in `other` must share a label in `self`
        let mut witness = [u8::MAX; 64];
        for (i, &l) in other.rgs.iter().enumerate() {
            let slot = &mut witness[l as usize];
            if *slot == u8::MAX {
                *slot = self.rgs[i];
            } else if *slot != self.rgs[i] {
                return false;
            }
        }
        true
    }

    /// Common refinement: blocks are the nonempty pairwise intersections.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        let labels: Vec<(u8, u8)> = self
            .rgs
            .iter()
            .zip(&other.rgs)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Finest common coarsening: connected components of the union relation.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for rgs in [&self.rgs, &other.rgs] {
            let mut first = [usize::MAX; 64];
            for (i, &l) in rgs.iter().enumerate() {
                let f = &mut first[l as usize];
                if *f == usize::MAX {
                    *f = i;
                } else {
                    let (ra, rb) = (find(&mut parent, *f), find(&mut parent, i));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Ok(Partition::from_labels(&roots))
    }

    /// `self ⋗ other`: `self` merges exactly two blocks of `other`.
    pub fn covers(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.num_blocks() + 1 == other.num_blocks() && self.coarsens_unchecked(other))
    }

    /// Relabels players: element `i` becomes `perm[i - 1]` (1-based images).
    pub fn permute(&self, perm: &[usize]) -> Partition {
        let mut labels = vec![0u8; self.n()];
        for (i, &l) in self.rgs.iter().enumerate() {
            labels[perm[i] - 1] = l;
        }
        Partition::from_labels(&labels)
    }
}

fn label_char(l: u8) -> char {
    std::char::from_digit(l as u32, 36).unwrap_or('?')
}

impl fmt::Display for Partition {
    /// Block notation, e.g. `1,2|3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::parse("empty partition"));
        }
        if s.starts_with('0') && s.chars().all(|c| c.is_ascii_alphanumeric()) {
            let rgs = s
                .chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::parse(format!("bad label {c:?}")))
                })
                .collect::<Result<Vec<u8>>>()?;
            return Partition::from_rgs(rgs);
        }
        let mut blocks = Vec::new();
        for block in s.split('|') {
            let elems = block
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(format!("bad element {e:?} in {text:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            blocks.push(elems);
        }
        let n = blocks.iter().map(|b| b.len()).sum();
        Partition::from_blocks(n, &blocks).map_err(|e| Error::parse(format!("{text:?}: {e}")))
    }
}

/// All `Bell(n)` partitions of `{1..n}`, graded: by rank, then by
/// restricted-growth string. Index 0 is `P_⊥`, the last element `P^⊤`.
pub fn enumerate_partitions(n: usize, limits: &Limits) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if n > limits.max_n {
        return Err(Error::SizeLimit {
            what: "partition enumeration",
            n,
            cap: limits.max_n,
        });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u8; n];
    fn rec(pos: usize, max: u8, rgs: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if pos == rgs.len() {
            out.push(Partition { rgs: rgs.clone() });
            return;
        }
        for l in 0..=max + 1 {
            rgs[pos] = l;
            rec(pos + 1, max.max(l), rgs, out);
        }
    }
    rec(1, 0, &mut rgs, &mut out);
    out.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.rgs.cmp(&b.rgs)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn bell(n: usize) -> usize {
        // B(m+1) = Σ C(m,k) B(k)
        let mut b = vec![1usize];
        for m in 0..n {
            let mut c = 1usize;
            let mut next = 0;
            for (k, bk) in b.iter().enumerate() {
                next += c * bk;
                c = c * (m - k) / (k + 1);
            }
            b.push(next);
        }
        b[n]
    }

    #[test]
    fn enumeration_counts_follow_bell_recurrence() {
        let limits = Limits::default();
        assert_eq!(enumerate_partitions(1, &limits).unwrap(), vec![p("1")]);
        for n in 1..=8 {
            assert_eq!(enumerate_partitions(n, &limits).unwrap().len(), bell(n));
        }
        assert_eq!(enumerate_partitions(5, &limits).unwrap().len(), 52);
    }

    #[test]
    fn enumeration_order_for_three() {
        let all = enumerate_partitions(3, &Limits::default()).unwrap();
        let shown: Vec<String> = all.iter().map(|q| q.to_string()).collect();
        assert_eq!(shown, ["1|2|3", "1,2|3", "1,3|2", "1|2,3", "1,2,3"]);
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_partitions(9, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { cap: 8, .. }));
        assert!(enumerate_partitions(9, &Limits::with_max_n(9)).is_ok());
    }

    #[test]
    fn parse_and_render() {
        let q = p("1,2|3|4,5");
        assert_eq!(q.rgs_string(), "00122");
        assert_eq!(p("00102").to_string(), "1,2,4|3|5");
        assert_eq!(q, p("00122"));
        assert!("1,2|2".parse::<Partition>().is_err());
        assert!("1,3".parse::<Partition>().is_err());
        assert_eq!(p("0102").to_string(), "1,3|2|4");
        assert!("021".parse::<Partition>().is_err());
        assert!(Partition::parse(3, "1,2|3,4").is_err());
    }

    #[test]
    fn order_examples() {
        let top = Partition::top(3);
        for q in enumerate_partitions(3, &Limits::default()).unwrap() {
            assert!(top.coarsens(&q).unwrap());
            assert!(q.coarsens(&q).unwrap());
        }
        assert!(!p("1,2|3").coarsens(&p("1,3|2")).unwrap());
        assert!(p("1,2|3").coarsens(&Partition::top(4)).is_err());
    }

    #[test]
    fn meet_join_examples() {
        let a12 = p("1,2|3");
        let a13 = p("1,3|2");
        assert_eq!(a12.join(&a13).unwrap(), Partition::top(3));
        assert_eq!(a12.meet(&a13).unwrap(), Partition::bottom(3));
        assert_eq!(a12.meet(&Partition::bottom(3)).unwrap(), Partition::bottom(3));
        assert_eq!(
            p("1,2|3|4").join(&p("1|2|3,4")).unwrap(),
            p("1,2|3,4")
        );
        assert!(a12.join(&Partition::top(2)).is_err());
    }

    #[test]
    fn covering_examples() {
        let top = Partition::top(3);
        assert!(top.covers(&p("1,2|3")).unwrap());
        assert!(!top.covers(&Partition::bottom(3)).unwrap());
        assert!(p("1,2|3").covers(&Partition::bottom(3)).unwrap());
        assert!(!p("1,2|3").covers(&p("1,3|2")).unwrap());
    }

    #[test]
    fn rank_size_class() {
        let top = Partition::top(3);
        assert_eq!((top.size(), top.rank()), (3, 2));
        let bot = Partition::bottom(3);
        assert_eq!((bot.size(), bot.rank()), (0, 0));
        assert_eq!(p("1,2|3,4").size(), 2);
        assert_eq!(p("1,2|3,4").class_vector().counts(), &[0, 2, 0, 0]);
        assert_eq!(Partition::atom(4, 3, 1).unwrap().atom_pair(), Some((1, 3)));
        assert!(Partition::atom(3, 2, 2).is_err());
    }

    #[test]
    fn permute_relabels() {
        let q = p("1,2|3");
        assert_eq!(q.permute(&[3, 2, 1]), p("1|2,3"));
    }
}
