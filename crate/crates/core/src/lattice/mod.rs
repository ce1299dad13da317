//! The three lattices games live on: coalitions `2^N`, partitions `P^N`
//! and embedded subsets `E^N`.
//!
//! A [`Lattice`] is an immutable, fully tabulated view of one of them.
//! Elements are indexed in a graded order (rank first), so every element
//! appears after everything below it; index 0 is the bottom and the last
//! index is the top. Order, meet and join on `E^N` are transported from the
//! partition lattice over `n + 1` players.

pub mod chains;
pub mod classes;
pub mod embedded;
pub mod partition;
pub mod subset;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;

pub use chains::ChainStats;
pub use classes::{all_classes, class_count, ClassVector};
pub use embedded::{enumerate_embedded, EmbeddedRecord, EmbeddedSubset};
pub use partition::{enumerate_partitions, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeKind {
    /// Boolean lattice `2^N` of coalitions.
    Subsets,
    /// Partition lattice `P^N`.
    Partitions,
    /// Geometric lattice `E^N` of embedded subsets.
    Embedded,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Subsets => "subsets",
            LatticeKind::Partitions => "partitions",
            LatticeKind::Embedded => "embedded",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LatticeKind::Subsets => "2^N",
            LatticeKind::Partitions => "P^N",
            LatticeKind::Embedded => "E^N",
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "subsets" | "boolean" | "2^n" | "coalitional" | "c" => Ok(LatticeKind::Subsets),
            "partitions" | "p^n" | "global" | "g" => Ok(LatticeKind::Partitions),
            "embedded" | "e^n" | "pff" => Ok(LatticeKind::Embedded),
            other => Err(Error::parse(format!("unknown lattice {other:?}"))),
        }
    }
}

/// A lattice element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Element {
    Subset(u64),
    Partition(Partition),
    Embedded(EmbeddedSubset),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Subset(m) => f.write_str(&subset::render(*m)),
            Element::Partition(p) => write!(f, "{p}"),
            Element::Embedded(e) => write!(f, "{e}"),
        }
    }
}

impl Element {
    pub fn parse(kind: LatticeKind, n: usize, text: &str) -> Result<Element> {
        Ok(match kind {
            LatticeKind::Subsets => Element::Subset(subset::parse(n, text)?),
            LatticeKind::Partitions => Element::Partition(Partition::parse(n, text)?),
            LatticeKind::Embedded => Element::Embedded(EmbeddedSubset::parse(n, text)?),
        })
    }
}

/// Orbit label of an element under relabeling of the players.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ElementClass {
    Cardinality(usize),
    Partition(ClassVector),
    Embedded(usize, ClassVector),
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementClass::Cardinality(k) => write!(f, "{k}"),
            ElementClass::Partition(c) => write!(f, "{c}"),
            ElementClass::Embedded(a, c) => write!(f, "{a}:{c}"),
        }
    }
}

impl ElementClass {
    /// Parses `"k"`, `"2+1"` or `"|A|:2+1"` depending on the lattice.
    pub fn parse(kind: LatticeKind, n: usize, text: &str) -> Result<Self> {
        let s = text.trim();
        match kind {
            LatticeKind::Subsets => {
                let k: usize = s
                    .parse()
                    .map_err(|_| Error::parse(format!("bad cardinality class {text:?}")))?;
                if k > n {
                    return Err(Error::parse(format!("cardinality {k} exceeds n={n}")));
                }
                Ok(ElementClass::Cardinality(k))
            }
            LatticeKind::Partitions => Ok(ElementClass::Partition(ClassVector::parse(n, s)?)),
            LatticeKind::Embedded => {
                let (a, c) = s
                    .split_once(':')
                    .ok_or_else(|| Error::parse(format!("embedded class {text:?} lacks ':'")))?;
                let a: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad class {text:?}")))?;
                let c = ClassVector::parse(n, c)?;
                if a != 0 && c.get(a) == 0 {
                    return Err(Error::parse(format!("class {text:?} has no block of size {a}")));
                }
                Ok(ElementClass::Embedded(a, c))
            }
        }
    }
}

/// Internal order representation: coalition masks, or partitions (for
/// `E^N` these are the images over `n + 1` players).
#[derive(Clone, Debug)]
enum Shape {
    Mask(u64),
    Plus(Partition),
}

/// A fully tabulated lattice. Immutable after construction.
pub struct Lattice {
    kind: LatticeKind,
    n: usize,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    shapes: Vec<Shape>,
    shape_index: HashMap<Partition, usize>,
    mask_index: Vec<usize>,
    ranks: Vec<usize>,
    sizes: Vec<usize>,
    below: Vec<Vec<usize>>,
    atoms: Vec<usize>,
    atom_pos: Vec<Option<usize>>,
    atom_join: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    limits: Limits,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({}, n={}, |L|={})", self.kind.symbol(), self.n, self.len())
    }
}

/// Lattices are equal when they are the same kind over the same players.
impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn new(kind: LatticeKind, n: usize, limits: &Limits) -> Result<Arc<Lattice>> {
        limits.check_lattice(kind, n)?;
        let elements: Vec<Element> = match kind {
            LatticeKind::Subsets => {
                let mut masks: Vec<u64> = (0..=subset::full(n)).collect();
                masks.sort_by_key(|&m| (m.count_ones(), subset::members(m)));
                masks.into_iter().map(Element::Subset).collect()
            }
            LatticeKind::Partitions => enumerate_partitions(n, limits)?
                .into_iter()
                .map(Element::Partition)
                .collect(),
            LatticeKind::Embedded => enumerate_embedded(n, limits)?
                .into_iter()
                .map(Element::Embedded)
                .collect(),
        };
        Ok(Arc::new(Lattice::tabulate(kind, n, elements, *limits)))
    }

    fn tabulate(kind: LatticeKind, n: usize, elements: Vec<Element>, limits: Limits) -> Lattice {
        let len = elements.len();
        let index: HashMap<Element, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let shapes: Vec<Shape> = elements
            .iter()
            .map(|e| match e {
                Element::Subset(m) => Shape::Mask(*m),
                Element::Partition(p) => Shape::Plus(p.clone()),
                Element::Embedded(x) => Shape::Plus(x.to_plus_partition()),
            })
            .collect();
        let mut shape_index = HashMap::new();
        let mut mask_index = Vec::new();
        match kind {
            LatticeKind::Subsets => {
                mask_index = vec![0; len];
                for (i, s) in shapes.iter().enumerate() {
                    if let Shape::Mask(m) = s {
                        mask_index[*m as usize] = i;
                    }
                }
            }
            _ => {
                for (i, s) in shapes.iter().enumerate() {
                    if let Shape::Plus(p) = s {
                        shape_index.insert(p.clone(), i);
                    }
                }
            }
        }
        let ranks: Vec<usize> = elements
            .iter()
            .map(|e| match e {
                Element::Subset(m) => m.count_ones() as usize,
                Element::Partition(p) => p.rank(),
                Element::Embedded(x) => x.rank(),
            })
            .collect();
        let sizes: Vec<usize> = elements
            .iter()
            .map(|e| match e {
                Element::Subset(m) => m.count_ones() as usize,
                Element::Partition(p) => p.size(),
                Element::Embedded(x) => x.size(),
            })
            .collect();
        let atoms: Vec<usize> = (0..len).filter(|&i| ranks[i] == 1).collect();
        let mut atom_pos = vec![None; len];
        for (p, &a) in atoms.iter().enumerate() {
            atom_pos[a] = Some(p);
        }

        let mut lattice = Lattice {
            kind,
            n,
            elements,
            index,
            shapes,
            shape_index,
            mask_index,
            ranks,
            sizes,
            below: Vec::new(),
            atoms,
            atom_pos,
            atom_join: Vec::new(),
            upper_covers: Vec::new(),
            limits,
        };

        // graded order: anything strictly below y has strictly smaller rank
        let below: Vec<Vec<usize>> = (0..len)
            .map(|y| {
                (0..y)
                    .filter(|&x| lattice.ranks[x] < lattice.ranks[y] && lattice.shape_leq(x, y))
                    .collect()
            })
            .collect();
        let atom_join: Vec<Vec<usize>> = (0..len)
            .map(|x| {
                lattice
                    .atoms
                    .iter()
                    .map(|&a| lattice.join_unchecked(x, a))
                    .collect()
            })
            .collect();
        let upper_covers: Vec<Vec<usize>> = atom_join
            .iter()
            .enumerate()
            .map(|(x, row)| {
                let mut ys: Vec<usize> = row.iter().copied().filter(|&y| y != x).collect();
                ys.sort_unstable();
                ys.dedup();
                ys
            })
            .collect();
        lattice.below = below;
        lattice.atom_join = atom_join;
        lattice.upper_covers = upper_covers;
        lattice
    }

    fn shape_leq(&self, x: usize, y: usize) -> bool {
        match (&self.shapes[x], &self.shapes[y]) {
            (Shape::Mask(a), Shape::Mask(b)) => a & !b == 0,
            (Shape::Plus(p), Shape::Plus(q)) => q.coarsens_unchecked(p),
            _ => unreachable!("mixed shapes"),
        }
    }

    fn lookup_shape(&self, shape: &Shape) -> usize {
        match shape {
            Shape::Mask(m) => self.mask_index[*m as usize],
            Shape::Plus(p) => self.shape_index[p],
        }
    }

    fn join_unchecked(&self, x: usize, y: usize) -> usize {
        let shape = match (&self.shapes[x], &self.shapes[y]) {
            (Shape::Mask(a), Shape::Mask(b)) => Shape::Mask(a | b),
            (Shape::Plus(p), Shape::Plus(q)) => Shape::Plus(p.join(q).expect("same ground")),
            _ => unreachable!("mixed shapes"),
        };
        self.lookup_shape(&shape)
    }

    fn meet_unchecked(&self, x: usize, y: usize) -> usize {
        let shape = match (&self.shapes[x], &self.shapes[y]) {
            (Shape::Mask(a), Shape::Mask(b)) => Shape::Mask(a & b),
            (Shape::Plus(p), Shape::Plus(q)) => Shape::Plus(p.meet(q).expect("same ground")),
            _ => unreachable!("mixed shapes"),
        };
        self.lookup_shape(&shape)
    }

    fn check(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(Error::domain(format!(
                "element index {x} outside lattice of {} elements",
                self.len()
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Element {
        &self.elements[x]
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| Error::domain(format!("{e} is not an element of this lattice")))
    }

    /// Parses an element in this lattice's textual notation.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let e = Element::parse(self.kind, self.n, text)?;
        self.index_of(&e)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    /// Number of atoms below `x`.
    pub fn size(&self, x: usize) -> usize {
        self.sizes[x]
    }

    /// Element indices of the atoms, in canonical order.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// Position of `x` among the atoms, if it is one.
    pub fn atom_position(&self, x: usize) -> Option<usize> {
        self.atom_pos[x]
    }

    /// Elements strictly below `y`, ascending.
    pub fn strictly_below(&self, y: usize) -> &[usize] {
        &self.below[y]
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    /// `x ∨ a` for the atom at position `atom`.
    pub fn join_atom(&self, x: usize, atom: usize) -> usize {
        self.atom_join[x][atom]
    }

    /// Whether the atom at position `atom` lies below `x`.
    pub fn atom_below(&self, atom: usize, x: usize) -> bool {
        self.atom_join[x][atom] == x
    }

    pub fn leq(&self, x: usize, y: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x == y || (self.ranks[x] < self.ranks[y] && self.shape_leq(x, y)))
    }

    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.join_unchecked(x, y))
    }

    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.meet_unchecked(x, y))
    }

    /// `y ⋗ x`.
    pub fn covers(&self, y: usize, x: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.upper_covers[x].binary_search(&y).is_ok())
    }

    pub fn class_of(&self, x: usize) -> ElementClass {
        match &self.elements[x] {
            Element::Subset(m) => ElementClass::Cardinality(m.count_ones() as usize),
            Element::Partition(p) => ElementClass::Partition(p.class_vector()),
            Element::Embedded(e) => {
                let (a, c) = e.class();
                ElementClass::Embedded(a, c)
            }
        }
    }

    /// Distinct classes present, in order of first appearance.
    pub fn classes(&self) -> Vec<ElementClass> {
        let mut seen = Vec::new();
        for x in 0..self.len() {
            let c = self.class_of(x);
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen
    }

    /// Index of the image of `x` when player `i` is renamed `perm[i - 1]`.
    pub fn permute(&self, x: usize, perm: &[usize]) -> Result<usize> {
        if perm.len() != self.n {
            return Err(Error::domain("permutation length differs from n"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::domain(format!("{perm:?} is not a permutation")));
            }
        }
        let image = match &self.elements[x] {
            Element::Subset(m) => Element::Subset(
                subset::members(*m)
                    .into_iter()
                    .fold(0, |acc, i| acc | 1 << (perm[i - 1] - 1)),
            ),
            Element::Partition(p) => Element::Partition(p.permute(perm)),
            Element::Embedded(e) => Element::Embedded(e.permute(perm)),
        };
        self.index_of(&image)
    }

    /// Index of the element for a coalition mask (`2^N` only).
    pub fn subset_index(&self, mask: u64) -> Result<usize> {
        if self.kind != LatticeKind::Subsets {
            return Err(Error::WrongLattice {
                expected: LatticeKind::Subsets.name(),
                found: self.kind.name(),
            });
        }
        self.mask_index
            .get(mask as usize)
            .copied()
            .ok_or_else(|| Error::domain(format!("coalition {} outside 1..{}", subset::render(mask), self.n)))
    }

    /// Textual key of the atom at position `atom`: `"i,j"` on `P^N`, `"i"` on
    /// `2^N`, the element notation on `E^N`.
    pub fn atom_key(&self, atom: usize) -> String {
        match &self.elements[self.atoms[atom]] {
            Element::Subset(m) => (m.trailing_zeros() + 1).to_string(),
            Element::Partition(p) => {
                let (i, j) = p.atom_pair().expect("atom");
                format!("{i},{j}")
            }
            Element::Embedded(e) => e.to_string(),
        }
    }

    /// Inverse of [`Lattice::atom_key`]; also accepts full element notation.
    pub fn parse_atom(&self, text: &str) -> Result<usize> {
        let idx = match self.kind {
            LatticeKind::Subsets => {
                let t = text.trim();
                let t = if t.starts_with('{') { t.to_string() } else { format!("{{{t}}}") };
                self.parse_element(&t)?
            }
            LatticeKind::Partitions => {
                let t = text.trim();
                match t.split_once(',') {
                    Some((i, j)) if !t.contains('|') && !j.contains(',') => {
                        let i: usize = i.trim().parse().map_err(|_| Error::parse(format!("bad atom {text:?}")))?;
                        let j: usize = j.trim().parse().map_err(|_| Error::parse(format!("bad atom {text:?}")))?;
                        let p = Partition::atom(self.n, i, j)?;
                        self.index_of(&Element::Partition(p))?
                    }
                    _ => self.parse_element(t)?,
                }
            }
            LatticeKind::Embedded => self.parse_element(text)?,
        };
        self.atom_position(idx)
            .ok_or_else(|| Error::domain(format!("{text:?} is not an atom")))
    }
}
