use crate::error::{Error, Result};
use crate::lattice::LatticeKind;

/// Enumeration caps. Lattice tables are dense, so the cap bounds the
/// number of ground elements of the underlying partition lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_chain_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 8,
            max_chain_n: 5,
        }
    }
}

impl Limits {
    pub fn with_max_n(max_n: usize) -> Self {
        Limits {
            max_n,
            ..Limits::default()
        }
    }

    /// Checks that the full lattice of `kind` over `n` players may be built.
    /// Embedded subsets of `n` players count as partitions of `n + 1`.
    pub fn check_lattice(&self, kind: LatticeKind, n: usize) -> Result<()> {
        let effective = match kind {
            LatticeKind::Embedded => n + 1,
            _ => n,
        };
        if n == 0 {
            return Err(Error::domain("ground set must have at least one player"));
        }
        if effective > self.max_n {
            return Err(Error::SizeLimit {
                what: kind.name(),
                n,
                cap: self.max_n,
            });
        }
        Ok(())
    }

    pub fn check_chains(&self, n: usize) -> Result<()> {
        if n > self.max_chain_n {
            return Err(Error::SizeLimit {
                what: "maximal chain enumeration",
                n,
                cap: self.max_chain_n,
            });
        }
        Ok(())
    }
}
