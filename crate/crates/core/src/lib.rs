//! Exact computations over explicit finite commutative rings.
//!
//! A ring is held as full addition and multiplication tables ([`RingTable`]);
//! ideals are membership masks ([`Ideal`]). On top of that the crate decides
//! primeness, n-absorbing and n-OA membership (a proper ideal `I` where
//! `a1...a(n+1) in I` for nonunits forces `a1...an in I` or `a(n+1) in I`),
//! searches for factorizations of ideals into n-OA or prime ideals, and runs a
//! corpus of structural checks over curated rings.

pub mod bitset;
pub mod classify;
mod error;
pub mod expr;
pub mod factorize;
pub mod ideal;
pub mod module;
pub mod ring;
pub mod spec;
pub mod verify;

pub use bitset::BitSet;
pub use classify::{ClassReport, OaOracle};
pub use error::{Error, Result};
pub use factorize::{Certificate, ClosureIndex, FactorClass, OafVerdict};
pub use ideal::Ideal;
pub use module::ModuleTable;
pub use ring::{Elem, LocalFactor, RingTable};
pub use spec::{ModuleSpec, RingSpec, SpecDocument};

/// Resource guards shared by every construction and query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest ring (or module) accepted, in elements.
    pub max_ring_size: usize,
    /// Tuple visits allowed per brute-force predicate call.
    pub tuple_budget: u64,
    /// Largest ideal lattice enumerated.
    pub max_ideals: usize,
}

/// Tables store element ids as `u16`.
pub const HARD_MAX_RING_SIZE: usize = 1 << 16;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: 4096,
            tuple_budget: 100_000_000,
            max_ideals: 100_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_size(&self, size: u128) -> Result<usize> {
        let limit = self.max_ring_size.min(HARD_MAX_RING_SIZE);
        if size > limit as u128 {
            Err(Error::SizeGuard { size, limit })
        } else {
            Ok(size as usize)
        }
    }
}
