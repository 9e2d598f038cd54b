//! Size caps and the memory guard.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_bytes`].
pub const MAX_BYTES_ENV: &str = "ENGINE_MAX_BYTES";

const DEFAULT_MAX_BYTES: u128 = 2 << 30;

/// Caps applied by every operation whose cost grows factorially or
/// exponentially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest symmetric-group degree for enumeration and group-algebra work.
    pub max_group_degree: usize,
    /// Largest tensor exponent for power operations.
    pub max_power: usize,
    /// Largest total graded dimension of a complex raised to a power.
    pub max_dim: usize,
    /// Guard on the estimated size of dense matrices built for a power.
    pub max_bytes: u128,
    /// Worker threads for independent sub-computations; 1 runs inline.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_group_degree: 8, max_power: 5, max_dim: 6, max_bytes: DEFAULT_MAX_BYTES, threads: 1 }
    }
}

impl Limits {
    /// Defaults, with the memory guard taken from `ENGINE_MAX_BYTES` when set.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Some(bytes) = std::env::var(MAX_BYTES_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_bytes = bytes;
        }
        limits
    }

    /// Effectively uncapped, for tests that deliberately go large.
    pub fn unbounded() -> Limits {
        Limits { max_group_degree: 12, max_power: 12, max_dim: usize::MAX, max_bytes: u128::MAX, threads: 1 }
    }

    pub fn check_group_degree(&self, n: usize) -> Result<()> {
        if n > self.max_group_degree {
            return Err(Error::CapExceeded { what: "group degree", value: n, cap: self.max_group_degree });
        }
        Ok(())
    }

    pub fn check_power(&self, m: usize) -> Result<()> {
        if m > self.max_power {
            return Err(Error::CapExceeded { what: "power", value: m, cap: self.max_power });
        }
        self.check_group_degree(m)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::CapExceeded { what: "total dimension", value: dim, cap: self.max_dim });
        }
        Ok(())
    }

    /// Checks the estimated footprint of square dense blocks of the given sizes.
    pub fn check_blocks<I: IntoIterator<Item = usize>>(&self, block_dims: I) -> Result<()> {
        let entry = std::mem::size_of::<crate::linalg::Rational>() as u128;
        let bytes: u128 = block_dims.into_iter().map(|d| (d as u128) * (d as u128) * entry).sum();
        if bytes > self.max_bytes {
            return Err(Error::MemoryGuard { bytes, limit: self.max_bytes });
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Option<rayon::ThreadPool> {
        if self.threads <= 1 {
            return None;
        }
        rayon::ThreadPoolBuilder::new().num_threads(self.threads).build().ok()
    }
}
