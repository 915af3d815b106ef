//! Size caps for operations whose cost grows like `3^n`.

use std::error::Error;
use std::fmt;

/// Limits on the exponent `n` accepted by the expensive operations.
///
/// `3^n` objects get materialized by boundary and scan computations, so
/// callers must opt in to large exponents explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` accepted by single-cover operations (kernels, boundary
    /// components, log Chern bookkeeping).
    pub max_n_single: u32,
    /// Largest `n` accepted by operations that sweep all `3^n` residues.
    pub max_n_scan: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_n_single: 12,
            max_n_scan: 8,
        }
    }
}

impl Caps {
    /// A cap configuration allowing `n` up to `max_n` everywhere.
    pub fn with_max_n(max_n: u32) -> Self {
        Caps {
            max_n_single: max_n,
            max_n_scan: max_n,
        }
    }

    pub fn check_single(&self, n: u32) -> Result<(), CapExceeded> {
        if n > self.max_n_single {
            Err(CapExceeded {
                requested: n,
                cap: self.max_n_single,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_scan(&self, n: u32) -> Result<(), CapExceeded> {
        if n > self.max_n_scan {
            Err(CapExceeded {
                requested: n,
                cap: self.max_n_scan,
            })
        } else {
            Ok(())
        }
    }
}

/// An operation was asked to run above its configured exponent cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapExceeded {
    pub requested: u32,
    pub cap: u32,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exponent n = {} exceeds the configured cap {}",
            self.requested, self.cap
        )
    }
}

impl Error for CapExceeded {}
