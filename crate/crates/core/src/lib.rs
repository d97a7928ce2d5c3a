//! Finite quantaloids, categories enriched in them, distributors, and the
//! completions and classifiers built from presheaves.
//!
//! Everything is finite and computed by exhaustive enumeration. Operations
//! that enumerate candidate maps take a [`Budget`] and fail with
//! [`Error::EnumerationBudgetExceeded`] instead of truncating.

pub mod catalog;
pub mod classifier;
pub mod diagonal;
pub mod distributor;
pub mod error;
pub mod order_algebra;
pub mod presheaf;
pub mod qcat;
pub mod qset;
pub mod quantaloid;
pub mod symmetry;

pub use error::{Error, Result, Violation};

/// Upper bound on the number of candidate maps an enumeration may inspect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1_000_000)
    }
}

impl Budget {
    pub fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::EnumerationBudgetExceeded { needed, budget: self.0 })
        } else {
            Ok(())
        }
    }
}
