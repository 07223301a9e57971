//! Finite semigroups given by Cayley tables.
//!
//! The crate builds congruences and their towers, quotient semigroups,
//! single-row Rees matrix semigroups `M(S; Λ; P)` and the explicit maps
//! relating them, and checks the structural theorems connecting a semigroup
//! with its right regular representation over exhaustively enumerated small
//! semigroups.
//!
//! ```
//! use sgp_core::{family, FamilyKind, relations};
//!
//! let n3 = family(FamilyKind::NilpotentCyclic, 3).unwrap();
//! let theta = relations::theta(&n3);
//! assert_eq!(theta.to_string(), "0 1 1");
//! ```

pub mod analysis;
pub mod catalog;
mod error;
pub mod format;
pub mod morphisms;
pub mod rees;
pub mod relations;
pub mod semigroup;
pub mod theorems;

pub use error::{Error, Result};
pub use semigroup::{family, ElementId, FamilyKind, Semigroup};
