//! Finite semigroups as validated Cayley tables.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an element of a finite semigroup, always `< order`.
pub type ElementId = usize;

/// A finite semigroup stored as a row-major Cayley table: `table[a * n + b] = a·b`.
///
/// Values are immutable once validated, so every downstream computation is a
/// pure function of the table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semigroup {
    order: usize,
    table: Vec<ElementId>,
}

impl Semigroup {
    /// Validates a square table: entries in range, then all `n³` associativity triples.
    ///
    /// The associativity error names the lexicographically first failing triple.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare { row, len: entries.len(), expected: n });
            }
            table.extend(entries);
        }
        Self::from_flat(n, table)
    }

    /// Same as [`Semigroup::new`] but takes the table already flattened row-major.
    pub fn from_flat(order: usize, table: Vec<ElementId>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if table.len() != order * order {
            return Err(Error::NotSquare { row: table.len() / order, len: table.len() % order, expected: order });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::OutOfRangeEntry(pos / order, pos % order));
        }
        let s = Semigroup { order, table };
        if let Some((a, b, c)) = s.first_associativity_failure() {
            return Err(Error::AssociativityViolation(a, b, c));
        }
        Ok(s)
    }

    fn first_associativity_failure(&self) -> Option<(ElementId, ElementId, ElementId)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a·b`. Panics if either index is out of range.
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        assert!(a < self.order && b < self.order, "element out of range");
        self.table[a * self.order + b]
    }

    /// `a·b·c`, evaluated left to right.
    #[inline]
    pub fn mul3(&self, a: ElementId, b: ElementId, c: ElementId) -> ElementId {
        self.mul(self.mul(a, b), c)
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order
    }

    pub fn row(&self, a: ElementId) -> &[ElementId] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn column(&self, b: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.order).map(move |x| self.mul(x, b))
    }

    pub fn rows(&self) -> Vec<Vec<ElementId>> {
        self.table.chunks(self.order).map(<[ElementId]>::to_vec).collect()
    }

    /// The flat row-major table.
    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    pub fn idempotents(&self) -> Vec<ElementId> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn is_idempotent(&self, e: ElementId) -> bool {
        self.mul(e, e) == e
    }

    /// The opposite semigroup `a ∘ b = b·a`.
    pub fn transpose(&self) -> Semigroup {
        let n = self.order;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Semigroup { order: n, table }
    }

    /// Relabels element `a` as `perm[a]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[ElementId]) -> Semigroup {
        let n = self.order;
        assert_eq!(perm.len(), n, "permutation length");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Semigroup { order: n, table }
    }

    /// Two-sided identity, if any.
    pub fn identity(&self) -> Option<ElementId> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// A monoid in which every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        match self.identity() {
            Some(e) => self
                .elements()
                .all(|a| self.elements().any(|b| self.mul(a, b) == e && self.mul(b, a) == e)),
            None => false,
        }
    }
}

/// Seed families used to populate tests and examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    LeftZero,
    RightZero,
    Null,
    CyclicGroup,
    NilpotentCyclic,
    SemilatticeChain,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::LeftZero,
        FamilyKind::RightZero,
        FamilyKind::Null,
        FamilyKind::CyclicGroup,
        FamilyKind::NilpotentCyclic,
        FamilyKind::SemilatticeChain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::LeftZero => "left_zero",
            FamilyKind::RightZero => "right_zero",
            FamilyKind::Null => "null",
            FamilyKind::CyclicGroup => "cyclic_group",
            FamilyKind::NilpotentCyclic => "nilpotent_cyclic",
            FamilyKind::SemilatticeChain => "semilattice_chain",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// The member of order `n` of a named family.
///
/// `nilpotent_cyclic` uses index `i` for `a^(i+1)`, so `n - 1` is the absorbing zero `aⁿ`.
pub fn family(kind: FamilyKind, n: usize) -> Result<Semigroup> {
    if n == 0 {
        return Err(Error::UnsupportedSize { family: kind.to_string(), order: n });
    }
    let op: fn(usize, usize, usize) -> usize = match kind {
        FamilyKind::LeftZero => |x, _, _| x,
        FamilyKind::RightZero => |_, y, _| y,
        FamilyKind::Null => |_, _, _| 0,
        FamilyKind::CyclicGroup => |x, y, n| (x + y) % n,
        FamilyKind::NilpotentCyclic => |x, y, n| (x + y + 1).min(n - 1),
        FamilyKind::SemilatticeChain => |x, y, _| x.min(y),
    };
    let table = (0..n * n).map(|i| op(i / n, i % n, n)).collect();
    Semigroup::from_flat(n, table)
}
