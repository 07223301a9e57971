//! Exhaustive enumeration of small semigroups and canonical forms for
//! deduplicating them up to isomorphism (and optionally anti-isomorphism).

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::{ElementId, Semigroup};

/// Largest order enumerated by default.
pub const MAX_ENUMERATION_ORDER: usize = 4;
/// Largest order enumerated when explicitly requested.
pub const MAX_EXTENDED_ORDER: usize = 5;
/// Canonical forms sweep all `n!` relabelings, so they are capped here.
pub const MAX_CANONICAL_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumerationMode {
    /// Every associative table on `0..n`.
    Labeled,
    /// One canonical table per isomorphism class.
    UpToIso,
    /// One canonical table per class under isomorphism and anti-isomorphism.
    UpToIsoAnti,
}

impl std::str::FromStr for EnumerationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "labeled" => Ok(EnumerationMode::Labeled),
            "iso" | "up_to_iso" => Ok(EnumerationMode::UpToIso),
            "iso-anti" | "up_to_iso_anti" => Ok(EnumerationMode::UpToIsoAnti),
            _ => Err(format!("unknown mode `{s}` (expected labeled, iso or iso-anti)")),
        }
    }
}

/// The lexicographically least row-major table over all relabelings.
///
/// The first byte is the order, so keys of different orders never collide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical table itself.
    pub fn to_semigroup(&self) -> Semigroup {
        let n = self.0[0] as usize;
        let table = self.0[1..].iter().map(|&b| b as ElementId).collect();
        Semigroup::from_flat(n, table).expect("keys come from valid tables")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:x}")?;
        }
        Ok(())
    }
}

pub fn canonical_form(s: &Semigroup, include_transpose: bool) -> Result<CanonicalKey> {
    let n = s.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::SizeCapExceeded { order: n, cap: MAX_CANONICAL_ORDER });
    }
    let mut best = min_relabeling(s);
    if include_transpose {
        best = best.min(min_relabeling(&s.transpose()));
    }
    let mut key = Vec::with_capacity(n * n + 1);
    key.push(n as u8);
    key.extend(best);
    Ok(CanonicalKey(key))
}

fn min_relabeling(s: &Semigroup) -> Vec<u8> {
    let n = s.order();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = vec![0u8; n * n];
    for perm in (0..n).permutations(n) {
        for a in 0..n {
            for b in 0..n {
                buf[perm[a] * n + perm[b]] = perm[s.mul(a, b)] as u8;
            }
        }
        if best.as_ref().is_none_or(|cur| buf < *cur) {
            best = Some(buf.clone());
        }
    }
    best.expect("at least one permutation")
}

/// All semigroups of order `n`, capped at [`MAX_ENUMERATION_ORDER`] unless
/// `allow_order_five` raises the cap to [`MAX_EXTENDED_ORDER`].
///
/// Labeled output comes in lexicographic table order; deduplicated output is
/// the canonical tables sorted by key.
pub fn enumerate_semigroups(n: usize, mode: EnumerationMode, allow_order_five: bool) -> Result<Vec<Semigroup>> {
    let cap = if allow_order_five { MAX_EXTENDED_ORDER } else { MAX_ENUMERATION_ORDER };
    if n > cap {
        return Err(Error::SizeCapExceeded { order: n, cap });
    }
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let labeled = labeled_tables(n);
    let include_transpose = match mode {
        EnumerationMode::Labeled => {
            return Ok(labeled.into_iter().map(|t| Semigroup::from_flat(n, t).expect("associative")).collect())
        }
        EnumerationMode::UpToIso => false,
        EnumerationMode::UpToIsoAnti => true,
    };
    let keys: BTreeSet<CanonicalKey> = labeled
        .into_par_iter()
        .map(|t| {
            let s = Semigroup::from_flat(n, t).expect("associative");
            canonical_form(&s, include_transpose).expect("order within cap")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(keys.iter().map(CanonicalKey::to_semigroup).collect())
}

/// Backtracking over cells in row-major order; each first row is explored in parallel.
fn labeled_tables(n: usize) -> Vec<Vec<ElementId>> {
    let first_rows: Vec<Vec<ElementId>> =
        (0..n).map(|_| 0..n).multi_cartesian_product().collect();
    first_rows
        .into_par_iter()
        .flat_map_iter(|row| {
            let mut table: Vec<Option<ElementId>> = vec![None; n * n];
            for (b, v) in row.into_iter().enumerate() {
                table[b] = Some(v);
            }
            let mut out = Vec::new();
            if partial_associative(n, &table) {
                fill(n, n, &mut table, &mut out);
            }
            out
        })
        .collect()
}

fn fill(n: usize, cell: usize, table: &mut [Option<ElementId>], out: &mut Vec<Vec<ElementId>>) {
    if cell == n * n {
        out.push(table.iter().map(|v| v.expect("filled")).collect());
        return;
    }
    for v in 0..n {
        table[cell] = Some(v);
        if partial_associative(n, table) {
            fill(n, cell + 1, table, out);
        }
    }
    table[cell] = None;
}

/// No fully defined associativity triple fails.
fn partial_associative(n: usize, table: &[Option<ElementId>]) -> bool {
    let at = |a: usize, b: usize| table[a * n + b];
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = at(x, y) else { continue };
            for z in 0..n {
                let (Some(left), Some(yz)) = (at(xy, z), at(y, z)) else { continue };
                if let Some(right) = at(x, yz) {
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}
