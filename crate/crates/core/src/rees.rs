//! Rees matrix semigroups over semigroups.
//!
//! The single-row form `M(S; Λ; P)` has elements `(s, λ)` with
//! `(s, λ)(t, μ) = (s·P(λ)·t, μ)`; it is encoded row-major as `s·|Λ| + λ`.
//! The general form `M(S; I, Λ; P)` uses triples `(i, s, λ)` and a `Λ × I`
//! sandwich matrix.

use serde::Serialize;

use crate::analysis::{check_property, StructuralProperty};
use crate::error::{Error, Result};
use crate::semigroup::{ElementId, Semigroup};

/// The sandwich `P: Λ → S` of a single-row Rees matrix semigroup, with `Λ = 0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SandwichVector {
    entries: Vec<ElementId>,
}

impl SandwichVector {
    /// Fails with `EntryOutOfRange` unless every entry is an element of `base`.
    pub fn new(base: &Semigroup, entries: Vec<ElementId>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("Λ must be nonempty".into()));
        }
        if let Some(index) = entries.iter().position(|&e| e >= base.order()) {
            return Err(Error::EntryOutOfRange { index, order: base.order() });
        }
        Ok(SandwichVector { entries })
    }

    pub fn lambda_size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, lambda: usize) -> ElementId {
        self.entries[lambda]
    }

    pub fn entries(&self) -> &[ElementId] {
        &self.entries
    }

    /// Every vector `Λ → S` with `|Λ| = lambda_size`, lexicographically.
    pub fn all(base: &Semigroup, lambda_size: usize) -> Vec<SandwichVector> {
        let n = base.order();
        let total = n.pow(lambda_size as u32);
        (0..total)
            .map(|mut code| {
                let mut entries = vec![0; lambda_size];
                for slot in entries.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                SandwichVector { entries }
            })
            .collect()
    }
}

impl std::fmt::Display for SandwichVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `M(S; Λ; P)` together with its materialized Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesSemigroup {
    base: Semigroup,
    sandwich: SandwichVector,
    semigroup: Semigroup,
}

impl ReesSemigroup {
    pub fn base(&self) -> &Semigroup {
        &self.base
    }

    pub fn sandwich(&self) -> &SandwichVector {
        &self.sandwich
    }

    pub fn lambda_size(&self) -> usize {
        self.sandwich.lambda_size()
    }

    /// The product semigroup on encoded pairs.
    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn into_semigroup(self) -> Semigroup {
        self.semigroup
    }

    pub fn encode(&self, s: ElementId, lambda: usize) -> ElementId {
        debug_assert!(s < self.base.order() && lambda < self.lambda_size());
        s * self.lambda_size() + lambda
    }

    pub fn decode(&self, e: ElementId) -> (ElementId, usize) {
        (e / self.lambda_size(), e % self.lambda_size())
    }

    /// `L_λ = {(s, λ) : s ∈ S}` as encoded elements.
    pub fn column_set(&self, lambda: usize) -> Vec<ElementId> {
        self.base.elements().map(|s| self.encode(s, lambda)).collect()
    }

    /// A left simple `M(S; Λ; P)` forces `|Λ| = 1`.
    pub fn left_simple_forces_single_lambda(&self) -> bool {
        !check_property(&self.semigroup, StructuralProperty::LeftSimple) || self.lambda_size() == 1
    }
}

/// Builds `M(S; Λ; P)`. The assembled table goes back through full validation.
pub fn rees(base: &Semigroup, sandwich: &SandwichVector) -> Result<ReesSemigroup> {
    if let Some(index) = sandwich.entries().iter().position(|&e| e >= base.order()) {
        return Err(Error::EntryOutOfRange { index, order: base.order() });
    }
    let n = base.order();
    let l = sandwich.lambda_size();
    let order = n * l;
    let mut table = Vec::with_capacity(order * order);
    for left in 0..order {
        let (s, lambda) = (left / l, left % l);
        let sp = base.mul(s, sandwich.get(lambda));
        for right in 0..order {
            let (t, mu) = (right / l, right % l);
            table.push(base.mul(sp, t) * l + mu);
        }
    }
    let semigroup = Semigroup::from_flat(order, table)?;
    Ok(ReesSemigroup { base: base.clone(), sandwich: sandwich.clone(), semigroup })
}

/// A `Λ × I` sandwich matrix for the general construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralSandwichMatrix {
    i_size: usize,
    lambda_size: usize,
    /// Row `λ`, column `i`.
    entries: Vec<ElementId>,
}

impl GeneralSandwichMatrix {
    /// `rows[λ][i] = p_{λ,i}`.
    pub fn new(base: &Semigroup, rows: Vec<Vec<ElementId>>) -> Result<Self> {
        let lambda_size = rows.len();
        let i_size = rows.first().map_or(0, Vec::len);
        if lambda_size == 0 || i_size == 0 {
            return Err(Error::DimensionMismatch("I and Λ must be nonempty".into()));
        }
        if rows.iter().any(|r| r.len() != i_size) {
            return Err(Error::DimensionMismatch("ragged sandwich matrix".into()));
        }
        let entries: Vec<ElementId> = rows.into_iter().flatten().collect();
        if let Some(index) = entries.iter().position(|&e| e >= base.order()) {
            return Err(Error::EntryOutOfRange { index, order: base.order() });
        }
        Ok(GeneralSandwichMatrix { i_size, lambda_size, entries })
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    pub fn lambda_size(&self) -> usize {
        self.lambda_size
    }

    pub fn get(&self, lambda: usize, i: usize) -> ElementId {
        self.entries[lambda * self.i_size + i]
    }
}

/// Encodes `(i, s, λ)` as `(i·|S| + s)·|Λ| + λ`.
pub fn encode_triple(base_order: usize, lambda_size: usize, i: usize, s: ElementId, lambda: usize) -> ElementId {
    (i * base_order + s) * lambda_size + lambda
}

pub fn decode_triple(base_order: usize, lambda_size: usize, e: ElementId) -> (usize, ElementId, usize) {
    let lambda = e % lambda_size;
    let rest = e / lambda_size;
    (rest / base_order, rest % base_order, lambda)
}

/// `M(S; I, Λ; P)` with `(i, s, λ)(j, t, μ) = (i, s·p_{λ,j}·t, μ)`.
pub fn rees_general(base: &Semigroup, matrix: &GeneralSandwichMatrix) -> Result<Semigroup> {
    let n = base.order();
    let (ni, nl) = (matrix.i_size(), matrix.lambda_size());
    let order = ni * n * nl;
    let mut table = Vec::with_capacity(order * order);
    for left in 0..order {
        let (i, s, lambda) = decode_triple(n, nl, left);
        for right in 0..order {
            let (j, t, mu) = decode_triple(n, nl, right);
            let st = base.mul3(s, matrix.get(lambda, j), t);
            table.push(encode_triple(n, nl, i, st, mu));
        }
    }
    Semigroup::from_flat(order, table)
}
