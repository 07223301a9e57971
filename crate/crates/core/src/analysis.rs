//! Structural predicates on finite semigroups, each evaluated straight from
//! its definition over the Cayley table.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::semigroup::{ElementId, Semigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralProperty {
    RightSimple,
    LeftSimple,
    Simple,
    LeftCancellative,
    RightCancellative,
    RightGroup,
    LeftEqualizerSimple,
    IdempotentFree,
    CompletelySimple,
}

impl StructuralProperty {
    pub const ALL: [StructuralProperty; 9] = [
        StructuralProperty::RightSimple,
        StructuralProperty::LeftSimple,
        StructuralProperty::Simple,
        StructuralProperty::LeftCancellative,
        StructuralProperty::RightCancellative,
        StructuralProperty::RightGroup,
        StructuralProperty::LeftEqualizerSimple,
        StructuralProperty::IdempotentFree,
        StructuralProperty::CompletelySimple,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StructuralProperty::RightSimple => "right_simple",
            StructuralProperty::LeftSimple => "left_simple",
            StructuralProperty::Simple => "simple",
            StructuralProperty::LeftCancellative => "left_cancellative",
            StructuralProperty::RightCancellative => "right_cancellative",
            StructuralProperty::RightGroup => "right_group",
            StructuralProperty::LeftEqualizerSimple => "left_equalizer_simple",
            StructuralProperty::IdempotentFree => "idempotent_free",
            StructuralProperty::CompletelySimple => "completely_simple",
        }
    }
}

impl fmt::Display for StructuralProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StructuralProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StructuralProperty::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

pub fn check_property(s: &Semigroup, p: StructuralProperty) -> bool {
    use StructuralProperty::*;
    match p {
        RightSimple => is_right_simple(s),
        LeftSimple => is_left_simple(s),
        Simple => is_simple(s),
        LeftCancellative => is_left_cancellative(s),
        RightCancellative => is_right_cancellative(s),
        RightGroup => is_right_simple(s) && is_left_cancellative(s),
        LeftEqualizerSimple => is_left_equalizer_simple(s),
        IdempotentFree => s.idempotents().is_empty(),
        CompletelySimple => is_simple(s) && !primitive_idempotents(s).is_empty(),
    }
}

/// `sS = S` for every `s`.
fn is_right_simple(s: &Semigroup) -> bool {
    s.elements().all(|a| covers(s, s.elements().map(|x| s.mul(a, x))))
}

/// `Ss = S` for every `s`.
fn is_left_simple(s: &Semigroup) -> bool {
    s.elements().all(|a| covers(s, s.elements().map(|x| s.mul(x, a))))
}

/// `SaS = S` for every `a`.
fn is_simple(s: &Semigroup) -> bool {
    s.elements().all(|a| {
        covers(s, s.elements().flat_map(|x| s.elements().map(move |y| s.mul3(x, a, y))))
    })
}

fn covers(s: &Semigroup, values: impl Iterator<Item = ElementId>) -> bool {
    let mut seen = vec![false; s.order()];
    let mut count = 0;
    for v in values {
        if !seen[v] {
            seen[v] = true;
            count += 1;
        }
    }
    count == s.order()
}

/// `ab = ac ⇒ b = c`.
fn is_left_cancellative(s: &Semigroup) -> bool {
    s.elements().all(|a| {
        let row = s.row(a);
        row.iter().collect::<BTreeSet<_>>().len() == row.len()
    })
}

/// `ba = ca ⇒ b = c`.
fn is_right_cancellative(s: &Semigroup) -> bool {
    s.elements().all(|a| s.column(a).collect::<BTreeSet<_>>().len() == s.order())
}

/// If some `x₀` has `x₀a = x₀b` then every `x` does.
fn is_left_equalizer_simple(s: &Semigroup) -> bool {
    s.elements().all(|a| {
        s.elements().all(|b| {
            let some = s.elements().any(|x| s.mul(x, a) == s.mul(x, b));
            let every = s.elements().all(|x| s.mul(x, a) == s.mul(x, b));
            !some || every
        })
    })
}

/// Idempotents minimal under `f ≤ e ⇔ ef = fe = f`.
pub fn primitive_idempotents(s: &Semigroup) -> Vec<ElementId> {
    let idempotents = s.idempotents();
    idempotents
        .iter()
        .copied()
        .filter(|&e| {
            idempotents
                .iter()
                .all(|&f| f == e || !(s.mul(e, f) == f && s.mul(f, e) == f))
        })
        .collect()
}

/// `{s} ∪ Ss`.
pub fn principal_left_ideal(s: &Semigroup, a: ElementId) -> BTreeSet<ElementId> {
    std::iter::once(a).chain(s.elements().map(|x| s.mul(x, a))).collect()
}

pub fn is_left_ideal(s: &Semigroup, set: &BTreeSet<ElementId>) -> bool {
    !set.is_empty() && set.iter().all(|&l| s.elements().all(|x| set.contains(&s.mul(x, l))))
}

/// The inclusion-minimal left ideals, sorted.
///
/// Any left ideal contains the principal left ideal of each of its members,
/// so the minimal ones are exactly the minimal principal left ideals.
pub fn minimal_left_ideals(s: &Semigroup) -> Vec<BTreeSet<ElementId>> {
    let principal: BTreeSet<BTreeSet<ElementId>> =
        s.elements().map(|a| principal_left_ideal(s, a)).collect();
    principal
        .iter()
        .filter(|l| !principal.iter().any(|m| m.len() < l.len() && m.is_subset(l)))
        .cloned()
        .collect()
}
