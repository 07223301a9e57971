//! Congruences as normalized partitions, the `α⁽ⁿ⁾` tower, quotients and
//! α-preserving sections.
//!
//! For a congruence `α` the next tower level relates `a` and `b` exactly when
//! `(xa, xb) ∈ α` for every `x`. Starting from the identity relation the tower
//! is `ι, θ, θ⁽¹⁾, θ⁽²⁾, …`, where `θ` identifies elements with equal columns.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphisms::{Morphism, MorphismKind};
use crate::semigroup::{ElementId, Semigroup};

/// Hard cap on requested tower depth. Towers stabilize after fewer than `n` steps anyway.
pub const MAX_TOWER_DEPTH: usize = 1024;

/// A partition of `0..n` with class labels normalized by first occurrence.
///
/// Normalization gives every partition a unique encoding, so equality of
/// partitions is equality of label arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Congruence {
    class_of: Vec<usize>,
    class_count: usize,
}

impl Congruence {
    /// Builds a partition from arbitrary labels, which must be exactly `0..k` for some `k`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::MalformedPartition("empty partition".into()));
        }
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; k];
        for &l in labels {
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!("label {missing} is unused")));
        }
        Ok(Self::normalize(labels))
    }

    /// Relabels by first occurrence; any labels are accepted.
    fn normalize(labels: &[usize]) -> Self {
        let mut renamed = std::collections::HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = renamed.len();
                *renamed.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { class_of, class_count: renamed.len() }
    }

    pub fn identity(n: usize) -> Self {
        Congruence { class_of: (0..n).collect(), class_count: n }
    }

    pub fn universal(n: usize) -> Self {
        Congruence { class_of: vec![0; n], class_count: 1 }
    }

    pub fn owner_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_of(&self, a: ElementId) -> usize {
        self.class_of[a]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, a: ElementId, b: ElementId) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Classes in label order, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<ElementId>> {
        let mut classes = vec![Vec::new(); self.class_count];
        for (a, &c) in self.class_of.iter().enumerate() {
            classes[c].push(a);
        }
        classes
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Congruence) -> bool {
        self.owner_order() == coarser.owner_order()
            && class_map(self, coarser).is_ok()
    }

    pub fn is_identity(&self) -> bool {
        self.class_count == self.class_of.len()
    }

    pub fn is_universal(&self) -> bool {
        self.class_count == 1
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.class_of.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// For nested partitions, the label of the coarser class containing each finer class.
pub fn class_map(finer: &Congruence, coarser: &Congruence) -> Result<Vec<usize>> {
    if finer.owner_order() != coarser.owner_order() {
        return Err(Error::DimensionMismatch(format!(
            "partitions of {} and {} elements",
            finer.owner_order(),
            coarser.owner_order()
        )));
    }
    let mut map = vec![None; finer.class_count()];
    for a in 0..finer.owner_order() {
        let target = coarser.class_of(a);
        match map[finer.class_of(a)] {
            None => map[finer.class_of(a)] = Some(target),
            Some(t) if t == target => {}
            Some(t) => {
                return Err(Error::IllFormed(format!(
                    "class {} of the finer partition meets coarser classes {t} and {target}",
                    finer.class_of(a)
                )))
            }
        }
    }
    Ok(map.into_iter().map(|t| t.expect("every class is inhabited")).collect())
}

pub fn identity_congruence(s: &Semigroup) -> Congruence {
    Congruence::identity(s.order())
}

pub fn universal_congruence(s: &Semigroup) -> Congruence {
    Congruence::universal(s.order())
}

/// Checks left and right compatibility of a labelled partition with the table.
pub fn is_congruence(s: &Semigroup, labels: &[usize]) -> Result<bool> {
    if labels.len() != s.order() {
        return Err(Error::MalformedPartition(format!(
            "{} labels for a semigroup of order {}",
            labels.len(),
            s.order()
        )));
    }
    let alpha = Congruence::from_labels(labels)?;
    Ok(compatibility_failure(s, &alpha).is_none())
}

/// First `(a, b, x)` with `a α b` but `xa`, `xb` or `ax`, `bx` in different classes.
fn compatibility_failure(s: &Semigroup, alpha: &Congruence) -> Option<(ElementId, ElementId, ElementId)> {
    // Comparing each element with its class's first member suffices.
    let mut first = vec![usize::MAX; alpha.class_count()];
    for a in s.elements() {
        let c = alpha.class_of(a);
        if first[c] == usize::MAX {
            first[c] = a;
            continue;
        }
        let r = first[c];
        for x in s.elements() {
            if !alpha.related(s.mul(x, a), s.mul(x, r)) || !alpha.related(s.mul(a, x), s.mul(r, x)) {
                return Some((r, a, x));
            }
        }
    }
    None
}

fn ensure_congruence(s: &Semigroup, alpha: &Congruence) -> Result<()> {
    if alpha.owner_order() != s.order() {
        return Err(Error::NotACongruence(format!(
            "partition of {} elements on a semigroup of order {}",
            alpha.owner_order(),
            s.order()
        )));
    }
    match compatibility_failure(s, alpha) {
        None => Ok(()),
        Some((a, b, x)) => Err(Error::NotACongruence(format!(
            "{a} and {b} are related but multiplying by {x} separates them"
        ))),
    }
}

/// `θ_S`: `a ~ b` iff `xa = xb` for all `x`, i.e. columns `a` and `b` coincide.
pub fn theta(s: &Semigroup) -> Congruence {
    let columns: Vec<Vec<ElementId>> = s.elements().map(|b| s.column(b).collect()).collect();
    let labels: Vec<usize> = s
        .elements()
        .map(|a| (0..=a).find(|&b| columns[b] == columns[a]).expect("a matches itself"))
        .collect();
    Congruence::normalize(&labels)
}

/// One tower step: `(a, b) ∈ α'` iff `(xa, xb) ∈ α` for every `x`.
///
/// Evaluated by the definitional triple loop.
pub fn step_congruence(s: &Semigroup, alpha: &Congruence) -> Result<Congruence> {
    ensure_congruence(s, alpha)?;
    Ok(step_unchecked(s, alpha))
}

fn step_unchecked(s: &Semigroup, alpha: &Congruence) -> Congruence {
    let related = |a: ElementId, b: ElementId| s.elements().all(|x| alpha.related(s.mul(x, a), s.mul(x, b)));
    // The relation is an equivalence, so the least related index is a valid label.
    let labels: Vec<usize> = s
        .elements()
        .map(|a| (0..=a).find(|&b| related(b, a)).expect("reflexive"))
        .collect();
    Congruence::normalize(&labels)
}

/// `base, base⁽¹⁾, …, base⁽ᵈᵉᵖᵗʰ⁾` together with the first level at which it stops moving.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tower {
    levels: Vec<Congruence>,
    stabilization_index: usize,
}

impl Tower {
    pub fn base(&self) -> &Congruence {
        &self.levels[0]
    }

    /// Levels `0..=depth`.
    pub fn levels(&self) -> &[Congruence] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Congruence {
        &self.levels[i]
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Smallest `i` with level `i` equal to level `i + 1`; may exceed [`Tower::depth`].
    pub fn stabilization_index(&self) -> usize {
        self.stabilization_index
    }

    pub fn class_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Congruence::class_count).collect()
    }
}

pub fn tower(s: &Semigroup, base: &Congruence, depth: usize) -> Result<Tower> {
    if depth > MAX_TOWER_DEPTH {
        return Err(Error::DepthCapExceeded { requested: depth, cap: MAX_TOWER_DEPTH });
    }
    ensure_congruence(s, base)?;
    let mut levels = vec![base.clone()];
    let mut stabilization_index = None;
    let mut i = 0;
    // Each strict step merges classes, so a fixpoint appears within `n - 1` steps.
    while i < depth || stabilization_index.is_none() {
        let next = step_unchecked(s, &levels[i]);
        if stabilization_index.is_none() && next == levels[i] {
            stabilization_index = Some(i);
        }
        levels.push(next);
        i += 1;
    }
    levels.truncate(depth + 1);
    Ok(Tower { levels, stabilization_index: stabilization_index.expect("loop exits on fixpoint") })
}

/// The tower `θ, θ⁽¹⁾, …, θ⁽ᵈᵉᵖᵗʰ⁾`.
pub fn theta_tower(s: &Semigroup, depth: usize) -> Result<Tower> {
    tower(s, &theta(s), depth)
}

/// `S/α` on class labels with the canonical projection `a ↦ [a]`.
pub fn quotient(s: &Semigroup, alpha: &Congruence) -> Result<(Semigroup, Morphism)> {
    ensure_congruence(s, alpha)?;
    let reps: Vec<ElementId> = alpha.classes().iter().map(|c| c[0]).collect();
    let k = reps.len();
    let table = (0..k * k).map(|i| alpha.class_of(s.mul(reps[i / k], reps[i % k]))).collect();
    let q = Semigroup::from_flat(k, table)?;
    let projection = Morphism::new(alpha.labels().to_vec(), k, MorphismKind::Hom)?;
    Ok((q, projection))
}

/// An α-preserving choice of one representative per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    congruence: Congruence,
    representative: Vec<ElementId>,
}

impl Section {
    pub fn new(congruence: Congruence, representative: Vec<ElementId>) -> Result<Self> {
        if representative.len() != congruence.class_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} representatives for {} classes",
                representative.len(),
                congruence.class_count()
            )));
        }
        for (c, &r) in representative.iter().enumerate() {
            if r >= congruence.owner_order() || congruence.class_of(r) != c {
                return Err(Error::IllFormed(format!("representative {r} is not in class {c}")));
            }
        }
        Ok(Section { congruence, representative })
    }

    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    pub fn representatives(&self) -> &[ElementId] {
        &self.representative
    }

    pub fn representative(&self, class: usize) -> ElementId {
        self.representative[class]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionPolicy {
    /// Least element of each class.
    MinIndex,
    /// Every section, lexicographic in the representative tuple.
    All,
}

pub fn sections(s: &Semigroup, alpha: &Congruence, policy: SectionPolicy) -> Result<Vec<Section>> {
    ensure_congruence(s, alpha)?;
    let classes = alpha.classes();
    let tuples: Vec<Vec<ElementId>> = match policy {
        SectionPolicy::MinIndex => vec![classes.iter().map(|c| c[0]).collect()],
        SectionPolicy::All => choices(&classes),
    };
    Ok(tuples
        .into_iter()
        .map(|representative| Section { congruence: alpha.clone(), representative })
        .collect())
}

/// Cartesian product of sorted candidate lists, in lexicographic order.
pub(crate) fn choices(candidates: &[Vec<ElementId>]) -> Vec<Vec<ElementId>> {
    let mut out = vec![Vec::new()];
    for options in candidates {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&o| {
                    let mut next = prefix.clone();
                    next.push(o);
                    next
                })
            })
            .collect();
    }
    out
}
