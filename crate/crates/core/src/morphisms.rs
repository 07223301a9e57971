//! Maps between finite semigroups: verification, isomorphism search, and the
//! explicit class-level maps relating a semigroup, its tower quotients and
//! Rees matrix semigroups built over them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rees::{rees, ReesSemigroup, SandwichVector};
use crate::relations::{class_map, quotient, theta, theta_tower, Congruence, Section};
use crate::semigroup::{ElementId, Semigroup};
use crate::theorems::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    Hom,
    Embedding,
    Iso,
}

/// An element-wise map between two finite semigroups.
///
/// Construction checks the map against the target size and the set-level part
/// of its claimed kind (injective for embeddings, bijective for isomorphisms).
/// Whether it respects multiplication is a separate question answered by
/// [`is_homomorphism`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    source_order: usize,
    target_order: usize,
    map: Vec<ElementId>,
    kind: MorphismKind,
}

impl Morphism {
    pub fn new(map: Vec<ElementId>, target_order: usize, kind: MorphismKind) -> Result<Self> {
        if let Some(a) = map.iter().position(|&v| v >= target_order) {
            return Err(Error::DimensionMismatch(format!(
                "image of {a} is outside a target of order {target_order}"
            )));
        }
        let f = Morphism { source_order: map.len(), target_order, map, kind };
        match kind {
            MorphismKind::Hom => {}
            MorphismKind::Embedding if !f.is_injective() => {
                return Err(Error::KindViolation("embedding is not injective".into()))
            }
            MorphismKind::Iso if !f.is_bijective() => {
                return Err(Error::KindViolation("isomorphism is not bijective".into()))
            }
            _ => {}
        }
        Ok(f)
    }

    pub fn identity(n: usize) -> Self {
        Morphism { source_order: n, target_order: n, map: (0..n).collect(), kind: MorphismKind::Iso }
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.source_order == self.target_order && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.target_order != other.source_order {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        let map = self.map.iter().map(|&a| other.map[a]).collect();
        Morphism::new(map, other.target_order, MorphismKind::Hom)
    }

    /// The partition of the source by images.
    pub fn kernel(&self) -> Congruence {
        // Images need not be contiguous, so compress them first.
        let mut compress = BTreeMap::new();
        let labels: Vec<usize> = self
            .map
            .iter()
            .map(|v| {
                let next = compress.len();
                *compress.entry(*v).or_insert(next)
            })
            .collect();
        Congruence::from_labels(&labels).expect("labels are dense")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

fn check_dimensions(f: &Morphism, s: &Semigroup, t: &Semigroup) -> Result<()> {
    if f.source_order != s.order() || f.target_order != t.order() {
        return Err(Error::DimensionMismatch(format!(
            "map {}→{} against semigroups of orders {} and {}",
            f.source_order,
            f.target_order,
            s.order(),
            t.order()
        )));
    }
    Ok(())
}

/// First pair `(a, b)` with `f(ab) ≠ f(a)f(b)`.
pub fn homomorphism_failure(f: &Morphism, s: &Semigroup, t: &Semigroup) -> Result<Option<(ElementId, ElementId)>> {
    check_dimensions(f, s, t)?;
    for a in s.elements() {
        for b in s.elements() {
            if f.apply(s.mul(a, b)) != t.mul(f.apply(a), f.apply(b)) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn is_homomorphism(f: &Morphism, s: &Semigroup, t: &Semigroup) -> Result<bool> {
    Ok(homomorphism_failure(f, s, t)?.is_none())
}

pub fn is_isomorphism(f: &Morphism, s: &Semigroup, t: &Semigroup) -> Result<bool> {
    check_dimensions(f, s, t)?;
    Ok(f.is_bijective() && is_homomorphism(f, s, t)?)
}

/// Isomorphism-invariant fingerprint of one element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ElementProfile {
    idempotent: bool,
    row_shape: Vec<usize>,
    column_shape: Vec<usize>,
}

/// Sorted multiplicities of the values in a row or column.
fn value_shape(values: impl Iterator<Item = ElementId>, n: usize) -> Vec<usize> {
    let mut counts = vec![0; n];
    for v in values {
        counts[v] += 1;
    }
    let mut shape: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    shape.sort_unstable();
    shape
}

fn profiles(s: &Semigroup) -> Vec<ElementProfile> {
    s.elements()
        .map(|a| ElementProfile {
            idempotent: s.is_idempotent(a),
            row_shape: value_shape(s.row(a).iter().copied(), s.order()),
            column_shape: value_shape(s.column(a), s.order()),
        })
        .collect()
}

/// Backtracking search for an isomorphism `s → t`.
///
/// Candidates are pruned by order, idempotent count and per-element row and
/// column value shapes. The smallest unmapped source element is extended
/// first, trying targets in increasing order, so the witness is deterministic.
pub fn find_isomorphism(s: &Semigroup, t: &Semigroup) -> Option<Morphism> {
    let n = s.order();
    if n != t.order() || s.idempotents().len() != t.idempotents().len() {
        return None;
    }
    let (ps, pt) = (profiles(s), profiles(t));
    let mut sorted_s = ps.clone();
    let mut sorted_t = pt.clone();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return None;
    }
    let candidates: Vec<Vec<ElementId>> = ps
        .iter()
        .map(|p| t.elements().filter(|&b| &pt[b] == p).collect())
        .collect();
    let mut forward = vec![None; n];
    let mut backward = vec![None; n];
    if extend(s, t, &candidates, 0, &mut forward, &mut backward) {
        let map = forward.into_iter().map(|v| v.expect("complete")).collect();
        let f = Morphism::new(map, n, MorphismKind::Iso).expect("search builds bijections");
        debug_assert!(is_isomorphism(&f, s, t).unwrap_or(false));
        Some(f)
    } else {
        None
    }
}

fn extend(
    s: &Semigroup,
    t: &Semigroup,
    candidates: &[Vec<ElementId>],
    a: ElementId,
    forward: &mut [Option<ElementId>],
    backward: &mut [Option<ElementId>],
) -> bool {
    if a == s.order() {
        return true;
    }
    for &b in &candidates[a] {
        if backward[b].is_some() {
            continue;
        }
        forward[a] = Some(b);
        backward[b] = Some(a);
        if consistent(s, t, a, forward, backward) && extend(s, t, candidates, a + 1, forward, backward) {
            return true;
        }
        forward[a] = None;
        backward[b] = None;
    }
    false
}

/// Checks every product involving the newly mapped `a` and an already mapped element.
fn consistent(
    s: &Semigroup,
    t: &Semigroup,
    a: ElementId,
    forward: &[Option<ElementId>],
    backward: &[Option<ElementId>],
) -> bool {
    let ok = |x: ElementId, y: ElementId| -> bool {
        let (fx, fy) = (forward[x].unwrap(), forward[y].unwrap());
        let image = t.mul(fx, fy);
        match (forward[s.mul(x, y)], backward[image]) {
            (Some(fxy), _) => fxy == image,
            (None, Some(_)) => false,
            (None, None) => true,
        }
    };
    (0..=a).all(|x| ok(a, x) && ok(x, a))
}

/// Every element of `S/θ⁽ⁱ⁾` is sent to the `θ⁽ⁱ⁺ʲ⁺¹⁾`-class of its members.
///
/// The report checks that this is a surjective homomorphism whose kernel is
/// `θ⁽ʲ⁾` of `S/θ⁽ⁱ⁾`, and that the induced map from the quotient by that
/// kernel onto `S/θ⁽ⁱ⁺ʲ⁺¹⁾` is an isomorphism.
pub fn kappa(s: &Semigroup, i: usize, j: usize) -> Result<(Morphism, Report)> {
    let tower = theta_tower(s, i + j + 1)?;
    let (source, _) = quotient(s, tower.level(i))?;
    let (target, _) = quotient(s, tower.level(i + j + 1))?;
    let map = class_map(tower.level(i), tower.level(i + j + 1))?;
    let k = Morphism::new(map, target.order(), MorphismKind::Hom)?;

    let mut report = Report::new("kappa", format!("order {}, i={i}, j={j}", s.order()));
    let failure = homomorphism_failure(&k, &source, &target)?;
    report.check("homomorphism", failure.is_none(), || {
        let (a, b) = failure.unwrap();
        format!("a={a} b={b}")
    });
    report.check("surjective", k.is_surjective(), || format!("image {k} misses a class"));

    let expected = theta_tower(&source, j)?.level(j).clone();
    let kernel = k.kernel();
    report.check("kernel_is_theta_j", kernel == expected, || {
        format!("kernel {kernel} but theta^({j}) is {expected}")
    });

    if failure.is_none() {
        let (reduced, _) = quotient(&source, &kernel)?;
        let induced_map = kernel.classes().iter().map(|c| k.apply(c[0])).collect();
        let induced = Morphism::new(induced_map, target.order(), MorphismKind::Hom)?;
        let iso = is_isomorphism(&induced, &reduced, &target)?;
        report.check("induced_isomorphism", iso, || format!("induced map {induced}"));
    } else {
        report.skip("induced_isomorphism");
    }
    Ok((k, report))
}

/// The data for one instance of the `Φ` construction.
///
/// `base` plays `S`, `lambda` plays `S/θ` and `target` plays `S/θ⁽¹⁾`;
/// `to_lambda` and `lambda_to_target` are the natural maps between them and
/// `section` picks `P(λ)` with `to_lambda(P(λ)) = λ`.
pub struct PhiInput<'a> {
    pub base: &'a Semigroup,
    pub lambda: &'a Semigroup,
    pub target: &'a Semigroup,
    pub to_lambda: &'a [usize],
    pub lambda_to_target: &'a [usize],
    pub section: &'a [ElementId],
    /// Reject sandwiches that are not sections of `to_lambda`.
    pub require_section: bool,
}

/// What a `Φ` run built, for callers that want to inspect it further.
pub struct PhiOutcome {
    pub phi: Morphism,
    pub report: Report,
    pub rees: ReesSemigroup,
    pub rees_quotient: Semigroup,
    pub image: ReesSemigroup,
}

/// Builds `M = M(base; Λ; P)`, its right regular representation `M/θ*`, and
/// `M' = M(target; Λ; P')` with `P' = lambda_to_target`, then checks that
/// `[(a, λ)] ↦ (P'(to_lambda(a)), λ)` is a well-defined isomorphism `M/θ* → M'`.
pub fn phi_construction(input: PhiInput<'_>) -> Result<PhiOutcome> {
    let PhiInput { base, lambda, target, to_lambda, lambda_to_target, section, require_section } = input;
    if to_lambda.len() != base.order()
        || lambda_to_target.len() != lambda.order()
        || section.len() != lambda.order()
    {
        return Err(Error::DimensionMismatch("Φ input maps do not match the semigroups".into()));
    }
    for (l, &rep) in section.iter().enumerate() {
        if rep >= base.order() || (require_section && to_lambda[rep] != l) {
            return Err(Error::IllFormed(format!("P({l}) = {rep} is not in class {l}")));
        }
    }
    let m = rees(base, &SandwichVector::new(base, section.to_vec())?)?;
    let theta_star = theta(m.semigroup());
    let (mq, _) = quotient(m.semigroup(), &theta_star)?;
    let image = rees(target, &SandwichVector::new(target, lambda_to_target.to_vec())?)?;

    let mut report = Report::new(
        "phi",
        format!("base order {}, |Λ|={}, P=({})", base.order(), lambda.order(), m.sandwich()),
    );
    let mut map: Vec<Option<(ElementId, ElementId)>> = vec![None; mq.order()];
    let mut clash = None;
    for e in m.semigroup().elements() {
        let (a, l) = m.decode(e);
        let value = image.encode(lambda_to_target[to_lambda[a]], l);
        let class = theta_star.class_of(e);
        match map[class] {
            None => map[class] = Some((value, e)),
            Some((v, first)) if v != value && clash.is_none() => clash = Some((first, e)),
            _ => {}
        }
    }
    report.check("phi_well_defined", clash.is_none(), || {
        let (x, y) = clash.unwrap();
        format!(
            "{} and {} share a theta* class but have different images",
            pair(&m, x),
            pair(&m, y)
        )
    });
    let phi_map: Vec<ElementId> = map.into_iter().map(|v| v.expect("classes are inhabited").0).collect();
    let phi = Morphism::new(phi_map, image.semigroup().order(), MorphismKind::Hom)?;
    report.check("phi_bijective", phi.is_bijective(), || format!("Φ = {phi}"));
    let failure = homomorphism_failure(&phi, &mq, image.semigroup())?;
    report.check("phi_homomorphism", failure.is_none(), || {
        let (a, b) = failure.unwrap();
        format!("theta* classes {a} and {b}")
    });
    record_left_simple_remark(&mut report, "rees", &m);
    record_left_simple_remark(&mut report, "image", &image);

    let phi = if report.passed() {
        Morphism::new(phi.map, phi.target_order, MorphismKind::Iso)?
    } else {
        phi
    };
    Ok(PhiOutcome { phi, report, rees: m, rees_quotient: mq, image })
}

/// `Φ: M(S; S/θ; P)/θ* → M(S/θ⁽¹⁾; S/θ; P')` for a θ-preserving `P` given by `sec`.
pub fn phi(s: &Semigroup, sec: &Section) -> Result<(Morphism, Report)> {
    let tower = theta_tower(s, 1)?;
    if sec.congruence() != tower.level(0) {
        return Err(Error::IllFormed("section is not taken over theta".into()));
    }
    let (lambda, to_lambda) = quotient(s, tower.level(0))?;
    let (target, _) = quotient(s, tower.level(1))?;
    let p_prime = class_map(tower.level(0), tower.level(1))?;
    let outcome = phi_construction(PhiInput {
        base: s,
        lambda: &lambda,
        target: &target,
        to_lambda: to_lambda.map(),
        lambda_to_target: &p_prime,
        section: sec.representatives(),
        require_section: true,
    })?;
    Ok((outcome.phi, outcome.report))
}

/// `Ψ: (a, λ) ↦ (τ(a), λ)` from `M(S; Λ; P)` into `M(T; Λ; τ∘P)`.
pub fn psi(s: &Semigroup, t: &Semigroup, tau: &Morphism, p: &SandwichVector) -> Result<(Morphism, Report)> {
    let (psi, report, _, _) = psi_construction(s, t, tau, p)?;
    Ok((psi, report))
}

pub(crate) fn psi_construction(
    s: &Semigroup,
    t: &Semigroup,
    tau: &Morphism,
    p: &SandwichVector,
) -> Result<(Morphism, Report, ReesSemigroup, ReesSemigroup)> {
    if tau.source_order() != s.order() || tau.target_order() != t.order() {
        return Err(Error::NotAnEmbedding(format!(
            "τ maps {} elements into {}, expected {} into {}",
            tau.source_order(),
            tau.target_order(),
            s.order(),
            t.order()
        )));
    }
    if !tau.is_injective() {
        return Err(Error::NotAnEmbedding(format!("τ = {tau} is not injective")));
    }
    if let Some((a, b)) = homomorphism_failure(tau, s, t)? {
        return Err(Error::NotAnEmbedding(format!("τ({a}·{b}) ≠ τ({a})τ({b})")));
    }
    let m = rees(s, p)?;
    let p_prime: Vec<ElementId> = p.entries().iter().map(|&e| tau.apply(e)).collect();
    let image = rees(t, &SandwichVector::new(t, p_prime)?)?;
    let map = m
        .semigroup()
        .elements()
        .map(|e| {
            let (a, l) = m.decode(e);
            image.encode(tau.apply(a), l)
        })
        .collect();
    let psi = Morphism::new(map, image.semigroup().order(), MorphismKind::Hom)?;

    let mut report = Report::new(
        "psi",
        format!("S order {}, T order {}, τ=({tau}), P=({p})", s.order(), t.order()),
    );
    report.check("psi_injective", psi.is_injective(), || format!("Ψ = {psi}"));
    let failure = homomorphism_failure(&psi, m.semigroup(), image.semigroup())?;
    report.check("psi_homomorphism", failure.is_none(), || {
        let (x, y) = failure.unwrap();
        format!("{} and {}", pair(&m, x), pair(&m, y))
    });
    record_left_simple_remark(&mut report, "rees", &m);
    record_left_simple_remark(&mut report, "image", &image);

    let psi = if report.passed() {
        Morphism::new(psi.map, psi.target_order, MorphismKind::Embedding)?
    } else {
        psi
    };
    Ok((psi, report, m, image))
}

/// Renders an encoded Rees element as `(s,λ)`.
pub(crate) fn pair(m: &ReesSemigroup, e: ElementId) -> String {
    let (s, l) = m.decode(e);
    format!("({s},{l})")
}

pub(crate) fn record_left_simple_remark(report: &mut Report, label: &str, m: &ReesSemigroup) {
    report.check(
        &format!("left_simple_lambda_one[{label}]"),
        m.left_simple_forces_single_lambda(),
        || format!("left simple with |Λ| = {}", m.lambda_size()),
    );
}
