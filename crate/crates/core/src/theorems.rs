//! Report-producing checks of the structural results about `M(S; Λ; P)`,
//! congruence towers and the right regular representation.
//!
//! Every verification returns a [`Report`]: a list of named checks, each
//! passing, failing with a witness, or skipped because its precondition does
//! not apply. A report fails as soon as one check fails and passes when every
//! applicable check holds.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{check_property, minimal_left_ideals, StructuralProperty};
use crate::error::{Error, Result};
use crate::morphisms::{
    kappa, pair, phi_construction, psi_construction, record_left_simple_remark, Morphism, MorphismKind,
    PhiInput,
};
use crate::rees::{rees, SandwichVector};
use crate::relations::{
    choices, class_map, identity_congruence, quotient, sections, theta, theta_tower, tower, SectionPolicy,
};
use crate::semigroup::{ElementId, Semigroup};

/// Number of random sandwich vectors drawn when exhaustive enumeration is too large.
pub const RANDOM_SANDWICH_SAMPLES: usize = 64;

/// Largest base order for which every sandwich vector with `|Λ| ≤ 2` is tried.
pub const EXHAUSTIVE_SANDWICH_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    SkippedPrecondition,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedPrecondition => "SKIPPED_PRECONDITION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    theorem_id: String,
    inputs_summary: String,
    status: Status,
    witness: Option<String>,
    checks: Vec<Check>,
}

impl Report {
    pub fn new(theorem_id: impl Into<String>, inputs_summary: impl Into<String>) -> Self {
        Report {
            theorem_id: theorem_id.into(),
            inputs_summary: inputs_summary.into(),
            status: Status::SkippedPrecondition,
            witness: None,
            checks: Vec::new(),
        }
    }

    pub fn theorem_id(&self) -> &str {
        &self.theorem_id
    }

    pub fn inputs_summary(&self) -> &str {
        &self.inputs_summary
    }

    /// `SKIPPED_PRECONDITION` only when nothing applicable was checked.
    pub fn status(&self) -> Status {
        self.status
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The first failing check's witness; present exactly when the report fails.
    pub fn witness(&self) -> Option<&str> {
        self.witness.as_deref()
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// Records a check; `witness` is only evaluated when `holds` is false.
    pub fn check(&mut self, name: &str, holds: bool, witness: impl FnOnce() -> String) {
        let witness = (!holds).then(witness);
        self.push(Check {
            name: name.to_string(),
            status: if holds { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    pub fn skip(&mut self, name: &str) {
        self.push(Check { name: name.to_string(), status: Status::SkippedPrecondition, witness: None });
    }

    fn fail_with(&mut self, name: &str, err: &Error) {
        self.check(name, false, || err.to_string());
    }

    /// Appends another report's checks under `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            if let Some(w) = c.witness.take() {
                c.witness = Some(format!("{prefix}: {w}"));
            }
            self.push(c);
        }
    }

    fn push(&mut self, check: Check) {
        match check.status {
            Status::Fail if self.status != Status::Fail => {
                self.status = Status::Fail;
                self.witness = check.witness.clone();
            }
            Status::Pass if self.status == Status::SkippedPrecondition => self.status = Status::Pass,
            _ => {}
        }
        self.checks.push(check);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}]", self.status, self.theorem_id, self.inputs_summary)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

/// The properties for which `M(S; Λ; P)` inherits the property from `S` and back.
pub const HEREDITARY_PROPERTIES: [StructuralProperty; 4] = [
    StructuralProperty::RightSimple,
    StructuralProperty::Simple,
    StructuralProperty::LeftCancellative,
    StructuralProperty::RightGroup,
];

fn describe(s: &Semigroup) -> String {
    format!("order {}", s.order())
}

/// Checks local right regularity of `S, S/θ⁽⁰⁾, S/θ⁽¹⁾, …` for the first `depth` triples.
///
/// With `S_k = S/ι⁽ᵏ⁻¹⁾` (so `S_1 = S`, `S_2 = S/θ`), level `k` builds
/// `M(S_k; S_{k+1}; P)` for every section `P` of the natural map
/// `S_k → S_{k+1}`, and checks that its right regular representation is
/// isomorphic to `M(S_{k+2}; S_{k+1}; P')` via `Φ`, where `P'` is the natural
/// map `S_{k+1} → S_{k+2}`. The natural maps are the `κ` maps, so `kappa`
/// reports confirm that `S_{k+1}` and `S_{k+2}` are `S_k/θ` and `S_k/θ⁽¹⁾`.
pub fn verify_sequence(s: &Semigroup, depth: usize) -> Report {
    let mut report = Report::new("sequence", format!("{}, depth {depth}", describe(s)));
    if let Err(e) = sequence_checks(s, depth, &mut report) {
        report.fail_with("construction", &e);
    }
    report
}

fn sequence_checks(s: &Semigroup, depth: usize, report: &mut Report) -> Result<()> {
    if depth == 0 {
        report.skip("no levels requested");
        return Ok(());
    }
    let iota = tower(s, &identity_congruence(s), depth + 1)?;
    let levels = iota.levels();
    let quotients: Vec<Semigroup> = levels
        .iter()
        .map(|l| quotient(s, l).map(|(q, _)| q))
        .collect::<Result<_>>()?;

    for k in 1..=depth {
        let tag = format!("level {k}");
        let (base, lambda, target) = (&quotients[k - 1], &quotients[k], &quotients[k + 1]);
        let to_lambda = class_map(&levels[k - 1], &levels[k])?;
        let lambda_to_target = class_map(&levels[k], &levels[k + 1])?;
        let to_target = class_map(&levels[k - 1], &levels[k + 1])?;

        let to_lambda_kernel = Morphism::new(to_lambda.clone(), lambda.order(), MorphismKind::Hom)?.kernel();
        let base_theta = theta_tower(base, 1)?;
        report.check(&format!("{tag}/lambda_is_right_regular_representation"), to_lambda_kernel == *base_theta.level(0), || {
            format!("kernel {to_lambda_kernel} differs from theta {}", base_theta.level(0))
        });
        let to_target_kernel = Morphism::new(to_target, target.order(), MorphismKind::Hom)?.kernel();
        report.check(&format!("{tag}/target_is_theta1_quotient"), to_target_kernel == *base_theta.level(1), || {
            format!("kernel {to_target_kernel} differs from theta^(1) {}", base_theta.level(1))
        });
        if k >= 2 {
            for j in 0..2 {
                let (_, r) = kappa(s, k - 2, j)?;
                report.absorb(&format!("{tag}/kappa({},{j})", k - 2), r);
            }
        }

        let mut preimages = vec![Vec::new(); lambda.order()];
        for (a, &l) in to_lambda.iter().enumerate() {
            preimages[l].push(a);
        }
        for section in choices(&preimages) {
            let outcome = phi_construction(PhiInput {
                base,
                lambda,
                target,
                to_lambda: &to_lambda,
                lambda_to_target: &lambda_to_target,
                section: &section,
                require_section: true,
            })?;
            report.absorb(&format!("{tag}/P=({})", join(&section)), outcome.report);
        }
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Runs the `Φ` construction for an arbitrary `P: S/θ → S`, section or not.
///
/// Only sections are covered by the theory; for other vectors the report is
/// an observation, not an assertion.
pub fn phi_experiment(s: &Semigroup, p: &SandwichVector) -> Result<Report> {
    let tower = theta_tower(s, 1)?;
    let (lambda, to_lambda) = quotient(s, tower.level(0))?;
    let (target, _) = quotient(s, tower.level(1))?;
    let p_prime = class_map(tower.level(0), tower.level(1))?;
    let outcome = phi_construction(PhiInput {
        base: s,
        lambda: &lambda,
        target: &target,
        to_lambda: to_lambda.map(),
        lambda_to_target: &p_prime,
        section: p.entries(),
        require_section: false,
    })?;
    let mut report = Report::new("phi-experiment", format!("{}, P=({p})", describe(s)));
    let is_section = p.entries().iter().enumerate().all(|(l, &e)| to_lambda.apply(e) == l);
    report.check("sandwich_is_theta_section", is_section, || format!("P=({p}) is not θ-preserving"));
    report.absorb("phi", outcome.report);
    Ok(report)
}

/// `M(S; Λ; P)` has `p` exactly when `S` has it; for left cancellativity the
/// criterion is `aP(λ)b = aP(λ)c ⇒ b = c`, which over a right simple `S`
/// reduces to left cancellativity of `S`.
pub fn verify_hereditary(p: StructuralProperty, s: &Semigroup, sandwich: &SandwichVector) -> Result<Report> {
    if !HEREDITARY_PROPERTIES.contains(&p) {
        return Err(Error::UnsupportedProperty(p.to_string()));
    }
    let m = rees(s, sandwich)?;
    let mut report = Report::new(
        format!("hereditary:{p}"),
        format!("{}, P=({sandwich})", describe(s)),
    );
    let on_rees = check_property(m.semigroup(), p);
    if p == StructuralProperty::LeftCancellative {
        let criterion = sandwich_cancellation_failure(s, sandwich);
        report.check("rees_iff_sandwich_criterion", on_rees == criterion.is_none(), || match criterion {
            Some((a, b, c, l)) => format!("M left cancellative but a={a} b={b} c={c} λ={l} violate the criterion"),
            None => "criterion holds but M is not left cancellative".into(),
        });
        if check_property(s, StructuralProperty::RightSimple) {
            let on_base = check_property(s, p);
            report.check("right_simple_base_rees_iff_base", on_rees == on_base, || {
                format!("M: {on_rees}, S: {on_base}")
            });
        } else {
            report.skip("right_simple_base_rees_iff_base");
        }
    } else {
        let on_base = check_property(s, p);
        report.check("rees_iff_base", on_rees == on_base, || format!("M: {on_rees}, S: {on_base}"));
    }
    record_left_simple_remark(&mut report, "rees", &m);
    Ok(report)
}

/// First `(a, b, c, λ)` with `aP(λ)b = aP(λ)c` and `b ≠ c`.
fn sandwich_cancellation_failure(s: &Semigroup, p: &SandwichVector) -> Option<(ElementId, ElementId, ElementId, usize)> {
    for l in 0..p.lambda_size() {
        for a in s.elements() {
            let ap = s.mul(a, p.get(l));
            for b in s.elements() {
                for c in s.elements() {
                    if b != c && s.mul(ap, b) == s.mul(ap, c) {
                        return Some((a, b, c, l));
                    }
                }
            }
        }
    }
    None
}

/// Left equalizer simplicity of `S` against left cancellativity of `S/θ`, and,
/// when `S` is left equalizer simple, `θ⁽¹⁾ = θ` and left equalizer simplicity
/// of `M(S; S/θ; P)` for every θ-preserving `P`.
pub fn verify_equalizer(s: &Semigroup) -> Report {
    let mut report = Report::new("equalizer", describe(s));
    if let Err(e) = equalizer_checks(s, &mut report) {
        report.fail_with("construction", &e);
    }
    report
}

fn equalizer_checks(s: &Semigroup, report: &mut Report) -> Result<()> {
    let tower = theta_tower(s, 1)?;
    let (rrr, _) = quotient(s, tower.level(0))?;
    let les = check_property(s, StructuralProperty::LeftEqualizerSimple);
    let quotient_lc = check_property(&rrr, StructuralProperty::LeftCancellative);
    report.check("les_iff_quotient_left_cancellative", les == quotient_lc, || {
        format!("left equalizer simple: {les}, S/θ left cancellative: {quotient_lc}")
    });
    if !les {
        report.skip("theta1_equals_theta");
        report.skip("rees_over_sections_les");
        return Ok(());
    }
    report.check("theta1_equals_theta", tower.level(0) == tower.level(1), || {
        format!("theta {} but theta^(1) {}", tower.level(0), tower.level(1))
    });
    for sec in sections(s, tower.level(0), SectionPolicy::All)? {
        let p = SandwichVector::new(s, sec.representatives().to_vec())?;
        let m = rees(s, &p)?;
        let holds = check_property(m.semigroup(), StructuralProperty::LeftEqualizerSimple);
        report.check(&format!("rees_over_sections_les/P=({p})"), holds, || {
            format!("M(S; S/θ; ({p})) is not left equalizer simple")
        });
        record_left_simple_remark(report, &format!("P=({p})"), &m);
    }
    Ok(())
}

/// Embeds `M(S; Λ; P)` into `M(T; Λ; τ∘P)` by `Ψ`, and `M(S; S/θ; P)` likewise
/// for every θ-preserving `P`.
///
/// For a group `T` it also embeds `M(S; S; id)` into `M(T; S; τ)` and checks
/// the latter is completely simple; for a left simple `T` it checks that
/// `M(T; Λ; τ∘P)` is simple with the sets `L_λ` as its minimal left ideals.
pub fn verify_embedding(s: &Semigroup, t: &Semigroup, tau: &Morphism, p: &SandwichVector) -> Result<Report> {
    let (_, psi_report, _, image) = psi_construction(s, t, tau, p)?;
    let mut report = Report::new(
        "embedding",
        format!("S {}, T {}, τ=({tau}), P=({p})", describe(s), describe(t)),
    );
    report.absorb("psi", psi_report);

    for sec in sections(s, &theta(s), SectionPolicy::All)? {
        let q = SandwichVector::new(s, sec.representatives().to_vec())?;
        let (_, r, _, _) = psi_construction(s, t, tau, &q)?;
        report.absorb(&format!("theta_section/P=({q})"), r);
    }

    if t.is_group() {
        let id = SandwichVector::new(s, s.elements().collect())?;
        let (_, r, _, target) = psi_construction(s, t, tau, &id)?;
        report.absorb("group_target/identity_sandwich", r);
        let cs = check_property(target.semigroup(), StructuralProperty::CompletelySimple);
        report.check("group_target/completely_simple", cs, || {
            format!("M(T; S; τ) of order {} is not completely simple", target.semigroup().order())
        });
    } else {
        report.skip("group_target/completely_simple");
    }

    if check_property(t, StructuralProperty::LeftSimple) {
        let simple = check_property(image.semigroup(), StructuralProperty::Simple);
        report.check("left_simple_target/simple", simple, || "M(T; Λ; τ∘P) is not simple".into());
        let minimal = minimal_left_ideals(image.semigroup());
        for l in 0..image.lambda_size() {
            let column: std::collections::BTreeSet<_> = image.column_set(l).into_iter().collect();
            report.check(&format!("left_simple_target/L_{l}_minimal"), minimal.contains(&column), || {
                let members: Vec<String> = column.iter().map(|&e| pair(&image, e)).collect();
                format!("L_{l} = {{{}}} is not a minimal left ideal", members.join(","))
            });
        }
    } else {
        report.skip("left_simple_target/simple");
    }
    Ok(report)
}

/// On the tower sequence `S, S/θ, S/θ⁽¹⁾, …`: when `S` and `S/θ` are both right
/// simple (resp. simple, a right group), every level up to `depth` is too.
pub fn verify_tower_heredity(s: &Semigroup, depth: usize) -> Report {
    let mut report = Report::new("tower-heredity", format!("{}, depth {depth}", describe(s)));
    let result = (|| -> Result<()> {
        let tower = theta_tower(s, depth)?;
        let mut members = vec![s.clone()];
        for level in tower.levels() {
            members.push(quotient(s, level)?.0);
        }
        for p in [StructuralProperty::RightSimple, StructuralProperty::Simple, StructuralProperty::RightGroup] {
            if !(check_property(&members[0], p) && check_property(&members[1], p)) {
                report.skip(&format!("{p}"));
                continue;
            }
            for (i, m) in members.iter().enumerate().skip(2) {
                report.check(&format!("{p}/S_{}", i + 1), check_property(m, p), || {
                    format!("S/θ^({}) is not {p}", i - 1)
                });
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        report.fail_with("construction", &e);
    }
    report
}

/// Sandwich vectors over `s` with `|Λ| ∈ {1, 2}`: all of them when
/// `|S| ≤ 3`, otherwise [`RANDOM_SANDWICH_SAMPLES`] drawn from `seed`.
pub fn sandwich_sweep(s: &Semigroup, seed: u64) -> Vec<SandwichVector> {
    if s.order() <= EXHAUSTIVE_SANDWICH_ORDER {
        let mut all = SandwichVector::all(s, 1);
        all.extend(SandwichVector::all(s, 2));
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_SANDWICH_SAMPLES)
        .map(|_| {
            let size = rng.gen_range(1..=2);
            let entries = (0..size).map(|_| rng.gen_range(0..s.order())).collect();
            SandwichVector::new(s, entries).expect("entries drawn in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{family, FamilyKind};

    fn fam(kind: FamilyKind, n: usize) -> Semigroup {
        family(kind, n).unwrap()
    }

    fn sv(s: &Semigroup, e: &[usize]) -> SandwichVector {
        SandwichVector::new(s, e.to_vec()).unwrap()
    }

    #[test]
    fn report_status_rules() {
        let mut r = Report::new("t", "x");
        assert_eq!(r.status(), Status::SkippedPrecondition);
        r.skip("a");
        assert_eq!(r.status(), Status::SkippedPrecondition);
        r.check("b", true, || unreachable!());
        assert_eq!(r.status(), Status::Pass);
        assert!(r.witness().is_none());
        r.check("c", false, || "first".into());
        r.check("d", false, || "second".into());
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.witness(), Some("first"));
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(verify_sequence(&fam(FamilyKind::NilpotentCyclic, 3), 2).status(), Status::Pass);
        let z2 = verify_sequence(&fam(FamilyKind::CyclicGroup, 2), 3);
        assert_eq!(z2.status(), Status::Pass, "{z2}");
    }

    #[test]
    fn hereditary_examples() {
        let r2 = fam(FamilyKind::RightZero, 2);
        let r = verify_hereditary(StructuralProperty::RightSimple, &r2, &sv(&r2, &[0, 1])).unwrap();
        assert_eq!(r.status(), Status::Pass);
        let n2 = fam(FamilyKind::Null, 2);
        let r = verify_hereditary(StructuralProperty::Simple, &n2, &sv(&n2, &[0, 0])).unwrap();
        assert_eq!(r.status(), Status::Pass);
        let z2 = fam(FamilyKind::CyclicGroup, 2);
        let r = verify_hereditary(StructuralProperty::RightGroup, &z2, &sv(&z2, &[0, 1])).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert!(matches!(
            verify_hereditary(StructuralProperty::LeftSimple, &z2, &sv(&z2, &[0])),
            Err(Error::UnsupportedProperty(_))
        ));
    }

    #[test]
    fn left_cancellative_criterion_on_right_zero() {
        let r3 = fam(FamilyKind::RightZero, 3);
        let r = verify_hereditary(StructuralProperty::LeftCancellative, &r3, &sv(&r3, &[2, 0])).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert!(r.checks().iter().any(|c| c.name == "right_simple_base_rees_iff_base" && c.status == Status::Pass));
    }

    #[test]
    fn equalizer_examples() {
        for s in [
            fam(FamilyKind::LeftZero, 2),
            fam(FamilyKind::SemilatticeChain, 2),
            fam(FamilyKind::NilpotentCyclic, 3),
        ] {
            let r = verify_equalizer(&s);
            assert_eq!(r.status(), Status::Pass, "{r}");
        }
        let r = verify_equalizer(&fam(FamilyKind::SemilatticeChain, 2));
        assert!(r.checks().iter().any(|c| c.status == Status::SkippedPrecondition));
    }

    #[test]
    fn embedding_examples() {
        let z2 = fam(FamilyKind::CyclicGroup, 2);
        let z4 = fam(FamilyKind::CyclicGroup, 4);
        let tau = Morphism::new(vec![0, 2], 4, MorphismKind::Embedding).unwrap();
        let r = verify_embedding(&z2, &z4, &tau, &sv(&z2, &[0, 1])).unwrap();
        assert_eq!(r.status(), Status::Pass, "{r}");
        assert!(r.checks().iter().any(|c| c.name == "group_target/completely_simple"));

        let l2 = fam(FamilyKind::LeftZero, 2);
        let l3 = fam(FamilyKind::LeftZero, 3);
        let incl = Morphism::new(vec![0, 1], 3, MorphismKind::Embedding).unwrap();
        let r = verify_embedding(&l2, &l3, &incl, &sv(&l2, &[0, 1])).unwrap();
        assert_eq!(r.status(), Status::Pass, "{r}");
        assert!(r.checks().iter().any(|c| c.name == "left_simple_target/L_1_minimal" && c.status == Status::Pass));

        let n3 = fam(FamilyKind::NilpotentCyclic, 3);
        let r = verify_embedding(&n3, &n3, &Morphism::identity(3), &sv(&n3, &[1, 2])).unwrap();
        assert_eq!(r.status(), Status::Pass, "{r}");
    }

    #[test]
    fn tower_heredity_on_right_zero() {
        let r = verify_tower_heredity(&fam(FamilyKind::RightZero, 3), 3);
        assert_eq!(r.status(), Status::Pass);
    }

    #[test]
    fn phi_experiment_flags_non_sections() {
        let n3 = fam(FamilyKind::NilpotentCyclic, 3);
        let r = phi_experiment(&n3, &sv(&n3, &[1, 0])).unwrap();
        assert!(r.checks().iter().any(|c| c.name == "sandwich_is_theta_section" && c.status == Status::Fail));
        let r = phi_experiment(&n3, &sv(&n3, &[0, 2])).unwrap();
        assert_eq!(r.status(), Status::Pass);
    }

    #[test]
    fn sweep_sizes() {
        assert_eq!(sandwich_sweep(&fam(FamilyKind::Null, 3), 0).len(), 3 + 9);
        let big = fam(FamilyKind::Null, 4);
        let a = sandwich_sweep(&big, 7);
        assert_eq!(a.len(), RANDOM_SANDWICH_SAMPLES);
        assert_eq!(a, sandwich_sweep(&big, 7));
    }
}
