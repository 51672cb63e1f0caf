//! Closure operators induced by topologies, density, the simplicity
//! predicates, and the separated / complete / sheaf classifier with a
//! brute-force factorization oracle.
//!
//! Bits are per object, as produced by [`crate::topology::parse_tag`]. For
//! an object with faces, "k-simple" means at most one element per tuple of
//! faces and "k-complete" means at least one element per compatible tuple of
//! faces, i.e. per morphism `∂y(k) -> B`. For an object without faces the
//! same words mean `|B(k)| <= 1` and `|B(k)| >= 1`.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fincat::{FiniteIndexCategory, ObjectId};
use crate::omega::matching_family;
use crate::presheaf::{boundary, FinitePresheaf, MorphismSearch, PresheafError, PresheafMorphism, Subpresheaf};
use crate::topology::LTTopology;

/// Default cap on ambient presheaves in the factorization oracle.
pub const DEFAULT_AMBIENT_TOTAL: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("presheaf is over {found}, topology is over {expected}")]
    CategoryMismatch { expected: String, found: String },
    #[error("expected {expected} bits, got {got}")]
    BitCount { expected: usize, got: usize },
    #[error("subobject does not fit its ambient presheaf")]
    NotASubobject,
    #[error("recursive closure is not a subpresheaf (bit string with a 1 before a 0 on a category with degeneracies?): {0}")]
    NotClosed(PresheafError),
}

/// A closed subobject with the elements the closure added, per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub closed: Subpresheaf,
    pub added: Vec<Vec<usize>>,
}

impl ClosureResult {
    fn new(ambient: &FinitePresheaf, sub: &Subpresheaf, closed: Subpresheaf) -> Self {
        let added = (0..ambient.category().object_count())
            .map(|o| (0..ambient.size(o)).filter(|&x| closed.contains(ambient, o, x) && !sub.contains(ambient, o, x)).collect())
            .collect();
        ClosureResult { closed, added }
    }

    /// Whether the closure is the whole ambient presheaf.
    pub fn is_everything(&self, ambient: &FinitePresheaf) -> bool {
        self.closed.len() == ambient.total_size()
    }

    /// One line per object listing added element names.
    pub fn describe_added(&self, ambient: &FinitePresheaf) -> String {
        let c = ambient.category();
        (0..c.object_count())
            .map(|o| {
                let names: Vec<&str> = self.added[o].iter().map(|&x| ambient.element_name(o, x)).collect();
                format!("{}: +{{{}}}", c.object(o).name, names.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn check_same_category(a: &FiniteIndexCategory, b: &FiniteIndexCategory) -> Result<(), ClosureError> {
    if a.kind() != b.kind() {
        return Err(ClosureError::CategoryMismatch { expected: a.kind().to_string(), found: b.kind().to_string() });
    }
    Ok(())
}

fn check_sub(ambient: &FinitePresheaf, sub: &Subpresheaf) -> Result<(), ClosureError> {
    if sub.bits().len() != ambient.total_size() {
        return Err(ClosureError::NotASubobject);
    }
    Ok(())
}

fn check_bits(c: &FiniteIndexCategory, bits: &[bool]) -> Result<(), ClosureError> {
    if bits.len() != c.object_count() {
        return Err(ClosureError::BitCount { expected: c.object_count(), got: bits.len() });
    }
    Ok(())
}

/// The subobject classified by `j ∘ χ_{A'}`.
pub fn closure_via_chi(j: &LTTopology, ambient: &FinitePresheaf, sub: &Subpresheaf) -> Result<ClosureResult, ClosureError> {
    let omega = j.omega();
    check_same_category(omega.category(), ambient.category())?;
    check_sub(ambient, sub)?;
    let chi = omega.characteristic(ambient, sub);
    let mut bits = FixedBitSet::with_capacity(ambient.total_size());
    for (k, comp) in chi.components.iter().enumerate() {
        for (x, &s) in comp.iter().enumerate() {
            if j.apply(k, s) == omega.top(k) {
                bits.insert(ambient.global(k, x));
            }
        }
    }
    let closed = ambient.subpresheaf(bits)?;
    Ok(ClosureResult::new(ambient, sub, closed))
}

/// Closure by recursion on grade: an object with bit 0 keeps `A'`; an
/// object with bit 1 takes every element of `A` whose faces are all in the
/// already-closed lower levels.
pub fn closure_recursive(bits: &[bool], ambient: &FinitePresheaf, sub: &Subpresheaf) -> Result<ClosureResult, ClosureError> {
    let c = ambient.category();
    check_bits(c, bits)?;
    check_sub(ambient, sub)?;
    let mut closed = FixedBitSet::with_capacity(ambient.total_size());
    for k in c.objects_by_grade() {
        for x in 0..ambient.size(k) {
            let keep = if bits[k] {
                c.faces_into(k).iter().all(|&g| {
                    let d = c.generator(g).morphism;
                    closed.contains(ambient.global(c.morphism(d).source, ambient.act(d, x)))
                })
            } else {
                sub.contains(ambient, k, x)
            };
            if keep {
                closed.insert(ambient.global(k, x));
            }
        }
    }
    let closed = ambient.subpresheaf(closed).map_err(ClosureError::NotClosed)?;
    Ok(ClosureResult::new(ambient, sub, closed))
}

/// Whether the closure of `sub` under `j` is all of `ambient`.
pub fn is_dense(j: &LTTopology, ambient: &FinitePresheaf, sub: &Subpresheaf) -> Result<bool, ClosureError> {
    Ok(closure_via_chi(j, ambient, sub)?.is_everything(ambient))
}

/// Density by levels: `A'(k) = A(k)` at every object with bit 0.
pub fn is_dense_by_levels(bits: &[bool], ambient: &FinitePresheaf, sub: &Subpresheaf) -> Result<bool, ClosureError> {
    let c = ambient.category();
    check_bits(c, bits)?;
    check_sub(ambient, sub)?;
    Ok((0..c.object_count()).all(|k| bits[k] || (0..ambient.size(k)).all(|x| sub.contains(ambient, k, x))))
}

/// Why a presheaf fails simplicity or completeness at one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LevelWitness {
    /// Several elements with the same faces (or more than one element at an
    /// object without faces).
    Parallel { object: String, faces: Vec<String>, elements: Vec<String> },
    /// A compatible tuple of faces with nothing filling it (or an empty
    /// object without faces).
    Unfilled { object: String, faces: Vec<String> },
}

impl fmt::Display for LevelWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelWitness::Parallel { object, faces, elements } => {
                write!(f, "{object}: {{{}}} share faces ({})", elements.join(", "), faces.join(", "))
            }
            LevelWitness::Unfilled { object, faces } => write!(f, "{object}: nothing has faces ({})", faces.join(", ")),
        }
    }
}

/// Elements of `B(k)` grouped by their tuple of faces, in `faces_into` order.
pub fn parallel_sets(b: &FinitePresheaf, k: ObjectId) -> Vec<(Vec<usize>, Vec<usize>)> {
    let c = b.category();
    let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for x in 0..b.size(k) {
        let tuple = c.faces_into(k).iter().map(|&g| b.act(c.generator(g).morphism, x)).collect();
        groups.entry(tuple).or_default().push(x);
    }
    groups.into_iter().collect()
}

/// Every compatible tuple of faces for object `k` (matching families over
/// `faces_into(k)`), in lexicographic order.
pub fn compatible_tuples(b: &FinitePresheaf, k: ObjectId) -> Vec<Vec<usize>> {
    let c = b.category();
    let faces: Vec<usize> = c.faces_into(k).iter().map(|&g| c.generator(g).morphism).collect();
    let ranges: Vec<usize> = faces.iter().map(|&d| b.size(c.morphism(d).source)).collect();
    if ranges.contains(&0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut t = vec![0; faces.len()];
    loop {
        if matching_family(c, &faces, |i, p| b.act(p, t[i])) {
            out.push(t.clone());
        }
        let Some(i) = (0..t.len()).rev().find(|&i| t[i] + 1 < ranges[i]) else { break };
        t[i] += 1;
        t[i + 1..].iter_mut().for_each(|v| *v = 0);
    }
    out
}

fn face_names(b: &FinitePresheaf, k: ObjectId, tuple: &[usize]) -> Vec<String> {
    let c = b.category();
    c.faces_into(k)
        .iter()
        .zip(tuple)
        .map(|(&g, &x)| b.element_name(c.morphism(c.generator(g).morphism).source, x).to_string())
        .collect()
}

/// First simplicity failure at `k`, if any.
pub fn simplicity_witness(b: &FinitePresheaf, k: ObjectId) -> Option<LevelWitness> {
    let object = b.category().object(k).name.clone();
    parallel_sets(b, k).into_iter().find(|(_, xs)| xs.len() > 1).map(|(tuple, xs)| LevelWitness::Parallel {
        object,
        faces: face_names(b, k, &tuple),
        elements: xs.iter().map(|&x| b.element_name(k, x).to_string()).collect(),
    })
}

/// First completeness failure at `k`, if any.
pub fn completeness_witness(b: &FinitePresheaf, k: ObjectId) -> Option<LevelWitness> {
    let c = b.category();
    let object = c.object(k).name.clone();
    if c.faces_into(k).is_empty() {
        return (b.size(k) == 0).then_some(LevelWitness::Unfilled { object, faces: Vec::new() });
    }
    let filled: std::collections::BTreeSet<Vec<usize>> = parallel_sets(b, k).into_iter().map(|(t, _)| t).collect();
    compatible_tuples(b, k)
        .into_iter()
        .find(|t| !filled.contains(t))
        .map(|t| LevelWitness::Unfilled { object, faces: face_names(b, k, &t) })
}

pub fn k_simple(b: &FinitePresheaf, k: ObjectId) -> bool {
    simplicity_witness(b, k).is_none()
}

pub fn k_complete(b: &FinitePresheaf, k: ObjectId) -> bool {
    completeness_witness(b, k).is_none()
}

pub fn k_exact(b: &FinitePresheaf, k: ObjectId) -> bool {
    k_simple(b, k) && k_complete(b, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelFlags {
    pub object: String,
    pub bit: bool,
    pub simple: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub separated: bool,
    pub complete: bool,
    pub sheaf: bool,
    pub levels: Vec<LevelFlags>,
    /// Failures at objects whose bit is set.
    pub witnesses: Vec<LevelWitness>,
}

/// Separated / complete / sheaf from the per-object bits.
pub fn classify(b: &FinitePresheaf, bits: &[bool]) -> Result<Classification, ClosureError> {
    let c = b.category();
    check_bits(c, bits)?;
    let mut levels = Vec::new();
    let mut witnesses = Vec::new();
    for k in c.objects_by_grade() {
        let s = simplicity_witness(b, k);
        let m = completeness_witness(b, k);
        levels.push(LevelFlags { object: c.object(k).name.clone(), bit: bits[k], simple: s.is_none(), complete: m.is_none() });
        if bits[k] {
            witnesses.extend(s);
            witnesses.extend(m);
        }
    }
    let separated = levels.iter().all(|l| !l.bit || l.simple);
    let complete = levels.iter().all(|l| !l.bit || l.complete);
    Ok(Classification { separated, complete, sheaf: separated && complete, levels, witnesses })
}

/// A dense subobject with a map into `B` that has zero or several
/// extensions to the ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    /// Index into the ambient list.
    pub ambient: usize,
    pub sub: Subpresheaf,
    pub map: PresheafMorphism,
    /// Number of extensions found, capped at 2.
    pub extensions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub separated: bool,
    pub complete: bool,
    pub dense_monos: usize,
    pub maps_checked: usize,
    pub non_unique: Option<FactorizationWitness>,
    pub missing: Option<FactorizationWitness>,
}

impl FactorizationReport {
    pub fn sheaf(&self) -> bool {
        self.separated && self.complete
    }
}

/// Ambient objects for the oracle: every `y(k)` with `∂y(k)` first, then the
/// presheaf corpus up to `max_total`.
pub fn oracle_ambients(category: &Arc<FiniteIndexCategory>, max_total: usize) -> Result<Vec<FinitePresheaf>, crate::corpus::CorpusError> {
    let mut out: Vec<FinitePresheaf> = (0..category.object_count()).map(|k| FinitePresheaf::yoneda(category, k)).collect();
    out.extend(crate::corpus::presheaf_corpus(category, max_total)?);
    Ok(out)
}

/// Counts extensions of every map `A' -> B` along every `j`-dense `A' ⊆ A`
/// for `A` in `ambients`. Separated means never two; complete means never
/// zero.
pub fn brute_factorization_check(b: &FinitePresheaf, j: &LTTopology, ambients: &[FinitePresheaf]) -> Result<FactorizationReport, ClosureError> {
    check_same_category(j.omega().category(), b.category())?;
    let mut report = FactorizationReport {
        separated: true,
        complete: true,
        dense_monos: 0,
        maps_checked: 0,
        non_unique: None,
        missing: None,
    };
    for (ai, a) in ambients.iter().enumerate() {
        check_same_category(j.omega().category(), a.category())?;
        let subs = dense_subobjects(j, a)?;
        let whole = MorphismSearch::new(a, b);
        for sub in subs {
            report.dense_monos += 1;
            let (part, embedding) = a.restrict(&sub);
            for f in MorphismSearch::new(&part, b).all(&vec![None; part.total_size()]) {
                report.maps_checked += 1;
                let mut fixed = vec![None; a.total_size()];
                for (g, &e) in embedding.iter().enumerate() {
                    fixed[e] = Some(f.apply_global(&part, b, g));
                }
                let n = whole.count(&fixed, 2);
                let witness = || FactorizationWitness { ambient: ai, sub: sub.clone(), map: f.clone(), extensions: n };
                if n >= 2 && report.non_unique.is_none() {
                    report.separated = false;
                    report.non_unique = Some(witness());
                }
                if n == 0 && report.missing.is_none() {
                    report.complete = false;
                    report.missing = Some(witness());
                }
                if !report.separated && !report.complete {
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// `j`-dense subobjects of `a`, skipping `a` itself (it always factors uniquely).
fn dense_subobjects(j: &LTTopology, a: &FinitePresheaf) -> Result<Vec<Subpresheaf>, ClosureError> {
    let mut out = Vec::new();
    for sub in a.enumerate_subpresheaves(crate::presheaf::DEFAULT_CARRIER_BOUND)? {
        if sub.len() < a.total_size() && is_dense(j, a, &sub)? {
            out.push(sub);
        }
    }
    Ok(out)
}

/// Closure axiom labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosureAxiom {
    /// `A' ⊆ cl(A')`
    Extensive,
    /// `cl(cl(A')) = cl(A')`
    Idempotent,
    /// `A' ⊆ A''` implies `cl(A') ⊆ cl(A'')`
    Monotone,
    /// `cl(f⁻¹ A') = f⁻¹ cl(A')`
    PullbackStable,
    /// Closures of strong monos are strong; every mono of presheaves is strong.
    Strongness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureAxiomViolation {
    pub axiom: ClosureAxiom,
    pub description: String,
}

/// Checks extensive, idempotent and monotone on every subobject of
/// `ambient`, and pullback stability along each given morphism into it.
pub fn check_closure_axioms(
    j: &LTTopology,
    ambient: &FinitePresheaf,
    pullbacks: &[(FinitePresheaf, PresheafMorphism)],
) -> Result<Option<ClosureAxiomViolation>, ClosureError> {
    let subs = ambient.enumerate_subpresheaves(crate::presheaf::DEFAULT_CARRIER_BOUND)?;
    let closures = subs.iter().map(|s| closure_via_chi(j, ambient, s).map(|r| r.closed)).collect::<Result<Vec<_>, _>>()?;
    let fail = |axiom, s: &Subpresheaf| {
        Ok(Some(ClosureAxiomViolation { axiom, description: ambient.describe_sub(s) }))
    };
    for (s, cl) in subs.iter().zip(&closures) {
        if !s.is_subset(cl) {
            return fail(ClosureAxiom::Extensive, s);
        }
        if closure_via_chi(j, ambient, cl)?.closed != *cl {
            return fail(ClosureAxiom::Idempotent, s);
        }
    }
    for (i, s) in subs.iter().enumerate() {
        for (t, ct) in subs.iter().zip(&closures) {
            if s.is_subset(t) && !closures[i].is_subset(ct) {
                return fail(ClosureAxiom::Monotone, s);
            }
        }
    }
    for (x, f) in pullbacks {
        for (s, cl) in subs.iter().zip(&closures) {
            let lhs = closure_via_chi(j, x, &x.preimage(f, ambient, s))?.closed;
            let rhs = x.preimage(f, ambient, cl);
            if lhs != rhs {
                return fail(ClosureAxiom::PullbackStable, s);
            }
        }
    }
    Ok(None)
}

/// Runs [`classify`] and [`brute_factorization_check`] over many `B` in
/// parallel, returning the indices where they disagree.
pub fn classify_vs_oracle(bs: &[FinitePresheaf], j: &LTTopology, ambients: &[FinitePresheaf]) -> Result<Vec<usize>, ClosureError> {
    let bits = j.object_bits();
    let results: Vec<Result<Option<usize>, ClosureError>> = bs
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let c = classify(b, &bits)?;
            let r = brute_factorization_check(b, j, ambients)?;
            Ok((c.separated != r.separated || c.complete != r.complete).then_some(i))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// The boundary inclusion `∂y(k) ⊆ y(k)` as an ambient and subobject.
pub fn boundary_inclusion(category: &Arc<FiniteIndexCategory>, k: ObjectId) -> (FinitePresheaf, Subpresheaf) {
    (FinitePresheaf::yoneda(category, k), boundary(category, k))
}
