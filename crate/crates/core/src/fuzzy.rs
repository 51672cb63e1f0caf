//! Fuzzy sets over a finite Heyting algebra and their closure operators.
//!
//! A fuzzy set is a carrier with a membership function into the algebra; a
//! morphism may only raise membership. A subobject of `(A, α)` is stored as
//! an optional membership per element of `A`: `None` for elements outside
//! `A'`, otherwise `α'(a) <= α(a)`. It is strong when `α'` is the
//! restriction of `α`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::closure::ClosureAxiom;
use crate::lattice::{Element, FiniteHeytingAlgebra, Nucleus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuzzyError {
    #[error("fuzzy sets are over different algebras")]
    AlgebraMismatch,
    #[error("membership value {value} is not an element of the algebra")]
    BadMembership { value: usize },
    #[error("carrier has {names} names but {values} memberships")]
    Shape { names: usize, values: usize },
    #[error("subobject has {got} entries, ambient has {expected}")]
    SubShape { expected: usize, got: usize },
    #[error("subobject membership of `{element}` exceeds the ambient membership")]
    NotBelow { element: String },
    #[error("map does not lower memberships at `{element}`")]
    NotAMorphism { element: String },
    #[error("the trivial operator adds elements, so it has no nucleus")]
    NotSingletonPreserving,
}

/// A finite fuzzy set.
#[derive(Clone, Debug)]
pub struct FuzzySet {
    algebra: Arc<FiniteHeytingAlgebra>,
    names: Vec<String>,
    membership: Vec<Element>,
}

impl PartialEq for FuzzySet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.names == other.names && self.membership == other.membership
    }
}

impl FuzzySet {
    pub fn new(algebra: Arc<FiniteHeytingAlgebra>, names: Vec<String>, membership: Vec<Element>) -> Result<Self, FuzzyError> {
        if names.len() != membership.len() {
            return Err(FuzzyError::Shape { names: names.len(), values: membership.len() });
        }
        if let Some(&value) = membership.iter().find(|&&m| m >= algebra.size()) {
            return Err(FuzzyError::BadMembership { value });
        }
        Ok(FuzzySet { algebra, names, membership })
    }

    /// Elements named `a0, a1, …`.
    pub fn anonymous(algebra: Arc<FiniteHeytingAlgebra>, membership: Vec<Element>) -> Result<Self, FuzzyError> {
        let names = (0..membership.len()).map(|i| format!("a{i}")).collect();
        Self::new(algebra, names, membership)
    }

    pub fn algebra(&self) -> &Arc<FiniteHeytingAlgebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn membership(&self) -> &[Element] {
        &self.membership
    }

    pub fn alpha(&self, a: usize) -> Element {
        self.membership[a]
    }

    /// The whole set as a subobject of itself.
    pub fn full_sub(&self) -> FuzzySubobject {
        FuzzySubobject { membership: self.membership.iter().map(|&m| Some(m)).collect() }
    }

    pub fn empty_sub(&self) -> FuzzySubobject {
        FuzzySubobject { membership: vec![None; self.len()] }
    }

    /// Every subobject: each element is either absent or has a membership
    /// at most its ambient one.
    pub fn subobjects(&self) -> Vec<FuzzySubobject> {
        let l = &self.algebra;
        let options: Vec<Vec<Option<Element>>> = self
            .membership
            .iter()
            .map(|&m| std::iter::once(None).chain(l.elements().filter(|&x| l.leq(x, m)).map(Some)).collect())
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0; self.len()];
        loop {
            out.push(FuzzySubobject { membership: idx.iter().zip(&options).map(|(&i, o)| o[i]).collect() });
            let Some(p) = (0..idx.len()).find(|&p| idx[p] + 1 < options[p].len()) else { break };
            idx[p] += 1;
            idx[..p].iter_mut().for_each(|v| *v = 0);
        }
        out
    }

    /// Every morphism into `target`, as carrier maps.
    pub fn morphisms_to(&self, target: &FuzzySet) -> Vec<Vec<usize>> {
        morphisms_from_partial(self, target, &vec![None; self.len()], usize::MAX).1
    }

    pub fn check_morphism(&self, target: &FuzzySet, map: &[usize]) -> Result<(), FuzzyError> {
        for (a, &b) in map.iter().enumerate() {
            if b >= target.len() || !self.algebra.leq(self.alpha(a), target.alpha(b)) {
                return Err(FuzzyError::NotAMorphism { element: self.names[a].clone() });
            }
        }
        Ok(())
    }

    fn check_sub(&self, sub: &FuzzySubobject) -> Result<(), FuzzyError> {
        if sub.membership.len() != self.len() {
            return Err(FuzzyError::SubShape { expected: self.len(), got: sub.membership.len() });
        }
        for (a, m) in sub.membership.iter().enumerate() {
            if let Some(m) = *m {
                if m >= self.algebra.size() || !self.algebra.leq(m, self.alpha(a)) {
                    return Err(FuzzyError::NotBelow { element: self.names[a].clone() });
                }
            }
        }
        Ok(())
    }

    /// `(A', α')` as a fuzzy set in its own right, with the inclusion.
    pub fn restrict(&self, sub: &FuzzySubobject) -> (FuzzySet, Vec<usize>) {
        let (mut names, mut membership, mut embedding) = (Vec::new(), Vec::new(), Vec::new());
        for (a, m) in sub.membership.iter().enumerate() {
            if let Some(m) = *m {
                names.push(self.names[a].clone());
                membership.push(m);
                embedding.push(a);
            }
        }
        (FuzzySet { algebra: self.algebra.clone(), names, membership }, embedding)
    }

    /// Pulls a subobject of `target` back along `f`: membership is the meet
    /// of the source membership and the subobject membership of the image.
    pub fn pullback(&self, f: &[usize], sub: &FuzzySubobject) -> FuzzySubobject {
        FuzzySubobject {
            membership: f
                .iter()
                .enumerate()
                .map(|(x, &a)| sub.membership[a].map(|m| self.algebra.meet(self.alpha(x), m)))
                .collect(),
        }
    }

    pub fn describe_sub(&self, sub: &FuzzySubobject) -> String {
        let items: Vec<String> = sub
            .membership
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.map(|m| format!("{}:{}", self.names[a], self.algebra.name(m))))
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> =
            self.names.iter().zip(&self.membership).map(|(n, &m)| format!("{n}:{}", self.algebra.name(m))).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Extensions of a partial carrier map to morphisms, stopping at `cap`.
fn morphisms_from_partial(source: &FuzzySet, target: &FuzzySet, fixed: &[Option<usize>], cap: usize) -> (usize, Vec<Vec<usize>>) {
    let l = &source.algebra;
    let choices: Vec<Vec<usize>> = (0..source.len())
        .map(|a| match fixed[a] {
            Some(b) => vec![b],
            None => (0..target.len()).filter(|&b| l.leq(source.alpha(a), target.alpha(b))).collect(),
        })
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return (0, Vec::new());
    }
    let mut out = Vec::new();
    let mut count = 0;
    let mut idx = vec![0; source.len()];
    loop {
        count += 1;
        if cap == usize::MAX {
            out.push(idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect());
        }
        if count >= cap {
            break;
        }
        let Some(p) = (0..idx.len()).find(|&p| idx[p] + 1 < choices[p].len()) else { break };
        idx[p] += 1;
        idx[..p].iter_mut().for_each(|v| *v = 0);
    }
    (count, out)
}

/// A fuzzy subobject: `None` outside `A'`, else the lowered membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzySubobject {
    pub membership: Vec<Option<Element>>,
}

impl FuzzySubobject {
    /// `self ⊆ other` and memberships below on the common part.
    pub fn is_below(&self, other: &FuzzySubobject, l: &FiniteHeytingAlgebra) -> bool {
        self.membership.iter().zip(&other.membership).all(|(a, b)| match (a, b) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => l.leq(*x, *y),
        })
    }

    /// Membership equals the ambient membership wherever defined.
    pub fn is_strong(&self, ambient: &FuzzySet) -> bool {
        self.membership.iter().enumerate().all(|(a, m)| m.map_or(true, |m| m == ambient.alpha(a)))
    }

    pub fn carrier_len(&self) -> usize {
        self.membership.iter().flatten().count()
    }
}

/// A closure operator on fuzzy subobjects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QClosureOperator {
    /// Adds every element with its ambient membership.
    Trivial,
    /// Keeps the carrier and replaces `α'` by `φα' ∧ α`.
    NucleusInduced(Nucleus),
}

impl QClosureOperator {
    pub fn name(&self) -> String {
        match self {
            QClosureOperator::Trivial => "trivial".into(),
            QClosureOperator::NucleusInduced(n) => {
                let l = n.algebra();
                let parts: Vec<String> = l.elements().map(|x| format!("{}↦{}", l.name(x), l.name(n.apply(x)))).collect();
                format!("nucleus({})", parts.join(", "))
            }
        }
    }
}

/// The closure of `sub` in `ambient`.
pub fn fuzzy_closure(op: &QClosureOperator, ambient: &FuzzySet, sub: &FuzzySubobject) -> Result<FuzzySubobject, FuzzyError> {
    ambient.check_sub(sub)?;
    Ok(match op {
        QClosureOperator::Trivial => ambient.full_sub(),
        QClosureOperator::NucleusInduced(phi) => {
            if !Arc::ptr_eq(phi.algebra(), ambient.algebra()) && **phi.algebra() != **ambient.algebra() {
                return Err(FuzzyError::AlgebraMismatch);
            }
            let l = ambient.algebra();
            FuzzySubobject {
                membership: sub
                    .membership
                    .iter()
                    .enumerate()
                    .map(|(a, m)| m.map(|m| l.meet(phi.apply(m), ambient.alpha(a))))
                    .collect(),
            }
        }
    })
}

pub fn is_dense(op: &QClosureOperator, ambient: &FuzzySet, sub: &FuzzySubobject) -> Result<bool, FuzzyError> {
    Ok(fuzzy_closure(op, ambient, sub)? == ambient.full_sub())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClosureViolation {
    pub axiom: ClosureAxiom,
    pub description: String,
}

impl fmt::Display for QClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.axiom, self.description)
    }
}

/// All fuzzy sets with at most `max_carrier` elements over `algebra`, one
/// per isomorphism class (memberships in non-decreasing order).
pub fn fuzzy_corpus(algebra: &Arc<FiniteHeytingAlgebra>, max_carrier: usize) -> Vec<FuzzySet> {
    let mut out = Vec::new();
    let n = algebra.size();
    for len in 0..=max_carrier {
        let mut m = vec![0; len];
        loop {
            out.push(FuzzySet::anonymous(algebra.clone(), m.clone()).expect("valid memberships"));
            // Next non-decreasing sequence.
            let Some(p) = (0..len).rev().find(|&p| m[p] + 1 < n) else { break };
            let v = m[p] + 1;
            m[p..].iter_mut().for_each(|x| *x = v);
        }
    }
    out
}

/// Checks closure axioms (i)–(v) for `op` over every subobject of every
/// corpus set, and pullback stability along every corpus morphism.
pub fn verify_qclosure(op: &QClosureOperator, corpus: &[FuzzySet]) -> Result<Option<QClosureViolation>, FuzzyError> {
    let per_ambient: Vec<Result<Option<QClosureViolation>, FuzzyError>> =
        corpus.par_iter().map(|a| verify_on_ambient(op, a, corpus)).collect();
    for r in per_ambient {
        if let Some(v) = r? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn verify_on_ambient(op: &QClosureOperator, a: &FuzzySet, corpus: &[FuzzySet]) -> Result<Option<QClosureViolation>, FuzzyError> {
    let l = a.algebra();
    let subs = a.subobjects();
    let closures = subs.iter().map(|s| fuzzy_closure(op, a, s)).collect::<Result<Vec<_>, _>>()?;
    let fail = |axiom, what: String| Ok(Some(QClosureViolation { axiom, description: format!("in {a}: {what}") }));
    for (s, cl) in subs.iter().zip(&closures) {
        if !s.is_below(cl, l) {
            return fail(ClosureAxiom::Extensive, a.describe_sub(s));
        }
        if fuzzy_closure(op, a, cl)? != *cl {
            return fail(ClosureAxiom::Idempotent, a.describe_sub(s));
        }
        if s.is_strong(a) && !cl.is_strong(a) {
            return fail(ClosureAxiom::Strongness, a.describe_sub(s));
        }
    }
    for (i, s) in subs.iter().enumerate() {
        for (t, ct) in subs.iter().zip(&closures) {
            if s.is_below(t, l) && !closures[i].is_below(ct, l) {
                return fail(ClosureAxiom::Monotone, format!("{} below {}", a.describe_sub(s), a.describe_sub(t)));
            }
        }
    }
    for x in corpus {
        for f in x.morphisms_to(a) {
            for (s, cl) in subs.iter().zip(&closures) {
                let lhs = fuzzy_closure(op, x, &x.pullback(&f, s))?;
                let rhs = x.pullback(&f, cl);
                if lhs != rhs {
                    return fail(
                        ClosureAxiom::PullbackStable,
                        format!(
                            "{} pulled back along {f:?} from {x}: closure then pullback {}, pullback then closure {}",
                            a.describe_sub(s),
                            x.describe_sub(&rhs),
                            x.describe_sub(&lhs)
                        ),
                    );
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzyClassification {
    pub separated: bool,
    pub complete: bool,
    pub sheaf: bool,
    /// Memberships of `B` outside the image of the nucleus.
    pub outside_image: Vec<String>,
    /// Whether the flags come from the factorization oracle.
    pub by_oracle: bool,
}

/// Default ambient corpus carrier bound for the fuzzy factorization oracle.
pub const DEFAULT_FUZZY_AMBIENT: usize = 2;

/// Separated / complete / sheaf for `(B, β)`.
///
/// For a nucleus: always separated, and a sheaf exactly when every
/// membership of `B` is in the image of `φ`. The trivial operator has no
/// closed form here and is decided by [`fuzzy_factorization_check`].
pub fn classify_fuzzy(b: &FuzzySet, op: &QClosureOperator) -> Result<FuzzyClassification, FuzzyError> {
    match op {
        QClosureOperator::NucleusInduced(phi) => {
            let image = phi.image();
            let outside: Vec<String> = b
                .membership()
                .iter()
                .filter(|m| image.binary_search(m).is_err())
                .map(|&m| b.algebra().name(m).to_string())
                .collect();
            let sheaf = outside.is_empty();
            Ok(FuzzyClassification { separated: true, complete: sheaf, sheaf, outside_image: outside, by_oracle: false })
        }
        QClosureOperator::Trivial => {
            let ambients = fuzzy_corpus(b.algebra(), DEFAULT_FUZZY_AMBIENT);
            let r = fuzzy_factorization_check(b, op, &ambients)?;
            Ok(FuzzyClassification {
                separated: r.separated,
                complete: r.complete,
                sheaf: r.separated && r.complete,
                outside_image: Vec::new(),
                by_oracle: true,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyFactorizationReport {
    pub separated: bool,
    pub complete: bool,
    pub dense_monos: usize,
    pub maps_checked: usize,
    /// `(ambient index, subobject, map, extensions capped at 2)`.
    pub non_unique: Option<(usize, FuzzySubobject, Vec<usize>, usize)>,
    pub missing: Option<(usize, FuzzySubobject, Vec<usize>)>,
}

/// For every dense `A' ⊆ A` with `A` in `ambients` and every morphism
/// `A' -> B`, counts extensions to `A`.
pub fn fuzzy_factorization_check(
    b: &FuzzySet,
    op: &QClosureOperator,
    ambients: &[FuzzySet],
) -> Result<FuzzyFactorizationReport, FuzzyError> {
    let mut report = FuzzyFactorizationReport {
        separated: true,
        complete: true,
        dense_monos: 0,
        maps_checked: 0,
        non_unique: None,
        missing: None,
    };
    for (ai, a) in ambients.iter().enumerate() {
        for sub in a.subobjects() {
            if sub == a.full_sub() || !is_dense(op, a, &sub)? {
                continue;
            }
            report.dense_monos += 1;
            let (part, embedding) = a.restrict(&sub);
            for f in part.morphisms_to(b) {
                report.maps_checked += 1;
                let mut fixed = vec![None; a.len()];
                for (i, &e) in embedding.iter().enumerate() {
                    fixed[e] = Some(f[i]);
                }
                // The restricted map must still be a morphism out of `A`.
                let valid = embedding.iter().all(|&e| a.algebra().leq(a.alpha(e), b.alpha(fixed[e].unwrap())));
                let n = if valid { morphisms_from_partial(a, b, &fixed, 2).0 } else { 0 };
                if n >= 2 && report.non_unique.is_none() {
                    report.separated = false;
                    report.non_unique = Some((ai, sub.clone(), f.clone(), n));
                }
                if n == 0 && report.missing.is_none() {
                    report.complete = false;
                    report.missing = Some((ai, sub.clone(), f.clone()));
                }
            }
        }
    }
    Ok(report)
}

/// Reads a nucleus back from a closure operator: `φ(x)` is the closed
/// membership of `({*}, x)` inside `({*}, ⊤)`.
pub fn closure_to_nucleus(op: &QClosureOperator, algebra: &Arc<FiniteHeytingAlgebra>) -> Result<Nucleus, FuzzyError> {
    let point = FuzzySet::anonymous(algebra.clone(), vec![algebra.top()])?;
    if fuzzy_closure(op, &point, &point.empty_sub())? != point.empty_sub() {
        return Err(FuzzyError::NotSingletonPreserving);
    }
    let map = algebra
        .elements()
        .map(|x| {
            let cl = fuzzy_closure(op, &point, &FuzzySubobject { membership: vec![Some(x)] })?;
            Ok(cl.membership[0].expect("carrier is kept"))
        })
        .collect::<Result<Vec<_>, FuzzyError>>()?;
    Ok(Nucleus::from_map_unchecked(algebra.clone(), map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_nuclei, DEFAULT_NUCLEUS_BOUND};

    fn chain5() -> Arc<FiniteHeytingAlgebra> {
        Arc::new(FiniteHeytingAlgebra::chain(5))
    }

    fn half(l: &Arc<FiniteHeytingAlgebra>) -> QClosureOperator {
        QClosureOperator::NucleusInduced(Nucleus::join_with(l.clone(), l.element("1/2").unwrap()))
    }

    #[test]
    fn closure_formula_on_the_five_chain() {
        let l = chain5();
        let el = |s: &str| l.element(s).unwrap();
        let a = FuzzySet::anonymous(l.clone(), vec![el("3/4")]).unwrap();
        let sub = FuzzySubobject { membership: vec![Some(el("1/4"))] };
        assert_eq!(fuzzy_closure(&half(&l), &a, &sub).unwrap().membership, vec![Some(el("1/2"))]);
        let id = QClosureOperator::NucleusInduced(Nucleus::identity(l.clone()));
        assert_eq!(fuzzy_closure(&id, &a, &sub).unwrap(), sub);
        let top = QClosureOperator::NucleusInduced(Nucleus::constant_top(l.clone()));
        assert_eq!(fuzzy_closure(&top, &a, &sub).unwrap(), a.full_sub());
        assert_eq!(fuzzy_closure(&QClosureOperator::Trivial, &a, &a.empty_sub()).unwrap(), a.full_sub());
    }

    #[test]
    fn corpus_counts_multisets() {
        let l = chain5();
        // 1 + 5 + 15 + 35 multisets of size 0..=3 from 5 values.
        assert_eq!(fuzzy_corpus(&l, 3).len(), 56);
    }

    #[test]
    fn nuclei_give_closure_operators() {
        for l in [Arc::new(FiniteHeytingAlgebra::chain(3)), Arc::new(FiniteHeytingAlgebra::diamond())] {
            let corpus = fuzzy_corpus(&l, 3);
            for phi in enumerate_nuclei(&l, DEFAULT_NUCLEUS_BOUND).unwrap() {
                assert_eq!(verify_qclosure(&QClosureOperator::NucleusInduced(phi), &corpus).unwrap(), None);
            }
            assert_eq!(verify_qclosure(&QClosureOperator::Trivial, &corpus).unwrap(), None);
        }
    }

    #[test]
    fn non_nucleus_breaks_pullback_stability() {
        let l = Arc::new(FiniteHeytingAlgebra::diamond());
        let phi = Nucleus::from_map_unchecked(l.clone(), vec![0, 3, 2, 3]);
        let v = verify_qclosure(&QClosureOperator::NucleusInduced(phi), &fuzzy_corpus(&l, 2)).unwrap().unwrap();
        assert_eq!(v.axiom, ClosureAxiom::PullbackStable);
    }

    #[test]
    fn half_sheaves_on_the_five_chain() {
        let l = chain5();
        let op = half(&l);
        let el = |s: &str| l.element(s).unwrap();
        let upper = FuzzySet::anonymous(l.clone(), vec![el("1/2"), el("3/4"), el("1")]).unwrap();
        assert!(classify_fuzzy(&upper, &op).unwrap().sheaf);
        let low = FuzzySet::anonymous(l.clone(), vec![el("1/4"), el("1")]).unwrap();
        let c = classify_fuzzy(&low, &op).unwrap();
        assert!(c.separated && !c.sheaf);
        assert_eq!(c.outside_image, ["1/4"]);
    }

    #[test]
    fn nucleus_classification_matches_oracle() {
        for l in [Arc::new(FiniteHeytingAlgebra::chain(3)), Arc::new(FiniteHeytingAlgebra::diamond())] {
            let corpus = fuzzy_corpus(&l, 3);
            let ambients = fuzzy_corpus(&l, 2);
            for phi in enumerate_nuclei(&l, DEFAULT_NUCLEUS_BOUND).unwrap() {
                let op = QClosureOperator::NucleusInduced(phi);
                for b in &corpus {
                    let c = classify_fuzzy(b, &op).unwrap();
                    let r = fuzzy_factorization_check(b, &op, &ambients).unwrap();
                    assert_eq!((c.separated, c.sheaf), (r.separated, r.separated && r.complete), "{b} {}", op.name());
                }
            }
        }
    }

    #[test]
    fn trivial_operator_sheaves_by_oracle() {
        let l = Arc::new(FiniteHeytingAlgebra::chain(3));
        let op = QClosureOperator::Trivial;
        // Frozen oracle results: (memberships, separated, sheaf).
        let cases: [(&[usize], bool, bool); 6] = [
            (&[], true, false),
            (&[0], true, false),
            (&[1], true, false),
            (&[2], true, true),
            (&[2, 2], false, false),
            (&[0, 2], false, false),
        ];
        for (m, sep, sheaf) in cases {
            let b = FuzzySet::anonymous(l.clone(), m.to_vec()).unwrap();
            let c = classify_fuzzy(&b, &op).unwrap();
            assert!(c.by_oracle);
            assert_eq!((c.separated, c.sheaf), (sep, sheaf), "{b}");
        }
    }

    #[test]
    fn nuclei_round_trip() {
        for l in [Arc::new(FiniteHeytingAlgebra::chain(3)), chain5(), Arc::new(FiniteHeytingAlgebra::diamond())] {
            let corpus = fuzzy_corpus(&l, 2);
            for phi in enumerate_nuclei(&l, DEFAULT_NUCLEUS_BOUND).unwrap() {
                let op = QClosureOperator::NucleusInduced(phi.clone());
                let back = closure_to_nucleus(&op, &l).unwrap();
                assert_eq!(back, phi);
                let op2 = QClosureOperator::NucleusInduced(back);
                for a in &corpus {
                    for s in a.subobjects() {
                        assert_eq!(fuzzy_closure(&op, a, &s).unwrap(), fuzzy_closure(&op2, a, &s).unwrap());
                    }
                }
            }
        }
        assert_eq!(closure_to_nucleus(&QClosureOperator::Trivial, &chain5()), Err(FuzzyError::NotSingletonPreserving));
    }

    #[test]
    fn closure_is_idempotent_pointwise() {
        let l = chain5();
        for phi in enumerate_nuclei(&l, DEFAULT_NUCLEUS_BOUND).unwrap() {
            for a in l.elements() {
                for a0 in l.elements().filter(|&x| l.leq(x, a)) {
                    let once = l.meet(phi.apply(a0), a);
                    assert_eq!(l.meet(phi.apply(once), a), once);
                }
            }
        }
    }

    #[test]
    fn input_errors() {
        let l = chain5();
        assert!(matches!(FuzzySet::anonymous(l.clone(), vec![7]), Err(FuzzyError::BadMembership { .. })));
        let a = FuzzySet::anonymous(l.clone(), vec![1]).unwrap();
        let too_big = FuzzySubobject { membership: vec![Some(3)] };
        assert!(matches!(fuzzy_closure(&half(&l), &a, &too_big), Err(FuzzyError::NotBelow { .. })));
        let b = FuzzySet::anonymous(l, vec![0]).unwrap();
        assert!(a.check_morphism(&b, &[0]).is_err());
    }
}
