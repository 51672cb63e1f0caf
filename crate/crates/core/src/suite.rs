//! Verification suites that recheck the main structural results against
//! their oracles. Each check carries the statement it instantiates.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::closure::{
    check_closure_axioms, classify, classify_vs_oracle, closure_recursive, closure_via_chi, is_dense_by_levels, k_simple,
    oracle_ambients, ClosureError, DEFAULT_AMBIENT_TOTAL,
};
use crate::corpus::{heyting_corpus, presheaf_corpus, CorpusError, DEFAULT_CORPUS_TOTAL};
use crate::fincat::{CategoryError, CategoryKind};
use crate::fuzzy::{
    classify_fuzzy, closure_to_nucleus, fuzzy_corpus, fuzzy_factorization_check, verify_qclosure, FuzzyError, FuzzySet,
    QClosureOperator,
};
use crate::lattice::{check_axiom, enumerate_nuclei, verify_nucleus, FiniteHeytingAlgebra, LatticeError, Nucleus, NucleusAxiom};
use crate::omega::{OmegaError, OmegaObject};
use crate::presheaf::{MorphismSearch, DEFAULT_CARRIER_BOUND};
use crate::topology::{
    construct_jw, degeneracy_compatible, enumerate_topologies, is_monotone_bits, parse_tag, EnumerationMethod, TopologyError,
    DEFAULT_BRUTE_BUDGET,
};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected counts, closures, criteria, fuzzy or all)")]
    UnknownSuite(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Closures,
    Criteria,
    Fuzzy,
    All,
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counts" => Ok(Suite::Counts),
            "closures" => Ok(Suite::Closures),
            "criteria" => Ok(Suite::Criteria),
            "fuzzy" => Ok(Suite::Fuzzy),
            "all" => Ok(Suite::All),
            _ => Err(SuiteError::UnknownSuite(s.to_string())),
        }
    }
}

/// Size limits for the suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub corpus_total: usize,
    pub ambient_total: usize,
    pub axiom_corpus_total: usize,
    pub fuzzy_carrier: usize,
    pub brute_budget: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            corpus_total: DEFAULT_CORPUS_TOTAL,
            ambient_total: DEFAULT_AMBIENT_TOTAL,
            axiom_corpus_total: 3,
            fuzzy_carrier: 3,
            brute_budget: DEFAULT_BRUTE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.statement)?;
            if !c.detail.is_empty() {
                for line in c.detail.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "some checks failed" })
    }
}

fn check(name: &str, statement: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name: name.into(), statement: statement.into(), passed, detail }
}

fn omega_for(kind: CategoryKind) -> Result<Arc<OmegaObject>, SuiteError> {
    Ok(Arc::new(OmegaObject::new(&kind.build()?)?))
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Counts | Suite::All) {
        checks.extend(counts(config)?);
    }
    if matches!(suite, Suite::Closures | Suite::All) {
        checks.extend(closures(config)?);
    }
    if matches!(suite, Suite::Criteria | Suite::All) {
        checks.extend(criteria(config)?);
    }
    if matches!(suite, Suite::Fuzzy | Suite::All) {
        checks.extend(fuzzy(config)?);
    }
    Ok(SuiteReport { checks })
}

/// Display labels and expected counts for the count check.
pub const COUNT_TARGETS: [(&str, CategoryKind, usize); 6] = [
    ("Set", CategoryKind::SemiSimplex(0), 2),
    ("Graph", CategoryKind::Graph, 4),
    ("ReflGraph", CategoryKind::ReflGraph, 3),
    ("BiColGraph", CategoryKind::BiColGraph, 8),
    ("Semi2", CategoryKind::SemiSimplex(2), 8),
    ("Sset2", CategoryKind::Simplex(2), 4),
];

fn counts(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let mut out = Vec::new();
    let mut summary = Vec::new();
    let mut all_ok = true;
    let mut detail = Vec::new();
    for (label, kind, expected) in COUNT_TARGETS {
        let o = omega_for(kind)?;
        let constrained = enumerate_topologies(&o, EnumerationMethod::Constrained)?;
        let brute = match enumerate_topologies(&o, EnumerationMethod::Brute { budget: config.brute_budget }) {
            Ok(b) => Some(b),
            Err(TopologyError::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let agree = brute.as_ref().map_or(true, |b| *b == constrained);
        let ok = constrained.len() == expected && agree;
        all_ok &= ok;
        summary.push(format!("{label}:{}", constrained.len()));
        let tags: Vec<String> = constrained.iter().map(|j| j.tag().unwrap().to_string()).collect();
        detail.push(format!(
            "{label}: {} [{}], brute {}",
            constrained.len(),
            tags.join(" "),
            match &brute {
                Some(b) if agree => format!("agrees ({})", b.len()),
                Some(b) => format!("DISAGREES ({})", b.len()),
                None => "over budget".into(),
            }
        ));
    }
    out.push(check(
        "topology counts",
        "exactly 2^(n+1) topologies on n-dim semi-simplicial sets; with degeneracies exactly those with w = 0^m 1^(n+1-m); eight on bicolored graphs",
        all_ok,
        format!("{} — {}\n{}", summary.join(" "), if all_ok { "PASS" } else { "FAIL" }, detail.join("\n")),
    ));

    // Degeneracy filter: every semi topology lifts exactly when its tag avoids "10".
    let mut lines = Vec::new();
    let mut ok = true;
    for (semi, full) in [(CategoryKind::Graph, CategoryKind::ReflGraph), (CategoryKind::SemiSimplex(2), CategoryKind::Simplex(2))] {
        let (os, of) = (omega_for(semi)?, omega_for(full)?);
        for j in enumerate_topologies(&os, EnumerationMethod::Constrained)? {
            let w = j.tag().unwrap().to_string();
            let lifts = degeneracy_compatible(&j, &of).is_ok();
            ok &= lifts == is_monotone_bits(&w);
            lines.push(format!("{semi} {w}: {}", if lifts { "compatible" } else { "rejected" }));
        }
    }
    out.push(check(
        "degeneracy filter",
        "a face-only topology j^w is natural with every degeneracy exactly when w has no 10 substring",
        ok,
        lines.join("\n"),
    ));
    Ok(out)
}

fn closures(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let mut out = Vec::new();
    let mut ok = true;
    let mut lines = Vec::new();
    for (label, kind, _) in COUNT_TARGETS {
        let o = omega_for(kind)?;
        let c = o.category().clone();
        let corpus = presheaf_corpus(&c, config.corpus_total)?;
        let mut pairs = 0usize;
        let mut bad = 0usize;
        for j in enumerate_topologies(&o, EnumerationMethod::Constrained)? {
            let bits = parse_tag(&c, &j.tag().unwrap().to_string())?.1;
            for p in &corpus {
                for s in p.enumerate_subpresheaves(DEFAULT_CARRIER_BOUND).map_err(ClosureError::from)? {
                    pairs += 1;
                    let chi = closure_via_chi(&j, p, &s)?;
                    let rec = closure_recursive(&bits, p, &s)?;
                    if chi != rec || chi.is_everything(p) != is_dense_by_levels(&bits, p, &s)? {
                        bad += 1;
                    }
                }
            }
        }
        ok &= bad == 0;
        lines.push(format!("{label}: {pairs} (topology, subobject) pairs over {} presheaves, {bad} mismatches", corpus.len()));
    }
    out.push(check(
        "closure equivalence",
        "the closure classified by j∘χ equals the recursive closure of j^w, and density matches the level criterion",
        ok,
        lines.join("\n"),
    ));

    // Double negation on graphs: edges of A with both ends in A'(V).
    let o = omega_for(CategoryKind::Graph)?;
    let c = o.category().clone();
    let j = construct_jw(&o, "01")?;
    let (src, tgt) = (c.face(1, 1)?, c.face(1, 0)?);
    let mut ok = true;
    for p in presheaf_corpus(&c, config.corpus_total)? {
        for s in p.enumerate_subpresheaves(DEFAULT_CARRIER_BOUND).map_err(ClosureError::from)? {
            let cl = closure_via_chi(&j, &p, &s)?.closed;
            ok &= cl.level(&p, 0) == s.level(&p, 0);
            for e in 0..p.size(1) {
                ok &= cl.contains(&p, 1, e) == (s.contains(&p, 0, p.act(src, e)) && s.contains(&p, 0, p.act(tgt, e)));
            }
        }
    }
    out.push(check(
        "double-negation closure on graphs",
        "the closure for j^01 keeps A'(V) and takes every edge of A whose endpoints are in A'(V)",
        ok,
        String::new(),
    ));

    // Closure axioms on small instances, including pullbacks along every morphism.
    let mut ok = true;
    let mut lines = Vec::new();
    for kind in [CategoryKind::Graph, CategoryKind::ReflGraph, CategoryKind::SemiSimplex(2), CategoryKind::BiColGraph] {
        let o = omega_for(kind)?;
        let corpus = presheaf_corpus(o.category(), config.axiom_corpus_total)?;
        for j in enumerate_topologies(&o, EnumerationMethod::Constrained)? {
            for a in &corpus {
                let pullbacks: Vec<_> = corpus
                    .iter()
                    .flat_map(|x| MorphismSearch::new(x, a).all(&vec![None; x.total_size()]).into_iter().map(move |f| (x.clone(), f)))
                    .collect();
                if let Some(v) = check_closure_axioms(&j, a, &pullbacks)? {
                    ok = false;
                    lines.push(format!("{kind} j^{}: {:?} at {}", j.tag().unwrap(), v.axiom, v.description));
                }
            }
        }
    }
    out.push(check(
        "closure axioms",
        "every topology induces an extensive, idempotent, monotone, pullback-stable closure",
        ok,
        lines.join("\n"),
    ));
    Ok(out)
}

fn criteria(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let mut out = Vec::new();
    let mut ok = true;
    let mut lines = Vec::new();
    for kind in [CategoryKind::Graph, CategoryKind::ReflGraph, CategoryKind::SemiSimplex(2)] {
        let o = omega_for(kind)?;
        let c = o.category().clone();
        let bs = presheaf_corpus(&c, config.corpus_total)?;
        let ambients = oracle_ambients(&c, config.ambient_total)?;
        for j in enumerate_topologies(&o, EnumerationMethod::Constrained)? {
            let bad = classify_vs_oracle(&bs, &j, &ambients)?;
            ok &= bad.is_empty();
            lines.push(format!("{kind} j^{}: {} presheaves, {} disagreements", j.tag().unwrap(), bs.len(), bad.len()));
        }
    }
    out.push(check(
        "separated/complete/sheaf criterion",
        "B is j^w-separated (complete) exactly when it is k-simple (k-complete) at every k with w_k = 1",
        ok,
        lines.join("\n"),
    ));

    let c = CategoryKind::Graph.build()?;
    let mut ok = true;
    for b in presheaf_corpus(&c, config.corpus_total)? {
        ok &= classify(&b, &[false, true])?.separated == k_simple(&b, 1);
    }
    out.push(check("simple graphs", "the j^01-separated graphs are the graphs without parallel edges", ok, String::new()));
    Ok(out)
}

fn fuzzy(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let mut out = Vec::new();
    let algebras: Vec<(&str, Arc<FiniteHeytingAlgebra>)> = vec![
        ("2-chain", Arc::new(FiniteHeytingAlgebra::chain(2))),
        ("3-chain", Arc::new(FiniteHeytingAlgebra::chain(3))),
        ("diamond", Arc::new(FiniteHeytingAlgebra::diamond())),
    ];
    let counts: Vec<usize> =
        algebras.iter().map(|(_, l)| enumerate_nuclei(l, crate::lattice::DEFAULT_NUCLEUS_BOUND).map(|n| n.len())).collect::<Result<_, _>>()?;
    out.push(check(
        "nucleus counts",
        "nuclei on the 2-chain, 3-chain and four-element Boolean algebra (exhaustive)",
        counts == [2, 4, 4],
        format!("found {counts:?}; an n-chain has 2^(n-1) nuclei"),
    ));

    let mut ok = true;
    let mut lines = Vec::new();
    for (name, l) in &algebras {
        let corpus = fuzzy_corpus(l, config.fuzzy_carrier);
        let mut ops: Vec<QClosureOperator> = enumerate_nuclei(l, crate::lattice::DEFAULT_NUCLEUS_BOUND)?
            .into_iter()
            .map(QClosureOperator::NucleusInduced)
            .collect();
        ops.push(QClosureOperator::Trivial);
        for op in &ops {
            if let Some(v) = verify_qclosure(op, &corpus)? {
                ok = false;
                lines.push(format!("{name} {}: {v}", op.name()));
            }
            if let QClosureOperator::NucleusInduced(phi) = op {
                let back = closure_to_nucleus(op, l)?;
                if back != *phi {
                    ok = false;
                    lines.push(format!("{name} {}: round trip gave {:?}", op.name(), back.map()));
                }
                for b in &corpus {
                    let c = classify_fuzzy(b, op)?;
                    let r = fuzzy_factorization_check(b, op, &fuzzy_corpus(l, 2))?;
                    if c.separated != r.separated || c.sheaf != (r.separated && r.complete) {
                        ok = false;
                        lines.push(format!("{name} {}: {b} classified {c:?}, oracle {r:?}", op.name()));
                    }
                }
            }
        }
    }
    out.push(check(
        "fuzzy closures",
        "each nucleus induces a closure satisfying (i)-(v), round-trips through singletons, and its sheaves are those with im β ⊆ im φ",
        ok,
        lines.join("\n"),
    ));

    let l = Arc::new(FiniteHeytingAlgebra::chain(5));
    let op = QClosureOperator::NucleusInduced(Nucleus::join_with(l.clone(), l.element("1/2")?));
    let mut ok = true;
    for b in fuzzy_corpus(&l, config.fuzzy_carrier) {
        let sheaf = classify_fuzzy(&b, &op)?.sheaf;
        let upper = b.membership().iter().all(|&m| ["1/2", "3/4", "1"].contains(&l.name(m)));
        ok &= sheaf == upper;
        let has_quarter = b.membership().iter().any(|&m| l.name(m) == "1/4");
        ok &= !(has_quarter && sheaf);
    }
    let example = FuzzySet::anonymous(l.clone(), vec![l.element("1/2")?, l.element("3/4")?, l.element("1")?])?;
    ok &= classify_fuzzy(&example, &op)?.sheaf;
    out.push(check(
        "x ∨ 1/2 on the 5-chain",
        "fuzzy sets with memberships in {1/2, 3/4, 1} are the sheaves for x ↦ x ∨ 1/2",
        ok,
        String::new(),
    ));

    let mut ok = true;
    let mut lines = Vec::new();
    for (name, l) in heyting_corpus() {
        let nn = l.double_negation_map();
        let closure_like = [NucleusAxiom::E, NucleusAxiom::B, NucleusAxiom::F].iter().all(|&a| check_axiom(&l, &nn, a).is_ok());
        let nucleus = verify_nucleus(&l, &nn).is_ok();
        let de_morgan = l.is_de_morgan();
        ok &= closure_like && (!de_morgan || nucleus);
        lines.push(format!("{name}: De Morgan {de_morgan}, ¬¬ nucleus {nucleus}"));
    }
    out.push(check(
        "double negation",
        "¬¬ is monotone, increasing and idempotent, and a nucleus on every De Morgan algebra",
        ok,
        lines.join("\n"),
    ));
    Ok(out)
}
