//! Finite Heyting algebras and nuclei.
//!
//! Algebras are always built from an order relation. Meet, join, implication
//! and negation tables are derived here and never accepted from callers.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of an element inside a finite order or algebra.
pub type Element = usize;

/// Largest algebra accepted by [`enumerate_nuclei`] unless raised.
pub const DEFAULT_NUCLEUS_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order matrix must be {0}x{0}")]
    Shape(usize),
    #[error("not a Heyting algebra: {0}")]
    NotHeyting(HeytingViolation),
    #[error("algebra has {size} elements, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("not a nucleus: {0}")]
    NotNucleus(NucleusViolation),
}

/// A concrete reason why an order is not a Heyting algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeytingViolation {
    #[error("the order is empty")]
    Empty,
    #[error("{a} is not below itself")]
    NotReflexive { a: Element },
    #[error("{a} and {b} are below each other")]
    NotAntisymmetric { a: Element, b: Element },
    #[error("{a} <= {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: Element, b: Element, c: Element },
    #[error("{a} and {b} have no meet")]
    MissingMeet { a: Element, b: Element },
    #[error("{a} and {b} have no join")]
    MissingJoin { a: Element, b: Element },
    #[error("adjunction fails: {a} and {b} => {c}")]
    Adjunction { a: Element, b: Element, c: Element },
}

/// A finite relation with element names. Not validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl PartialOrder {
    /// Uses the given matrix verbatim, `leq[a][b]` meaning `a <= b`.
    pub fn from_matrix(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = names.len();
        check_names(&names)?;
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Shape(n));
        }
        Ok(PartialOrder { names, leq: leq.into_iter().flatten().collect() })
    }

    /// Reflexive-transitive closure of covering pairs `(lower, upper)`.
    pub fn from_covers(names: Vec<String>, covers: &[(Element, Element)]) -> Result<Self, LatticeError> {
        let n = names.len();
        check_names(&names)?;
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(LatticeError::Shape(n));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok(PartialOrder { names, leq })
    }

    /// Same as [`PartialOrder::from_covers`] with pairs given by name.
    pub fn from_named_covers(names: Vec<String>, covers: &[(String, String)]) -> Result<Self, LatticeError> {
        let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let find = |s: &String| lookup.get(s.as_str()).copied().ok_or_else(|| LatticeError::UnknownElement(s.clone()));
        let pairs = covers.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>, _>>()?;
        Self::from_covers(names, &pairs)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a * self.names.len() + b]
    }
}

fn check_names(names: &[String]) -> Result<(), LatticeError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(LatticeError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Greatest element below both, if it exists. `rank[x]` counts the elements
/// below `x`, so the only candidate is the lower bound of largest rank.
fn glb(p: &PartialOrder, rank: &[usize], a: Element, b: Element) -> Option<Element> {
    let n = p.size();
    let m = (0..n).filter(|&x| p.leq(x, a) && p.leq(x, b)).max_by_key(|&x| rank[x])?;
    (0..n).all(|x| !(p.leq(x, a) && p.leq(x, b)) || p.leq(x, m)).then_some(m)
}

fn lub(p: &PartialOrder, rank: &[usize], a: Element, b: Element) -> Option<Element> {
    let n = p.size();
    let m = (0..n).filter(|&x| p.leq(a, x) && p.leq(b, x)).min_by_key(|&x| rank[x])?;
    (0..n).all(|x| !(p.leq(a, x) && p.leq(b, x)) || p.leq(m, x)).then_some(m)
}

/// Checks every order, lattice and adjunction law, returning a witness.
pub fn verify_heyting(p: &PartialOrder) -> Result<(), HeytingViolation> {
    build_tables(p).map(|_| ())
}

struct Tables {
    meet: Vec<Element>,
    join: Vec<Element>,
    imp: Vec<Element>,
    bottom: Element,
    top: Element,
}

fn build_tables(p: &PartialOrder) -> Result<Tables, HeytingViolation> {
    let n = p.size();
    if n == 0 {
        return Err(HeytingViolation::Empty);
    }
    for a in 0..n {
        if !p.leq(a, a) {
            return Err(HeytingViolation::NotReflexive { a });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && p.leq(a, b) && p.leq(b, a) {
                return Err(HeytingViolation::NotAntisymmetric { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !p.leq(a, b) {
                continue;
            }
            for c in 0..n {
                if p.leq(b, c) && !p.leq(a, c) {
                    return Err(HeytingViolation::NotTransitive { a, b, c });
                }
            }
        }
    }
    let rank: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| p.leq(y, x)).count()).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = glb(p, &rank, a, b).ok_or(HeytingViolation::MissingMeet { a, b })?;
            join[a * n + b] = lub(p, &rank, a, b).ok_or(HeytingViolation::MissingJoin { a, b })?;
        }
    }
    let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
    let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
    // The candidate b => c is the join of everything whose meet with b is below c.
    let mut imp = vec![0; n * n];
    for b in 0..n {
        for c in 0..n {
            imp[b * n + c] = (0..n).filter(|&x| p.leq(meet[x * n + b], c)).fold(bottom, |acc, x| join[acc * n + x]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if p.leq(meet[a * n + b], c) != p.leq(a, imp[b * n + c]) {
                    return Err(HeytingViolation::Adjunction { a, b, c });
                }
            }
        }
    }
    Ok(Tables { meet, join, imp, bottom, top })
}

/// A finite Heyting algebra with all operation tables precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHeytingAlgebra {
    order: PartialOrder,
    meet: Vec<Element>,
    join: Vec<Element>,
    imp: Vec<Element>,
    bottom: Element,
    top: Element,
}

impl FiniteHeytingAlgebra {
    pub fn new(order: PartialOrder) -> Result<Self, LatticeError> {
        let t = build_tables(&order).map_err(LatticeError::NotHeyting)?;
        Ok(FiniteHeytingAlgebra { order, meet: t.meet, join: t.join, imp: t.imp, bottom: t.bottom, top: t.top })
    }

    /// The chain `0 < 1/(n-1) < … < 1`, named by reduced fractions.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one element");
        let names = (0..n).map(|i| fraction_name(i, n.saturating_sub(1))).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(PartialOrder::from_covers(names, &covers).unwrap()).unwrap()
    }

    /// The Boolean algebra of subsets of `atoms` atoms. Element `m` is the
    /// subset with bitmask `m`.
    pub fn boolean(atoms: usize) -> Self {
        let n = 1usize << atoms;
        let letters: Vec<char> = ('a'..='z').collect();
        let names = (0..n)
            .map(|m| {
                if m == 0 {
                    "0".to_string()
                } else {
                    (0..atoms).filter(|i| m >> i & 1 == 1).map(|i| letters[i]).collect()
                }
            })
            .collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        Self::new(PartialOrder::from_matrix(names, leq).unwrap()).unwrap()
    }

    /// The four-element Boolean algebra with elements named `⊥, a, b, ⊤`.
    pub fn diamond() -> Self {
        let names = ["⊥", "a", "b", "⊤"].map(String::from).to_vec();
        Self::new(PartialOrder::from_covers(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()).unwrap()
    }

    /// Down-sets of a finite poset ordered by inclusion.
    ///
    /// `below[i][j]` says `i <= j` in the poset. Every finite distributive
    /// lattice arises this way.
    pub fn downsets(below: &[Vec<bool>]) -> Self {
        let n = below.len();
        let sets: Vec<u32> = (0u32..1 << n)
            .filter(|&m| (0..n).all(|j| m >> j & 1 == 0 || (0..n).all(|i| !below[i][j] || m >> i & 1 == 1)))
            .collect();
        let names = sets
            .iter()
            .map(|&m| {
                let items: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let leq = sets.iter().map(|&a| sets.iter().map(|&b| a & !b == 0).collect()).collect();
        Self::new(PartialOrder::from_matrix(names, leq).unwrap()).unwrap()
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size()
    }

    pub fn name(&self, a: Element) -> &str {
        &self.order.names[a]
    }

    pub fn element(&self, name: &str) -> Result<Element, LatticeError> {
        self.order
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.order.leq(a, b)
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        self.meet[a * self.size() + b]
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        self.join[a * self.size() + b]
    }

    pub fn implies(&self, a: Element, b: Element) -> Element {
        self.imp[a * self.size() + b]
    }

    pub fn neg(&self, a: Element) -> Element {
        self.implies(a, self.bottom)
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn top(&self) -> Element {
        self.top
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram, sorted.
    pub fn hasse_edges(&self) -> Vec<(Element, Element)> {
        let n = self.size();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq(a, b)
                    && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// A pair breaking `¬(a ∧ b) = ¬a ∨ ¬b` or `¬(a ∨ b) = ¬a ∧ ¬b`.
    pub fn de_morgan_witness(&self) -> Option<(Element, Element)> {
        for a in self.elements() {
            for b in self.elements() {
                let meet_law = self.neg(self.meet(a, b)) == self.join(self.neg(a), self.neg(b));
                let join_law = self.neg(self.join(a, b)) == self.meet(self.neg(a), self.neg(b));
                if !meet_law || !join_law {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_de_morgan(&self) -> bool {
        self.de_morgan_witness().is_none()
    }

    /// The map `a ↦ ¬¬a`.
    pub fn double_negation_map(&self) -> Vec<Element> {
        self.elements().map(|a| self.neg(self.neg(a))).collect()
    }
}

fn fraction_name(i: usize, d: usize) -> String {
    if i == 0 {
        return "0".into();
    }
    if i == d {
        return "1".into();
    }
    let g = gcd(i, d);
    format!("{}/{}", i / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The axioms of a nucleus and the consequences derived from them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NucleusAxiom {
    /// `φ(a ∧ b) = φ(a) ∧ φ(b)`
    A,
    /// `a <= φ(a)`
    B,
    /// `φ(φ(a)) <= φ(a)`
    C,
    /// `φ(⊤) = ⊤`
    D,
    /// monotone
    E,
    /// `φ(φ(a)) = φ(a)`
    F,
    /// `φ(a) ∧ b <= φ(a ∧ b)`
    G,
}

impl fmt::Display for NucleusAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NucleusViolation {
    #[error("map has {got} entries for an algebra of size {expected}")]
    Shape { got: usize, expected: usize },
    #[error("map value {0} is not an element")]
    OutOfRange(Element),
    #[error("axiom ({axiom}) fails at {witness:?}")]
    Axiom { axiom: NucleusAxiom, witness: Vec<Element> },
}

fn check_shape(l: &FiniteHeytingAlgebra, map: &[Element]) -> Result<(), NucleusViolation> {
    if map.len() != l.size() {
        return Err(NucleusViolation::Shape { got: map.len(), expected: l.size() });
    }
    if let Some(&v) = map.iter().find(|&&v| v >= l.size()) {
        return Err(NucleusViolation::OutOfRange(v));
    }
    Ok(())
}

fn fail(axiom: NucleusAxiom, witness: Vec<Element>) -> Result<(), NucleusViolation> {
    Err(NucleusViolation::Axiom { axiom, witness })
}

/// Checks one axiom of a nucleus on every element or pair.
pub fn check_axiom(l: &FiniteHeytingAlgebra, map: &[Element], axiom: NucleusAxiom) -> Result<(), NucleusViolation> {
    check_shape(l, map)?;
    let n = l.size();
    use NucleusAxiom::*;
    match axiom {
        A | E | G => {
            for a in 0..n {
                for b in 0..n {
                    let ok = match axiom {
                        A => map[l.meet(a, b)] == l.meet(map[a], map[b]),
                        E => !l.leq(a, b) || l.leq(map[a], map[b]),
                        _ => l.leq(l.meet(map[a], b), map[l.meet(a, b)]),
                    };
                    if !ok {
                        return fail(axiom, vec![a, b]);
                    }
                }
            }
        }
        B | C | F => {
            for a in 0..n {
                let ok = match axiom {
                    B => l.leq(a, map[a]),
                    C => l.leq(map[map[a]], map[a]),
                    _ => map[map[a]] == map[a],
                };
                if !ok {
                    return fail(axiom, vec![a]);
                }
            }
        }
        D => {
            if map[l.top()] != l.top() {
                return fail(axiom, vec![l.top()]);
            }
        }
    }
    Ok(())
}

/// Checks axioms (A), (B), (C) in that order.
pub fn verify_nucleus(l: &FiniteHeytingAlgebra, map: &[Element]) -> Result<(), NucleusViolation> {
    for axiom in [NucleusAxiom::A, NucleusAxiom::B, NucleusAxiom::C] {
        check_axiom(l, map, axiom)?;
    }
    Ok(())
}

/// Checks the derived axioms (D) to (G).
pub fn check_derived_axioms(l: &FiniteHeytingAlgebra, map: &[Element]) -> Result<(), NucleusViolation> {
    for axiom in [NucleusAxiom::D, NucleusAxiom::E, NucleusAxiom::F, NucleusAxiom::G] {
        check_axiom(l, map, axiom)?;
    }
    Ok(())
}

/// Checks that a map is monotone, increasing and idempotent.
pub fn check_closure_laws(l: &FiniteHeytingAlgebra, map: &[Element]) -> Result<(), NucleusViolation> {
    for axiom in [NucleusAxiom::E, NucleusAxiom::B, NucleusAxiom::F] {
        check_axiom(l, map, axiom)?;
    }
    Ok(())
}

/// A validated nucleus on a shared algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    algebra: Arc<FiniteHeytingAlgebra>,
    map: Vec<Element>,
}

impl Nucleus {
    pub fn new(algebra: Arc<FiniteHeytingAlgebra>, map: Vec<Element>) -> Result<Self, LatticeError> {
        verify_nucleus(&algebra, &map).map_err(LatticeError::NotNucleus)?;
        Ok(Nucleus { algebra, map })
    }

    /// Wraps a map without checking the axioms. Used to build counterexamples.
    pub fn from_map_unchecked(algebra: Arc<FiniteHeytingAlgebra>, map: Vec<Element>) -> Self {
        assert_eq!(map.len(), algebra.size());
        Nucleus { algebra, map }
    }

    pub fn identity(algebra: Arc<FiniteHeytingAlgebra>) -> Self {
        let map = algebra.elements().collect();
        Nucleus { algebra, map }
    }

    pub fn constant_top(algebra: Arc<FiniteHeytingAlgebra>) -> Self {
        let map = vec![algebra.top(); algebra.size()];
        Nucleus { algebra, map }
    }

    /// `x ↦ x ∨ c`, a nucleus on every Heyting algebra.
    pub fn join_with(algebra: Arc<FiniteHeytingAlgebra>, c: Element) -> Self {
        let map = algebra.elements().map(|x| algebra.join(x, c)).collect();
        Nucleus { algebra, map }
    }

    pub fn algebra(&self) -> &Arc<FiniteHeytingAlgebra> {
        &self.algebra
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn apply(&self, a: Element) -> Element {
        self.map[a]
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<Element> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

/// All nuclei on `l`, searching only monotone increasing maps fixing `⊤`.
pub fn enumerate_nuclei(l: &Arc<FiniteHeytingAlgebra>, bound: usize) -> Result<Vec<Nucleus>, LatticeError> {
    let n = l.size();
    if n > bound {
        return Err(LatticeError::TooLarge { size: n, bound });
    }
    // Assign elements along a linear extension so monotonicity checks only
    // look at already-assigned elements.
    let mut order: Vec<Element> = l.elements().collect();
    order.sort_by_key(|&a| l.elements().filter(|&b| l.leq(b, a)).count());
    let mut map = vec![usize::MAX; n];
    let mut out = Vec::new();
    search_nuclei(l, &order, 0, &mut map, &mut out);
    out.sort_by(|a, b| a.map.cmp(&b.map));
    Ok(out)
}

fn search_nuclei(
    l: &Arc<FiniteHeytingAlgebra>,
    order: &[Element],
    pos: usize,
    map: &mut Vec<Element>,
    out: &mut Vec<Nucleus>,
) {
    if pos == order.len() {
        if verify_nucleus(l, map).is_ok() {
            out.push(Nucleus { algebra: l.clone(), map: map.clone() });
        }
        return;
    }
    let a = order[pos];
    let candidates: Vec<Element> =
        if a == l.top() { vec![l.top()] } else { l.elements().filter(|&b| l.leq(a, b)).collect() };
    for b in candidates {
        let monotone = order[..pos].iter().all(|&x| {
            (!l.leq(x, a) || l.leq(map[x], b)) && (!l.leq(a, x) || l.leq(b, map[x]))
        });
        if monotone {
            map[a] = b;
            search_nuclei(l, order, pos + 1, map, out);
        }
    }
    map[a] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// Every function L -> L, filtered by the axioms directly.
    fn brute_nuclei(l: &FiniteHeytingAlgebra) -> Vec<Vec<Element>> {
        let n = l.size();
        let mut out = Vec::new();
        for code in 0..n.pow(n as u32) {
            let map: Vec<Element> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
            if verify_nucleus(l, &map).is_ok() {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    fn pentagon() -> PartialOrder {
        // 0 < a < c < 1 and 0 < b < 1
        PartialOrder::from_covers(names(&["0", "a", "b", "c", "1"]), &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
            .unwrap()
    }

    #[test]
    fn small_algebras_are_heyting() {
        assert!(verify_heyting(FiniteHeytingAlgebra::chain(2).order()).is_ok());
        let d = FiniteHeytingAlgebra::diamond();
        assert!(verify_heyting(d.order()).is_ok());
        assert_eq!(d.neg(1), 2);
        assert_eq!(d.implies(1, 2), 2);
    }

    #[test]
    fn pentagon_fails_adjunction() {
        assert!(matches!(verify_heyting(&pentagon()), Err(HeytingViolation::Adjunction { .. })));
    }

    #[test]
    fn non_lattices_report_the_pair() {
        // Two incomparable maximal elements.
        let p = PartialOrder::from_covers(names(&["0", "x", "y"]), &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(verify_heyting(&p), Err(HeytingViolation::MissingJoin { a: 1, b: 2 }));
        let p = PartialOrder::from_covers(names(&["x", "y", "1"]), &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(verify_heyting(&p), Err(HeytingViolation::MissingMeet { a: 0, b: 1 }));
        let cyc = PartialOrder::from_covers(names(&["x", "y"]), &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(verify_heyting(&cyc), Err(HeytingViolation::NotAntisymmetric { a: 0, b: 1 }));
        assert!(PartialOrder::from_covers(names(&["x", "x"]), &[]).is_err());
    }

    #[test]
    fn chain_names() {
        let c = FiniteHeytingAlgebra::chain(5);
        let got: Vec<&str> = c.elements().map(|a| c.name(a)).collect();
        assert_eq!(got, ["0", "1/4", "1/2", "3/4", "1"]);
    }

    #[test]
    fn nucleus_examples() {
        let c3 = FiniteHeytingAlgebra::chain(3);
        assert!(verify_nucleus(&c3, &[0, 1, 2]).is_ok());
        assert!(verify_nucleus(&c3, &[2, 2, 2]).is_ok());
        assert_eq!(
            verify_nucleus(&c3, &[2, 1, 2]),
            Err(NucleusViolation::Axiom { axiom: NucleusAxiom::A, witness: vec![0, 1] })
        );
    }

    #[test]
    fn nucleus_counts_match_brute_force() {
        let cases = [
            (FiniteHeytingAlgebra::chain(2), 2),
            // id, x∨½, ¬¬ and ⊤: every subset containing ⊤ is the fixed set of a nucleus on a chain.
            (FiniteHeytingAlgebra::chain(3), 4),
            (FiniteHeytingAlgebra::diamond(), 4),
        ];
        for (l, expected) in cases {
            let l = Arc::new(l);
            let found: Vec<Vec<Element>> =
                enumerate_nuclei(&l, DEFAULT_NUCLEUS_BOUND).unwrap().iter().map(|n| n.map().to_vec()).collect();
            assert_eq!(found.len(), expected);
            assert_eq!(found, brute_nuclei(&l));
        }
        let c3 = Arc::new(FiniteHeytingAlgebra::chain(3));
        let maps: Vec<_> = enumerate_nuclei(&c3, 8).unwrap().into_iter().map(|n| n.map().to_vec()).collect();
        assert!(maps.contains(&Nucleus::join_with(c3.clone(), 1).map().to_vec()));
        assert!(maps.contains(&c3.double_negation_map()));
        let d = Arc::new(FiniteHeytingAlgebra::diamond());
        let maps: Vec<_> = enumerate_nuclei(&d, 8).unwrap().into_iter().map(|n| n.map().to_vec()).collect();
        for c in 0..4 {
            assert!(maps.contains(&Nucleus::join_with(d.clone(), c).map().to_vec()));
        }
    }

    #[test]
    fn enumeration_respects_bound() {
        let l = Arc::new(FiniteHeytingAlgebra::chain(9));
        assert_eq!(enumerate_nuclei(&l, 8).unwrap_err(), LatticeError::TooLarge { size: 9, bound: 8 });
    }

    #[test]
    fn double_negation_on_chain() {
        let c3 = FiniteHeytingAlgebra::chain(3);
        assert_eq!(c3.double_negation_map(), vec![0, 2, 2]);
        assert!(c3.is_de_morgan());
        assert!(verify_nucleus(&c3, &c3.double_negation_map()).is_ok());
        let b = FiniteHeytingAlgebra::boolean(3);
        assert_eq!(b.double_negation_map(), b.elements().collect::<Vec<_>>());
    }

    #[test]
    fn hasse_edges_of_diamond() {
        assert_eq!(FiniteHeytingAlgebra::diamond().hasse_edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    fn arb_algebra() -> impl Strategy<Value = FiniteHeytingAlgebra> {
        prop_oneof![
            (1usize..7).prop_map(FiniteHeytingAlgebra::chain),
            (0usize..4).prop_map(FiniteHeytingAlgebra::boolean),
            // Down-sets of a random poset given by a strict upper-triangular relation.
            (1usize..5, proptest::collection::vec(any::<bool>(), 10)).prop_map(|(n, bits)| {
                let mut below = vec![vec![false; n]; n];
                let mut k = 0;
                for i in 0..n {
                    below[i][i] = true;
                    for j in i + 1..n {
                        below[i][j] = bits[k];
                        k += 1;
                    }
                }
                for m in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            if below[i][m] && below[m][j] {
                                below[i][j] = true;
                            }
                        }
                    }
                }
                FiniteHeytingAlgebra::downsets(&below)
            }),
        ]
    }

    proptest! {
        #[test]
        fn lattice_laws(l in arb_algebra()) {
            for a in l.elements() {
                prop_assert_eq!(l.meet(a, a), a);
                prop_assert_eq!(l.join(a, l.bottom()), a);
                prop_assert_eq!(l.meet(a, l.top()), a);
                prop_assert_eq!(l.meet(a, l.neg(a)), l.bottom());
                for b in l.elements() {
                    prop_assert_eq!(l.meet(a, b), l.meet(b, a));
                    prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                    for c in l.elements() {
                        prop_assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                        prop_assert_eq!(l.leq(l.meet(a, b), c), l.leq(a, l.implies(b, c)));
                    }
                }
            }
        }

        #[test]
        fn enumerated_nuclei_satisfy_derived_axioms(l in arb_algebra()) {
            prop_assume!(l.size() <= DEFAULT_NUCLEUS_BOUND);
            let l = Arc::new(l);
            for n in enumerate_nuclei(&l, DEFAULT_NUCLEUS_BOUND).unwrap() {
                prop_assert!(check_derived_axioms(&l, n.map()).is_ok());
            }
        }

        #[test]
        fn double_negation_is_a_closure(l in arb_algebra()) {
            let nn = l.double_negation_map();
            prop_assert!(check_closure_laws(&l, &nn).is_ok());
            if l.is_de_morgan() {
                prop_assert!(verify_nucleus(&l, &nn).is_ok());
            }
        }
    }
}
