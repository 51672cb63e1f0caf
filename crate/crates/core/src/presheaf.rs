//! Finite presheaves, subpresheaves and natural transformations.
//!
//! A presheaf stores one action table per morphism of its index category.
//! Elements are addressed either locally as `(object, index)` or globally by
//! a single index that runs through the objects in id order. Subpresheaves
//! are bitsets over global indices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::fincat::{CategoryError, CategoryKind, FiniteIndexCategory, GeneratorRole, MorphismId, ObjectId};

/// Largest total carrier accepted by [`FinitePresheaf::enumerate_subpresheaves`].
pub const DEFAULT_CARRIER_BOUND: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("expected carriers for {expected} objects, got {got}")]
    ObjectCount { expected: usize, got: usize },
    #[error("action of `{generator}` has {got} entries, expected {expected}")]
    ActionShape { generator: String, expected: usize, got: usize },
    #[error("action of `{generator}` sends element {element} to {value}, which does not exist")]
    ActionValue { generator: String, element: usize, value: usize },
    #[error("no action given for generator `{0}`")]
    MissingAction(String),
    #[error("functoriality fails for morphism {morphism} at element `{element}`")]
    NotFunctorial { morphism: String, element: String },
    #[error("object `{object}` has no element `{name}`")]
    UnknownElement { object: String, name: String },
    #[error("object `{object}` lists element `{name}` twice")]
    DuplicateElement { object: String, name: String },
    #[error("subset is not closed: `{element}` maps to `{image}` along `{generator}`")]
    NotClosed { element: String, generator: String, image: String },
    #[error("naturality fails for generator `{generator}` at element `{element}`")]
    NotNatural { generator: String, element: String },
    #[error("total carrier {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("presheaves live over different categories")]
    CategoryMismatch,
}

/// A presheaf on a finite index category with finite carriers.
#[derive(Clone, Debug)]
pub struct FinitePresheaf {
    category: Arc<FiniteIndexCategory>,
    names: Vec<Vec<String>>,
    offsets: Vec<usize>,
    /// For `u: a -> b`, a table from local indices of `F(b)` to those of `F(a)`.
    actions: Vec<Vec<usize>>,
}

/// Default element names: `v0, e0, t0, …` by grade, `f0` for the second edge sort.
pub fn default_element_name(category: &FiniteIndexCategory, object: ObjectId, index: usize) -> String {
    let prefix = match (category.kind(), object) {
        (CategoryKind::BiColGraph, 2) => "f",
        _ => ["v", "e", "t", "q", "p", "x"][category.object(object).grade.min(5)],
    };
    format!("{prefix}{index}")
}

impl FinitePresheaf {
    /// Builds a presheaf from one action table per generator and checks
    /// functoriality on every composable pair.
    pub fn from_generator_actions(
        category: Arc<FiniteIndexCategory>,
        names: Vec<Vec<String>>,
        generator_actions: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        let p = Self::assemble(category, names, generator_actions)?;
        p.check_functorial()?;
        Ok(p)
    }

    /// Same as [`FinitePresheaf::from_generator_actions`] with anonymous elements.
    pub fn from_sizes(
        category: Arc<FiniteIndexCategory>,
        sizes: &[usize],
        generator_actions: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        let names = sizes
            .iter()
            .enumerate()
            .map(|(o, &n)| (0..n).map(|i| default_element_name(&category, o, i)).collect())
            .collect();
        Self::from_generator_actions(category, names, generator_actions)
    }

    /// Extends generator tables along the category's generator words without
    /// checking functoriality.
    pub(crate) fn assemble(
        category: Arc<FiniteIndexCategory>,
        names: Vec<Vec<String>>,
        generator_actions: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        let objects = category.object_count();
        if names.len() != objects {
            return Err(PresheafError::ObjectCount { expected: objects, got: names.len() });
        }
        for (o, level) in names.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for n in level {
                if !seen.insert(n) {
                    return Err(PresheafError::DuplicateElement {
                        object: category.object(o).name.clone(),
                        name: n.clone(),
                    });
                }
            }
        }
        if generator_actions.len() != category.generators().len() {
            let missing = &category.generators()[generator_actions.len().min(category.generators().len())];
            return Err(PresheafError::MissingAction(missing.name.clone()));
        }
        for (g, table) in category.generators().iter().zip(&generator_actions) {
            let m = category.morphism(g.morphism);
            let expected = names[m.target].len();
            if table.len() != expected {
                return Err(PresheafError::ActionShape { generator: g.name.clone(), expected, got: table.len() });
            }
            if let Some((element, &value)) = table.iter().enumerate().find(|(_, &v)| v >= names[m.source].len()) {
                return Err(PresheafError::ActionValue { generator: g.name.clone(), element, value });
            }
        }
        let mut offsets = vec![0];
        for level in &names {
            offsets.push(offsets.last().unwrap() + level.len());
        }
        let actions = (0..category.morphism_count())
            .map(|f| {
                let target = category.morphism(f).target;
                (0..names[target].len())
                    .map(|x| category.word(f).iter().fold(x, |acc, &g| generator_actions[g][acc]))
                    .collect()
            })
            .collect();
        Ok(FinitePresheaf { category, names, offsets, actions })
    }

    fn check_functorial(&self) -> Result<(), PresheafError> {
        let c = &self.category;
        for f in 0..c.morphism_count() {
            for g in 0..c.morphism_count() {
                // F(g ∘ f) = F(f) ∘ F(g)
                let Some(gf) = c.compose(g, f) else { continue };
                for x in 0..self.size(c.morphism(g).target) {
                    if self.actions[gf][x] != self.actions[f][self.actions[g][x]] {
                        return Err(PresheafError::NotFunctorial {
                            morphism: c.morphism_label(gf),
                            element: self.names[c.morphism(g).target][x].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The representable presheaf `y(k) = hom(-, k)`. Elements at `l` are the
    /// morphisms `l -> k` in hom order and `y(k)(u)` is precomposition with `u`.
    pub fn yoneda(category: &Arc<FiniteIndexCategory>, k: ObjectId) -> Self {
        let c = category;
        let names = (0..c.object_count())
            .map(|l| c.hom(l, k).iter().map(|&f| c.morphism_label(f)).collect())
            .collect();
        let position: HashMap<MorphismId, usize> =
            (0..c.object_count()).flat_map(|l| c.hom(l, k).iter().enumerate().map(|(i, &f)| (f, i))).collect();
        let actions = (0..c.morphism_count())
            .map(|u| {
                let b = c.morphism(u).target;
                c.hom(b, k).iter().map(|&g| position[&c.compose(g, u).unwrap()]).collect()
            })
            .collect();
        let mut offsets = vec![0];
        for l in 0..c.object_count() {
            offsets.push(offsets.last().unwrap() + c.hom(l, k).len());
        }
        FinitePresheaf { category: category.clone(), names, offsets, actions }
    }

    pub fn category(&self) -> &Arc<FiniteIndexCategory> {
        &self.category
    }

    pub fn size(&self, object: ObjectId) -> usize {
        self.names[object].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn global(&self, object: ObjectId, index: usize) -> usize {
        self.offsets[object] + index
    }

    /// Object and local index of a global element.
    pub fn locate(&self, global: usize) -> (ObjectId, usize) {
        let object = self.offsets.partition_point(|&o| o <= global) - 1;
        (object, global - self.offsets[object])
    }

    pub fn names(&self, object: ObjectId) -> &[String] {
        &self.names[object]
    }

    pub fn element_name(&self, object: ObjectId, index: usize) -> &str {
        &self.names[object][index]
    }

    pub fn global_name(&self, global: usize) -> &str {
        let (o, i) = self.locate(global);
        &self.names[o][i]
    }

    pub fn element_by_name(&self, object: ObjectId, name: &str) -> Result<usize, PresheafError> {
        self.names[object].iter().position(|n| n == name).ok_or_else(|| PresheafError::UnknownElement {
            object: self.category.object(object).name.clone(),
            name: name.to_string(),
        })
    }

    /// `F(u)(x)` for `u: a -> b` and `x ∈ F(b)`, as a local index of `F(a)`.
    pub fn act(&self, u: MorphismId, x: usize) -> usize {
        self.actions[u][x]
    }

    /// Action table of a generator.
    pub fn generator_action(&self, generator: usize) -> &[usize] {
        &self.actions[self.category.generator(generator).morphism]
    }

    /// Action tables of all generators.
    pub fn generator_actions(&self) -> Vec<Vec<usize>> {
        (0..self.category.generators().len()).map(|g| self.generator_action(g).to_vec()).collect()
    }

    /// All global elements `F(u)(x)` reachable from `x`, including `x`.
    pub fn reach(&self, global: usize) -> FixedBitSet {
        let (b, x) = self.locate(global);
        let mut out = FixedBitSet::with_capacity(self.total_size());
        for a in 0..self.category.object_count() {
            for &u in self.category.hom(a, b) {
                out.insert(self.global(a, self.actions[u][x]));
            }
        }
        out
    }

    /// The least subpresheaf containing the given global elements.
    pub fn generated_by(&self, elements: impl IntoIterator<Item = usize>) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(self.total_size());
        for x in elements {
            bits.union_with(&self.reach(x));
        }
        Subpresheaf { bits }
    }

    /// Checks closure under every generator.
    pub fn check_closed(&self, bits: &FixedBitSet) -> Result<(), PresheafError> {
        for (gid, g) in self.category.generators().iter().enumerate() {
            let m = self.category.morphism(g.morphism);
            for x in 0..self.size(m.target) {
                if bits.contains(self.global(m.target, x)) {
                    let y = self.generator_action(gid)[x];
                    if !bits.contains(self.global(m.source, y)) {
                        return Err(PresheafError::NotClosed {
                            element: self.names[m.target][x].clone(),
                            generator: g.name.clone(),
                            image: self.names[m.source][y].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Validates a bitset as a subpresheaf.
    pub fn subpresheaf(&self, bits: FixedBitSet) -> Result<Subpresheaf, PresheafError> {
        assert_eq!(bits.len(), self.total_size(), "bitset sized for a different presheaf");
        self.check_closed(&bits)?;
        Ok(Subpresheaf { bits })
    }

    /// Validates a subset given as local indices per object.
    pub fn subpresheaf_from_levels(&self, levels: &[Vec<usize>]) -> Result<Subpresheaf, PresheafError> {
        let mut bits = FixedBitSet::with_capacity(self.total_size());
        for (o, level) in levels.iter().enumerate() {
            for &x in level {
                bits.insert(self.global(o, x));
            }
        }
        self.subpresheaf(bits)
    }

    pub fn empty_sub(&self) -> Subpresheaf {
        Subpresheaf { bits: FixedBitSet::with_capacity(self.total_size()) }
    }

    pub fn full_sub(&self) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(self.total_size());
        bits.insert_range(..);
        Subpresheaf { bits }
    }

    /// Every subpresheaf exactly once, in canonical order (see [`Subpresheaf`]).
    ///
    /// Elements are decided one at a time: including one forces everything it
    /// reaches, excluding one forces out everything reaching it.
    pub fn enumerate_subpresheaves(&self, bound: usize) -> Result<Vec<Subpresheaf>, PresheafError> {
        let n = self.total_size();
        if n > bound {
            return Err(PresheafError::TooLarge { size: n, bound });
        }
        let down: Vec<FixedBitSet> = (0..n).map(|x| self.reach(x)).collect();
        let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (x, d) in down.iter().enumerate() {
            for y in d.ones() {
                up[y].insert(x);
            }
        }
        let mut out = Vec::new();
        let mut stack = vec![(FixedBitSet::with_capacity(n), FixedBitSet::with_capacity(n))];
        while let Some((inc, exc)) = stack.pop() {
            // Highest undecided element first: it forces the most.
            let decided = {
                let mut d = inc.clone();
                d.union_with(&exc);
                d
            };
            match (0..n).rev().find(|&x| !decided.contains(x)) {
                None => out.push(Subpresheaf { bits: inc }),
                Some(x) => {
                    let mut inc2 = inc.clone();
                    inc2.union_with(&down[x]);
                    if inc2.is_disjoint(&exc) {
                        stack.push((inc2, exc.clone()));
                    }
                    let mut exc2 = exc;
                    exc2.union_with(&up[x]);
                    if exc2.is_disjoint(&inc) {
                        stack.push((inc, exc2));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// The subpresheaf as a presheaf in its own right, with the inclusion
    /// given as global indices of `self` per global index of the result.
    pub fn restrict(&self, sub: &Subpresheaf) -> (FinitePresheaf, Vec<usize>) {
        let c = &self.category;
        let mut local = vec![usize::MAX; self.total_size()];
        let mut names = Vec::new();
        let mut embedding = Vec::new();
        for o in 0..c.object_count() {
            let mut level = Vec::new();
            for x in 0..self.size(o) {
                let gx = self.global(o, x);
                if sub.bits.contains(gx) {
                    local[gx] = level.len();
                    level.push(self.names[o][x].clone());
                    embedding.push(gx);
                }
            }
            names.push(level);
        }
        let actions = (0..c.morphism_count())
            .map(|u| {
                let m = c.morphism(u);
                (0..self.size(m.target))
                    .filter(|&x| sub.bits.contains(self.global(m.target, x)))
                    .map(|x| local[self.global(m.source, self.actions[u][x])])
                    .collect()
            })
            .collect();
        let mut offsets = vec![0];
        for level in &names {
            offsets.push(offsets.last().unwrap() + level.len());
        }
        (FinitePresheaf { category: c.clone(), names, offsets, actions }, embedding)
    }

    /// Pulls a subpresheaf of the codomain back along a morphism.
    pub fn preimage(&self, f: &PresheafMorphism, target: &FinitePresheaf, sub: &Subpresheaf) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(self.total_size());
        for o in 0..self.category.object_count() {
            for x in 0..self.size(o) {
                if sub.bits.contains(target.global(o, f.components[o][x])) {
                    bits.insert(self.global(o, x));
                }
            }
        }
        Subpresheaf { bits }
    }

    /// Image of a subpresheaf along a morphism.
    pub fn image(&self, f: &PresheafMorphism, target: &FinitePresheaf, sub: &Subpresheaf) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(target.total_size());
        for g in sub.bits.ones() {
            let (o, x) = self.locate(g);
            bits.insert(target.global(o, f.components[o][x]));
        }
        Subpresheaf { bits }
    }

    /// Short human-readable listing, one line per object.
    pub fn describe_sub(&self, sub: &Subpresheaf) -> String {
        (0..self.category.object_count())
            .map(|o| {
                let items: Vec<&str> = sub.level(self, o).into_iter().map(|x| self.names[o][x].as_str()).collect();
                format!("{}: {{{}}}", self.category.object(o).name, items.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// A subpresheaf stored as a bitset over the ambient's global indices.
///
/// The order on subpresheaves compares bitsets as binary numbers with global
/// index 0 as the least significant bit, so the empty subpresheaf comes first
/// and the full one last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subpresheaf {
    bits: FixedBitSet,
}

impl Ord for Subpresheaf {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.bits.as_slice();
        let b = other.bits.as_slice();
        a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
    }
}

impl PartialOrd for Subpresheaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subpresheaf {
    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, ambient: &FinitePresheaf, object: ObjectId, index: usize) -> bool {
        self.bits.contains(ambient.global(object, index))
    }

    pub fn contains_global(&self, global: usize) -> bool {
        self.bits.contains(global)
    }

    /// Local indices present at an object.
    pub fn level(&self, ambient: &FinitePresheaf, object: ObjectId) -> Vec<usize> {
        (0..ambient.size(object)).filter(|&x| self.contains(ambient, object, x)).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &Subpresheaf) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn meet(&self, other: &Subpresheaf) -> Subpresheaf {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subpresheaf { bits }
    }

    pub fn join(&self, other: &Subpresheaf) -> Subpresheaf {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subpresheaf { bits }
    }
}

/// A natural transformation, stored as one local map per object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresheafMorphism {
    pub components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    /// Checks naturality against every generator.
    pub fn check_natural(&self, source: &FinitePresheaf, target: &FinitePresheaf) -> Result<(), PresheafError> {
        let c = source.category();
        if !Arc::ptr_eq(c, target.category()) && c.kind() != target.category().kind() {
            return Err(PresheafError::CategoryMismatch);
        }
        for (o, comp) in self.components.iter().enumerate() {
            if comp.len() != source.size(o) || comp.iter().any(|&v| v >= target.size(o)) {
                return Err(PresheafError::ActionShape {
                    generator: format!("component {}", c.object(o).name),
                    expected: source.size(o),
                    got: comp.len(),
                });
            }
        }
        for (gid, g) in c.generators().iter().enumerate() {
            let m = c.morphism(g.morphism);
            for x in 0..source.size(m.target) {
                let lhs = target.generator_action(gid)[self.components[m.target][x]];
                let rhs = self.components[m.source][source.generator_action(gid)[x]];
                if lhs != rhs {
                    return Err(PresheafError::NotNatural {
                        generator: g.name.clone(),
                        element: source.names(m.target)[x].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Value at a global element of the source, as a global element of the target.
    pub fn apply_global(&self, source: &FinitePresheaf, target: &FinitePresheaf, global: usize) -> usize {
        let (o, x) = source.locate(global);
        target.global(o, self.components[o][x])
    }
}

/// Backtracking search for natural transformations, optionally with some
/// values fixed in advance.
pub struct MorphismSearch<'a> {
    source: &'a FinitePresheaf,
    target: &'a FinitePresheaf,
    /// Generator constraints per global source element: `(generator, partner,
    /// partner is the image)`. When the flag is set, `target(g)(value(x))`
    /// must equal `value(partner)`; otherwise `target(g)(value(partner))` must
    /// equal `value(x)`.
    constraints: Vec<Vec<(usize, usize, bool)>>,
}

impl<'a> MorphismSearch<'a> {
    pub fn new(source: &'a FinitePresheaf, target: &'a FinitePresheaf) -> Self {
        let c = source.category();
        let mut constraints = vec![Vec::new(); source.total_size()];
        for (gid, g) in c.generators().iter().enumerate() {
            let m = c.morphism(g.morphism);
            for x in 0..source.size(m.target) {
                let gx = source.global(m.target, x);
                let gy = source.global(m.source, source.generator_action(gid)[x]);
                constraints[gx].push((gid, gy, true));
                constraints[gy].push((gid, gx, false));
            }
        }
        MorphismSearch { source, target, constraints }
    }

    /// Counts morphisms agreeing with `fixed` (global target values, or
    /// `None`), stopping once `cap` have been found.
    pub fn count(&self, fixed: &[Option<usize>], cap: usize) -> usize {
        let mut found = 0;
        self.run(fixed, &mut |_| {
            found += 1;
            found < cap
        });
        found
    }

    /// All morphisms agreeing with `fixed`.
    pub fn all(&self, fixed: &[Option<usize>]) -> Vec<PresheafMorphism> {
        let mut out = Vec::new();
        self.run(fixed, &mut |values| {
            out.push(self.to_morphism(values));
            true
        });
        out
    }

    /// First morphism agreeing with `fixed`, if any.
    pub fn first(&self, fixed: &[Option<usize>]) -> Option<PresheafMorphism> {
        let mut out = None;
        self.run(fixed, &mut |values| {
            out = Some(self.to_morphism(values));
            false
        });
        out
    }

    fn to_morphism(&self, values: &[usize]) -> PresheafMorphism {
        let c = self.source.category();
        let components = (0..c.object_count())
            .map(|o| {
                (0..self.source.size(o))
                    .map(|x| self.target.locate(values[self.source.global(o, x)]).1)
                    .collect()
            })
            .collect();
        PresheafMorphism { components }
    }

    fn run(&self, fixed: &[Option<usize>], visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.source.total_size();
        assert_eq!(fixed.len(), n);
        let mut values = vec![usize::MAX; n];
        for (x, v) in fixed.iter().enumerate() {
            if let Some(v) = v {
                values[x] = *v;
            }
        }
        // Fixed values must already be consistent with each other.
        for x in 0..n {
            if values[x] != usize::MAX && !self.consistent(x, values[x], &values) {
                return;
            }
        }
        let free: Vec<usize> = (0..n).filter(|&x| values[x] == usize::MAX).collect();
        self.step(&free, 0, &mut values, visit);
    }

    fn consistent(&self, x: usize, v: usize, values: &[usize]) -> bool {
        let t = self.target;
        let (ot, _) = t.locate(v);
        if ot != self.source.locate(x).0 {
            return false;
        }
        self.constraints[x].iter().all(|&(gid, partner, partner_is_image)| {
            let pv = values[partner];
            if pv == usize::MAX {
                return true;
            }
            let m = t.category().morphism(t.category().generator(gid).morphism);
            if partner_is_image {
                t.global(m.source, t.generator_action(gid)[v - t.global(m.target, 0)]) == pv
            } else {
                t.global(m.source, t.generator_action(gid)[pv - t.global(m.target, 0)]) == v
            }
        })
    }

    fn step(&self, free: &[usize], pos: usize, values: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == free.len() {
            return visit(values);
        }
        let x = free[pos];
        let (o, _) = self.source.locate(x);
        let t = self.target;
        // A partner already assigned whose image is x forces the value.
        let forced = self.constraints[x].iter().find_map(|&(gid, partner, partner_is_image)| {
            if partner_is_image || values[partner] == usize::MAX {
                return None;
            }
            let m = t.category().morphism(t.category().generator(gid).morphism);
            Some(t.global(m.source, t.generator_action(gid)[values[partner] - t.global(m.target, 0)]))
        });
        let candidates: Vec<usize> = match forced {
            Some(v) => vec![v],
            None => (t.global(o, 0)..t.global(o, 0) + t.size(o)).collect(),
        };
        for v in candidates {
            if self.consistent(x, v, values) {
                values[x] = v;
                if !self.step(free, pos + 1, values, visit) {
                    values[x] = usize::MAX;
                    return false;
                }
            }
        }
        values[x] = usize::MAX;
        true
    }
}

/// The `i`th face of `y(k)`: the least subpresheaf containing `d^k_i`.
pub fn ith_face(category: &Arc<FiniteIndexCategory>, k: ObjectId, i: usize) -> Result<Subpresheaf, PresheafError> {
    let y = FinitePresheaf::yoneda(category, k);
    let g = category
        .faces_into(k)
        .iter()
        .copied()
        .find(|&g| category.generator(g).role == GeneratorRole::Face { index: i })
        .ok_or(CategoryError::IndexOutOfRange { object: category.object(k).name.clone(), index: i })?;
    Ok(face_of(&y, category, k, g))
}

fn face_of(y: &FinitePresheaf, c: &FiniteIndexCategory, k: ObjectId, generator: usize) -> Subpresheaf {
    let d = c.generator(generator).morphism;
    let a = c.morphism(d).source;
    let local = c.hom(a, k).iter().position(|&f| f == d).unwrap();
    y.generated_by([y.global(a, local)])
}

/// `∂y(k)`, the join of all faces of `y(k)`; empty when nothing maps in.
pub fn boundary(category: &Arc<FiniteIndexCategory>, k: ObjectId) -> Subpresheaf {
    let y = FinitePresheaf::yoneda(category, k);
    category
        .faces_into(k)
        .iter()
        .fold(y.empty_sub(), |acc, &g| acc.join(&face_of(&y, category, k, g)))
}

/// Translation between sieves on `y₊(k)` (face-only) and on `y(k)` (with
/// degeneracies) by adding or stripping degenerate simplices.
pub struct DegeneracyTranslation {
    pub semi: Arc<FiniteIndexCategory>,
    pub full: Arc<FiniteIndexCategory>,
    pub k: usize,
    pub semi_yoneda: FinitePresheaf,
    pub full_yoneda: FinitePresheaf,
    /// Global index in `y(k)` of each global element of `y₊(k)`.
    to_full: Vec<usize>,
    from_full: Vec<Option<usize>>,
}

impl DegeneracyTranslation {
    /// `semi` and `full` must be `SemiSimplex(N)` and `Simplex(N)` (or Graph
    /// and ReflGraph) for the same `N`.
    pub fn new(semi: Arc<FiniteIndexCategory>, full: Arc<FiniteIndexCategory>, k: usize) -> Result<Self, PresheafError> {
        let dims = (semi.kind().simplex_dimension(), full.kind().simplex_dimension());
        if semi.kind().has_degeneracies() || !full.kind().has_degeneracies() || dims.0 != dims.1 || dims.0.is_none() {
            return Err(PresheafError::CategoryMismatch);
        }
        if k >= semi.object_count() {
            return Err(CategoryError::IndexOutOfRange { object: k.to_string(), index: k }.into());
        }
        let semi_yoneda = FinitePresheaf::yoneda(&semi, k);
        let full_yoneda = FinitePresheaf::yoneda(&full, k);
        let mut to_full = Vec::new();
        let mut from_full = vec![None; full_yoneda.total_size()];
        for l in 0..semi.object_count() {
            for &f in semi.hom(l, k) {
                let map = semi.morphism(f).map.as_ref().unwrap();
                let g = full.morphism_by_map(l, k, map).unwrap();
                let local = full.hom(l, k).iter().position(|&h| h == g).unwrap();
                from_full[full_yoneda.global(l, local)] = Some(to_full.len());
                to_full.push(full_yoneda.global(l, local));
            }
        }
        Ok(DegeneracyTranslation { semi, full, k, semi_yoneda, full_yoneda, to_full, from_full })
    }

    /// `degen(x, l)`: degenerate `l`-simplices of `y(k)` generated from `x`
    /// (a sieve on `y(k)` or the image of one on `y₊(k)`), as global indices
    /// of `y(k)`.
    pub fn degen_set(&self, x: &FixedBitSet, l: usize) -> Vec<usize> {
        let c = &self.full;
        let y = &self.full_yoneda;
        let mut current: Vec<usize> = Vec::new();
        for dim in 0..l {
            // Candidates f ∈ x(dim) ∪ degen(x, dim), then f ∘ σ_i for each i.
            let mut sources: Vec<usize> = (0..y.size(dim)).filter(|&f| x.contains(y.global(dim, f))).collect();
            sources.extend(current.iter().map(|&g| y.locate(g).1));
            let mut next = Vec::new();
            for i in 0..=dim {
                let sigma = c.degeneracy(dim, i).expect("degeneracy");
                for &f in &sources {
                    next.push(y.global(dim + 1, y.act(sigma, f)));
                }
            }
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        current
    }

    /// `F_k`: adds every degeneracy to a sieve on `y₊(k)`.
    pub fn add_degeneracies(&self, x_plus: &Subpresheaf) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(self.full_yoneda.total_size());
        for g in x_plus.bits.ones() {
            bits.insert(self.to_full[g]);
        }
        let base = bits.clone();
        for l in 1..self.full.object_count() {
            for d in self.degen_set(&base, l) {
                bits.insert(d);
            }
        }
        Subpresheaf { bits }
    }

    /// `F_k⁻¹`: keeps only the non-degenerate simplices.
    pub fn strip_degeneracies(&self, x: &Subpresheaf) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(self.semi_yoneda.total_size());
        for g in x.bits.ones() {
            if let Some(s) = self.from_full[g] {
                bits.insert(s);
            }
        }
        Subpresheaf { bits }
    }
}
