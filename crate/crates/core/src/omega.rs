//! The classifying object `Ω`, where `Ω(c)` is the set of sieves on `c`.
//!
//! A sieve on `c` is a subpresheaf of `y(c)`. Each level keeps its sieves in
//! canonical order, so index 0 is the empty sieve and the last index is the
//! full sieve `True`. The Heyting structure on a level is derived from
//! inclusion by the lattice module, and only for levels small enough to
//! tabulate.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::fincat::{FiniteIndexCategory, GeneratorId, MorphismId, ObjectId};
use crate::lattice::{FiniteHeytingAlgebra, LatticeError, PartialOrder};
use crate::presheaf::{FinitePresheaf, PresheafError, PresheafMorphism, Subpresheaf, DEFAULT_CARRIER_BOUND};

/// Index of a sieve within its level.
pub type SieveId = usize;

/// Largest level whose Heyting tables are built.
pub const DEFAULT_TABLE_BOUND: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("level {level} has {size} sieves, above the table bound {bound}")]
    LevelTooLarge { level: String, size: usize, bound: usize },
    #[error("level {level} is not a Heyting algebra: {source}")]
    NotHeyting { level: String, source: LatticeError },
    #[error("subpresheaf is not a sieve on level {0}")]
    NotASieve(String),
    #[error("object {object} has no faces, so incidence tuples are undefined")]
    NoFaces { object: String },
    #[error("incidence tuple has length {got}, expected {expected}")]
    TupleShape { expected: usize, got: usize },
}

/// One level `Ω(c)`.
#[derive(Debug)]
pub struct OmegaLevel {
    object: ObjectId,
    yoneda: FinitePresheaf,
    sieves: Vec<Subpresheaf>,
    index: HashMap<Subpresheaf, SieveId>,
    algebra: OnceLock<Result<Arc<FiniteHeytingAlgebra>, OmegaError>>,
}

impl OmegaLevel {
    pub fn object(&self) -> ObjectId {
        self.object
    }

    pub fn yoneda(&self) -> &FinitePresheaf {
        &self.yoneda
    }

    pub fn sieves(&self) -> &[Subpresheaf] {
        &self.sieves
    }

    pub fn size(&self) -> usize {
        self.sieves.len()
    }

    pub fn sieve(&self, id: SieveId) -> &Subpresheaf {
        &self.sieves[id]
    }

    pub fn lookup(&self, sieve: &Subpresheaf) -> Option<SieveId> {
        self.index.get(sieve).copied()
    }

    pub fn bottom(&self) -> SieveId {
        0
    }

    pub fn top(&self) -> SieveId {
        self.sieves.len() - 1
    }
}

/// Result of inverting the incidence-tuple map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncidenceLookup {
    Unique(SieveId),
    /// Several sieves share the tuple (for simplex shapes, exactly `∂y` and `y`).
    Ambiguous(Vec<SieveId>),
    Missing,
}

/// `Ω` as a presheaf of sieves with pullback actions.
#[derive(Debug)]
pub struct OmegaObject {
    category: Arc<FiniteIndexCategory>,
    levels: Vec<OmegaLevel>,
    /// For `u: a -> b`, the pullback table `Ω(b) -> Ω(a)`.
    actions: Vec<Vec<SieveId>>,
    table_bound: usize,
    incidence: Vec<HashMap<Vec<SieveId>, Vec<SieveId>>>,
}

impl OmegaObject {
    /// Builds every level with default bounds.
    pub fn new(category: &Arc<FiniteIndexCategory>) -> Result<Self, OmegaError> {
        Self::with_bounds(category, DEFAULT_CARRIER_BOUND, DEFAULT_TABLE_BOUND)
    }

    /// `carrier_bound` limits `|y(c)|` and `table_bound` limits the levels on
    /// which Heyting tables may be requested.
    pub fn with_bounds(
        category: &Arc<FiniteIndexCategory>,
        carrier_bound: usize,
        table_bound: usize,
    ) -> Result<Self, OmegaError> {
        let c = category;
        let mut levels = Vec::new();
        for k in 0..c.object_count() {
            let yoneda = FinitePresheaf::yoneda(c, k);
            let sieves = yoneda.enumerate_subpresheaves(carrier_bound).map_err(|e| match e {
                PresheafError::TooLarge { size, bound } => {
                    OmegaError::LevelTooLarge { level: c.object(k).name.clone(), size, bound }
                }
                other => other.into(),
            })?;
            let index = sieves.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            levels.push(OmegaLevel { object: k, yoneda, sieves, index, algebra: OnceLock::new() });
        }
        let actions = (0..c.morphism_count())
            .map(|u| {
                let b = c.morphism(u).target;
                (0..levels[b].size()).map(|s| pullback_sieve(c, &levels, u, levels[b].sieve(s)).1).collect()
            })
            .collect();
        let mut omega = OmegaObject { category: c.clone(), levels, actions, table_bound, incidence: Vec::new() };
        omega.incidence = (0..c.object_count())
            .map(|k| {
                let mut map: HashMap<Vec<SieveId>, Vec<SieveId>> = HashMap::new();
                if !c.faces_into(k).is_empty() {
                    for x in 0..omega.levels[k].size() {
                        map.entry(omega.incidence_tuple_unchecked(k, x)).or_default().push(x);
                    }
                }
                map
            })
            .collect();
        Ok(omega)
    }

    pub fn category(&self) -> &Arc<FiniteIndexCategory> {
        &self.category
    }

    pub fn levels(&self) -> &[OmegaLevel] {
        &self.levels
    }

    pub fn level(&self, k: ObjectId) -> &OmegaLevel {
        &self.levels[k]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(OmegaLevel::size).collect()
    }

    /// `True` at a level: the full sieve.
    pub fn top(&self, k: ObjectId) -> SieveId {
        self.levels[k].top()
    }

    pub fn bottom(&self, _k: ObjectId) -> SieveId {
        0
    }

    /// `Ω(u)(S)` for `u: a -> k` and a sieve `S` on `k`.
    pub fn act(&self, u: MorphismId, s: SieveId) -> SieveId {
        self.actions[u][s]
    }

    /// `{ g | u ∘ g ∈ S }` computed directly from the sieve, without tables.
    pub fn sieve_pullback(&self, u: MorphismId, s: &Subpresheaf) -> Result<Subpresheaf, OmegaError> {
        let b = self.category.morphism(u).target;
        if self.levels[b].lookup(s).is_none() {
            return Err(OmegaError::NotASieve(self.category.object(b).name.clone()));
        }
        Ok(pullback_sieve(&self.category, &self.levels, u, s).0)
    }

    pub fn leq(&self, k: ObjectId, a: SieveId, b: SieveId) -> bool {
        self.levels[k].sieves[a].is_subset(&self.levels[k].sieves[b])
    }

    pub fn meet(&self, k: ObjectId, a: SieveId, b: SieveId) -> SieveId {
        if let Some(Ok(alg)) = self.levels[k].algebra.get() {
            return alg.meet(a, b);
        }
        let m = self.levels[k].sieves[a].meet(&self.levels[k].sieves[b]);
        self.levels[k].index[&m]
    }

    pub fn join(&self, k: ObjectId, a: SieveId, b: SieveId) -> SieveId {
        if let Some(Ok(alg)) = self.levels[k].algebra.get() {
            return alg.join(a, b);
        }
        let m = self.levels[k].sieves[a].join(&self.levels[k].sieves[b]);
        self.levels[k].index[&m]
    }

    /// Heyting tables for a level, built on first use from the inclusion order.
    pub fn level_algebra(&self, k: ObjectId) -> Result<Arc<FiniteHeytingAlgebra>, OmegaError> {
        self.levels[k]
            .algebra
            .get_or_init(|| {
                let level = &self.levels[k];
                let name = self.category.object(k).name.clone();
                if level.size() > self.table_bound {
                    return Err(OmegaError::LevelTooLarge { level: name, size: level.size(), bound: self.table_bound });
                }
                let names = (0..level.size()).map(|s| format!("{s}:{}", self.sieve_summary(k, s))).collect();
                let leq = (0..level.size()).map(|a| (0..level.size()).map(|b| self.leq(k, a, b)).collect()).collect();
                let order = PartialOrder::from_matrix(names, leq)
                    .map_err(|source| OmegaError::NotHeyting { level: name.clone(), source })?;
                FiniteHeytingAlgebra::new(order)
                    .map(Arc::new)
                    .map_err(|source| OmegaError::NotHeyting { level: name, source })
            })
            .clone()
    }

    /// Maximal elements of a sieve, e.g. `⟨(0,1), (2)⟩`; `∅` when empty.
    pub fn sieve_summary(&self, k: ObjectId, s: SieveId) -> String {
        let level = &self.levels[k];
        let y = &level.yoneda;
        let sieve = &level.sieves[s];
        if sieve.is_empty() {
            return "∅".into();
        }
        let members: Vec<usize> = sieve.bits().ones().collect();
        let reach: Vec<FixedBitSet> = members.iter().map(|&x| y.reach(x)).collect();
        let mut maximal = Vec::new();
        for (i, &x) in members.iter().enumerate() {
            // Skip x if it sits strictly below another member, or is
            // equivalent to an earlier one (degenerate copies).
            let dominated = members.iter().enumerate().any(|(j, &z)| {
                j != i && reach[j].contains(x) && (!reach[i].contains(z) || j < i)
            });
            if !dominated {
                maximal.push(y.global_name(x).to_string());
            }
        }
        format!("⟨{}⟩", maximal.join(", "))
    }

    /// Faces of `x ∈ Ω(k)`, ordered `(d_k, …, d_0)`.
    pub fn incidence_tuple(&self, k: ObjectId, x: SieveId) -> Result<Vec<SieveId>, OmegaError> {
        if self.category.faces_into(k).is_empty() {
            return Err(OmegaError::NoFaces { object: self.category.object(k).name.clone() });
        }
        Ok(self.incidence_tuple_unchecked(k, x))
    }

    fn incidence_tuple_unchecked(&self, k: ObjectId, x: SieveId) -> Vec<SieveId> {
        self.category.faces_into(k).iter().map(|&g| self.act(self.category.generator(g).morphism, x)).collect()
    }

    /// Sieves at level `k` with the given incidence tuple.
    pub fn unique_with_incidence(&self, k: ObjectId, tuple: &[SieveId]) -> Result<IncidenceLookup, OmegaError> {
        let faces = self.category.faces_into(k);
        if faces.is_empty() {
            return Err(OmegaError::NoFaces { object: self.category.object(k).name.clone() });
        }
        if tuple.len() != faces.len() {
            return Err(OmegaError::TupleShape { expected: faces.len(), got: tuple.len() });
        }
        Ok(match self.incidence[k].get(tuple).map(Vec::as_slice) {
            None | Some([]) => IncidenceLookup::Missing,
            Some([x]) => IncidenceLookup::Unique(*x),
            Some(xs) => IncidenceLookup::Ambiguous(xs.to_vec()),
        })
    }

    /// Every incidence tuple shared by more than one sieve at level `k`.
    pub fn incidence_collisions(&self, k: ObjectId) -> Vec<(Vec<SieveId>, Vec<SieveId>)> {
        let mut out: Vec<_> = self.incidence[k]
            .iter()
            .filter(|(_, xs)| xs.len() > 1)
            .map(|(t, xs)| (t.clone(), xs.clone()))
            .collect();
        out.sort();
        out
    }

    /// Whether a tuple indexed like [`FiniteIndexCategory::faces_into`] is a
    /// matching family: whenever `d_g ∘ p = d_h ∘ q`, the pullbacks
    /// `Ω(p)(x_g)` and `Ω(q)(x_h)` agree.
    pub fn is_compatible_tuple(&self, k: ObjectId, tuple: &[SieveId]) -> bool {
        let faces: Vec<MorphismId> =
            self.category.faces_into(k).iter().map(|&g| self.category.generator(g).morphism).collect();
        matching_family(&self.category, &faces, |i, p| self.act(p, tuple[i]))
    }

    /// Number of distinct incidence tuples realised at level `k`.
    pub fn incidence_image_size(&self, k: ObjectId) -> usize {
        self.incidence[k].len()
    }

    /// The sieve `∂y(k)` as an index, if it is a sieve at level `k`.
    pub fn boundary_sieve(&self, k: ObjectId) -> SieveId {
        let b = crate::presheaf::boundary(&self.category, k);
        self.levels[k].index[&b]
    }

    /// The sieve generated by a face generator into `k`.
    pub fn face_sieve(&self, k: ObjectId, generator: GeneratorId) -> SieveId {
        let level = &self.levels[k];
        let d = self.category.generator(generator).morphism;
        let a = self.category.morphism(d).source;
        let local = self.category.hom(a, k).iter().position(|&f| f == d).unwrap();
        let s = level.yoneda.generated_by([level.yoneda.global(a, local)]);
        level.index[&s]
    }

    /// `χ_{A'}: A -> Ω`, sending `x ∈ A(c)` to `{ f | A(f)(x) ∈ A' }`.
    pub fn characteristic(&self, ambient: &FinitePresheaf, sub: &Subpresheaf) -> PresheafMorphism {
        let c = &self.category;
        let components = (0..c.object_count())
            .map(|k| {
                let y = &self.levels[k].yoneda;
                (0..ambient.size(k))
                    .map(|x| {
                        let mut bits = FixedBitSet::with_capacity(y.total_size());
                        for d in 0..c.object_count() {
                            for (i, &f) in c.hom(d, k).iter().enumerate() {
                                if sub.contains(ambient, d, ambient.act(f, x)) {
                                    bits.insert(y.global(d, i));
                                }
                            }
                        }
                        self.levels[k].index[&Subpresheaf::clone(&y.subpresheaf(bits).expect("sieve"))]
                    })
                    .collect()
            })
            .collect();
        PresheafMorphism { components }
    }

    /// Pulls `True` back along a map into `Ω`.
    pub fn true_preimage(&self, ambient: &FinitePresheaf, chi: &PresheafMorphism) -> Subpresheaf {
        let mut bits = FixedBitSet::with_capacity(ambient.total_size());
        for k in 0..self.category.object_count() {
            for x in 0..ambient.size(k) {
                if chi.components[k][x] == self.top(k) {
                    bits.insert(ambient.global(k, x));
                }
            }
        }
        ambient.subpresheaf(bits).expect("preimage of True is closed")
    }

    /// `Ω` as an ordinary presheaf, elements named by sieve summaries.
    pub fn as_presheaf(&self) -> FinitePresheaf {
        let c = &self.category;
        let names = (0..c.object_count())
            .map(|k| (0..self.levels[k].size()).map(|s| format!("{s}:{}", self.sieve_summary(k, s))).collect())
            .collect();
        let gens = c.generators().iter().map(|g| self.actions[g.morphism].clone()).collect();
        FinitePresheaf::from_generator_actions(c.clone(), names, gens).expect("Ω is a presheaf")
    }

    /// The map `Ω(a) -> Ω(k)_{≤ face}` given by postcomposing with a face
    /// generator `d: a -> k`. Returns the image of each sieve in order.
    pub fn face_embedding(&self, k: ObjectId, generator: GeneratorId) -> Vec<SieveId> {
        let c = &self.category;
        let d = c.generator(generator).morphism;
        let a = c.morphism(d).source;
        let (ya, yk) = (&self.levels[a].yoneda, &self.levels[k].yoneda);
        (0..self.levels[a].size())
            .map(|s| {
                let mut bits = FixedBitSet::with_capacity(yk.total_size());
                for g in self.levels[a].sieves[s].bits().ones() {
                    let (l, i) = ya.locate(g);
                    let f = c.compose(d, c.hom(l, a)[i]).unwrap();
                    let j = c.hom(l, k).iter().position(|&h| h == f).unwrap();
                    bits.insert(yk.global(l, j));
                }
                self.levels[k].index[&Subpresheaf::clone(&yk.subpresheaf(bits).expect("image is a sieve"))]
            })
            .collect()
    }

    /// Hasse diagram of a level in DOT format, nodes sorted by sieve index.
    pub fn level_dot(&self, k: ObjectId) -> Result<String, OmegaError> {
        let alg = self.level_algebra(k)?;
        let name = &self.category.object(k).name;
        let mut out = String::new();
        writeln!(out, "digraph \"omega_{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for s in 0..self.levels[k].size() {
            let label = self.sieve_summary(k, s).replace('"', "\\\"");
            writeln!(out, "  n{s} [label=\"{label}\"];").unwrap();
        }
        for (a, b) in alg.hasse_edges() {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Checks the matching condition for a family indexed by `faces`, where
/// `act(i, p)` pulls member `i` back along `p`.
pub(crate) fn matching_family(
    c: &FiniteIndexCategory,
    faces: &[MorphismId],
    act: impl Fn(usize, MorphismId) -> usize,
) -> bool {
    for (i, &dg) in faces.iter().enumerate() {
        for (j, &dh) in faces.iter().enumerate().skip(i + 1) {
            let (a, b) = (c.morphism(dg).source, c.morphism(dh).source);
            for e in 0..c.object_count() {
                for &p in c.hom(e, a) {
                    for &q in c.hom(e, b) {
                        if c.compose(dg, p) == c.compose(dh, q) && act(i, p) != act(j, q) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn pullback_sieve(
    c: &FiniteIndexCategory,
    levels: &[OmegaLevel],
    u: MorphismId,
    s: &Subpresheaf,
) -> (Subpresheaf, SieveId) {
    let (a, b) = (c.morphism(u).source, c.morphism(u).target);
    let (ya, yb) = (&levels[a].yoneda, &levels[b].yoneda);
    let mut bits = FixedBitSet::with_capacity(ya.total_size());
    for d in 0..c.object_count() {
        for (i, &g) in c.hom(d, a).iter().enumerate() {
            let ug = c.compose(u, g).unwrap();
            let j = c.hom(d, b).iter().position(|&h| h == ug).unwrap();
            if s.contains(yb, d, j) {
                bits.insert(ya.global(d, i));
            }
        }
    }
    let sub = ya.subpresheaf(bits).expect("pullback of a sieve is a sieve");
    let id = levels[a].index[&sub];
    (sub, id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryKind;

    fn omega(kind: CategoryKind) -> OmegaObject {
        OmegaObject::new(&kind.build().unwrap()).unwrap()
    }

    #[test]
    fn level_sizes() {
        assert_eq!(omega(CategoryKind::SemiSimplex(0)).level_sizes(), vec![2]);
        assert_eq!(omega(CategoryKind::Graph).level_sizes(), vec![2, 5]);
        assert_eq!(omega(CategoryKind::ReflGraph).level_sizes(), vec![2, 5]);
        assert_eq!(omega(CategoryKind::SemiSimplex(2)).level_sizes(), vec![2, 5, 19]);
        assert_eq!(omega(CategoryKind::SemiSimplex(3)).level_sizes(), vec![2, 5, 19, 167]);
        assert_eq!(omega(CategoryKind::BiColGraph).level_sizes(), vec![2, 5, 5]);
    }

    #[test]
    fn graph_sieve_names() {
        let o = omega(CategoryKind::Graph);
        let names: Vec<String> = (0..5).map(|s| o.sieve_summary(1, s)).collect();
        assert_eq!(names, ["∅", "⟨(0)⟩", "⟨(1)⟩", "⟨(0), (1)⟩", "⟨(0,1)⟩"]);
        let r = omega(CategoryKind::ReflGraph);
        let names: Vec<String> = (0..5).map(|s| r.sieve_summary(1, s)).collect();
        assert_eq!(names, ["∅", "⟨(0)⟩", "⟨(1)⟩", "⟨(0), (1)⟩", "⟨(0,1)⟩"]);
    }

    #[test]
    fn pullback_examples() {
        let o = omega(CategoryKind::Graph);
        let c = o.category().clone();
        let s = c.generator(c.generator_by_name("s").unwrap()).morphism;
        let t = c.generator(c.generator_by_name("t").unwrap()).morphism;
        // The sieve "(s,t)" has both endpoints.
        assert_eq!(o.act(s, 3), o.top(0));
        assert_eq!(o.act(s, o.top(1)), o.top(0));
        assert_eq!(o.act(s, 0), 0);
        // The source-only sieve: tuple (top, bottom) in (d1, d0) order.
        assert_eq!(o.incidence_tuple(1, 1).unwrap(), vec![1, 0]);
        assert_eq!(o.act(t, 1), 0);
        let direct = o.sieve_pullback(s, o.level(1).sieve(3)).unwrap();
        assert_eq!(o.level(0).lookup(&direct), Some(1));
    }

    #[test]
    fn incidence_is_surjective_with_one_collision() {
        for kind in [CategoryKind::Graph, CategoryKind::SemiSimplex(2), CategoryKind::Simplex(2), CategoryKind::SemiSimplex(3)] {
            let o = omega(kind);
            let c = o.category().clone();
            for k in 1..c.object_count() {
                // Brute force over the whole product: the image is exactly
                // the compatible tuples.
                let below = o.level(k - 1).size();
                let arity = c.faces_into(k).len();
                let compatible = (0..below.pow(arity as u32))
                    .map(|code| (0..arity).map(|i| code / below.pow(i as u32) % below).collect::<Vec<_>>())
                    .filter(|t| o.is_compatible_tuple(k, t))
                    .inspect(|t| assert!(o.unique_with_incidence(k, t).unwrap() != IncidenceLookup::Missing))
                    .count();
                assert_eq!(o.incidence_image_size(k), compatible, "{kind} level {k}");
                if k == 1 {
                    assert_eq!(compatible, below.pow(arity as u32));
                }
                let collisions = o.incidence_collisions(k);
                assert_eq!(collisions.len(), 1);
                let (tuple, xs) = &collisions[0];
                assert!(tuple.iter().all(|&t| t == o.top(k - 1)));
                assert_eq!(xs, &vec![o.boundary_sieve(k), o.top(k)]);
                assert_eq!(
                    o.unique_with_incidence(k, tuple).unwrap(),
                    IncidenceLookup::Ambiguous(vec![o.boundary_sieve(k), o.top(k)])
                );
            }
        }
    }

    #[test]
    fn characteristic_function_classifies() {
        let c = CategoryKind::Graph.build().unwrap();
        let o = OmegaObject::new(&c).unwrap();
        // A path v0 -e0-> v1 -e1-> v2; A' = {v0, v1, v2, e0}.
        let a = FinitePresheaf::from_sizes(c.clone(), &[3, 2], vec![vec![0, 1], vec![1, 2]]).unwrap();
        let sub = a.subpresheaf_from_levels(&[vec![0, 1, 2], vec![0]]).unwrap();
        let chi = o.characteristic(&a, &sub);
        chi.check_natural(&a, &o.as_presheaf()).unwrap();
        assert_eq!(chi.components[1], vec![o.top(1), 3]);
        assert_eq!(o.true_preimage(&a, &chi), sub);
        let only_source = a.subpresheaf_from_levels(&[vec![0], vec![]]).unwrap();
        assert_eq!(o.characteristic(&a, &only_source).components[1], vec![1, 0]);
    }

    #[test]
    fn levels_are_heyting() {
        let o = omega(CategoryKind::SemiSimplex(2));
        for k in 0..3 {
            let alg = o.level_algebra(k).unwrap();
            assert_eq!(alg.bottom(), 0);
            assert_eq!(alg.top(), o.top(k));
        }
        let big = OmegaObject::with_bounds(&CategoryKind::SemiSimplex(3).build().unwrap(), 512, 100).unwrap();
        assert!(matches!(big.level_algebra(3), Err(OmegaError::LevelTooLarge { size: 167, .. })));
    }

    #[test]
    fn face_embeddings_are_downset_isomorphisms() {
        for kind in [CategoryKind::Graph, CategoryKind::ReflGraph, CategoryKind::SemiSimplex(2), CategoryKind::Simplex(2)] {
            let o = omega(kind);
            let c = o.category().clone();
            for k in 1..c.object_count() {
                for &g in c.faces_into(k) {
                    let face = o.face_sieve(k, g);
                    let emb = o.face_embedding(k, g);
                    let below: Vec<SieveId> = (0..o.level(k).size()).filter(|&s| o.leq(k, s, face)).collect();
                    let mut image = emb.clone();
                    image.sort_unstable();
                    assert_eq!(image, below);
                    let d = c.generator(g).morphism;
                    for (x, &e) in emb.iter().enumerate() {
                        assert_eq!(o.act(d, e), x);
                    }
                }
            }
        }
    }

    #[test]
    fn dot_is_deterministic() {
        let o = omega(CategoryKind::Graph);
        let dot = o.level_dot(1).unwrap();
        assert_eq!(dot, o.level_dot(1).unwrap());
        assert!(dot.contains("n0 -> n1;"));
        assert_eq!(dot.matches("->").count(), 5);
    }
}
