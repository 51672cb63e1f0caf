//! Finite index categories.
//!
//! Two families are supported: truncated simplex categories, whose morphisms
//! are monotone maps between ordinals `[k] = {0..k}`, and the bespoke
//! bicolored graph shape. Graphs and reflexive graphs are the one-dimensional
//! simplex categories with graph-flavoured names.
//!
//! # Variance
//!
//! Morphisms live in the index category itself, not its opposite. A simplex
//! morphism `u: a -> b` is a monotone map `[a] -> [b]`. A presheaf `F` acts
//! contravariantly, so `F(u)` sends `F(b)` to `F(a)`. The face generator
//! `d^k_i` is the injection `[k-1] -> [k]` that skips `i`, and the degeneracy
//! generator `s^k_i` is the surjection `[k+1] -> [k]` that hits `i` twice.
//! Everything else in the crate derives its direction from this convention.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Index of an object inside a [`FiniteIndexCategory`].
pub type ObjectId = usize;
/// Index of a morphism inside a [`FiniteIndexCategory`].
pub type MorphismId = usize;
/// Index of a generator inside a [`FiniteIndexCategory`].
pub type GeneratorId = usize;

/// Largest simplex dimension accepted unless the caller raises the limit.
pub const DEFAULT_MAX_DIMENSION: usize = 4;

/// Errors raised while building or querying an index category.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown category kind `{0}`")]
    UnknownKind(String),
    #[error("dimension {requested} exceeds the configured maximum {maximum}")]
    DimensionTooLarge { requested: usize, maximum: usize },
    #[error("category law violated: {0}")]
    LawViolation(String),
    #[error("index {index} out of range for object {object}")]
    IndexOutOfRange { object: String, index: usize },
    #[error("no object named `{0}`")]
    UnknownObject(String),
}

/// The built-in index categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CategoryKind {
    /// Face-only simplex category truncated at dimension `N`.
    SemiSimplex(usize),
    /// Simplex category with degeneracies truncated at dimension `N`.
    Simplex(usize),
    /// Same as `SemiSimplex(1)`, with objects `V`, `E` and arrows `s`, `t`.
    Graph,
    /// Same as `Simplex(1)`, with objects `V`, `E` and arrows `s`, `t`, `refl`.
    ReflGraph,
    /// Objects `V`, `E`, `E'` with arrows `s, t: V -> E` and `s', t': V -> E'`.
    BiColGraph,
}

impl CategoryKind {
    /// Underlying simplex dimension, if this is a simplex-shaped category.
    pub fn simplex_dimension(&self) -> Option<usize> {
        match *self {
            CategoryKind::SemiSimplex(n) | CategoryKind::Simplex(n) => Some(n),
            CategoryKind::Graph | CategoryKind::ReflGraph => Some(1),
            CategoryKind::BiColGraph => None,
        }
    }

    pub fn has_degeneracies(&self) -> bool {
        matches!(self, CategoryKind::Simplex(_) | CategoryKind::ReflGraph)
    }

    /// Builds the category with the default dimension cap.
    pub fn build(self) -> Result<Arc<FiniteIndexCategory>, CategoryError> {
        build_index_category(self, DEFAULT_MAX_DIMENSION)
    }
}

impl fmt::Display for CategoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryKind::SemiSimplex(0) => write!(f, "set"),
            CategoryKind::SemiSimplex(n) => write!(f, "semi:{n}"),
            CategoryKind::Simplex(n) => write!(f, "sset:{n}"),
            CategoryKind::Graph => write!(f, "graph"),
            CategoryKind::ReflGraph => write!(f, "reflgraph"),
            CategoryKind::BiColGraph => write!(f, "bicolor"),
        }
    }
}

impl FromStr for CategoryKind {
    type Err = CategoryError;

    /// Accepts `set`, `graph`, `reflgraph`, `bicolor`, `semi:N` and `sset:N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let unknown = || CategoryError::UnknownKind(s.to_string());
        match lower.as_str() {
            "set" => return Ok(CategoryKind::SemiSimplex(0)),
            "graph" => return Ok(CategoryKind::Graph),
            "reflgraph" => return Ok(CategoryKind::ReflGraph),
            "bicolor" | "bicolgraph" => return Ok(CategoryKind::BiColGraph),
            _ => {}
        }
        let (family, dim) = lower.split_once(':').ok_or_else(unknown)?;
        let n: usize = dim.parse().map_err(|_| unknown())?;
        match family {
            "semi" => Ok(CategoryKind::SemiSimplex(n)),
            "sset" => Ok(CategoryKind::Simplex(n)),
            _ => Err(unknown()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub name: String,
    /// Dimension for simplex objects; 0 for vertices and 1 for edge sorts.
    pub grade: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: ObjectId,
    pub target: ObjectId,
    /// The monotone map `[source] -> [target]` for simplex categories.
    pub map: Option<Vec<usize>>,
}

/// How a generator relates to the simplicial structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorRole {
    /// A face `d_i` from a lower grade into a higher one.
    Face { index: usize },
    /// A degeneracy `s_i` from a higher grade onto a lower one.
    Degeneracy { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub morphism: MorphismId,
    pub role: GeneratorRole,
}

/// A small category with an explicit composition table and a generator
/// presentation.
#[derive(Clone, Debug)]
pub struct FiniteIndexCategory {
    kind: CategoryKind,
    objects: Vec<Object>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    hom: Vec<Vec<Vec<MorphismId>>>,
    /// `compose[f * m + g]` is `g ∘ f` when `target(f) == source(g)`.
    compose: Vec<Option<MorphismId>>,
    generators: Vec<Generator>,
    faces_into: Vec<Vec<GeneratorId>>,
    words: Vec<Vec<GeneratorId>>,
    by_map: HashMap<(ObjectId, ObjectId, Vec<usize>), MorphismId>,
}

/// Builds and validates one of the built-in categories.
///
/// `max_dimension` caps `N` for the simplex kinds; larger requests are refused
/// because the sieve lattices explode.
pub fn build_index_category(
    kind: CategoryKind,
    max_dimension: usize,
) -> Result<Arc<FiniteIndexCategory>, CategoryError> {
    if let Some(n) = kind.simplex_dimension() {
        if n > max_dimension {
            return Err(CategoryError::DimensionTooLarge { requested: n, maximum: max_dimension });
        }
    }
    let cat = match kind {
        CategoryKind::SemiSimplex(n) => simplex_category(kind, n, false),
        CategoryKind::Simplex(n) => simplex_category(kind, n, true),
        CategoryKind::Graph => rename_graph(simplex_category(kind, 1, false)),
        CategoryKind::ReflGraph => rename_graph(simplex_category(kind, 1, true)),
        CategoryKind::BiColGraph => bicolor_category(),
    };
    cat.validate()?;
    Ok(Arc::new(cat))
}

fn is_monotone(map: &[usize]) -> bool {
    map.windows(2).all(|w| w[0] <= w[1])
}

/// All monotone maps `[a] -> [b]`, strictly monotone when `injective`.
pub fn monotone_maps(a: usize, b: usize, injective: bool) -> Vec<Vec<usize>> {
    fn go(pos: usize, a: usize, b: usize, inj: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos > a {
            out.push(cur.clone());
            return;
        }
        let lo = match cur.last() {
            None => 0,
            Some(&p) if inj => p + 1,
            Some(&p) => p,
        };
        for v in lo..=b {
            cur.push(v);
            go(pos + 1, a, b, inj, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, a, b, injective, &mut Vec::new(), &mut out);
    out
}

/// The face map `[k-1] -> [k]` skipping `i`.
pub fn face_map(k: usize, i: usize) -> Vec<usize> {
    (0..k).map(|x| if x < i { x } else { x + 1 }).collect()
}

/// The degeneracy map `[k+1] -> [k]` repeating `i`.
pub fn degeneracy_map(k: usize, i: usize) -> Vec<usize> {
    (0..=k + 1).map(|x| if x <= i { x } else { x - 1 }).collect()
}

/// `g ∘ f` for maps given as value tables.
pub fn compose_maps(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

fn simplex_category(kind: CategoryKind, n: usize, degeneracies: bool) -> FiniteIndexCategory {
    let objects: Vec<Object> = (0..=n).map(|k| Object { name: k.to_string(), grade: k }).collect();
    let mut morphisms = Vec::new();
    let mut hom = vec![vec![Vec::new(); n + 1]; n + 1];
    let mut by_map = HashMap::new();
    for a in 0..=n {
        for b in 0..=n {
            for map in monotone_maps(a, b, !degeneracies) {
                let id = morphisms.len();
                by_map.insert((a, b, map.clone()), id);
                hom[a][b].push(id);
                morphisms.push(Morphism { source: a, target: b, map: Some(map) });
            }
        }
    }
    let identities = (0..=n).map(|k| by_map[&(k, k, (0..=k).collect::<Vec<_>>())]).collect();
    let m = morphisms.len();
    let mut compose = vec![None; m * m];
    for f in 0..m {
        for g in 0..m {
            if morphisms[f].target == morphisms[g].source {
                let gf = compose_maps(
                    morphisms[g].map.as_ref().unwrap(),
                    morphisms[f].map.as_ref().unwrap(),
                );
                compose[f * m + g] = Some(by_map[&(morphisms[f].source, morphisms[g].target, gf)]);
            }
        }
    }
    let mut generators = Vec::new();
    let mut faces_into = vec![Vec::new(); n + 1];
    for k in 1..=n {
        // Ordered (d_k, ..., d_0) so incidence tuples read in the usual order.
        for i in (0..=k).rev() {
            faces_into[k].push(generators.len());
            generators.push(Generator {
                name: format!("d{k}_{i}"),
                morphism: by_map[&(k - 1, k, face_map(k, i))],
                role: GeneratorRole::Face { index: i },
            });
        }
    }
    if degeneracies {
        for k in 0..n {
            for i in 0..=k {
                generators.push(Generator {
                    name: format!("s{k}_{i}"),
                    morphism: by_map[&(k + 1, k, degeneracy_map(k, i))],
                    role: GeneratorRole::Degeneracy { index: i },
                });
            }
        }
    }
    let mut cat = FiniteIndexCategory {
        kind,
        objects,
        morphisms,
        identities,
        hom,
        compose,
        generators,
        faces_into,
        words: Vec::new(),
        by_map,
    };
    cat.words = (0..cat.morphisms.len())
        .map(|f| {
            let nf = cat.normal_form(f).expect("simplex morphism");
            cat.normal_form_word(&cat.morphisms[f], &nf)
        })
        .collect();
    cat
}

fn rename_graph(mut cat: FiniteIndexCategory) -> FiniteIndexCategory {
    cat.objects[0].name = "V".into();
    cat.objects[1].name = "E".into();
    for g in &mut cat.generators {
        g.name = match g.name.as_str() {
            "d1_1" => "s".into(),
            "d1_0" => "t".into(),
            "s0_0" => "refl".into(),
            other => other.into(),
        };
    }
    cat
}

fn bicolor_category() -> FiniteIndexCategory {
    let objects = vec![
        Object { name: "V".into(), grade: 0 },
        Object { name: "E".into(), grade: 1 },
        Object { name: "E'".into(), grade: 1 },
    ];
    // Identities first, then s, t, s', t'.
    let mut morphisms: Vec<Morphism> =
        (0..3).map(|o| Morphism { source: o, target: o, map: None }).collect();
    let arrows = [("s", 1, 1), ("t", 1, 0), ("s'", 2, 1), ("t'", 2, 0)];
    let mut generators = Vec::new();
    let mut faces_into = vec![Vec::new(); 3];
    for (name, target, index) in arrows {
        let id = morphisms.len();
        morphisms.push(Morphism { source: 0, target, map: None });
        faces_into[target].push(generators.len());
        generators.push(Generator {
            name: name.into(),
            morphism: id,
            role: GeneratorRole::Face { index },
        });
    }
    let m = morphisms.len();
    let mut hom = vec![vec![Vec::new(); 3]; 3];
    for (id, mor) in morphisms.iter().enumerate() {
        hom[mor.source][mor.target].push(id);
    }
    let mut compose = vec![None; m * m];
    for f in 0..m {
        for g in 0..m {
            if morphisms[f].target != morphisms[g].source {
                continue;
            }
            // Every composable pair involves at least one identity.
            compose[f * m + g] = Some(if g < 3 { f } else { g });
        }
    }
    let words = (0..m).map(|f| if f < 3 { vec![] } else { vec![f - 3] }).collect();
    FiniteIndexCategory {
        kind: CategoryKind::BiColGraph,
        objects,
        morphisms,
        identities: vec![0, 1, 2],
        hom,
        compose,
        generators,
        faces_into,
        words,
        by_map: HashMap::new(),
    }
}

/// Normal form of a simplex morphism.
///
/// A morphism `f` equals `δ_{i_1} ∘ … ∘ δ_{i_s} ∘ σ_{j_1} ∘ … ∘ σ_{j_t}` with
/// `i_1 > … > i_s` (the values missed by `f`) and `j_1 < … < j_t` (the positions
/// `j` with `f(j) = f(j+1)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    /// Face indices, strictly decreasing.
    pub faces: Vec<usize>,
    /// Degeneracy indices, strictly increasing.
    pub degeneracies: Vec<usize>,
}

impl FiniteIndexCategory {
    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn object(&self, id: ObjectId) -> &Object {
        &self.objects[id]
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjectId, CategoryError> {
        self.objects
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, id: MorphismId) -> &Morphism {
        &self.morphisms[id]
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, object: ObjectId) -> MorphismId {
        self.identities[object]
    }

    pub fn is_identity(&self, f: MorphismId) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// Morphisms `a -> b`.
    pub fn hom(&self, a: ObjectId, b: ObjectId) -> &[MorphismId] {
        &self.hom[a][b]
    }

    /// `g ∘ f`, defined when `target(f) == source(g)`.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        self.compose[f * self.morphisms.len() + g]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GeneratorId) -> &Generator {
        &self.generators[id]
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GeneratorId> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Face generators into `object`, ordered `(d_k, …, d_0)`.
    pub fn faces_into(&self, object: ObjectId) -> &[GeneratorId] {
        &self.faces_into[object]
    }

    /// Objects in increasing grade, ties broken by id.
    pub fn objects_by_grade(&self) -> Vec<ObjectId> {
        let mut ids: Vec<ObjectId> = (0..self.objects.len()).collect();
        ids.sort_by_key(|&o| (self.objects[o].grade, o));
        ids
    }

    /// Generator factorisation `f = w[0] ∘ w[1] ∘ … ∘ w[n-1]`.
    pub fn word(&self, f: MorphismId) -> &[GeneratorId] {
        &self.words[f]
    }

    /// Looks up a simplex morphism by its monotone map.
    pub fn morphism_by_map(&self, source: ObjectId, target: ObjectId, map: &[usize]) -> Option<MorphismId> {
        self.by_map.get(&(source, target, map.to_vec())).copied()
    }

    /// The face generator `d^k_i` as a morphism id.
    pub fn face(&self, k: usize, i: usize) -> Result<MorphismId, CategoryError> {
        self.check_index(k, i, k)?;
        if k == 0 {
            return Err(CategoryError::IndexOutOfRange { object: "0".into(), index: i });
        }
        let g = self.faces_into[k]
            .iter()
            .find(|&&g| self.generators[g].role == GeneratorRole::Face { index: i })
            .expect("face generator");
        Ok(self.generators[*g].morphism)
    }

    /// The degeneracy generator `s^k_i` as a morphism id.
    pub fn degeneracy(&self, k: usize, i: usize) -> Result<MorphismId, CategoryError> {
        if !self.kind.has_degeneracies() || k + 1 >= self.objects.len() || i > k {
            return Err(CategoryError::IndexOutOfRange { object: k.to_string(), index: i });
        }
        Ok(self.by_map[&(k + 1, k, degeneracy_map(k, i))])
    }

    fn check_index(&self, k: usize, i: usize, max: usize) -> Result<(), CategoryError> {
        if k >= self.objects.len() || i > max {
            return Err(CategoryError::IndexOutOfRange { object: k.to_string(), index: i });
        }
        Ok(())
    }

    /// Normal form of a simplex morphism, or `None` for the bicolored shape.
    pub fn normal_form(&self, f: MorphismId) -> Option<NormalForm> {
        let map = self.morphisms[f].map.as_ref()?;
        let target = self.morphisms[f].target;
        let mut faces: Vec<usize> = (0..=target).filter(|v| !map.contains(v)).collect();
        faces.reverse();
        let degeneracies = (0..map.len().saturating_sub(1)).filter(|&j| map[j] == map[j + 1]).collect();
        Some(NormalForm { faces, degeneracies })
    }

    /// Rebuilds the morphism named by a normal form starting at `source`.
    pub fn from_normal_form(&self, source: ObjectId, nf: &NormalForm) -> Option<MorphismId> {
        if !nf.faces.windows(2).all(|w| w[0] > w[1]) || !nf.degeneracies.windows(2).all(|w| w[0] < w[1]) {
            return None;
        }
        let mut map: Vec<usize> = (0..=source).collect();
        let mut dim = source;
        for &j in nf.degeneracies.iter().rev() {
            if dim == 0 || j >= dim {
                return None;
            }
            map = compose_maps(&degeneracy_map(dim - 1, j), &map);
            dim -= 1;
        }
        for &i in nf.faces.iter().rev() {
            if i > dim + 1 {
                return None;
            }
            map = compose_maps(&face_map(dim + 1, i), &map);
            dim += 1;
        }
        if dim >= self.objects.len() {
            return None;
        }
        self.morphism_by_map(source, dim, &map)
    }

    fn normal_form_word(&self, mor: &Morphism, nf: &NormalForm) -> Vec<GeneratorId> {
        let mut word = Vec::new();
        let mut dim = mor.target;
        for &i in &nf.faces {
            word.push(self.generator_for(self.by_map[&(dim - 1, dim, face_map(dim, i))]));
            dim -= 1;
        }
        for &j in &nf.degeneracies {
            word.push(self.generator_for(self.by_map[&(dim + 1, dim, degeneracy_map(dim, j))]));
            dim += 1;
        }
        word
    }

    fn generator_for(&self, m: MorphismId) -> GeneratorId {
        self.generators.iter().position(|g| g.morphism == m).expect("generator")
    }

    /// Recomposes a generator word.
    pub fn compose_word(&self, source: ObjectId, word: &[GeneratorId]) -> MorphismId {
        let mut acc = self.identity(source);
        for &g in word.iter().rev() {
            acc = self.compose(self.generators[g].morphism, acc).expect("composable word");
        }
        acc
    }

    /// Checks identities, associativity and that generator words recompose.
    pub fn validate(&self) -> Result<(), CategoryError> {
        let m = self.morphisms.len();
        for f in 0..m {
            let Morphism { source, target, .. } = self.morphisms[f];
            if self.compose(f, self.identity(source)) != Some(f) || self.compose(self.identity(target), f) != Some(f) {
                return Err(CategoryError::LawViolation(format!("identity law fails at morphism {f}")));
            }
            if let Some(map) = &self.morphisms[f].map {
                if map.len() != source + 1 || map.iter().any(|&v| v > target) || !is_monotone(map) {
                    return Err(CategoryError::LawViolation(format!("morphism {f} is not monotone")));
                }
            }
            if self.compose_word(source, &self.words[f]) != f {
                return Err(CategoryError::LawViolation(format!("generator word of {f} does not recompose")));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose(h, g) else { continue };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CategoryError::LawViolation(format!(
                            "associativity fails at ({f}, {g}, {h})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable name for a morphism: vertex tuple for simplex maps,
    /// generator name or `id_X` otherwise.
    pub fn morphism_label(&self, f: MorphismId) -> String {
        let mor = &self.morphisms[f];
        match &mor.map {
            Some(map) => tuple_label(map),
            None if self.is_identity(f) => format!("id_{}", self.objects[mor.source].name),
            None => self.generators[self.words[f][0]].name.clone(),
        }
    }
}

/// Prints a monotone map as a vertex tuple such as `(0,2)`.
pub fn tuple_label(map: &[usize]) -> String {
    let parts: Vec<String> = map.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("set".parse::<CategoryKind>().unwrap(), CategoryKind::SemiSimplex(0));
        assert_eq!("semi:2".parse::<CategoryKind>().unwrap(), CategoryKind::SemiSimplex(2));
        assert_eq!("SSET:3".parse::<CategoryKind>().unwrap(), CategoryKind::Simplex(3));
        assert_eq!("bicolgraph".parse::<CategoryKind>().unwrap(), CategoryKind::BiColGraph);
        assert!("cube:2".parse::<CategoryKind>().is_err());
        assert!("semi:x".parse::<CategoryKind>().is_err());
        for kind in [CategoryKind::Simplex(2), CategoryKind::Graph, CategoryKind::SemiSimplex(0)] {
            assert_eq!(kind.to_string().parse::<CategoryKind>().unwrap(), kind);
        }
    }

    #[test]
    fn refuses_large_dimension() {
        let err = build_index_category(CategoryKind::SemiSimplex(5), 4).unwrap_err();
        assert_eq!(err, CategoryError::DimensionTooLarge { requested: 5, maximum: 4 });
        assert!(build_index_category(CategoryKind::SemiSimplex(5), 5).is_ok());
    }

    #[test]
    fn graph_edge_has_source_and_target() {
        let c = CategoryKind::Graph.build().unwrap();
        let hom: Vec<_> = c.hom(0, 1).iter().map(|&f| c.morphism(f).map.clone().unwrap()).collect();
        assert_eq!(hom.len(), 2);
        assert!(hom.contains(&face_map(1, 1)) && hom.contains(&face_map(1, 0)));
        let s = c.generator_by_name("s").unwrap();
        assert_eq!(c.morphism(c.generator(s).morphism).map.as_deref(), Some(&[0usize][..]));
        assert_eq!(c.faces_into(1).iter().map(|&g| c.generator(g).name.as_str()).collect::<Vec<_>>(), ["s", "t"]);
    }

    #[test]
    fn refl_is_a_section_of_source_and_target() {
        let c = CategoryKind::ReflGraph.build().unwrap();
        let refl = c.degeneracy(0, 0).unwrap();
        for i in 0..2 {
            assert_eq!(c.compose(refl, c.face(1, i).unwrap()), Some(c.identity(0)));
        }
        assert_eq!(c.hom(1, 1).len(), 3);
    }

    #[test]
    fn semi_hom_counts_are_binomial() {
        let c = CategoryKind::SemiSimplex(4).build().unwrap();
        for k in 0..=4 {
            for l in 0..=4 {
                assert_eq!(c.hom(k, l).len(), binom(l + 1, k + 1), "hom({k},{l})");
            }
        }
        let s = CategoryKind::Simplex(3).build().unwrap();
        for k in 0..=3 {
            for l in 0..=3 {
                // Monotone maps [k] -> [l] are multisets of size k+1 from l+1 values.
                assert_eq!(s.hom(k, l).len(), binom(l + k + 1, k + 1));
            }
        }
    }

    #[test]
    fn simplicial_identities() {
        let n = 4;
        let c = CategoryKind::Simplex(n).build().unwrap();
        let d = |k: usize, i: usize| c.face(k, i).unwrap();
        let s = |k: usize, i: usize| c.degeneracy(k, i).unwrap();
        // In the covariant reading: δ_j δ_i = δ_i δ_{j-1} for i < j.
        for k in 2..=n {
            for j in 0..=k {
                for i in 0..j {
                    assert_eq!(c.compose(d(k, j), d(k - 1, i)), c.compose(d(k, i), d(k - 1, j - 1)));
                }
            }
        }
        for k in 0..n {
            for j in 0..=k {
                for i in 0..=k + 1 {
                    // σ_j δ_i : [k] -> [k+1] -> [k]
                    let lhs = c.compose(s(k, j), d(k + 1, i)).unwrap();
                    let expected = if i < j {
                        c.compose(d(k, i), s(k - 1, j - 1))
                    } else if i == j || i == j + 1 {
                        Some(c.identity(k))
                    } else {
                        c.compose(d(k, i - 1), s(k - 1, j))
                    };
                    assert_eq!(Some(lhs), expected, "s{k}_{j} d{}_{i}", k + 1);
                }
            }
        }
        for k in 0..n - 1 {
            for j in 0..=k {
                for i in 0..=j {
                    // σ_j σ_{i} = σ_i σ_{j+1} for i <= j
                    assert_eq!(c.compose(s(k, j), s(k + 1, i)), c.compose(s(k, i), s(k + 1, j + 1)));
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let c = CategoryKind::Simplex(2).build().unwrap();
        for k in 0..=2 {
            assert_eq!(c.normal_form(c.identity(k)).unwrap(), NormalForm { faces: vec![], degeneracies: vec![] });
        }
        let constant = c.morphism_by_map(1, 0, &[0, 0]).unwrap();
        assert_eq!(c.normal_form(constant).unwrap(), NormalForm { faces: vec![], degeneracies: vec![0] });
        // s_1 after either d_1 or d_2 is the identity: one canonical form.
        for i in [1, 2] {
            let f = c.compose(c.degeneracy(1, 1).unwrap(), c.face(2, i).unwrap()).unwrap();
            assert_eq!(f, c.identity(1));
            assert_eq!(c.normal_form(f).unwrap(), NormalForm { faces: vec![], degeneracies: vec![] });
        }
        let g = c.compose(c.degeneracy(1, 0).unwrap(), c.face(2, 2).unwrap()).unwrap();
        assert_eq!(c.normal_form(g).unwrap(), NormalForm { faces: vec![1], degeneracies: vec![0] });
    }

    #[test]
    fn normal_form_is_a_bijection() {
        for kind in [CategoryKind::Simplex(3), CategoryKind::SemiSimplex(3)] {
            let c = kind.build().unwrap();
            let mut seen = std::collections::HashSet::new();
            for f in 0..c.morphism_count() {
                let nf = c.normal_form(f).unwrap();
                assert_eq!(c.from_normal_form(c.morphism(f).source, &nf), Some(f));
                assert!(seen.insert((c.morphism(f).source, nf)));
            }
            // Every valid index pair lands on some morphism.
            for source in 0..=3usize {
                for t in 0..=source {
                    for degs in itertools::Itertools::combinations(0..source, t) {
                        let dim = source - t;
                        for s in 0..=3usize.saturating_sub(dim) {
                            for mut faces in itertools::Itertools::combinations(0..=dim + s, s) {
                                faces.reverse();
                                let nf = NormalForm { faces, degeneracies: degs.clone() };
                                let found = c.from_normal_form(source, &nf);
                                if kind.has_degeneracies() || t == 0 {
                                    assert!(found.is_some(), "{source} {nf:?}");
                                } else {
                                    assert!(found.is_none());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bicolor_shape() {
        let c = CategoryKind::BiColGraph.build().unwrap();
        assert_eq!(c.morphism_count(), 7);
        assert_eq!(c.hom(0, 1).len(), 2);
        assert_eq!(c.hom(0, 2).len(), 2);
        assert!(c.hom(1, 2).is_empty());
        assert!(c.normal_form(3).is_none());
        assert_eq!(c.morphism_label(0), "id_V");
        assert_eq!(c.morphism_label(5), "s'");
    }
}
