//! JSON input documents.
//!
//! A document that refers to another (a subobject's presheaf, a fuzzy set's
//! algebra) may give it inline or as a path relative to its own directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use lawvere::fincat::{CategoryKind, FiniteIndexCategory};
use lawvere::fuzzy::FuzzySet;
use lawvere::lattice::{FiniteHeytingAlgebra, Nucleus, PartialOrder};
use lawvere::presheaf::{FinitePresheaf, Subpresheaf};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: malformed document: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

/// Either an inline document or a path to one.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub category: String,
    #[serde(default)]
    pub levels: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubobjectDoc {
    pub of: Ref<PresheafDoc>,
    #[serde(default)]
    pub levels: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeytingDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySetDoc {
    pub algebra: Ref<HeytingDoc>,
    pub carrier: Vec<String>,
    pub membership: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleusDoc {
    pub algebra: Ref<HeytingDoc>,
    pub map: BTreeMap<String, String>,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, DocError> {
    let text = fs::read_to_string(path).map_err(|source| DocError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| DocError::Json { path: path.display().to_string(), source })
}

fn invalid(path: &Path, message: impl ToString) -> DocError {
    DocError::Invalid { path: path.display().to_string(), message: message.to_string() }
}

fn resolve<T: DeserializeOwned>(base: &Path, r: Ref<T>) -> Result<(T, PathBuf), DocError> {
    match r {
        Ref::Inline(t) => Ok((t, base.to_path_buf())),
        Ref::Path(p) => {
            let full = base.parent().unwrap_or(Path::new(".")).join(p);
            Ok((read(&full)?, full))
        }
    }
}

pub fn load_presheaf(path: &Path) -> Result<FinitePresheaf, DocError> {
    build_presheaf(path, read(path)?)
}

fn build_presheaf(path: &Path, doc: PresheafDoc) -> Result<FinitePresheaf, DocError> {
    let kind: CategoryKind = doc.category.parse().map_err(|e| invalid(path, e))?;
    let c: Arc<FiniteIndexCategory> = kind.build().map_err(|e| invalid(path, e))?;
    let mut names = vec![Vec::new(); c.object_count()];
    for (obj, elems) in doc.levels {
        let o = c.object_by_name(&obj).map_err(|e| invalid(path, e))?;
        names[o] = elems;
    }
    let mut actions = Vec::new();
    for g in c.generators() {
        let m = c.morphism(g.morphism);
        let table = doc.actions.get(&g.name);
        let mut row = Vec::new();
        for x in &names[m.target] {
            let image = table
                .and_then(|t| t.get(x))
                .ok_or_else(|| invalid(path, format!("generator {} has no image for `{x}`", g.name)))?;
            let i = names[m.source]
                .iter()
                .position(|n| n == image)
                .ok_or_else(|| invalid(path, format!("generator {} sends `{x}` to unknown element `{image}`", g.name)))?;
            row.push(i);
        }
        actions.push(row);
    }
    if let Some(unknown) = doc.actions.keys().find(|k| c.generator_by_name(k).is_none()) {
        return Err(invalid(path, format!("unknown generator `{unknown}`")));
    }
    FinitePresheaf::from_generator_actions(c, names, actions).map_err(|e| invalid(path, e))
}

/// Loads a subobject and the presheaf it refers to.
pub fn load_subobject(path: &Path) -> Result<(FinitePresheaf, Subpresheaf), DocError> {
    let doc: SubobjectDoc = read(path)?;
    let (pdoc, ppath) = resolve(path, doc.of)?;
    let p = build_presheaf(&ppath, pdoc)?;
    let sub = subobject_of(path, &p, &doc.levels)?;
    Ok((p, sub))
}

/// Resolves a subobject document's element lists against a given presheaf.
pub fn subobject_of(path: &Path, p: &FinitePresheaf, levels: &BTreeMap<String, Vec<String>>) -> Result<Subpresheaf, DocError> {
    let c = p.category();
    let mut local = vec![Vec::new(); c.object_count()];
    for (obj, elems) in levels {
        let o = c.object_by_name(obj).map_err(|e| invalid(path, e))?;
        for e in elems {
            local[o].push(p.element_by_name(o, e).map_err(|err| invalid(path, err))?);
        }
    }
    p.subpresheaf_from_levels(&local).map_err(|e| invalid(path, e))
}

/// Reads only the element lists of a subobject document.
pub fn load_subobject_levels(path: &Path) -> Result<BTreeMap<String, Vec<String>>, DocError> {
    let doc: SubobjectDoc = read(path)?;
    Ok(doc.levels)
}

fn build_algebra(path: &Path, doc: HeytingDoc) -> Result<FiniteHeytingAlgebra, DocError> {
    let order = PartialOrder::from_named_covers(doc.elements, &doc.covers).map_err(|e| invalid(path, e))?;
    FiniteHeytingAlgebra::new(order).map_err(|e| invalid(path, e))
}

pub fn load_fuzzy_set(path: &Path) -> Result<FuzzySet, DocError> {
    let doc: FuzzySetDoc = read(path)?;
    let (adoc, apath) = resolve(path, doc.algebra)?;
    let l = Arc::new(build_algebra(&apath, adoc)?);
    let mut membership = Vec::new();
    for name in &doc.carrier {
        let m = doc.membership.get(name).ok_or_else(|| invalid(path, format!("no membership for `{name}`")))?;
        membership.push(l.element(m).map_err(|e| invalid(path, e))?);
    }
    if let Some(extra) = doc.membership.keys().find(|k| !doc.carrier.contains(k)) {
        return Err(invalid(path, format!("membership given for `{extra}`, which is not in the carrier")));
    }
    FuzzySet::new(l, doc.carrier, membership).map_err(|e| invalid(path, e))
}

/// Loads a nucleus; its algebra must match `algebra` element-for-element.
pub fn load_nucleus(path: &Path, algebra: &Arc<FiniteHeytingAlgebra>) -> Result<Nucleus, DocError> {
    let doc: NucleusDoc = read(path)?;
    let (adoc, apath) = resolve(path, doc.algebra)?;
    let own = build_algebra(&apath, adoc)?;
    if own != **algebra {
        return Err(invalid(path, "nucleus algebra differs from the fuzzy set's algebra"));
    }
    let map = algebra
        .elements()
        .map(|x| {
            let name = algebra.name(x);
            let image = doc.map.get(name).ok_or_else(|| invalid(path, format!("no image for `{name}`")))?;
            algebra.element(image).map_err(|e| invalid(path, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Nucleus::new(algebra.clone(), map).map_err(|e| invalid(path, e))
}
