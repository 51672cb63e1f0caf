//! Lawvere-Tierney topologies on the classifying object `Ω`.
//!
//! A topology is one endomap per level of `Ω`. Equality is extensional: two
//! topologies are equal when their level maps agree, whatever their tags.
//!
//! The family `j^w` is built from one bit per object. For simplex shapes the
//! bits are the characters of `w`, dimension 0 first. For the bicolored shape
//! the label `ab` gives bit `a` to `V`, bit `b & 1` to `E` and bit `b >> 1`
//! to `E'`.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{CategoryKind, FiniteIndexCategory, ObjectId};
use crate::omega::{IncidenceLookup, OmegaError, OmegaObject, SieveId};
use crate::presheaf::{DegeneracyTranslation, PresheafError};

/// Default cap on `|Ω(c)|^|Ω(c)|` for brute-force enumeration.
pub const DEFAULT_BRUTE_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TopologyTag {
    /// Bit string `w`, one character per dimension starting at 0.
    Bits(String),
    /// Two-digit label `ab` for the bicolored shape.
    BiColLabel(String),
}

impl fmt::Display for TopologyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyTag::Bits(w) | TopologyTag::BiColLabel(w) => write!(f, "{w}"),
        }
    }
}

/// A failed naturality square `Ω(u) ∘ j = j ∘ Ω(u)` at one sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityWitness {
    pub generator: String,
    /// Level the sieve lives on (the target of the generator).
    pub level: ObjectId,
    pub sieve: SieveId,
    /// `j(Ω(u)(x))`
    pub j_after_action: SieveId,
    /// `Ω(u)(j(x))`
    pub action_after_j: SieveId,
    /// The same four values as sieve summaries.
    pub description: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyViolation {
    #[error("level {level} map has the wrong length or values")]
    Shape { level: ObjectId },
    #[error("j(True) is not True at level {level}")]
    True { level: ObjectId },
    #[error("j is not idempotent at level {level}, sieve {sieve}")]
    Idempotent { level: ObjectId, sieve: SieveId },
    #[error("j does not preserve the meet of {a} and {b} at level {level}")]
    Meet { level: ObjectId, a: SieveId, b: SieveId },
    #[error("naturality fails: {}", .0.description)]
    Naturality(NaturalityWitness),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("invalid tag `{tag}` for {category}: {reason}")]
    BadTag { tag: String, category: String, reason: String },
    #[error("j^{tag} is not a topology here because it contains \"10\": {witness}")]
    DegeneracyRejected { tag: String, witness: TopologyViolation },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("brute-force space {space} at level {level} exceeds the budget {budget}; use the constrained method")]
    BudgetExceeded { level: String, space: String, budget: u128 },
    #[error("not a topology: {0}")]
    Invalid(TopologyViolation),
    #[error("serialized topology is for {found}, expected {expected}")]
    CategoryMismatch { expected: String, found: String },
}

/// A topology given by its level maps.
#[derive(Clone, Debug)]
pub struct LTTopology {
    omega: Arc<OmegaObject>,
    maps: Vec<Vec<SieveId>>,
    tag: Option<TopologyTag>,
}

impl PartialEq for LTTopology {
    fn eq(&self, other: &Self) -> bool {
        self.maps == other.maps
    }
}

impl Eq for LTTopology {}

impl LTTopology {
    /// Wraps level maps after checking the axioms and naturality.
    pub fn new(omega: Arc<OmegaObject>, maps: Vec<Vec<SieveId>>, tag: Option<TopologyTag>) -> Result<Self, TopologyError> {
        verify_maps(&omega, &maps).map_err(TopologyError::Invalid)?;
        Ok(LTTopology { omega, maps, tag })
    }

    /// Wraps level maps without any check.
    pub fn from_maps_unchecked(omega: Arc<OmegaObject>, maps: Vec<Vec<SieveId>>, tag: Option<TopologyTag>) -> Self {
        LTTopology { omega, maps, tag }
    }

    pub fn discrete(omega: Arc<OmegaObject>) -> Self {
        let maps = omega.levels().iter().map(|l| (0..l.size()).collect()).collect();
        LTTopology { omega, maps, tag: None }
    }

    pub fn trivial(omega: Arc<OmegaObject>) -> Self {
        let maps = omega.levels().iter().map(|l| vec![l.top(); l.size()]).collect();
        LTTopology { omega, maps, tag: None }
    }

    pub fn omega(&self) -> &Arc<OmegaObject> {
        &self.omega
    }

    pub fn maps(&self) -> &[Vec<SieveId>] {
        &self.maps
    }

    pub fn level_map(&self, k: ObjectId) -> &[SieveId] {
        &self.maps[k]
    }

    pub fn apply(&self, k: ObjectId, x: SieveId) -> SieveId {
        self.maps[k][x]
    }

    pub fn tag(&self) -> Option<&TopologyTag> {
        self.tag.as_ref()
    }

    pub fn with_tag(mut self, tag: Option<TopologyTag>) -> Self {
        self.tag = tag;
        self
    }

    /// One bit per object read off the behaviour: whether `j(∂y(c)) = y(c)`.
    pub fn object_bits(&self) -> Vec<bool> {
        (0..self.omega.category().object_count())
            .map(|c| self.maps[c][self.omega.boundary_sieve(c)] == self.omega.top(c))
            .collect()
    }

    /// Tag derived from [`LTTopology::object_bits`].
    pub fn behavioural_tag(&self) -> TopologyTag {
        tag_for_bits(self.omega.category(), &self.object_bits())
    }

    pub fn to_record(&self) -> TopologyRecord {
        TopologyRecord {
            category: self.omega.category().kind().to_string(),
            tag: self.tag.as_ref().map(ToString::to_string),
            levels: self.maps.clone(),
        }
    }

    /// Rebuilds a topology from its serialized form, verifying it.
    pub fn from_record(omega: Arc<OmegaObject>, record: &TopologyRecord) -> Result<Self, TopologyError> {
        let expected = omega.category().kind().to_string();
        if record.category != expected {
            return Err(TopologyError::CategoryMismatch { expected, found: record.category.clone() });
        }
        let tag = match &record.tag {
            None => None,
            Some(t) => Some(parse_tag(omega.category(), t)?.0),
        };
        Self::new(omega, record.levels.clone(), tag)
    }
}

/// Serialized topology: category kind, optional tag, explicit level maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyRecord {
    pub category: String,
    pub tag: Option<String>,
    pub levels: Vec<Vec<SieveId>>,
}

/// Parses a tag into per-object bits.
pub fn parse_tag(c: &FiniteIndexCategory, tag: &str) -> Result<(TopologyTag, Vec<bool>), TopologyError> {
    let bad = |reason: &str| TopologyError::BadTag {
        tag: tag.to_string(),
        category: c.kind().to_string(),
        reason: reason.to_string(),
    };
    let t = tag.trim().trim_start_matches("j^").trim_start_matches('j');
    match c.kind() {
        CategoryKind::BiColGraph => {
            let digits: Vec<u32> = t.chars().map(|ch| ch.to_digit(10)).collect::<Option<_>>().ok_or_else(|| bad("not digits"))?;
            match digits.as_slice() {
                &[a, b] if a <= 1 && b <= 3 => Ok((
                    TopologyTag::BiColLabel(t.to_string()),
                    vec![a == 1, b & 1 == 1, b >> 1 == 1],
                )),
                _ => Err(bad("expected two digits ab with a in 0..=1 and b in 0..=3")),
            }
        }
        _ => {
            if t.len() != c.object_count() {
                return Err(bad(&format!("expected {} bits", c.object_count())));
            }
            let bits = t
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad("bits must be 0 or 1")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((TopologyTag::Bits(t.to_string()), bits))
        }
    }
}

/// Inverse of [`parse_tag`].
pub fn tag_for_bits(c: &FiniteIndexCategory, bits: &[bool]) -> TopologyTag {
    match c.kind() {
        CategoryKind::BiColGraph => {
            let b = bits[1] as u8 + 2 * bits[2] as u8;
            TopologyTag::BiColLabel(format!("{}{}", bits[0] as u8, b))
        }
        _ => TopologyTag::Bits(bits.iter().map(|&b| if b { '1' } else { '0' }).collect()),
    }
}

/// Checks the three axioms on every level, then naturality.
pub fn verify_topology(j: &LTTopology) -> Result<(), TopologyViolation> {
    verify_maps(&j.omega, &j.maps)
}

fn verify_maps(omega: &OmegaObject, maps: &[Vec<SieveId>]) -> Result<(), TopologyViolation> {
    let c = omega.category();
    if maps.len() != c.object_count() {
        return Err(TopologyViolation::Shape { level: maps.len().min(c.object_count()) });
    }
    for k in 0..c.object_count() {
        check_level(omega, k, &maps[k])?;
    }
    for g in 0..c.generators().len() {
        check_naturality(omega, maps, g)?;
    }
    Ok(())
}

fn check_level(omega: &OmegaObject, k: ObjectId, map: &[SieveId]) -> Result<(), TopologyViolation> {
    let n = omega.level(k).size();
    if map.len() != n || map.iter().any(|&v| v >= n) {
        return Err(TopologyViolation::Shape { level: k });
    }
    if map[omega.top(k)] != omega.top(k) {
        return Err(TopologyViolation::True { level: k });
    }
    for x in 0..n {
        if map[map[x]] != map[x] {
            return Err(TopologyViolation::Idempotent { level: k, sieve: x });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if map[omega.meet(k, a, b)] != omega.meet(k, map[a], map[b]) {
                return Err(TopologyViolation::Meet { level: k, a, b });
            }
        }
    }
    Ok(())
}

fn check_naturality(omega: &OmegaObject, maps: &[Vec<SieveId>], generator: usize) -> Result<(), TopologyViolation> {
    let c = omega.category();
    let g = c.generator(generator);
    let m = c.morphism(g.morphism);
    for x in 0..omega.level(m.target).size() {
        let lhs = maps[m.source][omega.act(g.morphism, x)];
        let rhs = omega.act(g.morphism, maps[m.target][x]);
        if lhs != rhs {
            let description = format!(
                "along {}: x = {} at level {}, j({}(x)) = {} but {}(j(x)) = {}",
                g.name,
                omega.sieve_summary(m.target, x),
                c.object(m.target).name,
                g.name,
                omega.sieve_summary(m.source, lhs),
                g.name,
                omega.sieve_summary(m.source, rhs),
            );
            return Err(TopologyViolation::Naturality(NaturalityWitness {
                generator: g.name.clone(),
                level: m.target,
                sieve: x,
                j_after_action: lhs,
                action_after_j: rhs,
                description,
            }));
        }
    }
    Ok(())
}

/// Builds the level maps of `j^w` from per-object bits by induction on grade.
///
/// Objects without faces get the identity (bit 0) or constant `True` (bit 1).
/// Above that, a non-top sieve `x` goes to the unique sieve whose incidence
/// tuple is `(j(d_i x))_i`, unless that tuple is all-top, in which case it goes
/// to `y` (bit 1) or `∂y` (bit 0).
pub fn build_jw_maps(omega: &OmegaObject, bits: &[bool]) -> Result<Vec<Vec<SieveId>>, TopologyError> {
    let c = omega.category();
    let mut maps: Vec<Vec<SieveId>> = vec![Vec::new(); c.object_count()];
    for k in c.objects_by_grade() {
        let level = omega.level(k);
        let faces = c.faces_into(k);
        if faces.is_empty() {
            maps[k] = if bits[k] { vec![level.top(); level.size()] } else { (0..level.size()).collect() };
            continue;
        }
        let boundary = omega.boundary_sieve(k);
        let mut map = Vec::with_capacity(level.size());
        for x in 0..level.size() {
            if x == level.top() {
                map.push(x);
                continue;
            }
            let z: Vec<SieveId> = faces
                .iter()
                .map(|&g| {
                    let d = c.generator(g).morphism;
                    maps[c.morphism(d).source][omega.act(d, x)]
                })
                .collect();
            let all_top = faces.iter().zip(&z).all(|(&g, &v)| v == omega.top(c.morphism(c.generator(g).morphism).source));
            if all_top {
                map.push(if bits[k] { level.top() } else { boundary });
                continue;
            }
            match omega.unique_with_incidence(k, &z)? {
                IncidenceLookup::Unique(v) => map.push(v),
                other => {
                    return Err(TopologyError::Construction(format!(
                        "sieve {} at level {}: incidence tuple {z:?} gives {other:?}",
                        omega.sieve_summary(k, x),
                        c.object(k).name
                    )))
                }
            }
        }
        maps[k] = map;
    }
    Ok(maps)
}

/// The topology `j^w` for a tag.
///
/// On categories with degeneracies a tag containing `10` is rejected, and the
/// failed naturality square of the would-be construction is returned.
pub fn construct_jw(omega: &Arc<OmegaObject>, tag: &str) -> Result<LTTopology, TopologyError> {
    let (tag, bits) = parse_tag(omega.category(), tag)?;
    let maps = build_jw_maps(omega, &bits)?;
    match verify_maps(omega, &maps) {
        Ok(()) => Ok(LTTopology { omega: omega.clone(), maps, tag: Some(tag) }),
        Err(witness) if omega.category().kind().has_degeneracies() => {
            Err(TopologyError::DegeneracyRejected { tag: tag.to_string(), witness })
        }
        Err(v) => Err(TopologyError::Construction(format!("j^{tag} fails verification: {v}"))),
    }
}

/// Every tag the category admits, valid or not.
pub fn all_tags(c: &FiniteIndexCategory) -> Vec<String> {
    match c.kind() {
        CategoryKind::BiColGraph => (0..2).flat_map(|a| (0..4).map(move |b| format!("{a}{b}"))).collect(),
        _ => {
            let n = c.object_count();
            (0..1u32 << n)
                .map(|m| (0..n).map(|i| if m >> (n - 1 - i) & 1 == 1 { '1' } else { '0' }).collect())
                .collect()
        }
    }
}

/// Whether a bit string avoids the substring `10`.
pub fn is_monotone_bits(w: &str) -> bool {
    !w.contains("10")
}

/// How to enumerate topologies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMethod {
    /// Exhaustive over every level function, filtered by the axioms.
    Brute { budget: u128 },
    /// Forced by incidence tuples except on the all-top fibre.
    Constrained,
}

/// All topologies, sorted by their level maps and tagged by behaviour.
pub fn enumerate_topologies(omega: &Arc<OmegaObject>, method: EnumerationMethod) -> Result<Vec<LTTopology>, TopologyError> {
    let mut maps = match method {
        EnumerationMethod::Brute { budget } => brute_enumerate(omega, budget)?,
        EnumerationMethod::Constrained => constrained_enumerate(omega)?,
    };
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|m| {
            let j = LTTopology { omega: omega.clone(), maps: m, tag: None };
            let tag = j.behavioural_tag();
            j.with_tag(Some(tag))
        })
        .collect())
}

fn brute_enumerate(omega: &OmegaObject, budget: u128) -> Result<Vec<Vec<Vec<SieveId>>>, TopologyError> {
    let c = omega.category();
    let mut per_level = Vec::new();
    for k in 0..c.object_count() {
        let n = omega.level(k).size();
        let space = (n as u128).checked_pow(n as u32);
        if space.map_or(true, |s| s > budget) {
            return Err(TopologyError::BudgetExceeded {
                level: c.object(k).name.clone(),
                space: format!("{n}^{n}"),
                budget,
            });
        }
        // Odometer over all functions Ω(k) -> Ω(k).
        let mut valid = Vec::new();
        let mut f = vec![0; n];
        loop {
            if check_level(omega, k, &f).is_ok() {
                valid.push(f.clone());
            }
            let mut i = 0;
            while i < n && f[i] == n - 1 {
                f[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            f[i] += 1;
        }
        per_level.push(valid);
    }
    let mut out = Vec::new();
    let mut current: Vec<Vec<SieveId>> = vec![Vec::new(); c.object_count()];
    combine_levels(omega, &per_level, 0, &mut current, &mut out);
    Ok(out)
}

fn combine_levels(
    omega: &OmegaObject,
    per_level: &[Vec<Vec<SieveId>>],
    k: usize,
    current: &mut Vec<Vec<SieveId>>,
    out: &mut Vec<Vec<Vec<SieveId>>>,
) {
    if k == per_level.len() {
        out.push(current.clone());
        return;
    }
    for candidate in &per_level[k] {
        current[k] = candidate.clone();
        if naturality_upto(omega, current, k) {
            combine_levels(omega, per_level, k + 1, current, out);
        }
    }
}

/// Naturality for generators whose ends are both among objects `0..=k`.
fn naturality_upto(omega: &OmegaObject, maps: &[Vec<SieveId>], k: ObjectId) -> bool {
    let c = omega.category();
    (0..c.generators().len()).all(|g| {
        let m = c.morphism(c.generator(g).morphism);
        m.source.max(m.target) != k || check_naturality(omega, maps, g).is_ok()
    })
}

fn constrained_enumerate(omega: &OmegaObject) -> Result<Vec<Vec<Vec<SieveId>>>, TopologyError> {
    let c = omega.category();
    let order = c.objects_by_grade();
    let mut out = Vec::new();
    let mut maps: Vec<Vec<SieveId>> = vec![Vec::new(); c.object_count()];
    let mut assigned = vec![false; c.object_count()];
    constrained_step(omega, &order, 0, &mut maps, &mut assigned, &mut out)?;
    Ok(out)
}

fn constrained_step(
    omega: &OmegaObject,
    order: &[ObjectId],
    pos: usize,
    maps: &mut Vec<Vec<SieveId>>,
    assigned: &mut Vec<bool>,
    out: &mut Vec<Vec<Vec<SieveId>>>,
) -> Result<(), TopologyError> {
    if pos == order.len() {
        if verify_maps(omega, maps).is_ok() {
            out.push(maps.clone());
        }
        return Ok(());
    }
    let k = order[pos];
    for candidate in level_candidates(omega, maps, k)? {
        maps[k] = candidate;
        assigned[k] = true;
        let c = omega.category();
        let consistent = check_level(omega, k, &maps[k]).is_ok()
            && (0..c.generators().len()).all(|g| {
                let m = c.morphism(c.generator(g).morphism);
                !(assigned[m.source] && assigned[m.target]) || check_naturality(omega, maps, g).is_ok()
            });
        if consistent {
            constrained_step(omega, order, pos + 1, maps, assigned, out)?;
        }
        assigned[k] = false;
    }
    maps[k] = Vec::new();
    Ok(())
}

/// Candidate level maps at `k` given the maps on lower grades.
fn level_candidates(omega: &OmegaObject, maps: &[Vec<SieveId>], k: ObjectId) -> Result<Vec<Vec<SieveId>>, TopologyError> {
    let c = omega.category();
    let level = omega.level(k);
    let faces = c.faces_into(k);
    if faces.is_empty() {
        // Nothing constrains this level from below: filter all functions.
        let n = level.size();
        if (n as u128).checked_pow(n as u32).map_or(true, |s| s > DEFAULT_BRUTE_BUDGET) {
            return Err(TopologyError::BudgetExceeded {
                level: c.object(k).name.clone(),
                space: format!("{n}^{n}"),
                budget: DEFAULT_BRUTE_BUDGET,
            });
        }
        let mut valid = Vec::new();
        let mut f = vec![0; n];
        loop {
            if check_level(omega, k, &f).is_ok() {
                valid.push(f.clone());
            }
            let Some(i) = (0..n).find(|&i| f[i] + 1 < n) else { break };
            f[i] += 1;
            f[..i].iter_mut().for_each(|v| *v = 0);
        }
        return Ok(valid);
    }
    let boundary = omega.boundary_sieve(k);
    let top = level.top();
    let mut forced = vec![usize::MAX; level.size()];
    let mut fibre = Vec::new();
    for x in 0..level.size() {
        if x == top {
            forced[x] = top;
            continue;
        }
        let z: Vec<SieveId> = faces
            .iter()
            .map(|&g| {
                let d = c.generator(g).morphism;
                maps[c.morphism(d).source][omega.act(d, x)]
            })
            .collect();
        match omega.unique_with_incidence(k, &z)? {
            IncidenceLookup::Unique(v) => forced[x] = v,
            IncidenceLookup::Ambiguous(_) => fibre.push(x),
            IncidenceLookup::Missing => return Ok(Vec::new()),
        }
    }
    // ∂y first: its image bounds the rest of the fibre by monotonicity, and
    // idempotence rules out ∂y elsewhere once j(∂y) = y.
    fibre.sort_by_key(|&x| x != boundary);
    let mut out = Vec::new();
    fibre_choices(omega, k, &fibre, 0, &mut forced, boundary, top, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fibre_choices(
    omega: &OmegaObject,
    k: ObjectId,
    fibre: &[SieveId],
    pos: usize,
    map: &mut Vec<SieveId>,
    boundary: SieveId,
    top: SieveId,
    out: &mut Vec<Vec<SieveId>>,
) {
    if pos == fibre.len() {
        out.push(map.clone());
        return;
    }
    let x = fibre[pos];
    for v in [boundary, top] {
        if x != boundary && map[boundary] != usize::MAX {
            let jb = map[boundary];
            if omega.leq(k, x, boundary) && !omega.leq(k, v, jb) {
                continue;
            }
            if v == boundary && jb != boundary {
                continue;
            }
        }
        map[x] = v;
        fibre_choices(omega, k, fibre, pos + 1, map, boundary, top, out);
    }
    map[x] = usize::MAX;
}

/// Transports a topology on a face-only `Ω` to the matching category with
/// degeneracies and checks naturality there, including with every degeneracy.
pub fn degeneracy_compatible(j: &LTTopology, full_omega: &Arc<OmegaObject>) -> Result<LTTopology, TopologyError> {
    let semi = j.omega.category();
    let full = full_omega.category();
    let mut maps = Vec::new();
    for k in 0..full.object_count() {
        let t = DegeneracyTranslation::new(semi.clone(), full.clone(), k)?;
        let (semi_level, full_level) = (j.omega.level(k), full_omega.level(k));
        let map = (0..full_level.size())
            .map(|x| {
                let plus = t.strip_degeneracies(full_level.sieve(x));
                let image = j.maps[k][semi_level.lookup(&plus).expect("stripped sieve")];
                full_level.lookup(&t.add_degeneracies(semi_level.sieve(image))).expect("F maps sieves to sieves")
            })
            .collect();
        maps.push(map);
    }
    verify_maps(full_omega, &maps).map_err(TopologyError::Invalid)?;
    Ok(LTTopology { omega: full_omega.clone(), maps, tag: j.tag.clone() })
}

/// Drops the top dimension: restricts a topology on dimension `N` to the
/// `Ω` of dimension `N - 1` for the same family.
pub fn restrict_to(j: &LTTopology, smaller: &Arc<OmegaObject>) -> Result<LTTopology, TopologyError> {
    let big = j.omega.category();
    let small = smaller.category();
    let compatible = match (big.kind(), small.kind()) {
        (CategoryKind::SemiSimplex(n), CategoryKind::SemiSimplex(m)) | (CategoryKind::Simplex(n), CategoryKind::Simplex(m)) => {
            n == m + 1
        }
        _ => false,
    };
    if !compatible {
        return Err(TopologyError::CategoryMismatch { expected: big.kind().to_string(), found: small.kind().to_string() });
    }
    let mut maps = Vec::new();
    for k in 0..small.object_count() {
        let (bl, sl) = (j.omega.level(k), smaller.level(k));
        // Truncate each big sieve to the elements that exist in the small y(k).
        let embed: Vec<(usize, usize, usize)> = (0..small.object_count())
            .flat_map(|l| {
                small.hom(l, k).iter().enumerate().map(move |(i, &f)| (l, i, f)).collect::<Vec<_>>()
            })
            .map(|(l, i, f)| {
                let bf = big.morphism_by_map(l, k, small.morphism(f).map.as_deref().unwrap()).unwrap();
                let bi = big.hom(l, k).iter().position(|&h| h == bf).unwrap();
                (sl.yoneda().global(l, i), l, bi)
            })
            .collect();
        let truncate = |x: SieveId| -> SieveId {
            let mut bits = FixedBitSet::with_capacity(sl.yoneda().total_size());
            for &(g, l, bi) in &embed {
                if bl.sieve(x).contains(bl.yoneda(), l, bi) {
                    bits.insert(g);
                }
            }
            sl.lookup(&sl.yoneda().subpresheaf(bits).expect("truncated sieve")).expect("sieve")
        };
        let mut preimage = vec![usize::MAX; sl.size()];
        for x in 0..bl.size() {
            let t = truncate(x);
            if preimage[t] != usize::MAX {
                return Err(TopologyError::Construction(format!("truncation is not injective at level {k}")));
            }
            preimage[t] = x;
        }
        if preimage.contains(&usize::MAX) {
            return Err(TopologyError::Construction(format!("truncation is not surjective at level {k}")));
        }
        maps.push((0..sl.size()).map(|s| truncate(j.maps[k][preimage[s]])).collect());
    }
    let tag = j.tag.as_ref().map(|t| match t {
        TopologyTag::Bits(w) => TopologyTag::Bits(w[..w.len() - 1].to_string()),
        other => other.clone(),
    });
    LTTopology::new(smaller.clone(), maps, tag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(kind: CategoryKind) -> Arc<OmegaObject> {
        Arc::new(OmegaObject::new(&kind.build().unwrap()).unwrap())
    }

    fn tags(ts: &[LTTopology]) -> Vec<String> {
        let mut v: Vec<String> = ts.iter().map(|t| t.tag().unwrap().to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn discrete_and_trivial_verify() {
        for kind in [CategoryKind::Graph, CategoryKind::Simplex(2), CategoryKind::BiColGraph] {
            let o = omega(kind);
            assert!(verify_topology(&LTTopology::discrete(o.clone())).is_ok());
            assert!(verify_topology(&LTTopology::trivial(o.clone())).is_ok());
            assert_eq!(construct_jw(&o, &"0".repeat(if kind == CategoryKind::BiColGraph { 2 } else { o.level_sizes().len() })).unwrap(), LTTopology::discrete(o));
        }
    }

    #[test]
    fn counts_on_small_categories() {
        let cases = [
            (CategoryKind::SemiSimplex(0), 2, true),
            (CategoryKind::Graph, 4, true),
            (CategoryKind::ReflGraph, 3, true),
            (CategoryKind::BiColGraph, 8, true),
            (CategoryKind::SemiSimplex(2), 8, false),
            (CategoryKind::Simplex(2), 4, false),
        ];
        for (kind, expected, brute) in cases {
            let o = omega(kind);
            let constrained = enumerate_topologies(&o, EnumerationMethod::Constrained).unwrap();
            assert_eq!(constrained.len(), expected, "{kind}");
            if brute {
                let b = enumerate_topologies(&o, EnumerationMethod::Brute { budget: DEFAULT_BRUTE_BUDGET }).unwrap();
                assert_eq!(b, constrained);
            } else {
                assert!(matches!(
                    enumerate_topologies(&o, EnumerationMethod::Brute { budget: DEFAULT_BRUTE_BUDGET }),
                    Err(TopologyError::BudgetExceeded { .. })
                ));
            }
        }
    }

    #[test]
    fn reflgraph_tags_are_monotone() {
        let o = omega(CategoryKind::ReflGraph);
        let ts = enumerate_topologies(&o, EnumerationMethod::Constrained).unwrap();
        assert_eq!(tags(&ts), ["00", "01", "11"]);
        let s2 = omega(CategoryKind::Simplex(2));
        assert_eq!(tags(&enumerate_topologies(&s2, EnumerationMethod::Constrained).unwrap()), ["000", "001", "011", "111"]);
        let b = omega(CategoryKind::BiColGraph);
        assert_eq!(
            tags(&enumerate_topologies(&b, EnumerationMethod::Constrained).unwrap()),
            ["00", "01", "02", "03", "10", "11", "12", "13"]
        );
    }

    #[test]
    fn enumerated_topologies_match_construction() {
        for kind in [CategoryKind::Graph, CategoryKind::BiColGraph, CategoryKind::SemiSimplex(2), CategoryKind::Simplex(2)] {
            let o = omega(kind);
            let found = enumerate_topologies(&o, EnumerationMethod::Constrained).unwrap();
            let mut built: Vec<LTTopology> = all_tags(o.category())
                .iter()
                .filter_map(|t| construct_jw(&o, t).ok())
                .collect();
            built.sort_by(|a, b| a.maps().cmp(b.maps()));
            assert_eq!(found, built, "{kind}");
            for j in &found {
                assert_eq!(construct_jw(&o, &j.tag().unwrap().to_string()).unwrap(), *j);
            }
        }
    }

    #[test]
    fn ten_is_rejected_with_the_refl_witness() {
        let o = omega(CategoryKind::ReflGraph);
        let err = construct_jw(&o, "10").unwrap_err();
        let TopologyError::DegeneracyRejected { witness: TopologyViolation::Naturality(w), .. } = err else {
            panic!("unexpected {err:?}")
        };
        assert_eq!(w.generator, "refl");
        assert_eq!(w.sieve, 0);
        assert_eq!(o.sieve_summary(1, w.j_after_action), "⟨(0), (1)⟩");
        assert_eq!(w.action_after_j, o.top(1));
    }

    #[test]
    fn degeneracy_filter_on_graph() {
        let g = omega(CategoryKind::Graph);
        let r = omega(CategoryKind::ReflGraph);
        for w in ["00", "01", "10", "11"] {
            let j = construct_jw(&g, w).unwrap();
            let result = degeneracy_compatible(&j, &r);
            assert_eq!(result.is_ok(), is_monotone_bits(w), "{w}");
            if let Ok(t) = result {
                assert_eq!(t, construct_jw(&r, w).unwrap());
            }
        }
        let s2 = omega(CategoryKind::SemiSimplex(2));
        let f2 = omega(CategoryKind::Simplex(2));
        for w in all_tags(s2.category()) {
            let j = construct_jw(&s2, &w).unwrap();
            assert_eq!(degeneracy_compatible(&j, &f2).is_ok(), is_monotone_bits(&w), "{w}");
        }
    }

    #[test]
    fn double_negation_on_graph() {
        let o = omega(CategoryKind::Graph);
        let j = construct_jw(&o, "01").unwrap();
        let alg = o.level_algebra(1).unwrap();
        for k in 0..2 {
            let alg = o.level_algebra(k).unwrap();
            for x in 0..o.level(k).size() {
                assert_eq!(j.apply(k, x), alg.neg(alg.neg(x)));
            }
        }
        // ∂y(1) = "(s,t)" goes to the full edge.
        assert_eq!(j.apply(1, 3), alg.top());
    }

    #[test]
    fn semi2_level_two_fills_the_boundary() {
        let o = omega(CategoryKind::SemiSimplex(2));
        let j = construct_jw(&o, "011").unwrap();
        assert_eq!(j.apply(2, o.boundary_sieve(2)), o.top(2));
        let j = construct_jw(&o, "010").unwrap();
        assert_eq!(j.apply(2, o.boundary_sieve(2)), o.boundary_sieve(2));
    }

    #[test]
    fn restriction_drops_the_last_bit() {
        for (big, small) in [
            (CategoryKind::SemiSimplex(3), CategoryKind::SemiSimplex(2)),
            (CategoryKind::Simplex(3), CategoryKind::Simplex(2)),
            (CategoryKind::SemiSimplex(2), CategoryKind::SemiSimplex(1)),
        ] {
            let (ob, os) = (omega(big), omega(small));
            for j in enumerate_topologies(&ob, EnumerationMethod::Constrained).unwrap() {
                let r = restrict_to(&j, &os).unwrap();
                let w = j.tag().unwrap().to_string();
                assert_eq!(r, construct_jw(&os, &w[..w.len() - 1]).unwrap());
            }
        }
    }

    #[test]
    fn records_round_trip() {
        let o = omega(CategoryKind::SemiSimplex(2));
        for j in enumerate_topologies(&o, EnumerationMethod::Constrained).unwrap() {
            let text = serde_json::to_string(&j.to_record()).unwrap();
            let back: TopologyRecord = serde_json::from_str(&text).unwrap();
            let j2 = LTTopology::from_record(o.clone(), &back).unwrap();
            assert_eq!(j2, j);
            assert_eq!(j2.tag(), j.tag());
        }
        let mut bad = construct_jw(&o, "011").unwrap().to_record();
        bad.levels[2][0] = 0;
        bad.levels[2].swap(0, 18);
        assert!(LTTopology::from_record(o, &bad).is_err());
    }

    #[test]
    fn tag_parsing() {
        let g = CategoryKind::Graph.build().unwrap();
        assert_eq!(parse_tag(&g, "j^01").unwrap().1, vec![false, true]);
        assert!(parse_tag(&g, "011").is_err());
        assert!(parse_tag(&g, "0a").is_err());
        let b = CategoryKind::BiColGraph.build().unwrap();
        assert_eq!(parse_tag(&b, "13").unwrap().1, vec![true, true, true]);
        assert_eq!(parse_tag(&b, "02").unwrap().1, vec![false, false, true]);
        assert!(parse_tag(&b, "04").is_err());
        assert_eq!(tag_for_bits(&b, &[false, false, true]), TopologyTag::BiColLabel("02".into()));
    }
}
