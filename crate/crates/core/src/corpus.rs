//! Small test corpora: presheaves up to isomorphism and finite Heyting
//! algebras.
//!
//! Presheaves are generated by brute force over generator tables for every
//! size vector with bounded total, reduced to a canonical form (the least
//! relabelled table over all per-level permutations) and then checked for
//! functoriality.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::fincat::FiniteIndexCategory;
use crate::lattice::FiniteHeytingAlgebra;
use crate::presheaf::FinitePresheaf;

/// Default bound on the total number of elements of a corpus presheaf.
pub const DEFAULT_CORPUS_TOTAL: usize = 6;

/// Hard cap on the total size accepted by [`presheaf_corpus`].
pub const MAX_CORPUS_TOTAL: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("corpus total {requested} exceeds the maximum {maximum}")]
    TooLarge { requested: usize, maximum: usize },
}

/// Generator tables after relabelling, used as an isomorphism invariant.
pub type CanonicalForm = (Vec<usize>, Vec<Vec<usize>>);

/// All presheaves on `category` with at most `max_total` elements, one per
/// isomorphism class, ordered by total size, then sizes, then tables.
pub fn presheaf_corpus(category: &Arc<FiniteIndexCategory>, max_total: usize) -> Result<Vec<FinitePresheaf>, CorpusError> {
    if max_total > MAX_CORPUS_TOTAL {
        return Err(CorpusError::TooLarge { requested: max_total, maximum: MAX_CORPUS_TOTAL });
    }
    let n = category.object_count();
    let mut out = Vec::new();
    for total in 0..=max_total {
        for sizes in size_vectors(n, total) {
            let mut forms = BTreeSet::new();
            for_each_table(category, &sizes, |tables| {
                forms.insert(canonical_tables(category, &sizes, tables));
            });
            for tables in forms {
                if let Ok(p) = FinitePresheaf::from_sizes(category.clone(), &sizes, tables) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Canonical form of a presheaf; two presheaves are isomorphic exactly when
/// their forms agree.
pub fn canonical_form(p: &FinitePresheaf) -> CanonicalForm {
    let sizes = p.sizes();
    let tables = canonical_tables(p.category(), &sizes, &p.generator_actions());
    (sizes, tables)
}

fn size_vectors(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in size_vectors(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Calls `f` with every family of generator tables of the right shape.
fn for_each_table(category: &FiniteIndexCategory, sizes: &[usize], mut f: impl FnMut(&[Vec<usize>])) {
    let shapes: Vec<(usize, usize)> = category
        .generators()
        .iter()
        .map(|g| {
            let m = category.morphism(g.morphism);
            (sizes[m.target], sizes[m.source])
        })
        .collect();
    // An element with nowhere to send it rules the size vector out.
    if shapes.iter().any(|&(len, range)| len > 0 && range == 0) {
        return;
    }
    let mut tables: Vec<Vec<usize>> = shapes.iter().map(|&(len, _)| vec![0; len]).collect();
    loop {
        f(&tables);
        // Odometer over every table entry.
        let mut advanced = false;
        'outer: for (g, &(_, range)) in shapes.iter().enumerate() {
            for v in tables[g].iter_mut() {
                if *v + 1 < range {
                    *v += 1;
                    advanced = true;
                    break 'outer;
                }
                *v = 0;
            }
        }
        if !advanced {
            return;
        }
    }
}

fn canonical_tables(category: &FiniteIndexCategory, sizes: &[usize], tables: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let ends: Vec<(usize, usize)> = category
        .generators()
        .iter()
        .map(|g| {
            let m = category.morphism(g.morphism);
            (m.source, m.target)
        })
        .collect();
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut relabelled: Vec<Vec<usize>> = tables.to_vec();
    for perms in sizes.iter().map(|&n| (0..n).permutations(n)).multi_cartesian_product() {
        for (g, &(src, tgt)) in ends.iter().enumerate() {
            for (x, &y) in tables[g].iter().enumerate() {
                relabelled[g][perms[tgt][x]] = perms[src][y];
            }
        }
        if best.as_ref().map_or(true, |b| relabelled < *b) {
            best = Some(relabelled.clone());
        }
    }
    // `multi_cartesian_product` of zero iterators yields nothing.
    best.unwrap_or_else(|| tables.to_vec())
}

/// Named finite Heyting algebras used by the lattice and fuzzy checks.
pub fn heyting_corpus() -> Vec<(String, FiniteHeytingAlgebra)> {
    let mut out: Vec<(String, FiniteHeytingAlgebra)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("chain{n}"), FiniteHeytingAlgebra::chain(n)));
    }
    out.push(("diamond".into(), FiniteHeytingAlgebra::diamond()));
    out.push(("boolean3".into(), FiniteHeytingAlgebra::boolean(3)));
    let posets: [(&str, &[(usize, usize)], usize); 4] = [
        ("downsets-V", &[(0, 2), (1, 2)], 3),
        ("downsets-Λ", &[(0, 1), (0, 2)], 3),
        ("downsets-N", &[(0, 2), (1, 2), (1, 3)], 4),
        ("downsets-2+1", &[(0, 1)], 3),
    ];
    for (name, relations, n) in posets {
        let mut below = vec![vec![false; n]; n];
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in relations {
            below[i][j] = true;
        }
        out.push((name.into(), FiniteHeytingAlgebra::downsets(&below)));
    }
    out
}
