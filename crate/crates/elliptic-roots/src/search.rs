//! Exhaustive re-derivation of the classification at a fixed working
//! modulus.
//!
//! The search enumerates translation-set triples `(S, L, E)` as residue
//! masks, prunes by the symbolic closure conditions, filters by the global
//! axioms and the requested reducedness profile, and deduplicates under the
//! marked group. Every catalog type has translation sets of period dividing
//! 4 per axis, so the default modulus-4 enumeration covers the whole
//! catalog; the search checks completeness against it rather than proving
//! that larger periods cannot occur.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::catalog::{
    catalog, check_axioms_symbolic, check_axioms_windowed, is_reduced, ErsType, MarkedERS,
};
use crate::coset::{subgroup_index, ResidueSet};
use crate::error::{Error, Result};
use crate::finite::{closure_conditions, LengthClass};
use crate::iso::{canonical_form, CanonicalKey, IsoGroupSpec};
use crate::mask;
use crate::quotient::{is_quotient_non_reduced, quotient};

/// Which systems to keep.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchFilter {
    /// Non-reduced systems (their quotient is automatically non-reduced).
    NonReduced,
    /// Reduced systems whose quotient is non-reduced.
    ReducedNonReducedQuotient,
    /// Everything with a non-reduced quotient.
    All,
}

/// Candidate generation for the middle class.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiddleMode {
    /// All masks passing the single-class conditions.
    Full,
    /// Only the middle sets that occur in the catalog: the four product
    /// lattices with periods in {1, 2}, plus the one proper coset union that
    /// exists at rank 2.
    Guided,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub rank: u32,
    pub modulus: u8,
    pub filter: SearchFilter,
    pub middle_mode: MiddleMode,
    /// Cap on the number of candidate triples visited.
    pub cap: u128,
}

impl SearchConfig {
    pub fn new(rank: u32, filter: SearchFilter) -> Self {
        SearchConfig {
            rank,
            modulus: 4,
            filter,
            middle_mode: MiddleMode::Full,
            cap: 200_000_000,
        }
    }

    pub fn guided(mut self) -> Self {
        self.middle_mode = MiddleMode::Guided;
        self
    }
}

/// One isomorphism class found by the search.
#[derive(Clone, Debug, Serialize)]
pub struct FoundClass {
    pub key: CanonicalKey,
    /// Orbit-minimal representative.
    #[serde(skip)]
    pub representative: MarkedERS,
    /// Catalog type with the same canonical key, when one exists.
    pub matched: Option<ErsType>,
    /// Number of raw triples that landed in this class.
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub classes: Vec<FoundClass>,
    /// Catalog types admissible at this rank and filter that the search did
    /// not find.
    pub missing: Vec<ErsType>,
}

impl SearchOutcome {
    pub fn is_catalog_bijection(&self) -> bool {
        self.missing.is_empty() && self.classes.iter().all(|c| c.matched.is_some())
    }
}

/// Comparison of two deduplicated class lists by canonical key.
#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub matched: Vec<(CanonicalKey, ErsType)>,
    pub extra: Vec<CanonicalKey>,
    pub missing: Vec<ErsType>,
}

impl MatchReport {
    pub fn is_bijection(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

fn single_class_ks(rank: u32, class: LengthClass) -> Vec<i64> {
    let mut ks: Vec<i64> = closure_conditions(rank)
        .expect("positive rank")
        .into_iter()
        .filter(|c| c.reflecting == class && c.reflected == class)
        .map(|c| c.k.abs())
        .filter(|&k| k != 0)
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn cross_ks(rank: u32, reflecting: LengthClass, reflected: LengthClass) -> Vec<i64> {
    let mut ks: Vec<i64> = closure_conditions(rank)
        .expect("positive rank")
        .into_iter()
        .filter(|c| c.reflecting == reflecting && c.reflected == reflected)
        .map(|c| c.k.abs())
        .filter(|&k| k != 0)
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn symmetric_masks(m: u8) -> Vec<u64> {
    let total: u64 = 1u64 << mask::cells(m);
    (0..total)
        .filter(|&bits| mask::negate(m, bits) == bits)
        .collect()
}

fn passes_single(m: u8, bits: u64, ks: &[i64]) -> bool {
    ks.iter().all(|&k| mask::scale_sub_closed(m, bits, k, bits))
}

fn guided_middle_masks(rank: u32, m: u8) -> Vec<u64> {
    let mut sets = vec![
        ResidueSet::lattice(1, 1),
        ResidueSet::lattice(1, 2),
        ResidueSet::lattice(2, 1),
        ResidueSet::lattice(2, 2),
    ];
    if rank == 2 {
        sets.push(ResidueSet::l_set(0, 0));
    }
    sets.iter()
        .filter_map(|s| s.square_mask(m).ok())
        .collect()
}

fn candidate_masks(rank: u32, class: LengthClass, config: &SearchConfig) -> Vec<u64> {
    let m = config.modulus;
    if class == LengthClass::Middle {
        if rank == 1 {
            return vec![0];
        }
        if config.middle_mode == MiddleMode::Guided {
            let ks = single_class_ks(rank, class);
            return guided_middle_masks(rank, m)
                .into_iter()
                .filter(|&bits| passes_single(m, bits, &ks))
                .collect();
        }
    }
    let ks = single_class_ks(rank, class);
    symmetric_masks(m)
        .into_iter()
        .filter(|&bits| bits != 0)
        .filter(|&bits| passes_single(m, bits, &ks))
        .collect()
}

/// Per-class candidate translation sets: nonempty, negation symmetric, and
/// closed under the single-class reflection conditions. The middle class at
/// rank 1 yields exactly the empty set.
pub fn enumerate_class_candidates(
    rank: u32,
    class: LengthClass,
    config: &SearchConfig,
) -> Result<Vec<ResidueSet>> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    check_modulus(config.modulus)?;
    Ok(candidate_masks(rank, class, config)
        .into_iter()
        .map(|bits| ResidueSet::from_square_mask(config.modulus, bits))
        .collect())
}

fn check_modulus(m: u8) -> Result<()> {
    match m {
        2 | 4 => Ok(()),
        8 => Err(Error::SearchSpace(
            "modulus 8 enumeration is 2^64 masks per class; use modulus 4 \
             (it already covers the catalog)"
                .into(),
        )),
        _ => Err(Error::InvalidModulus((m, m))),
    }
}

struct CrossConds {
    // Keyed by (reflecting, reflected); the check is
    // reflected_mask - k * reflecting_mask inside reflected_mask.
    sl: Vec<i64>,
    ls: Vec<i64>,
    sm: Vec<i64>,
    ms: Vec<i64>,
    ml: Vec<i64>,
    lm: Vec<i64>,
}

impl CrossConds {
    fn new(rank: u32) -> Self {
        use LengthClass::*;
        CrossConds {
            sl: cross_ks(rank, Short, Long),
            ls: cross_ks(rank, Long, Short),
            sm: cross_ks(rank, Short, Middle),
            ms: cross_ks(rank, Middle, Short),
            ml: cross_ks(rank, Middle, Long),
            lm: cross_ks(rank, Long, Middle),
        }
    }
}

fn keep_by_filter(filter: SearchFilter, sys: &MarkedERS) -> bool {
    match filter {
        SearchFilter::NonReduced => !is_reduced(sys),
        SearchFilter::ReducedNonReducedQuotient => {
            is_reduced(sys) && is_quotient_non_reduced(&quotient(sys))
        }
        SearchFilter::All => is_quotient_non_reduced(&quotient(sys)),
    }
}

/// Canonical keys of the catalog entries selected by the filter.
pub fn catalog_keys(
    rank: u32,
    filter: SearchFilter,
    spec: &IsoGroupSpec,
) -> Result<Vec<(ErsType, CanonicalKey)>> {
    let mut out = Vec::new();
    for (t, r) in catalog(rank)? {
        let wanted = match filter {
            SearchFilter::NonReduced => !t.is_reduced_type(),
            SearchFilter::ReducedNonReducedQuotient => t.is_reduced_type(),
            SearchFilter::All => true,
        };
        if wanted {
            out.push((t, canonical_form(&r, spec)?));
        }
    }
    Ok(out)
}

/// Runs the staged exhaustive search and matches the surviving classes
/// against the catalog.
pub fn search(config: &SearchConfig) -> Result<SearchOutcome> {
    if config.rank == 0 {
        return Err(Error::InvalidRank(config.rank));
    }
    check_modulus(config.modulus)?;
    let m = config.modulus;
    let rank = config.rank;

    let s_list = candidate_masks(rank, LengthClass::Short, config);
    let l_list = candidate_masks(rank, LengthClass::Middle, config);
    let e_list = candidate_masks(rank, LengthClass::Long, config);

    let triples = s_list.len() as u128 * l_list.len() as u128 * e_list.len() as u128;
    if triples > config.cap {
        return Err(Error::SearchSpace(format!(
            "{} candidate triples exceed the cap of {}; try guided middle mode",
            triples, config.cap
        )));
    }

    let cross = CrossConds::new(rank);
    let lattice_gens = |bits: u64| -> Vec<(i64, i64)> {
        let mut gens = vec![(i64::from(m), 0), (0, i64::from(m))];
        for (a, b) in mask::iter_cells(m, bits) {
            gens.push((i64::from(a), i64::from(b)));
        }
        gens
    };

    // Joint filter, data parallel over the short-class candidates. Each
    // worker emits its hits in deterministic inner order; the ordered
    // collect keeps the merged output identical to a sequential run.
    let hits: Vec<(u64, u64, u64)> = s_list
        .par_iter()
        .map(|&s| {
            let mut local = Vec::new();
            for &l in &l_list {
                if !cross.ms.iter().all(|&k| mask::scale_sub_closed(m, s, k, l)) {
                    continue;
                }
                if !cross.sm.iter().all(|&k| mask::scale_sub_closed(m, l, k, s)) {
                    continue;
                }
                for &e in &e_list {
                    if !cross.ls.iter().all(|&k| mask::scale_sub_closed(m, s, k, e)) {
                        continue;
                    }
                    if !cross.sl.iter().all(|&k| mask::scale_sub_closed(m, e, k, s)) {
                        continue;
                    }
                    if !cross.lm.iter().all(|&k| mask::scale_sub_closed(m, l, k, e)) {
                        continue;
                    }
                    if !cross.ml.iter().all(|&k| mask::scale_sub_closed(m, e, k, l)) {
                        continue;
                    }
                    local.push((s, l, e));
                }
            }
            local
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let iso_spec = IsoGroupSpec::marked();
    let mut classes: BTreeMap<CanonicalKey, usize> = BTreeMap::new();
    for (s, l, e) in hits {
        // Axiom 1: the translations must generate the full radical lattice.
        let mut gens = lattice_gens(s);
        gens.extend(lattice_gens(l));
        gens.extend(lattice_gens(e));
        if subgroup_index(&gens) != Some(1) {
            continue;
        }
        let sys = MarkedERS::new_unchecked(
            rank,
            None,
            ResidueSet::from_square_mask(m, s),
            ResidueSet::from_square_mask(m, l),
            ResidueSet::from_square_mask(m, e),
        );
        if !keep_by_filter(config.filter, &sys) {
            continue;
        }
        let key = canonical_form(&sys, &iso_spec)?;
        *classes.entry(key).or_insert(0) += 1;
    }

    // Match against the catalog and re-verify each emitted class with both
    // checkers; irreducibility is part of the symbolic report.
    let keys = catalog_keys(rank, config.filter, &iso_spec)?;
    let key_map: BTreeMap<CanonicalKey, ErsType> = keys.iter().map(|&(t, k)| (k, t)).collect();
    let mut out = Vec::new();
    for (key, multiplicity) in classes {
        let representative = crate::iso::key_representative(&key);
        let report = check_axioms_symbolic(&representative);
        debug_assert!(report.pass(), "emitted class fails symbolic axioms: {key}");
        debug_assert!(check_axioms_windowed(&representative, 2).pass());
        out.push(FoundClass {
            matched: key_map.get(&key).copied(),
            representative,
            multiplicity,
            key,
        });
    }
    let found_keys: Vec<CanonicalKey> = out.iter().map(|c| c.key).collect();
    let missing = keys
        .iter()
        .filter(|(_, k)| !found_keys.contains(k))
        .map(|&(t, _)| t)
        .collect();
    Ok(SearchOutcome {
        classes: out,
        missing,
    })
}

/// Compares found classes against a catalog key list.
pub fn match_report(found: &[FoundClass], catalog_keys: &[(ErsType, CanonicalKey)]) -> MatchReport {
    let key_map: BTreeMap<CanonicalKey, ErsType> =
        catalog_keys.iter().map(|&(t, k)| (k, t)).collect();
    let mut matched = Vec::new();
    let mut extra = Vec::new();
    for class in found {
        match key_map.get(&class.key) {
            Some(&t) => matched.push((class.key, t)),
            None => extra.push(class.key),
        }
    }
    let found_keys: Vec<CanonicalKey> = found.iter().map(|c| c.key).collect();
    let missing = catalog_keys
        .iter()
        .filter(|(_, k)| !found_keys.contains(k))
        .map(|&(t, _)| t)
        .collect();
    MatchReport {
        matched,
        extra,
        missing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_middle_candidates_empty_set_only() {
        let config = SearchConfig::new(1, SearchFilter::NonReduced);
        let mids = enumerate_class_candidates(1, LengthClass::Middle, &config).unwrap();
        assert_eq!(mids, vec![ResidueSet::empty()]);
    }

    #[test]
    fn single_class_condition_prunes() {
        // {(1,0), (3,0)} mod 4 is negation symmetric but not closed under
        // subtracting twice itself: (1,0) - 2*(1,0) = (-1,0) is fine, yet
        // (1,0) - 2*(3,0) = (-5,0) = (3,0) mod 4 is fine too; use the b axis
        // to break it: {(0,1),(0,3),(1,0),(3,0)} fails via (0,1)-2*(1,0).
        let m = 4u8;
        let bits = [(0u8, 1u8), (0, 3), (1, 0), (3, 0)]
            .iter()
            .fold(0u64, |acc, &(a, b)| acc | 1 << mask::cell(m, a, b));
        assert_eq!(mask::negate(m, bits), bits);
        assert!(!mask::scale_sub_closed(m, bits, 2, bits));
        let config = SearchConfig::new(1, SearchFilter::NonReduced);
        let shorts = candidate_masks(1, LengthClass::Short, &config);
        assert!(!shorts.contains(&bits));
    }

    #[test]
    fn guided_middle_lists() {
        let m = 4;
        assert_eq!(guided_middle_masks(2, m).len(), 5);
        assert_eq!(guided_middle_masks(3, m).len(), 4);
    }

    #[test]
    fn modulus_8_is_rejected_with_diagnostic() {
        let mut config = SearchConfig::new(1, SearchFilter::NonReduced);
        config.modulus = 8;
        assert!(matches!(search(&config), Err(Error::SearchSpace(_))));
    }

    #[test]
    fn cap_triggers_diagnostic() {
        let mut config = SearchConfig::new(2, SearchFilter::NonReduced);
        config.cap = 10;
        let err = search(&config).unwrap_err();
        assert!(matches!(err, Error::SearchSpace(_)));
        assert!(err.to_string().contains("guided"));
    }

    #[test]
    fn corrupted_catalog_reports_extra_key() {
        let config = SearchConfig::new(1, SearchFilter::NonReduced).guided();
        let outcome = search(&config).unwrap();
        let mut keys = catalog_keys(1, SearchFilter::NonReduced, &IsoGroupSpec::marked()).unwrap();
        keys.pop();
        let report = match_report(&outcome.classes, &keys);
        assert_eq!(report.extra.len(), 1);
        assert!(!report.is_bijection());
    }
}
