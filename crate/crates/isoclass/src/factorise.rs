//! Exhaustive enumeration of exact factorisations `Cn · Cn`.
//!
//! A group `G` factorises exactly as a product of two cyclic subgroups
//! `A = ⟨a⟩` and `B = ⟨b⟩` of order `n` with `A ∩ B = 1` precisely when the
//! multiplication is determined by the rewriting data `b^j · a = a^(f(j)) ·
//! b^(g(j))`. This module enumerates all such `(f, g)` candidates on the `n²`
//! formal products `a^i b^j`, keeps the ones whose induced table is a group,
//! and reduces the survivors to isomorphism-class representatives. Because
//! the search is exhaustive over all candidate functions, it is an
//! independent completeness check for the small orders it can reach, with no
//! input from the constructed families.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{
    self, extend_generator_map, isomorphism_search, CayleyError, ExtendOutcome, GenMap,
    GroupTable, Subgroup,
};
use crate::classify::{classify_triple, ClassifyError};
use crate::families::{to_cayley, FamiliesError, FamilyGroup, GroupParams};

#[derive(Debug, Error)]
pub enum FactoriseError {
    #[error(
        "matched-pair search supports n ∈ {{2, 4}} (n = 8 only behind the expensive entry \
         point), got n = {0}"
    )]
    UnsupportedOrder(u64),
    #[error("classification verification supports e ∈ {{2, 3, 4}}, got e = {0}")]
    UnsupportedExponent(u32),
    #[error("classification violation: {0}")]
    ClassificationViolation(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Families(#[from] FamiliesError),
    #[error("emit failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("emit failed: {0}")]
    Json(#[from] serde_json::Error),
}

/// The rewriting data of an exact factorisation: `b^j · a = a^(f[j]) ·
/// b^(g[j])`, with exponents taken mod `n`.
///
/// `f[0] = 1` and `g[0] = 0` always (the empty `b`-prefix commutes past `a`
/// trivially); the remaining values are free candidates until the induced
/// multiplication is validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub n: u64,
    pub f: Vec<u64>,
    pub g: Vec<u64>,
}

impl MatchedPair {
    /// Normal form of `b^j · a^t`, by the recursion `b^j a^t = a^(f(j)) ·
    /// (b^(g(j)) a^(t-1))`: walk `t` steps along the `g`-orbit of `j`,
    /// summing `f`-values.
    fn normal_form(&self, j: u64, t: u64) -> (u64, u64) {
        let mut a_total = 0u64;
        let mut pos = j;
        for _ in 0..t {
            a_total += self.f[pos as usize];
            pos = self.g[pos as usize];
        }
        (a_total % self.n, pos)
    }

    /// Builds the induced multiplication on the `n²` formal products and
    /// validates it as a group (identity, inverses, full associativity).
    ///
    /// Element `a^i b^j` gets index `i·n + j`, so `a` is index `n` and `b`
    /// index `1`.
    pub fn induced_table(&self) -> Result<GroupTable, CayleyError> {
        let n = self.n;
        let order = (n * n) as usize;
        let index = |i: u64, j: u64| (i * n + j) as usize;
        let mut rows = vec![vec![0usize; order]; order];
        for i1 in 0..n {
            for j1 in 0..n {
                for i2 in 0..n {
                    let (advance, rem) = self.normal_form(j1, i2);
                    for j2 in 0..n {
                        rows[index(i1, j1)][index(i2, j2)] =
                            index((i1 + advance) % n, (rem + j2) % n);
                    }
                }
            }
        }
        let mut table = GroupTable::from_rows(rows)?;
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("a^{i} b^{j}")))
            .collect();
        table.set_labels(labels)?;
        Ok(table)
    }
}

/// A validated factorisation: the group together with its distinguished
/// generator pair.
pub struct Factorisation {
    pub pair: MatchedPair,
    pub table: GroupTable,
    pub a: usize,
    pub b: usize,
}

fn decode_candidate(n: u64, mut idx: u64) -> MatchedPair {
    let len = n as usize;
    let mut f = vec![0u64; len];
    let mut g = vec![0u64; len];
    f[0] = 1;
    for value in f.iter_mut().skip(1) {
        *value = idx % n;
        idx /= n;
    }
    for value in g.iter_mut().skip(1) {
        *value = idx % n;
        idx /= n;
    }
    MatchedPair { n, f, g }
}

fn swap_is_automorphism(table: &GroupTable, a: usize, b: usize) -> bool {
    let map = GenMap { sources: vec![a, b], images: vec![b, a] };
    matches!(
        extend_generator_map(table, table, &map),
        Ok(ExtendOutcome::Homomorphism(h)) if h.is_isomorphism()
    )
}

/// Small pre-key so that the quadratic isomorphism dedup only compares
/// groups that already agree on cheap invariants.
type ClassKey = (Vec<(usize, usize)>, Vec<usize>, usize);

fn derived_invariant_list(
    table: &GroupTable,
    derived: &Subgroup,
) -> Result<Vec<usize>, CayleyError> {
    if derived.is_abelian(table) {
        cayley::abelian_invariants(table, derived)
    } else {
        // no abelian invariants to take; fall back to the order multiset
        let mut orders: Vec<usize> =
            derived.members().iter().map(|&x| table.element_order(x)).collect();
        orders.sort_unstable();
        Ok(orders)
    }
}

fn class_key(table: &GroupTable) -> Result<ClassKey, CayleyError> {
    let report = cayley::characteristic_subgroups(table)?;
    let derived = derived_invariant_list(table, &report.derived)?;
    Ok((table.order_profile(), derived, report.center.len()))
}

fn dedup_consistent(
    n: u64,
    candidates: Vec<MatchedPair>,
    require_swap: bool,
) -> Result<Vec<Factorisation>, FactoriseError> {
    let a = n as usize;
    let b = 1usize;
    let consistent: Vec<Factorisation> = candidates
        .into_par_iter()
        .filter_map(|pair| {
            let table = pair.induced_table().ok()?;
            if require_swap && !swap_is_automorphism(&table, a, b) {
                return None;
            }
            Some(Factorisation { pair, table, a, b })
        })
        .collect();
    let mut reps: Vec<(ClassKey, Factorisation)> = Vec::new();
    'candidates: for cand in consistent {
        let key = class_key(&cand.table)?;
        for (rep_key, rep) in &reps {
            if *rep_key == key
                && !isomorphism_search(&cand.table, &[cand.a, cand.b], &rep.table, Some(1))?
                    .is_empty()
            {
                continue 'candidates;
            }
        }
        reps.push((key, cand));
    }
    Ok(reps.into_iter().map(|(_, fact)| fact).collect())
}

/// Enumerates every group admitting an exact factorisation `Cn · Cn`, up to
/// isomorphism, by exhausting the full `(f, g)` candidate space.
///
/// With `require_swap` only groups whose distinguished pair satisfies
/// `(a, b) ↦ (b, a)` extending to an automorphism are kept. Representatives
/// are returned in first-discovery order of the candidate encoding, which is
/// deterministic.
pub fn matched_pair_search(
    n: u64,
    require_swap: bool,
) -> Result<Vec<Factorisation>, FactoriseError> {
    if !matches!(n, 2 | 4) {
        return Err(FactoriseError::UnsupportedOrder(n));
    }
    let total = n.pow(2 * (n as u32 - 1));
    let candidates: Vec<MatchedPair> =
        (0..total).into_par_iter().map(|idx| decode_candidate(n, idx)).collect();
    dedup_consistent(n, candidates, require_swap)
}

/// Like [`matched_pair_search`] but additionally admits `n = 8` through a
/// pruned search.
///
/// The `n = 8` mode is a *heuristic*: candidates are required to respect the
/// parity classes of `⟨a²⟩` and `⟨b²⟩` (every `f`-value odd, `g`
/// parity-preserving). Every known valid outcome satisfies this — it holds
/// for all groups found at n ∈ {2, 4} and for both constructed families —
/// but the restriction is not proved exhaustive here, so results at `n = 8`
/// are labeled heuristic and never feed the verification suites.
pub fn matched_pair_search_expensive(
    n: u64,
    require_swap: bool,
) -> Result<Vec<Factorisation>, FactoriseError> {
    match n {
        2 | 4 => matched_pair_search(n, require_swap),
        8 => dedup_consistent(8, pruned_order_eight_candidates(), require_swap),
        other => Err(FactoriseError::UnsupportedOrder(other)),
    }
}

/// Candidate `(f, g)` completions at `n = 8`.
///
/// Frees only `(f(1), g(1))` and derives the rest through the associativity
/// consequence `b^j a = b^(j-1) (b a)`; positions whose derivation is blocked
/// (the required `g`-orbit values are still unknown) are branched over. Each
/// derived or guessed value must pass the parity pruning, each completed
/// candidate the cyclic closure `b^8 a = a`; full group validation happens
/// later in the shared path.
fn pruned_order_eight_candidates() -> Vec<MatchedPair> {
    const ODD: [u64; 4] = [1, 3, 5, 7];
    let seeds: Vec<(u64, u64)> =
        ODD.iter().flat_map(|&f1| ODD.iter().map(move |&g1| (f1, g1))).collect();
    let per_seed: Vec<Vec<MatchedPair>> = seeds
        .par_iter()
        .map(|&(f1, g1)| {
            let mut f = vec![None; 8];
            let mut g = vec![None; 8];
            f[0] = Some(1);
            g[0] = Some(0);
            f[1] = Some(f1);
            g[1] = Some(g1);
            let mut found = Vec::new();
            complete_order_eight(f, g, &mut found);
            found
        })
        .collect();
    per_seed.concat()
}

fn complete_order_eight(
    mut f: Vec<Option<u64>>,
    mut g: Vec<Option<u64>>,
    out: &mut Vec<MatchedPair>,
) {
    const N: u64 = 8;
    let f1 = f[1].unwrap();
    let g1 = g[1].unwrap();
    loop {
        let mut progressed = false;
        for j in 2..8usize {
            let Some((a_total, pos)) = partial_walk(&f, &g, (j - 1) as u64, f1) else {
                continue;
            };
            let fj = a_total % N;
            let gj = (pos + g1) % N;
            match (f[j], g[j]) {
                (Some(known_f), Some(known_g)) => {
                    if known_f != fj || known_g != gj {
                        return;
                    }
                }
                _ => {
                    if fj % 2 != 1 || gj % 2 != (j as u64) % 2 {
                        return;
                    }
                    f[j] = Some(fj);
                    g[j] = Some(gj);
                    progressed = true;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    if let Some(j) = (2..8usize).find(|&j| f[j].is_none()) {
        let g_values: [u64; 4] = if j % 2 == 0 { [0, 2, 4, 6] } else { [1, 3, 5, 7] };
        for f_value in [1u64, 3, 5, 7] {
            for g_value in g_values {
                let mut f_next = f.clone();
                let mut g_next = g.clone();
                f_next[j] = Some(f_value);
                g_next[j] = Some(g_value);
                complete_order_eight(f_next, g_next, out);
            }
        }
        return;
    }
    // cyclic closure: b^8 a must come back to a = a^1 b^0
    let (a_total, pos) = partial_walk(&f, &g, 7, f1).expect("all values assigned");
    if a_total % N != 1 || !(pos + g1).is_multiple_of(N) {
        return;
    }
    out.push(MatchedPair {
        n: N,
        f: f.into_iter().map(|v| v.unwrap()).collect(),
        g: g.into_iter().map(|v| v.unwrap()).collect(),
    });
}

/// [`MatchedPair::normal_form`] over partially known `(f, g)`; `None` when
/// the walk hits an unknown position.
fn partial_walk(f: &[Option<u64>], g: &[Option<u64>], j: u64, t: u64) -> Option<(u64, u64)> {
    let mut a_total = 0u64;
    let mut pos = j;
    for _ in 0..t {
        a_total += f[pos as usize]?;
        pos = g[pos as usize]?;
    }
    Some((a_total, pos))
}

/// Outcome of comparing search and family-side classification at one `e`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub e: u32,
    /// Isomorphism-class names, one per class, sorted.
    pub class_names: Vec<String>,
    pub metacyclic_classes: usize,
    pub non_metacyclic_classes: usize,
    /// The one parameter coincidence, when `e ≥ 3`.
    pub coincident_pair: Option<(String, String)>,
    /// Whether the class list is known complete by exhaustive search (only
    /// at `e = 2`) rather than just pairwise-distinct within the families.
    pub complete_by_search: bool,
    pub note: String,
}

/// Cross-checks the isomorphism classes of isobicyclic groups of order
/// `2^(2e)`.
///
/// At `e = 2` the classes found by the exhaustive matched-pair search are
/// compared against the two family members — a completeness statement. At
/// `e ∈ {3, 4}` all constructed family members are pairwise compared by
/// brute-force isomorphism search, which must find exactly one coincidence
/// (`l = 1` with differing `k`) and no other; completeness beyond the
/// families is out of reach of this search and flagged as such.
pub fn verify_classification(e: u32) -> Result<ClassificationReport, FactoriseError> {
    match e {
        2 => {
            let found = matched_pair_search(4, true)?;
            let mut names: Vec<String> = Vec::new();
            for fact in &found {
                let params = classify_triple(&fact.table, fact.a, fact.b)?;
                let name = params.to_string();
                if !names.contains(&name) {
                    names.push(name);
                }
            }
            names.sort();
            let expected = ["G1(2,2)", "G2(2;0,0)"];
            if names != expected {
                return Err(FactoriseError::ClassificationViolation(format!(
                    "exhaustive order-16 search found classes {names:?}, expected {expected:?}"
                )));
            }
            Ok(ClassificationReport {
                e,
                class_names: names,
                metacyclic_classes: 1,
                non_metacyclic_classes: 1,
                coincident_pair: None,
                complete_by_search: true,
                note: "every exact factorisation C4·C4 admitting the generator swap was \
                       enumerated and classified"
                    .into(),
            })
        }
        3 | 4 => {
            let members: Vec<(GroupParams, FamilyGroup)> = GroupParams::all_for(e)
                .into_iter()
                .map(|p| to_cayley(&p).map(|fam| (p, fam)))
                .collect::<Result<_, _>>()?;
            let mut names = Vec::new();
            for (i, (pi, fi)) in members.iter().enumerate() {
                for (pj, fj) in members.iter().skip(i + 1) {
                    let isomorphic =
                        !isomorphism_search(&fi.table, &[fi.a, fi.b], &fj.table, Some(1))?
                            .is_empty();
                    let expected = matches!(
                        (*pi, *pj),
                        (
                            GroupParams::NonMetacyclic { l: 1, .. },
                            GroupParams::NonMetacyclic { l: 1, .. },
                        )
                    );
                    if isomorphic != expected {
                        return Err(FactoriseError::ClassificationViolation(format!(
                            "{pi} and {pj} should be {}isomorphic but the search says \
                             otherwise",
                            if expected { "" } else { "non-" }
                        )));
                    }
                }
                // keep one representative of the coincident pair
                if !matches!(*pi, GroupParams::NonMetacyclic { k: 1, l: 1, .. }) {
                    names.push(pi.to_string());
                }
            }
            names.sort();
            Ok(ClassificationReport {
                e,
                class_names: names,
                metacyclic_classes: (e - 1) as usize,
                non_metacyclic_classes: 3,
                coincident_pair: Some((
                    format!("G2({e};0,1)"),
                    format!("G2({e};1,1)"),
                )),
                complete_by_search: false,
                note: "pairwise distinctness was established by isomorphism search within \
                       the constructed families; completeness beyond them is not \
                       established by this check"
                    .into(),
            })
        }
        other => Err(FactoriseError::UnsupportedExponent(other)),
    }
}

/// One entry of the emitted class index.
#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub file: String,
    pub order_profile: Vec<(usize, usize)>,
    pub derived_invariants: Vec<usize>,
    /// Family name when the distinguished pair classifies, `None` otherwise
    /// (swap-free classes, or orders below the classification range).
    pub matches_family: Option<String>,
}

/// The JSON index written next to the emitted group files.
#[derive(Clone, Debug, Serialize)]
pub struct ClassIndex {
    pub n: u64,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
}

/// Writes each class representative as a multiplication-table file
/// (`class_NN.gt`) plus an `index.json` summary into `dir`.
pub fn emit_classes(
    dir: &Path,
    n: u64,
    classes: &[Factorisation],
) -> Result<ClassIndex, FactoriseError> {
    fs::create_dir_all(dir)?;
    let mut entries = Vec::new();
    for (idx, fact) in classes.iter().enumerate() {
        let file = format!("class_{idx:02}.gt");
        fs::write(dir.join(&file), fact.table.to_text())?;
        let report = cayley::characteristic_subgroups(&fact.table)?;
        entries.push(ClassEntry {
            file,
            order_profile: fact.table.order_profile(),
            derived_invariants: derived_invariant_list(&fact.table, &report.derived)?,
            matches_family: classify_triple(&fact.table, fact.a, fact.b)
                .ok()
                .map(|params| params.to_string()),
        });
    }
    let index = ClassIndex { n, class_count: classes.len(), classes: entries };
    let mut payload = serde_json::to_string_pretty(&index)?;
    payload.push('\n');
    fs::write(dir.join("index.json"), payload)?;
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::find_isobicyclic_pairs;

    #[test]
    fn order_two_search_finds_only_the_klein_group() {
        for require_swap in [true, false] {
            let found = matched_pair_search(2, require_swap).unwrap();
            assert_eq!(found.len(), 1);
            let fact = &found[0];
            assert_eq!(fact.table.order(), 4);
            assert!(fact.table.is_abelian());
            assert_eq!(fact.table.order_profile(), vec![(1, 1), (2, 3)]);
        }
    }

    #[test]
    fn order_four_search_with_swap_matches_the_classification() {
        let found = matched_pair_search(4, true).unwrap();
        assert_eq!(found.len(), 2);
        let mut names: Vec<String> = found
            .iter()
            .map(|fact| classify_triple(&fact.table, fact.a, fact.b).unwrap().to_string())
            .collect();
        names.sort();
        assert_eq!(names, ["G1(2,2)", "G2(2;0,0)"]);
    }

    #[test]
    fn swap_free_order_four_count_is_stable() {
        let free = matched_pair_search(4, false).unwrap();
        // frozen after the first exhaustive run over all 4096 candidates
        assert_eq!(free.len(), 3, "found {}", free.len());
        let swapped = matched_pair_search(4, true).unwrap();
        for fact in &swapped {
            let hit = free.iter().any(|other| {
                !isomorphism_search(&fact.table, &[fact.a, fact.b], &other.table, Some(1))
                    .unwrap()
                    .is_empty()
            });
            assert!(hit, "swap class missing from the swap-free superset");
        }
    }

    #[test]
    fn emitted_groups_are_exact_factorisations() {
        for fact in matched_pair_search(4, false).unwrap() {
            assert_eq!(fact.table.order(), 16);
            assert_eq!(fact.table.element_order(fact.a), 4);
            assert_eq!(fact.table.element_order(fact.b), 4);
            let b_cyclic = Subgroup::generated(&fact.table, &[fact.b]);
            for k in 1..4 {
                let power = fact.table.power(fact.a, k);
                assert!(!b_cyclic.contains(power), "⟨a⟩ ∩ ⟨b⟩ is nontrivial");
            }
        }
    }

    #[test]
    fn swap_classes_contain_isobicyclic_pairs() {
        for fact in matched_pair_search(4, true).unwrap() {
            let scan = find_isobicyclic_pairs(&fact.table);
            assert!(scan.pairs.contains(&(fact.a, fact.b)));
        }
    }

    #[test]
    fn unsupported_orders_are_rejected() {
        assert!(matches!(
            matched_pair_search(8, true),
            Err(FactoriseError::UnsupportedOrder(8))
        ));
        assert!(matches!(
            matched_pair_search_expensive(16, true),
            Err(FactoriseError::UnsupportedOrder(16))
        ));
        assert!(matches!(verify_classification(5), Err(FactoriseError::UnsupportedExponent(5))));
    }

    #[test]
    fn classification_report_at_e_two() {
        let report = verify_classification(2).unwrap();
        assert_eq!(report.class_names, ["G1(2,2)", "G2(2;0,0)"]);
        assert!(report.complete_by_search);
        assert_eq!(report.coincident_pair, None);
    }

    #[test]
    fn classification_report_at_e_three() {
        let report = verify_classification(3).unwrap();
        assert_eq!(
            report.class_names,
            ["G1(3,2)", "G1(3,3)", "G2(3;0,0)", "G2(3;0,1)", "G2(3;1,0)"]
        );
        assert_eq!(report.metacyclic_classes, 2);
        assert_eq!(report.non_metacyclic_classes, 3);
        assert_eq!(
            report.coincident_pair,
            Some(("G2(3;0,1)".to_string(), "G2(3;1,1)".to_string()))
        );
        assert!(!report.complete_by_search);
    }

    #[test]
    fn classification_report_at_e_four() {
        let report = verify_classification(4).unwrap();
        assert_eq!(report.class_names.len(), 6);
        assert_eq!(report.metacyclic_classes, 3);
        assert_eq!(report.non_metacyclic_classes, 3);
    }

    #[test]
    fn emitted_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let classes = matched_pair_search(4, true).unwrap();
        let index = emit_classes(dir.path(), 4, &classes).unwrap();
        assert_eq!(index.class_count, 2);
        for (entry, fact) in index.classes.iter().zip(&classes) {
            let text = std::fs::read_to_string(dir.path().join(&entry.file)).unwrap();
            let back = GroupTable::from_text(&text).unwrap();
            assert_eq!(back.order(), fact.table.order());
            assert_eq!(back.order_profile(), fact.table.order_profile());
        }
        let raw = std::fs::read_to_string(dir.path().join("index.json")).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(parsed["class_count"], 2);
        assert_eq!(parsed["classes"].as_array().unwrap().len(), 2);
        let families: Vec<&str> = parsed["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["matches_family"].as_str().unwrap())
            .collect();
        assert!(families.contains(&"G1(2,2)"));
        assert!(families.contains(&"G2(2;0,0)"));
    }

    #[test]
    #[ignore = "order-64 heuristic search, run on demand"]
    fn expensive_order_eight_search_recovers_the_known_classes() {
        let found = matched_pair_search_expensive(8, true).unwrap();
        let mut names: Vec<String> = found
            .iter()
            .map(|fact| classify_triple(&fact.table, fact.a, fact.b).unwrap().to_string())
            .collect();
        names.sort();
        names.dedup();
        assert_eq!(
            names,
            ["G1(3,2)", "G1(3,3)", "G2(3;0,0)", "G2(3;0,1)", "G2(3;1,0)"]
        );
    }
}
