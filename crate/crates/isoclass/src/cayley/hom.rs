use rayon::prelude::*;

use super::table::{GroupTable, Subgroup};
use super::CayleyError;

/// An assignment of images to a list of source elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMap {
    pub sources: Vec<usize>,
    pub images: Vec<usize>,
}

/// A total homomorphism produced by [`extend_generator_map`].
pub struct Homomorphism {
    /// Image of every element of the source group.
    pub map: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
}

impl Homomorphism {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Result of attempting to extend a generator map.
pub enum ExtendOutcome {
    Homomorphism(Homomorphism),
    /// No extension exists: the two words (sequences of generator positions)
    /// multiply to the same source element but to different images.
    Conflict { word_a: Vec<usize>, word_b: Vec<usize> },
}

/// Extends `sources ↦ images` to a homomorphism `g1 → g2` if one exists.
///
/// The sources must generate `g1`. The extension is defined along a
/// breadth-first traversal and then every product of an element with a
/// generator is checked, which suffices for the multiplicative property on
/// all pairs. On conflict the two witnessing generator words are returned.
pub fn extend_generator_map(
    g1: &GroupTable,
    g2: &GroupTable,
    m: &GenMap,
) -> Result<ExtendOutcome, CayleyError> {
    if m.sources.len() != m.images.len() {
        return Err(CayleyError::LengthMismatch {
            sources: m.sources.len(),
            images: m.images.len(),
        });
    }
    for &s in &m.sources {
        if s >= g1.order() {
            return Err(CayleyError::IndexOutOfRange { index: s, order: g1.order() });
        }
    }
    for &t in &m.images {
        if t >= g2.order() {
            return Err(CayleyError::IndexOutOfRange { index: t, order: g2.order() });
        }
    }

    let order = g1.order();
    const UNDEF: usize = usize::MAX;
    let mut phi = vec![UNDEF; order];
    // def[x] = (parent, generator position) reconstructs a defining word.
    let mut def = vec![(UNDEF, UNDEF); order];
    let mut queue = Vec::with_capacity(order);
    phi[g1.identity()] = g2.identity();
    queue.push(g1.identity());
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (t, (&s, &img)) in m.sources.iter().zip(&m.images).enumerate() {
            let y = g1.mul(x, s);
            let fy = g2.mul(phi[x], img);
            if phi[y] == UNDEF {
                phi[y] = fy;
                def[y] = (x, t);
                queue.push(y);
            } else if phi[y] != fy {
                let word = |mut e: usize, def: &[(usize, usize)]| {
                    let mut w = Vec::new();
                    while e != g1.identity() {
                        let (p, t) = def[e];
                        w.push(t);
                        e = p;
                    }
                    w.reverse();
                    w
                };
                let mut word_a = word(x, &def);
                word_a.push(t);
                let word_b = word(y, &def);
                return Ok(ExtendOutcome::Conflict { word_a, word_b });
            }
        }
    }
    if queue.len() != order {
        return Err(CayleyError::NotGenerating);
    }
    let mut seen = vec![false; g2.order()];
    let mut distinct = 0;
    for &y in &phi {
        if !seen[y] {
            seen[y] = true;
            distinct += 1;
        }
    }
    Ok(ExtendOutcome::Homomorphism(Homomorphism {
        injective: distinct == order,
        surjective: distinct == g2.order(),
        map: phi,
    }))
}

/// Lean extension check used by the searches: returns the image map if
/// `sources ↦ images` extends to an isomorphism, without building witness
/// words.
pub(crate) fn try_extend_isomorphism(
    g1: &GroupTable,
    sources: &[usize],
    g2: &GroupTable,
    images: &[usize],
) -> Option<Vec<usize>> {
    if g1.order() != g2.order() {
        return None;
    }
    let order = g1.order();
    const UNDEF: usize = usize::MAX;
    let mut phi = vec![UNDEF; order];
    let mut queue = Vec::with_capacity(order);
    phi[g1.identity()] = g2.identity();
    queue.push(g1.identity());
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &img) in sources.iter().zip(images) {
            let y = g1.mul(x, s);
            let fy = g2.mul(phi[x], img);
            if phi[y] == UNDEF {
                phi[y] = fy;
                queue.push(y);
            } else if phi[y] != fy {
                return None;
            }
        }
    }
    if queue.len() != order {
        return None;
    }
    let mut seen = vec![false; order];
    for &y in &phi {
        if seen[y] {
            return None;
        }
        seen[y] = true;
    }
    Some(phi)
}

/// All ways of mapping `gens1` into `g2` that extend to isomorphisms
/// `g1 → g2`, in lexicographic order of the image tuples.
///
/// Candidates are pruned by matching element orders before attempting the
/// extension. With `limit = Some(k)` the search stops after `k` witnesses
/// (scanning sequentially); with `limit = None` the candidate space is
/// partitioned across threads and merged back in candidate order.
pub fn isomorphism_search(
    g1: &GroupTable,
    gens1: &[usize],
    g2: &GroupTable,
    limit: Option<usize>,
) -> Result<Vec<GenMap>, CayleyError> {
    if gens1.is_empty() {
        return Err(CayleyError::NoGenerators);
    }
    for &s in gens1 {
        if s >= g1.order() {
            return Err(CayleyError::IndexOutOfRange { index: s, order: g1.order() });
        }
    }
    if Subgroup::generated(g1, gens1).len() != g1.order() {
        return Err(CayleyError::NotGenerating);
    }
    if g1.order() != g2.order() || limit == Some(0) {
        return Ok(Vec::new());
    }
    let candidates: Vec<Vec<usize>> = gens1
        .iter()
        .map(|&s| {
            let target = g1.element_order(s);
            (0..g2.order()).filter(|&y| g2.element_order(y) == target).collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }

    let search_tail = |first: usize| {
        let mut found = Vec::new();
        let tail = &candidates[1..];
        let mut images = vec![first];
        // odometer over the remaining candidate lists
        let mut idx = vec![0usize; tail.len()];
        loop {
            images.truncate(1);
            images.extend(idx.iter().zip(tail).map(|(&i, c)| c[i]));
            if try_extend_isomorphism(g1, gens1, g2, &images).is_some() {
                found.push(GenMap { sources: gens1.to_vec(), images: images.clone() });
            }
            let mut pos = tail.len();
            loop {
                if pos == 0 {
                    return found;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < tail[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
            if tail.is_empty() {
                return found;
            }
        }
    };

    match limit {
        Some(k) => {
            let mut out = Vec::new();
            for &first in &candidates[0] {
                for found in search_tail(first) {
                    out.push(found);
                    if out.len() >= k {
                        return Ok(out);
                    }
                }
            }
            Ok(out)
        }
        None => {
            let chunks: Vec<Vec<GenMap>> =
                candidates[0].par_iter().map(|&first| search_tail(first)).collect();
            Ok(chunks.into_iter().flatten().collect())
        }
    }
}

/// Result of scanning a group for isobicyclic pairs.
pub struct PairScan {
    /// `√order` when the order is a perfect square.
    pub n: Option<usize>,
    /// All ordered pairs `(a, b)` with `|a| = |b| = n`, `⟨a⟩ ∩ ⟨b⟩ = 1` and
    /// `(a, b) ↦ (b, a)` extending to an automorphism, in lexicographic
    /// order.
    pub pairs: Vec<(usize, usize)>,
    /// Present when the scan is vacuous (non-square order).
    pub note: Option<String>,
}

/// Finds every isobicyclic pair of the group.
pub fn find_isobicyclic_pairs(g: &GroupTable) -> PairScan {
    let order = g.order();
    let n = (1..=order).find(|&n| n * n == order);
    let Some(n) = n else {
        return PairScan {
            n: None,
            pairs: Vec::new(),
            note: Some(format!("order {order} is not a perfect square")),
        };
    };
    let candidates: Vec<usize> = (0..order).filter(|&x| g.element_order(x) == n).collect();
    let cyclics: Vec<Subgroup> =
        candidates.iter().map(|&x| Subgroup::generated(g, &[x])).collect();
    let pairs: Vec<Vec<(usize, usize)>> = candidates
        .par_iter()
        .enumerate()
        .map(|(ai, &a)| {
            let mut found = Vec::new();
            let mut pow = Vec::with_capacity(n);
            let mut acc = a;
            for _ in 1..n {
                pow.push(acc);
                acc = g.mul(acc, a);
            }
            for (bi, &b) in candidates.iter().enumerate() {
                if bi == ai {
                    continue;
                }
                if pow.iter().any(|&p| cyclics[bi].contains(p)) {
                    continue;
                }
                if try_extend_isomorphism(g, &[a, b], g, &[b, a]).is_some() {
                    found.push((a, b));
                }
            }
            found
        })
        .collect();
    PairScan { n: Some(n), pairs: pairs.into_iter().flatten().collect(), note: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_from_generators;

    fn cyclic(n: usize) -> GroupTable {
        let rows = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        GroupTable::from_rows(rows).unwrap()
    }

    fn klein_four() -> GroupTable {
        let mul = |a: &(u8, u8), b: &(u8, u8)| ((a.0 + b.0) % 2, (a.1 + b.1) % 2);
        build_from_generators(mul, &[(1, 0), (0, 1)], 8).unwrap().table
    }

    #[test]
    fn extension_of_valid_generator_map() {
        let g = cyclic(4);
        let m = GenMap { sources: vec![1], images: vec![3] };
        match extend_generator_map(&g, &g, &m).unwrap() {
            ExtendOutcome::Homomorphism(h) => {
                assert!(h.is_isomorphism());
                assert_eq!(h.map, vec![0, 3, 2, 1]);
            }
            ExtendOutcome::Conflict { .. } => panic!("expected a homomorphism"),
        }
    }

    #[test]
    fn extension_conflict_produces_witness_words() {
        // Sending a generator of order 4 to one of order 8 breaks the
        // order-4 relation: the witness words must evaluate equal in the
        // source but differ in the target.
        let src = cyclic(4);
        let tgt = cyclic(8);
        let m = GenMap { sources: vec![1], images: vec![1] };
        match extend_generator_map(&src, &tgt, &m).unwrap() {
            ExtendOutcome::Conflict { word_a, word_b } => {
                let eval = |g: &GroupTable, word: &[usize]| {
                    word.iter().fold(g.identity(), |acc, _| g.mul(acc, 1))
                };
                assert_eq!(eval(&src, &word_a), eval(&src, &word_b));
                assert_ne!(eval(&tgt, &word_a), eval(&tgt, &word_b));
            }
            ExtendOutcome::Homomorphism(_) => panic!("expected a conflict"),
        }
    }

    #[test]
    fn non_generating_sources_are_rejected() {
        let g = cyclic(4);
        let m = GenMap { sources: vec![2], images: vec![2] };
        assert!(matches!(extend_generator_map(&g, &g, &m), Err(CayleyError::NotGenerating)));
    }

    #[test]
    fn automorphisms_of_cyclic_eight() {
        let g = cyclic(8);
        let autos = isomorphism_search(&g, &[1], &g, None).unwrap();
        let images: Vec<usize> = autos.iter().map(|m| m.images[0]).collect();
        assert_eq!(images, vec![1, 3, 5, 7]);
    }

    #[test]
    fn isomorphism_search_distinguishes_groups() {
        let g = cyclic(4);
        let v = klein_four();
        let gens = v.generating_set();
        assert!(isomorphism_search(&v, &gens, &g, None).unwrap().is_empty());
    }

    #[test]
    fn search_limit_truncates() {
        let g = cyclic(8);
        let autos = isomorphism_search(&g, &[1], &g, Some(2)).unwrap();
        assert_eq!(autos.len(), 2);
    }

    #[test]
    fn isobicyclic_pairs_of_klein_four() {
        let v = klein_four();
        let scan = find_isobicyclic_pairs(&v);
        assert_eq!(scan.n, Some(2));
        // any two distinct involutions work, and the swap always extends
        assert_eq!(scan.pairs.len(), 6);
        assert!(scan.note.is_none());
    }

    #[test]
    fn non_square_order_is_noted() {
        let scan = find_isobicyclic_pairs(&cyclic(8));
        assert_eq!(scan.n, None);
        assert!(scan.pairs.is_empty());
        assert!(scan.note.is_some());
    }

    #[test]
    fn cyclic_four_has_no_isobicyclic_pairs() {
        // order 4 is square but the unique involution lies in every C2
        let scan = find_isobicyclic_pairs(&cyclic(4));
        assert_eq!(scan.n, Some(2));
        assert!(scan.pairs.is_empty());
    }
}
