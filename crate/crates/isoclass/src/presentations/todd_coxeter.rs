//! Coset enumeration for finitely presented groups.
//!
//! The enumerator maintains a partial action table of cosets under the
//! generators and their inverses, scans relators to deduce entries, and
//! merges cosets found equal through a union-find with immediate row
//! migration. Coset numbers are assigned in first-definition order, so the
//! output is deterministic for a fixed strategy and cap.

use std::collections::VecDeque;

use super::{Presentation, Word};

/// Default limit on simultaneously live cosets.
pub const DEFAULT_COSET_CAP: usize = 1 << 18;

const UNDEF: u32 = u32::MAX;

/// Scheduling strategy for the enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Scan every relator at each coset in turn, filling gaps as they are
    /// found, then complete the coset's row.
    #[default]
    RelatorFirst,
    /// Drive all possible deductions to a fixpoint before defining each new
    /// coset at the first undefined table slot.
    CosetFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    CapacityExceeded,
}

/// Result of an enumeration: the coset count and, when complete, the action
/// of each generator as a permutation of `0..cosets` (coset 0 is the
/// subgroup itself).
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub cosets: usize,
    pub action: Vec<Vec<usize>>,
    pub status: EnumerationStatus,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// Image of `coset` under right multiplication by the generator.
    pub fn act(&self, coset: usize, generator: usize) -> usize {
        self.action[generator][coset]
    }

    /// Image of `coset` under a whole word.
    pub fn act_word(&self, coset: usize, word: &Word) -> usize {
        word.iter().fold(coset, |acc, &(g, e)| {
            let col = flat_column(g, e);
            (0..e.unsigned_abs()).fold(acc, |x, _| {
                if col.is_multiple_of(2) {
                    self.action[g][x]
                } else {
                    // inverse action: find the preimage
                    self.action[g].iter().position(|&y| y == x).expect("permutation")
                }
            })
        })
    }
}

fn flat_column(generator: usize, exponent: i64) -> usize {
    2 * generator + usize::from(exponent < 0)
}

fn flatten(word: &Word) -> Vec<u32> {
    let mut out = Vec::new();
    for &(g, e) in word {
        let col = flat_column(g, e) as u32;
        for _ in 0..e.unsigned_abs() {
            out.push(col);
        }
    }
    out
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    rep: Vec<u32>,
    live: usize,
    queue: VecDeque<(u32, u32)>,
    cap: usize,
    budget: usize,
    progress: u64,
}

enum ScanOutcome {
    Done,
    OutOfSpace,
}

impl Enumerator {
    fn new(generator_count: usize, cap: usize) -> Self {
        let cols = 2 * generator_count;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            rep: vec![0],
            live: 1,
            queue: VecDeque::new(),
            cap,
            // total definitions allowed across the run, so that repeated
            // define/collapse churn cannot run forever
            budget: cap.saturating_mul(4).max(cap + 1),
            progress: 0,
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.rep[x as usize] != x {
            let parent = self.rep[x as usize];
            self.rep[x as usize] = self.rep[parent as usize];
            x = self.rep[x as usize];
        }
        x
    }

    fn entry(&self, x: u32, col: u32) -> u32 {
        self.table[x as usize * self.cols + col as usize]
    }

    fn set(&mut self, x: u32, col: u32, value: u32) {
        self.table[x as usize * self.cols + col as usize] = value;
    }

    fn define(&mut self, x: u32, col: u32) -> Option<u32> {
        if self.live >= self.cap || self.rep.len() >= self.budget {
            return None;
        }
        let new = self.rep.len() as u32;
        self.rep.push(new);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(x, col, new);
        self.set(new, col ^ 1, x);
        self.live += 1;
        self.progress += 1;
        Some(new)
    }

    /// Merges the classes of `x` and `y`, migrating the rows of dying cosets
    /// into their survivors and queueing any induced coincidences.
    fn merge(&mut self, x: u32, y: u32) {
        self.queue.push_back((x, y));
        while let Some((x, y)) = self.queue.pop_front() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (survivor, dead) = if x < y { (x, y) } else { (y, x) };
            self.rep[dead as usize] = survivor;
            self.live -= 1;
            self.progress += 1;
            for col in 0..self.cols as u32 {
                let entry = self.entry(dead, col);
                if entry == UNDEF {
                    continue;
                }
                let target = self.find(entry);
                let existing = self.entry(survivor, col);
                if existing == UNDEF {
                    self.set(survivor, col, target);
                    // repair the mirror slot so backward scans see the edge
                    let mirror = self.entry(target, col ^ 1);
                    if mirror == UNDEF {
                        self.set(target, col ^ 1, survivor);
                    } else {
                        let mirror = self.find(mirror);
                        if mirror != survivor {
                            self.queue.push_back((mirror, survivor));
                        }
                    }
                } else {
                    let existing = self.find(existing);
                    if existing != target {
                        self.queue.push_back((existing, target));
                    }
                }
            }
        }
    }

    /// Scans the relator path starting and ending at `alpha`, deducing or
    /// (when `fill` is set) defining entries in any gap.
    fn scan(&mut self, alpha: u32, relator: &[u32], fill: bool) -> ScanOutcome {
        if relator.is_empty() {
            return ScanOutcome::Done;
        }
        let length = relator.len();
        let mut forward = self.find(alpha);
        let alpha = forward;
        let mut i = 0;
        while i < length {
            let next = self.entry(forward, relator[i]);
            if next == UNDEF {
                break;
            }
            forward = self.find(next);
            i += 1;
        }
        if i == length {
            if forward != alpha {
                self.merge(forward, alpha);
            }
            return ScanOutcome::Done;
        }
        let mut backward = alpha;
        let mut j = length;
        while j > i + 1 {
            let next = self.entry(backward, relator[j - 1] ^ 1);
            if next == UNDEF {
                break;
            }
            backward = self.find(next);
            j -= 1;
        }
        if j == i + 1 {
            // deduction: a single gap closes the cycle
            self.set(forward, relator[i], backward);
            self.set(backward, relator[i] ^ 1, forward);
            self.progress += 1;
            return ScanOutcome::Done;
        }
        if j == i {
            if forward != backward {
                self.merge(forward, backward);
            }
            return ScanOutcome::Done;
        }
        if !fill {
            return ScanOutcome::Done;
        }
        while j > i + 1 {
            match self.define(forward, relator[i]) {
                Some(new) => {
                    forward = new;
                    i += 1;
                }
                None => return ScanOutcome::OutOfSpace,
            }
        }
        self.set(forward, relator[i], backward);
        self.set(backward, relator[i] ^ 1, forward);
        self.progress += 1;
        ScanOutcome::Done
    }

    /// One deduction-only pass over every live coset and every relator.
    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut alpha = 0u32;
        while (alpha as usize) < self.rep.len() {
            if self.find(alpha) == alpha {
                for relator in relators {
                    if self.find(alpha) != alpha {
                        break;
                    }
                    self.scan(alpha, relator, false);
                }
            }
            alpha += 1;
        }
    }

    /// Scans with one relief attempt: on exhaustion, a lookahead pass may
    /// collapse cosets and free capacity.
    fn scan_with_relief(
        &mut self,
        alpha: u32,
        relator: &[u32],
        relators: &[Vec<u32>],
    ) -> ScanOutcome {
        match self.scan(alpha, relator, true) {
            ScanOutcome::Done => ScanOutcome::Done,
            ScanOutcome::OutOfSpace => {
                self.lookahead(relators);
                let alpha = self.find(alpha);
                self.scan(alpha, relator, true)
            }
        }
    }

    fn run_relator_first(&mut self, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> bool {
        for word in subgroup {
            if matches!(self.scan_with_relief(0, word, relators), ScanOutcome::OutOfSpace) {
                return false;
            }
        }
        loop {
            let before = self.progress;
            let mut alpha = 0u32;
            while (alpha as usize) < self.rep.len() {
                if self.find(alpha) != alpha {
                    alpha += 1;
                    continue;
                }
                for relator in relators {
                    if self.find(alpha) != alpha {
                        break;
                    }
                    if matches!(
                        self.scan_with_relief(alpha, relator, relators),
                        ScanOutcome::OutOfSpace
                    ) {
                        return false;
                    }
                }
                if self.find(alpha) == alpha {
                    for col in 0..self.cols as u32 {
                        if self.entry(alpha, col) == UNDEF
                            && self.ensure_defined(alpha, col, relators).is_none()
                        {
                            return false;
                        }
                    }
                }
                alpha += 1;
            }
            if self.progress == before {
                return true;
            }
        }
    }

    fn ensure_defined(&mut self, alpha: u32, col: u32, relators: &[Vec<u32>]) -> Option<u32> {
        if self.entry(alpha, col) != UNDEF {
            return Some(self.entry(alpha, col));
        }
        match self.define(alpha, col) {
            Some(new) => Some(new),
            None => {
                self.lookahead(relators);
                let alpha = self.find(alpha);
                if self.entry(alpha, col) != UNDEF {
                    return Some(self.entry(alpha, col));
                }
                self.define(alpha, col)
            }
        }
    }

    fn run_coset_first(&mut self, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> bool {
        for word in subgroup {
            if matches!(self.scan_with_relief(0, word, relators), ScanOutcome::OutOfSpace) {
                return false;
            }
        }
        loop {
            // deduction closure
            loop {
                let before = self.progress;
                self.lookahead(relators);
                if self.progress == before {
                    break;
                }
            }
            // first undefined slot in coset order, then column order
            let mut slot = None;
            let mut alpha = 0u32;
            'outer: while (alpha as usize) < self.rep.len() {
                if self.find(alpha) == alpha {
                    for col in 0..self.cols as u32 {
                        if self.entry(alpha, col) == UNDEF {
                            slot = Some((alpha, col));
                            break 'outer;
                        }
                    }
                }
                alpha += 1;
            }
            match slot {
                None => return true,
                Some((alpha, col)) => {
                    if self.ensure_defined(alpha, col, relators).is_none() {
                        return false;
                    }
                }
            }
        }
    }

    /// Renumbers live cosets in first-definition order and extracts the
    /// generator actions.
    fn extract(&mut self, complete: bool) -> CosetTable {
        let total = self.rep.len() as u32;
        let mut remap = vec![UNDEF; total as usize];
        let mut next = 0u32;
        for x in 0..total {
            if self.find(x) == x {
                remap[x as usize] = next;
                next += 1;
            }
        }
        let cosets = next as usize;
        if !complete {
            return CosetTable { cosets, action: Vec::new(), status: EnumerationStatus::CapacityExceeded };
        }
        let generators = self.cols / 2;
        let mut action = vec![vec![0usize; cosets]; generators];
        for x in 0..total {
            if remap[x as usize] == UNDEF {
                continue;
            }
            let row = remap[x as usize] as usize;
            for (g, column) in action.iter_mut().enumerate() {
                let entry = self.entry(x, 2 * g as u32);
                debug_assert_ne!(entry, UNDEF);
                let target = self.find(entry);
                column[row] = remap[target as usize] as usize;
            }
        }
        CosetTable { cosets, action, status: EnumerationStatus::Complete }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_words` in
/// the group presented by `presentation`, up to `cap` simultaneously live
/// cosets. Over the empty subgroup the coset count of a complete table is
/// the group order.
pub fn todd_coxeter(
    presentation: &Presentation,
    subgroup_words: &[Word],
    cap: usize,
    strategy: Strategy,
) -> CosetTable {
    let relators: Vec<Vec<u32>> =
        presentation.relators.iter().map(flatten).filter(|r| !r.is_empty()).collect();
    let subgroup: Vec<Vec<u32>> = subgroup_words.iter().map(flatten).collect();
    let mut enumerator = Enumerator::new(presentation.generators.len(), cap.max(1));
    let complete = match strategy {
        Strategy::RelatorFirst => enumerator.run_relator_first(&relators, &subgroup),
        Strategy::CosetFirst => enumerator.run_coset_first(&relators, &subgroup),
    };
    let table = enumerator.extract(complete);
    if complete {
        debug_assert!(verify(&table, &relators, &subgroup));
    }
    table
}

/// Full check that a complete table really is an action satisfying all
/// relators (and subgroup words at coset 0).
fn verify(table: &CosetTable, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> bool {
    let trace = |start: usize, cols: &[u32]| {
        cols.iter().try_fold(start, |x, &col| {
            let g = (col / 2) as usize;
            if col % 2 == 0 {
                Some(table.action[g][x])
            } else {
                table.action[g].iter().position(|&y| y == x)
            }
        })
    };
    for g in 0..table.action.len() {
        let mut seen = vec![false; table.cosets];
        for x in 0..table.cosets {
            seen[table.action[g][x]] = true;
        }
        if !seen.iter().all(|&s| s) {
            return false;
        }
    }
    relators
        .iter()
        .all(|r| (0..table.cosets).all(|x| trace(x, r) == Some(x)))
        && subgroup.iter().all(|w| trace(0, w) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::super::parse_presentation;
    use super::*;

    fn enumerate(text: &str, strategy: Strategy) -> CosetTable {
        todd_coxeter(&parse_presentation(text).unwrap(), &[], DEFAULT_COSET_CAP, strategy)
    }

    #[test]
    fn cyclic_group_of_order_four() {
        let table = enumerate("< g | g^4 >", Strategy::RelatorFirst);
        assert!(table.is_complete());
        assert_eq!(table.cosets, 4);
        assert_eq!(table.action, vec![vec![1, 2, 3, 0]]);
    }

    #[test]
    fn coincidences_collapse_to_the_gcd() {
        let table = enumerate("< g | g^4, g^6 >", Strategy::RelatorFirst);
        assert_eq!(table.cosets, 2);
    }

    #[test]
    fn klein_four_group() {
        let table = enumerate("< a, b | a^2, b^2, [a, b] >", Strategy::RelatorFirst);
        assert_eq!(table.cosets, 4);
    }

    #[test]
    fn quaternion_group() {
        for strategy in [Strategy::RelatorFirst, Strategy::CosetFirst] {
            let table = enumerate("< a, b | a^4, a^2 = b^2, b^-1 a b a >", strategy);
            assert!(table.is_complete());
            assert_eq!(table.cosets, 8, "{strategy:?}");
        }
    }

    #[test]
    fn symmetric_group_on_three_points_with_subgroup() {
        let p = parse_presentation("< a, b | a^3, b^2, (ab)^2 >").unwrap();
        let full = todd_coxeter(&p, &[], DEFAULT_COSET_CAP, Strategy::RelatorFirst);
        assert_eq!(full.cosets, 6);
        let over_a = todd_coxeter(&p, &[vec![(0, 1)]], DEFAULT_COSET_CAP, Strategy::RelatorFirst);
        assert_eq!(over_a.cosets, 2);
        let over_b = todd_coxeter(&p, &[vec![(1, 1)]], DEFAULT_COSET_CAP, Strategy::RelatorFirst);
        assert_eq!(over_b.cosets, 3);
    }

    #[test]
    fn free_group_exceeds_any_cap() {
        let p = parse_presentation("< a, b | >").unwrap();
        let table = todd_coxeter(&p, &[], 64, Strategy::RelatorFirst);
        assert_eq!(table.status, EnumerationStatus::CapacityExceeded);
        assert!(!table.is_complete());
        assert!(table.action.is_empty());
    }

    #[test]
    fn strategies_agree_on_coset_counts() {
        for text in [
            "< g | g^12 >",
            "< a, b | a^4, b^4, [a, b] >",
            "< a, b | a^3, b^2, (ab)^2 >",
            "< a, b | a^2, b^3, (ab)^7, [a,b]^4 >", // PSL(2,7), order 168
        ] {
            let first = enumerate(text, Strategy::RelatorFirst);
            let second = enumerate(text, Strategy::CosetFirst);
            assert!(first.is_complete() && second.is_complete(), "{text}");
            assert_eq!(first.cosets, second.cosets, "{text}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let first = enumerate("< a, b | a^4, b^4, a b a b^-1 >", Strategy::RelatorFirst);
        let second = enumerate("< a, b | a^4, b^4, a b a b^-1 >", Strategy::RelatorFirst);
        assert_eq!(first.cosets, second.cosets);
        assert_eq!(first.action, second.action);
    }

    #[test]
    fn identity_coset_is_preserved_by_subgroup_words() {
        let p = parse_presentation("< a, b | a^4, b^4, [a, b] >").unwrap();
        let words = vec![vec![(0usize, 2i64)], vec![(1usize, 1i64), (0usize, 1i64)]];
        let table = todd_coxeter(&p, &words, DEFAULT_COSET_CAP, Strategy::RelatorFirst);
        assert!(table.is_complete());
        for word in &words {
            assert_eq!(table.act_word(0, word), 0);
        }
    }
}
