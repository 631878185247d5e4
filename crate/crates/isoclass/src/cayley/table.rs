use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CayleyError;

/// Default cap on the number of elements a closure may enumerate.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// Orders up to which the group axioms are verified over every triple;
/// larger tables are spot-checked on seeded random triples.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;
const SAMPLED_ASSOC_TRIALS: usize = 100_000;
const ASSOC_SAMPLE_SEED: u64 = 0x1505_caf3;

/// A finite group given by a full multiplication table.
///
/// Elements are the indices `0..order`. The table is validated on
/// construction: a two-sided identity must exist, every element must have an
/// inverse, and associativity is checked (exhaustively up to order
/// 256, on 100 000 seeded random triples beyond that).
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    identity: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Builds and validates a table from explicit rows (`rows[x][y] = x·y`).
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, CayleyError> {
        let order = rows.len();
        if order == 0 {
            return Err(CayleyError::NotAGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(CayleyError::NotAGroup(format!(
                    "row length {} differs from order {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(CayleyError::IndexOutOfRange { index: v, order });
                }
                mul.push(v);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] == x && mul[x * order + e] == x))
            .ok_or_else(|| CayleyError::NotAGroup("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| mul[x * order + y] == identity && mul[y * order + x] == identity)
                .ok_or_else(|| CayleyError::NotAGroup(format!("element {x} has no inverse")))?;
            inv[x] = y;
        }
        let table = GroupTable { order, identity, mul, inv, labels: None };
        table.check_associativity()?;
        Ok(table)
    }

    fn check_associativity(&self) -> Result<(), CayleyError> {
        let n = self.order;
        let bad = |x: usize, y: usize, z: usize| {
            CayleyError::NotAGroup(format!("associativity fails at ({x}, {y}, {z})"))
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(bad(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SAMPLE_SEED);
            for _ in 0..SAMPLED_ASSOC_TRIALS {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(bad(x, y, z));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `x^k` for any integer exponent.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Least `t > 0` with `x^t = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut t = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            t += 1;
        }
        t
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_two_group(&self) -> bool {
        self.order.is_power_of_two()
    }

    /// Multiset of element orders as sorted `(order, count)` pairs.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for x in 0..self.order {
            let t = self.element_order(x);
            match counts.binary_search_by_key(&t, |&(o, _)| o) {
                Ok(pos) => counts[pos].1 += 1,
                Err(pos) => counts.insert(pos, (t, 1)),
            }
        }
        counts
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), CayleyError> {
        if labels.len() != self.order {
            return Err(CayleyError::LengthMismatch {
                sources: self.order,
                images: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    /// A small generating set found greedily: repeatedly adjoin the least
    /// element outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = Subgroup::generated(self, &gens);
        while have.len() < self.order {
            let next = (0..self.order).find(|&x| !have.contains(x)).unwrap();
            gens.push(next);
            have = Subgroup::generated(self, &gens);
        }
        gens
    }

    /// Serialises to the portable text form: a header line
    /// `order N identity I` followed by `N` rows of `N` indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("order {} identity {}\n", self.order, self.identity));
        for x in 0..self.order {
            let row: Vec<String> =
                (0..self.order).map(|y| self.mul(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text form produced by [`GroupTable::to_text`]; the result
    /// is re-validated, and serialising it again reproduces the input
    /// byte for byte.
    pub fn from_text(text: &str) -> Result<Self, CayleyError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| CayleyError::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (order, identity) = match fields.as_slice() {
            ["order", n, "identity", i] => {
                let order: usize =
                    n.parse().map_err(|_| CayleyError::Parse(format!("bad order {n:?}")))?;
                let identity: usize =
                    i.parse().map_err(|_| CayleyError::Parse(format!("bad identity {i:?}")))?;
                (order, identity)
            }
            _ => return Err(CayleyError::Parse(format!("bad header {header:?}"))),
        };
        let mut rows = Vec::with_capacity(order);
        for _ in 0..order {
            let line = lines.next().ok_or_else(|| CayleyError::Parse("truncated table".into()))?;
            let row: Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse::<usize>).collect();
            let row = row.map_err(|_| CayleyError::Parse(format!("bad row {line:?}")))?;
            rows.push(row);
        }
        if lines.next().is_some_and(|l| !l.trim().is_empty()) {
            return Err(CayleyError::Parse("trailing content after table".into()));
        }
        let table = Self::from_rows(rows)?;
        if table.identity != identity {
            return Err(CayleyError::Parse(format!(
                "header identity {identity} but table identity is {}",
                table.identity
            )));
        }
        Ok(table)
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order={}, identity={})", self.order, self.identity)
    }
}

/// Result of closing a generating set under an abstract multiplication rule.
pub struct Closure<T> {
    /// The validated multiplication table over the enumerated elements.
    pub table: GroupTable,
    /// Element of each index, in breadth-first discovery order.
    pub elements: Vec<T>,
    /// Indices of the supplied generators.
    pub generators: Vec<usize>,
}

/// Closes `gens` under `mul_rule` breadth-first from the identity and
/// materialises the multiplication table.
///
/// The identity is located by iterating powers of the first generator. The
/// element indexing is deterministic: identity first, then new products
/// `x · g` in queue order with generators tried in the order given. Fails if
/// more than `cap` elements appear.
pub fn build_from_generators<T, F>(
    mul_rule: F,
    gens: &[T],
    cap: usize,
) -> Result<Closure<T>, CayleyError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let elements = enumerate_closure(&mul_rule, gens, cap)?;
    let index: HashMap<T, usize> =
        elements.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let order = elements.len();
    let mut rows = vec![vec![0usize; order]; order];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let prod = mul_rule(x, y);
            rows[i][j] = *index
                .get(&prod)
                .ok_or_else(|| CayleyError::NotAGroup("closure not closed".into()))?;
        }
    }
    let table = GroupTable::from_rows(rows)?;
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(Closure { table, elements, generators })
}

/// Number of elements generated by `gens` under `mul_rule`, without
/// materialising the table.
pub fn closure_order<T, F>(mul_rule: F, gens: &[T], cap: usize) -> Result<usize, CayleyError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    Ok(enumerate_closure(&mul_rule, gens, cap)?.len())
}

fn enumerate_closure<T, F>(mul_rule: &F, gens: &[T], cap: usize) -> Result<Vec<T>, CayleyError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let first = gens.first().ok_or(CayleyError::NoGenerators)?;
    // g^t = g forces g^(t-1) to be the identity.
    let mut power = first.clone();
    let mut steps = 0usize;
    let identity = loop {
        let next = mul_rule(&power, first);
        if next == *first {
            break power;
        }
        steps += 1;
        if steps > cap {
            return Err(CayleyError::ClosureCapExceeded { cap });
        }
        power = next;
    };
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in gens {
            let product = mul_rule(&current, g);
            if !index.contains_key(&product) {
                if elements.len() >= cap {
                    return Err(CayleyError::ClosureCapExceeded { cap });
                }
                index.insert(product.clone(), elements.len());
                elements.push(product);
            }
        }
    }
    Ok(elements)
}

/// A subgroup of a [`GroupTable`], stored as a sorted member list with a
/// bitmask for constant-time membership tests.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<u64>,
    parent_order: usize,
}

impl Subgroup {
    /// Validates that `members` really form a subgroup of `parent`.
    pub fn from_members(parent: &GroupTable, mut members: Vec<usize>) -> Result<Self, CayleyError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&x| x >= parent.order()) {
            return Err(CayleyError::IndexOutOfRange { index: bad, order: parent.order() });
        }
        let sub = Self::from_sorted_unchecked(parent.order(), members);
        if !sub.contains(parent.identity()) {
            return Err(CayleyError::NotASubgroup("missing identity".into()));
        }
        for &x in &sub.members {
            if !sub.contains(parent.inv(x)) {
                return Err(CayleyError::NotASubgroup(format!("missing inverse of {x}")));
            }
            for &y in &sub.members {
                if !sub.contains(parent.mul(x, y)) {
                    return Err(CayleyError::NotASubgroup(format!("not closed at {x}·{y}")));
                }
            }
        }
        if !parent.order().is_multiple_of(sub.len()) {
            return Err(CayleyError::NotASubgroup(format!(
                "order {} does not divide {}",
                sub.len(),
                parent.order()
            )));
        }
        Ok(sub)
    }

    fn from_sorted_unchecked(parent_order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![0u64; parent_order.div_ceil(64)];
        for &x in &members {
            mask[x / 64] |= 1 << (x % 64);
        }
        Subgroup { members, mask, parent_order }
    }

    /// The subgroup generated by `gens` (the trivial subgroup when empty).
    pub fn generated(parent: &GroupTable, gens: &[usize]) -> Self {
        let mut mask = vec![0u64; parent.order().div_ceil(64)];
        let mut queue = vec![parent.identity()];
        mask[parent.identity() / 64] |= 1 << (parent.identity() % 64);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = parent.mul(x, g);
                if mask[y / 64] >> (y % 64) & 1 == 0 {
                    mask[y / 64] |= 1 << (y % 64);
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        Subgroup { members: queue, mask, parent_order: parent.order() }
    }

    pub fn trivial(parent: &GroupTable) -> Self {
        Self::generated(parent, &[])
    }

    pub fn full(parent: &GroupTable) -> Self {
        Self::from_sorted_unchecked(parent.order(), (0..parent.order()).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn index_in(&self, parent: &GroupTable) -> usize {
        parent.order() / self.len()
    }

    pub fn is_normal(&self, parent: &GroupTable) -> bool {
        let gens = parent.generating_set();
        self.members
            .iter()
            .all(|&x| gens.iter().all(|&g| self.contains(parent.conjugate(x, g))))
    }

    pub fn is_abelian(&self, parent: &GroupTable) -> bool {
        self.members.iter().all(|&x| {
            self.members.iter().all(|&y| parent.mul(x, y) == parent.mul(y, x))
        })
    }

    pub fn is_cyclic(&self, parent: &GroupTable) -> bool {
        self.members.iter().any(|&x| parent.element_order(x) == self.len())
    }

    /// Materialises the subgroup as a group table of its own. Element `i` of
    /// the result corresponds to `self.members()[i]`.
    pub fn as_table(&self, parent: &GroupTable) -> Result<GroupTable, CayleyError> {
        let pos: HashMap<usize, usize> =
            self.members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&x| self.members.iter().map(|&y| pos[&parent.mul(x, y)]).collect())
            .collect();
        GroupTable::from_rows(rows)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order={}, of={})", self.members.len(), self.parent_order)
    }
}
