//! The two families of isobicyclic 2-groups of order `2^(2e)`, realised as
//! exact arithmetic on normal-form exponent pairs.
//!
//! Every element of a group in either family is uniquely `x^i y^j` with
//! `0 ≤ i, j < n = 2^e`, where `(x, y)` is `(g, h)` for the metacyclic family
//! and `(a, b)` for the non-metacyclic one:
//!
//! - `G1(e, f) = ⟨h, g | h^n = g^n = 1, h^g = h^(1+2^f)⟩` with `2 ≤ f ≤ e`
//!   (abelian exactly when `f = e`);
//! - `G2(e; k, l) = ⟨a, b | a^n = b^n = [b^2, a^2] = 1,
//!   [b, a] = a^2 b^-2 z^k, (b^2)^a = b^-2 z^l, (a^2)^b = a^-2 z^l⟩` with
//!   `z = a^(n/2) b^(n/2)` central and `k = l = 0` forced when `e = 2`.
//!
//! Multiplication reduces `b^j a^i` through a four-way parity case split; the
//! orders, centre, Frattini subgroup, derived subgroup and upper central
//! series all have closed forms, each of which the tests check against the
//! brute-force computations in [`crate::cayley`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cayley::{self, CayleyError, GroupTable};

/// Largest `e` accepted for normal-form arithmetic.
pub const MAX_E: u32 = 30;
/// Largest `e` for which [`to_cayley`] will materialise a table.
pub const TABLE_MAX_E: u32 = 8;

#[derive(Debug, Error)]
pub enum FamiliesError {
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("closed-form orders are defined for the non-metacyclic family only")]
    ClosedFormUnsupported,
    #[error("e = {e} exceeds the table cap of e ≤ {TABLE_MAX_E}")]
    TableCapExceeded { e: u32 },
    #[error("cannot parse {0:?} as family parameters")]
    ParseParams(String),
    #[error("cannot parse {0:?} as a normal-form element")]
    ParseElement(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

/// Parameters selecting one group from either family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupParams {
    /// `G1(e, f)`, metacyclic.
    Metacyclic { e: u32, f: u32 },
    /// `G2(e; k, l)`, non-metacyclic.
    NonMetacyclic { e: u32, k: u8, l: u8 },
}

impl GroupParams {
    pub fn metacyclic(e: u32, f: u32) -> Result<Self, FamiliesError> {
        if !(2..=MAX_E).contains(&e) {
            return Err(FamiliesError::InvalidParams(format!("need 2 ≤ e ≤ {MAX_E}, got e = {e}")));
        }
        if !(2..=e).contains(&f) {
            return Err(FamiliesError::InvalidParams(format!(
                "need 2 ≤ f ≤ e = {e}, got f = {f}"
            )));
        }
        Ok(GroupParams::Metacyclic { e, f })
    }

    pub fn non_metacyclic(e: u32, k: u8, l: u8) -> Result<Self, FamiliesError> {
        if !(2..=MAX_E).contains(&e) {
            return Err(FamiliesError::InvalidParams(format!("need 2 ≤ e ≤ {MAX_E}, got e = {e}")));
        }
        if k > 1 || l > 1 {
            return Err(FamiliesError::InvalidParams(format!(
                "need k, l ∈ {{0, 1}}, got k = {k}, l = {l}"
            )));
        }
        if e == 2 && (k, l) != (0, 0) {
            return Err(FamiliesError::InvalidParams(
                "e = 2 forces k = l = 0".into(),
            ));
        }
        Ok(GroupParams::NonMetacyclic { e, k, l })
    }

    /// Every valid parameter choice at a given `e`, metacyclic first, in
    /// lexicographic order.
    pub fn all_for(e: u32) -> Vec<GroupParams> {
        let mut out = Vec::new();
        for f in 2..=e {
            out.extend(Self::metacyclic(e, f));
        }
        let kls: &[(u8, u8)] =
            if e == 2 { &[(0, 0)] } else { &[(0, 0), (0, 1), (1, 0), (1, 1)] };
        for &(k, l) in kls {
            out.extend(Self::non_metacyclic(e, k, l));
        }
        out
    }

    pub fn e(&self) -> u32 {
        match *self {
            GroupParams::Metacyclic { e, .. } | GroupParams::NonMetacyclic { e, .. } => e,
        }
    }

    /// `n = 2^e`, the order of each cyclic factor.
    pub fn n(&self) -> u64 {
        1u64 << self.e()
    }

    /// `m = n / 2`.
    pub fn m(&self) -> u64 {
        self.n() >> 1
    }

    pub fn group_order(&self) -> u64 {
        1u64 << (2 * self.e())
    }

    pub fn is_metacyclic_family(&self) -> bool {
        matches!(self, GroupParams::Metacyclic { .. })
    }

    /// Names of the two canonical generators in normal-form order.
    pub fn symbols(&self) -> (&'static str, &'static str) {
        match self {
            GroupParams::Metacyclic { .. } => ("g", "h"),
            GroupParams::NonMetacyclic { .. } => ("a", "b"),
        }
    }

    /// Renders `x` as e.g. `a^3 b^1`.
    pub fn format_element(&self, x: NFElement) -> String {
        let (s1, s2) = self.symbols();
        format!("{s1}^{} {s2}^{}", x.i, x.j)
    }

    /// Renders `x` without the inner space, for single-token contexts.
    pub fn format_element_compact(&self, x: NFElement) -> String {
        let (s1, s2) = self.symbols();
        format!("{s1}^{}{s2}^{}", x.i, x.j)
    }

    /// Parses `a^3 b^1` (or `g^3h^1`; the space is optional) back to an
    /// element, reducing exponents mod `n`.
    pub fn parse_element(&self, text: &str) -> Result<NFElement, FamiliesError> {
        let (s1, s2) = self.symbols();
        let bad = || FamiliesError::ParseElement(text.to_string());
        let rest = text.trim().strip_prefix(s1).ok_or_else(bad)?;
        let rest = rest.strip_prefix('^').ok_or_else(bad)?;
        let split = rest.find(s2).ok_or_else(bad)?;
        let i: u64 = rest[..split].trim().parse().map_err(|_| bad())?;
        let rest = rest[split + s2.len()..].strip_prefix('^').ok_or_else(bad)?;
        let j: u64 = rest.trim().parse().map_err(|_| bad())?;
        Ok(self.reduce(NFElement { i, j }))
    }

    fn reduce(&self, x: NFElement) -> NFElement {
        let n = self.n();
        NFElement { i: x.i % n, j: x.j % n }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupParams::Metacyclic { e, f } => write!(out, "G1({e},{f})"),
            GroupParams::NonMetacyclic { e, k, l } => write!(out, "G2({e};{k},{l})"),
        }
    }
}

impl FromStr for GroupParams {
    type Err = FamiliesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamiliesError::ParseParams(s.to_string());
        let body = s.trim();
        if let Some(args) = body.strip_prefix("G1(").and_then(|r| r.strip_suffix(')')) {
            let (e, f) = args.split_once(',').ok_or_else(bad)?;
            let e = e.trim().parse().map_err(|_| bad())?;
            let f = f.trim().parse().map_err(|_| bad())?;
            return GroupParams::metacyclic(e, f);
        }
        if let Some(args) = body.strip_prefix("G2(").and_then(|r| r.strip_suffix(')')) {
            let (e, kl) = args.split_once(';').ok_or_else(bad)?;
            let (k, l) = kl.split_once(',').ok_or_else(bad)?;
            let e = e.trim().parse().map_err(|_| bad())?;
            let k = k.trim().parse().map_err(|_| bad())?;
            let l = l.trim().parse().map_err(|_| bad())?;
            return GroupParams::non_metacyclic(e, k, l);
        }
        Err(bad())
    }
}

/// A normal-form element `x^i y^j` of a family group, with exponents reduced
/// mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NFElement {
    pub i: u64,
    pub j: u64,
}

impl NFElement {
    pub const IDENTITY: NFElement = NFElement { i: 0, j: 0 };

    pub fn new(i: u64, j: u64) -> Self {
        NFElement { i, j }
    }
}

/// Multiplies two normal forms.
///
/// For `G1` this is the metacyclic rule
/// `(g^i1 h^j1)(g^i2 h^j2) = g^(i1+i2) h^(j1 q^i2 + j2)` with `q = 1 + 2^f`.
/// For `G2` the factor `b^j1 a^i2` is rewritten through the parity case
/// table; the resulting central power of `z` is evaluated as an integer and
/// reduced mod 2 to decide whether `z = a^m b^m` is absorbed.
pub fn nf_multiply(p: &GroupParams, x: NFElement, y: NFElement) -> NFElement {
    let n = p.n();
    let x = p.reduce(x);
    let y = p.reduce(y);
    match *p {
        GroupParams::Metacyclic { f, .. } => {
            let q = (1 + (1u64 << f)) % n;
            let scale = pow_mod(q, y.i, n);
            NFElement { i: (x.i + y.i) % n, j: (x.j * scale + y.j) % n }
        }
        GroupParams::NonMetacyclic { k, l, .. } => {
            let m = p.m();
            let (i, j) = (y.i, x.j);
            let neg = |t: u64| (n - t) % n;
            let (k, l) = (u64::from(k), u64::from(l));
            let (ai, bj, z_power) = match (i % 2, j % 2) {
                (0, 0) => (i, j, 0),
                (1, 0) => (i, neg(j), l * (j / 2)),
                (0, 1) => (neg(i), j, l * (i / 2)),
                _ => (neg(i), neg(j), k + l * ((i + j) / 2)),
            };
            let shift = if z_power % 2 == 1 { m } else { 0 };
            NFElement { i: (x.i + ai + shift) % n, j: (bj + y.j + shift) % n }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn nf_identity() -> NFElement {
    NFElement::IDENTITY
}

pub fn nf_inverse(p: &GroupParams, x: NFElement) -> NFElement {
    let n = p.n();
    let x = p.reduce(x);
    // (x^i y^j)^-1 = y^-j x^-i, then renormalise
    nf_multiply(
        p,
        NFElement { i: 0, j: (n - x.j) % n },
        NFElement { i: (n - x.i) % n, j: 0 },
    )
}

/// `x^t` by binary exponentiation (`t` may be negative).
pub fn nf_power(p: &GroupParams, x: NFElement, t: i64) -> NFElement {
    let mut base = if t < 0 { nf_inverse(p, x) } else { p.reduce(x) };
    let mut exp = t.unsigned_abs();
    let mut acc = NFElement::IDENTITY;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = nf_multiply(p, acc, base);
        }
        base = nf_multiply(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Order of `x` found by repeated multiplication.
pub fn nf_order_by_iteration(p: &GroupParams, x: NFElement) -> u64 {
    let x = p.reduce(x);
    let mut acc = x;
    let mut t = 1;
    while acc != NFElement::IDENTITY {
        acc = nf_multiply(p, acc, x);
        t += 1;
    }
    t
}

/// Closed-form order data for a non-metacyclic normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NfOrder {
    pub order: u64,
    /// `x^m` whenever the order is the full `n` (it is then `a^m` or `b^m`
    /// according to which exponent is odd).
    pub mth_power: Option<NFElement>,
}

/// Order of `x` in `G2(e; k, l)` by the parity case split, asserted equal to
/// the iterated order:
///
/// - both exponents even: the largest of the two cyclic orders (at most `m`);
/// - `i` odd, `j` even: order `n`, with `x^m = a^m`;
/// - `i` even, `j` odd: order `n`, with `x^m = b^m`;
/// - both odd: `x^2 = z^(k + l(i+j)/2)`, so order 2 or 4 (always 2 when
///   `k = l = 0`).
pub fn nf_order(p: &GroupParams, x: NFElement) -> Result<NfOrder, FamiliesError> {
    let GroupParams::NonMetacyclic { e, k, l } = *p else {
        return Err(FamiliesError::ClosedFormUnsupported);
    };
    let n = p.n();
    let m = p.m();
    let x = p.reduce(x);
    let cyclic_order = |t: u64| if t == 0 { 1 } else { n >> t.trailing_zeros() };
    let closed = match (x.i % 2, x.j % 2) {
        (0, 0) => NfOrder { order: cyclic_order(x.i).max(cyclic_order(x.j)), mth_power: None },
        (1, 0) => NfOrder { order: n, mth_power: Some(NFElement { i: m, j: 0 }) },
        (0, 1) => NfOrder { order: n, mth_power: Some(NFElement { i: 0, j: m }) },
        _ => {
            let z_power = u64::from(k) + u64::from(l) * ((x.i + x.j) / 2);
            NfOrder { order: if z_power.is_multiple_of(2) { 2 } else { 4 }, mth_power: None }
        }
    };
    let iterated = nf_order_by_iteration(p, x);
    assert_eq!(
        closed.order, iterated,
        "closed-form order of {} in {p} disagrees with iteration",
        p.format_element(x)
    );
    if let Some(predicted) = closed.mth_power {
        let actual = nf_power(p, x, m as i64);
        assert_eq!(
            predicted, actual,
            "closed-form m-th power of {} in {p} disagrees with iteration",
            p.format_element(x)
        );
    }
    let _ = e;
    Ok(closed)
}

/// A family group materialised as an explicit table, with the index of every
/// normal form and of the canonical generator pair.
pub struct FamilyGroup {
    pub params: GroupParams,
    pub table: GroupTable,
    /// Normal form of each table index, in breadth-first closure order.
    pub elements: Vec<NFElement>,
    index: Vec<usize>,
    /// Table index of the first canonical generator (`g` resp. `a`).
    pub a: usize,
    /// Table index of the second canonical generator (`h` resp. `b`).
    pub b: usize,
}

impl FamilyGroup {
    pub fn index_of(&self, x: NFElement) -> usize {
        let x = self.params.reduce(x);
        self.index[(x.i * self.params.n() + x.j) as usize]
    }

    pub fn nf_of(&self, idx: usize) -> NFElement {
        self.elements[idx]
    }

    /// `z = x^m y^m`, the canonical central involution.
    pub fn z(&self) -> usize {
        let m = self.params.m();
        self.index_of(NFElement { i: m, j: m })
    }
}

/// Closes the canonical generators under [`nf_multiply`] into a validated
/// multiplication table of order `2^(2e)`. Capped at `e ≤ 8`.
pub fn to_cayley(p: &GroupParams) -> Result<FamilyGroup, FamiliesError> {
    let e = p.e();
    if e > TABLE_MAX_E {
        return Err(FamiliesError::TableCapExceeded { e });
    }
    let n = p.n();
    let gens = [NFElement { i: 1, j: 0 }, NFElement { i: 0, j: 1 }];
    let closure = cayley::build_from_generators(
        |x: &NFElement, y: &NFElement| nf_multiply(p, *x, *y),
        &gens,
        (n * n) as usize + 1,
    )?;
    let mut table = closure.table;
    let labels = closure.elements.iter().map(|&x| p.format_element(x)).collect();
    table.set_labels(labels)?;
    let mut index = vec![usize::MAX; (n * n) as usize];
    for (pos, &x) in closure.elements.iter().enumerate() {
        index[(x.i * n + x.j) as usize] = pos;
    }
    if index.contains(&usize::MAX) {
        return Err(FamiliesError::InvalidParams(format!(
            "closure of {p} did not reach all {} normal forms",
            n * n
        )));
    }
    Ok(FamilyGroup {
        params: *p,
        table,
        elements: closure.elements,
        index,
        a: closure.generators[0],
        b: closure.generators[1],
    })
}

/// Closed-form structure data for a non-metacyclic family group, as
/// normal-form member lists (each sorted lexicographically).
pub struct FamilyStructure {
    /// Frattini subgroup `{a^i b^j : i, j even}`, of order `m^2`.
    pub frattini: Vec<NFElement>,
    /// Centre `{1, a^m, b^m, z}`.
    pub center: Vec<NFElement>,
    /// The derived subgroup is the internal direct product of the cyclic
    /// subgroups on these two elements: `a^2 b^-2 z^k` and `a^4 z^l`.
    pub derived_generators: (NFElement, NFElement),
    /// Full member list of the derived subgroup.
    pub derived: Vec<NFElement>,
    /// Upper central series `Z_0, …, Z_e`; `Z_i` collects the pairs with both
    /// exponents divisible by `2^(e-i)` and has order `2^(2i)`.
    pub upper_central: Vec<Vec<NFElement>>,
    /// The group has exponent `n` and nilpotence class `e`.
    pub exponent: u64,
    pub nilpotence_class: u32,
}

/// Evaluates the closed-form structure of `G2(e; k, l)`.
pub fn structure_report(p: &GroupParams) -> Result<FamilyStructure, FamiliesError> {
    let GroupParams::NonMetacyclic { e, k, l } = *p else {
        return Err(FamiliesError::ClosedFormUnsupported);
    };
    let n = p.n();
    let m = p.m();
    let (k, l) = (u64::from(k), u64::from(l));

    let mut frattini = Vec::new();
    for i in (0..n).step_by(2) {
        for j in (0..n).step_by(2) {
            frattini.push(NFElement { i, j });
        }
    }

    let center = vec![
        NFElement { i: 0, j: 0 },
        NFElement { i: 0, j: m },
        NFElement { i: m, j: 0 },
        NFElement { i: m, j: m },
    ];

    let c1 = NFElement { i: (k * m + 2) % n, j: (k * m + n - 2) % n };
    let c2 = NFElement { i: (l * m + 4) % n, j: (l * m) % n };
    let mut derived = vec![NFElement::IDENTITY];
    {
        let mut head = 0;
        while head < derived.len() {
            let x = derived[head];
            head += 1;
            for gen in [c1, c2] {
                let y = nf_multiply(p, x, gen);
                if !derived.contains(&y) {
                    derived.push(y);
                }
            }
        }
    }
    derived.sort_unstable();

    let mut upper_central = Vec::new();
    for level in 0..=e {
        let step = 1u64 << (e - level);
        let mut members = Vec::new();
        for i in (0..n).step_by(step as usize) {
            for j in (0..n).step_by(step as usize) {
                members.push(NFElement { i, j });
            }
        }
        members.sort_unstable();
        upper_central.push(members);
    }

    let mut center = center;
    center.sort_unstable();
    Ok(FamilyStructure {
        frattini,
        center,
        derived_generators: (c1, c2),
        derived,
        upper_central,
        exponent: n,
        nilpotence_class: e,
    })
}

/// Commutator `[x, y] = x^-1 y^-1 x y` in normal-form arithmetic.
pub fn nf_commutator(p: &GroupParams, x: NFElement, y: NFElement) -> NFElement {
    let xi = nf_inverse(p, x);
    let yi = nf_inverse(p, y);
    nf_multiply(p, nf_multiply(p, nf_multiply(p, xi, yi), x), y)
}

/// Conjugate `x^y = y^-1 x y` in normal-form arithmetic.
pub fn nf_conjugate(p: &GroupParams, x: NFElement, y: NFElement) -> NFElement {
    nf_multiply(p, nf_multiply(p, nf_inverse(p, y), x), y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2(e: u32, k: u8, l: u8) -> GroupParams {
        GroupParams::non_metacyclic(e, k, l).unwrap()
    }

    fn g1(e: u32, f: u32) -> GroupParams {
        GroupParams::metacyclic(e, f).unwrap()
    }

    fn nf(i: u64, j: u64) -> NFElement {
        NFElement { i, j }
    }

    #[test]
    fn parameter_validation() {
        assert!(GroupParams::non_metacyclic(2, 1, 0).is_err());
        assert!(GroupParams::non_metacyclic(2, 0, 1).is_err());
        assert!(GroupParams::non_metacyclic(3, 2, 0).is_err());
        assert!(GroupParams::non_metacyclic(1, 0, 0).is_err());
        assert!(GroupParams::metacyclic(3, 1).is_err());
        assert!(GroupParams::metacyclic(3, 4).is_err());
        assert!(GroupParams::metacyclic(2, 2).is_ok());
        assert_eq!(GroupParams::all_for(2).len(), 2);
        assert_eq!(GroupParams::all_for(3).len(), 6);
        assert_eq!(GroupParams::all_for(4).len(), 7);
    }

    #[test]
    fn params_display_round_trip() {
        for p in GroupParams::all_for(4) {
            let text = p.to_string();
            assert_eq!(text.parse::<GroupParams>().unwrap(), p);
        }
        assert!("G2(2;1,0)".parse::<GroupParams>().is_err());
        assert!("G3(2,2)".parse::<GroupParams>().is_err());
    }

    #[test]
    fn element_text_round_trip() {
        let p = g2(3, 0, 1);
        let x = nf(5, 3);
        assert_eq!(p.format_element(x), "a^5 b^3");
        assert_eq!(p.parse_element("a^5 b^3").unwrap(), x);
        assert_eq!(p.parse_element("a^5b^3").unwrap(), x);
        let q = g1(3, 2);
        assert_eq!(q.format_element(x), "g^5 h^3");
        assert_eq!(q.parse_element("g^5h^3").unwrap(), x);
        assert!(q.parse_element("a^5 b^3").is_err());
    }

    #[test]
    fn known_products() {
        // b · a in G2(3;0,0) falls through the odd/odd case with no z
        assert_eq!(nf_multiply(&g2(3, 0, 0), nf(0, 1), nf(1, 0)), nf(7, 7));
        // b · a^2 in G2(3;0,1) picks up one factor of z
        assert_eq!(nf_multiply(&g2(3, 0, 1), nf(0, 1), nf(2, 0)), nf(2, 5));
        // h · g in G1(3,2): h^g = h^5
        assert_eq!(nf_multiply(&g1(3, 2), nf(0, 1), nf(1, 0)), nf(1, 5));
    }

    #[test]
    fn inverses_and_powers() {
        for p in GroupParams::all_for(3) {
            let n = p.n();
            for i in 0..n {
                for j in 0..n {
                    let x = nf(i, j);
                    let inv = nf_inverse(&p, x);
                    assert_eq!(nf_multiply(&p, x, inv), NFElement::IDENTITY);
                    assert_eq!(nf_multiply(&p, inv, x), NFElement::IDENTITY);
                    assert_eq!(nf_power(&p, x, -1), inv);
                    assert_eq!(
                        nf_power(&p, x, 5),
                        (0..5).fold(NFElement::IDENTITY, |acc, _| nf_multiply(&p, acc, x))
                    );
                }
            }
        }
    }

    #[test]
    fn defining_relations_hold_in_normal_form() {
        for e in 2..=5 {
            for p in GroupParams::all_for(e) {
                let n = p.n() as i64;
                let a = nf(1, 0);
                let b = nf(0, 1);
                assert_eq!(nf_power(&p, a, n), NFElement::IDENTITY);
                assert_eq!(nf_power(&p, b, n), NFElement::IDENTITY);
                match p {
                    GroupParams::Metacyclic { f, .. } => {
                        // h^g = h^(1+2^f)
                        assert_eq!(
                            nf_conjugate(&p, b, a),
                            nf_power(&p, b, 1 + (1i64 << f)),
                        );
                    }
                    GroupParams::NonMetacyclic { k, l, .. } => {
                        let m = p.m() as i64;
                        let z = nf_multiply(&p, nf_power(&p, a, m), nf_power(&p, b, m));
                        let a2 = nf_power(&p, a, 2);
                        let b2 = nf_power(&p, b, 2);
                        assert_eq!(nf_commutator(&p, b2, a2), NFElement::IDENTITY);
                        // [b, a] = a^2 b^-2 z^k
                        let mut rhs = nf_multiply(&p, a2, nf_power(&p, b, -2));
                        rhs = nf_multiply(&p, rhs, nf_power(&p, z, i64::from(k)));
                        assert_eq!(nf_commutator(&p, b, a), rhs);
                        // (b^2)^a = b^-2 z^l and (a^2)^b = a^-2 z^l
                        let zl = nf_power(&p, z, i64::from(l));
                        assert_eq!(
                            nf_conjugate(&p, b2, a),
                            nf_multiply(&p, nf_power(&p, b, -2), zl)
                        );
                        assert_eq!(
                            nf_conjugate(&p, a2, b),
                            nf_multiply(&p, nf_power(&p, a, -2), zl)
                        );
                        // z is a central involution
                        assert_eq!(nf_power(&p, z, 2), NFElement::IDENTITY);
                        assert_eq!(nf_conjugate(&p, z, a), z);
                        assert_eq!(nf_conjugate(&p, z, b), z);
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        for e in 2..=3 {
            for p in GroupParams::all_for(e) {
                let n = p.n();
                let elems: Vec<NFElement> =
                    (0..n).flat_map(|i| (0..n).map(move |j| nf(i, j))).collect();
                for &x in &elems {
                    for &y in &elems {
                        let xy = nf_multiply(&p, x, y);
                        for &z in &elems {
                            assert_eq!(
                                nf_multiply(&p, xy, z),
                                nf_multiply(&p, x, nf_multiply(&p, y, z)),
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x15b1c);
        for e in [4u32, 5] {
            for p in GroupParams::all_for(e) {
                let n = p.n();
                for _ in 0..1_000_000 / GroupParams::all_for(e).len() {
                    let x = nf(rng.gen_range(0..n), rng.gen_range(0..n));
                    let y = nf(rng.gen_range(0..n), rng.gen_range(0..n));
                    let z = nf(rng.gen_range(0..n), rng.gen_range(0..n));
                    assert_eq!(
                        nf_multiply(&p, nf_multiply(&p, x, y), z),
                        nf_multiply(&p, x, nf_multiply(&p, y, z)),
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_orders() {
        let p = g2(3, 0, 0);
        let a = nf_order(&p, nf(1, 0)).unwrap();
        assert_eq!(a.order, 8);
        assert_eq!(a.mth_power, Some(nf(4, 0)));
        let b = nf_order(&p, nf(0, 3)).unwrap();
        assert_eq!(b.order, 8);
        assert_eq!(b.mth_power, Some(nf(0, 4)));
        // (2,2) squares to z, so has order 4
        assert_eq!(nf_order(&p, nf(2, 2)).unwrap().order, 4);
        // odd/odd elements of G2(e;0,0) are involutions
        assert_eq!(nf_order(&p, nf(1, 1)).unwrap().order, 2);
        // with k = 1 the same element has order 4
        assert_eq!(nf_order(&g2(3, 1, 0), nf(1, 1)).unwrap().order, 4);
        // with k = l = 1 the two z contributions cancel
        assert_eq!(nf_order(&g2(3, 1, 1), nf(1, 1)).unwrap().order, 2);
        assert!(nf_order(&g1(3, 2), nf(1, 0)).is_err());
    }

    #[test]
    fn closed_form_orders_match_iteration_everywhere() {
        for e in 2..=5 {
            for p in GroupParams::all_for(e) {
                if p.is_metacyclic_family() {
                    continue;
                }
                let n = p.n();
                for i in 0..n {
                    for j in 0..n {
                        // nf_order asserts agreement internally
                        let o = nf_order(&p, nf(i, j)).unwrap();
                        assert!(o.order == 1 || n % o.order == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn swap_of_generators_is_an_automorphism() {
        for e in 2..=3 {
            for p in GroupParams::all_for(e) {
                if p.is_metacyclic_family() {
                    continue;
                }
                let n = p.n();
                let swap = |x: NFElement| nf_multiply(&p, nf(0, x.i), nf(x.j, 0));
                let elems: Vec<NFElement> =
                    (0..n).flat_map(|i| (0..n).map(move |j| nf(i, j))).collect();
                for &x in &elems {
                    assert_eq!(swap(swap(x)), x);
                    for &y in &elems {
                        assert_eq!(swap(nf_multiply(&p, x, y)), nf_multiply(&p, swap(x), swap(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_closure_matches_normal_form() {
        for e in 2..=3 {
            for p in GroupParams::all_for(e) {
                let fam = to_cayley(&p).unwrap();
                assert_eq!(fam.table.order() as u64, p.group_order());
                assert_eq!(fam.table.identity(), fam.index_of(NFElement::IDENTITY));
                for (xi, &x) in fam.elements.iter().enumerate() {
                    for (yi, &y) in fam.elements.iter().enumerate() {
                        assert_eq!(
                            fam.table.mul(xi, yi),
                            fam.index_of(nf_multiply(&p, x, y)),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn generator_indices_are_canonical() {
        let fam = to_cayley(&g2(3, 0, 0)).unwrap();
        assert_eq!(fam.nf_of(fam.a), nf(1, 0));
        assert_eq!(fam.nf_of(fam.b), nf(0, 1));
        assert_eq!(fam.table.label(fam.a), "a^1 b^0");
        assert_eq!(fam.nf_of(fam.z()), nf(4, 4));
    }

    #[test]
    fn table_cap_is_enforced() {
        let p = GroupParams::metacyclic(9, 2).unwrap();
        assert!(matches!(to_cayley(&p), Err(FamiliesError::TableCapExceeded { e: 9 })));
    }

    #[test]
    fn structure_report_shapes() {
        let p = g2(3, 0, 1);
        let s = structure_report(&p).unwrap();
        assert_eq!(s.frattini.len(), 16);
        assert_eq!(s.center.len(), 4);
        assert_eq!(s.derived.len(), 8); // C4 × C2
        assert_eq!(s.exponent, 8);
        assert_eq!(s.nilpotence_class, 3);
        let sizes: Vec<usize> = s.upper_central.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 4, 16, 64]);
        assert!(structure_report(&g1(3, 2)).is_err());
    }

    #[test]
    fn structure_report_matches_brute_force() {
        for e in 2..=3 {
            for p in GroupParams::all_for(e) {
                if p.is_metacyclic_family() {
                    continue;
                }
                let s = structure_report(&p).unwrap();
                let fam = to_cayley(&p).unwrap();
                let report = crate::cayley::characteristic_subgroups(&fam.table).unwrap();
                let to_indices = |xs: &[NFElement]| {
                    let mut v: Vec<usize> = xs.iter().map(|&x| fam.index_of(x)).collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(to_indices(&s.frattini), report.frattini.members());
                assert_eq!(to_indices(&s.center), report.center.members());
                assert_eq!(to_indices(&s.derived), report.derived.members());
                assert_eq!(s.upper_central.len(), report.upper_central.len());
                for (closed, brute) in s.upper_central.iter().zip(&report.upper_central) {
                    assert_eq!(to_indices(closed), brute.members());
                }
                assert_eq!(s.exponent as usize, report.exponent);
                assert_eq!(s.nilpotence_class as usize, report.nilpotence_class);
            }
        }
    }
}
