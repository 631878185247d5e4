//! Isomorphism testing and structural classification of isobicyclic pairs.
//!
//! An *isobicyclic pair* in a finite group `G` is a pair `(a, b)` of elements
//! of equal order `n` with `⟨a⟩ ∩ ⟨b⟩ = 1`, `|G| = n²` (so `G = ⟨a⟩⟨b⟩` is an
//! exact factorisation) and an automorphism of `G` exchanging `a` and `b`.
//!
//! This module provides three layers over such pairs in 2-groups:
//!
//! - [`lemma22_check`]: a closed-form criterion deciding when exponents
//!   `(i, j, f, h)` define an isomorphism `G2(e; k1, l1) → G2(e; k, l)`
//!   sending the canonical generators to `a^i b^j` and `a^f b^h`, together
//!   with the automorphism counts it implies ([`aut_count`],
//!   [`aut_witnesses`]);
//! - [`analyze_triple`]: extraction of the arithmetic invariants `(d, u, v,
//!   s, t)` governing the derived subgroup of any non-abelian isobicyclic
//!   pair, with every claimed identity re-checked against table arithmetic;
//! - [`classify_triple`]: identification of the parametrised family member
//!   isomorphic to a given isobicyclic 2-group, confirmed by an explicit
//!   generator-map isomorphism.

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{
    self, extend_generator_map, isomorphism_search, CayleyError, ExtendOutcome, GenMap,
    GroupTable, Homomorphism, Subgroup,
};
use crate::families::{self, FamiliesError, GroupParams};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("the exponent criterion is defined for e ≥ 3, got e = {e}")]
    UnsupportedE { e: u32 },
    #[error("({a}, {b}) is not an isobicyclic pair: {reason}")]
    NotIsobicyclic { a: usize, b: usize, reason: String },
    #[error("classification requires n ≥ 4, got n = {n}")]
    OrderTooSmall { n: usize },
    #[error("group does not match any family member: {0}")]
    NotInFamilies(String),
    #[error("structural invariant violated: {0}")]
    StructureViolation(String),
    #[error(transparent)]
    Families(#[from] FamiliesError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

/// Exponents `(i, j, f, h)` of a candidate generator map
/// `a1 ↦ a^i b^j, b1 ↦ a^f b^h` between two non-metacyclic family groups of
/// the same order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub i: u64,
    pub j: u64,
    pub f: u64,
    pub h: u64,
}

/// Decides whether `w` defines an isomorphism `G2(e; k1, l1) → G2(e; k, l)`
/// (`src = (k1, l1)`, `dst = (k, l)`), by the closed-form criterion: the
/// exponent pairs must have opposite parity patterns (`i, h` odd and `j, f`
/// even, or the other way around), `l1` must equal `l`, and
/// `k1 ≡ k + l·(f + h - i - j)/2 (mod 2)`.
///
/// Needs `e ≥ 3`; at `e = 2` the family has a single member.
pub fn lemma22_check(
    e: u32,
    src: (u8, u8),
    dst: (u8, u8),
    w: &IsoWitness,
) -> Result<bool, ClassifyError> {
    if e < 3 {
        return Err(ClassifyError::UnsupportedE { e });
    }
    let (k1, l1) = src;
    let (k, l) = dst;
    // validates both parameter choices
    GroupParams::non_metacyclic(e, k1, l1)?;
    GroupParams::non_metacyclic(e, k, l)?;

    let odd = |t: u64| t % 2 == 1;
    let pattern_a = odd(w.i) && odd(w.h) && !odd(w.j) && !odd(w.f);
    let pattern_b = !odd(w.i) && !odd(w.h) && odd(w.j) && odd(w.f);
    if !(pattern_a || pattern_b) {
        return Ok(false);
    }
    if l1 != l {
        return Ok(false);
    }
    // (f + h - i - j) is even under either parity pattern
    let half = ((w.f + w.h) as i64 - (w.i + w.j) as i64) / 2;
    let expected_k1 = (i64::from(k) + i64::from(l) * half).rem_euclid(2);
    Ok(i64::from(k1) == expected_k1)
}

/// Tests the same witness by brute force: map the canonical generators of
/// `src` to `a^i b^j` and `a^f b^h` in `dst` and try to extend to an
/// isomorphism of the two multiplication tables.
pub fn witness_gives_isomorphism(
    src: &families::FamilyGroup,
    dst: &families::FamilyGroup,
    w: &IsoWitness,
) -> Result<bool, ClassifyError> {
    let image_a = dst.index_of(families::NFElement::new(w.i, w.j));
    let image_b = dst.index_of(families::NFElement::new(w.f, w.h));
    let map = GenMap { sources: vec![src.a, src.b], images: vec![image_a, image_b] };
    match extend_generator_map(&src.table, &dst.table, &map) {
        Ok(ExtendOutcome::Homomorphism(hom)) => Ok(hom.is_isomorphism()),
        Ok(ExtendOutcome::Conflict { .. }) => Ok(false),
        Err(CayleyError::NotGenerating) => Ok(false),
        Err(other) => Err(other.into()),
    }
}

/// Closed-form automorphism group order of `G2(e; k, l)`: `n⁴/8` when
/// `l = 0` and `n⁴/16` when `l = 1`.
pub fn aut_count(e: u32, l: u8) -> Result<u64, ClassifyError> {
    if e < 3 {
        return Err(ClassifyError::UnsupportedE { e });
    }
    let n4 = 1u64 << (4 * e);
    Ok(if l == 0 { n4 / 8 } else { n4 / 16 })
}

/// Every witness defining an automorphism of `G2(e; k, l)`, in lexicographic
/// `(i, j, f, h)` order. By the closed-form count there are exactly
/// [`aut_count`]`(e, l)` of them.
pub fn aut_witnesses(e: u32, k: u8, l: u8) -> Result<Vec<IsoWitness>, ClassifyError> {
    if e < 3 {
        return Err(ClassifyError::UnsupportedE { e });
    }
    GroupParams::non_metacyclic(e, k, l)?;
    let n = 1u64 << e;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for f in 0..n {
                for h in 0..n {
                    let w = IsoWitness { i, j, f, h };
                    if lemma22_check(e, (k, l), (k, l), &w)? {
                        out.push(w);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Validation record for an isobicyclic pair: the common generator order and
/// the automorphism swapping the two generators.
pub struct PairCertificate {
    pub n: usize,
    pub e: u32,
    pub swap: Homomorphism,
}

/// Checks that `(a, b)` is an isobicyclic pair of the 2-group `g`.
pub fn check_isobicyclic(
    g: &GroupTable,
    a: usize,
    b: usize,
) -> Result<PairCertificate, ClassifyError> {
    let fail = |reason: &str| ClassifyError::NotIsobicyclic {
        a,
        b,
        reason: reason.to_string(),
    };
    let n = g.element_order(a);
    if g.element_order(b) != n {
        return Err(fail("generator orders differ"));
    }
    if !n.is_power_of_two() {
        return Err(fail("generator order is not a power of two"));
    }
    if n * n != g.order() {
        return Err(fail("|G| is not the square of the generator order"));
    }
    let sub_b = Subgroup::generated(g, &[b]);
    let mut power = a;
    while power != g.identity() {
        if sub_b.contains(power) {
            return Err(fail("the cyclic factors intersect nontrivially"));
        }
        power = g.mul(power, a);
    }
    let map = GenMap { sources: vec![a, b], images: vec![b, a] };
    let swap = match extend_generator_map(g, g, &map) {
        Ok(ExtendOutcome::Homomorphism(hom)) if hom.is_isomorphism() => hom,
        Ok(_) => return Err(fail("no automorphism exchanges the generators")),
        Err(CayleyError::NotGenerating) => return Err(fail("the pair does not generate")),
        Err(other) => return Err(other.into()),
    };
    Ok(PairCertificate { n, e: n.trailing_zeros(), swap })
}

/// Structural invariants of a non-abelian isobicyclic pair `(a, b)` with
/// `c = [b, a]`, each cross-checked against the table by [`analyze_triple`]:
///
/// - `c = a^r b^-r` with `r = d·2^u`, `d` odd, so `|c| = 2^(e-u)`;
/// - `G' ∩ ⟨a⟩ = ⟨a^(2^v)⟩` and `G' = ⟨c⟩ × ⟨a^(2^v)⟩` is abelian;
/// - `c^a = c^s · a^(t·2^v)` with `s` odd, and `t` odd whenever `G'` is not
///   cyclic (`t` is absent when `G' = ⟨c⟩`);
/// - `G` is metacyclic exactly when `u ≥ 2`, and then `v = e`; otherwise
///   `u = 1` and `v = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub d: usize,
    pub u: u32,
    pub v: u32,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub metacyclic: bool,
    pub derived_invariants: Vec<usize>,
}

/// Outcome of [`analyze_triple`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TripleAnalysis {
    Abelian,
    NonAbelian(StructureReport),
}

fn solve_balanced_power(
    g: &GroupTable,
    a: usize,
    b: usize,
    n: usize,
    target: usize,
) -> Option<usize> {
    (0..n).find(|&r| g.mul(g.power(a, r as i64), g.power(b, -(r as i64))) == target)
}

/// Computes the invariants of [`StructureReport`] for the pair `(a, b)`,
/// re-deriving every closed-form claim from the multiplication table and
/// failing with [`ClassifyError::StructureViolation`] on any mismatch.
pub fn analyze_triple(
    g: &GroupTable,
    a: usize,
    b: usize,
) -> Result<TripleAnalysis, ClassifyError> {
    let cert = check_isobicyclic(g, a, b)?;
    let n = cert.n;
    let e = cert.e;
    let violation = |msg: String| ClassifyError::StructureViolation(msg);

    // derived subgroup from the full commutator set
    let mut commutators: Vec<usize> = Vec::new();
    for x in 0..g.order() {
        for y in 0..g.order() {
            let c = g.commutator(x, y);
            if c != g.identity() && !commutators.contains(&c) {
                commutators.push(c);
            }
        }
    }
    if commutators.is_empty() {
        return Ok(TripleAnalysis::Abelian);
    }
    let derived = Subgroup::generated(g, &commutators);
    if !derived.is_abelian(g) {
        return Err(violation("derived subgroup is not abelian".into()));
    }

    let c = g.commutator(b, a);
    let r = solve_balanced_power(g, a, b, n, c)
        .ok_or_else(|| violation("[b,a] is not of the form a^r b^-r".into()))?;
    if r == 0 {
        return Err(violation("non-abelian group with trivial [b,a]".into()));
    }
    let u = r.trailing_zeros();
    let d = r >> u;

    let order_c = g.element_order(c);
    if order_c != n >> u {
        return Err(violation(format!(
            "|[b,a]| = {order_c} but the valuation of r = {r} predicts {}",
            n >> u
        )));
    }

    // intersection of the derived subgroup with ⟨a⟩
    let sub_a = Subgroup::generated(g, &[a]);
    let meet: Vec<usize> =
        sub_a.members().iter().copied().filter(|&x| derived.contains(x)).collect();
    if !meet.len().is_power_of_two() {
        return Err(violation("G' ∩ ⟨a⟩ has non-2-power order".into()));
    }
    let v = e - meet.len().trailing_zeros();
    let a_2v = g.power(a, 1i64 << v);
    let tail = Subgroup::generated(g, &[a_2v]);
    if tail.members() != meet.as_slice() {
        return Err(violation("G' ∩ ⟨a⟩ is not generated by a^(2^v)".into()));
    }
    if u >= v {
        return Err(violation(format!("expected u < v, got u = {u}, v = {v}")));
    }

    // internal direct product decomposition of G'
    let sub_c = Subgroup::generated(g, &[c]);
    if sub_c.members().iter().any(|&x| x != g.identity() && tail.contains(x)) {
        return Err(violation("⟨c⟩ meets ⟨a^(2^v)⟩ nontrivially".into()));
    }
    if sub_c.len() * tail.len() != derived.len() {
        return Err(violation("G' is not the product of ⟨c⟩ and ⟨a^(2^v)⟩".into()));
    }
    if !sub_c.members().iter().all(|&x| derived.contains(x)) {
        return Err(violation("⟨c⟩ is not inside G'".into()));
    }
    if !tail.members().iter().all(|&x| derived.contains(x)) {
        return Err(violation("⟨a^(2^v)⟩ is not inside G'".into()));
    }

    // powers of c stay balanced: c^(2^j) = a^w b^-w with v2(w) = u + j
    let mut c_power = c;
    let mut j = 0;
    while c_power != g.identity() {
        let w = solve_balanced_power(g, a, b, n, c_power)
            .ok_or_else(|| violation(format!("c^(2^{j}) is not of the form a^w b^-w")))?;
        if w.trailing_zeros() != u + j {
            return Err(violation(format!(
                "c^(2^{j}) = a^{w} b^-{w} but v2({w}) ≠ u + {j}"
            )));
        }
        c_power = g.mul(c_power, c_power);
        j += 1;
    }
    if j != e - u {
        return Err(violation("squaring chain of c has the wrong length".into()));
    }

    // conjugation action of a on c, decomposed in ⟨c⟩ × ⟨a^(2^v)⟩
    let ca = g.conjugate(c, a);
    let mut st = None;
    'search: for s in 0..sub_c.len() {
        for t in 0..tail.len() {
            if g.mul(g.power(c, s as i64), g.power(a_2v, t as i64)) == ca {
                st = Some((s, t));
                break 'search;
            }
        }
    }
    let (s, t) = st.ok_or_else(|| violation("c^a does not lie in G'".into()))?;
    if s % 2 != 1 {
        return Err(violation(format!("expected odd s in c^a = c^s a^(t·2^v), got s = {s}")));
    }
    let t = if tail.len() == 1 {
        None
    } else {
        if t % 2 != 1 {
            return Err(violation(format!(
                "expected odd t in c^a = c^s a^(t·2^v), got t = {t}"
            )));
        }
        Some(t)
    };

    let metacyclic = cayley::is_metacyclic(g);
    if metacyclic != (u >= 2) {
        return Err(violation(format!(
            "metacyclic = {metacyclic} contradicts u = {u}"
        )));
    }
    if metacyclic && v != e {
        return Err(violation(format!("metacyclic pair with v = {v} ≠ e = {e}")));
    }
    if !metacyclic && (u != 1 || v != 2) {
        return Err(violation(format!(
            "non-metacyclic pair with (u, v) = ({u}, {v}) instead of (1, 2)"
        )));
    }

    let derived_invariants = cayley::abelian_invariants(g, &derived)?;
    Ok(TripleAnalysis::NonAbelian(StructureReport {
        d,
        u,
        v,
        s: Some(s),
        t,
        metacyclic,
        derived_invariants,
    }))
}

/// Relation set identifying the parameters `(k, l)` of a non-metacyclic
/// pair: with `m = n/2`,
///
/// - `[b, a] = a^(2+k·m) · b^(-2+k·m)`,
/// - `(b²)^a = a^(l·m) · b^(-2+l·m)`,
/// - `(a²)^b = a^(-2+l·m) · b^(l·m)`.
pub fn matches_parameter_relations(
    g: &GroupTable,
    a: usize,
    b: usize,
    k: u8,
    l: u8,
) -> bool {
    let n = g.element_order(a) as i64;
    let m = n / 2;
    let (k, l) = (i64::from(k), i64::from(l));
    let pair = |x: i64, y: i64| g.mul(g.power(a, x), g.power(b, y));
    g.commutator(b, a) == pair(2 + k * m, -2 + k * m)
        && g.conjugate(g.power(b, 2), a) == pair(l * m, -2 + l * m)
        && g.conjugate(g.power(a, 2), b) == pair(-2 + l * m, l * m)
}

/// Identifies the family member isomorphic to the group of an isobicyclic
/// pair with `n ≥ 4`.
///
/// Metacyclic (and abelian) groups are matched against `G1(e, f)`; the
/// derived subgroup order pins down the only possible `f`, and an explicit
/// isomorphism is then searched for. Non-metacyclic groups are matched by
/// testing the relation set of [`matches_parameter_relations`] for every
/// admissible `(k, l)`; exactly one must fit, and the identification is
/// confirmed by extending the canonical generator map of `G2(e; k, l)` to an
/// isomorphism.
pub fn classify_triple(
    g: &GroupTable,
    a: usize,
    b: usize,
) -> Result<GroupParams, ClassifyError> {
    let cert = check_isobicyclic(g, a, b)?;
    let n = cert.n;
    let e = cert.e;
    if n < 4 {
        return Err(ClassifyError::OrderTooSmall { n });
    }

    if g.is_abelian() {
        let full = Subgroup::full(g);
        let invariants = cayley::abelian_invariants(g, &full)?;
        if invariants != vec![n, n] {
            return Err(ClassifyError::NotInFamilies(format!(
                "abelian invariants {invariants:?} are not [{n}, {n}]"
            )));
        }
        return Ok(GroupParams::metacyclic(e, e)?);
    }

    if cayley::is_metacyclic(g) {
        let mut commutators: Vec<usize> = Vec::new();
        for x in 0..g.order() {
            for y in 0..g.order() {
                let c = g.commutator(x, y);
                if !commutators.contains(&c) {
                    commutators.push(c);
                }
            }
        }
        let derived_order = Subgroup::generated(g, &commutators).len();
        let mut matched = Vec::new();
        for f in 2..e {
            // |G1(e, f)'| = 2^(e-f) rules out all but one candidate
            if derived_order != 1 << (e - f) {
                continue;
            }
            let params = GroupParams::metacyclic(e, f)?;
            let fam = families::to_cayley(&params)?;
            let found =
                isomorphism_search(&fam.table, &[fam.a, fam.b], g, Some(1))?;
            if !found.is_empty() {
                matched.push(params);
            }
        }
        return match matched.as_slice() {
            [single] => Ok(*single),
            [] => Err(ClassifyError::NotInFamilies(
                "metacyclic, but no G1(e, f) matches".into(),
            )),
            _ => Err(ClassifyError::NotInFamilies(format!(
                "metacyclic group matched {} distinct parameter choices",
                matched.len()
            ))),
        };
    }

    // non-metacyclic: common relations first
    if g.power(a, n as i64) != g.identity()
        || g.power(b, n as i64) != g.identity()
        || g.commutator(g.power(a, 2), g.power(b, 2)) != g.identity()
    {
        return Err(ClassifyError::NotInFamilies(
            "squares of the generators do not commute".into(),
        ));
    }
    let candidates: &[(u8, u8)] =
        if e == 2 { &[(0, 0)] } else { &[(0, 0), (0, 1), (1, 0), (1, 1)] };
    let matched: Vec<(u8, u8)> = candidates
        .iter()
        .copied()
        .filter(|&(k, l)| matches_parameter_relations(g, a, b, k, l))
        .collect();
    let (k, l) = match matched.as_slice() {
        [single] => *single,
        [] => {
            return Err(ClassifyError::NotInFamilies(
                "no parameter choice satisfies the relation set".into(),
            ))
        }
        several => {
            return Err(ClassifyError::NotInFamilies(format!(
                "{} parameter choices satisfy the relation set",
                several.len()
            )))
        }
    };
    let params = GroupParams::non_metacyclic(e, k, l)?;
    let fam = families::to_cayley(&params)?;
    let map = GenMap { sources: vec![fam.a, fam.b], images: vec![a, b] };
    match extend_generator_map(&fam.table, g, &map) {
        Ok(ExtendOutcome::Homomorphism(hom)) if hom.is_isomorphism() => Ok(params),
        Ok(_) => Err(ClassifyError::NotInFamilies(format!(
            "the relation set selects {params} but the generator map does not extend"
        ))),
        Err(CayleyError::NotGenerating) => Err(ClassifyError::NotInFamilies(
            "canonical generators do not generate the target".into(),
        )),
        Err(other) => Err(other.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{nf_multiply, to_cayley, NFElement};

    fn fam(text: &str) -> families::FamilyGroup {
        to_cayley(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn known_isomorphism_witness() {
        // a1 ↦ a^3, b1 ↦ b identifies the (1,1) group with the (0,1) group
        let w = IsoWitness { i: 3, j: 0, f: 0, h: 1 };
        assert!(lemma22_check(3, (1, 1), (0, 1), &w).unwrap());
        let src = fam("G2(3;1,1)");
        let dst = fam("G2(3;0,1)");
        assert!(witness_gives_isomorphism(&src, &dst, &w).unwrap());
    }

    #[test]
    fn criterion_requires_e_at_least_three() {
        let w = IsoWitness { i: 1, j: 0, f: 0, h: 1 };
        assert!(matches!(
            lemma22_check(2, (0, 0), (0, 0), &w),
            Err(ClassifyError::UnsupportedE { e: 2 })
        ));
        assert!(lemma22_check(3, (0, 0), (2, 0), &w).is_err());
    }

    #[test]
    fn criterion_matches_brute_force_on_a_cross_section() {
        let src = fam("G2(3;1,1)");
        for dst_kl in [(0u8, 1u8), (0, 0)] {
            let dst = fam(&format!("G2(3;{},{})", dst_kl.0, dst_kl.1));
            for i in 0..8 {
                for j in 0..8 {
                    for f in 0..8 {
                        for h in 0..8 {
                            let w = IsoWitness { i, j, f, h };
                            assert_eq!(
                                lemma22_check(3, (1, 1), dst_kl, &w).unwrap(),
                                witness_gives_isomorphism(&src, &dst, &w).unwrap(),
                                "witness {w:?} against {dst_kl:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(aut_count(3, 0).unwrap(), 512);
        assert_eq!(aut_count(3, 1).unwrap(), 256);
        assert_eq!(aut_count(4, 0).unwrap(), 8192);
        assert_eq!(aut_witnesses(3, 0, 0).unwrap().len(), 512);
        assert_eq!(aut_witnesses(3, 0, 1).unwrap().len(), 256);
        assert_eq!(aut_witnesses(3, 1, 1).unwrap().len(), 256);
    }

    #[test]
    fn automorphism_count_matches_search() {
        for text in ["G2(3;0,0)", "G2(3;0,1)"] {
            let f = fam(text);
            let autos =
                isomorphism_search(&f.table, &[f.a, f.b], &f.table, None).unwrap();
            let GroupParams::NonMetacyclic { l, .. } = f.params else { unreachable!() };
            assert_eq!(autos.len() as u64, aut_count(3, l).unwrap());
        }
    }

    #[test]
    fn pair_validation() {
        let f = fam("G2(3;0,0)");
        assert!(check_isobicyclic(&f.table, f.a, f.b).is_ok());
        // a and a^3 generate the same cyclic subgroup: intersection is full
        let a3 = f.table.power(f.a, 3);
        assert!(matches!(
            check_isobicyclic(&f.table, f.a, a3),
            Err(ClassifyError::NotIsobicyclic { .. })
        ));
        // a and ab have equal order but only generate a proper product
        let ab = f.table.mul(f.a, f.b);
        let err = check_isobicyclic(&f.table, f.a, ab);
        assert!(err.is_err());
    }

    #[test]
    fn analyze_non_metacyclic_pair() {
        let f = fam("G2(3;0,1)");
        let TripleAnalysis::NonAbelian(report) =
            analyze_triple(&f.table, f.a, f.b).unwrap()
        else {
            panic!("expected a non-abelian analysis")
        };
        assert_eq!(report.u, 1);
        assert_eq!(report.v, 2);
        assert!(!report.metacyclic);
        assert_eq!(report.d % 2, 1);
        assert_eq!(report.s.unwrap() % 2, 1);
        assert_eq!(report.t.unwrap() % 2, 1);
        assert_eq!(report.derived_invariants, vec![4, 2]);
    }

    #[test]
    fn analyze_metacyclic_pair() {
        // (g, g·h) is an isobicyclic pair of G1(3,2)
        let f = fam("G1(3,2)");
        let gh = f.index_of(nf_multiply(&f.params, NFElement::new(1, 0), NFElement::new(0, 1)));
        let TripleAnalysis::NonAbelian(report) =
            analyze_triple(&f.table, f.a, gh).unwrap()
        else {
            panic!("expected a non-abelian analysis")
        };
        assert_eq!(report.u, 2);
        assert_eq!(report.v, 3);
        assert!(report.metacyclic);
        assert_eq!(report.t, None);
        assert_eq!(report.derived_invariants, vec![2]);
    }

    #[test]
    fn analyze_abelian_pair() {
        let f = fam("G1(2,2)");
        assert_eq!(analyze_triple(&f.table, f.a, f.b).unwrap(), TripleAnalysis::Abelian);
    }

    #[test]
    fn classification_recovers_parameters() {
        for e in 2..=3 {
            for params in GroupParams::all_for(e) {
                let f = to_cayley(&params).unwrap();
                let (a, b) = if params.is_metacyclic_family() {
                    // (g, g·h) is isobicyclic; (g, h) itself has no swap
                    // automorphism unless the group is abelian
                    let gh = f.index_of(nf_multiply(
                        &f.params,
                        NFElement::new(1, 0),
                        NFElement::new(0, 1),
                    ));
                    (f.a, gh)
                } else {
                    (f.a, f.b)
                };
                assert_eq!(classify_triple(&f.table, a, b).unwrap(), params);
            }
        }
    }

    #[test]
    fn parameter_relations_select_exactly_one_choice() {
        for e in 2..=4 {
            for params in GroupParams::all_for(e) {
                let GroupParams::NonMetacyclic { k, l, .. } = params else { continue };
                let f = to_cayley(&params).unwrap();
                let all: &[(u8, u8)] =
                    if e == 2 { &[(0, 0)] } else { &[(0, 0), (0, 1), (1, 0), (1, 1)] };
                let matches: Vec<(u8, u8)> = all
                    .iter()
                    .copied()
                    .filter(|&(k2, l2)| matches_parameter_relations(&f.table, f.a, f.b, k2, l2))
                    .collect();
                assert_eq!(matches, vec![(k, l)]);
            }
        }
    }

    #[test]
    fn small_pairs_are_rejected() {
        let mul = |x: &(u8, u8), y: &(u8, u8)| ((x.0 + y.0) % 2, (x.1 + y.1) % 2);
        let v4 = cayley::build_from_generators(mul, &[(1, 0), (0, 1)], 8).unwrap();
        let err = classify_triple(&v4.table, v4.generators[0], v4.generators[1]);
        assert!(matches!(err, Err(ClassifyError::OrderTooSmall { n: 2 })));
    }
}
