use std::collections::HashSet;

use super::table::{GroupTable, Subgroup};
use super::CayleyError;

/// The characteristic subgroups and series of a finite 2-group, each computed
/// from its brute-force definition.
pub struct CharacteristicReport {
    pub center: Subgroup,
    pub derived: Subgroup,
    /// Generated by all squares and commutators (the Frattini subgroup of a
    /// 2-group).
    pub frattini: Subgroup,
    /// Upper central series `Z_0 < Z_1 < … < Z_c = G`.
    pub upper_central: Vec<Subgroup>,
    /// Lower central series `K_2 ⊇ K_3 ⊇ …`, ending at the trivial subgroup.
    pub lower_central: Vec<Subgroup>,
    /// Agemo series: `agemo[i]` is generated by all `2^i`-th powers, from
    /// `agemo[0] = G` down to the trivial subgroup.
    pub agemo: Vec<Subgroup>,
    pub exponent: usize,
    pub nilpotence_class: usize,
}

/// Computes every field of [`CharacteristicReport`] by definition.
///
/// Requires a 2-group: the Frattini subgroup is computed as the subgroup
/// generated by squares and commutators, which is only valid there (checked
/// against the maximal-subgroup intersection by
/// [`frattini_by_intersection`]).
pub fn characteristic_subgroups(g: &GroupTable) -> Result<CharacteristicReport, CayleyError> {
    if !g.is_two_group() {
        return Err(CayleyError::NotATwoGroup { order: g.order() });
    }
    let n = g.order();

    let center_members: Vec<usize> =
        (0..n).filter(|&x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x))).collect();
    let center = Subgroup::from_members(g, center_members)?;

    let mut commutator_gens: Vec<usize> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            commutator_gens.push(g.commutator(x, y));
        }
    }
    commutator_gens.sort_unstable();
    commutator_gens.dedup();
    let derived = Subgroup::generated(g, &commutator_gens);

    let mut frattini_gens = commutator_gens.clone();
    frattini_gens.extend((0..n).map(|x| g.mul(x, x)));
    frattini_gens.sort_unstable();
    frattini_gens.dedup();
    let frattini = Subgroup::generated(g, &frattini_gens);

    let mut upper_central = vec![Subgroup::trivial(g)];
    loop {
        let prev = upper_central.last().unwrap();
        let members: Vec<usize> =
            (0..n).filter(|&x| (0..n).all(|y| prev.contains(g.commutator(x, y)))).collect();
        let next = Subgroup::from_members(g, members)?;
        if next.len() == prev.len() {
            break;
        }
        upper_central.push(next);
        if upper_central.last().unwrap().is_full() {
            break;
        }
    }
    if !upper_central.last().unwrap().is_full() {
        // cannot happen for a 2-group, which is nilpotent
        return Err(CayleyError::NotAGroup("upper central series stalled".into()));
    }
    let nilpotence_class = upper_central.len() - 1;

    let mut lower_central = Vec::new();
    let mut current = derived.clone();
    loop {
        lower_central.push(current.clone());
        if current.is_trivial() {
            break;
        }
        let mut gens: Vec<usize> = Vec::new();
        for &x in current.members() {
            for y in 0..n {
                gens.push(g.commutator(x, y));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let next = Subgroup::generated(g, &gens);
        if next.len() == current.len() {
            return Err(CayleyError::NotAGroup("lower central series stalled".into()));
        }
        current = next;
    }

    let mut agemo = vec![Subgroup::full(g)];
    let mut i = 0u32;
    while !agemo.last().unwrap().is_trivial() {
        i += 1;
        let mut gens: Vec<usize> = (0..n).map(|x| g.power(x, 1i64 << i)).collect();
        gens.sort_unstable();
        gens.dedup();
        agemo.push(Subgroup::generated(g, &gens));
    }

    let exponent = (0..n).map(|x| g.element_order(x)).fold(1, lcm);

    Ok(CharacteristicReport {
        center,
        derived,
        frattini,
        upper_central,
        lower_central,
        agemo,
        exponent,
        nilpotence_class,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The quotient `parent / normal` as an explicit table. Quotient element `i`
/// is the coset whose minimal-index member is the `i`-th smallest coset
/// representative; labels carry the representatives over when present.
pub fn quotient(parent: &GroupTable, normal: &Subgroup) -> Result<GroupTable, CayleyError> {
    if !normal.is_normal(parent) {
        return Err(CayleyError::NotNormal);
    }
    let order = parent.order();
    let rep: Vec<usize> = (0..order)
        .map(|x| normal.members().iter().map(|&h| parent.mul(x, h)).min().unwrap())
        .collect();
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let pos = |r: usize| reps.binary_search(&r).unwrap();
    let rows: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| pos(rep[parent.mul(x, y)])).collect())
        .collect();
    let mut table = GroupTable::from_rows(rows)?;
    if parent.labels().is_some() {
        let labels = reps.iter().map(|&r| parent.label(r)).collect();
        table.set_labels(labels)?;
    }
    Ok(table)
}

/// Canonical abelian invariants of a subgroup: the multiset of prime-power
/// cyclic orders, sorted descending.
///
/// Works by repeatedly splitting off a cyclic factor of maximal order: in an
/// abelian group a maximal-order cyclic subgroup is a direct factor, and the
/// quotient by it realises a complement.
pub fn abelian_invariants(parent: &GroupTable, h: &Subgroup) -> Result<Vec<usize>, CayleyError> {
    if !h.is_abelian(parent) {
        return Err(CayleyError::NotAbelian);
    }
    let mut table = h.as_table(parent)?;
    let mut factors = Vec::new();
    while table.order() > 1 {
        let x = (0..table.order())
            .max_by_key(|&x| (table.element_order(x), std::cmp::Reverse(x)))
            .unwrap();
        factors.push(table.element_order(x));
        let cyclic = Subgroup::generated(&table, &[x]);
        table = quotient(&table, &cyclic)?;
    }
    let mut parts = Vec::new();
    for f in factors {
        parts.extend(prime_power_parts(f));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

fn prime_power_parts(mut n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                q *= p;
                n /= p;
            }
            parts.push(q);
        }
        p += 1;
    }
    if n > 1 {
        parts.push(n);
    }
    parts
}

/// Whether the group has a cyclic normal subgroup with cyclic quotient,
/// decided by exhausting every cyclic subgroup.
pub fn is_metacyclic(g: &GroupTable) -> bool {
    let order = g.order();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for x in 0..order {
        let h = Subgroup::generated(g, &[x]);
        if !seen.insert(h.members().to_vec()) {
            continue;
        }
        if !h.is_normal(g) {
            continue;
        }
        let target = order / h.len();
        // The quotient is cyclic iff some coset has order equal to the index.
        let cyclic_quotient = (0..order).any(|y| {
            let mut acc = y;
            let mut t = 1;
            while !h.contains(acc) {
                acc = g.mul(acc, y);
                t += 1;
            }
            t == target
        });
        if cyclic_quotient {
            return true;
        }
    }
    false
}

/// The quotient of `g` by `Φ(G′)·K_3(G)`, the smallest normal subgroup whose
/// quotient decides metacyclicity for 2-groups (`g` is metacyclic iff this
/// quotient is).
pub fn blackburn_quotient(g: &GroupTable) -> Result<GroupTable, CayleyError> {
    if !g.is_two_group() {
        return Err(CayleyError::NotATwoGroup { order: g.order() });
    }
    let n = g.order();
    let mut commutator_gens: Vec<usize> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            commutator_gens.push(g.commutator(x, y));
        }
    }
    commutator_gens.sort_unstable();
    commutator_gens.dedup();
    let derived = Subgroup::generated(g, &commutator_gens);
    // Φ(G′) for abelian-or-not G′ alike: squares and commutators within G′.
    let mut gens: Vec<usize> = Vec::new();
    for &x in derived.members() {
        gens.push(g.mul(x, x));
        for &y in derived.members() {
            gens.push(g.commutator(x, y));
        }
        // K_3 = [G′, G]
        for y in 0..n {
            gens.push(g.commutator(x, y));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let kernel = Subgroup::generated(g, &gens);
    quotient(g, &kernel)
}

/// All maximal subgroups of a 2-group, found as kernels of the nontrivial
/// homomorphisms onto the group of order 2 (an independent route that never
/// looks at squares or commutators).
pub fn maximal_subgroups(g: &GroupTable) -> Result<Vec<Subgroup>, CayleyError> {
    if !g.is_two_group() {
        return Err(CayleyError::NotATwoGroup { order: g.order() });
    }
    let gens = g.generating_set();
    let c2 = GroupTable::from_rows(vec![vec![0, 1], vec![1, 0]])?;
    let mut out = Vec::new();
    for bits in 1..(1usize << gens.len()) {
        let images: Vec<usize> = (0..gens.len()).map(|i| bits >> i & 1).collect();
        if let Ok(super::hom::ExtendOutcome::Homomorphism(hom)) =
            super::hom::extend_generator_map(
                g,
                &c2,
                &super::hom::GenMap { sources: gens.clone(), images },
            )
        {
            let kernel: Vec<usize> = (0..g.order()).filter(|&x| hom.map[x] == 0).collect();
            let sub = Subgroup::from_members(g, kernel)?;
            if !out.contains(&sub) {
                out.push(sub);
            }
        }
    }
    Ok(out)
}

/// The intersection of all maximal subgroups; cross-checks the
/// squares-and-commutators Frattini computation.
pub fn frattini_by_intersection(g: &GroupTable) -> Result<Subgroup, CayleyError> {
    let maximals = maximal_subgroups(g)?;
    if maximals.is_empty() {
        return Subgroup::from_members(g, (0..g.order()).collect());
    }
    let members: Vec<usize> =
        (0..g.order()).filter(|&x| maximals.iter().all(|m| m.contains(x))).collect();
    Subgroup::from_members(g, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_from_generators;

    fn cyclic(n: usize) -> GroupTable {
        let rows = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        GroupTable::from_rows(rows).unwrap()
    }

    /// C4 × C4 encoded as pairs (x, y) -> 4x + y.
    fn c4c4() -> GroupTable {
        let mul = |a: &(u8, u8), b: &(u8, u8)| ((a.0 + b.0) % 4, (a.1 + b.1) % 4);
        build_from_generators(mul, &[(1, 0), (0, 1)], 64).unwrap().table
    }

    /// The dihedral group of order 8 as symmetries (rotation r, flip s).
    fn dihedral8() -> GroupTable {
        let mul = |a: &(u8, u8), b: &(u8, u8)| {
            // (r^i s^j)(r^k s^l) = r^(i + k or i - k) s^(j+l)
            let k = if a.1 == 1 { (4 - b.0) % 4 } else { b.0 };
            ((a.0 + k) % 4, (a.1 + b.1) % 2)
        };
        build_from_generators(mul, &[(1u8, 0u8), (0u8, 1u8)], 16).unwrap().table
    }

    #[test]
    fn abelian_group_has_class_one() {
        let g = c4c4();
        let report = characteristic_subgroups(&g).unwrap();
        assert_eq!(report.nilpotence_class, 1);
        assert!(report.derived.is_trivial());
        assert_eq!(report.exponent, 4);
        assert_eq!(report.center.len(), 16);
        assert_eq!(report.agemo.len(), 3);
        assert_eq!(report.agemo[1].len(), 4);
    }

    #[test]
    fn dihedral_characteristics() {
        let g = dihedral8();
        let report = characteristic_subgroups(&g).unwrap();
        assert_eq!(report.center.len(), 2);
        assert_eq!(report.derived.len(), 2);
        assert_eq!(report.frattini.len(), 2);
        assert_eq!(report.nilpotence_class, 2);
        assert_eq!(report.exponent, 4);
        assert_eq!(report.lower_central.len(), 2);
    }

    #[test]
    fn frattini_agrees_with_maximal_intersection() {
        for g in [cyclic(8), c4c4(), dihedral8()] {
            let by_def = characteristic_subgroups(&g).unwrap().frattini;
            let by_intersection = frattini_by_intersection(&g).unwrap();
            assert_eq!(by_def.members(), by_intersection.members());
        }
    }

    #[test]
    fn characteristic_subgroups_rejects_non_two_groups() {
        assert!(matches!(
            characteristic_subgroups(&cyclic(6)),
            Err(CayleyError::NotATwoGroup { order: 6 })
        ));
    }

    #[test]
    fn quotient_of_c4c4_by_diagonal() {
        let g = c4c4();
        let diag = (0..g.order())
            .find(|&x| g.element_order(x) == 4 && x != 1 && g.mul(1, g.inv(x)) != 0)
            .unwrap();
        let h = Subgroup::generated(&g, &[diag]);
        let q = quotient(&g, &h).unwrap();
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn abelian_invariants_examples() {
        let g = c4c4();
        let full = Subgroup::from_members(&g, (0..16).collect()).unwrap();
        assert_eq!(abelian_invariants(&g, &full).unwrap(), vec![4, 4]);

        let c12 = cyclic(12);
        let full = Subgroup::from_members(&c12, (0..12).collect()).unwrap();
        assert_eq!(abelian_invariants(&c12, &full).unwrap(), vec![4, 3]);

        let d8 = dihedral8();
        let full = Subgroup::from_members(&d8, (0..8).collect()).unwrap();
        assert!(abelian_invariants(&d8, &full).is_err());
    }

    #[test]
    fn metacyclic_examples() {
        assert!(is_metacyclic(&cyclic(8)));
        assert!(is_metacyclic(&c4c4()));
        assert!(is_metacyclic(&dihedral8()));
    }

    #[test]
    fn blackburn_quotient_of_metacyclic_is_metacyclic() {
        for g in [c4c4(), dihedral8()] {
            let q = blackburn_quotient(&g).unwrap();
            assert_eq!(is_metacyclic(&g), is_metacyclic(&q));
        }
    }

    #[test]
    fn maximal_subgroups_of_c4c4() {
        let g = c4c4();
        let maximals = maximal_subgroups(&g).unwrap();
        assert_eq!(maximals.len(), 3);
        assert!(maximals.iter().all(|m| m.len() == 8));
    }
}
