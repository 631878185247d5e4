//! Walks through the characteristic subgroups of one non-metacyclic group:
//! centre, derived and Frattini subgroups, both central series, the agemo
//! series, exponent and nilpotence class — all computed from the raw
//! multiplication table, then compared with the closed-form expectations.
//!
//! Run with `cargo run --example structure_tour`.

use isoclass::cayley::{abelian_invariants, characteristic_subgroups};
use isoclass::families::{to_cayley, GroupParams, NFElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = 3;
    let p = GroupParams::non_metacyclic(e, 0, 0)?;
    let fam = to_cayley(&p)?;
    let g = &fam.table;
    let rep = characteristic_subgroups(g)?;

    println!("{p}  (order {})", g.order());
    println!();

    let m = 1u64 << (e - 1);
    println!("centre: {} elements", rep.center.len());
    for &x in rep.center.members() {
        println!("  {}", g.label(x));
    }
    println!(
        "  expected members: 1, a^{m}, b^{m}, z = a^{m} b^{m}  (z is the canonical central involution)"
    );
    assert_eq!(rep.center.len(), 4);
    assert!(rep.center.contains(fam.z()));
    assert!(rep.center.contains(fam.index_of(NFElement::new(m, 0))));

    println!();
    println!("derived subgroup:  invariants {:?}", abelian_invariants(g, &rep.derived)?);
    println!("Frattini subgroup: invariants {:?}", abelian_invariants(g, &rep.frattini)?);
    println!("exponent: {}   nilpotence class: {}", rep.exponent, rep.nilpotence_class);

    println!();
    println!("upper central series (orders): {:?}",
        rep.upper_central.iter().map(|s| s.len()).collect::<Vec<_>>());
    println!("lower central series (orders): {:?}",
        rep.lower_central.iter().map(|s| s.len()).collect::<Vec<_>>());
    println!("agemo series (orders):         {:?}",
        rep.agemo.iter().map(|s| s.len()).collect::<Vec<_>>());

    // The 2^i-th powers generate exactly the (e-i)-th upper central term.
    for i in 0..=e as usize {
        assert_eq!(
            rep.agemo[i].members(),
            rep.upper_central[e as usize - i].members(),
            "agemo_{i} should equal Z_{}",
            e as usize - i
        );
    }
    println!();
    println!("verified: agemo_i = Z_(e-i) for every 0 <= i <= {e}");
    Ok(())
}
