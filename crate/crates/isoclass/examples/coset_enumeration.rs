//! Enumerates cosets of finitely presented groups: a classic presentation
//! parsed from text, the built-in family presentations, subgroup indexes,
//! and the agreement of both enumeration strategies.
//!
//! Run with `cargo run --example coset_enumeration`.

use isoclass::presentations::{
    make_presentation, parse_presentation, todd_coxeter, PresentationSpec, Strategy,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The quaternion group of order 8 from its standard two-generator form.
    let q8 = parse_presentation("< i, j | i^4, i^2 j^-2, j^-1 i j i >")?;
    let table = todd_coxeter(&q8, &[], 1 << 16, Strategy::RelatorFirst);
    println!("Q8 from text: {q8}");
    println!("  cosets over the trivial subgroup: {} (complete: {})", table.cosets,
        table.is_complete());
    assert_eq!(table.cosets, 8);

    // Enumerating over a subgroup gives its index instead of the order.
    let over_i = todd_coxeter(&q8, &[vec![(0, 1)]], 1 << 16, Strategy::RelatorFirst);
    println!("  cosets over <i>: {}", over_i.cosets);
    assert_eq!(over_i.cosets, 2);

    println!();
    for spec in [
        PresentationSpec::G1 { e: 3, f: 2 },
        PresentationSpec::G2 { e: 3, k: 1, l: 1 },
        PresentationSpec::Bj { r: 2, k: 0, l: 1 },
    ] {
        let p = make_presentation(&spec)?;
        let relator_first = todd_coxeter(&p, &[], 1 << 20, Strategy::RelatorFirst);
        let coset_first = todd_coxeter(&p, &[], 1 << 20, Strategy::CosetFirst);
        println!("{spec}: {}", p);
        println!(
            "  relator-first: {} cosets   coset-first: {} cosets",
            relator_first.cosets, coset_first.cosets
        );
        assert_eq!(relator_first.cosets, coset_first.cosets);
    }

    println!();
    println!("the ISOCLASS_COSET_CAP environment variable bounds live cosets;");
    println!("a presentation of an infinite group reports `capped` instead of looping.");
    let free = parse_presentation("< x, y | >")?;
    let capped = todd_coxeter(&free, &[], 100, Strategy::RelatorFirst);
    println!("free group of rank 2, cap 100: complete = {}", capped.is_complete());
    assert!(!capped.is_complete());
    Ok(())
}
