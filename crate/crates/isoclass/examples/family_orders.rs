//! Builds both parameterised families across a range of exponents and
//! confirms each group closes to order `2^(2e)` two ways: by breadth-first
//! closure of the normal-form product, and by the fully validated
//! multiplication table.
//!
//! Run with `cargo run --example family_orders`.

use isoclass::cayley::closure_order;
use isoclass::families::{nf_multiply, to_cayley, GroupParams, NFElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<12} {:>8} {:>10} {:>8}", "group", "order", "closure", "table");
    for e in 2..=5 {
        for p in GroupParams::all_for(e) {
            let expected = p.group_order() as usize;
            let a = NFElement::new(1, 0);
            let b = NFElement::new(0, 1);
            let closed =
                closure_order(|x, y| nf_multiply(&p, *x, *y), &[a, b], expected + 1)?;
            let table_order = if e <= 4 {
                to_cayley(&p)?.table.order().to_string()
            } else {
                "-".to_string() // tables above order 256 are possible but slow to validate here
            };
            println!("{:<12} {:>8} {:>10} {:>8}", p.to_string(), expected, closed, table_order);
            assert_eq!(closed, expected);
        }
    }

    println!();
    println!("sample products in G2(3;1,0), written a^i b^j:");
    let p = GroupParams::non_metacyclic(3, 1, 0)?;
    let samples = [
        (NFElement::new(0, 1), NFElement::new(1, 0)),
        (NFElement::new(0, 3), NFElement::new(2, 0)),
        (NFElement::new(4, 4), NFElement::new(4, 4)),
    ];
    for (x, y) in samples {
        let z = nf_multiply(&p, x, y);
        println!(
            "  (a^{} b^{}) * (a^{} b^{}) = a^{} b^{}",
            x.i, x.j, y.i, y.j, z.i, z.j
        );
    }
    Ok(())
}
