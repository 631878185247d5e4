//! Verifies that the Berkovich–Janko presentations — the seven-generator
//! fourteen-relator form and its two-generator reduction — present exactly
//! the non-metacyclic family members of order `2^(2r+4)`: every relator is
//! checked under explicit normal-form images, and the presented order is
//! confirmed by coset enumeration.
//!
//! Run with `cargo run --example berkovich_janko`.

use isoclass::presentations::{
    make_presentation, verify_theorem_4_2, PresentationSpec, DEFAULT_COSET_CAP,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = 2;
    println!("two-generator form at r = {r}:");
    let short = make_presentation(&PresentationSpec::Bj { r, k: 0, l: 1 })?;
    println!("  {short}");
    println!();
    println!("full form keeps the auxiliaries v, b, z, u, w as generators:");
    let full = make_presentation(&PresentationSpec::BjFull { r, k: 0, l: 1 })?;
    println!("  {} generators, {} relators", full.generators.len(), full.relators.len());

    println!();
    for (k, l) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let cert = verify_theorem_4_2(r, k, l, DEFAULT_COSET_CAP)?;
        println!(
            "BJ({r},{k},{l}) -> G2({};{},{}): {} relators hold, image generates {} elements, \
             enumeration gives {}",
            cert.e, cert.k, cert.l, cert.relators_checked, cert.generated_order,
            cert.enumerated_order
        );
        assert_eq!(cert.generated_order, 1 << (2 * cert.e));
    }

    println!();
    println!("certified images for (k, l) = (0, 1):");
    let cert = verify_theorem_4_2(r, 0, 1, DEFAULT_COSET_CAP)?;
    for (symbol, image) in &cert.images {
        println!("  {symbol:>2} -> {image}");
    }
    Ok(())
}
