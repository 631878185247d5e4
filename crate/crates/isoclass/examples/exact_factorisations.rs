//! Searches for all groups of order n² that factor as a product of two
//! cyclic subgroups of order n with trivial intersection, by exhausting the
//! rewriting systems `b^j a = a^f(j) b^g(j)` and keeping one representative
//! per isomorphism class.
//!
//! Run with `cargo run --example exact_factorisations`.

use isoclass::classify::classify_triple;
use isoclass::factorise::{matched_pair_search, matched_pair_search_expensive};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [2u64, 4] {
        let with_swap = matched_pair_search(n, true)?;
        let swap_free = matched_pair_search(n, false)?;
        let s = if with_swap.len() == 1 { "" } else { "es" };
        println!(
            "n = {n}: {} class{s} ({} without requiring the factor-swapping automorphism)",
            with_swap.len(),
            swap_free.len()
        );
        for (idx, fact) in with_swap.iter().enumerate() {
            let name = classify_triple(&fact.table, fact.a, fact.b)
                .map(|p| p.to_string())
                .unwrap_or_else(|_| "below the family range".to_string());
            println!(
                "  class {idx}: order {:3}, rewriting f = {:?}, g = {:?}  ->  {name}",
                fact.table.order(),
                fact.pair.f,
                fact.pair.g
            );
        }
    }

    // n = 8 uses a pruned candidate derivation: only (f(1), g(1)) is free,
    // the rest follows from associativity. The parity restriction it applies
    // is a heuristic (validated against every known outcome), so the result
    // is advisory rather than exhaustive.
    println!();
    let n8 = matched_pair_search_expensive(8, true)?;
    println!("n = 8 (pruned search): {} classes", n8.len());
    for (idx, fact) in n8.iter().enumerate() {
        let name = classify_triple(&fact.table, fact.a, fact.b)
            .map(|p| p.to_string())
            .unwrap_or_else(|_| "outside the two families".to_string());
        println!("  class {idx}: order {:3}  ->  {name}", fact.table.order());
    }
    Ok(())
}
