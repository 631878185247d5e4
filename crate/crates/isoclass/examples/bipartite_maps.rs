//! Enumerates the isomorphism classes of regular embeddings of the complete
//! bipartite graph K_{n,n} arising from the two families, and prints the
//! rotation system of one representative.
//!
//! Each embedding comes from a triple (G, a, b): darts are numbered
//! `2x` (black end) and `2x + 1` (white end) over the group elements `x`;
//! the rotation acts by left translation by `a` on black darts and by `b`
//! on white darts.
//!
//! Run with `cargo run --example bipartite_maps`.

use isoclass::maps::{enumerate_maps, export_map, FamilyFilter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [4u64, 8] {
        println!("regular embeddings of K_{{{n},{n}}}:");
        println!(
            "  {:<5} {:<12} {:>4} {:>5} {:>5} {:>6} {:>7}",
            "class", "group", "V", "E", "F", "genus", "orbit"
        );
        for class in enumerate_maps(n, FamilyFilter::All)? {
            let m = &class.map;
            println!(
                "  {:<5} {:<12} {:>4} {:>5} {:>5} {:>6} {:>7}",
                class.id, class.group, m.vertices, m.edges, m.faces, m.genus,
                class.pair_orbit_size
            );
        }
        println!();
    }

    println!("non-metacyclic classes only, n = 8, merged across isomorphic groups:");
    let classes = enumerate_maps(8, FamilyFilter::NonMetacyclic)?;
    for class in &classes {
        println!(
            "  class {}: {} (orbits merged from: {})",
            class.id,
            class.group,
            class.merged_from.join(", ")
        );
    }

    println!();
    println!("rotation system of the first class:");
    print!("{}", export_map(&classes[0]));
    Ok(())
}
