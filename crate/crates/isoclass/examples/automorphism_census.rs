//! Counts automorphisms of the non-metacyclic groups at e = 3 along two
//! independent routes — the closed-form parity criterion and brute-force
//! extension of generator maps — then sorts the four parameter choices into
//! isomorphism classes.
//!
//! Run with `cargo run --example automorphism_census`.

use isoclass::cayley::isomorphism_search;
use isoclass::classify::{aut_count, aut_witnesses, lemma22_check, IsoWitness};
use isoclass::families::{to_cayley, GroupParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = 3;
    let kls = [(0u8, 0u8), (0, 1), (1, 0), (1, 1)];

    println!("automorphism counts at e = {e}:");
    println!("{:<12} {:>12} {:>10} {:>10}", "group", "closed form", "witnesses", "search");
    for (k, l) in kls {
        let p = GroupParams::non_metacyclic(e, k, l)?;
        let fam = to_cayley(&p)?;
        let closed = aut_count(e, l)?;
        let witnesses = aut_witnesses(e, k, l)?.len();
        let brute = isomorphism_search(&fam.table, &[fam.a, fam.b], &fam.table, None)?.len();
        println!("{:<12} {:>12} {:>10} {:>10}", p.to_string(), closed, witnesses, brute);
        assert_eq!(closed as usize, brute);
        assert_eq!(witnesses, brute);
    }

    println!();
    println!("pairwise isomorphism (criterion witnesses, n = 2^{e}):");
    for (k1, l1) in kls {
        for (k, l) in kls {
            // Count witnesses (i, j, f, h) the criterion accepts from
            // G2(e;k1,l1) to G2(e;k,l); a nonzero count means isomorphic.
            let n = 1u64 << e;
            let mut count = 0u64;
            for i in 0..n {
                for j in 0..n {
                    for f in 0..n {
                        for h in 0..n {
                            let w = IsoWitness { i, j, f, h };
                            if lemma22_check(e, (k1, l1), (k, l), &w)? {
                                count += 1;
                            }
                        }
                    }
                }
            }
            let mark = if count > 0 { format!("{count:>5}") } else { "    .".to_string() };
            print!(" {mark}");
        }
        println!("   <- from G2({e};{k1},{l1})");
    }
    println!();
    println!("three isomorphism classes: {{(0,0)}}, {{(1,0)}}, {{(0,1), (1,1)}}");
    Ok(())
}
