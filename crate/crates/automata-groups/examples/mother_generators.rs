//! The mother-group generators: the rooted copy of the full symmetric group
//! and the origin-directed copy of the decorated punctured symmetric group,
//! enumerated in full for small alphabets.
//!
//! Run with `cargo run --example mother_generators`.

use automata_groups::alphabet::Alphabet;
use automata_groups::classify::{classify, directed_info};
use automata_groups::mother::{mother_generating_set, mother_generators};

fn main() {
    for d in [2usize, 3] {
        let gens = mother_generators(Alphabet::new(d)).unwrap();
        println!(
            "d = {d}: |A| = {} rooted elements, |B| = {} directed elements",
            gens.a_elements().len(),
            gens.b_elements().len()
        );
        // every nontrivial B-element repeats itself at the origin
        let o = gens.alphabet().origin();
        for (spec, b) in gens.b_elements().iter().take(3) {
            if b.is_trivial() {
                continue;
            }
            let info = directed_info(b).unwrap();
            println!(
                "  B-element with top {} -> {} (period {}, spine letter {o})",
                spec.top,
                classify(b),
                info.period
            );
            assert_eq!(b.section(o), *b);
        }
        println!();
    }

    // the full enumeration is gated; larger alphabets use a generating subset
    println!("generating subset for d = 5:");
    for (name, g) in mother_generating_set(Alphabet::new(5)) {
        println!("  {name}: {} states, {}", g.state_count(), classify(&g));
    }

    // definition file for d = 2, reusable by every subcommand
    let file = mother_generators(Alphabet::new(2)).unwrap().render_file();
    println!("\ndefinition file for d = 2:\n{file}");
}
