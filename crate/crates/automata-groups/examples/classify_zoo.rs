//! Activity-growth classification of the shipped automaton zoo: finitary,
//! bounded (with directed period and spine), polynomial, and exponential
//! elements, with their exact growth tables.
//!
//! Run with `cargo run --example classify_zoo`.

use automata_groups::classify::{classify, directed_info, growth_profile};
use automata_groups::parse::parse_machine;

const ZOO: &[&str] = &[
    "rootswap.txt",
    "adding.txt",
    "basilica.txt",
    "grigorchuk.txt",
    "gupta_sidki.txt",
    "fabrykowski_gupta.txt",
    "bsv.txt",
    "neumann.txt",
    "polynomial.txt",
    "exponential.txt",
];

fn main() {
    for file in ZOO {
        let path = format!("{}/defs/{file}", env!("CARGO_MANIFEST_DIR"));
        let parsed = parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap();
        println!("{file}");
        for (name, g) in parsed.elements() {
            let class = classify(&g);
            let growth = growth_profile(&g, 8).unwrap();
            let spine = directed_info(&g)
                .map(|i| format!(", spine {}^inf", parsed.format_word(&i.spine)))
                .unwrap_or_default();
            println!("  {name:<3} {class}{spine}");
            println!("      growth on levels 0..8: {growth:?}");
        }
        println!();
    }
}
