//! The embedding pipeline: put a finitely generated group of bounded
//! automatic automorphisms inside the mother group over a power alphabet,
//! wreathed with its level action, and verify the embedding word by word.
//!
//! Stages printed below: the section closure with depths, the directed
//! periods and their least common multiple, the difference automorphism of
//! the successor cycle, the origin-straightened images, and the final
//! verification sweep.
//!
//! Run with `cargo run --example embed_pipeline`.

use automata_groups::classify::classify;
use automata_groups::embed::{build_delta, embed_bounded_subgroup, verify_embedding, ImageKind};
use automata_groups::parse::parse_machine;
use automata_groups::perm::Perm;
use automata_groups::Alphabet;

fn main() {
    // the difference automorphism alone: it rewrites cycle exponents to
    // successive differences, so every periodic ray straightens
    let alphabet = Alphabet::new(2);
    let delta = build_delta(alphabet, &Perm::rotation(2, 1)).unwrap();
    println!(
        "difference automorphism over two letters: {} states, 11 -> {}",
        delta.state_count(),
        delta
            .act(&[1, 1])
            .iter()
            .map(usize::to_string)
            .collect::<String>()
    );

    for file in ["basilica.txt", "adding.txt", "gupta_sidki.txt"] {
        let path = format!("{}/defs/{file}", env!("CARGO_MANIFEST_DIR"));
        let parsed = parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let generators = parsed.elements();
        println!("\n=== {file} ===");
        for (name, g) in &generators {
            println!("  generator {name}: {}", classify(g));
        }
        let plan = match embed_bounded_subgroup(&generators) {
            Ok(plan) => plan,
            Err(e) => {
                println!("  not embeddable: {e}");
                continue;
            }
        };
        println!(
            "  head level m = {}, period lcm = {}, block size m' = {} => N = {}",
            plan.m_head, plan.ell, plan.m_prime, plan.n_levels
        );
        println!(
            "  final alphabet has {} letters; {} state images:",
            plan.alphabet_final.size(),
            plan.images.len()
        );
        for image in plan.images.values() {
            let kind = match &image.kind {
                ImageKind::Trivial => "trivial".to_string(),
                ImageKind::Rooted { source_depth } => {
                    format!("rooted (from a finitary state of depth {source_depth})")
                }
                ImageKind::Directed { spine_letter, .. } => {
                    format!("origin-directed (spine letter {spine_letter} over the power alphabet)")
                }
            };
            println!("    {} states -> {kind}", image.source.state_count());
        }
        let report = verify_embedding(&plan, 5, 3);
        println!(
            "  verification: {} words, {} distinct elements, {} distinct images, pass = {}",
            report.words_checked,
            report.distinct_elements,
            report.distinct_images,
            report.passed()
        );
    }
}
