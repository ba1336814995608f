//! Breadth-first balls in Cayley graphs of automaton groups, with the
//! boundary-to-size ratios used for empirical isoperimetry. The random walk
//! with internal degrees of freedom is sampled alongside.
//!
//! Run with `cargo run --release --example cayley_balls`.

use automata_groups::alphabet::Alphabet;
use automata_groups::element::Element;
use automata_groups::mother::mother_generators;
use automata_groups::parse::parse_machine;
use automata_groups::walks::{ball_isoperimetric, mu_step, rwidf_sample, MeasureMatrix};

fn main() {
    for file in ["basilica.txt", "grigorchuk.txt"] {
        let path = format!("{}/defs/{file}", env!("CARGO_MANIFEST_DIR"));
        let parsed = parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let gens: Vec<Element> = parsed.elements().into_iter().map(|(_, g)| g).collect();
        let profile = ball_isoperimetric(&gens, 7, 500_000);
        println!("{file}: |ball|, |boundary|, ratio");
        for row in &profile.rows {
            println!(
                "  r = {:<2} {:<8} {:<8} {:.4}",
                row.radius, row.ball, row.boundary, row.ratio
            );
        }
        println!();
    }

    // the chain on (group element, letter): the letter marginal is uniform
    let gens = mother_generators(Alphabet::new(2)).unwrap();
    let matrix = MeasureMatrix::of(&mu_step(&gens));
    let start = (Element::identity(Alphabet::new(2)), 0);
    let trajectory = rwidf_sample(&matrix, start, 20, 7, 0);
    let letters: Vec<usize> = trajectory.iter().map(|(_, x)| *x).collect();
    println!("letter coordinate of 20 chain steps (seed 7): {letters:?}");
    let nontrivial = trajectory.iter().filter(|(g, _)| !g.is_trivial()).count();
    println!("nontrivial group coordinates along the way: {nontrivial}/21");
}
