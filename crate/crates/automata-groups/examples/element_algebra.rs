//! Exact algebra of automatic tree automorphisms: parsing, acting on words,
//! wreath decomposition, composition, inversion, and the word problem.
//!
//! Run with `cargo run --example element_algebra`.

use automata_groups::element::Element;
use automata_groups::parse::parse_machine;

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/defs/basilica.txt"
    ))
    .expect("shipped definition file");
    let parsed = parse_machine(&text).expect("valid definition file");
    let a = parsed.element("a").unwrap();
    let b = parsed.element("b").unwrap();

    println!("Basilica generators: a = <b, 1>, b = <a, 1> s");
    println!("canonical machine of a has {} states\n", a.state_count());

    // action on words
    for (g, name, word) in [(b, "b", "00"), (a, "a", "10"), (b, "b", "0110")] {
        let w = parsed.word(word).unwrap();
        println!("{name}({word}) = {}", parsed.format_word(&g.act(&w)));
    }

    // decomposition: root permutation plus one section per letter
    let dec = b.decompose();
    println!("\ndecompose(b): root perm {} with sections:", dec.root);
    for (x, s) in dec.sections.iter().enumerate() {
        let label = if *s == a {
            "a"
        } else if s.is_trivial() {
            "1"
        } else {
            "?"
        };
        println!("  at letter {x}: {label}");
    }
    assert_eq!(Element::recompose(&dec), b, "recompose inverts decompose");

    // composition follows the wreath rule <g_x h_{sigma_g(x)}> sigma_g sigma_h
    let ab = a * b;
    let dec = ab.decompose();
    println!("\na * b has root perm {} and first section b * a: {}", dec.root, dec.sections[0] == b * a);

    // the word problem is a handle comparison
    let w1 = b * a * b.inverse() * a.inverse();
    let w2 = a * b;
    println!("\n[b, a] == a b ?  {}", w1 == w2);
    println!("b b^-1 is trivial? {}", (b * b.inverse()).is_trivial());

    // sections reachable from a: the state closure {a, b, 1}
    let states = a.states();
    println!("\nstates of a: {} elements (a, b, and the identity)", states.len());

    // a deeper state: following the spine 00 returns to a itself
    println!("state of a at 00 is a again: {}", a.state_at(&[0, 0]) == a);
}
