//! The matrix view: elements as generalized permutation matrices, matrix
//! product as composition, and the augmentation onto level permutations.
//! Iterated substitution expands the action level by level.
//!
//! Run with `cargo run --example matrix_view`.

use automata_groups::element::Element;
use automata_groups::matrix::GenPermMatrix;
use automata_groups::parse::parse_machine;

fn show(label: &str, m: &GenPermMatrix, names: &[(&str, Element)]) {
    println!("{label}:");
    let d = m.alphabet().size();
    for x in 0..d {
        let row: Vec<String> = (0..d)
            .map(|y| match m.entry(x, y) {
                None => "0".to_string(),
                Some(e) if e.is_trivial() => "1".to_string(),
                Some(e) => names
                    .iter()
                    .find(|(_, g)| *g == e)
                    .map(|(n, _)| n.to_string())
                    .unwrap_or_else(|| "?".to_string()),
            })
            .collect();
        println!("  [ {} ]", row.join(" "));
    }
}

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/defs/basilica.txt"
    ))
    .unwrap();
    let parsed = parse_machine(&text).unwrap();
    let a = parsed.element("a").unwrap();
    let b = parsed.element("b").unwrap();
    let names = [("a", a), ("b", b), ("ba", b * a), ("ab", a * b)];

    // M^a = [[b, 0], [0, 1]] and M^b = [[0, a], [1, 0]]
    let ma = GenPermMatrix::of(&a);
    let mb = GenPermMatrix::of(&b);
    show("M^a", &ma, &names);
    show("M^b", &mb, &names);

    // the matrix product encodes composition
    let product = ma.product(&mb);
    show("M^a M^b", &product, &names);
    assert_eq!(product, GenPermMatrix::of(&(a * b)));
    assert_eq!(product.into_element(), a * b);

    // augmentation: replace entries by 1 to get the level-1 permutation
    println!("augmentation of M^b: {}", mb.augmentation());

    // reading the element over X^2 is the two-step substitution: the head of
    // the blocked element is the level-2 permutation matrix
    let b2 = b.block_power(2);
    println!("action of b on level 2 (blocks 00 01 10 11): {}", b2.root_perm());

    let inverse_product = mb.product(&GenPermMatrix::of(&b.inverse()));
    assert_eq!(inverse_product, GenPermMatrix::identity(a.alphabet()));
    println!("M^b M^(b^-1) is the identity matrix: true");
}
