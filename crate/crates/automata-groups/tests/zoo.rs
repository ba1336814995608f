//! Golden tests for the shipped definition files: each file's defining
//! recursion, classification, and (for the bounded families) a small
//! embedding run.

mod common;

use automata_groups::classify::{classify, directed_info, finitary_depth, ActivityClass};
use automata_groups::element::Element;
use automata_groups::embed::{embed_bounded_subgroup, verify_embedding};
use automata_groups::perm::Perm;

use common::load_defs;

#[test]
fn basilica_recursion() {
    let defs = load_defs("basilica.txt");
    let a = defs.element("a").unwrap();
    let b = defs.element("b").unwrap();
    let dec = a.decompose();
    assert!(dec.root.is_identity());
    assert_eq!(dec.sections[0], b);
    assert!(dec.sections[1].is_trivial());
    let dec = b.decompose();
    assert_eq!(dec.root, Perm::from_images(vec![1, 0]).unwrap());
    assert_eq!(dec.sections[0], a);
}

#[test]
fn bsv_recursion_and_classes() {
    // a = <1, a> s;  b = <1, B> s with B the inverse of b
    let defs = load_defs("bsv.txt");
    let a = defs.element("a").unwrap();
    let b = defs.element("b").unwrap();
    let b_inv = defs.element("B").unwrap();
    assert_eq!(b_inv, b.inverse(), "state B must be the inverse of b");
    let dec = a.decompose();
    assert_eq!(dec.root, Perm::from_images(vec![1, 0]).unwrap());
    assert!(dec.sections[0].is_trivial());
    assert_eq!(dec.sections[1], a);
    assert_eq!(b.decompose().sections[1], b_inv);

    assert_eq!(
        directed_info(&a),
        Some(automata_groups::classify::DirectedInfo { period: 1, spine: vec![1] })
    );
    assert_eq!(directed_info(&b).map(|i| i.period), Some(2));
    for g in [a, b, b_inv] {
        assert!(matches!(classify(&g), ActivityClass::Bounded { .. }));
    }
}

#[test]
fn gupta_sidki_recursion_and_classes() {
    let defs = load_defs("gupta_sidki.txt");
    let a = defs.element("a").unwrap();
    let a_inv = defs.element("A").unwrap();
    let b = defs.element("b").unwrap();
    assert_eq!(a_inv, a.inverse());
    assert_eq!(a.compose(a).compose(a), Element::identity(a.alphabet()), "a has order 3");
    let dec = b.decompose();
    assert!(dec.root.is_identity());
    assert_eq!(dec.sections, vec![b, a, a_inv]);
    assert_eq!(finitary_depth(&a), Some(1));
    assert!(matches!(classify(&b), ActivityClass::Bounded { .. }));
    assert_eq!(
        b.compose(b).compose(b),
        Element::identity(b.alphabet()),
        "b has order 3"
    );
}

#[test]
fn fabrykowski_gupta_recursion_and_classes() {
    let defs = load_defs("fabrykowski_gupta.txt");
    let a = defs.element("a").unwrap();
    let b = defs.element("b").unwrap();
    let dec = b.decompose();
    assert_eq!(dec.sections[0], b);
    assert_eq!(dec.sections[1], a);
    assert!(dec.sections[2].is_trivial());
    assert_eq!(finitary_depth(&a), Some(1));
    assert_eq!(directed_info(&b).map(|i| (i.period, i.spine)), Some((1, vec![0])));
}

#[test]
fn neumann_recursion_and_classes() {
    let defs = load_defs("neumann.txt");
    for (rooted, directed) in [("rs", "ts"), ("rc", "tc")] {
        let r = defs.element(rooted).unwrap();
        let t = defs.element(directed).unwrap();
        assert_eq!(finitary_depth(&r), Some(1));
        let dec = t.decompose();
        assert!(dec.root.is_identity());
        assert_eq!(dec.sections[0], r);
        assert_eq!(dec.sections[1], t);
        assert!(dec.sections[2].is_trivial());
        assert_eq!(directed_info(&t).map(|i| (i.period, i.spine)), Some((1, vec![1])));
        assert!(matches!(classify(&t), ActivityClass::Bounded { .. }));
    }
}

#[test]
fn grigorchuk_recursion_and_classes() {
    let defs = load_defs("grigorchuk.txt");
    let a = defs.element("a").unwrap();
    let b = defs.element("b").unwrap();
    let c = defs.element("c").unwrap();
    let d = defs.element("d").unwrap();
    assert_eq!(finitary_depth(&a), Some(1));
    // the directed generators cycle b -> c -> d -> b along the 1-ray
    for (g, next) in [(b, c), (c, d), (d, b)] {
        assert_eq!(g.state_at(&[1]), next);
        assert_eq!(
            directed_info(&g).map(|i| (i.period, i.spine)),
            Some((3, vec![1, 1, 1]))
        );
    }
    // all four generators are involutions and b c d = 1
    for g in [a, b, c, d] {
        assert!(g.compose(g).is_trivial());
    }
    assert!(b.compose(c).compose(d).is_trivial());
}

#[test]
fn polynomial_and_exponential_files() {
    let defs = load_defs("polynomial.txt");
    let g = defs.element("g").unwrap();
    assert_eq!(classify(&g), ActivityClass::Polynomial { degree: 1 });
    let defs = load_defs("exponential.txt");
    let e = defs.element("e").unwrap();
    assert_eq!(classify(&e), ActivityClass::Exponential);
}

#[test]
fn bounded_zoo_embeds() {
    for (file, word_length, depth) in
        [("bsv.txt", 4, 2), ("adding.txt", 5, 3), ("grigorchuk.txt", 2, 1)]
    {
        let defs = load_defs(file);
        let plan = embed_bounded_subgroup(&defs.elements())
            .unwrap_or_else(|e| panic!("{file}: {e}"));
        let report = verify_embedding(&plan, word_length, depth);
        assert!(
            report.passed(),
            "{file}: {:?} {:?}",
            report.agreement_failures,
            report.injectivity_failures
        );
        assert_eq!(report.distinct_elements, report.distinct_images, "{file}");
    }
}
