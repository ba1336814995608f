//! The mother group: rooted permutations and origin-directed recursions.
//!
//! Over an alphabet with distinguished letter `o`, the group is generated by
//! two finite subgroups realized as tree automorphisms:
//!
//! - `A`: every permutation of the alphabet acting at the root only,
//!   `a -> <1, .., 1> a`;
//! - `B`: every pair of a permutation of the punctured alphabet and an
//!   assignment of `A`-elements to punctured letters, realized recursively as
//!   `b = (b_2, .., b_d) sigma -> <b, b_2, .., b_d> sigma` with `b` itself
//!   repeating at the origin.
//!
//! `|A| = d!` and `|B| = d!^(d-1) (d-1)!`, so full enumeration is gated to
//! small alphabets; a generating subset is available for larger ones.

use crate::alphabet::{Alphabet, Letter};
use crate::element::Element;
use crate::error::MotherError;
use crate::machine::MealyMachine;
use crate::parse::{decimal_symbols, render_machines};
use crate::perm::Perm;

/// Largest alphabet for which `A` and `B` are fully enumerated.
pub const MAX_FULL_ENUMERATION: usize = 4;

/// Abstract datum of a `B`-element: a permutation of the punctured alphabet
/// (stored lifted to the full alphabet, fixing the origin) and one `A`-part
/// permutation per punctured letter in increasing letter order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSpec {
    pub top: Perm,
    pub assignments: Vec<Perm>,
}

/// The generators of the mother group over one alphabet.
#[derive(Debug, Clone)]
pub struct MotherGenerators {
    alphabet: Alphabet,
    a_elements: Vec<(Perm, Element)>,
    b_elements: Vec<(BSpec, Element)>,
}

impl MotherGenerators {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// All rooted permutations, paired with their abstract permutation.
    pub fn a_elements(&self) -> &[(Perm, Element)] {
        &self.a_elements
    }

    /// All origin-directed elements, paired with their abstract datum.
    pub fn b_elements(&self) -> &[(BSpec, Element)] {
        &self.b_elements
    }

    /// Elements of `A` alone.
    pub fn a_group(&self) -> Vec<Element> {
        self.a_elements.iter().map(|&(_, g)| g).collect()
    }

    /// Elements of `B` alone.
    pub fn b_group(&self) -> Vec<Element> {
        self.b_elements.iter().map(|&(_, g)| g).collect()
    }

    /// Stable names `a0, a1, ..` and `b0, b1, ..` in enumeration order.
    pub fn named(&self) -> Vec<(String, Element)> {
        let mut out = Vec::new();
        for (i, (_, g)) in self.a_elements.iter().enumerate() {
            out.push((format!("a{i}"), *g));
        }
        for (i, (_, g)) in self.b_elements.iter().enumerate() {
            out.push((format!("b{i}"), *g));
        }
        out
    }

    /// Render all generators as a definition file.
    pub fn render_file(&self) -> String {
        render_machines(&decimal_symbols(self.alphabet.size()), &self.named())
    }
}

/// The punctured alphabet `X \ {o}` in increasing letter order.
pub fn punctured(alphabet: Alphabet) -> Vec<Letter> {
    alphabet.letters().filter(|&x| x != alphabet.origin()).collect()
}

/// Lift a permutation of the punctured letters to the full alphabet, fixing
/// the origin. `perm` permutes positions of `punctured(alphabet)`.
fn lift_punctured(alphabet: Alphabet, perm: &Perm) -> Perm {
    let bar = punctured(alphabet);
    let mut images: Vec<usize> = (0..alphabet.size()).collect();
    for (i, &x) in bar.iter().enumerate() {
        images[x] = bar[perm.apply(i)];
    }
    Perm::from_images(images).unwrap()
}

/// Build the `B`-element of a [`BSpec`] as a tree automorphism.
pub fn b_element(alphabet: Alphabet, spec: &BSpec) -> Element {
    let d = alphabet.size();
    let bar = punctured(alphabet);
    assert_eq!(spec.assignments.len(), bar.len(), "one A-part per punctured letter");
    assert_eq!(spec.top.degree(), d, "top permutation must act on the full alphabet");
    assert_eq!(spec.top.apply(alphabet.origin()), alphabet.origin(), "top must fix the origin");

    // states: 0 = the element itself, then one rooted state per assignment,
    // then the identity; canonicalization merges duplicates
    let id = Perm::identity(d);
    let mut outputs = vec![spec.top.clone()];
    let mut next = vec![vec![0usize; d]];
    let identity_state = 1 + bar.len();
    for (i, &x) in bar.iter().enumerate() {
        outputs.push(spec.assignments[i].clone());
        next.push(vec![identity_state; d]);
        next[0][x] = 1 + i;
    }
    outputs.push(id);
    next.push(vec![identity_state; d]);
    Element::from_machine(&MealyMachine::new(alphabet, outputs, next), 0)
}

/// Enumerate the full generator groups `A` and `B`. Errors for alphabets
/// larger than [`MAX_FULL_ENUMERATION`].
pub fn mother_generators(alphabet: Alphabet) -> Result<MotherGenerators, MotherError> {
    let d = alphabet.size();
    if d > MAX_FULL_ENUMERATION {
        return Err(MotherError::AlphabetTooLarge { d, max: MAX_FULL_ENUMERATION });
    }
    let a_elements: Vec<(Perm, Element)> = Perm::enumerate(d)
        .into_iter()
        .map(|p| {
            let g = Element::rooted(alphabet, &p);
            (p, g)
        })
        .collect();

    let bar = punctured(alphabet);
    let tops: Vec<Perm> =
        Perm::enumerate(bar.len()).into_iter().map(|p| lift_punctured(alphabet, &p)).collect();
    let parts = Perm::enumerate(d);
    let mut b_elements = Vec::new();
    for top in &tops {
        // odometer over assignments, last position fastest
        let mut idx = vec![0usize; bar.len()];
        loop {
            let assignments: Vec<Perm> = idx.iter().map(|&i| parts[i].clone()).collect();
            let spec = BSpec { top: top.clone(), assignments };
            let g = b_element(alphabet, &spec);
            b_elements.push((spec, g));
            let mut pos = bar.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < parts.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(MotherGenerators { alphabet, a_elements, b_elements })
}

/// A small generating subset usable for any alphabet size: a transposition
/// and a full cycle for `A`, and for `B` one element per `A`-generator placed
/// at the first punctured letter plus the lifts of `Sym(punctured)`
/// generators.
pub fn mother_generating_set(alphabet: Alphabet) -> Vec<(String, Element)> {
    let d = alphabet.size();
    let mut a_gens: Vec<Perm> = vec![Perm::transposition(d, 0, 1)];
    if d > 2 {
        a_gens.push(Perm::rotation(d, 1));
    }
    let bar = punctured(alphabet);
    let mut out = Vec::new();
    for (i, p) in a_gens.iter().enumerate() {
        out.push((format!("a{i}"), Element::rooted(alphabet, p)));
    }
    let trivial_parts = vec![Perm::identity(d); bar.len()];
    for (i, p) in a_gens.iter().enumerate() {
        let mut assignments = trivial_parts.clone();
        assignments[0] = p.clone();
        out.push((
            format!("b{i}"),
            b_element(alphabet, &BSpec { top: Perm::identity(d), assignments }),
        ));
    }
    let mut bar_tops: Vec<Perm> = Vec::new();
    if bar.len() >= 2 {
        bar_tops.push(Perm::transposition(bar.len(), 0, 1));
    }
    if bar.len() > 2 {
        bar_tops.push(Perm::rotation(bar.len(), 1));
    }
    for (i, p) in bar_tops.iter().enumerate() {
        let spec =
            BSpec { top: lift_punctured(alphabet, p), assignments: trivial_parts.clone() };
        out.push((format!("s{i}"), b_element(alphabet, &spec)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, directed_info, finitary_depth, ActivityClass};
    use crate::parse::parse_machine;

    #[test]
    fn counts_for_small_alphabets() {
        let g2 = mother_generators(Alphabet::new(2)).unwrap();
        assert_eq!(g2.a_elements().len(), 2);
        assert_eq!(g2.b_elements().len(), 2);
        let g3 = mother_generators(Alphabet::new(3)).unwrap();
        assert_eq!(g3.a_elements().len(), 6);
        assert_eq!(g3.b_elements().len(), 72);
        assert!(mother_generators(Alphabet::new(5)).is_err());
    }

    #[test]
    fn b_elements_recurse_at_origin() {
        for d in [2usize, 3] {
            let gens = mother_generators(Alphabet::new(d)).unwrap();
            let o = gens.alphabet().origin();
            let a_group = gens.a_group();
            for (_, b) in gens.b_elements() {
                let dec = b.decompose();
                assert_eq!(dec.root.apply(o), o, "root must fix the origin");
                assert_eq!(dec.sections[o], *b, "section at the origin is the element itself");
                assert_eq!(b.state_at(&[o]), *b);
                for x in gens.alphabet().letters().filter(|&x| x != o) {
                    let s = dec.sections[x];
                    assert!(
                        s.is_trivial() || a_group.contains(&s),
                        "off-origin sections are rooted"
                    );
                }
            }
        }
    }

    #[test]
    fn a_elements_are_finitary_of_depth_at_most_one() {
        let gens = mother_generators(Alphabet::new(3)).unwrap();
        for (_, a) in gens.a_elements() {
            let depth = finitary_depth(a).expect("rooted elements are finitary");
            assert!(depth <= 1);
        }
    }

    #[test]
    fn b_elements_classify_bounded_with_origin_spine() {
        for d in [2usize, 3] {
            let gens = mother_generators(Alphabet::new(d)).unwrap();
            let o = gens.alphabet().origin();
            for (_, b) in gens.b_elements() {
                if b.is_trivial() {
                    assert_eq!(classify(b), ActivityClass::Finitary { depth: 0 });
                    continue;
                }
                assert!(matches!(classify(b), ActivityClass::Bounded { .. }));
                let info = directed_info(b).expect("nontrivial B-elements are directed");
                assert_eq!(info.period, 1);
                assert_eq!(info.spine, vec![o]);
            }
        }
    }

    #[test]
    fn distinct_specs_give_distinct_elements() {
        let gens = mother_generators(Alphabet::new(3)).unwrap();
        let mut seen: Vec<Element> = Vec::new();
        for (_, b) in gens.b_elements() {
            assert!(!seen.contains(b), "B enumeration produced a duplicate automorphism");
            seen.push(*b);
        }
    }

    #[test]
    fn rendered_file_round_trips() {
        for d in [2usize, 3] {
            let gens = mother_generators(Alphabet::new(d)).unwrap();
            let file = gens.render_file();
            let parsed = parse_machine(&file).unwrap();
            for (name, g) in gens.named() {
                assert_eq!(parsed.element(&name).unwrap(), g, "generator {name} changed");
            }
        }
    }

    #[test]
    fn nonzero_origin_moves_the_spine() {
        let alphabet = Alphabet::with_origin(2, 1);
        let gens = mother_generators(alphabet).unwrap();
        assert_eq!(gens.b_elements().len(), 2);
        for (_, b) in gens.b_elements() {
            if b.is_trivial() {
                continue;
            }
            assert_eq!(b.section(1), *b, "recursion sits at the chosen origin");
            let info = directed_info(b).unwrap();
            assert_eq!(info.spine, vec![1]);
        }
    }

    #[test]
    fn generating_subset_is_small_and_bounded() {
        let set = mother_generating_set(Alphabet::new(5));
        assert!(set.len() <= 7);
        for (name, g) in &set {
            let c = classify(g);
            assert!(c.is_bounded_or_finitary(), "{name} classified {c}");
        }
    }
}
