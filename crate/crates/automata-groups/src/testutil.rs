//! Shared fixtures and independent oracles for unit tests.
//!
//! The equivalence oracle here deliberately avoids the canonicalization path:
//! it compares two machines by breadth-first search over the product state
//! space, which exhausts every reachable pair, so agreement there is exact
//! equality of the induced tree automorphisms.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::alphabet::Alphabet;
use crate::element::Element;
use crate::machine::{MealyMachine, StateId};
use crate::perm::Perm;

/// The Basilica generators: `a = <b, 1>`, `b = <a, 1> sigma`.
/// Returns `a` plus a name table for `a`, `b`, `1`.
pub fn basilica() -> (Element, HashMap<String, Element>) {
    let alphabet = Alphabet::new(2);
    let machine = MealyMachine::new(
        alphabet,
        vec![
            Perm::identity(2),
            Perm::from_images(vec![1, 0]).unwrap(),
            Perm::identity(2),
        ],
        vec![vec![1, 2], vec![0, 2], vec![2, 2]],
    );
    let a = Element::from_machine(&machine, 0);
    let b = Element::from_machine(&machine, 1);
    let one = Element::from_machine(&machine, 2);
    let mut names = HashMap::new();
    names.insert("a".to_string(), a);
    names.insert("b".to_string(), b);
    names.insert("1".to_string(), one);
    (a, names)
}

/// The exponential-activity element `e = <e, e> sigma`.
pub fn exponential_machine() -> Element {
    let alphabet = Alphabet::new(2);
    let machine = MealyMachine::new(
        alphabet,
        vec![Perm::from_images(vec![1, 0]).unwrap()],
        vec![vec![0, 0]],
    );
    Element::from_machine(&machine, 0)
}

/// The adding machine `t = <1, t> sigma`.
pub fn adding_machine() -> Element {
    let alphabet = Alphabet::new(2);
    let machine = MealyMachine::new(
        alphabet,
        vec![Perm::from_images(vec![1, 0]).unwrap(), Perm::identity(2)],
        vec![vec![1, 0], vec![1, 1]],
    );
    Element::from_machine(&machine, 0)
}

/// Gupta-Sidki generators over `{0,1,2}`: `a` the rooted 3-cycle and
/// `b = <b, a, a^{-1}>`.
pub fn gupta_sidki() -> (Element, Element) {
    let alphabet = Alphabet::new(3);
    let sigma = Perm::from_images(vec![1, 2, 0]).unwrap();
    let id3 = Perm::identity(3);
    // states: 0 = b, 1 = a, 2 = a^{-1}, 3 = identity
    let machine = MealyMachine::new(
        alphabet,
        vec![id3.clone(), sigma.clone(), sigma.inverse(), id3],
        vec![vec![0, 1, 2], vec![3, 3, 3], vec![3, 3, 3], vec![3, 3, 3]],
    );
    let b = Element::from_machine(&machine, 0);
    let a = Element::from_machine(&machine, 1);
    (a, b)
}

/// Exhaustive equivalence oracle: do the two machine states induce the same
/// tree automorphism? Decided by BFS over the product state space, comparing
/// output permutations of every reachable pair.
pub fn actions_agree(m1: &MealyMachine, s1: StateId, m2: &MealyMachine, s2: StateId) -> bool {
    assert_eq!(m1.alphabet(), m2.alphabet());
    let d = m1.alphabet().size();
    let mut seen: HashSet<(StateId, StateId)> = HashSet::new();
    let mut queue = vec![(s1, s2)];
    seen.insert((s1, s2));
    while let Some((p, q)) = queue.pop() {
        if m1.output(p) != m2.output(q) {
            return false;
        }
        for x in 0..d {
            let pair = (m1.next(p, x), m2.next(q, x));
            if seen.insert(pair) {
                queue.push(pair);
            }
        }
    }
    true
}

/// A random product of up to `max_len` factors from `gens`.
pub fn random_word_element<R: Rng>(rng: &mut R, gens: &[Element], max_len: usize) -> Element {
    let len = rng.gen_range(0..=max_len);
    let alphabet = gens[0].alphabet();
    let factors: Vec<Element> =
        (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
    Element::product(alphabet, &factors)
}

/// A random invertible machine: random output permutations, random total
/// transitions.
pub fn random_machine<R: Rng>(
    rng: &mut R,
    alphabet: Alphabet,
    max_states: usize,
) -> MealyMachine {
    use rand::seq::SliceRandom;
    let d = alphabet.size();
    let n = rng.gen_range(1..=max_states);
    let outputs = (0..n)
        .map(|_| {
            let mut images: Vec<usize> = (0..d).collect();
            images.shuffle(rng);
            Perm::from_images(images).unwrap()
        })
        .collect();
    let next = (0..n).map(|_| (0..d).map(|_| rng.gen_range(0..n)).collect()).collect();
    MealyMachine::new(alphabet, outputs, next)
}
