//! Helpers shared by the integration suites: fixture loading and the
//! independent equality oracle (product-machine breadth-first search, kept
//! deliberately separate from the canonicalization path it cross-checks).
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::HashSet;
use std::path::PathBuf;

use rand::Rng;

use automata_groups::element::Element;
use automata_groups::machine::{MealyMachine, StateId};
use automata_groups::parse::{parse_machine, ParsedMachine};

pub fn defs_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("defs").join(name)
}

pub fn load_defs(name: &str) -> ParsedMachine {
    let text = std::fs::read_to_string(defs_path(name))
        .unwrap_or_else(|e| panic!("cannot read defs/{name}: {e}"));
    parse_machine(&text).unwrap_or_else(|e| panic!("defs/{name} must parse: {e}"))
}

/// Exhaustive action-equality oracle on machine data: BFS over the product
/// state space comparing output permutations of every reachable pair. This
/// exhausts the product automaton, so the answer is exact.
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

/// Oracle comparison of two elements through their canonical machines.
pub fn elements_act_equally(g: &Element, h: &Element) -> bool {
    actions_agree(&g.machine(), 0, &h.machine(), 0)
}

/// Generator set with inverses, for ball enumeration.
pub fn symmetrized(gens: &[Element]) -> Vec<Element> {
    let mut out = Vec::new();
    for &g in gens {
        for h in [g, g.inverse()] {
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

/// Random word in the given letters, as a factor list of length <= max_len.
pub fn random_factors<R: Rng>(rng: &mut R, gens: &[Element], max_len: usize) -> Vec<Element> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect()
}
