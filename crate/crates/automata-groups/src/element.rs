//! Automatic tree automorphisms as canonical handles.
//!
//! An [`Element`] is a handle to a minimized, canonically labeled machine in
//! the global store; the handle's state is always state 0 of its machine. Two
//! elements are equal as tree automorphisms iff their handles are identical,
//! which makes the word problem an integer comparison.
//!
//! Composition is left-to-right: `(g * h)` acts by `w -> h(g(w))`. Under this
//! convention decomposition satisfies the wreath multiplication rule
//! `g * h = <g_x * h_{sigma_g(x)}> sigma_g sigma_h`.
//!
//! Elements over different alphabets must not be mixed; doing so panics.

use std::collections::HashMap;
use std::ops::Mul;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::machine::{MealyMachine, StateId};
use crate::perm::Perm;
use crate::store::{canonical_id, store, CanonMachine};

/// Handle to a canonical automatic automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u32);

/// Root permutation plus one section per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub root: Perm,
    pub sections: Vec<Element>,
}

impl Element {
    /// The identity automorphism over `alphabet`.
    pub fn identity(alphabet: Alphabet) -> Element {
        Element(canonical_id(&MealyMachine::identity(alphabet), 0))
    }

    /// Canonicalize `machine` viewed from `state`. Deterministic and
    /// idempotent: any state of the same behavioral class yields the same
    /// handle.
    pub fn from_machine(machine: &MealyMachine, state: StateId) -> Element {
        assert!(state < machine.state_count(), "state out of range");
        Element(canonical_id(machine, state))
    }

    /// The rooted automorphism acting by `perm` on the first level only.
    pub fn rooted(alphabet: Alphabet, perm: &Perm) -> Element {
        assert_eq!(perm.degree(), alphabet.size());
        let d = alphabet.size();
        let machine = MealyMachine::new(
            alphabet,
            vec![perm.clone(), Perm::identity(d)],
            vec![vec![1; d], vec![1; d]],
        );
        Element::from_machine(&machine, 0)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.data().alphabet
    }

    fn data(&self) -> Arc<CanonMachine> {
        store().machine(self.0)
    }

    /// Number of states of the canonical machine (= number of distinct
    /// sections, this element included).
    pub fn state_count(&self) -> usize {
        self.data().state_count()
    }

    /// A copy of the canonical machine; this element is state 0.
    pub fn machine(&self) -> MealyMachine {
        let data = self.data();
        MealyMachine::new(
            data.alphabet,
            data.outputs.clone(),
            data.next.iter().map(|row| row.iter().map(|&t| t as usize).collect()).collect(),
        )
    }

    /// True iff this is the identity automorphism.
    pub fn is_trivial(&self) -> bool {
        let data = self.data();
        data.state_count() == 1 && data.outputs[0].is_identity()
    }

    /// Apply the automorphism to a word. Length-preserving and
    /// prefix-compatible. Panics on letters outside the alphabet.
    pub fn act(&self, word: &[Letter]) -> Word {
        let data = self.data();
        let d = data.alphabet.size();
        let mut state = 0u32;
        let mut out = Vec::with_capacity(word.len());
        for &x in word {
            assert!(x < d, "letter {x} out of range for alphabet of size {d}");
            out.push(data.outputs[state as usize].apply(x));
            state = data.next[state as usize][x];
        }
        out
    }

    /// The state (section) of the automorphism at `word`.
    pub fn state_at(&self, word: &[Letter]) -> Element {
        let data = self.data();
        let d = data.alphabet.size();
        let mut state = 0u32;
        for &x in word {
            assert!(x < d, "letter {x} out of range for alphabet of size {d}");
            state = data.next[state as usize][x];
        }
        if state == 0 {
            *self
        } else {
            Element::from_machine(&self.machine(), state as usize)
        }
    }

    /// The section at a single letter.
    pub fn section(&self, x: Letter) -> Element {
        self.state_at(&[x])
    }

    /// Root permutation of the first level.
    pub fn root_perm(&self) -> Perm {
        self.data().outputs[0].clone()
    }

    /// Root permutation plus all sections.
    pub fn decompose(&self) -> Decomposition {
        let data = self.data();
        let machine = self.machine();
        let sections = (0..data.alphabet.size())
            .map(|x| {
                let target = data.next[0][x] as usize;
                if target == 0 {
                    *self
                } else {
                    Element::from_machine(&machine, target)
                }
            })
            .collect();
        Decomposition { root: data.outputs[0].clone(), sections }
    }

    /// Rebuild an element from a root permutation and sections. Inverse of
    /// [`Element::decompose`]. Panics if the sections disagree on the alphabet
    /// or the permutation degree does not match.
    pub fn recompose(dec: &Decomposition) -> Element {
        let first = dec.sections.first().expect("sections must cover every letter");
        let alphabet = first.alphabet();
        let d = alphabet.size();
        assert_eq!(dec.sections.len(), d, "one section per letter");
        assert_eq!(dec.root.degree(), d, "root permutation degree mismatch");
        for s in &dec.sections {
            assert_eq!(s.alphabet(), alphabet, "alphabet mismatch between sections");
        }

        let mut outputs = vec![dec.root.clone()];
        let mut next: Vec<Vec<StateId>> = vec![vec![0; d]];
        for (x, section) in dec.sections.iter().enumerate() {
            let data = section.data();
            let offset = outputs.len();
            next[0][x] = offset;
            outputs.extend(data.outputs.iter().cloned());
            next.extend(
                data.next
                    .iter()
                    .map(|row| row.iter().map(|&t| offset + t as usize).collect::<Vec<_>>()),
            );
        }
        let machine = MealyMachine::new(alphabet, outputs, next);
        Element::from_machine(&machine, 0)
    }

    /// Group product, left-to-right: `(g.compose(h))(w) = h(g(w))`.
    /// Panics on alphabet mismatch.
    pub fn compose(self, other: Element) -> Element {
        if let Some(id) = store().memo_compose(self.0, other.0) {
            return Element(id);
        }
        let g = self.data();
        let h = other.data();
        assert_eq!(g.alphabet, h.alphabet, "alphabet mismatch in composition");
        let d = g.alphabet.size();

        // product automaton on reachable state pairs
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        index.insert((0, 0), 0);
        let mut outputs = Vec::new();
        let mut next: Vec<Vec<StateId>> = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            let out_p = &g.outputs[p as usize];
            let out_q = &h.outputs[q as usize];
            outputs.push(out_p.then(out_q));
            let mut row = Vec::with_capacity(d);
            for x in 0..d {
                let target = (g.next[p as usize][x], h.next[q as usize][out_p.apply(x)]);
                let fresh = pairs.len();
                let slot = *index.entry(target).or_insert(fresh);
                if slot == fresh {
                    pairs.push(target);
                }
                row.push(slot);
            }
            next.push(row);
        }
        let machine = MealyMachine::new(g.alphabet, outputs, next);
        let result = Element::from_machine(&machine, 0);
        store().record_compose(self.0, other.0, result.0);
        result
    }

    pub fn inverse(self) -> Element {
        if let Some(id) = store().memo_inverse(self.0) {
            return Element(id);
        }
        let g = self.data();
        let d = g.alphabet.size();
        let outputs: Vec<Perm> = g.outputs.iter().map(|p| p.inverse()).collect();
        let next: Vec<Vec<StateId>> = g
            .next
            .iter()
            .enumerate()
            .map(|(q, row)| {
                let inv = &outputs[q];
                (0..d).map(|x| row[inv.apply(x)] as usize).collect()
            })
            .collect();
        let machine = MealyMachine::new(g.alphabet, outputs, next);
        let result = Element::from_machine(&machine, 0);
        store().record_inverse(self.0, result.0);
        result
    }

    /// Conjugate `c^{-1} * self * c`.
    pub fn conjugate(self, c: Element) -> Element {
        c.inverse().compose(self).compose(c)
    }

    /// The same automorphism read over the block alphabet `X^k`: states are
    /// unchanged, outputs and transitions process `k` letters at a time.
    /// Acting on a block word and flattening agrees with acting over `X`.
    pub fn block_power(self, k: usize) -> Element {
        assert!(k >= 1, "block power must be at least 1");
        if k == 1 {
            return self;
        }
        if let Some(id) = store().memo_power(self.0, k as u32) {
            return Element(id);
        }
        let data = self.data();
        let base = data.alphabet;
        let blocked = base.power(k);
        let machine = self.machine();
        let n = machine.state_count();
        let mut outputs = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut images = Vec::with_capacity(blocked.size());
            let mut row = Vec::with_capacity(blocked.size());
            for b in 0..blocked.size() {
                let block = base.decode_block(b, k);
                let (out, end) = machine.run(q, &block);
                images.push(base.encode_block(&out));
                row.push(end);
            }
            outputs.push(Perm::from_images(images).expect("blocked output must be a permutation"));
            next.push(row);
        }
        let result =
            Element::from_machine(&MealyMachine::new(blocked, outputs, next), 0);
        store().record_power(self.0, k as u32, result.0);
        result
    }

    /// All states of the automorphism (the closure of `{self}` under
    /// sections), designated state first.
    pub fn states(&self) -> Vec<Element> {
        let machine = self.machine();
        (0..machine.state_count())
            .map(|q| if q == 0 { *self } else { Element::from_machine(&machine, q) })
            .collect()
    }

    /// Compose a word of elements left-to-right; empty words give the identity.
    pub fn product(alphabet: Alphabet, factors: &[Element]) -> Element {
        factors
            .iter()
            .fold(Element::identity(alphabet), |acc, &f| acc.compose(f))
    }
}

impl Mul for Element {
    type Output = Element;

    fn mul(self, rhs: Element) -> Element {
        self.compose(rhs)
    }
}
