//! Invertible Mealy machines: the syntactic carriers of tree automorphisms.
//!
//! A machine in state `q` reading letter `x` outputs `output(q)(x)` and moves
//! to state `next(q, x)`. Every per-state output table is a permutation, so
//! each state acts as an automorphism of the rooted tree over the alphabet.

use crate::alphabet::{Alphabet, Letter, Word};
use crate::perm::Perm;

/// Index of a state inside one machine.
pub type StateId = usize;

/// A finite invertible Mealy machine over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    alphabet: Alphabet,
    outputs: Vec<Perm>,
    next: Vec<Vec<StateId>>,
}

impl MealyMachine {
    /// Build a machine, checking that shapes line up and transitions are total.
    pub fn new(alphabet: Alphabet, outputs: Vec<Perm>, next: Vec<Vec<StateId>>) -> Self {
        assert_eq!(outputs.len(), next.len(), "one output table per state");
        assert!(!outputs.is_empty(), "machine needs at least one state");
        let d = alphabet.size();
        for (q, (perm, row)) in outputs.iter().zip(&next).enumerate() {
            assert_eq!(perm.degree(), d, "state {q}: output degree mismatch");
            assert_eq!(row.len(), d, "state {q}: transition row length mismatch");
            for &target in row {
                assert!(target < outputs.len(), "state {q}: dangling transition");
            }
        }
        MealyMachine { alphabet, outputs, next }
    }

    /// The one-state identity machine.
    pub fn identity(alphabet: Alphabet) -> Self {
        MealyMachine {
            alphabet,
            outputs: vec![Perm::identity(alphabet.size())],
            next: vec![vec![0; alphabet.size()]],
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn output(&self, q: StateId) -> &Perm {
        &self.outputs[q]
    }

    pub fn next(&self, q: StateId, x: Letter) -> StateId {
        self.next[q][x]
    }

    pub fn outputs(&self) -> &[Perm] {
        &self.outputs
    }

    pub fn transitions(&self) -> &[Vec<StateId>] {
        &self.next
    }

    /// Run the machine on a word: returns the output word and the final state.
    pub fn run(&self, mut q: StateId, word: &[Letter]) -> (Word, StateId) {
        let mut out = Vec::with_capacity(word.len());
        for &x in word {
            assert!(self.alphabet.contains(x), "letter {x} out of range");
            out.push(self.outputs[q].apply(x));
            q = self.next[q][x];
        }
        (out, q)
    }

    /// States reachable from `start`, in BFS order with letters ascending.
    pub fn reachable(&self, start: StateId) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for x in self.alphabet.letters() {
                let t = self.next[q][x];
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basilica() -> MealyMachine {
        // a = <b, 1>, b = <a, 1> sigma   (states: 0 = a, 1 = b, 2 = identity)
        let a = Alphabet::new(2);
        MealyMachine::new(
            a,
            vec![
                Perm::identity(2),
                Perm::from_images(vec![1, 0]).unwrap(),
                Perm::identity(2),
            ],
            vec![vec![1, 2], vec![0, 2], vec![2, 2]],
        )
    }

    #[test]
    fn run_follows_output_and_transition() {
        let m = basilica();
        // b on "00": output 1 then state a outputs 0 -> "10"
        let (out, end) = m.run(1, &[0, 0]);
        assert_eq!(out, vec![1, 0]);
        assert_eq!(end, 1); // a then letter 0 goes back to b
    }

    #[test]
    fn reachable_is_bfs_order() {
        let m = basilica();
        assert_eq!(m.reachable(0), vec![0, 1, 2]);
        assert_eq!(m.reachable(2), vec![2]);
    }
}
