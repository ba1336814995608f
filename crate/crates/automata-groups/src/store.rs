//! The canonical store: an append-only interning table for minimized,
//! canonically labeled machines.
//!
//! Every [`crate::element::Element`] is a handle into this store. A machine is
//! canonicalized by restricting to the states reachable from the designated
//! state, merging behaviorally equivalent states by partition refinement
//! (initial partition by output permutation, refined by transition targets),
//! and relabeling in BFS order from the designated state with letters
//! ascending. Two automorphisms are equal iff they intern to the same handle.
//!
//! The store supports concurrent reads with serialized inserts; racing inserts
//! of the same machine resolve to one handle because the interning key is the
//! full canonical encoding.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::alphabet::Alphabet;
use crate::machine::{MealyMachine, StateId};
use crate::perm::Perm;

/// A minimized machine as stored; state 0 is the designated state.
#[derive(Debug)]
pub(crate) struct CanonMachine {
    pub alphabet: Alphabet,
    pub outputs: Vec<Perm>,
    pub next: Vec<Vec<u32>>,
}

impl CanonMachine {
    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }
}

#[derive(Default)]
struct Inner {
    machines: Vec<Arc<CanonMachine>>,
    index: HashMap<Box<[u32]>, u32>,
}

pub(crate) struct Store {
    inner: RwLock<Inner>,
    compose_memo: RwLock<HashMap<(u32, u32), u32>>,
    inverse_memo: RwLock<HashMap<u32, u32>>,
    power_memo: RwLock<HashMap<(u32, u32), u32>>,
}

static STORE: OnceLock<Store> = OnceLock::new();

pub(crate) fn store() -> &'static Store {
    STORE.get_or_init(|| Store {
        inner: RwLock::new(Inner::default()),
        compose_memo: RwLock::new(HashMap::new()),
        inverse_memo: RwLock::new(HashMap::new()),
        power_memo: RwLock::new(HashMap::new()),
    })
}

impl Store {
    pub fn machine(&self, id: u32) -> Arc<CanonMachine> {
        self.inner.read().unwrap().machines[id as usize].clone()
    }

    fn intern(&self, canon: CanonMachine) -> u32 {
        let key = encode(&canon);
        if let Some(&id) = self.inner.read().unwrap().index.get(key.as_slice()) {
            return id;
        }
        let mut inner = self.inner.write().unwrap();
        if let Some(&id) = inner.index.get(key.as_slice()) {
            return id;
        }
        let id = inner.machines.len() as u32;
        inner.machines.push(Arc::new(canon));
        inner.index.insert(key.into_boxed_slice(), id);
        id
    }

    pub fn memo_compose(&self, g: u32, h: u32) -> Option<u32> {
        self.compose_memo.read().unwrap().get(&(g, h)).copied()
    }

    pub fn record_compose(&self, g: u32, h: u32, gh: u32) {
        self.compose_memo.write().unwrap().insert((g, h), gh);
    }

    pub fn memo_inverse(&self, g: u32) -> Option<u32> {
        self.inverse_memo.read().unwrap().get(&g).copied()
    }

    pub fn record_inverse(&self, g: u32, inv: u32) {
        let mut memo = self.inverse_memo.write().unwrap();
        memo.insert(g, inv);
        memo.insert(inv, g);
    }

    pub fn memo_power(&self, g: u32, k: u32) -> Option<u32> {
        self.power_memo.read().unwrap().get(&(g, k)).copied()
    }

    pub fn record_power(&self, g: u32, k: u32, result: u32) {
        self.power_memo.write().unwrap().insert((g, k), result);
    }
}

fn encode(canon: &CanonMachine) -> Vec<u32> {
    let d = canon.alphabet.size();
    let n = canon.state_count();
    let mut key = Vec::with_capacity(3 + 2 * n * d);
    key.push(d as u32);
    key.push(canon.alphabet.origin() as u32);
    key.push(n as u32);
    for perm in &canon.outputs {
        key.extend(perm.images().iter().map(|&y| y as u32));
    }
    for row in &canon.next {
        key.extend_from_slice(row);
    }
    key
}

/// Canonicalize `machine` viewed from `start` and intern the result.
pub(crate) fn canonical_id(machine: &MealyMachine, start: StateId) -> u32 {
    let canon = canonicalize(machine, start);
    store().intern(canon)
}

fn canonicalize(machine: &MealyMachine, start: StateId) -> CanonMachine {
    let d = machine.alphabet().size();
    let reach = machine.reachable(start);
    let n = reach.len();
    let mut local = vec![usize::MAX; machine.state_count()];
    for (i, &g) in reach.iter().enumerate() {
        local[g] = i;
    }

    // partition refinement: split by output, then by transition classes
    let mut class = vec![0usize; n];
    let mut count;
    {
        let mut by_output: HashMap<&Perm, usize> = HashMap::new();
        for (i, &g) in reach.iter().enumerate() {
            let fresh = by_output.len();
            class[i] = *by_output.entry(machine.output(g)).or_insert(fresh);
        }
        count = by_output.len();
    }
    loop {
        let mut by_sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut refined = vec![0usize; n];
        for i in 0..n {
            let g = reach[i];
            let sig: Vec<usize> =
                (0..d).map(|x| class[local[machine.next(g, x)]]).collect();
            let fresh = by_sig.len();
            refined[i] = *by_sig.entry((class[i], sig)).or_insert(fresh);
        }
        let stable = by_sig.len() == count;
        count = by_sig.len();
        class = refined;
        if stable {
            break;
        }
    }

    // quotient machine, relabeled by BFS from the class of `start`
    let mut rep = vec![usize::MAX; count];
    for (i, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = i;
        }
    }
    let quotient_next = |c: usize, x: usize| -> usize {
        let g = reach[rep[c]];
        class[local[machine.next(g, x)]]
    };
    let mut canon_of = vec![usize::MAX; count];
    let mut order = vec![class[0]]; // reach[0] == start
    canon_of[class[0]] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for x in 0..d {
            let t = quotient_next(c, x);
            if canon_of[t] == usize::MAX {
                canon_of[t] = order.len();
                order.push(t);
            }
        }
    }
    debug_assert_eq!(order.len(), count);

    let outputs: Vec<Perm> =
        order.iter().map(|&c| machine.output(reach[rep[c]]).clone()).collect();
    let next: Vec<Vec<u32>> = order
        .iter()
        .map(|&c| (0..d).map(|x| canon_of[quotient_next(c, x)] as u32).collect())
        .collect();
    CanonMachine { alphabet: machine.alphabet(), outputs, next }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_states_merge() {
        // two copies of the identity plus a redundant copy of <e,e>sigma
        let a = Alphabet::new(2);
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let m = MealyMachine::new(
            a,
            vec![swap.clone(), swap.clone(), Perm::identity(2), Perm::identity(2)],
            vec![vec![1, 1], vec![0, 0], vec![3, 3], vec![2, 2]],
        );
        let id0 = canonical_id(&m, 0);
        let id1 = canonical_id(&m, 1);
        assert_eq!(id0, id1);
        assert_eq!(store().machine(id0).state_count(), 1);
        let trivial0 = canonical_id(&m, 2);
        let trivial1 = canonical_id(&m, 3);
        assert_eq!(trivial0, trivial1);
        assert_eq!(store().machine(trivial0).state_count(), 1);
    }

    #[test]
    fn racing_inserts_resolve_to_one_handle() {
        let a = Alphabet::new(2);
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        // a fresh machine unlikely to be interned by other tests
        let m = MealyMachine::new(
            a,
            vec![swap.clone(), Perm::identity(2), swap],
            vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        );
        let ids: Vec<u32> = std::thread::scope(|scope| {
            let handles: Vec<_> =
                (0..8).map(|_| scope.spawn(|| canonical_id(&m, 0))).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(ids.windows(2).all(|w| w[0] == w[1]), "all threads must agree: {ids:?}");
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let a = Alphabet::new(2);
        let m = MealyMachine::new(
            a,
            vec![
                Perm::identity(2),
                Perm::from_images(vec![1, 0]).unwrap(),
                Perm::identity(2),
            ],
            vec![vec![1, 2], vec![0, 2], vec![2, 2]],
        );
        let id = canonical_id(&m, 0);
        let canon = store().machine(id);
        let rebuilt = MealyMachine::new(
            canon.alphabet,
            canon.outputs.clone(),
            canon.next.iter().map(|row| row.iter().map(|&t| t as usize).collect()).collect(),
        );
        assert_eq!(canonical_id(&rebuilt, 0), id);
    }
}
