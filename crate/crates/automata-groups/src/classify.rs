//! Activity-growth classification of automatic automorphisms.
//!
//! The growth function of an element counts the words of each length whose
//! state is nontrivial. For automatic elements it is either polynomial or
//! exponential, and the class is decided by the cycle structure of the
//! digraph of nontrivial states of the minimized machine: intersecting
//! distinct cycles force exponential growth, otherwise the growth degree is
//! the longest chain of cycles minus one. Classification therefore runs on
//! canonical machines, never on raw input machines, so duplicated states
//! cannot fake intersecting cycles.

use serde::Serialize;

use crate::alphabet::{Letter, Word};
use crate::element::Element;
use crate::error::ClassifyError;
use crate::machine::MealyMachine;

/// Activity class of an automatic automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum ActivityClass {
    /// Trivial beyond some level; `depth` is the smallest level at which all
    /// states are trivial.
    Finitary { depth: usize },
    /// Uniformly bounded activity; `depth` is the smallest level at which all
    /// non-finitary states are directed.
    Bounded { depth: usize },
    /// Polynomial activity of the given degree (degree 0 reports as Bounded).
    Polynomial { degree: usize },
    Exponential,
}

impl ActivityClass {
    pub fn is_bounded_or_finitary(&self) -> bool {
        matches!(self, ActivityClass::Finitary { .. } | ActivityClass::Bounded { .. })
    }
}

impl std::fmt::Display for ActivityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ActivityClass::Finitary { depth } => write!(f, "finitary(depth {depth})"),
            ActivityClass::Bounded { depth } => write!(f, "bounded(depth {depth})"),
            ActivityClass::Polynomial { degree } => write!(f, "polynomial(degree {degree})"),
            ActivityClass::Exponential => write!(f, "exponential"),
        }
    }
}

/// Witness that an element is directed: it reproduces itself along the spine
/// word, and all other states at that level are finitary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedInfo {
    pub period: usize,
    pub spine: Word,
}

/// Per-machine classification scratch data.
struct Analysis {
    machine: MealyMachine,
    /// nontrivial(q): some state reachable from q has a nonidentity output
    nontrivial: Vec<bool>,
    /// finitary(q): no cycle through nontrivial states is reachable from q
    finitary: Vec<bool>,
}

impl Analysis {
    fn new(g: &Element) -> Self {
        let machine = g.machine();
        let n = machine.state_count();
        let d = machine.alphabet().size();

        // reverse reachability from states with nonidentity output
        let mut nontrivial = vec![false; n];
        let mut reverse = vec![Vec::new(); n];
        for q in 0..n {
            for x in 0..d {
                reverse[machine.next(q, x)].push(q);
            }
        }
        let mut stack: Vec<usize> =
            (0..n).filter(|&q| !machine.output(q).is_identity()).collect();
        for &q in &stack {
            nontrivial[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !nontrivial[p] {
                    nontrivial[p] = true;
                    stack.push(p);
                }
            }
        }

        // a state is finitary iff its nontrivial descendants form a DAG;
        // equivalently no nontrivial state on a cycle is reachable from it
        let sccs = tarjan_sccs(n, |q| {
            (0..d).map(|x| machine.next(q, x)).collect::<Vec<_>>()
        });
        let mut on_cycle = vec![false; n];
        for scc in &sccs {
            let cyclic = scc.len() > 1
                || (0..d).any(|x| machine.next(scc[0], x) == scc[0]);
            if cyclic {
                for &q in scc {
                    on_cycle[q] = true;
                }
            }
        }
        let mut finitary = vec![true; n];
        let mut stack: Vec<usize> =
            (0..n).filter(|&q| nontrivial[q] && on_cycle[q]).collect();
        for &q in &stack {
            finitary[q] = false;
        }
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if finitary[p] {
                    finitary[p] = false;
                    stack.push(p);
                }
            }
        }
        Analysis { machine, nontrivial, finitary }
    }

    fn d(&self) -> usize {
        self.machine.alphabet().size()
    }

    /// Smallest level at which all states of `q` are trivial, if any.
    fn finitary_depth(&self, q: usize) -> Option<usize> {
        if !self.finitary[q] {
            return None;
        }
        // longest-path DP on the DAG of nontrivial states
        let mut memo = vec![None; self.machine.state_count()];
        Some(self.depth_rec(q, &mut memo))
    }

    fn depth_rec(&self, q: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if !self.nontrivial[q] {
            return 0;
        }
        if let Some(v) = memo[q] {
            return v;
        }
        let best = (0..self.d())
            .map(|x| self.depth_rec(self.machine.next(q, x), memo))
            .max()
            .unwrap();
        memo[q] = Some(best + 1);
        best + 1
    }

    /// Directedness of the element sitting at machine state `q`.
    ///
    /// Walk the unique chain of non-finitary sections: the element is directed
    /// iff every visited state has exactly one non-finitary section and the
    /// walk returns to `q`. The walk length then is the minimal period, and
    /// the recorded letters form the unique spine word.
    fn directed_info(&self, q: usize) -> Option<DirectedInfo> {
        if self.finitary[q] {
            return None;
        }
        let mut spine = Vec::new();
        let mut cur = q;
        for _ in 0..self.machine.state_count() {
            let exits: Vec<Letter> = (0..self.d())
                .filter(|&x| !self.finitary[self.machine.next(cur, x)])
                .collect();
            let [x] = exits.as_slice() else {
                return None; // branching non-finitary activity
            };
            spine.push(*x);
            cur = self.machine.next(cur, *x);
            if cur == q {
                return Some(DirectedInfo { period: spine.len(), spine });
            }
        }
        None // entered a cycle that avoids q
    }

    /// Smallest level at which every non-finitary state is directed, if any.
    fn bounded_depth(&self, start: usize) -> Option<usize> {
        let n = self.machine.state_count();
        let mut level = vec![false; n];
        level[start] = true;
        for m in 0..=n {
            let ok = (0..n)
                .filter(|&q| level[q] && !self.finitary[q])
                .all(|q| self.directed_info(q).is_some());
            if ok {
                return Some(m);
            }
            let mut nxt = vec![false; n];
            for q in 0..n {
                if level[q] {
                    for x in 0..self.d() {
                        nxt[self.machine.next(q, x)] = true;
                    }
                }
            }
            level = nxt;
        }
        None
    }
}

/// Iterative Tarjan strongly connected components.
fn tarjan_sccs(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    #[derive(Clone)]
    struct NodeState {
        index: usize,
        lowlink: usize,
        on_stack: bool,
    }
    let mut state: Vec<Option<NodeState>> = vec![None; n];
    let mut stack = Vec::new();
    let mut sccs = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if state[root].is_some() {
            continue;
        }
        // explicit DFS stack: (node, successor list, next successor index)
        let mut dfs: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        state[root] = Some(NodeState { index: counter, lowlink: counter, on_stack: true });
        counter += 1;
        stack.push(root);
        while let Some((v, succs, i)) = dfs.last_mut() {
            if *i < succs.len() {
                let w = succs[*i];
                *i += 1;
                match &state[w] {
                    None => {
                        state[w] = Some(NodeState {
                            index: counter,
                            lowlink: counter,
                            on_stack: true,
                        });
                        counter += 1;
                        stack.push(w);
                        let s = succ(w);
                        dfs.push((w, s, 0));
                    }
                    Some(ws) if ws.on_stack => {
                        let wi = ws.index;
                        let v = *v;
                        let vs = state[v].as_mut().unwrap();
                        vs.lowlink = vs.lowlink.min(wi);
                    }
                    Some(_) => {}
                }
            } else {
                let v = *v;
                dfs.pop();
                let vs = state[v].as_ref().unwrap().clone();
                if let Some((parent, _, _)) = dfs.last() {
                    let p = *parent;
                    let low = vs.lowlink;
                    let ps = state[p].as_mut().unwrap();
                    ps.lowlink = ps.lowlink.min(low);
                }
                if vs.lowlink == vs.index {
                    let mut scc = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        state[w].as_mut().unwrap().on_stack = false;
                        scc.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(scc);
                }
            }
        }
    }
    sccs
}

/// Number of length-`n` words whose state is nontrivial, by dynamic
/// programming over the minimized machine (memoization on state and level).
/// Errors once `d^n` no longer fits in `u64`, since the count is bounded by
/// `d^n` but can attain it.
pub fn growth_function(g: &Element, n: usize) -> Result<u64, ClassifyError> {
    Ok(*growth_profile(g, n)?.last().unwrap())
}

/// The growth values `Gamma(0), .., Gamma(nmax)` in one sweep.
pub fn growth_profile(g: &Element, nmax: usize) -> Result<Vec<u64>, ClassifyError> {
    let machine = g.machine();
    let d = machine.alphabet().size();
    if (d as f64).ln() * nmax as f64 >= 64.0 * std::f64::consts::LN_2 {
        return Err(ClassifyError::HorizonTooLarge { n: nmax, d });
    }
    let analysis = Analysis::new(g);
    let n_states = machine.state_count();
    // counts[q] = number of length-k words with state q
    let mut counts = vec![0u64; n_states];
    counts[0] = 1;
    let mut profile = Vec::with_capacity(nmax + 1);
    for _ in 0..=nmax {
        profile.push(
            counts
                .iter()
                .enumerate()
                .filter(|(q, _)| analysis.nontrivial[*q])
                .map(|(_, &c)| c)
                .sum(),
        );
        let mut nxt = vec![0u64; n_states];
        for q in 0..n_states {
            if counts[q] > 0 {
                for x in 0..d {
                    nxt[machine.next(q, x)] += counts[q];
                }
            }
        }
        counts = nxt;
    }
    Ok(profile)
}

/// Smallest level at which all states are trivial, if the element is
/// finitary. Detected as: no cycle through a nontrivial state.
pub fn finitary_depth(g: &Element) -> Option<usize> {
    Analysis::new(g).finitary_depth(0)
}

/// Minimal period and unique spine word of a directed element.
pub fn directed_info(g: &Element) -> Option<DirectedInfo> {
    Analysis::new(g).directed_info(0)
}

/// Full activity classification with minimal depth / degree data.
pub fn classify(g: &Element) -> ActivityClass {
    let analysis = Analysis::new(g);
    if let Some(depth) = analysis.finitary_depth(0) {
        return ActivityClass::Finitary { depth };
    }

    // cycle structure of the digraph of nontrivial states reachable from 0
    let machine = &analysis.machine;
    let d = analysis.d();
    let n = machine.state_count();
    let sccs = tarjan_sccs(n, |q| {
        if !analysis.nontrivial[q] {
            return Vec::new();
        }
        (0..d)
            .map(|x| machine.next(q, x))
            .filter(|&t| analysis.nontrivial[t])
            .collect()
    });
    let mut scc_of = vec![usize::MAX; n];
    for (i, scc) in sccs.iter().enumerate() {
        for &q in scc {
            scc_of[q] = i;
        }
    }
    let internal_out_edges = |q: usize| -> usize {
        (0..d)
            .map(|x| machine.next(q, x))
            .filter(|&t| analysis.nontrivial[t] && scc_of[t] == scc_of[q])
            .count()
    };
    let mut cyclic = vec![false; sccs.len()];
    for (i, scc) in sccs.iter().enumerate() {
        if !analysis.nontrivial[scc[0]] {
            continue;
        }
        let has_cycle = scc.len() > 1 || internal_out_edges(scc[0]) > 0;
        if has_cycle {
            cyclic[i] = true;
            // two distinct cycles meet iff some vertex keeps more than one
            // edge inside its component
            if scc.iter().any(|&q| internal_out_edges(q) > 1) {
                return ActivityClass::Exponential;
            }
        }
    }

    // degree = max number of cyclic components along a path from state 0,
    // minus one; Tarjan emits components in reverse topological order, so
    // iterating indices downward visits predecessors first
    let mut chain = vec![0usize; sccs.len()];
    let mut reaches = vec![false; sccs.len()];
    reaches[scc_of[0]] = true;
    for i in (0..sccs.len()).rev() {
        if !reaches[i] {
            continue;
        }
        let here = chain[i].max(usize::from(cyclic[i]));
        chain[i] = here;
        for &q in &sccs[i] {
            if !analysis.nontrivial[q] {
                continue;
            }
            for x in 0..d {
                let t = machine.next(q, x);
                if analysis.nontrivial[t] && scc_of[t] != i {
                    reaches[scc_of[t]] = true;
                    chain[scc_of[t]] =
                        chain[scc_of[t]].max(here + usize::from(cyclic[scc_of[t]]));
                }
            }
        }
    }
    let max_chain = chain.iter().copied().max().unwrap_or(0);
    debug_assert!(max_chain >= 1, "non-finitary element must reach a cycle");
    if max_chain <= 1 {
        let depth = analysis
            .bounded_depth(0)
            .expect("bounded element must have a bounded depth within state count");
        ActivityClass::Bounded { depth }
    } else {
        ActivityClass::Polynomial { degree: max_chain - 1 }
    }
}

/// Consistency report for the growth machinery; failures indicate
/// implementation bugs, not properties of the input.
#[derive(Debug, Serialize)]
pub struct GrowthConsistencyReport {
    pub nmax: usize,
    pub growth: Vec<u64>,
    pub class: ActivityClass,
    pub issues: Vec<String>,
}

impl GrowthConsistencyReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Check growth symmetry, subadditivity against the element's own states,
/// and agreement between the classification tag and observed growth values.
pub fn check_growth_consistency(
    g: &Element,
    nmax: usize,
) -> Result<GrowthConsistencyReport, ClassifyError> {
    let mut issues = Vec::new();
    let growth = growth_profile(g, nmax)?;
    let inverse_growth = growth_profile(&g.inverse(), nmax)?;
    if growth != inverse_growth {
        issues.push("growth of g and g^{-1} differ".to_string());
    }

    // subadditivity on pairs drawn from the element's states
    let partners: Vec<Element> = g.states().into_iter().take(6).collect();
    for h in &partners {
        let gh = g.compose(*h);
        let gamma_h = growth_profile(h, nmax)?;
        let gamma_gh = growth_profile(&gh, nmax)?;
        for n in 0..=nmax {
            if gamma_gh[n] > growth[n] + gamma_h[n] {
                issues.push(format!("subadditivity fails at n={n} for a state partner"));
            }
        }
    }

    let class = classify(g);
    match &class {
        ActivityClass::Finitary { depth } => {
            for (n, &v) in growth.iter().enumerate() {
                if n >= *depth && v != 0 {
                    issues.push(format!("finitary depth {depth} but Gamma({n}) = {v}"));
                }
            }
            if *depth > 0 && growth.len() > depth - 1 && growth[*depth - 1] == 0 {
                issues.push("finitary depth is not minimal".to_string());
            }
        }
        ActivityClass::Bounded { .. } => {
            let bound = growth.iter().copied().max().unwrap_or(0);
            let states = g.state_count() as u64;
            if bound > states {
                issues.push(format!(
                    "bounded tag but max growth {bound} exceeds state count {states}"
                ));
            }
        }
        ActivityClass::Polynomial { .. } => {}
        ActivityClass::Exponential => {
            // growth must eventually grow geometrically; fit on the tail
            if nmax >= 6 {
                let lo = growth[nmax / 2].max(1) as f64;
                let hi = growth[nmax].max(1) as f64;
                let lambda = (hi / lo).powf(1.0 / (nmax - nmax / 2) as f64);
                if lambda <= 1.01 {
                    issues.push(format!("exponential tag but fitted rate {lambda:.4}"));
                }
            }
        }
    }
    Ok(GrowthConsistencyReport { nmax, growth, class, issues })
}
