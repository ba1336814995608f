//! Embedding finitely generated groups of bounded automatic automorphisms
//! into the mother group over a power alphabet, wreathed with a finite head.
//!
//! Given bounded generators over `X`, the pipeline computes:
//!
//! - `Q`: the closure of the generators under sections, with depths;
//! - `m`: a head level strictly greater than every depth, so that every
//!   non-finitary state at that level is directed;
//! - `ell`: the least common multiple of the directed periods, so that over
//!   `X' = X^ell` every directed state reproduces itself after one letter;
//! - `delta`: the difference automorphism of a transitive cycle `varsigma` on
//!   `X'`, whose conjugation straightens every spine onto the origin ray;
//! - `m'`: a block size making every off-spine image rooted, and the final
//!   alphabet `X'' = (X')^{m'} = X^N` with `N = ell * m'`;
//! - per-state images `q -> delta^{-1} q delta` verified to have the
//!   mother-group generator shape over `X''`, and per-generator wreath data
//!   (head permutation of `X^N` plus one image per level-`N` word).
//!
//! The head level is raised to `N` itself so a single alphabet serves both
//! wreath factors; `m'` is enlarged beyond the off-spine bound so that the
//! images of finitary states are rooted as well, which keeps every image
//! inside the mother group. Minimal values satisfying all constraints are
//! chosen.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alphabet::{Alphabet, Letter};
use crate::classify::{classify, directed_info, finitary_depth};
use crate::element::{Decomposition, Element};
use crate::error::EmbedError;
use crate::parse::{block_symbols, decimal_symbols, render_machines};
use crate::perm::Perm;

/// Upper bound on the size of the final alphabet `X^N`.
const MAX_FINAL_ALPHABET: usize = 1 << 16;

/// The difference automorphism of a transitive cycle: reading letters
/// `varsigma^{i_1}(o), varsigma^{i_2}(o), ..` it rewrites exponents to
/// successive differences `i_1, i_2 - i_1, ..`. It has exactly `|X|` states.
pub fn build_delta(alphabet: Alphabet, cycle: &Perm) -> Result<Element, EmbedError> {
    let d = alphabet.size();
    assert_eq!(cycle.degree(), d);
    if !cycle.is_transitive_cycle() {
        return Err(EmbedError::NotTransitive);
    }
    // discrete log base `cycle` from the origin
    let mut log = vec![0usize; d];
    let mut x = alphabet.origin();
    for i in 0..d {
        log[x] = i;
        x = cycle.apply(x);
    }
    // state i acts by cycle^{-i} at the root and jumps to state log(letter)
    let inverse = cycle.inverse();
    let mut outputs = Vec::with_capacity(d);
    let mut power = Perm::identity(d);
    for _ in 0..d {
        outputs.push(power.clone());
        power = power.then(&inverse);
    }
    let next: Vec<Vec<usize>> = (0..d).map(|_| log.clone()).collect();
    Ok(Element::from_machine(
        &crate::machine::MealyMachine::new(alphabet, outputs, next),
        0,
    ))
}

/// How one state of `Q` lands in the mother group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageKind {
    Trivial,
    /// Finitary source; the image is rooted over the final alphabet.
    Rooted { source_depth: usize },
    /// Directed source with spine letter `z` over `X'`; `beta` is the
    /// origin-directed mother-group form of the image over the final
    /// alphabet.
    Directed { spine_letter: Letter, beta: Element },
}

/// Image of one state of `Q` under conjugation by the difference element.
#[derive(Debug, Clone)]
pub struct ElementImage {
    pub source: Element,
    pub image: Element,
    pub kind: ImageKind,
}

/// One generator as an element of the wreath product: a permutation of the
/// level-`N` words and one mother-group element per word.
#[derive(Debug, Clone, PartialEq)]
pub struct WreathElem {
    pub head: Perm,
    pub coords: Vec<Element>,
}

impl WreathElem {
    pub fn identity(alphabet_final: Alphabet) -> Self {
        WreathElem {
            head: Perm::identity(alphabet_final.size()),
            coords: vec![Element::identity(alphabet_final); alphabet_final.size()],
        }
    }

    /// Wreath multiplication, matching element composition:
    /// `(f, pi)(g, rho) = (<f_y g_{pi(y)}>, pi rho)`.
    pub fn multiply(&self, other: &WreathElem) -> WreathElem {
        let coords = (0..self.coords.len())
            .map(|y| self.coords[y].compose(other.coords[self.head.apply(y)]))
            .collect();
        WreathElem { head: self.head.then(&other.head), coords }
    }

    pub fn inverse(&self) -> WreathElem {
        let inv = self.head.inverse();
        let coords =
            (0..self.coords.len()).map(|y| self.coords[inv.apply(y)].inverse()).collect();
        WreathElem { head: inv, coords }
    }

    /// The tree automorphism over the final alphabet that this pair encodes.
    pub fn to_element(&self) -> Element {
        Element::recompose(&Decomposition { root: self.head.clone(), sections: self.coords.clone() })
    }
}

/// Everything computed by [`embed_bounded_subgroup`].
#[derive(Debug, Clone)]
pub struct EmbeddingPlan {
    pub alphabet: Alphabet,
    pub generators: Vec<(String, Element)>,
    /// closure of the generators under sections
    pub q_states: Vec<Element>,
    /// head level strictly above every depth in `Q`
    pub m_head: usize,
    /// lcm of the directed periods in `Q`
    pub ell: usize,
    pub m_prime: usize,
    /// `N = ell * m_prime`; the embedding target acts on `X^N`
    pub n_levels: usize,
    pub alphabet_prime: Alphabet,
    pub alphabet_final: Alphabet,
    /// the transitive cycle on `X'` (successor in lexicographic order)
    pub cycle: Perm,
    /// difference automorphism over `X'`
    pub delta: Element,
    /// `delta` read over the final alphabet
    pub delta_final: Element,
    /// diagonal conjugator `<delta_final, .., delta_final>` over `X''`
    pub conjugator: Element,
    /// image of every level-`N` state of `Q`
    pub images: BTreeMap<Element, ElementImage>,
    /// per-generator wreath data
    pub wreath_images: Vec<WreathElem>,
}

fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All states at exactly `level` below the designated state, as elements.
fn level_states(g: &Element, level: usize) -> Vec<Element> {
    let machine = g.machine();
    let n = machine.state_count();
    let d = machine.alphabet().size();
    let mut current = vec![false; n];
    current[0] = true;
    for _ in 0..level {
        let mut nxt = vec![false; n];
        for q in 0..n {
            if current[q] {
                for x in 0..d {
                    nxt[machine.next(q, x)] = true;
                }
            }
        }
        current = nxt;
    }
    (0..n)
        .filter(|&q| current[q])
        .map(|q| if q == 0 { *g } else { Element::from_machine(&machine, q) })
        .collect()
}

/// Is the element rooted, i.e. trivial below the first level?
fn is_rooted(g: &Element) -> bool {
    g.decompose().sections.iter().all(|s| s.is_trivial())
}

/// Run the embedding pipeline on named generators. All generators must
/// classify finitary or bounded.
pub fn embed_bounded_subgroup(
    generators: &[(String, Element)],
) -> Result<EmbeddingPlan, EmbedError> {
    if generators.is_empty() {
        return Err(EmbedError::NoGenerators);
    }
    let alphabet = generators[0].1.alphabet();
    for (name, g) in generators {
        assert_eq!(g.alphabet(), alphabet, "generator {name}: alphabet mismatch");
        let class = classify(g);
        if !class.is_bounded_or_finitary() {
            return Err(EmbedError::UnboundedGenerator {
                name: name.clone(),
                class: class.to_string(),
            });
        }
    }

    // Q: closure under sections, including the identity
    let mut q_states: Vec<Element> = vec![Element::identity(alphabet)];
    for (_, g) in generators {
        for s in g.states() {
            if !q_states.contains(&s) {
                q_states.push(s);
            }
        }
    }

    // depths and directed periods over Q
    let mut max_depth = 0usize;
    let mut max_finitary_depth = 0usize;
    let mut ell = 1usize;
    let mut directed_data: BTreeMap<Element, (usize, Vec<Letter>)> = BTreeMap::new();
    for q in &q_states {
        match finitary_depth(q) {
            Some(depth) => {
                max_depth = max_depth.max(depth);
                max_finitary_depth = max_finitary_depth.max(depth);
            }
            None => {
                let class = classify(q);
                let crate::classify::ActivityClass::Bounded { depth } = class else {
                    return Err(EmbedError::Verification(format!(
                        "state of a bounded generator classified {class}"
                    )));
                };
                max_depth = max_depth.max(depth);
                if let Some(info) = directed_info(q) {
                    ell = lcm(ell, info.period);
                    directed_data.insert(*q, (info.period, info.spine));
                }
            }
        }
    }
    let m_head = max_depth + 1;

    let alphabet_prime = alphabet.power(ell);
    let o_prime = alphabet_prime.origin();
    let cap = alphabet_prime.size();
    let cycle = Perm::rotation(cap, 1);
    let delta = build_delta(alphabet_prime, &cycle)?;
    // varsigma_x = cycle^{log x} realized as rooted elements over X'
    let shift_of = |x: Letter| -> usize { (x + cap - o_prime) % cap };
    let varsigma = |shift: usize| -> Element {
        Element::rooted(alphabet_prime, &Perm::rotation(cap, shift % cap))
    };

    // beta(q) over X' for every directed state; collect off-spine depths
    let mut beta_prime: BTreeMap<Element, (Letter, Element)> = BTreeMap::new();
    let mut m_prime_off_spine = 0usize;
    for (q, (period, spine)) in &directed_data {
        debug_assert_eq!(ell % period, 0);
        let mut spine_block: Vec<Letter> = Vec::with_capacity(ell);
        while spine_block.len() < ell {
            spine_block.extend_from_slice(spine);
        }
        debug_assert_eq!(spine_block.len(), ell);
        let z = alphabet.encode_block(&spine_block);
        let q_prime = q.block_power(ell);
        let dec = q_prime.decompose();
        if dec.sections[z] != q_prime {
            return Err(EmbedError::Verification(
                "directed state does not reproduce at its spine block".into(),
            ));
        }
        let sigma_z = dec.root.apply(z);
        let q_delta = q_prime.conjugate(delta);
        let beta = varsigma(shift_of(z))
            .compose(q_delta)
            .compose(varsigma(shift_of(sigma_z)).inverse());
        // origin-directed shape over X': root fixes o', section at o' repeats
        let bdec = beta.decompose();
        if bdec.root.apply(o_prime) != o_prime || bdec.sections[o_prime] != beta {
            return Err(EmbedError::Verification(
                "beta is not origin-directed over the power alphabet".into(),
            ));
        }
        for (x, s) in bdec.sections.iter().enumerate() {
            if x == o_prime {
                continue;
            }
            let Some(depth) = finitary_depth(s) else {
                return Err(EmbedError::Verification(
                    "off-spine section of beta is not finitary".into(),
                ));
            };
            m_prime_off_spine = m_prime_off_spine.max(depth);
        }
        beta_prime.insert(*q, (z, beta));
    }

    // block size: off-spine images rooted, finitary images rooted, and the
    // head level N = ell * m' at least m
    let m_prime = [
        1,
        m_prime_off_spine,
        max_finitary_depth.div_ceil(ell) + 1,
        m_head.div_ceil(ell),
    ]
    .into_iter()
    .max()
    .unwrap();
    let n_levels = ell * m_prime;
    if alphabet
        .size()
        .checked_pow(n_levels as u32)
        .is_none_or(|s| s > MAX_FINAL_ALPHABET)
    {
        return Err(EmbedError::Verification(format!(
            "final alphabet {}^{n_levels} too large",
            alphabet.size()
        )));
    }
    let alphabet_final = alphabet.power(n_levels);
    let o_final = alphabet_final.origin();
    let delta_final = delta.block_power(m_prime);
    let conjugator = Element::recompose(&Decomposition {
        root: Perm::identity(alphabet_final.size()),
        sections: vec![delta_final; alphabet_final.size()],
    });

    // images of all level-N states of Q
    let mut images: BTreeMap<Element, ElementImage> = BTreeMap::new();
    for q in &q_states {
        for r in level_states(q, n_levels) {
            if images.contains_key(&r) {
                continue;
            }
            let image = r.block_power(n_levels).conjugate(delta_final);
            let kind = if r.is_trivial() {
                if !image.is_trivial() {
                    return Err(EmbedError::Verification(
                        "identity image is not the identity".into(),
                    ));
                }
                ImageKind::Trivial
            } else if let Some(source_depth) = finitary_depth(&r) {
                if !is_rooted(&image) {
                    return Err(EmbedError::Verification(format!(
                        "image of a finitary state (depth {source_depth}) is not rooted"
                    )));
                }
                ImageKind::Rooted { source_depth }
            } else {
                let Some((z, beta)) = beta_prime.get(&r) else {
                    return Err(EmbedError::Verification(
                        "non-finitary level state is not directed".into(),
                    ));
                };
                let beta_final = beta.block_power(m_prime);
                // mother-group generator shape over the final alphabet
                let dec = beta_final.decompose();
                if dec.root.apply(o_final) != o_final {
                    return Err(EmbedError::Verification(
                        "beta head does not fix the final origin".into(),
                    ));
                }
                if dec.sections[o_final] != beta_final {
                    return Err(EmbedError::Verification(
                        "beta does not reproduce at the final origin".into(),
                    ));
                }
                for (x, s) in dec.sections.iter().enumerate() {
                    if x != o_final && !is_rooted(s) {
                        return Err(EmbedError::Verification(
                            "off-origin section of beta is not rooted".into(),
                        ));
                    }
                }
                // cross-check the two routes to the image
                let via_beta = varsigma(shift_of(*z))
                    .block_power(m_prime)
                    .inverse()
                    .compose(beta_final)
                    .compose(
                        varsigma(shift_of(
                            r.block_power(ell).root_perm().apply(*z),
                        ))
                        .block_power(m_prime),
                    );
                if via_beta != image {
                    return Err(EmbedError::Verification(
                        "beta route and conjugation route disagree".into(),
                    ));
                }
                ImageKind::Directed { spine_letter: *z, beta: beta_final }
            };
            images.insert(r, ElementImage { source: r, image, kind });
        }
    }

    // per-generator wreath data
    let mut wreath_images = Vec::with_capacity(generators.len());
    for (name, g) in generators {
        let powered = g.block_power(n_levels);
        let head = powered.root_perm();
        let dec = powered.decompose();
        let coords: Vec<Element> = dec
            .sections
            .iter()
            .enumerate()
            .map(|(y, _)| {
                let source = g.state_at(&alphabet.decode_block(y, n_levels));
                images
                    .get(&source)
                    .unwrap_or_else(|| panic!("{name}: level state missing from image table"))
                    .image
            })
            .collect();
        wreath_images.push(WreathElem { head, coords });
    }

    Ok(EmbeddingPlan {
        alphabet,
        generators: generators.to_vec(),
        q_states,
        m_head,
        ell,
        m_prime,
        n_levels,
        alphabet_prime,
        alphabet_final,
        cycle,
        delta,
        delta_final,
        conjugator,
        images,
        wreath_images,
    })
}

/// Serializable summary of a plan, with machines rendered in the definition
/// file format over block symbols.
#[derive(Debug, Serialize)]
pub struct PlanReport {
    pub d: usize,
    pub origin: usize,
    pub m_head: usize,
    pub ell: usize,
    pub m_prime: usize,
    pub n_levels: usize,
    pub final_alphabet_size: usize,
    pub delta: String,
    pub images: Vec<ImageReport>,
    pub generators: Vec<GeneratorReport>,
}

#[derive(Debug, Serialize)]
pub struct ImageReport {
    pub name: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spine_letter: Option<usize>,
    pub machine: String,
}

#[derive(Debug, Serialize)]
pub struct GeneratorReport {
    pub name: String,
    pub head: Vec<usize>,
    pub coords: Vec<usize>,
}

impl EmbeddingPlan {
    pub fn report(&self) -> PlanReport {
        let base = decimal_symbols(self.alphabet.size());
        let prime_symbols = block_symbols(&base, self.alphabet, self.ell);
        let final_symbols = block_symbols(&base, self.alphabet, self.n_levels);

        let image_list: Vec<&ElementImage> = self.images.values().collect();
        let index_of = |e: &Element| image_list.iter().position(|im| im.image == *e).unwrap();

        let images = image_list
            .iter()
            .enumerate()
            .map(|(i, im)| {
                let name = format!("g{i}");
                let (kind, spine_letter) = match &im.kind {
                    ImageKind::Trivial => ("trivial".to_string(), None),
                    ImageKind::Rooted { source_depth } => {
                        (format!("rooted(source depth {source_depth})"), None)
                    }
                    ImageKind::Directed { spine_letter, .. } => {
                        ("directed".to_string(), Some(*spine_letter))
                    }
                };
                let machine = if im.image.is_trivial() {
                    "1".to_string()
                } else {
                    render_machines(&final_symbols, &[(name.clone(), im.image)])
                };
                ImageReport { name, kind, spine_letter, machine }
            })
            .collect();

        let generators = self
            .generators
            .iter()
            .zip(&self.wreath_images)
            .map(|((name, _), w)| GeneratorReport {
                name: name.clone(),
                head: w.head.images().to_vec(),
                coords: w.coords.iter().map(index_of).collect(),
            })
            .collect();

        PlanReport {
            d: self.alphabet.size(),
            origin: self.alphabet.origin(),
            m_head: self.m_head,
            ell: self.ell,
            m_prime: self.m_prime,
            n_levels: self.n_levels,
            final_alphabet_size: self.alphabet_final.size(),
            delta: render_machines(&prime_symbols, &[("delta".to_string(), self.delta)]),
            images,
            generators,
        }
    }
}

/// Verification sweep over generator words.
#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub word_length: usize,
    pub depth: usize,
    pub words_checked: usize,
    pub distinct_elements: usize,
    pub distinct_images: usize,
    pub agreement_failures: Vec<String>,
    pub injectivity_failures: Vec<String>,
    pub action_sweeps: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.agreement_failures.is_empty() && self.injectivity_failures.is_empty()
    }
}

/// Check, for every word in the generators and their inverses up to
/// `word_length`, that the wreath-arithmetic image equals the conjugated
/// original (exactly, and by action on the level-`depth` tree for a sample of
/// words), and that distinct elements get distinct images.
pub fn verify_embedding(
    plan: &EmbeddingPlan,
    word_length: usize,
    depth: usize,
) -> VerificationReport {
    let alphabet = plan.alphabet;
    let n = plan.n_levels;
    let mut letters: Vec<(String, Element, WreathElem)> = Vec::new();
    for ((name, g), w) in plan.generators.iter().zip(&plan.wreath_images) {
        letters.push((name.clone(), *g, w.clone()));
        letters.push((format!("{name}^-1"), g.inverse(), w.inverse()));
    }

    let mut agreement_failures = Vec::new();
    let mut injectivity_failures = Vec::new();
    let mut image_of: BTreeMap<Element, (Element, String)> = BTreeMap::new();
    let mut words_checked = 0usize;
    let mut action_sweeps = 0usize;
    // explicit sweeps enumerate (X'')^depth; cap the enumeration size
    let mut sweep_depth = 0usize;
    while sweep_depth < depth
        && plan.alphabet_final.size().pow(sweep_depth as u32 + 1) <= 100_000
    {
        sweep_depth += 1;
    }

    // breadth-first over words, extending element and wreath image together
    let identity = Element::identity(alphabet);
    let mut frontier = vec![(String::new(), identity, WreathElem::identity(plan.alphabet_final))];
    for level in 0..=word_length {
        for (word, element, wreath) in &frontier {
            words_checked += 1;
            let direct = element.block_power(n).conjugate(plan.conjugator);
            let via_wreath = wreath.to_element();
            if direct != via_wreath {
                agreement_failures.push(format!("word `{word}`"));
            }
            // explicit action sweep on a sample of words
            if words_checked % 37 == 1 {
                action_sweeps += 1;
                for w in plan.alphabet_final.words_of_length(sweep_depth) {
                    if direct.act(&w) != via_wreath.act(&w) {
                        agreement_failures.push(format!("word `{word}` acts differently"));
                        break;
                    }
                }
            }
            match image_of.get(element) {
                None => {
                    // injectivity: a new element must get a fresh image
                    if image_of.values().any(|(img, _)| *img == via_wreath) {
                        injectivity_failures.push(format!("word `{word}` collides"));
                    }
                    image_of.insert(*element, (via_wreath, word.clone()));
                }
                Some((img, _)) => {
                    if *img != via_wreath {
                        agreement_failures.push(format!(
                            "word `{word}`: image differs from earlier route to the same element"
                        ));
                    }
                }
            }
        }
        if level == word_length {
            break;
        }
        let mut next = Vec::new();
        for (word, element, wreath) in &frontier {
            for (name, g, w) in &letters {
                let mut extended = word.clone();
                if !extended.is_empty() {
                    extended.push(' ');
                }
                extended.push_str(name);
                next.push((extended, element.compose(*g), wreath.multiply(w)));
            }
        }
        frontier = next;
    }

    let distinct_elements = image_of.len();
    let mut images: Vec<&Element> = Vec::new();
    for (img, _) in image_of.values() {
        if !images.contains(&img) {
            images.push(img);
        }
    }
    VerificationReport {
        word_length,
        depth,
        words_checked,
        distinct_elements,
        distinct_images: images.len(),
        agreement_failures,
        injectivity_failures,
        action_sweeps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::flatten_blocks;
    use crate::testutil::{basilica, gupta_sidki};

    #[test]
    fn delta_rewrites_to_differences() {
        let alphabet = Alphabet::new(2);
        let cycle = Perm::rotation(2, 1);
        let delta = build_delta(alphabet, &cycle).unwrap();
        assert_eq!(delta.state_count(), 2);
        // fixes the origin ray
        assert_eq!(delta.act(&[0, 0, 0, 0]), vec![0, 0, 0, 0]);
        // i_1 = 1, i_2 = 1 -> differences 1, 0
        assert_eq!(delta.act(&[1, 1]), vec![1, 0]);
        // the displayed rule on a longer word: exponents 1,0,1 -> 1,-1,1 = 1,1,1
        assert_eq!(delta.act(&[1, 0, 1]), vec![1, 1, 1]);
    }

    #[test]
    fn delta_is_an_automorphism() {
        let alphabet = Alphabet::new(4);
        let delta = build_delta(alphabet, &Perm::rotation(4, 1)).unwrap();
        assert_eq!(delta.state_count(), 4);
        for len in 1..=3 {
            let mut seen = std::collections::HashSet::new();
            for w in alphabet.words_of_length(len) {
                assert!(seen.insert(delta.act(&w)), "delta is injective on level {len}");
            }
        }
        assert!(delta.compose(delta.inverse()).is_trivial());
    }

    #[test]
    fn delta_rejects_non_transitive_cycles() {
        let alphabet = Alphabet::new(4);
        assert!(matches!(
            build_delta(alphabet, &Perm::transposition(4, 0, 1)),
            Err(EmbedError::NotTransitive)
        ));
    }

    #[test]
    fn conjugation_section_formula() {
        // sections of g^delta are varsigma_x (g'_x)^delta varsigma_{sigma(x)}^{-1}
        let (a, _) = basilica();
        let alphabet_prime = Alphabet::new(2).power(2);
        let cap = alphabet_prime.size();
        let cycle = Perm::rotation(cap, 1);
        let delta = build_delta(alphabet_prime, &cycle).unwrap();
        let g = a.block_power(2);
        let conj = g.conjugate(delta);
        let dec = g.decompose();
        let conj_dec = conj.decompose();
        assert_eq!(conj_dec.root, dec.root);
        for x in 0..cap {
            let vs_x = Element::rooted(alphabet_prime, &Perm::rotation(cap, x));
            let vs_sx =
                Element::rooted(alphabet_prime, &Perm::rotation(cap, dec.root.apply(x)));
            let expected =
                vs_x.compose(dec.sections[x].conjugate(delta)).compose(vs_sx.inverse());
            assert_eq!(conj_dec.sections[x], expected, "section {x}");
        }
    }

    #[test]
    fn delta_conjugation_is_a_homomorphism() {
        let (a, names) = basilica();
        let b = names["b"];
        let alphabet_prime = Alphabet::new(2).power(2);
        let delta = build_delta(alphabet_prime, &Perm::rotation(4, 1)).unwrap();
        let pairs = [(a, b), (b, a.inverse()), (a.compose(b), b)];
        for (g, h) in pairs {
            let (g, h) = (g.block_power(2), h.block_power(2));
            assert_eq!(
                g.compose(h).conjugate(delta),
                g.conjugate(delta).compose(h.conjugate(delta))
            );
            assert_eq!(g.inverse().conjugate(delta), g.conjugate(delta).inverse());
        }
    }

    #[test]
    fn conjugation_preserves_class() {
        use crate::classify::{classify, ActivityClass};
        let (a, names) = basilica();
        let b = names["b"];
        let alphabet = Alphabet::new(2);
        let rooted = Element::rooted(alphabet, &Perm::rotation(2, 1));
        for g in [a, b, a.compose(b)] {
            let before = classify(&g);
            let after = classify(&g.conjugate(rooted));
            match (&before, &after) {
                (ActivityClass::Bounded { .. }, ActivityClass::Bounded { .. }) => {}
                (x, y) => assert_eq!(x, y),
            }
        }
        assert_eq!(a.conjugate(Element::identity(alphabet)), a);
    }

    #[test]
    fn basilica_embedding_verifies() {
        let (a, names) = basilica();
        let b = names["b"];
        let plan = embed_bounded_subgroup(&[("a".into(), a), ("b".into(), b)]).unwrap();
        assert_eq!(plan.ell, 2, "directed periods of a and b are both 2");
        assert_eq!(plan.n_levels, plan.ell * plan.m_prime);
        let report = verify_embedding(&plan, 4, 3);
        assert!(report.passed(), "failures: {:?}", report.agreement_failures);
        assert_eq!(report.distinct_elements, report.distinct_images);
    }

    #[test]
    fn gupta_sidki_embedding_verifies() {
        let (a, b) = gupta_sidki();
        let plan = embed_bounded_subgroup(&[("a".into(), a), ("b".into(), b)]).unwrap();
        assert_eq!(plan.ell, 1, "b has period 1");
        let report = verify_embedding(&plan, 3, 2);
        assert!(report.passed(), "failures: {:?}", report.agreement_failures);
        assert_eq!(report.distinct_elements, report.distinct_images);
    }

    #[test]
    fn finitary_only_generators_use_the_degenerate_branch() {
        let alphabet = Alphabet::new(2);
        let swap = Element::rooted(alphabet, &Perm::rotation(2, 1));
        let plan = embed_bounded_subgroup(&[("s".into(), swap)]).unwrap();
        assert_eq!(plan.ell, 1);
        assert!(plan
            .images
            .values()
            .all(|im| matches!(im.kind, ImageKind::Trivial)));
        let report = verify_embedding(&plan, 4, 2);
        assert!(report.passed());
    }

    #[test]
    fn embedding_respects_a_nonzero_origin() {
        let alphabet = Alphabet::with_origin(2, 1);
        let gens = crate::mother::mother_generators(alphabet).unwrap();
        let named: Vec<(String, Element)> = gens
            .named()
            .into_iter()
            .filter(|(_, g)| !g.is_trivial())
            .collect();
        let plan = embed_bounded_subgroup(&named).unwrap();
        assert_eq!(plan.alphabet_final.origin(), plan.alphabet_final.size() - 1,
            "origin block 1^N encodes to the last letter");
        let report = verify_embedding(&plan, 4, 2);
        assert!(report.passed(), "{:?}", report.agreement_failures);
    }

    #[test]
    fn exponential_generator_is_rejected() {
        let e = crate::testutil::exponential_machine();
        let err = embed_bounded_subgroup(&[("e".into(), e)]).unwrap_err();
        match err {
            EmbedError::UnboundedGenerator { name, class } => {
                assert_eq!(name, "e");
                assert!(class.contains("exponential"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn corrupted_image_fails_verification() {
        let (a, names) = basilica();
        let b = names["b"];
        let mut plan = embed_bounded_subgroup(&[("a".into(), a), ("b".into(), b)]).unwrap();
        // swap one coordinate for a wrong image
        let wrong = plan.wreath_images[0].coords[0].inverse().compose(
            Element::rooted(plan.alphabet_final, &Perm::rotation(plan.alphabet_final.size(), 1)),
        );
        plan.wreath_images[0].coords[0] = wrong;
        let report = verify_embedding(&plan, 2, 2);
        assert!(!report.passed());
        assert!(!report.agreement_failures.is_empty());
    }

    #[test]
    fn block_power_composes(){
        let (_, names) = basilica();
        let b = names["b"];
        // power by ell then m' equals power by N, including block encodings
        let via_two = b.block_power(2).block_power(2);
        let direct = b.block_power(4);
        assert_eq!(via_two, direct);
        let alphabet = Alphabet::new(2);
        let blocked = alphabet.power(4);
        for w in blocked.words_of_length(1) {
            assert_eq!(
                flatten_blocks(alphabet, &direct.act(&w), 4),
                b.act(&flatten_blocks(alphabet, &w, 4))
            );
        }
    }
}
