//! Random walks driven by the mother-group measures.
//!
//! The step measure is the convolution of the uniform measures on the two
//! generating subgroups; its measure matrix has identical rows, so the random
//! walk with internal degrees of freedom projects to an ordinary walk driven
//! by the symmetric convex combination of the subgroup measures, while the
//! letter coordinate is an independent uniform sequence.
//!
//! All samplers are counter-based: a trajectory depends only on `(seed,
//! stream)`, never on thread count or batching, and Monte Carlo reductions
//! sum integers, so identical configurations reproduce identical output bytes
//! under any parallelism.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::{Alphabet, Letter};
use crate::element::Element;
use crate::error::WalkError;
use crate::measure::Measure;
use crate::mother::MotherGenerators;

/// The step measure: uniform on `A` convolved with uniform on `B`.
pub fn mu_step(gens: &MotherGenerators) -> Measure {
    let mu_a = Measure::uniform_on(&gens.a_group()).unwrap();
    let mu_b = Measure::uniform_on(&gens.b_group()).unwrap();
    mu_a.convolve(&mu_b)
}

/// The projected measure `(d-1)/d * uniform(A) + 1/d * uniform(B)`;
/// symmetric because subgroup-uniform measures are.
pub fn mu_tilde(gens: &MotherGenerators) -> Measure {
    let d = gens.alphabet().size() as i64;
    let mu_a = Measure::uniform_on(&gens.a_group()).unwrap();
    let mu_b = Measure::uniform_on(&gens.b_group()).unwrap();
    Measure::mix(&[
        (BigRational::new(BigInt::from(d - 1), BigInt::from(d)), &mu_a),
        (BigRational::new(BigInt::one(), BigInt::from(d)), &mu_b),
    ])
}

/// Uniform measures on the two generating subgroups.
pub fn subgroup_measures(gens: &MotherGenerators) -> (Measure, Measure) {
    (
        Measure::uniform_on(&gens.a_group()).unwrap(),
        Measure::uniform_on(&gens.b_group()).unwrap(),
    )
}

/// The `d x d` matrix of subprobability measures attached to a probability
/// measure: row `x` sends mass `m(g)` to column `sigma_g(x)` with group part
/// `g_x`. Row masses each sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureMatrix {
    alphabet: Alphabet,
    entries: Vec<Vec<Measure>>,
}

impl MeasureMatrix {
    pub fn of(m: &Measure) -> MeasureMatrix {
        assert!(m.is_probability(), "the measure matrix needs a probability measure");
        let alphabet = m.alphabet();
        let d = alphabet.size();
        let mut entries =
            vec![vec![Measure::zero(alphabet); d]; d];
        for (g, w) in m.iter() {
            let dec = g.decompose();
            for x in 0..d {
                entries[x][dec.root.apply(x)].add_weight(dec.sections[x], w);
            }
        }
        let matrix = MeasureMatrix { alphabet, entries };
        debug_assert!(matrix.row_masses().iter().all(|m| m.is_one()));
        matrix
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn entry(&self, x: Letter, y: Letter) -> &Measure {
        &self.entries[x][y]
    }

    pub fn row_masses(&self) -> Vec<BigRational> {
        self.entries.iter().map(|row| row.iter().map(Measure::mass).sum()).collect()
    }
}

/// Exact sampler for a finitely supported distribution: draws an integer
/// below the common denominator and selects by cumulative numerator, so the
/// sampled law is the rational law exactly.
struct Sampler<T: Clone> {
    denominator: BigUint,
    small: Option<(u64, Vec<u64>)>,
    cumulative: Vec<BigUint>,
    atoms: Vec<T>,
}

impl<T: Clone> Sampler<T> {
    fn new(weighted: impl Iterator<Item = (T, BigRational)>) -> Sampler<T> {
        let items: Vec<(T, BigRational)> = weighted.collect();
        assert!(!items.is_empty(), "cannot sample from an empty distribution");
        let mut den = BigUint::one();
        for (_, w) in &items {
            assert!(w.is_positive());
            den = den.lcm(w.denom().magnitude());
        }
        let mut cumulative = Vec::with_capacity(items.len());
        let mut acc = BigUint::zero();
        let mut atoms = Vec::with_capacity(items.len());
        for (atom, w) in &items {
            let scaled = w.numer().magnitude() * (&den / w.denom().magnitude());
            acc += scaled;
            cumulative.push(acc.clone());
            atoms.push(atom.clone());
        }
        assert_eq!(acc, den, "sampler needs a probability distribution");
        let small = den.to_u64().map(|d| {
            (d, cumulative.iter().map(|c| c.to_u64().unwrap()).collect::<Vec<u64>>())
        });
        Sampler { denominator: den, small, cumulative, atoms }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> &T {
        match &self.small {
            Some((den, cum)) => {
                let ticket = rng.gen_range(0..*den);
                let idx = cum.partition_point(|c| *c <= ticket);
                &self.atoms[idx]
            }
            None => {
                let ticket = rng.gen_biguint_below(&self.denominator);
                let idx = self.cumulative.partition_point(|c| *c <= ticket);
                &self.atoms[idx]
            }
        }
    }
}

/// Run the chain on `group x letters` for `n` steps from `start`:
/// from `(g, x)` pick `(y, h)` with probability `M_{xy}(h)` and move to
/// `(g h, y)`. Deterministic for a fixed `(seed, stream)`.
pub fn rwidf_sample(
    matrix: &MeasureMatrix,
    start: (Element, Letter),
    n: usize,
    seed: u64,
    stream: u64,
) -> Vec<(Element, Letter)> {
    let d = matrix.alphabet().size();
    let samplers: Vec<Sampler<(Letter, Element)>> = (0..d)
        .map(|x| {
            Sampler::new((0..d).flat_map(|y| {
                matrix.entry(x, y).iter().map(move |(h, w)| ((y, *h), w.clone())).collect::<Vec<_>>()
            }))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut trajectory = Vec::with_capacity(n + 1);
    trajectory.push(start);
    let (mut g, mut x) = start;
    for _ in 0..n {
        let (y, h) = samplers[x].sample(&mut rng);
        g = g.compose(*h);
        x = *y;
        trajectory.push((g, x));
    }
    trajectory
}

/// Exact distribution of the chain at time `n`, by enumeration over all
/// transition atoms. Test-scale horizons only.
pub fn rwidf_exact_distribution(
    matrix: &MeasureMatrix,
    start: (Element, Letter),
    n: usize,
) -> Vec<((Element, Letter), BigRational)> {
    let d = matrix.alphabet().size();
    let mut current: HashMap<(Element, Letter), BigRational> = HashMap::new();
    current.insert(start, BigRational::one());
    for _ in 0..n {
        let mut next: HashMap<(Element, Letter), BigRational> = HashMap::new();
        for ((g, x), w) in &current {
            for y in 0..d {
                for (h, wm) in matrix.entry(*x, y).iter() {
                    *next
                        .entry((g.compose(*h), y))
                        .or_insert_with(BigRational::zero) += w * wm;
                }
            }
        }
        current = next;
    }
    let mut out: Vec<_> = current.into_iter().collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

/// Product of `n` independent increments drawn from `m`.
pub fn sample_walk(m: &Measure, n: usize, seed: u64, stream: u64) -> Element {
    let sampler = Sampler::new(m.iter().map(|(g, w)| (*g, w.clone())));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut g = Element::identity(m.alphabet());
    for _ in 0..n {
        g = g.compose(*sampler.sample(&mut rng));
    }
    g
}

/// Resource caps for exact convolution horizons.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_atoms: usize,
    pub max_seconds: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_atoms: 1_000_000, max_seconds: 60.0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub entropy: f64,
    pub support: usize,
    pub seconds: f64,
}

/// Exact entropy profile `H(m^n)` for `n = 1..` within the budget.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyProfile {
    pub rows: Vec<ProfileRow>,
    /// true: every row is an exact convolution (the only mode implemented)
    pub exact: bool,
    /// true when the budget stopped the profile before `nmax`
    pub truncated: bool,
}

impl EntropyProfile {
    /// The observed slope `H(m^n)/n` at the deepest computed horizon. This is
    /// a finite-horizon estimate of the entropy rate, not a certified limit.
    pub fn slope_estimate(&self) -> Option<f64> {
        self.rows.last().map(|r| r.entropy / r.n as f64)
    }
}

pub fn entropy_profile(m: &Measure, nmax: usize, budget: Budget) -> EntropyProfile {
    assert!(m.is_probability());
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut power = Measure::dirac(Element::identity(m.alphabet()));
    let mut truncated = false;
    for n in 1..=nmax {
        let step_started = Instant::now();
        let next = power.convolve(m);
        if next.support_size() > budget.max_atoms {
            truncated = true;
            break;
        }
        power = next;
        rows.push(ProfileRow {
            n,
            entropy: power.entropy(),
            support: power.support_size(),
            seconds: step_started.elapsed().as_secs_f64(),
        });
        if started.elapsed().as_secs_f64() > budget.max_seconds {
            truncated = n < nmax;
            break;
        }
    }
    EntropyProfile { rows, exact: true, truncated }
}

/// Monte Carlo estimate of the collision probability `sum_g m^n(g)^2 =
/// m^{2n}(e)` for a symmetric probability measure, by comparing pairs of
/// independent `n`-step walks. Unbiased; the standard error is binomial.
pub fn return_probability_mc(
    m: &Measure,
    n: usize,
    pairs: u64,
    seed: u64,
) -> Result<(f64, f64), WalkError> {
    if !m.is_probability() {
        return Err(WalkError::NotProbability { mass: m.mass().to_string() });
    }
    if !m.is_symmetric() {
        return Err(WalkError::Asymmetric);
    }
    if pairs == 0 {
        return Err(WalkError::NoSamples);
    }
    let atoms: Vec<(Element, BigRational)> = m.iter().map(|(g, w)| (*g, w.clone())).collect();
    let sampler = Sampler::new(atoms.iter().cloned());
    let identity = Element::identity(m.alphabet());

    let hits: u64 = (0..pairs)
        .into_par_iter()
        .map_init(
            HashMap::<(Element, Element), Element>::new,
            |cache, pair| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(pair);
                let mut walk = |rng: &mut ChaCha8Rng| {
                    let mut g = identity;
                    for _ in 0..n {
                        let h = *sampler.sample(rng);
                        g = *cache.entry((g, h)).or_insert_with(|| g.compose(h));
                    }
                    g
                };
                let g1 = walk(&mut rng);
                let g2 = walk(&mut rng);
                u64::from(g1 == g2)
            },
        )
        .sum();

    let p = hits as f64 / pairs as f64;
    let stderr = (p * (1.0 - p) / pairs as f64).sqrt();
    Ok((p, stderr))
}

/// Exact collision probability of `m^n` (small horizons).
pub fn return_probability_exact(m: &Measure, n: usize) -> BigRational {
    m.power(n).collision_norm()
}

/// The entropy exponent `log d / log(d^2 / (d-1))`, strictly below 1.
pub fn alpha_exponent(d: usize) -> f64 {
    assert!(d >= 2);
    let d = d as f64;
    d.ln() / (d * d / (d - 1.0)).ln()
}

/// The exponent for a subgroup embedded over `X^N`: the same formula with
/// `d^N` in place of `d`, computed in log space.
pub fn alpha_exponent_power(d: usize, n_levels: u32) -> f64 {
    assert!(d >= 2 && n_levels >= 1);
    let logd = (d as f64).ln();
    let n = n_levels as f64;
    // log(d^N) / log(d^{2N} / (d^N - 1))
    let dn = (d as f64).powi(n_levels as i32);
    n * logd / (2.0 * n * logd - (dn - 1.0).ln())
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub rho_bound: f64,
    pub iso_bound: f64,
}

/// Reference curves `exp(-n^{alpha+eps})` (lower bound shape for the return
/// profile) and `exp(n^{2 alpha/(1-alpha)+eps})` (upper bound shape for the
/// isoperimetric profile). Implicit constants are taken to be 1.
pub fn profile_bound_curves(d: usize, eps: f64, ns: &[usize]) -> Vec<BoundRow> {
    assert!(eps >= 0.0);
    let alpha = alpha_exponent(d);
    ns.iter()
        .map(|&n| {
            let nf = n as f64;
            BoundRow {
                n,
                rho_bound: (-nf.powf(alpha + eps)).exp(),
                iso_bound: nf.powf(2.0 * alpha / (1.0 - alpha) + eps).exp(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BallRow {
    pub radius: usize,
    pub ball: usize,
    pub boundary: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BallProfile {
    pub rows: Vec<BallRow>,
    pub truncated: bool,
}

/// Breadth-first balls in the Cayley graph of the given generators (inverses
/// included). The boundary of the radius-`r` ball is the sphere of radius
/// `r+1`; the emitted ratios are empirical data, not a certified
/// isoperimetric profile.
pub fn ball_isoperimetric(
    generators: &[Element],
    radius: usize,
    max_elements: usize,
) -> BallProfile {
    assert!(!generators.is_empty());
    let alphabet = generators[0].alphabet();
    let mut step_set: Vec<Element> = Vec::new();
    for &g in generators {
        assert_eq!(g.alphabet(), alphabet, "alphabet mismatch among generators");
        for h in [g, g.inverse()] {
            if !h.is_trivial() && !step_set.contains(&h) {
                step_set.push(h);
            }
        }
    }

    let mut seen: std::collections::BTreeSet<Element> = std::collections::BTreeSet::new();
    let identity = Element::identity(alphabet);
    seen.insert(identity);
    let mut sphere = vec![identity];
    let mut sphere_sizes = vec![1usize];
    let mut truncated = false;
    for _ in 0..=radius {
        let mut next = Vec::new();
        for &g in &sphere {
            for &s in &step_set {
                let h = g.compose(s);
                if seen.insert(h) {
                    next.push(h);
                }
            }
        }
        sphere_sizes.push(next.len());
        sphere = next;
        if seen.len() > max_elements {
            truncated = true;
            break;
        }
    }

    let mut rows = Vec::new();
    let mut ball = 0usize;
    for r in 0..sphere_sizes.len().saturating_sub(1) {
        if r > radius {
            break;
        }
        ball += sphere_sizes[r];
        let boundary = sphere_sizes[r + 1];
        rows.push(BallRow {
            radius: r,
            ball,
            boundary,
            ratio: boundary as f64 / ball as f64,
        });
    }
    BallProfile { rows, truncated }
}
