//! Finitely supported measures on the group, with exact rational weights.
//!
//! Weights stay rational through convolution and convex combination, so
//! identities like idempotence of subgroup-uniform measures and convex
//! decompositions of convolution powers hold exactly, with no tolerance.
//! Only entropy crosses into floating point, in natural log.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alphabet::Alphabet;
use crate::element::Element;
use crate::error::WalkError;

/// A finitely supported measure with positive rational weights. Probability
/// measures have mass exactly 1; subprobability measures appear as the
/// entries of the measure matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    alphabet: Alphabet,
    weights: BTreeMap<Element, BigRational>,
}

impl Measure {
    /// The zero measure (used for matrix entries).
    pub fn zero(alphabet: Alphabet) -> Measure {
        Measure { alphabet, weights: BTreeMap::new() }
    }

    /// Unit point mass.
    pub fn dirac(g: Element) -> Measure {
        let mut weights = BTreeMap::new();
        weights.insert(g, BigRational::one());
        Measure { alphabet: g.alphabet(), weights }
    }

    /// Uniform probability measure on a set of elements (deduplicated by
    /// canonical handle).
    pub fn uniform_on(elements: &[Element]) -> Result<Measure, WalkError> {
        let Some(first) = elements.first() else {
            return Err(WalkError::EmptySupport);
        };
        let alphabet = first.alphabet();
        let mut distinct: Vec<Element> = Vec::new();
        for &g in elements {
            assert_eq!(g.alphabet(), alphabet, "alphabet mismatch in support");
            if !distinct.contains(&g) {
                distinct.push(g);
            }
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(distinct.len()));
        Ok(Measure {
            alphabet,
            weights: distinct.into_iter().map(|g| (g, w.clone())).collect(),
        })
    }

    /// Build from explicit weights; weights must be positive.
    pub fn from_weights(
        alphabet: Alphabet,
        weights: impl IntoIterator<Item = (Element, BigRational)>,
    ) -> Measure {
        let mut map: BTreeMap<Element, BigRational> = BTreeMap::new();
        for (g, w) in weights {
            assert!(w.is_positive(), "weights must be positive");
            assert_eq!(g.alphabet(), alphabet, "alphabet mismatch in support");
            *map.entry(g).or_insert_with(BigRational::zero) += w;
        }
        Measure { alphabet, weights: map }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &BigRational)> {
        self.weights.iter()
    }

    pub fn weight(&self, g: &Element) -> BigRational {
        self.weights.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mass(&self) -> BigRational {
        self.weights.values().sum()
    }

    pub fn is_probability(&self) -> bool {
        self.mass().is_one()
    }

    /// Exactly symmetric: `m(g) = m(g^{-1})` for all atoms.
    pub fn is_symmetric(&self) -> bool {
        self.reflect() == *self
    }

    /// Add mass to an atom in place.
    pub(crate) fn add_weight(&mut self, g: Element, w: &BigRational) {
        assert!(w.is_positive());
        *self.weights.entry(g).or_insert_with(BigRational::zero) += w;
    }

    /// Convolution: the distribution of a product of independent picks,
    /// `(m1 m2)(g) = sum_h m1(h) m2(h^{-1} g)`. Exact; single-threaded with
    /// deterministic merge order.
    pub fn convolve(&self, other: &Measure) -> Measure {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch in convolution");
        let mut out = Measure::zero(self.alphabet);
        for (g, wg) in &self.weights {
            for (h, wh) in &other.weights {
                out.add_weight(g.compose(*h), &(wg * wh));
            }
        }
        out
    }

    /// `n`-fold convolution power of a probability measure; `n = 0` is the
    /// point mass at the identity.
    pub fn power(&self, n: usize) -> Measure {
        let mut acc = Measure::dirac(Element::identity(self.alphabet));
        for _ in 0..n {
            acc = acc.convolve(self);
        }
        acc
    }

    /// Weights transported to inverses.
    pub fn reflect(&self) -> Measure {
        Measure {
            alphabet: self.alphabet,
            weights: self.weights.iter().map(|(g, w)| (g.inverse(), w.clone())).collect(),
        }
    }

    /// Convex (or conic) combination with exact coefficients.
    pub fn mix(parts: &[(BigRational, &Measure)]) -> Measure {
        assert!(!parts.is_empty());
        let alphabet = parts[0].1.alphabet;
        let mut out = Measure::zero(alphabet);
        for (c, m) in parts {
            assert_eq!(m.alphabet, alphabet);
            if c.is_zero() {
                continue;
            }
            assert!(c.is_positive());
            for (g, w) in &m.weights {
                out.add_weight(*g, &(c * w));
            }
        }
        out
    }

    /// Entropy in nats. Summation runs over weights in sorted order, so the
    /// value does not depend on handle numbering.
    pub fn entropy(&self) -> f64 {
        assert!(self.is_probability(), "entropy is defined for probability measures");
        let mut ws: Vec<&BigRational> = self.weights.values().collect();
        ws.sort();
        ws.iter().map(|w| {
            let p = ratio_to_f64(w);
            if p <= 0.0 {
                0.0
            } else {
                -p * ratio_ln(w)
            }
        })
        .sum()
    }

    /// Collision probability `sum_g m(g)^2`, exactly. For a symmetric
    /// probability measure this is the return probability of the doubled
    /// walk.
    pub fn collision_norm(&self) -> BigRational {
        self.weights.values().map(|w| w * w).sum()
    }

    /// Total variation distance `(1/2) sum |m1 - m2|`, exactly.
    pub fn total_variation(&self, other: &Measure) -> BigRational {
        let mut acc = BigRational::zero();
        for (g, w) in &self.weights {
            acc += (w - other.weight(g)).abs();
        }
        for (g, w) in &other.weights {
            if !self.weights.contains_key(g) {
                acc += w.abs();
            }
        }
        acc / BigRational::from(BigInt::from(2))
    }
}

/// `ln` of a positive rational, stable for arbitrarily large numerators and
/// denominators.
pub fn ratio_ln(r: &BigRational) -> f64 {
    assert!(r.is_positive());
    big_ln(&r.numer().magnitude().clone()) - big_ln(&r.denom().magnitude().clone())
}

/// Convert to `f64`, surviving numerators or denominators beyond `f64`
/// range (underflows to 0 rather than NaN).
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ratio_ln(&r.abs()).exp()
}

fn big_ln(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().expect("small BigUint fits f64").ln();
    }
    let shift = bits - 53;
    let top: BigUint = n >> shift;
    (top.to_f64().unwrap()).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Entropy in nats of an explicit weight list (zeros skipped). Exact
/// rational weights in, floating point out.
pub fn entropy_of_weights(weights: &[BigRational]) -> f64 {
    let mut ws: Vec<&BigRational> = weights.iter().filter(|w| !w.is_zero()).collect();
    for w in &ws {
        assert!(w.is_positive(), "weights must be nonnegative");
    }
    ws.sort();
    ws.iter().map(|w| -ratio_to_f64(w) * ratio_ln(w)).sum()
}

/// Convenience: rational `p/q` from integers.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
