//! Permutations of the alphabet, stored as image tables.
//!
//! The composition convention throughout the crate is left-to-right:
//! `p.then(q)` maps `x` to `q(p(x))`. This is the unique convention under
//! which the wreath multiplication formula used by [`crate::element`] is the
//! action homomorphism.

use std::fmt;

/// A bijection of `{0, .., n-1}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// Build from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return None;
            }
            seen[y] = true;
        }
        Some(Perm { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Perm { images }
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0` shifted by `shift` steps.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Perm { images: (0..n).map(|x| (x + shift) % n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Left-to-right product: `(self.then(other))(x) = other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    /// Does this permutation consist of a single cycle through all points?
    pub fn is_transitive_cycle(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut x = 0;
        for _ in 0..n - 1 {
            x = self.apply(x);
            if x == 0 {
                return false;
            }
        }
        self.apply(x) == 0
    }

    /// All permutations of degree `n` in lexicographic order of image tables.
    pub fn enumerate(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { images: current.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|y| y.to_string()).collect();
        write!(f, "[{}]", strs.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn then_is_left_to_right() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        let q = Perm::from_images(vec![0, 2, 1]).unwrap();
        let pq = p.then(&q);
        for x in 0..3 {
            assert_eq!(pq.apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn inverse_cancels() {
        for p in Perm::enumerate(4) {
            assert!(p.then(&p.inverse()).is_identity());
            assert!(p.inverse().then(&p).is_identity());
        }
    }

    #[test]
    fn from_images_rejects_repeats() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![0, 2]).is_none());
    }

    #[test]
    fn enumerate_counts_factorial() {
        assert_eq!(Perm::enumerate(1).len(), 1);
        assert_eq!(Perm::enumerate(3).len(), 6);
        assert_eq!(Perm::enumerate(4).len(), 24);
    }

    #[test]
    fn rotation_is_transitive() {
        assert!(Perm::rotation(5, 1).is_transitive_cycle());
        assert!(!Perm::rotation(4, 2).is_transitive_cycle());
        assert!(!Perm::identity(3).is_transitive_cycle());
    }
}
