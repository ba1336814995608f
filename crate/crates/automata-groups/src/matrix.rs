//! Generalized permutation matrices: the matrix view of tree automorphisms.
//!
//! An element `g = <g_x> sigma` becomes the order-`d` matrix with `g_x` in
//! row `x`, column `sigma(x)`, and zeros elsewhere. Matrix multiplication
//! corresponds to composition, and replacing every entry by 1 (augmentation)
//! projects onto the permutation action on the first level.

use std::ops::Mul;

use crate::alphabet::{Alphabet, Letter};
use crate::element::{Decomposition, Element};
use crate::perm::Perm;

/// A `d x d` matrix with exactly one group entry per row and per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPermMatrix {
    alphabet: Alphabet,
    /// row `x` holds `(entry, column)`
    rows: Vec<(Element, Letter)>,
}

impl GenPermMatrix {
    /// The matrix `M^g` of an element.
    pub fn of(g: &Element) -> GenPermMatrix {
        let dec = g.decompose();
        let rows = dec
            .sections
            .iter()
            .enumerate()
            .map(|(x, &s)| (s, dec.root.apply(x)))
            .collect();
        GenPermMatrix { alphabet: g.alphabet(), rows }
    }

    pub fn identity(alphabet: Alphabet) -> GenPermMatrix {
        let one = Element::identity(alphabet);
        GenPermMatrix {
            alphabet,
            rows: (0..alphabet.size()).map(|x| (one, x)).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Entry at `(x, y)`, if nonzero.
    pub fn entry(&self, x: Letter, y: Letter) -> Option<Element> {
        let (g, col) = self.rows[x];
        (col == y).then_some(g)
    }

    pub fn rows(&self) -> &[(Element, Letter)] {
        &self.rows
    }

    /// Replace every nonzero entry by 1: the underlying permutation matrix.
    pub fn augmentation(&self) -> Perm {
        Perm::from_images(self.rows.iter().map(|&(_, col)| col).collect())
            .expect("columns of a generalized permutation matrix form a permutation")
    }

    /// The element this matrix encodes (inverse of [`GenPermMatrix::of`]).
    pub fn into_element(&self) -> Element {
        Element::recompose(&Decomposition {
            root: self.augmentation(),
            sections: self.rows.iter().map(|&(g, _)| g).collect(),
        })
    }

    /// Entry-wise group-ring product restricted to generalized permutation
    /// matrices: row `x` of the product is `(g_x * h_{col(x)}, col_h(col(x)))`.
    pub fn product(&self, other: &GenPermMatrix) -> GenPermMatrix {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let rows = self
            .rows
            .iter()
            .map(|&(g, col)| {
                let (h, col2) = other.rows[col];
                (g.compose(h), col2)
            })
            .collect();
        GenPermMatrix { alphabet: self.alphabet, rows }
    }
}

impl Mul for &GenPermMatrix {
    type Output = GenPermMatrix;

    fn mul(self, rhs: &GenPermMatrix) -> GenPermMatrix {
        self.product(rhs)
    }
}
