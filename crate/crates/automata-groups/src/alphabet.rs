//! Alphabets and words.
//!
//! Letters are plain indices `0..d`. An alphabet carries its size and a
//! distinguished letter `o` (the "origin", default 0) used by the mother-group
//! constructions. Words are letter sequences read root-to-leaf.

/// A letter of the alphabet, as an index.
pub type Letter = usize;

/// A word over the alphabet, as a sequence of letter indices.
pub type Word = Vec<Letter>;

/// A finite alphabet of size `d >= 2` with a distinguished letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    size: usize,
    origin: Letter,
}

impl Alphabet {
    /// Alphabet `{0, .., d-1}` with origin 0. Panics if `d < 2`.
    pub fn new(d: usize) -> Self {
        Self::with_origin(d, 0)
    }

    /// Alphabet with an explicit distinguished letter.
    pub fn with_origin(d: usize, origin: Letter) -> Self {
        assert!(d >= 2, "alphabet must have at least 2 letters");
        assert!(origin < d, "origin {origin} out of range for alphabet of size {d}");
        Alphabet { size: d, origin }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn origin(&self) -> Letter {
        self.origin
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.size
    }

    pub fn contains(&self, x: Letter) -> bool {
        x < self.size
    }

    /// The alphabet of `k`-letter blocks, `X^k`. The origin becomes the block
    /// `o^k`. Blocks are encoded big-endian so that numeric order on encoded
    /// letters equals lexicographic order on blocks.
    pub fn power(&self, k: usize) -> Alphabet {
        assert!(k >= 1, "block power must be at least 1");
        let size = self
            .size
            .checked_pow(k as u32)
            .filter(|&s| s <= MAX_ALPHABET)
            .unwrap_or_else(|| panic!("alphabet power {}^{k} too large", self.size));
        let origin = self.encode_block(&vec![self.origin; k]);
        Alphabet { size, origin }
    }

    /// Encode a block of `k` letters as a single letter of `X^k`.
    pub fn encode_block(&self, block: &[Letter]) -> Letter {
        let mut idx = 0usize;
        for &x in block {
            debug_assert!(x < self.size);
            idx = idx * self.size + x;
        }
        idx
    }

    /// Decode a letter of `X^k` back into its `k` base letters.
    pub fn decode_block(&self, mut letter: Letter, k: usize) -> Word {
        let mut block = vec![0; k];
        for slot in block.iter_mut().rev() {
            *slot = letter % self.size;
            letter /= self.size;
        }
        debug_assert_eq!(letter, 0);
        block
    }

    /// All words of length `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        let total = self.size.checked_pow(n as u32).expect("level too large");
        (0..total).map(move |i| self.power_decode(i, n))
    }

    fn power_decode(&self, idx: usize, n: usize) -> Word {
        if n == 0 {
            return Vec::new();
        }
        self.decode_block(idx, n)
    }
}

/// Cap on alphabet sizes produced by `power`; keeps permutation tables sane.
pub const MAX_ALPHABET: usize = 1 << 20;

/// Flatten a word over `X^k` into the underlying word over `X`.
pub fn flatten_blocks(alphabet: Alphabet, blocks: &[Letter], k: usize) -> Word {
    let mut out = Vec::with_capacity(blocks.len() * k);
    for &b in blocks {
        out.extend(alphabet.decode_block(b, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_codec_round_trip() {
        let a = Alphabet::new(3);
        for i in 0..27 {
            let block = a.decode_block(i, 3);
            assert_eq!(a.encode_block(&block), i);
        }
    }

    #[test]
    fn power_origin_is_origin_block() {
        let a = Alphabet::with_origin(3, 1);
        let p = a.power(2);
        assert_eq!(p.size(), 9);
        assert_eq!(p.origin(), a.encode_block(&[1, 1]));
    }

    #[test]
    fn words_of_length_enumerates_lexicographically() {
        let a = Alphabet::new(2);
        let words: Vec<_> = a.words_of_length(2).collect();
        assert_eq!(words, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(a.words_of_length(0).count(), 1);
    }
}
