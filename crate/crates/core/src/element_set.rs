//! Fixed-width bit sets over the element indices of a group.

use std::fmt;

/// Largest group order any [`ElementSet`] can describe.
pub const MAX_ORDER: usize = 512;

const WORDS: usize = MAX_ORDER / 64;

/// A subset of `0..n` for a group of order `n`, stored as a 512-bit array.
///
/// Every subgroup, cover member and cover universe in the crate is one of
/// these. Sets are `Copy`; bits at or above `n` are always clear.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: [u64; WORDS],
    n: u16,
}

impl ElementSet {
    /// The empty subset of a group of order `n`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "group order {n} exceeds {MAX_ORDER}");
        ElementSet {
            words: [0; WORDS],
            n: n as u16,
        }
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the ambient group.
    pub fn universe_len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n as usize && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `i`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.n as usize, "index {i} out of range for order {}", self.n);
        let (w, b) = (i / 64, i % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.n as usize {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n as usize
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `|self ∩ other|` without materialising the intersection.
    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn zip_with(&self, other: &ElementSet, f: impl Fn(u64, u64) -> u64) -> ElementSet {
        debug_assert_eq!(self.n, other.n, "element sets from different groups");
        let mut words = [0; WORDS];
        for (k, w) in words.iter_mut().enumerate() {
            *w = f(self.words[k], other.words[k]);
        }
        ElementSet { words, n: self.n }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words[0],
        }
    }

    /// Lower-case hex, least significant word last, trimmed to `ceil(n / 4)`
    /// digits. Used as a stable textual key.
    pub fn to_hex(&self) -> String {
        let digits = (self.n as usize).div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> ((d % 16) * 4)) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(n: usize, hex: &str) -> Option<ElementSet> {
        if n > MAX_ORDER {
            return None;
        }
        let mut s = ElementSet::empty(n);
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c.to_digit(16)? as u64;
            if nibble == 0 {
                continue;
            }
            if d >= WORDS * 16 {
                return None;
            }
            s.words[d / 16] |= nibble << ((d % 16) * 4);
        }
        // reject stray bits beyond the universe
        if (n..MAX_ORDER).any(|i| s.words[i / 64] >> (i % 64) & 1 == 1) {
            return None;
        }
        Some(s)
    }

    /// Ordering used for lattice sorting: compares members as a bit pattern
    /// starting from the lowest index.
    pub fn lex_key(&self) -> impl Ord + '_ {
        LexKey(self)
    }
}

struct LexKey<'a>(&'a ElementSet);

impl PartialEq for LexKey<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl Eq for LexKey<'_> {}
impl PartialOrd for LexKey<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for LexKey<'_> {
    // A set containing the smaller index sorts first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        for k in 0..WORDS {
            let (a, b) = (self.0.words[k], other.0.words[k]);
            if a != b {
                let bit = (a ^ b).trailing_zeros();
                return if a >> bit & 1 == 1 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

pub struct Iter<'a> {
    set: &'a ElementSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
