//! Fixed-length bitset over `Z_n` with cyclic rotation.

use std::fmt;

use smallvec::SmallVec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    n: usize,
    words: SmallVec<[u64; 2]>,
}

const W: usize = 64;

impl Bits {
    pub fn empty(n: usize) -> Self {
        Bits {
            n,
            words: SmallVec::from_elem(0, n.div_ceil(W)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.clear_tail();
        b
    }

    /// From a single-word mask; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= W);
        let mut b = Self::empty(n);
        if n > 0 {
            b.words[0] = mask;
            b.clear_tail();
        }
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut b = Self::empty(n);
        for i in it {
            b.insert(i);
        }
        b
    }

    fn clear_tail(&mut self) {
        let r = self.n % W;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Low word, meaningful when `n <= 64`.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "index {i} out of range for length {}", self.n);
        self.words[i / W] |= 1 << (i % W);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / W] &= !(1 << (i % W));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / W] >> (i % W) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * W + w.trailing_zeros() as usize)
    }

    pub fn first_absent(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, w)| i * W + (!w).trailing_zeros() as usize)
            .filter(|&i| i < self.n)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * W + t)
            })
        })
    }

    pub fn and(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Bits { n: self.n, words }
    }

    pub fn or(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Bits { n: self.n, words }
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Bits { n: self.n, words }
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `{(i + t) mod n : i in self}`.
    pub fn rotate(&self, t: usize) -> Bits {
        let n = self.n;
        if n == 0 {
            return self.clone();
        }
        let t = t % n;
        if t == 0 {
            return self.clone();
        }
        if n <= W {
            let full = if n == W { u64::MAX } else { (1u64 << n) - 1 };
            let m = self.words[0];
            let r = ((m << t) | (m >> (n - t))) & full;
            return Bits::from_mask(n, r);
        }
        let mut out = Bits::empty(n);
        for i in self.iter() {
            out.insert((i + t) % n);
        }
        out
    }

    /// `{(u * i) mod n : i in self}`.
    pub fn scale(&self, u: usize) -> Bits {
        let n = self.n;
        Bits::from_indices(n, self.iter().map(|i| (i * u) % n))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
