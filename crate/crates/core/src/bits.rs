//! Fixed-length bit vectors over `u64` words.
//!
//! Bits past `len` in the last word are always zero; every operation here
//! preserves that so word-level equality is bit-level equality.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct BitVec {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; word_count(len)],
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the popcount of `self & other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// XORs the cyclic rotation of `src` by `shift` positions into `self`:
    /// bit `i` of `src` lands on bit `(i + shift) mod len`.
    pub fn xor_rotated(&mut self, src: &BitVec, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let n = self.len;
        if n == 0 {
            return;
        }
        let shift = shift % n;
        if shift == 0 {
            self.xor_assign(src);
            return;
        }
        // low part: bits [0, n - shift) move up by `shift`
        self.xor_shifted_up(src, shift, n - shift);
        // high part: bits [n - shift, n) move down by `n - shift`
        self.xor_shifted_down(src, n - shift);
    }

    /// self ^= (src restricted to [0, count)) << shift
    fn xor_shifted_up(&mut self, src: &BitVec, shift: usize, count: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let src_words = word_count(count);
        for i in 0..src_words {
            let mut w = src.words[i];
            if i == src_words - 1 && count % 64 != 0 {
                w &= (1u64 << (count % 64)) - 1;
            }
            if w == 0 {
                continue;
            }
            let dst = i + ws;
            if dst < self.words.len() {
                self.words[dst] ^= w << bs;
            }
            if bs != 0 && dst + 1 < self.words.len() {
                self.words[dst + 1] ^= w >> (64 - bs);
            }
        }
        self.clear_tail();
    }

    /// self ^= src >> shift  (bits below `shift` are dropped)
    fn xor_shifted_down(&mut self, src: &BitVec, shift: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let nw = self.words.len();
        for i in 0..nw {
            let lo_idx = i + ws;
            if lo_idx >= nw {
                break;
            }
            let mut w = src.words[lo_idx] >> bs;
            if bs != 0 && lo_idx + 1 < nw {
                w |= src.words[lo_idx + 1] << (64 - bs);
            }
            self.words[i] ^= w;
        }
    }

    fn clear_tail(&mut self) {
        if self.len % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }
}
