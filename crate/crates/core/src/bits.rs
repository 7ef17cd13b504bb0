//! Fixed-length bitsets over world indices.

use smallvec::{smallvec, SmallVec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

impl Bits {
    pub fn zeros(len: usize) -> Bits {
        Bits { len, words: smallvec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Bits {
        let mut b = Bits { len, words: smallvec![!0; len.div_ceil(64)] };
        b.trim();
        b
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Bits {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            if f(i) {
                b.set(i);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn not(&self) -> Bits {
        let mut b = Bits { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        b.trim();
        b
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits { len: self.len, words: self.words.iter().zip(&o.words).map(|(a, b)| a & b).collect() }
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits { len: self.len, words: self.words.iter().zip(&o.words).map(|(a, b)| a | b).collect() }
    }

    /// Pointwise material implication.
    pub fn implies(&self, o: &Bits) -> Bits {
        self.not().or(o)
    }

    pub fn all(&self) -> bool {
        self.count() == self.len
    }

    pub fn none(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_zero(&self) -> Option<usize> {
        (0..self.len).find(|&i| !self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ops_respect_length() {
        for len in [0, 1, 63, 64, 65, 130] {
            let z = Bits::zeros(len);
            assert_eq!(z.not(), Bits::ones(len));
            assert_eq!(Bits::ones(len).count(), len);
            assert!(Bits::ones(len).all());
            assert_eq!(z.first_zero(), if len == 0 { None } else { Some(0) });
        }
        let a = Bits::from_fn(70, |i| i % 3 == 0);
        let b = Bits::from_fn(70, |i| i % 2 == 0);
        assert_eq!(a.and(&b), Bits::from_fn(70, |i| i % 6 == 0));
        assert_eq!(a.implies(&b).to_vec(), (0..70).map(|i| i % 3 != 0 || i % 2 == 0).collect::<Vec<_>>());
    }
}
