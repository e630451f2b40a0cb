//! Fixed-width chamber sets.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of `0..universe`; bit `i` marks chamber `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberSet {
    universe: usize,
    words: Vec<u64>,
    size: usize,
}

impl ChamberSet {
    pub fn empty(universe: usize) -> Self {
        ChamberSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
            size: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Low `universe` bits of `mask`; requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64);
        let mask = if universe == 64 {
            mask
        } else {
            mask & ((1u64 << universe) - 1)
        };
        ChamberSet {
            universe,
            words: if universe == 0 { vec![] } else { vec![mask] },
            size: mask.count_ones() as usize,
        }
    }

    /// The single word of a set over at most 64 chambers.
    pub fn mask(&self) -> u64 {
        assert!(self.universe <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "chamber {i} outside universe {}", self.universe);
        let fresh = !self.contains(i);
        if fresh {
            self.words[i / 64] |= 1 << (i % 64);
            self.size += 1;
        }
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let present = self.contains(i);
        if present {
            self.words[i / 64] &= !(1 << (i % 64));
            self.size -= 1;
        }
        present
    }

    pub fn toggle(&mut self, i: usize) {
        if !self.remove(i) {
            self.insert(i);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.universe);
        for (o, w) in out.words.iter_mut().zip(&self.words) {
            *o &= !w;
        }
        out.size = self.universe - self.size;
        out
    }

    pub fn intersection(&self, other: &ChamberSet) -> Self {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let size = words.iter().map(|w| w.count_ones() as usize).sum();
        ChamberSet {
            universe: self.universe,
            words,
            size,
        }
    }

    pub fn is_subset(&self, other: &ChamberSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Big-endian hex string; the least significant bit is chamber 0.
    pub fn to_hex(&self) -> String {
        let digits = self.universe.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (0..4).fold(0u8, |acc, b| acc | (self.contains(4 * d + b) as u8) << b);
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(universe: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim().trim_start_matches("0x");
        let mut s = Self::empty(universe);
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let i = 4 * d + b;
                    if i >= universe {
                        return Err(Error::Parse(format!("bit {i} outside universe {universe}")));
                    }
                    s.insert(i);
                }
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for ChamberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ChamberSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_layout() {
        let s = ChamberSet::from_indices(7, [0, 1, 5]);
        assert_eq!(s.to_hex(), "23");
        assert_eq!(ChamberSet::from_hex(7, "23").unwrap(), s);
        assert!(ChamberSet::from_hex(7, "80").is_err());
        assert_eq!(ChamberSet::empty(0).to_hex(), "0");
    }

    proptest! {
        #[test]
        fn size_is_popcount(universe in 1usize..200, idx in proptest::collection::vec(0usize..200, 0..60)) {
            let s = ChamberSet::from_indices(universe, idx.into_iter().filter(|&i| i < universe));
            prop_assert_eq!(s.len(), s.iter().count());
            prop_assert_eq!(s.complement().len(), universe - s.len());
            prop_assert_eq!(ChamberSet::from_hex(universe, &s.to_hex()).unwrap(), s.clone());
            prop_assert!(s.intersection(&s.complement()).is_empty());
        }
    }
}
