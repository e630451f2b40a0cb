//! Sign vectors (covectors) and compact index sets over at most 64 hyperplanes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

pub const MAX_HYPERPLANES: usize = 64;

/// Position of a point relative to an oriented hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// A subset of `[n]` for `n <= 64`, stored as a bitmask.
///
/// Ordered by cardinality first, then lexicographically on the sorted indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct IndexSet(pub u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        IndexSet(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(IndexSet(cur))
        })
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A covector in `{-,0,+}^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    pos: u64,
    neg: u64,
}

impl SignVector {
    pub fn new(len: usize) -> Self {
        assert!(len <= MAX_HYPERPLANES);
        SignVector {
            len: len as u8,
            pos: 0,
            neg: 0,
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut sv = SignVector::new(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            sv.set(i, s);
        }
        sv
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        debug_assert!(i < self.len());
        if self.pos >> i & 1 == 1 {
            Sign::Pos
        } else if self.neg >> i & 1 == 1 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        debug_assert!(i < self.len());
        let bit = 1u64 << i;
        self.pos &= !bit;
        self.neg &= !bit;
        match s {
            Sign::Pos => self.pos |= bit,
            Sign::Neg => self.neg |= bit,
            Sign::Zero => {}
        }
    }

    /// Appends one coordinate.
    pub fn push(&self, s: Sign) -> Self {
        let mut out = *self;
        out.len += 1;
        out.set(self.len(), s);
        out
    }

    pub fn with(&self, i: usize, s: Sign) -> Self {
        let mut out = *self;
        out.set(i, s);
        out
    }

    pub fn flipped(&self, i: usize) -> Self {
        self.with(i, self.get(i).flip())
    }

    fn full_mask(&self) -> u64 {
        if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    pub fn positive(&self) -> IndexSet {
        IndexSet(self.pos)
    }

    pub fn negative(&self) -> IndexSet {
        IndexSet(self.neg)
    }

    /// The index set `A` of coordinates equal to zero.
    pub fn zero_set(&self) -> IndexSet {
        IndexSet(self.full_mask() & !(self.pos | self.neg))
    }

    pub fn is_chamber(&self) -> bool {
        self.zero_set().is_empty()
    }

    /// `self` lies in the closure of the face with sign vector `other`:
    /// every nonzero coordinate of `self` agrees with `other`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    /// Indices where both vectors are nonzero and disagree.
    pub fn separation(&self, other: &SignVector) -> IndexSet {
        IndexSet((self.pos & other.neg) | (self.neg & other.pos))
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

impl Ord for SignVector {
    /// Lexicographic with `- < 0 < +`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.signs().cmp(other.signs()).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SignVector {
    type Err = crate::error::Error;

    /// Parses the `Display` form, one of `-`, `0`, `+` per hyperplane.
    fn from_str(s: &str) -> crate::error::Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Pos),
                _ => Err(crate::error::Error::Parse(format!("bad sign {c:?} in {s:?}"))),
            })
            .collect::<crate::error::Result<Vec<_>>>()?;
        if signs.len() > MAX_HYPERPLANES {
            return Err(crate::error::Error::Parse(format!(
                "sign vector longer than {MAX_HYPERPLANES}"
            )));
        }
        Ok(SignVector::from_signs(&signs))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sign_vector_text_round_trip() {
        let v: SignVector = "-0+".parse().unwrap();
        assert_eq!(v.get(0), Sign::Neg);
        assert_eq!(v.zero_set(), IndexSet::singleton(1));
        assert_eq!(v.to_string(), "-0+");
        assert!("-x+".parse::<SignVector>().is_err());
    }

    #[test]
    fn index_set_order_is_size_then_lex() {
        let mut v = [
            IndexSet::from_indices([1, 2]),
            IndexSet::from_indices([0]),
            IndexSet::EMPTY,
            IndexSet::from_indices([0, 2]),
            IndexSet::from_indices([2]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{0}", "{2}", "{0,2}", "{1,2}"]);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = IndexSet::from_indices([1, 4, 6]);
        let subs: Vec<IndexSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(IndexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn zero_set_and_conformance() {
        use Sign::*;
        let f = SignVector::from_signs(&[Pos, Zero, Neg]);
        let c = SignVector::from_signs(&[Pos, Pos, Neg]);
        let v = SignVector::from_signs(&[Zero, Zero, Neg]);
        assert_eq!(f.zero_set(), IndexSet::singleton(1));
        assert!(f.conforms_to(&c));
        assert!(v.conforms_to(&f));
        assert!(!c.conforms_to(&f));
        assert_eq!(c.to_string(), "++-");
    }

    #[test]
    fn chamber_order_minus_before_plus() {
        use Sign::*;
        let a = SignVector::from_signs(&[Neg, Pos]);
        let b = SignVector::from_signs(&[Pos, Neg]);
        assert!(a < b);
    }

    proptest! {
        #[test]
        fn set_get_round_trip(signs in proptest::collection::vec(0u8..3, 1..64)) {
            let signs: Vec<Sign> = signs.iter().map(|&s| [Sign::Neg, Sign::Zero, Sign::Pos][s as usize]).collect();
            let sv = SignVector::from_signs(&signs);
            prop_assert_eq!(sv.signs().collect::<Vec<_>>(), signs.clone());
            let zeros = signs.iter().filter(|&&s| s == Sign::Zero).count();
            prop_assert_eq!(sv.zero_set().len(), zeros);
        }
    }
}
