use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of variables a [`VarSet`] can address.
pub const MAX_VARS: usize = 32;

/// A set of variable positions, stored as a bitmask.
///
/// Positions are 0-based internally; text I/O is 1-based (`1,2,3`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_VARS);
        VarSet(1 << i)
    }

    /// All positions `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= MAX_VARS {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VarSet(it.into_iter().fold(0u32, |m, i| m | (1 << i)))
    }

    /// Parses a 1-based comma-separated list such as `1,2,3`.
    pub fn parse_one_based(s: &str, count: usize) -> Result<Self> {
        let mut set = VarSet::EMPTY;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| Error::Format(format!("bad variable index '{tok}'")))?;
            if i == 0 || i > count {
                return Err(Error::IndexOutOfRange { index: i, count });
            }
            set = set.with(i - 1);
        }
        Ok(set)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VARS && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        VarSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        VarSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Ascending positions.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Checks that every position is below `count`.
    pub fn check(self, count: usize) -> Result<()> {
        match self.last() {
            Some(m) if m >= count => Err(Error::IndexOutOfRange {
                index: m + 1,
                count,
            }),
            _ => Ok(()),
        }
    }
}

/// Formats as 1-based comma-separated indices, e.g. `1,2,3`.
impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet{{{self}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iter_is_ascending() {
        let s = VarSet::from_indices([4, 0, 2]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(s.to_string(), "1,3,5");
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(4));
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert_eq!(
            VarSet::parse_one_based("1,3", 3).unwrap(),
            VarSet::from_indices([0, 2])
        );
        assert!(matches!(
            VarSet::parse_one_based("0", 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(VarSet::parse_one_based("4", 3).is_err());
        assert!(VarSet::parse_one_based("x", 3).is_err());
    }
}
