//! Subsets of a ground set `{0, .., m-1}` packed into a machine word.

use std::fmt;

/// Largest ground set the rank-table representation supports.
pub const MAX_GROUND: usize = 24;

/// A subset of the ground set; bit `i` set means element `i` is present.
///
/// Masks carry no width of their own. Whether a mask fits a particular
/// ground set is checked by the matroid it is used with.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full ground set of size `m`.
    #[inline]
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= 32);
        if m >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << m) - 1)
        }
    }

    #[inline]
    pub fn singleton(e: usize) -> Self {
        SubsetMask(1 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0u32, |acc, e| acc | (1 << e)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn insert(self, e: usize) -> Self {
        SubsetMask(self.0 | 1 << e)
    }

    #[inline]
    pub fn remove(self, e: usize) -> Self {
        SubsetMask(self.0 & !(1 << e))
    }

    /// Complement relative to a ground set of size `m`.
    #[inline]
    pub fn complement(self, m: usize) -> Self {
        SubsetMask(!self.0 & Self::full(m).0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True if no bit at position `>= m` is set.
    #[inline]
    pub fn fits(self, m: usize) -> bool {
        self.is_subset_of(Self::full(m))
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Iterates over every subset of `self`, starting with the empty set and
    /// ending with `self`, in ascending numeric order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for SubsetMask {
    /// Comma-separated element list, empty for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::ops::BitOr for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some((cur.wrapping_sub(self.universe)) & self.universe)
        };
        Some(SubsetMask(cur))
    }
}

/// Parses a comma-separated element list such as `0,3,5`; the empty string
/// is the empty set.
pub fn parse_element_list(text: &str) -> Result<SubsetMask, String> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(SubsetMask::EMPTY);
    }
    let mut mask = SubsetMask::EMPTY;
    for part in text.split(',') {
        let e: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad element `{}`", part.trim()))?;
        if e >= MAX_GROUND {
            return Err(format!("element {e} exceeds the ground-set cap {MAX_GROUND}"));
        }
        mask = mask.insert(e);
    }
    Ok(mask)
}
