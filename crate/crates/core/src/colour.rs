//! Colours and colour lists.
//!
//! Colours are small integers `1..=MAX_COLOURS`; a list is stored as a bitmask.

use std::fmt;

/// A colour in `1..=MAX_COLOURS`.
pub type Colour = u8;

/// Largest palette supported anywhere in the crate.
pub const MAX_COLOURS: u8 = 5;

/// A set of colours, stored as a bitmask (bit `c - 1` for colour `c`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// `{1, ..., k}`.
    pub fn full(k: u8) -> Self {
        debug_assert!(k <= MAX_COLOURS);
        ColourSet(((1u16 << k) - 1) as u8)
    }

    pub fn single(c: Colour) -> Self {
        debug_assert!((1..=MAX_COLOURS).contains(&c));
        ColourSet(1 << (c - 1))
    }

    pub fn from_colours<I: IntoIterator<Item = Colour>>(colours: I) -> Self {
        colours
            .into_iter()
            .fold(ColourSet::EMPTY, |s, c| s.with(c))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_bits(bits: u8) -> Self {
        ColourSet(bits & ColourSet::full(MAX_COLOURS).0)
    }

    pub fn contains(self, c: Colour) -> bool {
        (1..=MAX_COLOURS).contains(&c) && self.0 & (1 << (c - 1)) != 0
    }

    pub fn with(self, c: Colour) -> Self {
        ColourSet(self.0 | (1 << (c - 1)))
    }

    pub fn without(self, c: Colour) -> Self {
        if (1..=MAX_COLOURS).contains(&c) {
            ColourSet(self.0 & !(1 << (c - 1)))
        } else {
            self
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ColourSet) -> Self {
        ColourSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColourSet) -> Self {
        ColourSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColourSet) -> Self {
        ColourSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ColourSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ColourSet) -> bool {
        self.is_subset(other) && self != other
    }

    /// Smallest colour in the set.
    pub fn min(self) -> Option<Colour> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as u8 + 1)
        }
    }

    /// Largest colour in the set.
    pub fn max(self) -> Option<Colour> {
        if self.0 == 0 {
            None
        } else {
            Some(8 - self.0.leading_zeros() as u8)
        }
    }

    /// Colours in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Colour> {
        (1..=MAX_COLOURS).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        ColourSet::from_colours(iter)
    }
}

/// A renaming of the three colours.
///
/// The branching phases reason about "colour 1", "colour 2" and "colour 3"
/// only up to symmetry; a `ColourPerm` pins down which actual colour plays
/// each logical role in the current branch.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColourPerm {
    actual: [Colour; 3],
}

impl ColourPerm {
    pub const IDENTITY: ColourPerm = ColourPerm { actual: [1, 2, 3] };

    /// Build a permutation from the actual colours playing logical 1, 2, 3.
    pub fn new(one: Colour, two: Colour, three: Colour) -> Option<Self> {
        let set = ColourSet::from_colours([one, two, three]);
        (set == ColourSet::full(3)).then_some(ColourPerm {
            actual: [one, two, three],
        })
    }

    /// Actual colour playing logical role `logical`.
    pub fn actual(&self, logical: Colour) -> Colour {
        self.actual[(logical - 1) as usize]
    }

    /// Logical role played by actual colour `actual`.
    pub fn logical(&self, actual: Colour) -> Colour {
        self.actual.iter().position(|&c| c == actual).unwrap() as u8 + 1
    }

    /// Map a set of logical colours to actual colours.
    pub fn actual_set(&self, logical: ColourSet) -> ColourSet {
        logical.iter().map(|c| self.actual(c)).collect()
    }

    /// Map a set of actual colours to logical colours.
    pub fn logical_set(&self, actual: ColourSet) -> ColourSet {
        actual.iter().map(|c| self.logical(c)).collect()
    }
}
