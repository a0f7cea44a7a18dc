use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported frame. Dense powerset vectors hold `2^N - 1` entries.
pub const MAX_FRAME_SIZE: usize = 16;

/// An ordered set of mutually exclusive, exhaustive hypotheses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FrameOfDiscernment {
    elements: Vec<String>,
}

impl FrameOfDiscernment {
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::Frame("a frame needs at least one element".into()));
        }
        if elements.len() > MAX_FRAME_SIZE {
            return Err(Error::Frame(format!(
                "{} elements exceeds the maximum of {MAX_FRAME_SIZE}",
                elements.len()
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Frame(format!("element {i} has an empty name")));
            }
            if elements[..i].contains(e) {
                return Err(Error::Frame(format!("duplicate element {e:?}")));
            }
        }
        Ok(FrameOfDiscernment { elements })
    }

    /// Shared handle, the form stored inside mass functions.
    pub fn shared<I, S>(elements: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(elements).map(Arc::new)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Mask of the whole frame, `Θ`.
    pub fn full(&self) -> SubsetMask {
        SubsetMask((1u32 << self.len()) - 1)
    }

    /// Number of nonempty subsets, `2^N - 1`.
    pub fn powerset_len(&self) -> usize {
        (1usize << self.len()) - 1
    }

    pub fn singleton(&self, name: &str) -> Result<SubsetMask> {
        self.index_of(name)
            .map(SubsetMask::singleton)
            .ok_or_else(|| Error::FrameMismatch(format!("{name:?} is not an element of {self}")))
    }

    /// Builds a mask from element names. Duplicates are rejected.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<SubsetMask> {
        let mut bits = 0u32;
        for name in names {
            let name = name.as_ref();
            let idx = self.index_of(name).ok_or_else(|| {
                Error::FrameMismatch(format!("{name:?} is not an element of {self}"))
            })?;
            if bits & (1 << idx) != 0 {
                return Err(Error::Frame(format!(
                    "duplicate element {name:?} in subset"
                )));
            }
            bits |= 1 << idx;
        }
        Ok(SubsetMask(bits))
    }

    /// Element names of a subset, in frame order.
    pub fn names(&self, mask: SubsetMask) -> Vec<&str> {
        mask.elements()
            .filter(|&i| i < self.len())
            .map(|i| self.elements[i].as_str())
            .collect()
    }

    pub fn contains_mask(&self, mask: SubsetMask) -> bool {
        mask.0 & !self.full().0 == 0
    }
}

impl fmt::Debug for FrameOfDiscernment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame{:?}", self.elements)
    }
}

impl fmt::Display for FrameOfDiscernment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(","))
    }
}

/// A subset of a frame as a bitmask: bit `k` set iff element `k` belongs to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(index: usize) -> Self {
        SubsetMask(1 << index)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.0 & (1 << index) != 0
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of the member elements, ascending.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}
