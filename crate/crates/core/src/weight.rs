//! Exact signed weights.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedMul, CheckedNeg, CheckedSub, Signed};

use crate::error::{Error, Result};

/// An exact, totally ordered signed number usable as an edge weight or
/// potential value.
///
/// Implemented for the primitive signed integers. Every arithmetic step the
/// algorithms take on weights goes through the checked helpers below, so an
/// overflow surfaces as [`Error::Overflow`] instead of wrapping.
pub trait Weight:
    Copy
    + Ord
    + Hash
    + Debug
    + Display
    + Default
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedNeg
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a count, used for sentinel construction.
    fn from_count(count: usize) -> Result<Self>;
}

macro_rules! impl_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            fn from_count(count: usize) -> Result<Self> {
                <$t>::try_from(count).map_err(|_| Error::Overflow)
            }
        }
    )*};
}

impl_weight!(i8, i16, i32, i64, i128, isize);

pub(crate) fn add<W: Weight>(a: W, b: W) -> Result<W> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

pub(crate) fn sub<W: Weight>(a: W, b: W) -> Result<W> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

/// `1 + sum |w|` over the given weights: strictly heavier than the difference
/// between any two matchings built from them.
pub fn dominating_weight<'a, W: Weight>(weights: impl IntoIterator<Item = &'a W>) -> Result<W> {
    let mut total = W::one();
    for w in weights {
        total = add(total, w.abs())?;
    }
    Ok(total)
}
