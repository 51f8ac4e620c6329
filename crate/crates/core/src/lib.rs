//! Exact arithmetic in fractional skew monoid rings `S^op ∗ A ∗ T` and the
//! dilation of such a ring to a full corner of a skew group ring.

pub mod cli;
pub mod dilation;
pub mod ktheory_examples;
pub mod monoid;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod skewring;
