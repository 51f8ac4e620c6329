//! Dilation of an endomorphic action to an automorphic one.
//!
//! The stages are the direct limit `S₋AS₊` with `ᾱ`, the ring `S⁻¹(S₋AS₊)`
//! with `α̂`, and the skew group ring over `G = S⁻¹S`, whose corner at
//! `e = [1, 1]` receives the skew monoid ring through `Φ`.

pub mod fraction;
pub mod group_ring;
pub mod limit;
pub mod pipeline;
pub mod suites;

pub use fraction::{FracElem, FracOf, FracRing};
pub use group_ring::{GroupElem, GroupOf, GroupRing};
pub use limit::{BarAction, LimElem, LimOf, LimRing};
pub use pipeline::Dilation;
