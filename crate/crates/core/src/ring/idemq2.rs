//! `ℚ²` with the collapse endomorphism `(a, b) ↦ (a, a)`.
//!
//! The collapse is unital but not injective: its kernel `0 × ℚ` is also the
//! kernel of every power, so the kernel oracle reduces `(a, b)` to `(a, 0)`.

use num_traits::{One, Zero};

use super::{
    format_q, parse_q, small_q, ActionFlags, Endomorphism, Notation, Q, Ring, RingError,
    SampleRing, UnitalRing,
};
use crate::sampling::SampleRng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdemQ2;

impl Ring for IdemQ2 {
    type Elem = (Q, Q);

    fn zero(&self) -> (Q, Q) {
        (Q::zero(), Q::zero())
    }

    fn add(&self, a: &(Q, Q), b: &(Q, Q)) -> (Q, Q) {
        (&a.0 + &b.0, &a.1 + &b.1)
    }

    fn neg(&self, a: &(Q, Q)) -> (Q, Q) {
        (-&a.0, -&a.1)
    }

    fn mul(&self, a: &(Q, Q), b: &(Q, Q)) -> (Q, Q) {
        (&a.0 * &b.0, &a.1 * &b.1)
    }

    fn equal(&self, a: &(Q, Q), b: &(Q, Q)) -> bool {
        a == b
    }
}

impl UnitalRing for IdemQ2 {
    fn one(&self) -> (Q, Q) {
        (Q::one(), Q::one())
    }
}

impl Notation for IdemQ2 {
    fn format(&self, a: &(Q, Q)) -> String {
        format!("<{},{}>", format_q(&a.0), format_q(&a.1))
    }

    /// `u1 = (1,0)`, `u2 = (0,1)` or `<a,b>`.
    fn parse_atom(&self, s: &str) -> Result<(Q, Q), RingError> {
        match s {
            "u1" => return Ok((Q::one(), Q::zero())),
            "u2" => return Ok((Q::zero(), Q::one())),
            _ => {}
        }
        let bad = || RingError::Parse(s.into(), self.describe());
        let body = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')).ok_or_else(bad)?;
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        Ok((parse_q(a).ok_or_else(bad)?, parse_q(b).ok_or_else(bad)?))
    }

    fn scalar(&self, c: &Q) -> Option<(Q, Q)> {
        Some((c.clone(), c.clone()))
    }

    fn describe(&self) -> String {
        "Q x Q".into()
    }
}

impl SampleRing for IdemQ2 {
    fn sample(&self, rng: &mut SampleRng) -> (Q, Q) {
        (small_q(rng), small_q(rng))
    }
}

/// Endomorphisms of `ℚ²` offered as actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdemEndo {
    /// `(a, b) ↦ (a, a)`.
    Collapse,
    Identity,
}

impl Endomorphism<IdemQ2> for IdemEndo {
    fn apply(&self, _ring: &IdemQ2, a: &(Q, Q)) -> (Q, Q) {
        match self {
            IdemEndo::Collapse => (a.0.clone(), a.0.clone()),
            IdemEndo::Identity => a.clone(),
        }
    }

    fn flags(&self) -> ActionFlags {
        match self {
            IdemEndo::Collapse => ActionFlags { injective: false, unital: true, corner_iso: false },
            IdemEndo::Identity => ActionFlags { injective: true, unital: true, corner_iso: true },
        }
    }

    fn preimage(&self, _ring: &IdemQ2, a: &(Q, Q)) -> Result<Option<(Q, Q)>, RingError> {
        Ok(match self {
            IdemEndo::Collapse => (a.0 == a.1).then(|| (a.0.clone(), Q::zero())),
            IdemEndo::Identity => Some(a.clone()),
        })
    }

    /// `α(a₀, 0) = (a₀, a₀) ≡ (a₀, a₁)` modulo `0 × ℚ`.
    fn preimage_mod_kernel(&self, _ring: &IdemQ2, a: &(Q, Q)) -> Result<Option<(Q, Q)>, RingError> {
        Ok(Some(match self {
            IdemEndo::Collapse => (a.0.clone(), Q::zero()),
            IdemEndo::Identity => a.clone(),
        }))
    }

    fn kernel_reduce(&self, _ring: &IdemQ2, a: &(Q, Q)) -> Option<(Q, Q)> {
        Some(match self {
            IdemEndo::Collapse => (a.0.clone(), Q::zero()),
            IdemEndo::Identity => a.clone(),
        })
    }

    fn name(&self) -> String {
        match self {
            IdemEndo::Collapse => "collapse".into(),
            IdemEndo::Identity => "identity".into(),
        }
    }
}
