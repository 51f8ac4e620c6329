//! Coefficient rings `A` and monoid actions `α: T → Endr(A)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::monoid::{CommutativeMonoid, NatVec, OreMonoid};
use crate::sampling::SampleRng;

pub mod diagq;
pub mod idemq2;
pub mod leavitt;
pub mod matq;
pub mod uhf;

pub use diagq::{DiagQ, PermutationEndo};
pub use idemq2::{IdemEndo, IdemQ2};
pub use leavitt::{Leavitt, LeavittElem, LeavittEndo, Monomial};
pub use matq::{MatEndo, MatQ, QMatrix};
pub use uhf::{Uhf, UhfElem, UhfEndo};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("element is not idempotent: {0}")]
    NotIdempotent(String),
    #[error("instance mismatch: {0}")]
    InstanceMismatch(String),
    #[error("unknown ring instance `{0}`")]
    UnknownInstance(String),
    #[error("bad parameters for `{0}`: {1}")]
    BadParameters(String, String),
    #[error("cannot parse `{0}` as an element of {1}")]
    Parse(String, String),
    #[error("{0}")]
    Unsupported(String),
}

/// An associative ring with decidable equality.
pub trait Ring: Send + Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.zero())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

pub trait UnitalRing: Ring {
    fn one(&self) -> Self::Elem;
}

/// Text form of elements, used by the CLI and reports.
pub trait Notation: Ring {
    fn format(&self, a: &Self::Elem) -> String;

    fn parse_atom(&self, s: &str) -> Result<Self::Elem, RingError> {
        Err(RingError::Parse(s.into(), self.describe()))
    }

    fn describe(&self) -> String;

    /// `c·1`.
    fn scalar(&self, c: &Q) -> Option<Self::Elem> {
        self.parse_atom(&format_q(c)).ok()
    }
}

pub trait SampleRing: Ring {
    fn sample(&self, rng: &mut SampleRng) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ActionFlags {
    pub injective: bool,
    pub unital: bool,
    /// `α_t(A) = p_t·A·p_t` for every `t`.
    pub corner_iso: bool,
}

impl ActionFlags {
    pub fn compose(self, other: ActionFlags) -> ActionFlags {
        ActionFlags {
            injective: self.injective && other.injective,
            unital: self.unital && other.unital,
            corner_iso: self.corner_iso && other.corner_iso,
        }
    }
}

pub type MonoidElem<A> = <<A as Action>::Monoid as OreMonoid>::Elem;
pub type RingElem<A> = <<A as Action>::Ring as Ring>::Elem;

/// A monoid homomorphism `t ↦ α_t` into the (not necessarily unital)
/// ring endomorphisms of a unital ring.
pub trait Action: Send + Sync {
    type Monoid: OreMonoid;
    type Ring: UnitalRing;

    fn monoid(&self) -> &Self::Monoid;
    fn ring(&self) -> &Self::Ring;

    fn apply(&self, t: &MonoidElem<Self>, a: &RingElem<Self>) -> RingElem<Self>;

    /// `p_t = α_t(1)`.
    fn idempotent(&self, t: &MonoidElem<Self>) -> RingElem<Self> {
        self.apply(t, &self.ring().one())
    }

    fn flags(&self) -> ActionFlags;

    /// `Ok(Some(b))` with `α_t(b) = a`, `Ok(None)` when `a` is outside the image.
    fn preimage(
        &self,
        t: &MonoidElem<Self>,
        a: &RingElem<Self>,
    ) -> Result<Option<RingElem<Self>>, RingError> {
        let _ = (t, a);
        Err(RingError::Unsupported("this action has no preimage solver".into()))
    }

    /// Some `b` with `α_t(b) − a ∈ ⋃_s ker α_s`; exact preimages qualify.
    fn preimage_mod_kernel(
        &self,
        t: &MonoidElem<Self>,
        a: &RingElem<Self>,
    ) -> Result<Option<RingElem<Self>>, RingError> {
        self.preimage(t, a)
    }

    /// Canonical representative of `a + I` for `I = ⋃_s ker α_s`, when the
    /// action carries a kernel oracle.
    fn kernel_reduce(&self, a: &RingElem<Self>) -> Option<RingElem<Self>> {
        let _ = a;
        None
    }

    fn describe(&self) -> String {
        "action".into()
    }
}

/// `p·a·q`.
pub fn compress<R: Ring + ?Sized>(ring: &R, p: &R::Elem, a: &R::Elem, q: &R::Elem) -> R::Elem {
    ring.mul(&ring.mul(p, a), q)
}

/// The corner compression `p·a·p`; `p` must be idempotent.
pub fn corner_project<R: Ring + Notation + ?Sized>(
    ring: &R,
    p: &R::Elem,
    a: &R::Elem,
) -> Result<R::Elem, RingError> {
    if !ring.equal(&ring.mul(p, p), p) {
        return Err(RingError::NotIdempotent(ring.format(p)));
    }
    Ok(compress(ring, p, a, p))
}

/// `e ≤ f` in the idempotent order: `e = ef = fe`.
pub fn idempotent_le<R: Ring + ?Sized>(ring: &R, e: &R::Elem, f: &R::Elem) -> bool {
    ring.equal(&ring.mul(e, f), e) && ring.equal(&ring.mul(f, e), e)
}

/// A single ring endomorphism, the building block of [`GeneratorAction`].
pub trait Endomorphism<R: UnitalRing>: Send + Sync {
    fn apply(&self, ring: &R, a: &R::Elem) -> R::Elem;

    fn flags(&self) -> ActionFlags;

    fn preimage(&self, ring: &R, a: &R::Elem) -> Result<Option<R::Elem>, RingError> {
        let _ = (ring, a);
        Err(RingError::Unsupported(format!("{} has no preimage solver", self.name())))
    }

    fn preimage_mod_kernel(&self, ring: &R, a: &R::Elem) -> Result<Option<R::Elem>, RingError> {
        self.preimage(ring, a)
    }

    /// Reduction modulo `⋃_k ker fᵏ`, if known.
    fn kernel_reduce(&self, ring: &R, a: &R::Elem) -> Option<R::Elem> {
        let _ = (ring, a);
        None
    }

    fn name(&self) -> String;
}

/// Action of `ℕᵏ` (or a submonoid) where the `i`-th generator acts by a
/// fixed endomorphism; the endomorphisms must commute.
pub struct GeneratorAction<R: UnitalRing, E> {
    monoid: CommutativeMonoid,
    ring: R,
    generators: Vec<E>,
    idempotents: Mutex<HashMap<NatVec, R::Elem>>,
}

impl<R: UnitalRing, E: Endomorphism<R> + Clone> GeneratorAction<R, E> {
    /// Every generator of the monoid acts by `endo`.
    pub fn uniform(monoid: CommutativeMonoid, ring: R, endo: E) -> Self {
        let generators = vec![endo; monoid.rank()];
        Self::new(monoid, ring, generators)
    }
}

impl<R: UnitalRing, E: Endomorphism<R>> GeneratorAction<R, E> {
    pub fn new(monoid: CommutativeMonoid, ring: R, generators: Vec<E>) -> Self {
        assert_eq!(monoid.rank(), generators.len(), "one endomorphism per generator");
        GeneratorAction { monoid, ring, generators, idempotents: Mutex::new(HashMap::new()) }
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    // α_t = g_{k-1}^{t_{k-1}} ∘ … ∘ g_0^{t_0}; peel the outermost map first
    fn peel(
        &self,
        t: &NatVec,
        a: &R::Elem,
        step: impl Fn(&E, &R::Elem) -> Result<Option<R::Elem>, RingError>,
    ) -> Result<Option<R::Elem>, RingError> {
        let mut cur = a.clone();
        for (g, &k) in self.generators.iter().zip(&t.0).rev() {
            for _ in 0..k {
                match step(g, &cur)? {
                    Some(b) => cur = b,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(cur))
    }

    fn uniform_generators(&self) -> bool {
        let names: Vec<String> = self.generators.iter().map(|g| g.name()).collect();
        names.windows(2).all(|w| w[0] == w[1])
    }
}

impl<R: UnitalRing, E: Endomorphism<R>> Action for GeneratorAction<R, E> {
    type Monoid = CommutativeMonoid;
    type Ring = R;

    fn monoid(&self) -> &CommutativeMonoid {
        &self.monoid
    }

    fn ring(&self) -> &R {
        &self.ring
    }

    fn apply(&self, t: &NatVec, a: &R::Elem) -> R::Elem {
        let mut out = a.clone();
        for (g, &k) in self.generators.iter().zip(&t.0) {
            for _ in 0..k {
                out = g.apply(&self.ring, &out);
            }
        }
        out
    }

    fn idempotent(&self, t: &NatVec) -> R::Elem {
        if let Some(p) = self.idempotents.lock().unwrap().get(t) {
            return p.clone();
        }
        let p = self.apply(t, &self.ring.one());
        self.idempotents.lock().unwrap().insert(t.clone(), p.clone());
        p
    }

    fn flags(&self) -> ActionFlags {
        self.generators
            .iter()
            .map(|g| g.flags())
            .fold(ActionFlags { injective: true, unital: true, corner_iso: true }, ActionFlags::compose)
    }

    fn preimage(&self, t: &NatVec, a: &R::Elem) -> Result<Option<R::Elem>, RingError> {
        self.peel(t, a, |g, x| g.preimage(&self.ring, x))
    }

    fn preimage_mod_kernel(&self, t: &NatVec, a: &R::Elem) -> Result<Option<R::Elem>, RingError> {
        self.peel(t, a, |g, x| g.preimage_mod_kernel(&self.ring, x))
    }

    fn kernel_reduce(&self, a: &R::Elem) -> Option<R::Elem> {
        if self.flags().injective {
            return Some(a.clone());
        }
        if !self.uniform_generators() {
            return None;
        }
        self.generators.first()?.kernel_reduce(&self.ring, a)
    }

    fn describe(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| g.name()).collect();
        format!("{} acting by [{}]", self.monoid.name(), names.join(", "))
    }
}

pub(crate) fn small_q(rng: &mut SampleRng) -> Q {
    use rand::Rng as _;
    q(rng.gen_range(-2..=2))
}
