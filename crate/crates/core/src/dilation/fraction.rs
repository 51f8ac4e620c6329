//! `S⁻¹B`: classes `[s, b]` for an injective corner-isomorphic action `β` of
//! `S` on `B`, where `S` acts by the automorphisms `α̂`.

use std::sync::Arc;

use crate::monoid::{common_multiple_unchecked, Fraction, OreMonoid, SampleMonoid};
use crate::ring::{Action, MonoidElem, Notation, Ring, RingElem, SampleRing, UnitalRing};
use crate::sampling::SampleRng;
use crate::skewring::SkewError;

use super::limit::check_dilatable;

#[derive(Clone, Debug)]
pub struct FracElem<E, C> {
    pub s: E,
    pub a: C,
}

pub type FracOf<B> = FracElem<MonoidElem<B>, RingElem<B>>;

pub struct FracRing<B: Action> {
    action: Arc<B>,
}

impl<B: Action> Clone for FracRing<B> {
    fn clone(&self) -> Self {
        FracRing { action: self.action.clone() }
    }
}

impl<B: Action> FracRing<B> {
    pub fn new(action: Arc<B>) -> Result<Self, SkewError> {
        check_dilatable(action.as_ref())?;
        if !action.flags().corner_iso {
            return Err(SkewError::Precondition(
                "S⁻¹B needs an action by corner isomorphisms".into(),
            ));
        }
        Ok(FracRing { action })
    }

    pub fn action(&self) -> &Arc<B> {
        &self.action
    }

    pub fn make(&self, s: MonoidElem<B>, a: RingElem<B>) -> FracOf<B> {
        FracElem { s, a }
    }

    /// `[1, b]`.
    pub fn embed(&self, b: &RingElem<B>) -> FracOf<B> {
        FracElem { s: self.action.monoid().identity(), a: b.clone() }
    }

    /// `e = [1, 1]`.
    pub fn e(&self) -> FracOf<B> {
        self.embed(&self.action.ring().one())
    }

    /// Both classes over `t₁s₁ = t₂s₂`.
    fn common(&self, x: &FracOf<B>, y: &FracOf<B>) -> (MonoidElem<B>, RingElem<B>, RingElem<B>) {
        let m = self.action.monoid();
        let (t1, t2) = common_multiple_unchecked(m, &x.s, &y.s);
        (m.mul(&t1, &x.s), self.action.apply(&t1, &x.a), self.action.apply(&t2, &y.a))
    }

    /// `α̂_s([t, a]) = [s', β_{t'}(a)]` with `s's = t't`.
    pub fn hat_alpha(&self, s: &MonoidElem<B>, x: &FracOf<B>) -> FracOf<B> {
        let (u1, u2) = common_multiple_unchecked(self.action.monoid(), s, &x.s);
        FracElem { s: u1, a: self.action.apply(&u2, &x.a) }
    }

    /// `α̂_s⁻¹([t, a]) = [ts, a]`.
    pub fn hat_alpha_inv(&self, s: &MonoidElem<B>, x: &FracOf<B>) -> FracOf<B> {
        FracElem { s: self.action.monoid().mul(&x.s, s), a: x.a.clone() }
    }

    /// `α̂_g = α̂_s⁻¹ ∘ α̂_t` for `g = s⁻¹t`.
    pub fn hat_alpha_group(&self, g: &Fraction<MonoidElem<B>>, x: &FracOf<B>) -> FracOf<B> {
        self.hat_alpha_inv(&g.den, &self.hat_alpha(&g.num, x))
    }

    /// The `b` with `x = [1, b]`, if `x` lies in the image of `B`.
    pub fn level_zero(&self, x: &FracOf<B>) -> Option<RingElem<B>> {
        let b = self.action.preimage(&x.s, &x.a).ok()??;
        self.equal(x, &self.embed(&b)).then_some(b)
    }
}

impl<B: Action> Ring for FracRing<B> {
    type Elem = FracOf<B>;

    fn zero(&self) -> FracOf<B> {
        self.embed(&self.action.ring().zero())
    }

    fn add(&self, x: &FracOf<B>, y: &FracOf<B>) -> FracOf<B> {
        let (s, a, b) = self.common(x, y);
        FracElem { s, a: self.action.ring().add(&a, &b) }
    }

    fn neg(&self, x: &FracOf<B>) -> FracOf<B> {
        FracElem { s: x.s.clone(), a: self.action.ring().neg(&x.a) }
    }

    fn mul(&self, x: &FracOf<B>, y: &FracOf<B>) -> FracOf<B> {
        let (s, a, b) = self.common(x, y);
        FracElem { s, a: self.action.ring().mul(&a, &b) }
    }

    fn equal(&self, x: &FracOf<B>, y: &FracOf<B>) -> bool {
        let (_, a, b) = self.common(x, y);
        self.action.ring().equal(&a, &b)
    }

    fn is_zero(&self, x: &FracOf<B>) -> bool {
        self.action.ring().is_zero(&x.a)
    }
}

impl<B: Action> Notation for FracRing<B>
where
    B::Ring: Notation,
{
    fn format(&self, x: &FracOf<B>) -> String {
        format!("<{} | {}>", self.action.monoid().format_elem(&x.s), self.action.ring().format(&x.a))
    }

    fn describe(&self) -> String {
        format!("S^-1 ({})", self.action.ring().describe())
    }
}

impl<B: Action> SampleRing for FracRing<B>
where
    B::Monoid: SampleMonoid,
    B::Ring: SampleRing,
{
    fn sample(&self, rng: &mut SampleRng) -> FracOf<B> {
        let s = self.action.monoid().sample_denominator(rng);
        FracElem { s, a: self.action.ring().sample(rng) }
    }
}
