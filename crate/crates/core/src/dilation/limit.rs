//! `S₋AS₊ ≅ lim (p_tAp_t, α)` and the extended action `ᾱ`.
//!
//! `[t, a]` stands for `t₋·a·t₊` with `a ∈ p_tAp_t`; two classes are compared
//! after pushing both to a common index.

use std::sync::Arc;

use crate::monoid::{witness, OreMonoid, SampleMonoid};
use crate::ring::{
    Action, ActionFlags, MonoidElem, Notation, Ring, RingElem, RingError, SampleRing, UnitalRing,
};
use crate::sampling::SampleRng;
use crate::skewring::SkewError;

#[derive(Clone, Debug)]
pub struct LimElem<E, C> {
    pub t: E,
    pub a: C,
}

pub type LimOf<A> = LimElem<MonoidElem<A>, RingElem<A>>;

/// Shared preconditions of the dilation half: `S = T`, cancellative, injective.
pub(crate) fn check_dilatable<A: Action>(action: &A) -> Result<(), SkewError> {
    let m = action.monoid();
    if !m.is_cancellative() {
        return Err(SkewError::Precondition("dilation needs a cancellative monoid".into()));
    }
    if !m.denominators_are_all() {
        return Err(SkewError::Precondition("dilation needs S = T".into()));
    }
    if !action.flags().injective {
        return Err(SkewError::Undecidable);
    }
    Ok(())
}

pub struct LimRing<A: Action> {
    action: Arc<A>,
}

impl<A: Action> LimRing<A> {
    pub fn new(action: Arc<A>) -> Result<Self, SkewError> {
        check_dilatable(action.as_ref())?;
        Ok(LimRing { action })
    }

    pub fn action(&self) -> &Arc<A> {
        &self.action
    }

    /// `[t, p_t·a·p_t]`.
    pub fn make(&self, t: MonoidElem<A>, a: &RingElem<A>) -> LimOf<A> {
        let ring = self.action.ring();
        let p = self.action.idempotent(&t);
        LimElem { a: ring.mul(&ring.mul(&p, a), &p), t }
    }

    /// `[1, a]`, the image of `A` at level zero.
    pub fn embed(&self, a: &RingElem<A>) -> LimOf<A> {
        LimElem { t: self.action.monoid().identity(), a: a.clone() }
    }

    /// Both classes at the common index `ŝt₁ = t̂t₂`.
    fn common(&self, x: &LimOf<A>, y: &LimOf<A>) -> (MonoidElem<A>, RingElem<A>, RingElem<A>) {
        let m = self.action.monoid();
        let (sh, th) = witness(m, &y.t, &x.t);
        (m.mul(&sh, &x.t), self.action.apply(&sh, &x.a), self.action.apply(&th, &y.a))
    }

    /// A level-zero representative `b` with `[t, a] = [1, b]`, if one exists.
    pub fn level_zero(&self, x: &LimOf<A>) -> Result<Option<RingElem<A>>, RingError> {
        let Some(b) = self.action.preimage(&x.t, &x.a)? else {
            return Ok(None);
        };
        Ok(self.equal(x, &self.embed(&b)).then_some(b))
    }
}

impl<A: Action> Ring for LimRing<A> {
    type Elem = LimOf<A>;

    fn zero(&self) -> LimOf<A> {
        self.embed(&self.action.ring().zero())
    }

    fn add(&self, x: &LimOf<A>, y: &LimOf<A>) -> LimOf<A> {
        let (t, a, b) = self.common(x, y);
        LimElem { t, a: self.action.ring().add(&a, &b) }
    }

    fn neg(&self, x: &LimOf<A>) -> LimOf<A> {
        LimElem { t: x.t.clone(), a: self.action.ring().neg(&x.a) }
    }

    fn mul(&self, x: &LimOf<A>, y: &LimOf<A>) -> LimOf<A> {
        let (t, a, b) = self.common(x, y);
        LimElem { t, a: self.action.ring().mul(&a, &b) }
    }

    fn equal(&self, x: &LimOf<A>, y: &LimOf<A>) -> bool {
        let (_, a, b) = self.common(x, y);
        self.action.ring().equal(&a, &b)
    }

    fn is_zero(&self, x: &LimOf<A>) -> bool {
        self.action.ring().is_zero(&x.a)
    }
}

impl<A: Action> UnitalRing for LimRing<A> {
    fn one(&self) -> LimOf<A> {
        self.embed(&self.action.ring().one())
    }
}

impl<A: Action> Notation for LimRing<A>
where
    A::Ring: Notation,
{
    fn format(&self, x: &LimOf<A>) -> String {
        format!("[{} | {}]", self.action.monoid().format_elem(&x.t), self.action.ring().format(&x.a))
    }

    fn describe(&self) -> String {
        format!("S-AS+ over {}", self.action.ring().describe())
    }
}

impl<A: Action> SampleRing for LimRing<A>
where
    A::Monoid: SampleMonoid,
    A::Ring: SampleRing,
{
    fn sample(&self, rng: &mut SampleRng) -> LimOf<A> {
        let t = self.action.monoid().sample_denominator(rng);
        let a = self.action.ring().sample(rng);
        self.make(t, &a)
    }
}

/// `ᾱ_s(t₋at₊) = s₊t₋at₊s₋ = [t̂, α_ŝ(a)]` with `ŝt = t̂s`.
pub struct BarAction<A: Action> {
    lim: LimRing<A>,
}

impl<A: Action> BarAction<A> {
    pub fn new(action: Arc<A>) -> Result<Self, SkewError> {
        Ok(BarAction { lim: LimRing::new(action)? })
    }

    pub fn base(&self) -> &Arc<A> {
        &self.lim.action
    }
}

impl<A: Action> Action for BarAction<A> {
    type Monoid = A::Monoid;
    type Ring = LimRing<A>;

    fn monoid(&self) -> &A::Monoid {
        self.lim.action.monoid()
    }

    fn ring(&self) -> &LimRing<A> {
        &self.lim
    }

    fn apply(&self, s: &MonoidElem<A>, x: &LimOf<A>) -> LimOf<A> {
        let (sh, th) = witness(self.monoid(), s, &x.t);
        LimElem { t: th, a: self.lim.action.apply(&sh, &x.a) }
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { injective: true, unital: self.lim.action.flags().unital, corner_iso: true }
    }

    /// Candidate `[s·t_y, a_y]`, accepted after checking `ᾱ_s` of it.
    fn preimage(&self, s: &MonoidElem<A>, y: &LimOf<A>) -> Result<Option<LimOf<A>>, RingError> {
        let cand = self.lim.make(self.monoid().mul(s, &y.t), &y.a);
        Ok(self.lim.equal(&self.apply(s, &cand), y).then_some(cand))
    }

    fn kernel_reduce(&self, x: &LimOf<A>) -> Option<LimOf<A>> {
        Some(x.clone())
    }

    fn describe(&self) -> String {
        format!("extension of {} to S-AS+", self.lim.action.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{CommutativeMonoid, NatVec};
    use crate::ring::{GeneratorAction, Leavitt, LeavittEndo, Uhf, UhfEndo};

    fn n(k: u32) -> NatVec {
        NatVec(vec![k])
    }

    #[test]
    fn pushing_up_one_level() {
        let uhf = Uhf::new(2).unwrap();
        let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), uhf, UhfEndo::Corner));
        let lim = LimRing::new(act.clone()).unwrap();
        let b = act.ring().parse_atom("lvl1[0,1=1;1,0=3]").unwrap();
        let x = lim.make(n(1), &act.apply(&n(1), &b));
        assert!(lim.equal(&x, &lim.embed(&b)));
        assert!(!lim.equal(&x, &lim.zero()));
        assert_eq!(lim.level_zero(&x).unwrap().unwrap(), b);
    }

    #[test]
    fn leavitt_negative_witness() {
        let l = Leavitt::new(2).unwrap();
        let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), l, LeavittEndo::Diagonal));
        let lim = LimRing::new(act.clone()).unwrap();
        let r = act.ring();
        let w = lim.make(n(1), &r.mul(&r.y(1), &r.x(2)));
        assert_eq!(lim.level_zero(&w).unwrap(), None);
        let a = r.add(&r.y(2), &r.x(1));
        let x = lim.make(n(1), &act.apply(&n(1), &a));
        assert!(lim.equal(&x, &lim.embed(&a)));
    }

    #[test]
    fn bar_action_at_identity_and_generator() {
        let uhf = Uhf::new(2).unwrap();
        let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), uhf, UhfEndo::Corner));
        let bar = BarAction::new(act.clone()).unwrap();
        let lim = bar.ring();
        let b = act.ring().parse_atom("lvl1[1,1=2]").unwrap();
        let x = lim.embed(&b);
        assert!(lim.equal(&bar.apply(&n(0), &x), &x));
        assert!(lim.equal(&bar.apply(&n(1), &x), &lim.embed(&act.apply(&n(1), &b))));
    }

    #[test]
    fn non_injective_is_refused() {
        let act = GeneratorAction::uniform(
            CommutativeMonoid::nat(),
            crate::ring::IdemQ2,
            crate::ring::IdemEndo::Collapse,
        );
        assert!(matches!(LimRing::new(Arc::new(act)), Err(SkewError::Undecidable)));
    }
}
