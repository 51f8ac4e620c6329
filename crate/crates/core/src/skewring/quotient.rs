//! Passing to `A/I` with `I = ⋃_{s∈S} ker α_s`, where the induced action is injective.

use std::sync::Arc;

use super::{Elem, SkewError, SkewRing};
use crate::monoid::OreMonoid;
use super::relations::{run_check, SuiteAction};
use crate::report::CheckRecord;
use crate::ring::{
    Action, ActionFlags, MonoidElem, Notation, Ring, RingElem, RingError, SampleRing, UnitalRing, Q,
};
use crate::sampling::SampleRng;

/// `A/I`, elements stored as the oracle's canonical representatives.
pub struct QuotientRing<A: Action> {
    inner: Arc<A>,
}

impl<A: Action> QuotientRing<A> {
    pub fn reduce(&self, a: &RingElem<A>) -> RingElem<A> {
        self.inner.kernel_reduce(a).expect("kernel oracle checked at construction")
    }
}

impl<A: Action> Ring for QuotientRing<A> {
    type Elem = RingElem<A>;

    fn zero(&self) -> Self::Elem {
        self.inner.ring().zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.inner.ring().add(a, b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.reduce(&self.inner.ring().neg(a))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.inner.ring().mul(a, b))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.inner.ring().equal(&self.reduce(a), &self.reduce(b))
    }
}

impl<A: Action> UnitalRing for QuotientRing<A> {
    fn one(&self) -> Self::Elem {
        self.reduce(&self.inner.ring().one())
    }
}

impl<A: Action> Notation for QuotientRing<A>
where
    A::Ring: Notation,
{
    fn format(&self, a: &Self::Elem) -> String {
        self.inner.ring().format(&self.reduce(a))
    }

    fn parse_atom(&self, s: &str) -> Result<Self::Elem, RingError> {
        Ok(self.reduce(&self.inner.ring().parse_atom(s)?))
    }

    fn scalar(&self, c: &Q) -> Option<Self::Elem> {
        Some(self.reduce(&self.inner.ring().scalar(c)?))
    }

    fn describe(&self) -> String {
        format!("({}) / I", self.inner.ring().describe())
    }
}

impl<A: Action> SampleRing for QuotientRing<A>
where
    A::Ring: SampleRing,
{
    fn sample(&self, rng: &mut SampleRng) -> Self::Elem {
        self.reduce(&self.inner.ring().sample(rng))
    }
}

/// The induced action `α'` on `A/I`.
pub struct QuotientAction<A: Action> {
    inner: Arc<A>,
    ring: QuotientRing<A>,
}

impl<A: Action> QuotientAction<A> {
    pub fn new(inner: Arc<A>) -> Result<Self, SkewError> {
        if !inner.monoid().is_left_saturated() {
            return Err(SkewError::Precondition(
                "kernel quotient needs S left saturated in T".into(),
            ));
        }
        if inner.kernel_reduce(&inner.ring().one()).is_none() {
            return Err(SkewError::Precondition(
                "kernel quotient needs a kernel oracle for this action".into(),
            ));
        }
        Ok(QuotientAction { ring: QuotientRing { inner: inner.clone() }, inner })
    }

    pub fn inner(&self) -> &Arc<A> {
        &self.inner
    }
}

impl<A: Action> Action for QuotientAction<A> {
    type Monoid = A::Monoid;
    type Ring = QuotientRing<A>;

    fn monoid(&self) -> &A::Monoid {
        self.inner.monoid()
    }

    fn ring(&self) -> &QuotientRing<A> {
        &self.ring
    }

    fn apply(&self, t: &MonoidElem<A>, a: &RingElem<A>) -> RingElem<A> {
        self.ring.reduce(&self.inner.apply(t, a))
    }

    fn idempotent(&self, t: &MonoidElem<A>) -> RingElem<A> {
        self.ring.reduce(&self.inner.idempotent(t))
    }

    fn flags(&self) -> ActionFlags {
        let f = self.inner.flags();
        ActionFlags { injective: true, ..f }
    }

    fn preimage(&self, t: &MonoidElem<A>, a: &RingElem<A>) -> Result<Option<RingElem<A>>, RingError> {
        let Some(b) = self.inner.preimage_mod_kernel(t, a)? else {
            return Ok(None);
        };
        let b = self.ring.reduce(&b);
        Ok(self.ring.equal(&self.apply(t, &b), a).then_some(b))
    }

    fn kernel_reduce(&self, a: &RingElem<A>) -> Option<RingElem<A>> {
        Some(self.ring.reduce(a))
    }

    fn describe(&self) -> String {
        format!("{} modulo its kernel", self.inner.describe())
    }
}

/// The map `S^op ∗_α A ∗_α T → S^op ∗_{α'} (A/I) ∗_{α'} T`, term by term.
pub fn transport<A: Action>(
    from: &SkewRing<A>,
    to: &SkewRing<QuotientAction<A>>,
    x: &Elem<A>,
) -> Elem<QuotientAction<A>> {
    let _ = from;
    let mut out = to.zero();
    for (_, term) in x.terms() {
        let reduced = to.action().ring().reduce(&term.a);
        let y = to.term(term.s.clone(), reduced, term.t.clone()).expect("denominator stays in S");
        out = to.add(&out, &y);
    }
    out
}

/// Sampled check that [`transport`] preserves sums and products.
pub fn transport_suite<A>(
    from: &SkewRing<A>,
    to: &SkewRing<QuotientAction<A>>,
    seed: u64,
    trials: usize,
) -> Vec<CheckRecord>
where
    A: SuiteAction,
    QuotientAction<A>: SuiteAction,
{
    let t = |x: &Elem<A>| transport(from, to, x);
    let pair = |name: &str, anchor: &str, salt: u64, mul: bool| {
        run_check(name, anchor, seed, trials, salt, |rng| {
            let (x, y) = (from.sample(rng), from.sample(rng));
            let (lhs, rhs) = if mul {
                (t(&from.mul(&x, &y)), to.mul(&t(&x), &t(&y)))
            } else {
                (t(&from.add(&x, &y)), to.add(&t(&x), &t(&y)))
            };
            Ok(match to.equal(&lhs, &rhs).map_err(|e| e.to_string())? {
                true => None,
                false => Some(format!("x = {}, y = {}", from.format(&x), from.format(&y))),
            })
        })
    };
    vec![
        pair("transport additive", "π(x + y) = π(x) + π(y)", 41, false),
        pair("transport multiplicative", "π(x·y) = π(x)·π(y)", 42, true),
    ]
}
