//! Canonical-form arithmetic in the fractional skew monoid ring `S^op ∗_α A ∗_α T`.
//!
//! Every element is a sum of homogeneous terms `s₋·a·t₊`, at most one per
//! degree `s⁻¹t ∈ S⁻¹T`. Coefficients are compressed to `p_s·a·p_t` on
//! construction. Two terms of the same degree are moved to a common
//! denominator using `s₋·a·t₊ = (us)₋·α_u(a)·(ut)₊`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng as _;

use crate::monoid::{
    canonical, common_multiple_unchecked, ore_solve, witness, Fraction, MonoidError, OreMonoid,
    SampleMonoid,
};
use crate::ring::{Action, MonoidElem, Notation, Ring, RingElem, RingError, SampleRing};
use crate::sampling::SampleRng;

pub mod quotient;
pub mod relations;

pub use quotient::{transport, transport_suite, QuotientAction, QuotientRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkewError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(
        "zero test undecidable without a kernel oracle: the action is not injective, apply the kernel quotient first"
    )]
    Undecidable,
    #[error("{0}")]
    Precondition(String),
}

/// `s₋·a·t₊`.
#[derive(Clone, Debug)]
pub struct SkewTerm<E, C> {
    pub s: E,
    pub a: C,
    pub t: E,
}

/// A finite sum of homogeneous terms keyed by canonical degree.
#[derive(Clone, Debug)]
pub struct SkewElement<E, C> {
    terms: BTreeMap<Fraction<E>, SkewTerm<E, C>>,
}

impl<E: Ord, C> SkewElement<E, C> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Fraction<E>, &SkewTerm<E, C>)> {
        self.terms.iter()
    }
}

pub type Term<A> = SkewTerm<MonoidElem<A>, RingElem<A>>;
pub type Elem<A> = SkewElement<MonoidElem<A>, RingElem<A>>;

pub struct SkewRing<A: Action> {
    action: Arc<A>,
}

impl<A: Action> Clone for SkewRing<A> {
    fn clone(&self) -> Self {
        SkewRing { action: self.action.clone() }
    }
}

impl<A: Action> SkewRing<A> {
    pub fn new(action: Arc<A>) -> Result<Self, SkewError> {
        let m = action.monoid();
        let one = Fraction::new(m.identity(), m.identity());
        if m.canonical_fraction(&one).is_none() {
            return Err(SkewError::Precondition(
                "the monoid has no canonical form for fractions, so degrees cannot be compared".into(),
            ));
        }
        if !m.is_cancellative() {
            return Err(SkewError::Precondition(
                "merging terms of equal degree is only implemented for cancellative monoids".into(),
            ));
        }
        Ok(SkewRing { action })
    }

    pub fn action(&self) -> &Arc<A> {
        &self.action
    }

    pub fn monoid(&self) -> &A::Monoid {
        self.action.monoid()
    }

    pub fn ring(&self) -> &A::Ring {
        self.action.ring()
    }

    /// Canonical degree `s⁻¹t`.
    pub fn degree(&self, s: &MonoidElem<A>, t: &MonoidElem<A>) -> Fraction<MonoidElem<A>> {
        canonical(self.monoid(), &Fraction::new(s.clone(), t.clone()))
    }

    pub fn zero(&self) -> Elem<A> {
        SkewElement { terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Elem<A> {
        let m = self.monoid();
        self.term_unchecked(m.identity(), crate::ring::UnitalRing::one(self.ring()), m.identity())
    }

    /// `s₋·a·t₊`; `s` must lie in `S`.
    pub fn term(&self, s: MonoidElem<A>, a: RingElem<A>, t: MonoidElem<A>) -> Result<Elem<A>, SkewError> {
        if !self.monoid().is_denominator(&s) {
            return Err(MonoidError::NotDenominator(self.monoid().format_elem(&s)).into());
        }
        Ok(self.term_unchecked(s, a, t))
    }

    fn term_unchecked(&self, s: MonoidElem<A>, a: RingElem<A>, t: MonoidElem<A>) -> Elem<A> {
        let mut out = self.zero();
        self.insert(&mut out, self.compress(SkewTerm { s, a, t }));
        out
    }

    fn compress(&self, x: Term<A>) -> Term<A> {
        let ring = self.ring();
        let ps = self.action.idempotent(&x.s);
        let pt = self.action.idempotent(&x.t);
        let a = ring.mul(&ring.mul(&ps, &x.a), &pt);
        SkewTerm { a, ..x }
    }

    /// `φ(a) = 1₋·a·1₊`.
    pub fn coeff(&self, a: RingElem<A>) -> Elem<A> {
        let m = self.monoid();
        self.term_unchecked(m.identity(), a, m.identity())
    }

    /// `s₋`.
    pub fn sm(&self, s: MonoidElem<A>) -> Result<Elem<A>, SkewError> {
        let one = crate::ring::UnitalRing::one(self.ring());
        self.term(s, one, self.monoid().identity())
    }

    /// `t₊`.
    pub fn sp(&self, t: MonoidElem<A>) -> Elem<A> {
        let one = crate::ring::UnitalRing::one(self.ring());
        self.term_unchecked(self.monoid().identity(), one, t)
    }

    /// The same term written over the denominator `u·s`.
    pub fn lift(&self, x: &Term<A>, u: &MonoidElem<A>) -> Term<A> {
        let m = self.monoid();
        SkewTerm { s: m.mul(u, &x.s), a: self.action.apply(u, &x.a), t: m.mul(u, &x.t) }
    }

    fn insert(&self, out: &mut Elem<A>, x: Term<A>) {
        if self.ring().is_zero(&x.a) {
            return;
        }
        let key = self.degree(&x.s, &x.t);
        let merged = match out.terms.remove(&key) {
            None => x,
            Some(y) => {
                let (u1, u2) = common_multiple_unchecked(self.monoid(), &y.s, &x.s);
                let y = self.lift(&y, &u1);
                let x = self.lift(&x, &u2);
                debug_assert!(y.s == x.s && y.t == x.t);
                SkewTerm { a: self.ring().add(&y.a, &x.a), ..y }
            }
        };
        if !self.ring().is_zero(&merged.a) {
            out.terms.insert(key, merged);
        }
    }

    pub fn add(&self, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
        let mut out = x.clone();
        for term in y.terms.values() {
            self.insert(&mut out, term.clone());
        }
        out
    }

    pub fn neg(&self, x: &Elem<A>) -> Elem<A> {
        let terms = x
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), SkewTerm { a: self.ring().neg(&v.a), ..v.clone() }))
            .collect();
        SkewElement { terms }
    }

    pub fn sub(&self, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
        let mut out = self.zero();
        for u in x.terms.values() {
            for v in y.terms.values() {
                let (w, th) = witness(self.monoid(), &v.s, &u.t);
                self.insert(&mut out, self.product_term(u, v, &w, &th));
            }
        }
        out
    }

    /// `(s₋ a t₊)(u₋ b v₊) = (ŵs)₋·α_ŵ(a)·α_t̂(p_u b)·(t̂v)₊` with `ŵt = t̂u`.
    pub fn term_mul(&self, u: &Term<A>, v: &Term<A>) -> Elem<A> {
        let (w, th) = witness(self.monoid(), &v.s, &u.t);
        let mut out = self.zero();
        self.insert(&mut out, self.product_term(u, v, &w, &th));
        out
    }

    /// [`Self::term_mul`] with a caller-supplied witness `(ŵ, t̂)`, which is checked.
    pub fn term_mul_with(
        &self,
        u: &Term<A>,
        v: &Term<A>,
        w: &MonoidElem<A>,
        th: &MonoidElem<A>,
    ) -> Result<Elem<A>, SkewError> {
        let m = self.monoid();
        if !m.is_denominator(w) || m.mul(w, &u.t) != m.mul(th, &v.s) {
            return Err(MonoidError::ContractViolation(format!(
                "({}, {}) is not an Ore witness for ({}, {})",
                m.format_elem(w),
                m.format_elem(th),
                m.format_elem(&v.s),
                m.format_elem(&u.t)
            ))
            .into());
        }
        let mut out = self.zero();
        self.insert(&mut out, self.product_term(u, v, w, th));
        Ok(out)
    }

    fn product_term(&self, u: &Term<A>, v: &Term<A>, w: &MonoidElem<A>, th: &MonoidElem<A>) -> Term<A> {
        let (m, ring, act) = (self.monoid(), self.ring(), &self.action);
        let pu = act.idempotent(&v.s);
        let left = act.apply(w, &u.a);
        let right = act.apply(th, &ring.mul(&pu, &v.a));
        self.compress(SkewTerm { s: m.mul(w, &u.s), a: ring.mul(&left, &right), t: m.mul(th, &v.t) })
    }

    /// Zero test; needs an injective action, where `s₋at₊ = 0` iff `p_s a p_t = 0`.
    pub fn is_zero(&self, x: &Elem<A>) -> Result<bool, SkewError> {
        if !self.action.flags().injective {
            return Err(SkewError::Undecidable);
        }
        Ok(x.terms.is_empty())
    }

    pub fn equal(&self, x: &Elem<A>, y: &Elem<A>) -> Result<bool, SkewError> {
        self.is_zero(&self.sub(x, y))
    }

    /// The homogeneous decomposition, one `(degree, term)` per nonzero component.
    pub fn grade(&self, x: &Elem<A>) -> Vec<(Fraction<MonoidElem<A>>, Term<A>)> {
        x.terms.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = Term<A>>) -> Result<Elem<A>, SkewError> {
        let mut out = self.zero();
        for x in terms {
            if !self.monoid().is_denominator(&x.s) {
                return Err(MonoidError::NotDenominator(self.monoid().format_elem(&x.s)).into());
            }
            self.insert(&mut out, self.compress(x));
        }
        Ok(out)
    }

    /// Product `g₁₊ ⋯ g_k₊` over a factorization of `t`.
    pub fn sp_factored(&self, t: &MonoidElem<A>) -> Elem<A> {
        self.monoid().factor(t).into_iter().fold(self.one(), |acc, g| self.mul(&acc, &self.sp(g)))
    }

    /// `s₋` as a product of generator factors; `(gh)₋ = h₋ g₋`.
    pub fn sm_factored(&self, s: &MonoidElem<A>) -> Result<Elem<A>, SkewError> {
        let mut out = self.one();
        for g in self.monoid().factor_denominator(s) {
            out = self.mul(&self.sm(g)?, &out);
        }
        Ok(out)
    }

    /// `t₊·x`, multiplying in one generator factor at a time.
    pub fn sp_left(&self, t: &MonoidElem<A>, x: &Elem<A>) -> Elem<A> {
        self.monoid().factor(t).into_iter().rev().fold(x.clone(), |acc, g| self.mul(&self.sp(g), &acc))
    }

    /// `x·s₋` for `s = g₁⋯g_k`, i.e. `x·g_k₋⋯g₁₋` one factor at a time.
    pub fn sm_right(&self, x: &Elem<A>, s: &MonoidElem<A>) -> Result<Elem<A>, SkewError> {
        let mut out = x.clone();
        for g in self.monoid().factor_denominator(s).into_iter().rev() {
            out = self.mul(&out, &self.sm(g)?);
        }
        Ok(out)
    }

    /// `s₊·x·s₋`, conjugating by one generator at a time from the inside out.
    pub fn conj_factored(&self, s: &MonoidElem<A>, x: &Elem<A>) -> Result<Elem<A>, SkewError> {
        let mut out = x.clone();
        for g in self.monoid().factor_denominator(s).into_iter().rev() {
            out = self.mul(&self.mul(&self.sp(g.clone()), &out), &self.sm(g)?);
        }
        Ok(out)
    }

    /// Checked Ore solve, exposed for the suites.
    pub fn ore(&self, s: &MonoidElem<A>, t: &MonoidElem<A>) -> Result<(MonoidElem<A>, MonoidElem<A>), SkewError> {
        Ok(ore_solve(self.monoid(), s, t)?)
    }
}

impl<A: Action> SkewRing<A>
where
    A::Monoid: SampleMonoid,
    A::Ring: SampleRing,
{
    pub fn sample_term(&self, rng: &mut SampleRng) -> Term<A> {
        let m = self.monoid();
        let s = m.sample_denominator(rng);
        let t = m.sample_numerator(rng);
        self.compress(SkewTerm { s, a: self.ring().sample(rng), t })
    }

    /// One to three sampled terms.
    pub fn sample(&self, rng: &mut SampleRng) -> Elem<A> {
        let mut out = self.zero();
        for _ in 0..rng.gen_range(1..=3) {
            let x = self.sample_term(rng);
            self.insert(&mut out, x);
        }
        out
    }

    pub fn term_elem(&self, x: &Term<A>) -> Elem<A> {
        self.term_unchecked(x.s.clone(), x.a.clone(), x.t.clone())
    }
}

impl<A: Action> SkewRing<A>
where
    A::Ring: Notation,
{
    pub fn format_term(&self, x: &Term<A>) -> String {
        let m = self.monoid();
        let one = m.identity();
        let mut parts = Vec::new();
        if x.s != one {
            parts.push(format!("sm({})", bare(&m.format_elem(&x.s))));
        }
        parts.push(format!("({})", self.ring().format(&x.a)));
        if x.t != one {
            parts.push(format!("sp({})", bare(&m.format_elem(&x.t))));
        }
        parts.join(" * ")
    }

    pub fn format(&self, x: &Elem<A>) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = x.terms.values().map(|t| self.format_term(t)).collect();
        parts.join(" + ")
    }
}

fn bare(s: &str) -> &str {
    s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{CommutativeMonoid, NatVec};
    use crate::ring::{
        q, GeneratorAction, IdemEndo, IdemQ2, Leavitt, LeavittEndo, MatEndo, MatQ, UnitalRing,
    };
    use crate::sampling::trial_rng;

    fn n(k: u32) -> NatVec {
        NatVec(vec![k])
    }

    fn rational_identity() -> SkewRing<GeneratorAction<MatQ, MatEndo>> {
        let act = GeneratorAction::uniform(CommutativeMonoid::nat(), MatQ::new(1).unwrap(), MatEndo::Identity);
        SkewRing::new(Arc::new(act)).unwrap()
    }

    fn leavitt2() -> SkewRing<GeneratorAction<Leavitt, LeavittEndo>> {
        let act = GeneratorAction::uniform(CommutativeMonoid::nat(), Leavitt::new(2).unwrap(), LeavittEndo::Diagonal);
        SkewRing::new(Arc::new(act)).unwrap()
    }

    #[test]
    fn laurent_monomials_multiply() {
        let r = rational_identity();
        let c = r.ring().scalar(q(2));
        let d = r.ring().scalar(q(3));
        let x = r.term(n(0), c, n(1)).unwrap();
        let y = r.term(n(0), d, n(1)).unwrap();
        let expect = r.term(n(0), r.ring().scalar(q(6)), n(2)).unwrap();
        assert!(r.equal(&r.mul(&x, &y), &expect).unwrap());
        assert_eq!(r.grade(&r.mul(&x, &y)).len(), 1);
    }

    #[test]
    fn defining_products() {
        let r = leavitt2();
        // 1₊·1₋ = p₁ and 1₋·1₊ = 1
        let p = r.coeff(r.action().idempotent(&n(1)));
        assert!(r.equal(&r.mul(&r.sp(n(1)), &r.sm(n(1)).unwrap()), &p).unwrap());
        assert!(r.equal(&r.mul(&r.sm(n(1)).unwrap(), &r.sp(n(1))), &r.one()).unwrap());
    }

    #[test]
    fn same_degree_terms_merge() {
        let r = leavitt2();
        let ring = r.ring();
        let b = ring.add(&ring.y(1), &ring.mul(&ring.y(2), &ring.x(1)));
        let ab = r.action().apply(&n(1), &b);
        let x = r.add(&r.term(n(1), ab, n(1)).unwrap(), &r.coeff(b.clone()));
        assert_eq!(x.len(), 1);
        let two_b = ring.add(&b, &b);
        assert!(r.equal(&x, &r.coeff(two_b)).unwrap());
    }

    #[test]
    fn non_injective_zero_test_is_gated() {
        let act = GeneratorAction::uniform(CommutativeMonoid::nat(), IdemQ2, IdemEndo::Collapse);
        let r = SkewRing::new(Arc::new(act)).unwrap();
        let x = r.coeff((q(0), q(1)));
        assert_eq!(r.is_zero(&x), Err(SkewError::Undecidable));
        // arithmetic itself is still available
        assert_eq!(r.mul(&x, &x).len(), 1);
    }

    #[test]
    fn witness_perturbation_gives_equal_products() {
        let r = leavitt2();
        let m = r.monoid().clone();
        let mut rng = trial_rng(5, 0);
        for _ in 0..50 {
            let u = r.sample_term(&mut rng);
            let v = r.sample_term(&mut rng);
            let (w, th) = r.ore(&v.s, &u.t).unwrap();
            let k = m.sample_denominator(&mut rng);
            let (w2, th2) = (m.mul(&k, &w), m.mul(&k, &th));
            let a = r.term_mul(&u, &v);
            let b = r.term_mul_with(&u, &v, &w2, &th2).unwrap();
            assert!(r.equal(&a, &b).unwrap());
        }
        let u = SkewTerm { s: n(0), a: r.ring().one(), t: n(1) };
        assert!(r.term_mul_with(&u, &u, &n(0), &n(0)).is_err());
    }

    #[test]
    fn format_shape() {
        let r = leavitt2();
        let ring = r.ring();
        let x = r.term(n(1), ring.mul(&ring.y(1), &ring.x(2)), n(2)).unwrap();
        assert_eq!(r.format(&x), "sm(1) * (y1*x2) * sp(2)");
        assert_eq!(r.format(&r.one()), "(1)");
    }
}
