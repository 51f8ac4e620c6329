//! The homomorphism `Φ: S^op ∗_α A ∗_α S → e·((S⁻¹(S₋AS₊)) ∗_α̂ G)·e` and its inverse.

use std::sync::Arc;

use crate::monoid::{Fraction, OreMonoid};
use crate::ring::{Action, RingError};
use crate::skewring::{Elem, SkewError, SkewRing, Term};

use super::fraction::{FracOf, FracRing};
use super::group_ring::{GroupOf, GroupRing};
use super::limit::{BarAction, LimRing};

pub struct Dilation<A: Action> {
    skew: SkewRing<A>,
    bar: Arc<BarAction<A>>,
    group: GroupRing<BarAction<A>>,
}

impl<A: Action> Dilation<A> {
    /// Needs a cancellative monoid with `S = T` and an injective action;
    /// non-injective actions go through the kernel quotient first.
    pub fn new(action: Arc<A>) -> Result<Self, SkewError> {
        let bar = Arc::new(BarAction::new(action.clone())?);
        let frac = FracRing::new(bar.clone())?;
        Ok(Dilation { skew: SkewRing::new(action)?, bar, group: GroupRing::new(frac) })
    }

    pub fn skew(&self) -> &SkewRing<A> {
        &self.skew
    }

    pub fn bar(&self) -> &Arc<BarAction<A>> {
        &self.bar
    }

    pub fn lim(&self) -> &LimRing<A> {
        self.bar.ring()
    }

    pub fn frac(&self) -> &FracRing<BarAction<A>> {
        self.group.frac()
    }

    pub fn group(&self) -> &GroupRing<BarAction<A>> {
        &self.group
    }

    pub fn e(&self) -> FracOf<BarAction<A>> {
        self.frac().e()
    }

    /// `e·u_1`, the corner idempotent of the group ring.
    pub fn e_group(&self) -> GroupOf<BarAction<A>> {
        self.group.single(&self.group.identity_key(), self.e())
    }

    pub fn unital(&self) -> bool {
        self.skew.action().flags().unital
    }

    /// `Φ(s₋·a·t₊) = (e·u_{s⁻¹})·([1,[1,a]]·u_1)·(α̂_t(e)·u_t)`.
    pub fn phi_term(&self, x: &Term<A>) -> GroupOf<BarAction<A>> {
        let m = self.skew.monoid();
        let one = m.identity();
        let g = &self.group;
        let frac = self.frac();
        let left = g.single(&Fraction::new(x.s.clone(), one.clone()), self.e());
        let mid = g.single(&g.identity_key(), frac.embed(&self.lim().embed(&x.a)));
        let right = g.single(&Fraction::new(one, x.t.clone()), frac.hat_alpha(&x.t, &self.e()));
        g.mul(&g.mul(&left, &mid), &right)
    }

    pub fn phi(&self, x: &Elem<A>) -> GroupOf<BarAction<A>> {
        x.terms().fold(self.group.zero(), |acc, (_, t)| self.group.add(&acc, &self.phi_term(t)))
    }

    /// Inverse of `Φ` on the corner. For `c·u_g` with `g = s⁻¹t`, write
    /// `α̂_s(c) = [r, b]`, take `[t_d, a_d] = ᾱ_r⁻¹(b)` and return
    /// `(t_d s)₋·a_d·(t_d t)₊`.
    pub fn psi(&self, y: &GroupOf<BarAction<A>>) -> Result<Elem<A>, SkewError> {
        let m = self.skew.monoid();
        let mut out = self.skew.zero();
        for (g, c) in y.terms() {
            let lifted = self.frac().hat_alpha(&g.den, c);
            let d = self.bar.preimage(&lifted.s, &lifted.a)?.ok_or_else(|| {
                SkewError::Ring(RingError::Unsupported(
                    "element is not in the corner e·(S⁻¹B ∗ G)·e".into(),
                ))
            })?;
            let term = self.skew.term(m.mul(&d.t, &g.den), d.a, m.mul(&d.t, &g.num))?;
            out = self.skew.add(&out, &term);
        }
        Ok(out)
    }

    /// `e·y·e`.
    pub fn compress(&self, y: &GroupOf<BarAction<A>>) -> GroupOf<BarAction<A>> {
        let e = self.e_group();
        self.group.mul(&self.group.mul(&e, y), &e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::NatVec;
    use crate::monoid::CommutativeMonoid;
    use crate::ring::{GeneratorAction, Leavitt, LeavittEndo, Uhf, UhfEndo};
    use crate::sampling::trial_rng;

    fn n(k: u32) -> NatVec {
        NatVec(vec![k])
    }

    #[test]
    fn generator_images() {
        let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Uhf::new(2).unwrap(), UhfEndo::Corner));
        let d = Dilation::new(act.clone()).unwrap();
        let r = d.skew();
        let g = d.group();
        assert!(g.equal(&d.phi(&r.one()), &d.e_group()));
        let sm = d.phi(&r.sm(n(1)).unwrap());
        let sp = d.phi(&r.sp(n(1)));
        assert!(g.equal(&g.mul(&sm, &sp), &d.e_group()));
        let p = d.phi(&r.coeff(act.idempotent(&n(1))));
        assert!(g.equal(&g.mul(&sp, &sm), &p));
        assert!(!g.equal(&p, &d.e_group()));
    }

    #[test]
    fn round_trip_leavitt() {
        let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Leavitt::new(2).unwrap(), LeavittEndo::Diagonal));
        let d = Dilation::new(act).unwrap();
        let r = d.skew();
        let mut rng = trial_rng(21, 0);
        for _ in 0..20 {
            let x = r.sample(&mut rng);
            let y = d.phi(&x);
            let back = d.psi(&y).unwrap();
            assert!(r.equal(&back, &x).unwrap(), "{} vs {}", r.format(&back), r.format(&x));
        }
    }
}
