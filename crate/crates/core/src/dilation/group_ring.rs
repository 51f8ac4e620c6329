//! The skew group ring `(S⁻¹B) ∗_α̂ G` over `G = S⁻¹S`.

use std::collections::BTreeMap;

use crate::monoid::{canonical, fraction_mul, Fraction, OreMonoid};
use crate::ring::{Action, MonoidElem, Notation, Ring};

use super::fraction::{FracOf, FracRing};

/// `Σ c_g·u_g`, keys are canonical group elements, no zero coefficients.
#[derive(Clone, Debug)]
pub struct GroupElem<E, C> {
    terms: BTreeMap<Fraction<E>, C>,
}

impl<E: Ord, C> GroupElem<E, C> {
    pub fn terms(&self) -> impl Iterator<Item = (&Fraction<E>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub type GroupOf<B> = GroupElem<MonoidElem<B>, FracOf<B>>;
pub type GroupKey<B> = Fraction<MonoidElem<B>>;

pub struct GroupRing<B: Action> {
    frac: FracRing<B>,
}

impl<B: Action> GroupRing<B> {
    pub fn new(frac: FracRing<B>) -> Self {
        GroupRing { frac }
    }

    pub fn frac(&self) -> &FracRing<B> {
        &self.frac
    }

    fn monoid(&self) -> &B::Monoid {
        self.frac.action().monoid()
    }

    pub fn key(&self, g: &GroupKey<B>) -> GroupKey<B> {
        canonical(self.monoid(), g)
    }

    pub fn identity_key(&self) -> GroupKey<B> {
        let one = self.monoid().identity();
        Fraction::new(one.clone(), one)
    }

    pub fn zero(&self) -> GroupOf<B> {
        GroupElem { terms: BTreeMap::new() }
    }

    /// `c·u_g`.
    pub fn single(&self, g: &GroupKey<B>, c: FracOf<B>) -> GroupOf<B> {
        let mut out = self.zero();
        self.insert(&mut out, self.key(g), c);
        out
    }

    fn insert(&self, out: &mut GroupOf<B>, g: GroupKey<B>, c: FracOf<B>) {
        let merged = match out.terms.remove(&g) {
            Some(d) => self.frac.add(&d, &c),
            None => c,
        };
        if !self.frac.is_zero(&merged) {
            out.terms.insert(g, merged);
        }
    }

    pub fn add(&self, x: &GroupOf<B>, y: &GroupOf<B>) -> GroupOf<B> {
        let mut out = x.clone();
        for (g, c) in &y.terms {
            self.insert(&mut out, g.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, x: &GroupOf<B>) -> GroupOf<B> {
        GroupElem { terms: x.terms.iter().map(|(g, c)| (g.clone(), self.frac.neg(c))).collect() }
    }

    pub fn sub(&self, x: &GroupOf<B>, y: &GroupOf<B>) -> GroupOf<B> {
        self.add(x, &self.neg(y))
    }

    /// `(b·u_g)(c·u_h) = b·α̂_g(c)·u_{gh}`.
    pub fn mul(&self, x: &GroupOf<B>, y: &GroupOf<B>) -> GroupOf<B> {
        let mut out = self.zero();
        for (g, b) in &x.terms {
            for (h, c) in &y.terms {
                let coef = self.frac.mul(b, &self.frac.hat_alpha_group(g, c));
                let gh = fraction_mul(self.monoid(), g, h).expect("S = T is a group of fractions");
                self.insert(&mut out, self.key(&gh), coef);
            }
        }
        out
    }

    pub fn is_zero(&self, x: &GroupOf<B>) -> bool {
        x.terms.is_empty()
    }

    pub fn equal(&self, x: &GroupOf<B>, y: &GroupOf<B>) -> bool {
        self.is_zero(&self.sub(x, y))
    }

    /// Coefficient at `g` (zero if absent).
    pub fn coeff(&self, x: &GroupOf<B>, g: &GroupKey<B>) -> FracOf<B> {
        x.terms.get(&self.key(g)).cloned().unwrap_or_else(|| self.frac.zero())
    }
}

impl<B: Action> GroupRing<B>
where
    B::Ring: Notation,
{
    pub fn format(&self, x: &GroupOf<B>) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let m = self.monoid();
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(g, c)| {
                format!("{} u[{}^-1 {}]", self.frac.format(c), m.format_elem(&g.den), m.format_elem(&g.num))
            })
            .collect();
        parts.join(" + ")
    }
}
