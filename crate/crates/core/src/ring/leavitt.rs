//! The Leavitt algebra `L_n` over `ℚ`: generators `x_i, y_i` with
//! `x_i y_j = δ_ij` and `Σ y_i x_i = 1`.
//!
//! Normal form: linear combinations of `y_u x_v` avoiding the central pair
//! `y_n x_n`, which is rewritten to `1 − Σ_{i<n} y_i x_i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng as _;

use super::{
    format_q, parse_q, small_q, ActionFlags, Endomorphism, Notation, Q, Ring, RingError,
    SampleRing, UnitalRing,
};
use crate::sampling::SampleRng;

/// `y_{u₁}…y_{u_k} x_{v₁}…x_{v_m}`, letters `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub y: Vec<u8>,
    pub x: Vec<u8>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn len(&self) -> usize {
        self.y.len() + self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeavittElem(pub BTreeMap<Monomial, Q>);

impl LeavittElem {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.0.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leavitt {
    n: u8,
}

impl Leavitt {
    pub fn new(n: u64) -> Result<Self, RingError> {
        if !(2..=255).contains(&n) {
            return Err(RingError::BadParameters("leavitt".into(), "2 ≤ n ≤ 255".into()));
        }
        Ok(Leavitt { n: n as u8 })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn x(&self, i: u8) -> LeavittElem {
        assert!((1..=self.n).contains(&i));
        self.monomial(Monomial { y: vec![], x: vec![i] })
    }

    pub fn y(&self, i: u8) -> LeavittElem {
        assert!((1..=self.n).contains(&i));
        self.monomial(Monomial { y: vec![i], x: vec![] })
    }

    /// A monomial, rewritten into normal form.
    pub fn monomial(&self, m: Monomial) -> LeavittElem {
        let mut out = BTreeMap::new();
        self.expand_into(m, Q::one(), &mut out);
        out.retain(|_, v| !v.is_zero());
        LeavittElem(out)
    }

    fn expand_into(&self, mut m: Monomial, c: Q, out: &mut BTreeMap<Monomial, Q>) {
        let n = self.n;
        if m.y.last() == Some(&n) && m.x.first() == Some(&n) {
            m.y.pop();
            m.x.remove(0);
            for i in 1..n {
                let mut y = m.y.clone();
                y.push(i);
                let mut x = vec![i];
                x.extend_from_slice(&m.x);
                *out.entry(Monomial { y, x }).or_insert_with(Q::zero) -= &c;
            }
            self.expand_into(m, c, out);
        } else {
            *out.entry(m).or_insert_with(Q::zero) += c;
        }
    }

    /// Product of two normal monomials, or `None` when it vanishes.
    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let (mut ax, mut by) = (a.x.as_slice(), b.y.as_slice());
        while let (Some((&l, ax_rest)), Some((&r, by_rest))) = (ax.split_last(), by.split_first()) {
            if l != r {
                return None;
            }
            ax = ax_rest;
            by = by_rest;
        }
        let mut y = a.y.clone();
        y.extend_from_slice(by);
        let mut x = ax.to_vec();
        x.extend_from_slice(&b.x);
        Some(Monomial { y, x })
    }

    fn format_monomial(m: &Monomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        let letters: Vec<String> = m
            .y
            .iter()
            .map(|i| format!("y{i}"))
            .chain(m.x.iter().map(|i| format!("x{i}")))
            .collect();
        letters.join("*")
    }
}

impl Ring for Leavitt {
    type Elem = LeavittElem;

    fn zero(&self) -> LeavittElem {
        LeavittElem::default()
    }

    fn add(&self, a: &LeavittElem, b: &LeavittElem) -> LeavittElem {
        let mut out = a.0.clone();
        for (m, c) in &b.0 {
            *out.entry(m.clone()).or_insert_with(Q::zero) += c;
        }
        out.retain(|_, v| !v.is_zero());
        LeavittElem(out)
    }

    fn neg(&self, a: &LeavittElem) -> LeavittElem {
        LeavittElem(a.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    fn mul(&self, a: &LeavittElem, b: &LeavittElem) -> LeavittElem {
        let mut out = BTreeMap::new();
        for (ma, ca) in &a.0 {
            for (mb, cb) in &b.0 {
                if let Some(m) = self.mul_monomials(ma, mb) {
                    self.expand_into(m, ca * cb, &mut out);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        LeavittElem(out)
    }

    fn equal(&self, a: &LeavittElem, b: &LeavittElem) -> bool {
        a == b
    }
}

impl UnitalRing for Leavitt {
    fn one(&self) -> LeavittElem {
        self.monomial(Monomial::one())
    }
}

impl Notation for Leavitt {
    fn format(&self, a: &LeavittElem) -> String {
        if a.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.0.iter().enumerate() {
            let word = Self::format_monomial(m);
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if abs.is_one() {
                out.push_str(&word);
            } else if m.is_empty() {
                out.push_str(&format_q(&abs));
            } else {
                out.push_str(&format!("{}*{}", format_q(&abs), word));
            }
        }
        out
    }

    /// `x<i>`, `y<i>` or a rational scalar.
    fn parse_atom(&self, s: &str) -> Result<LeavittElem, RingError> {
        let bad = || RingError::Parse(s.into(), self.describe());
        if let Some(c) = parse_q(s) {
            return Ok(self.scale(&c, &self.one()));
        }
        let (kind, idx) = s.split_at(1.min(s.len()));
        let i: u8 = idx.parse().map_err(|_| bad())?;
        if !(1..=self.n).contains(&i) {
            return Err(bad());
        }
        match kind {
            "x" => Ok(self.x(i)),
            "y" => Ok(self.y(i)),
            _ => Err(bad()),
        }
    }

    fn describe(&self) -> String {
        format!("L_{}", self.n)
    }
}

impl Leavitt {
    pub fn scale(&self, c: &Q, a: &LeavittElem) -> LeavittElem {
        let mut out: BTreeMap<Monomial, Q> = a.0.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out.retain(|_, v| !v.is_zero());
        LeavittElem(out)
    }
}

impl SampleRing for Leavitt {
    /// Up to three terms, each a product of at most three generators.
    fn sample(&self, rng: &mut SampleRng) -> LeavittElem {
        let mut out = self.zero();
        for _ in 0..rng.gen_range(1..=3) {
            let mut w = self.one();
            for _ in 0..rng.gen_range(0..=3) {
                let i = rng.gen_range(1..=self.n);
                let g = if rng.gen_bool(0.5) { self.x(i) } else { self.y(i) };
                w = self.mul(&w, &g);
            }
            out = self.add(&out, &self.scale(&small_q(rng), &w));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeavittEndo {
    /// `a ↦ Σ y_i a x_i`: unital, injective, not surjective.
    Diagonal,
    Identity,
}

impl Endomorphism<Leavitt> for LeavittEndo {
    fn apply(&self, ring: &Leavitt, a: &LeavittElem) -> LeavittElem {
        match self {
            LeavittEndo::Identity => a.clone(),
            LeavittEndo::Diagonal => {
                let mut out = BTreeMap::new();
                for i in 1..=ring.n {
                    for (m, c) in &a.0 {
                        let mut y = vec![i];
                        y.extend_from_slice(&m.y);
                        let mut x = m.x.clone();
                        x.push(i);
                        ring.expand_into(Monomial { y, x }, c.clone(), &mut out);
                    }
                }
                out.retain(|_, v| !v.is_zero());
                LeavittElem(out)
            }
        }
    }

    fn flags(&self) -> ActionFlags {
        match self {
            LeavittEndo::Diagonal => ActionFlags { injective: true, unital: true, corner_iso: false },
            LeavittEndo::Identity => ActionFlags { injective: true, unital: true, corner_iso: true },
        }
    }

    /// `α(b) = a` forces `b = x₁ a y₁`, so that candidate decides membership.
    fn preimage(&self, ring: &Leavitt, a: &LeavittElem) -> Result<Option<LeavittElem>, RingError> {
        match self {
            LeavittEndo::Identity => Ok(Some(a.clone())),
            LeavittEndo::Diagonal => {
                let b = ring.mul(&ring.mul(&ring.x(1), a), &ring.y(1));
                Ok((self.apply(ring, &b) == *a).then_some(b))
            }
        }
    }

    fn name(&self) -> String {
        match self {
            LeavittEndo::Diagonal => "diagonal".into(),
            LeavittEndo::Identity => "identity".into(),
        }
    }
}
