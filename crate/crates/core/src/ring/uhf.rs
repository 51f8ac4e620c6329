//! The direct limit `lim M_{nᵏ}(ℚ)` along the unital embeddings `a ↦ 1ₙ ⊗ a`.
//!
//! Elements are stored at the smallest level they live on, so equal limit
//! elements have identical representations. Matrices are sparse: the corner
//! endomorphism `a ↦ a ⊗ e₁₁` raises the level without adding entries.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng as _;

use super::{
    format_q, parse_q, small_q, ActionFlags, Endomorphism, Notation, Q, Ring, RingError,
    SampleRing, UnitalRing,
};
use crate::sampling::SampleRng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UhfElem {
    pub level: u32,
    /// `(row, col) ↦ entry`, 0-based, no zero entries.
    pub entries: BTreeMap<(u64, u64), Q>,
}

impl UhfElem {
    pub fn scalar(c: Q) -> Self {
        let mut entries = BTreeMap::new();
        if !c.is_zero() {
            entries.insert((0, 0), c);
        }
        UhfElem { level: 0, entries }
    }

    pub fn trace(&self) -> Q {
        self.entries.iter().filter(|((r, c), _)| r == c).fold(Q::zero(), |acc, (_, v)| acc + v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uhf {
    n: u64,
}

impl Uhf {
    pub fn new(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::BadParameters("uhf".into(), "n ≥ 2".into()));
        }
        Ok(Uhf { n })
    }

    pub fn base(&self) -> u64 {
        self.n
    }

    pub fn size(&self, level: u32) -> u64 {
        self.n.pow(level)
    }

    /// Matrix unit `e_{ij}` at `level` (0-based indices).
    pub fn unit(&self, level: u32, i: u64, j: u64) -> UhfElem {
        assert!(i < self.size(level) && j < self.size(level));
        let mut entries = BTreeMap::new();
        entries.insert((i, j), Q::one());
        self.normalize(UhfElem { level, entries })
    }

    /// One step of the connecting map `a ↦ 1ₙ ⊗ a`.
    fn embed_once(&self, a: &UhfElem) -> UhfElem {
        let m = self.size(a.level);
        let mut entries = BTreeMap::new();
        for i in 0..self.n {
            for ((r, c), v) in &a.entries {
                entries.insert((i * m + r, i * m + c), v.clone());
            }
        }
        UhfElem { level: a.level + 1, entries }
    }

    /// Representation of `a` at a higher level.
    pub fn lift(&self, a: &UhfElem, level: u32) -> UhfElem {
        assert!(level >= a.level);
        let mut out = a.clone();
        while out.level < level {
            out = self.embed_once(&out);
        }
        out
    }

    /// Pulls `a` down while it has the form `1ₙ ⊗ b`.
    pub fn normalize(&self, mut a: UhfElem) -> UhfElem {
        a.entries.retain(|_, v| !v.is_zero());
        if a.entries.is_empty() {
            a.level = 0;
            return a;
        }
        while a.level > 0 {
            let m = self.size(a.level - 1);
            let mut blocks: Vec<BTreeMap<(u64, u64), Q>> = vec![BTreeMap::new(); self.n as usize];
            let mut ok = true;
            for ((r, c), v) in &a.entries {
                let (bi, bj) = (r / m, c / m);
                if bi != bj {
                    ok = false;
                    break;
                }
                blocks[bi as usize].insert((r % m, c % m), v.clone());
            }
            if !ok || blocks.windows(2).any(|w| w[0] != w[1]) {
                break;
            }
            let inner = blocks.swap_remove(0);
            a = UhfElem { level: a.level - 1, entries: inner };
        }
        a
    }

    fn common(&self, a: &UhfElem, b: &UhfElem) -> (UhfElem, UhfElem) {
        let level = a.level.max(b.level);
        (self.lift(a, level), self.lift(b, level))
    }
}

impl Ring for Uhf {
    type Elem = UhfElem;

    fn zero(&self) -> UhfElem {
        UhfElem { level: 0, entries: BTreeMap::new() }
    }

    fn add(&self, a: &UhfElem, b: &UhfElem) -> UhfElem {
        let (mut x, y) = self.common(a, b);
        for (k, v) in y.entries {
            *x.entries.entry(k).or_insert_with(Q::zero) += v;
        }
        self.normalize(x)
    }

    fn neg(&self, a: &UhfElem) -> UhfElem {
        UhfElem { level: a.level, entries: a.entries.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    fn mul(&self, a: &UhfElem, b: &UhfElem) -> UhfElem {
        let (x, y) = self.common(a, b);
        let mut rows: BTreeMap<u64, Vec<(u64, &Q)>> = BTreeMap::new();
        for ((r, c), v) in &y.entries {
            rows.entry(*r).or_default().push((*c, v));
        }
        let mut entries: BTreeMap<(u64, u64), Q> = BTreeMap::new();
        for ((r, k), v) in &x.entries {
            if let Some(row) = rows.get(k) {
                for (c, w) in row {
                    *entries.entry((*r, *c)).or_insert_with(Q::zero) += v * *w;
                }
            }
        }
        self.normalize(UhfElem { level: x.level, entries })
    }

    fn equal(&self, a: &UhfElem, b: &UhfElem) -> bool {
        a == b
    }
}

impl UnitalRing for Uhf {
    fn one(&self) -> UhfElem {
        UhfElem::scalar(Q::one())
    }
}

impl Notation for Uhf {
    fn format(&self, a: &UhfElem) -> String {
        if a.level == 0 {
            return format_q(a.entries.get(&(0, 0)).unwrap_or(&Q::zero()));
        }
        let parts: Vec<String> =
            a.entries.iter().map(|((r, c), v)| format!("{r},{c}={}", format_q(v))).collect();
        format!("lvl{}[{}]", a.level, parts.join(";"))
    }

    /// `e<i><j>` (1-based level-one unit), `lvl<k>[r,c=q;…]` (0-based) or a scalar.
    fn parse_atom(&self, s: &str) -> Result<UhfElem, RingError> {
        let bad = || RingError::Parse(s.into(), self.describe());
        if let Some(c) = parse_q(s) {
            return Ok(UhfElem::scalar(c));
        }
        if let Some(rest) = s.strip_prefix('e') {
            let d: Vec<u64> =
                rest.chars().map(|c| c.to_digit(10).map(u64::from)).collect::<Option<_>>().ok_or_else(bad)?;
            if let [i, j] = d[..] {
                if (1..=self.n).contains(&i) && (1..=self.n).contains(&j) {
                    return Ok(self.unit(1, i - 1, j - 1));
                }
            }
            return Err(bad());
        }
        let rest = s.strip_prefix("lvl").ok_or_else(bad)?;
        let (lvl, body) = rest.split_once('[').ok_or_else(bad)?;
        let level: u32 = lvl.parse().map_err(|_| bad())?;
        let body = body.strip_suffix(']').ok_or_else(bad)?;
        let size = self.size(level);
        let mut entries = BTreeMap::new();
        for item in body.split(';').filter(|p| !p.trim().is_empty()) {
            let (pos, val) = item.split_once('=').ok_or_else(bad)?;
            let (r, c) = pos.split_once(',').ok_or_else(bad)?;
            let r: u64 = r.trim().parse().map_err(|_| bad())?;
            let c: u64 = c.trim().parse().map_err(|_| bad())?;
            if r >= size || c >= size {
                return Err(bad());
            }
            entries.insert((r, c), parse_q(val).ok_or_else(bad)?);
        }
        Ok(self.normalize(UhfElem { level, entries }))
    }

    fn describe(&self) -> String {
        format!("lim M_{}^k(Q)", self.n)
    }
}

impl SampleRing for Uhf {
    fn sample(&self, rng: &mut SampleRng) -> UhfElem {
        let level = rng.gen_range(0..=2);
        let size = self.size(level);
        let mut entries = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            let v = small_q(rng);
            entries.insert((rng.gen_range(0..size), rng.gen_range(0..size)), v);
        }
        self.normalize(UhfElem { level, entries })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UhfEndo {
    /// `a ↦ a ⊗ e₁₁`, a corner isomorphism onto `p·A·p` with `p = 1 ⊗ e₁₁`.
    Corner,
    Identity,
}

impl Endomorphism<Uhf> for UhfEndo {
    fn apply(&self, ring: &Uhf, a: &UhfElem) -> UhfElem {
        match self {
            UhfEndo::Identity => a.clone(),
            UhfEndo::Corner => {
                let n = ring.n;
                let entries = a.entries.iter().map(|((r, c), v)| ((r * n, c * n), v.clone())).collect();
                ring.normalize(UhfElem { level: a.level + 1, entries })
            }
        }
    }

    fn flags(&self) -> ActionFlags {
        match self {
            UhfEndo::Corner => ActionFlags { injective: true, unital: false, corner_iso: true },
            UhfEndo::Identity => ActionFlags { injective: true, unital: true, corner_iso: true },
        }
    }

    fn preimage(&self, ring: &Uhf, a: &UhfElem) -> Result<Option<UhfElem>, RingError> {
        match self {
            UhfEndo::Identity => Ok(Some(a.clone())),
            UhfEndo::Corner => {
                let n = ring.n;
                let x = ring.lift(a, a.level.max(1));
                if x.entries.keys().any(|(r, c)| r % n != 0 || c % n != 0) {
                    return Ok(None);
                }
                let entries = x.entries.iter().map(|((r, c), v)| ((r / n, c / n), v.clone())).collect();
                Ok(Some(ring.normalize(UhfElem { level: x.level - 1, entries })))
            }
        }
    }

    fn name(&self) -> String {
        match self {
            UhfEndo::Corner => "corner".into(),
            UhfEndo::Identity => "identity".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn dense(ring: &Uhf, a: &UhfElem, level: u32) -> Vec<Vec<Q>> {
        let x = ring.lift(a, level);
        let size = ring.size(level) as usize;
        let mut m = vec![vec![Q::zero(); size]; size];
        for ((r, c), v) in &x.entries {
            m[*r as usize][*c as usize] = v.clone();
        }
        m
    }

    #[test]
    fn pushforward_is_block_diagonal() {
        let r = Uhf::new(2).unwrap();
        let a = r.parse_atom("lvl1[0,0=1;0,1=2;1,1=-1]").unwrap();
        // diag(a, a) at level 2 is the same limit element as a at level 1
        let diag = r.parse_atom("lvl2[0,0=1;0,1=2;1,1=-1;2,2=1;2,3=2;3,3=-1]").unwrap();
        assert!(r.equal(&a, &diag));
        assert_eq!(diag.level, 1);
    }

    #[test]
    fn products_match_dense_multiplication() {
        let r = Uhf::new(2).unwrap();
        let mut rng = crate::sampling::trial_rng(3, 0);
        for _ in 0..40 {
            let a = r.sample(&mut rng);
            let b = r.sample(&mut rng);
            let level = a.level.max(b.level);
            let (da, db) = (dense(&r, &a, level), dense(&r, &b, level));
            let size = da.len();
            let mut prod = vec![vec![Q::zero(); size]; size];
            for i in 0..size {
                for k in 0..size {
                    for j in 0..size {
                        prod[i][j] += &da[i][k] * &db[k][j];
                    }
                }
            }
            assert_eq!(dense(&r, &r.mul(&a, &b), level), prod);
        }
    }

    #[test]
    fn corner_endo_image_is_the_corner() {
        let r = Uhf::new(2).unwrap();
        let f = UhfEndo::Corner;
        let p = f.apply(&r, &r.one());
        assert_eq!(r.format(&p), "lvl1[0,0=1]");
        assert!(!r.equal(&p, &r.one()));
        let mut rng = crate::sampling::trial_rng(4, 0);
        for _ in 0..50 {
            let a = r.sample(&mut rng);
            let fa = f.apply(&r, &a);
            assert!(r.equal(&r.mul(&r.mul(&p, &fa), &p), &fa));
            assert_eq!(f.preimage(&r, &fa).unwrap().unwrap(), a);
            let b = r.sample(&mut rng);
            let pbp = r.mul(&r.mul(&p, &b), &p);
            let pre = f.preimage(&r, &pbp).unwrap().unwrap();
            assert!(r.equal(&f.apply(&r, &pre), &pbp));
            assert_eq!(f.apply(&r, &r.mul(&a, &b)), r.mul(&fa, &f.apply(&r, &b)));
        }
        assert_eq!(f.preimage(&r, &r.one()).unwrap(), None);
    }

    #[test]
    fn scalars_and_units_parse() {
        let r = Uhf::new(3).unwrap();
        assert_eq!(r.parse_atom("2").unwrap(), UhfElem::scalar(q(2)));
        let e = r.parse_atom("e23").unwrap();
        assert_eq!(r.format(&e), "lvl1[1,2=1]");
        assert_eq!(r.parse_atom(&r.format(&e)).unwrap(), e);
        assert!(r.parse_atom("lvl1[3,0=1]").is_err());
    }
}
