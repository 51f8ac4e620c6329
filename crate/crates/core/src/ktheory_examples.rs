//! `ℤ[1/n]`, the map "multiply by `1 − n`" and its kernel and cokernel, plus
//! the trace description of `K₀` for the UHF-type limit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng as _;

use crate::report::{CheckRecord, Report};
use crate::ring::{Uhf, UhfElem};
use crate::sampling::{trial_rng, SampleRng};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KError {
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u64, u64),
    #[error("base must be at least 2, got {0}")]
    BadBase(u64),
    #[error("{0}")]
    NotAProjection(String),
}

/// `num / nᵏ`, canonical when `n ∤ num` or `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedInt {
    num: BigInt,
    k: u32,
    n: u64,
}

impl LocalizedInt {
    pub fn new(num: impl Into<BigInt>, k: u32, n: u64) -> Result<Self, KError> {
        if n < 2 {
            return Err(KError::BadBase(n));
        }
        let (mut num, mut k) = (num.into(), k);
        let base = BigInt::from(n);
        if num.is_zero() {
            k = 0;
        }
        while k > 0 && num.is_multiple_of(&base) {
            num /= &base;
            k -= 1;
        }
        Ok(LocalizedInt { num, k, n })
    }

    pub fn integer(num: impl Into<BigInt>, n: u64) -> Result<Self, KError> {
        Self::new(num, 0, n)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn base(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_base(&self, other: &Self) -> Result<(), KError> {
        if self.n != other.n {
            return Err(KError::BaseMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, KError> {
        self.check_base(other)?;
        let k = self.k.max(other.k);
        let base = BigInt::from(self.n);
        let a = &self.num * base.pow(k - self.k);
        let b = &other.num * base.pow(k - other.k);
        Self::new(a + b, k, self.n)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, KError> {
        self.check_base(other)?;
        Self::new(&self.num * &other.num, self.k + other.k, self.n)
    }

    pub fn neg(&self) -> Self {
        LocalizedInt { num: -&self.num, ..self.clone() }
    }

    pub fn sample(n: u64, rng: &mut SampleRng) -> Self {
        Self::new(rng.gen_range(-50i64..=50), rng.gen_range(0..=3), n).expect("n ≥ 2")
    }
}

impl fmt::Display for LocalizedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::from(self.n).pow(self.k))
        }
    }
}

/// A cyclic group `ℤ/m`, `m ≥ 1`; order 1 is the trivial group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicGroup {
    pub order: u64,
}

impl CyclicGroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "0")
        } else {
            write!(f, "Z/{}", self.order)
        }
    }
}

/// `x ↦ (1 − n)·x` on `ℤ[1/n]`.
pub fn pv_map(n: u64, x: &LocalizedInt) -> Result<LocalizedInt, KError> {
    if x.n != n {
        return Err(KError::BaseMismatch(n, x.n));
    }
    let factor = LocalizedInt::integer(1 - n as i64, n)?;
    factor.mul(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInfo {
    pub group: CyclicGroup,
    /// `1 − n`, a nonzero element of the integral domain `ℤ[1/n]`.
    pub unit: i64,
}

pub fn pv_kernel(n: u64) -> Result<KernelInfo, KError> {
    if n < 2 {
        return Err(KError::BadBase(n));
    }
    Ok(KernelInfo { group: CyclicGroup { order: 1 }, unit: 1 - n as i64 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelInfo {
    pub n: u64,
    pub group: CyclicGroup,
}

impl CokernelInfo {
    /// Class of `x` in `{0, …, n−2}`; `n ≡ 1 (mod n−1)` makes the denominator invisible.
    pub fn class(&self, x: &LocalizedInt) -> Result<u64, KError> {
        if x.n != self.n {
            return Err(KError::BaseMismatch(self.n, x.n));
        }
        let m = BigInt::from(self.group.order);
        Ok(x.num.mod_floor(&m).to_u64().expect("residue fits"))
    }
}

pub fn pv_cokernel(n: u64) -> Result<CokernelInfo, KError> {
    if n < 2 {
        return Err(KError::BadBase(n));
    }
    Ok(CokernelInfo { n, group: CyclicGroup { order: n - 1 } })
}

/// `[p] = trace(p)/nᵏ ∈ ℤ[1/n]` for a projection `p` stored at level `k`.
pub fn k0_class(ring: &Uhf, p: &UhfElem) -> Result<LocalizedInt, KError> {
    use crate::ring::Ring;
    if !ring.equal(&ring.mul(p, p), p) {
        return Err(KError::NotAProjection("element is not idempotent".into()));
    }
    let tr = p.trace();
    if !tr.is_integer() || tr.is_negative() {
        return Err(KError::NotAProjection(format!("trace {tr} is not a rank")));
    }
    LocalizedInt::new(tr.to_integer(), p.level, ring.base())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UhfK0 {
    pub base: u64,
    /// `(level, trace of 1 at that level, class of 1, class of e₁₁)`.
    pub levels: Vec<(u32, BigInt, LocalizedInt, LocalizedInt)>,
}

/// `K₀` of `lim M_{nᵏ}` as `ℤ[1/n]`, with the trace scaling at levels 0..=3.
pub fn k0_uhf(n: u64) -> Result<UhfK0, KError> {
    let ring = Uhf::new(n).map_err(|_| KError::BadBase(n))?;
    let mut levels = Vec::new();
    for k in 0..=3u32 {
        let size = ring.size(k);
        let mut one = UhfElem { level: k, entries: Default::default() };
        for i in 0..size {
            one.entries.insert((i, i), crate::ring::q(1));
        }
        let trace = one.trace().to_integer();
        let one = ring.normalize(one);
        let unit = ring.unit(k, 0, 0);
        levels.push((k, trace, k0_class(&ring, &one)?, k0_class(&ring, &unit)?));
    }
    Ok(UhfK0 { base: n, levels })
}

/// Values and sampled checks behind `ktheory <n>`.
pub fn ktheory_report(n: u64, seed: u64, trials: usize, report: &mut Report) -> Result<(), KError> {
    let ker = pv_kernel(n)?;
    let coker = pv_cokernel(n)?;
    report.value(format!("ktheory {n} map"), format!("multiplication by {} on Z[1/{n}]", ker.unit));
    report.value(format!("ktheory {n} kernel"), ker.group.to_string());
    report.value(format!("ktheory {n} cokernel"), coker.group.to_string());
    report.value(
        format!("ktheory {n} conclusion"),
        format!(
            "K0 = {}, K1 = 0 (K1 of the stabilized algebra is an input assumption)",
            coker.group
        ),
    );

    let mut linear = CheckRecord::new(format!("ktheory {n} map linear"), "(1−n)(x+y) = (1−n)x + (1−n)y");
    let mut injective = CheckRecord::new(format!("ktheory {n} kernel trivial"), "x ≠ 0 ⟹ (1−n)x ≠ 0");
    let mut image = CheckRecord::new(format!("ktheory {n} image is the zero class"), "class((1−n)y) = 0");
    let mut hom = CheckRecord::new(format!("ktheory {n} class map additive"), "class(x+y) = class(x)+class(y) mod n−1");
    let mut lift = CheckRecord::new(format!("ktheory {n} zero class lies in the image"), "class(x) = 0 ⟹ x = (1−n)y");
    let m = coker.group.order;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed ^ n, t);
        let x = LocalizedInt::sample(n, &mut rng);
        let y = LocalizedInt::sample(n, &mut rng);
        let fx = pv_map(n, &x)?;
        let fy = pv_map(n, &y)?;
        let sum = x.add(&y)?;
        linear.record(pv_map(n, &sum)? == fx.add(&fy)?, || format!("x = {x}, y = {y}"));
        injective.record(x.is_zero() || !fx.is_zero(), || format!("x = {x}"));
        image.record(coker.class(&fy)? == 0, || format!("y = {y}"));
        hom.record(coker.class(&sum)? == (coker.class(&x)? + coker.class(&y)?) % m, || format!("x = {x}, y = {y}"));
        // x − class(x) has class 0; divide it by 1 − n
        let r = LocalizedInt::integer(coker.class(&x)?, n)?;
        let z = x.add(&r.neg())?;
        let q = (-z.numerator()).div_floor(&BigInt::from(m));
        let pre = LocalizedInt::new(q, z.exponent(), n)?;
        lift.record(pv_map(n, &pre)? == z, || format!("x = {x}"));
    }
    let mut surj = CheckRecord::new(format!("ktheory {n} classes"), "every r in 0..n−2 is the class of the integer r");
    for r in 0..m {
        surj.record(coker.class(&LocalizedInt::integer(r, n)?)? == r, || format!("r = {r}"));
    }
    report.checks([linear, injective, image, hom, lift, surj]);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest `r ≥ 0` with `(n−1) | (num − r·nᵏ)`, by search.
    fn brute_residue(n: u64, x: &LocalizedInt) -> u64 {
        let m = BigInt::from(n - 1);
        let scale = BigInt::from(n).pow(x.exponent());
        (0..n - 1)
            .find(|&r| (x.numerator() - BigInt::from(r) * &scale).is_multiple_of(&m))
            .expect("some residue works")
    }

    #[test]
    fn map_examples() {
        let x = LocalizedInt::integer(1, 2).unwrap();
        assert_eq!(pv_map(2, &x).unwrap().to_string(), "-1");
        let x = LocalizedInt::new(1, 1, 3).unwrap();
        assert_eq!(pv_map(3, &x).unwrap().to_string(), "-2/3");
        let x = LocalizedInt::new(7, 2, 5).unwrap();
        assert_eq!(pv_map(5, &x).unwrap().to_string(), "-28/25");
        assert_eq!(pv_map(3, &LocalizedInt::integer(1, 2).unwrap()), Err(KError::BaseMismatch(3, 2)));
    }

    #[test]
    fn canonical_form() {
        let x = LocalizedInt::new(12, 2, 2).unwrap();
        assert_eq!((x.numerator().clone(), x.exponent()), (BigInt::from(3), 0));
        assert_eq!(LocalizedInt::new(0, 5, 3).unwrap().exponent(), 0);
    }

    #[test]
    fn cokernel_against_brute_force() {
        for n in 2..=10 {
            let c = pv_cokernel(n).unwrap();
            assert_eq!(c.group.order, n - 1);
            assert!(pv_kernel(n).unwrap().group.is_trivial());
            for t in 0..200 {
                let mut rng = trial_rng(n, t);
                let x = LocalizedInt::sample(n, &mut rng);
                assert_eq!(c.class(&x).unwrap(), brute_residue(n, &x), "n = {n}, x = {x}");
            }
        }
        assert!(pv_cokernel(2).unwrap().group.is_trivial());
    }

    #[test]
    fn uhf_traces_scale() {
        for n in 2..=4 {
            let k0 = k0_uhf(n).unwrap();
            for (k, trace, one, unit) in &k0.levels {
                assert_eq!(*trace, BigInt::from(n).pow(*k));
                assert_eq!(*one, LocalizedInt::integer(1, n).unwrap());
                assert_eq!(*unit, LocalizedInt::new(1, *k, n).unwrap());
            }
        }
        let r = Uhf::new(2).unwrap();
        assert!(k0_class(&r, &r.parse_atom_for_test("lvl1[0,1=1]")).is_err());
    }

    #[test]
    fn report_checks_pass() {
        for n in [2, 3, 10] {
            let mut rep = Report::new(4, 100);
            ktheory_report(n, 4, 100, &mut rep).unwrap();
            assert!(rep.all_passed(), "{}", rep.render_text());
        }
    }

    impl Uhf {
        fn parse_atom_for_test(&self, s: &str) -> UhfElem {
            crate::ring::Notation::parse_atom(self, s).unwrap()
        }
    }
}
