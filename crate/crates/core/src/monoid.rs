//! Left Ore monoids, Ore witnesses and the monoid of left fractions `S⁻¹T`.
//!
//! A monoid `T` is paired with a denominator submonoid `S ⊆ T`. The solver
//! [`OreMonoid::ore_witness`] is the only source of common left multiples;
//! nothing in this crate searches for witnesses.

use std::fmt;
use std::hash::Hash;

use rand::Rng as _;

use crate::sampling::SampleRng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("Ore solver contract violated: {0}")]
    ContractViolation(String),
    #[error("monoid `{name}` is not left Ore: {reason}")]
    NotOre { name: String, reason: String },
    #[error("unknown monoid `{0}`")]
    Unknown(String),
    #[error("bad parameters for monoid `{0}`: {1}")]
    BadParameters(String, String),
    #[error("{0} is not in the denominator submonoid")]
    NotDenominator(String),
    #[error("{0}")]
    Unsupported(String),
}

/// A monoid `T` with a denominator submonoid `S` satisfying the left
/// denominator conditions.
pub trait OreMonoid: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Membership in `S`.
    fn is_denominator(&self, x: &Self::Elem) -> bool {
        let _ = x;
        true
    }

    /// For `s ∈ S`, `t ∈ T` returns `(ŝ, t̂)` with `ŝ ∈ S`, `t̂ ∈ T` and `ŝ·t = t̂·s`.
    fn ore_witness(&self, s: &Self::Elem, t: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn is_cancellative(&self) -> bool;

    /// `s ∈ S`, `t ∈ T`, `ts ∈ S` implies `t ∈ S`.
    fn is_left_saturated(&self) -> bool;

    /// True when `S = T`.
    fn denominators_are_all(&self) -> bool;

    /// Unique representative of the class of `f` in `S⁻¹T`, if the monoid has one.
    fn canonical_fraction(&self, f: &Fraction<Self::Elem>) -> Option<Fraction<Self::Elem>> {
        let _ = f;
        None
    }

    /// Factorization of `x ∈ T` into generators of `T`.
    fn factor(&self, x: &Self::Elem) -> Vec<Self::Elem> {
        vec![x.clone()]
    }

    /// Factorization of `s ∈ S` into generators of `S`.
    fn factor_denominator(&self, s: &Self::Elem) -> Vec<Self::Elem> {
        vec![s.clone()]
    }

    fn format_elem(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }
}

/// Random elements for the verification suites.
pub trait SampleMonoid: OreMonoid {
    fn sample_numerator(&self, rng: &mut SampleRng) -> Self::Elem;
    fn sample_denominator(&self, rng: &mut SampleRng) -> Self::Elem;
}

/// A left fraction `den⁻¹·num` with `den ∈ S`, `num ∈ T`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction<E> {
    pub den: E,
    pub num: E,
}

impl<E> Fraction<E> {
    pub fn new(den: E, num: E) -> Self {
        Fraction { den, num }
    }
}

/// Checked Ore solve: verifies the witness returned by the monoid.
pub fn ore_solve<M: OreMonoid + ?Sized>(
    m: &M,
    s: &M::Elem,
    t: &M::Elem,
) -> Result<(M::Elem, M::Elem), MonoidError> {
    if !m.is_denominator(s) {
        return Err(MonoidError::NotDenominator(m.format_elem(s)));
    }
    let (s_hat, t_hat) = m.ore_witness(s, t);
    if !m.is_denominator(&s_hat) {
        return Err(MonoidError::ContractViolation(format!(
            "ŝ = {} is not a denominator",
            m.format_elem(&s_hat)
        )));
    }
    if m.mul(&s_hat, t) != m.mul(&t_hat, s) {
        return Err(MonoidError::ContractViolation(format!(
            "ŝ·t ≠ t̂·s for s = {}, t = {}, ŝ = {}, t̂ = {}",
            m.format_elem(s),
            m.format_elem(t),
            m.format_elem(&s_hat),
            m.format_elem(&t_hat)
        )));
    }
    Ok((s_hat, t_hat))
}

/// Witness used inside ring arithmetic, where a broken solver is a bug in the
/// monoid implementation rather than a recoverable condition.
pub(crate) fn witness<M: OreMonoid + ?Sized>(
    m: &M,
    s: &M::Elem,
    t: &M::Elem,
) -> (M::Elem, M::Elem) {
    match ore_solve(m, s, t) {
        Ok(w) => w,
        Err(e) => panic!("{e}"),
    }
}

/// `(u₁, u₂)` in `S` with `u₁·s₁ = u₂·s₂`.
pub fn common_multiple<M: OreMonoid + ?Sized>(
    m: &M,
    s1: &M::Elem,
    s2: &M::Elem,
) -> Result<(M::Elem, M::Elem), MonoidError> {
    let (u1, u2) = ore_solve(m, s2, s1)?;
    if !m.is_denominator(&u2) {
        return Err(MonoidError::ContractViolation(format!(
            "common multiple factor {} left S (is S left saturated?)",
            m.format_elem(&u2)
        )));
    }
    Ok((u1, u2))
}

pub(crate) fn common_multiple_unchecked<M: OreMonoid + ?Sized>(
    m: &M,
    s1: &M::Elem,
    s2: &M::Elem,
) -> (M::Elem, M::Elem) {
    match common_multiple(m, s1, s2) {
        Ok(w) => w,
        Err(e) => panic!("{e}"),
    }
}

/// Ore-fraction equivalence: `u₁s₁ = u₂s₂` and `u₁t₁ = u₂t₂` for some `u₁, u₂ ∈ S`.
pub fn fraction_eq<M: OreMonoid + ?Sized>(
    m: &M,
    x: &Fraction<M::Elem>,
    y: &Fraction<M::Elem>,
) -> Result<bool, MonoidError> {
    match (m.canonical_fraction(x), m.canonical_fraction(y)) {
        (Some(cx), Some(cy)) => Ok(cx == cy),
        _ => Err(MonoidError::Unsupported(
            "fraction equality needs a canonical form for this monoid".into(),
        )),
    }
}

/// `(s₁⁻¹t₁)(s₂⁻¹t₂) = (ŝs₁)⁻¹(t̂t₂)` where `ŝt₁ = t̂s₂`.
pub fn fraction_mul<M: OreMonoid + ?Sized>(
    m: &M,
    x: &Fraction<M::Elem>,
    y: &Fraction<M::Elem>,
) -> Result<Fraction<M::Elem>, MonoidError> {
    let (s_hat, t_hat) = ore_solve(m, &y.den, &x.num)?;
    Ok(Fraction::new(m.mul(&s_hat, &x.den), m.mul(&t_hat, &y.num)))
}

pub(crate) fn canonical<M: OreMonoid + ?Sized>(m: &M, f: &Fraction<M::Elem>) -> Fraction<M::Elem> {
    m.canonical_fraction(f)
        .expect("monoid without canonical fractions reached a canonical-form path")
}

/// Inverse in the group of fractions `G = S⁻¹S`.
pub fn group_inverse<E: Clone>(g: &Fraction<E>) -> Fraction<E> {
    Fraction::new(g.num.clone(), g.den.clone())
}

/// Element of `ℕᵏ`, written additively.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatVec(pub Vec<u32>);

impl NatVec {
    pub fn zero(rank: usize) -> Self {
        NatVec(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        NatVec(v)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }
}

impl fmt::Display for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// Which submonoid of `ℕᵏ` serves as denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Denominators {
    All,
    /// `ℕ·(1,…,1)`.
    Diagonal,
}

/// `T = ℕᵏ` with `S = T` or `S` the diagonal. Commutative and cancellative,
/// so Ore witnesses come from componentwise maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeMonoid {
    rank: usize,
    denominators: Denominators,
    bound: u32,
}

impl CommutativeMonoid {
    pub fn nat() -> Self {
        Self::nat_k(1)
    }

    pub fn nat_k(rank: usize) -> Self {
        assert!(rank >= 1, "ℕ^k needs k ≥ 1");
        CommutativeMonoid { rank, denominators: Denominators::All, bound: 3 }
    }

    /// The diagonal `ℕ·(1,1)` inside `ℕ²`.
    pub fn diagonal_in_nat2() -> Self {
        CommutativeMonoid { rank: 2, denominators: Denominators::Diagonal, bound: 3 }
    }

    /// Largest coordinate produced by the samplers.
    pub fn with_sample_bound(mut self, bound: u32) -> Self {
        self.bound = bound;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn denominators(&self) -> Denominators {
        self.denominators
    }

    pub fn name(&self) -> String {
        match (self.denominators, self.rank) {
            (Denominators::All, 1) => "nat".into(),
            (Denominators::All, k) => format!("nat {k}"),
            (Denominators::Diagonal, _) => "diag".into(),
        }
    }

    pub fn elem(&self, coords: &[u32]) -> Result<NatVec, MonoidError> {
        if coords.len() != self.rank {
            return Err(MonoidError::BadParameters(
                self.name(),
                format!("expected {} coordinates, got {}", self.rank, coords.len()),
            ));
        }
        Ok(NatVec(coords.to_vec()))
    }

    pub fn denominator(&self, coords: &[u32]) -> Result<NatVec, MonoidError> {
        let x = self.elem(coords)?;
        if !self.is_denominator(&x) {
            return Err(MonoidError::NotDenominator(x.to_string()));
        }
        Ok(x)
    }

    /// Generators of `S` (one per coordinate, or the diagonal vector).
    pub fn denominator_generators(&self) -> Vec<NatVec> {
        match self.denominators {
            Denominators::All => (0..self.rank).map(|i| NatVec::unit(self.rank, i)).collect(),
            Denominators::Diagonal => vec![NatVec(vec![1; self.rank])],
        }
    }

    /// Integer difference `num − den`, the complete invariant of a fraction class.
    pub fn degree_vector(&self, f: &Fraction<NatVec>) -> Vec<i64> {
        f.num.0.iter().zip(&f.den.0).map(|(&t, &s)| t as i64 - s as i64).collect()
    }

    /// The canonical fraction with difference vector `d`.
    pub fn fraction_from_degree(&self, d: &[i64]) -> Fraction<NatVec> {
        let den: Vec<u32> = match self.denominators {
            Denominators::All => d.iter().map(|&x| (-x).max(0) as u32).collect(),
            Denominators::Diagonal => {
                let c = d.iter().map(|&x| -x).max().unwrap_or(0).max(0) as u32;
                vec![c; self.rank]
            }
        };
        let num = den.iter().zip(d).map(|(&s, &x)| (s as i64 + x) as u32).collect();
        Fraction::new(NatVec(den), NatVec(num))
    }
}

impl OreMonoid for CommutativeMonoid {
    type Elem = NatVec;

    fn identity(&self) -> NatVec {
        NatVec::zero(self.rank)
    }

    fn mul(&self, a: &NatVec, b: &NatVec) -> NatVec {
        NatVec(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn is_denominator(&self, x: &NatVec) -> bool {
        match self.denominators {
            Denominators::All => true,
            Denominators::Diagonal => x.0.windows(2).all(|w| w[0] == w[1]),
        }
    }

    fn ore_witness(&self, s: &NatVec, t: &NatVec) -> (NatVec, NatVec) {
        let s_hat: Vec<u32> = match self.denominators {
            // least common multiple is the componentwise max; ŝ = lcm − t
            Denominators::All => s.0.iter().zip(&t.0).map(|(&a, &b)| a.saturating_sub(b)).collect(),
            Denominators::Diagonal => {
                let c = s.0.iter().zip(&t.0).map(|(&a, &b)| a.saturating_sub(b)).max().unwrap_or(0);
                vec![c; self.rank]
            }
        };
        let t_hat = s_hat.iter().zip(&t.0).zip(&s.0).map(|((&h, &b), &a)| h + b - a).collect();
        (NatVec(s_hat), NatVec(t_hat))
    }

    fn is_cancellative(&self) -> bool {
        true
    }

    fn is_left_saturated(&self) -> bool {
        true
    }

    fn denominators_are_all(&self) -> bool {
        self.denominators == Denominators::All
    }

    fn canonical_fraction(&self, f: &Fraction<NatVec>) -> Option<Fraction<NatVec>> {
        Some(self.fraction_from_degree(&self.degree_vector(f)))
    }

    fn factor(&self, x: &NatVec) -> Vec<NatVec> {
        let mut out = Vec::new();
        for (i, &c) in x.0.iter().enumerate() {
            for _ in 0..c {
                out.push(NatVec::unit(self.rank, i));
            }
        }
        out
    }

    fn factor_denominator(&self, s: &NatVec) -> Vec<NatVec> {
        match self.denominators {
            Denominators::All => self.factor(s),
            Denominators::Diagonal => vec![NatVec(vec![1; self.rank]); s.0[0] as usize],
        }
    }

    fn format_elem(&self, x: &NatVec) -> String {
        x.to_string()
    }
}

impl SampleMonoid for CommutativeMonoid {
    fn sample_numerator(&self, rng: &mut SampleRng) -> NatVec {
        NatVec((0..self.rank).map(|_| rng.gen_range(0..=self.bound)).collect())
    }

    fn sample_denominator(&self, rng: &mut SampleRng) -> NatVec {
        match self.denominators {
            Denominators::All => self.sample_numerator(rng),
            Denominators::Diagonal => NatVec(vec![rng.gen_range(0..=self.bound); self.rank]),
        }
    }
}

/// Looks up a builtin monoid by session name.
pub fn builtin_monoid(name: &str, params: &[u32]) -> Result<CommutativeMonoid, MonoidError> {
    match name {
        "nat" => match params {
            [] => Ok(CommutativeMonoid::nat()),
            [k] if *k >= 1 => Ok(CommutativeMonoid::nat_k(*k as usize)),
            _ => Err(MonoidError::BadParameters(name.into(), "expected `nat [k]` with k ≥ 1".into())),
        },
        "diag" => match params {
            [] => Ok(CommutativeMonoid::diagonal_in_nat2()),
            _ => Err(MonoidError::BadParameters(name.into(), "`diag` takes no parameters".into())),
        },
        "free" => match params {
            [1] => Ok(CommutativeMonoid::nat()),
            [k] => Err(MonoidError::NotOre {
                name: format!("free {k}"),
                reason: "free monoids on two or more generators have no common left multiples \
                         (a·x = b·y has no solution for distinct generators a, b)"
                    .into(),
            }),
            _ => Err(MonoidError::BadParameters(name.into(), "expected `free <k>`".into())),
        },
        other => Err(MonoidError::Unknown(other.into())),
    }
}

/// Names and descriptions for `--list-instances`.
pub fn builtin_monoids() -> Vec<(&'static str, &'static str)> {
    vec![
        ("nat", "ℕ under addition (S = T)"),
        ("nat <k>", "ℕᵏ under addition (S = T)"),
        ("diag", "T = ℕ², S = ℕ·(1,1), left saturated"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::trial_rng;

    fn nv(c: &[u32]) -> NatVec {
        NatVec(c.to_vec())
    }

    #[test]
    fn ore_nat_minimal() {
        let m = CommutativeMonoid::nat();
        assert_eq!(ore_solve(&m, &nv(&[2]), &nv(&[3])).unwrap(), (nv(&[0]), nv(&[1])));
        // identity denominator
        assert_eq!(ore_solve(&m, &nv(&[0]), &nv(&[3])).unwrap(), (nv(&[0]), nv(&[3])));
    }

    #[test]
    fn ore_nat2_lcm() {
        let m = CommutativeMonoid::nat_k(2);
        let (sh, th) = ore_solve(&m, &nv(&[1, 0]), &nv(&[0, 2])).unwrap();
        // componentwise max oracle: lcm = (1,2)
        let lcm = nv(&[1, 2]);
        assert_eq!(m.mul(&sh, &nv(&[0, 2])), lcm);
        assert_eq!((sh, th), (nv(&[1, 0]), nv(&[0, 2])));
    }

    #[test]
    fn fraction_equality_examples() {
        let m = CommutativeMonoid::nat();
        let f = |s, t| Fraction::new(nv(&[s]), nv(&[t]));
        assert!(fraction_eq(&m, &f(1, 3), &f(2, 4)).unwrap());
        assert!(!fraction_eq(&m, &f(1, 3), &f(1, 4)).unwrap());
        let m2 = CommutativeMonoid::nat_k(2);
        let a = Fraction::new(nv(&[1, 0]), nv(&[1, 2]));
        let b = Fraction::new(nv(&[0, 0]), nv(&[0, 2]));
        assert!(fraction_eq(&m2, &a, &b).unwrap());
    }

    #[test]
    fn fraction_products() {
        let m = CommutativeMonoid::nat();
        let f = |s, t| Fraction::new(nv(&[s]), nv(&[t]));
        let p = fraction_mul(&m, &f(0, 2), &f(0, 3)).unwrap();
        assert!(fraction_eq(&m, &p, &f(0, 5)).unwrap());
        let p = fraction_mul(&m, &f(2, 0), &f(0, 2)).unwrap();
        assert!(fraction_eq(&m, &p, &f(0, 0)).unwrap());
        let m2 = CommutativeMonoid::nat_k(2);
        let x = Fraction::new(nv(&[1, 0]), nv(&[0, 1]));
        let y = Fraction::new(nv(&[0, 1]), nv(&[1, 0]));
        let p = fraction_mul(&m2, &x, &y).unwrap();
        assert!(fraction_eq(&m2, &p, &Fraction::new(nv(&[1, 1]), nv(&[1, 1]))).unwrap());
        assert_eq!(m2.canonical_fraction(&p).unwrap(), Fraction::new(nv(&[0, 0]), nv(&[0, 0])));
    }

    #[test]
    fn diagonal_is_left_saturated_by_enumeration() {
        let m = CommutativeMonoid::diagonal_in_nat2();
        assert!(m.is_left_saturated());
        for a in 0..=10 {
            for b in 0..=10 {
                for c in 0..=10 {
                    let t = nv(&[a, b]);
                    let s = nv(&[c, c]);
                    if m.is_denominator(&m.mul(&t, &s)) {
                        assert!(m.is_denominator(&t));
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_witnesses_stay_in_s() {
        let m = CommutativeMonoid::diagonal_in_nat2();
        let (sh, th) = ore_solve(&m, &nv(&[3, 3]), &nv(&[1, 2])).unwrap();
        assert_eq!(sh, nv(&[2, 2]));
        assert_eq!(th, nv(&[0, 1]));
        let c = m.canonical_fraction(&Fraction::new(nv(&[2, 2]), nv(&[0, 5]))).unwrap();
        assert_eq!(c, Fraction::new(nv(&[2, 2]), nv(&[0, 5])));
        let c = m.canonical_fraction(&Fraction::new(nv(&[2, 2]), nv(&[3, 5]))).unwrap();
        assert_eq!(c, Fraction::new(nv(&[0, 0]), nv(&[1, 3])));
    }

    #[test]
    fn free_monoid_refused() {
        let err = builtin_monoid("free", &[2]).unwrap_err();
        assert!(matches!(err, MonoidError::NotOre { .. }));
        assert!(builtin_monoid("nat", &[3]).is_ok());
        assert!(matches!(builtin_monoid("zzz", &[]), Err(MonoidError::Unknown(_))));
    }

    struct Broken;
    impl OreMonoid for Broken {
        type Elem = u32;
        fn identity(&self) -> u32 {
            0
        }
        fn mul(&self, a: &u32, b: &u32) -> u32 {
            a + b
        }
        fn ore_witness(&self, _s: &u32, _t: &u32) -> (u32, u32) {
            (0, 0)
        }
        fn is_cancellative(&self) -> bool {
            true
        }
        fn is_left_saturated(&self) -> bool {
            true
        }
        fn denominators_are_all(&self) -> bool {
            true
        }
    }

    #[test]
    fn bad_user_solver_is_reported() {
        assert!(matches!(ore_solve(&Broken, &1, &2), Err(MonoidError::ContractViolation(_))));
        assert!(ore_solve(&Broken, &0, &0).is_ok());
    }

    #[test]
    fn fraction_eq_needs_canonical_form() {
        let f = Fraction::new(1, 2);
        assert!(matches!(fraction_eq(&Broken, &f, &f), Err(MonoidError::Unsupported(_))));
    }

    #[test]
    fn sampled_witnesses_and_congruence() {
        for m in [
            CommutativeMonoid::nat(),
            CommutativeMonoid::nat_k(2),
            CommutativeMonoid::nat_k(3),
            CommutativeMonoid::diagonal_in_nat2(),
        ] {
            let mut rng = trial_rng(7, 0);
            for _ in 0..500 {
                let s = m.sample_denominator(&mut rng);
                let t = m.sample_numerator(&mut rng);
                let (sh, th) = ore_solve(&m, &s, &t).unwrap();
                assert_eq!(m.mul(&sh, &t), m.mul(&th, &s));

                // congruence: equivalent inputs give equivalent products
                let x = Fraction::new(s.clone(), t.clone());
                let y = Fraction::new(m.sample_denominator(&mut rng), m.sample_numerator(&mut rng));
                let u = m.sample_denominator(&mut rng);
                let x2 = Fraction::new(m.mul(&u, &x.den), m.mul(&u, &x.num));
                let p1 = fraction_mul(&m, &x, &y).unwrap();
                let p2 = fraction_mul(&m, &x2, &y).unwrap();
                assert!(fraction_eq(&m, &p1, &p2).unwrap());

                // degree map is a homomorphism
                let d1 = m.degree_vector(&x);
                let d2 = m.degree_vector(&y);
                let dp = m.degree_vector(&p1);
                let sum: Vec<i64> = d1.iter().zip(&d2).map(|(a, b)| a + b).collect();
                assert_eq!(dp, sum);
            }
        }
    }

    #[test]
    fn factorization_multiplies_back() {
        let m = CommutativeMonoid::diagonal_in_nat2();
        let s = nv(&[3, 3]);
        let back = m.factor_denominator(&s).iter().fold(m.identity(), |acc, g| m.mul(&acc, g));
        assert_eq!(back, s);
        let t = nv(&[2, 1]);
        let back = m.factor(&t).iter().fold(m.identity(), |acc, g| m.mul(&acc, g));
        assert_eq!(back, t);
    }
}
