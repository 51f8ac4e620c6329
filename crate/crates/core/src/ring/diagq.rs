//! `ℚᵏ` with componentwise operations; coordinate permutations act by automorphisms.

use num_traits::{One, Zero};

use super::{
    format_q, parse_q, small_q, ActionFlags, Endomorphism, Notation, Q, Ring, RingError,
    SampleRing, UnitalRing,
};
use crate::sampling::SampleRng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagQ {
    dim: usize,
}

impl DiagQ {
    pub fn new(dim: usize) -> Result<Self, RingError> {
        if dim == 0 {
            return Err(RingError::BadParameters("diagq".into(), "k ≥ 1".into()));
        }
        Ok(DiagQ { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinate idempotent `d_i` (0-based).
    pub fn idempotent(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }
}

impl Ring for DiagQ {
    type Elem = Vec<Q>;

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim]
    }

    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    fn equal(&self, a: &Vec<Q>, b: &Vec<Q>) -> bool {
        a == b
    }
}

impl UnitalRing for DiagQ {
    fn one(&self) -> Vec<Q> {
        vec![Q::one(); self.dim]
    }
}

impl Notation for DiagQ {
    fn format(&self, a: &Vec<Q>) -> String {
        let parts: Vec<String> = a.iter().map(format_q).collect();
        format!("<{}>", parts.join(","))
    }

    /// `d<i>` (1-based) or `<a,b,…>`.
    fn parse_atom(&self, s: &str) -> Result<Vec<Q>, RingError> {
        let bad = || RingError::Parse(s.into(), self.describe());
        if let Some(rest) = s.strip_prefix('d') {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if (1..=self.dim).contains(&i) {
                return Ok(self.idempotent(i - 1));
            }
            return Err(bad());
        }
        let body = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')).ok_or_else(bad)?;
        let v: Vec<Q> = body.split(',').map(parse_q).collect::<Option<_>>().ok_or_else(bad)?;
        if v.len() != self.dim {
            return Err(bad());
        }
        Ok(v)
    }

    fn scalar(&self, c: &Q) -> Option<Vec<Q>> {
        Some(vec![c.clone(); self.dim])
    }

    fn describe(&self) -> String {
        format!("Q^{}", self.dim)
    }
}

impl SampleRing for DiagQ {
    fn sample(&self, rng: &mut SampleRng) -> Vec<Q> {
        (0..self.dim).map(|_| small_q(rng)).collect()
    }
}

/// `(σ·a)_i = a_{σ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationEndo {
    perm: Vec<usize>,
}

impl PermutationEndo {
    pub fn new(perm: Vec<usize>) -> Result<Self, RingError> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(RingError::BadParameters("permutation".into(), format!("{perm:?}")));
            }
            seen[p] = true;
        }
        Ok(PermutationEndo { perm })
    }

    pub fn swap() -> Self {
        PermutationEndo { perm: vec![1, 0] }
    }

    pub fn cyclic(dim: usize) -> Self {
        PermutationEndo { perm: (0..dim).map(|i| (i + 1) % dim).collect() }
    }

    pub fn identity(dim: usize) -> Self {
        PermutationEndo { perm: (0..dim).collect() }
    }
}

impl Endomorphism<DiagQ> for PermutationEndo {
    fn apply(&self, _ring: &DiagQ, a: &Vec<Q>) -> Vec<Q> {
        self.perm.iter().map(|&j| a[j].clone()).collect()
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { injective: true, unital: true, corner_iso: true }
    }

    fn preimage(&self, _ring: &DiagQ, a: &Vec<Q>) -> Result<Option<Vec<Q>>, RingError> {
        let mut out = vec![Q::zero(); a.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            out[j] = a[i].clone();
        }
        Ok(Some(out))
    }

    fn name(&self) -> String {
        format!("permute{:?}", self.perm)
    }
}
