//! `M_k(ℚ)` with exact rational entries.

use num_traits::{One, Zero};
use rand::Rng as _;

use super::{
    format_q, parse_q, small_q, ActionFlags, Endomorphism, Notation, Q, Ring, RingError,
    SampleRing, UnitalRing,
};
use crate::sampling::SampleRng;

/// Dense square matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub dim: usize,
    pub data: Vec<Q>,
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        QMatrix { dim, data: vec![Q::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Q::one();
        }
        m
    }

    /// Matrix unit `e_{ij}` (0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.data[i * dim + j] = Q::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "square matrix expected");
        QMatrix { dim, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> Q {
        (0..self.dim).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let n = self.dim;
        let mut out = QMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `P·A·P⁻¹` for the permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn conjugate_by_permutation(&self, perm: &[usize]) -> QMatrix {
        let n = self.dim;
        let mut out = QMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.data[perm[i] * n + perm[j]] = self.get(i, j).clone();
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatQ {
    dim: usize,
}

impl MatQ {
    pub fn new(dim: usize) -> Result<Self, RingError> {
        if dim == 0 {
            return Err(RingError::BadParameters("matq".into(), "k ≥ 1".into()));
        }
        Ok(MatQ { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self, i: usize, j: usize) -> QMatrix {
        QMatrix::unit(self.dim, i, j)
    }

    pub fn scalar(&self, c: Q) -> QMatrix {
        let mut m = QMatrix::identity(self.dim);
        for x in m.data.iter_mut() {
            *x = &*x * &c;
        }
        m
    }
}

impl Ring for MatQ {
    type Elem = QMatrix;

    fn zero(&self) -> QMatrix {
        QMatrix::zero(self.dim)
    }

    fn add(&self, a: &QMatrix, b: &QMatrix) -> QMatrix {
        QMatrix { dim: self.dim, data: a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect() }
    }

    fn neg(&self, a: &QMatrix) -> QMatrix {
        QMatrix { dim: self.dim, data: a.data.iter().map(|x| -x).collect() }
    }

    fn mul(&self, a: &QMatrix, b: &QMatrix) -> QMatrix {
        a.mul(b)
    }

    fn equal(&self, a: &QMatrix, b: &QMatrix) -> bool {
        a == b
    }
}

impl UnitalRing for MatQ {
    fn one(&self) -> QMatrix {
        QMatrix::identity(self.dim)
    }
}

impl Notation for MatQ {
    fn format(&self, a: &QMatrix) -> String {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let r: Vec<String> = (0..self.dim).map(|j| format_q(a.get(i, j))).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// `e<i><j>` (1-based matrix unit) or `[[..],[..]]`.
    fn parse_atom(&self, s: &str) -> Result<QMatrix, RingError> {
        let bad = || RingError::Parse(s.into(), self.describe());
        if let Some(rest) = s.strip_prefix('e') {
            let digits: Vec<usize> =
                rest.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
            if let [i, j] = digits[..] {
                if (1..=self.dim).contains(&i) && (1..=self.dim).contains(&j) {
                    return Ok(self.unit(i - 1, j - 1));
                }
            }
            return Err(bad());
        }
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let mut rows = Vec::new();
        for chunk in inner.split(']') {
            let chunk = chunk.trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('[').ok_or_else(bad)?;
            let row: Vec<Q> = body.split(',').map(parse_q).collect::<Option<_>>().ok_or_else(bad)?;
            rows.push(row);
        }
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(bad());
        }
        Ok(QMatrix::from_rows(rows))
    }

    fn scalar(&self, c: &Q) -> Option<QMatrix> {
        Some(self.scalar(c.clone()))
    }

    fn describe(&self) -> String {
        format!("M_{}(Q)", self.dim)
    }
}

impl SampleRing for MatQ {
    fn sample(&self, rng: &mut SampleRng) -> QMatrix {
        let mut m = QMatrix::zero(self.dim);
        for x in m.data.iter_mut() {
            if rng.gen_bool(0.6) {
                *x = small_q(rng);
            }
        }
        m
    }
}

/// Automorphisms of `M_k(ℚ)` used as actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatEndo {
    Identity,
    /// Conjugation by a permutation matrix.
    Permute(Vec<usize>),
}

impl MatEndo {
    /// Cyclic shift of the standard basis.
    pub fn cyclic(dim: usize) -> Self {
        MatEndo::Permute((0..dim).map(|i| (i + 1) % dim).collect())
    }
}

impl Endomorphism<MatQ> for MatEndo {
    fn apply(&self, _ring: &MatQ, a: &QMatrix) -> QMatrix {
        match self {
            MatEndo::Identity => a.clone(),
            MatEndo::Permute(p) => a.conjugate_by_permutation(p),
        }
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { injective: true, unital: true, corner_iso: true }
    }

    fn preimage(&self, _ring: &MatQ, a: &QMatrix) -> Result<Option<QMatrix>, RingError> {
        Ok(Some(match self {
            MatEndo::Identity => a.clone(),
            MatEndo::Permute(p) => {
                let mut inv = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                a.conjugate_by_permutation(&inv)
            }
        }))
    }

    fn name(&self) -> String {
        match self {
            MatEndo::Identity => "identity".into(),
            MatEndo::Permute(p) => format!("permute{p:?}"),
        }
    }
}
