//! Fock space of Nakajima creation operators `q_m(b)` over `H*(K3)`.
//!
//! All classes are even, so creation operators commute and a state is a
//! rational combination of sorted multisets of symbols `(m, b)` acting on the
//! vacuum. Annihilators satisfy `[q_m(a), q_{-m'}(b)] = m delta_{m,m'} int ab`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gv::Gram;
use crate::rational::{frac, q, Q};

pub const BASIS_SIZE: usize = 24;
const MID: usize = 22;

/// Basis `1, w_1..w_22, p` of `H*(K3, Q)` with its intersection pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohBasis {
    labels: Vec<String>,
    mid: Gram,
}

impl Default for CohBasis {
    /// `w_1, w_2 = e, f` span a hyperbolic plane, the rest square to `-2`.
    fn default() -> Self {
        let mut rows = vec![vec![Q::zero(); MID]; MID];
        rows[0][1] = q(1);
        rows[1][0] = q(1);
        for (i, row) in rows.iter_mut().enumerate().skip(2) {
            row[i] = q(-2);
        }
        CohBasis::new(Gram::new(rows).expect("symmetric by construction")).expect("rank 22")
    }
}

impl CohBasis {
    pub const ONE: usize = 0;
    pub const POINT: usize = BASIS_SIZE - 1;

    /// Basis with a custom Gram matrix on the degree-2 block.
    pub fn new(mid: Gram) -> Result<Self> {
        if mid.dim() != MID {
            return Err(Error::BasisMismatch(format!("degree-2 block must be {MID}x{MID}, got {}", mid.dim())));
        }
        let mut labels = vec!["1".to_string(), "e".to_string(), "f".to_string()];
        labels.extend((3..=MID).map(|i| format!("w{i}")));
        labels.push("p".to_string());
        Ok(CohBasis { labels, mid })
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Real cohomological degree: 0, 2 or 4.
    pub fn degree(&self, i: usize) -> u32 {
        match i {
            Self::ONE => 0,
            Self::POINT => 4,
            _ => 2,
        }
    }

    /// `int_S b_i b_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Q {
        match (i, j) {
            (Self::ONE, Self::POINT) | (Self::POINT, Self::ONE) => Q::one(),
            (Self::ONE, _) | (_, Self::ONE) | (Self::POINT, _) | (_, Self::POINT) => Q::zero(),
            _ => self.mid.rows()[i - 1][j - 1].clone(),
        }
    }
}

/// One creation operator `q_m(b_class)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Creation {
    pub m: u32,
    pub class: usize,
}

impl Creation {
    pub fn new(m: u32, class: usize) -> Self {
        assert!(m >= 1, "creation operators have m >= 1");
        assert!(class < BASIS_SIZE, "class index out of range");
        Creation { m, class }
    }

    /// Bidegree `(m, deg b + 2m - 2)`.
    pub fn cohdeg(&self, basis: &CohBasis) -> u32 {
        basis.degree(self.class) + 2 * self.m - 2
    }
}

pub type FockMonomial = Vec<Creation>;

pub fn weight(m: &[Creation]) -> u32 {
    m.iter().map(|c| c.m).sum()
}

pub fn cohdeg(m: &[Creation], basis: &CohBasis) -> u32 {
    m.iter().map(|c| c.cohdeg(basis)).sum()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockState {
    terms: BTreeMap<FockMonomial, Q>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FockTermJson {
    pub monomial: Vec<(u32, String)>,
    pub coeff: String,
}

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(Vec::new(), Q::one())
    }

    pub fn monomial(m: FockMonomial, c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    /// `q_m(b)^k |0>`.
    pub fn power(m: u32, class: usize, k: usize) -> Self {
        Self::monomial(vec![Creation::new(m, class); k], Q::one())
    }

    pub fn terms(&self) -> &BTreeMap<FockMonomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mut m: FockMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// If the state equals `c * m`, return `c`.
    pub fn scalar_multiple_of(&self, m: &[Creation]) -> Option<Q> {
        let mut key = m.to_vec();
        key.sort();
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&key).cloned(),
            _ => None,
        }
    }

    pub fn to_json(&self, basis: &CohBasis) -> Vec<FockTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| FockTermJson {
                monomial: m.iter().map(|x| (x.m, basis.label(x.class).to_string())).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// Partitions of `n` as multiplicity vectors `mult[k]` = number of parts equal to `k`.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            cur[k as usize] += 1;
            go(rest - k, k, cur, out);
            cur[k as usize] -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![0; n as usize + 1], &mut out);
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Weight-`m` coefficients of `exp(sum (-1)^(k-1)/k q_k(1) z^k) |0>` for `m = 1..=m_max`.
pub fn lehn_chern_expansion(m_max: u32) -> BTreeMap<u32, FockState> {
    (1..=m_max).map(|m| (m, lehn_weight(m))).collect()
}

fn lehn_weight(m: u32) -> FockState {
    let mut s = FockState::zero();
    for mult in partitions(m) {
        let mut coeff = Q::one();
        let mut mono = Vec::new();
        for (k, &c) in mult.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            let a = frac(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            coeff *= num_traits::pow(a, c as usize) / Q::from_integer(factorial(c));
            mono.extend(std::iter::repeat_n(Creation::new(k as u32, CohBasis::ONE), c as usize));
        }
        s.add_term(mono, coeff);
    }
    s
}

/// Monomials of exact `(weight, cohdeg)`.
pub fn bidegree_part(s: &FockState, w: u32, cohdegree: u32, basis: &CohBasis) -> FockState {
    let mut out = FockState::zero();
    for (m, c) in s.terms() {
        if weight(m) == w && cohdeg(m, basis) == cohdegree {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Scalar `c` with `bidegree (d, 2d-2)` part of the weight-`d` Lehn state equal to `c q_d(1)|0>`.
pub fn lehn_top_scalar(d: u32, basis: &CohBasis) -> Option<Q> {
    let top = bidegree_part(&lehn_weight(d), d, 2 * d - 2, basis);
    top.scalar_multiple_of(&[Creation::new(d, CohBasis::ONE)])
}

fn pair_monomials(a: &[Creation], b: &[Creation], basis: &CohBasis) -> Q {
    let Some((first, rest)) = a.split_first() else {
        return if b.is_empty() { Q::one() } else { Q::zero() };
    };
    if a.len() != b.len() {
        return Q::zero();
    }
    let mut total = Q::zero();
    for (j, y) in b.iter().enumerate() {
        if y.m != first.m {
            continue;
        }
        let w = basis.pairing(first.class, y.class);
        if w.is_zero() {
            continue;
        }
        let mut others = b.to_vec();
        others.remove(j);
        total += q(first.m as i64) * w * pair_monomials(rest, &others, basis);
    }
    total
}

/// Bilinear pairing of Fock states; states of different weight pair to zero.
pub fn fock_pairing(a: &FockState, b: &FockState, basis: &CohBasis) -> Q {
    let mut total = Q::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if weight(ma) != weight(mb) {
                continue;
            }
            total += ca * cb * pair_monomials(ma, mb, basis);
        }
    }
    total
}

/// Number of weight-`d` monomials over the 24 basis classes.
pub fn fock_dimension(d: u32) -> BigInt {
    if d == 0 {
        return BigInt::one();
    }
    let n = BigInt::from(BASIS_SIZE);
    partitions(d)
        .iter()
        .map(|mult| {
            mult.iter()
                .skip(1)
                .map(|&c| binomial(&n + BigInt::from(c) - 1, BigInt::from(c)))
                .product::<BigInt>()
        })
        .sum()
}

/// Every monomial of weight `d`, listed explicitly. Grows fast; meant for small `d`.
pub fn enumerate_monomials(d: u32) -> Vec<FockMonomial> {
    fn go(rest: u32, min: Creation, cur: &mut Vec<Creation>, out: &mut Vec<FockMonomial>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for m in min.m..=rest {
            let start = if m == min.m { min.class } else { 0 };
            for class in start..BASIS_SIZE {
                let c = Creation::new(m, class);
                cur.push(c);
                go(rest - m, c, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, Creation::new(1, 0), &mut Vec::new(), &mut out);
    out
}
