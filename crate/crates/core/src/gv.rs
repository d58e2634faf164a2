//! Genus 0, 1 and 2 Gopakumar-Vafa invariants: the relations that define
//! them in terms of Gromov-Witten invariants, and their closed evaluation on
//! a product of two K3 surfaces `X = S x T` for curve classes `beta` on `S`.
//!
//! Insertions `gamma in H^4(X)` are given in Kunneth form
//! `a1 * 1(x)p + sum D1(x)D2 + a2 * p(x)1`. The divisor `D1` on `S` only
//! enters through `D1 . beta`; `D2` is a coordinate vector in a chosen basis
//! of `H^2(T)` whose intersection form is `t_gram`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::GenusSeries;
use crate::rational::{self, q, Q};

/// Symmetric rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GramJson", into = "GramJson")]
pub struct Gram(Vec<Vec<Q>>);

#[derive(Serialize, Deserialize)]
struct GramJson(#[serde(with = "rational::mat_str")] Vec<Vec<Q>>);

impl TryFrom<GramJson> for Gram {
    type Error = Error;
    fn try_from(g: GramJson) -> Result<Self> {
        Gram::new(g.0)
    }
}

impl From<Gram> for GramJson {
    fn from(g: Gram) -> Self {
        GramJson(g.0)
    }
}

impl Gram {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Invalid(format!("gram row {i} has length {}, expected {n}", r.len())));
            }
            for j in 0..i {
                if r[j] != rows[j][i] {
                    return Err(Error::Invalid(format!("gram matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Gram(rows))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Gram::new(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Hyperbolic plane `((0,1),(1,0))`, the default `H^2(T)` block.
    pub fn hyperbolic() -> Self {
        Gram::from_ints(&[&[0, 1], &[1, 0]]).expect("symmetric")
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.0
    }

    /// `x^T G y`.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::BasisMismatch(format!(
                "vectors of length {} and {} against a rank {} form",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * &self.0[i][j] * yj;
            }
        }
        Ok(s)
    }
}

/// One `D1 (x) D2` summand of an insertion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedTerm {
    #[serde(with = "rational::as_str")]
    pub d1_dot_beta: Q,
    #[serde(with = "rational::vec_str")]
    pub d2: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionClass {
    /// Coefficient of `1 (x) p`.
    #[serde(with = "rational::as_str")]
    pub a1: Q,
    /// Coefficient of `p (x) 1`.
    #[serde(with = "rational::as_str")]
    pub a2: Q,
    #[serde(default)]
    pub mixed: Vec<MixedTerm>,
    pub t_gram: Gram,
}

impl InsertionClass {
    pub fn validate(&self) -> Result<()> {
        for (i, m) in self.mixed.iter().enumerate() {
            if m.d2.len() != self.t_gram.dim() {
                return Err(Error::BasisMismatch(format!(
                    "mixed term {i} has {} coordinates but H^2(T) has rank {}",
                    m.d2.len(),
                    self.t_gram.dim()
                )));
            }
        }
        Ok(())
    }

    /// `sum (D1.beta)(D1'.beta) int_T D2 D2'` over all pairs of mixed terms.
    pub fn mixed_pairing(&self, other: &InsertionClass) -> Result<Q> {
        if self.t_gram != other.t_gram {
            return Err(Error::BasisMismatch("insertions use different H^2(T) forms".into()));
        }
        self.validate()?;
        other.validate()?;
        let mut s = Q::zero();
        for x in &self.mixed {
            for y in &other.mixed {
                s += &x.d1_dot_beta * &y.d1_dot_beta * self.t_gram.pair(&x.d2, &y.d2)?;
            }
        }
        Ok(s)
    }

    /// Canonical compact form, used as a record key.
    pub fn digest(&self) -> String {
        serde_json::to_string(self).expect("insertions always serialize")
    }
}

/// Curve class `beta` on `S` with `beta^2 = 2d - 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveClassData {
    pub d: u64,
    #[serde(default = "one_u64")]
    pub multiplicity: u64,
    #[serde(default, with = "rational::opt_str", skip_serializing_if = "Option::is_none")]
    pub theta1_dot_beta: Option<Q>,
}

fn one_u64() -> u64 {
    1
}

impl CurveClassData {
    pub fn primitive(d: u64) -> Self {
        CurveClassData { d, multiplicity: 1, theta1_dot_beta: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 1 {
            return Err(Error::Invalid("curve class needs d >= 1".into()));
        }
        if self.multiplicity < 1 {
            return Err(Error::Invalid("curve class needs multiplicity >= 1".into()));
        }
        Ok(())
    }

    /// `beta^2 / 2 = d - 1`.
    pub fn half_square(&self) -> i64 {
        self.d as i64 - 1
    }

    pub fn require_primitive(&self) -> Result<()> {
        self.validate()?;
        if self.multiplicity != 1 {
            return Err(Error::NotPrimitive(self.multiplicity));
        }
        Ok(())
    }
}

fn int_pow(k: u64, e: i32) -> Q {
    let b = Q::from_integer(BigInt::from(k));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        Q::one() / num_traits::pow(b, e.unsigned_abs() as usize)
    }
}

/// Exponent used by default for `l` insertions in the genus 0 multiple cover formula.
pub fn default_cover_exponent(num_insertions: usize) -> i32 {
    num_insertions as i32 - 3
}

/// `GW(m) = sum_{k | m} k^e n0(m / k)` for every `m` present in `n0`'s range `1..=M`.
pub fn multiple_cover_forward(n0: &BTreeMap<u64, Q>, exponent: i32) -> Result<BTreeMap<u64, Q>> {
    let max = n0.keys().next_back().copied().unwrap_or(0);
    let mut out = BTreeMap::new();
    for m in 1..=max {
        let mut s = Q::zero();
        for k in (1..=m).filter(|k| m % k == 0) {
            let v = n0.get(&(m / k)).ok_or(Error::MissingDivisor(m / k))?;
            s += int_pow(k, exponent) * v;
        }
        out.insert(m, s);
    }
    Ok(out)
}

/// Inverts the multiple cover formula: `n0(m) = GW(m) - sum_{k | m, k > 1} k^e n0(m / k)`.
pub fn solve_multiple_cover(gw: &BTreeMap<u64, Q>, exponent: i32) -> Result<BTreeMap<u64, Q>> {
    let max = gw.keys().next_back().copied().unwrap_or(0);
    let mut n0: BTreeMap<u64, Q> = BTreeMap::new();
    for m in 1..=max {
        let mut v = gw.get(&m).ok_or(Error::MissingDivisor(m))?.clone();
        for k in (2..=m).filter(|k| m % k == 0) {
            v -= int_pow(k, exponent) * &n0[&(m / k)];
        }
        n0.insert(m, v);
    }
    Ok(n0)
}

/// `n_1(gamma) = GW_1(gamma) + GW_0(gamma, c2) / 24` for primitive `beta`.
pub fn genus1_gv(gw1_gamma: &Q, gw0_gamma_c2: &Q) -> Q {
    gw1_gamma + gw0_gamma_c2 / q(24)
}

/// `n_2 = GW_2 + n_1(c2)/24 - GW_0(c2, c2)/(2 * 24^2) - N_nodal/24` for primitive `beta`.
pub fn genus2_gv(gw2: &Q, n1_c2: &Q, gw0_c2_c2: &Q, n_nodal: &Q) -> Q {
    gw2 + n1_c2 / q(24) - gw0_c2_c2 / q(2 * 24 * 24) - n_nodal / q(24)
}

/// Virtual count of rational nodal curves from the diagonal and `psi` integrals.
pub fn nodal_count(i_diagonal: &Q, i_psi: &Q) -> Q {
    (i_diagonal - i_psi) / q(2)
}

/// `n_{0,beta}(gamma, gamma') = (mixed pairing) * N_0(d - 1)`.
pub fn product_n0(g: &InsertionClass, g2: &InsertionClass, c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.validate()?;
    let pairing = g.mixed_pairing(g2)?;
    let series = GenusSeries::new(trunc)?;
    Ok(pairing * series.get(0, c.half_square())?)
}

/// `n_{0,beta}(alpha) = (theta1 . beta) N_0(d - 1)` for a curve class insertion `alpha`.
pub fn product_n0_curveclass(c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.validate()?;
    let theta = c.theta1_dot_beta.as_ref().ok_or(Error::MissingField("theta1_dot_beta"))?;
    let series = GenusSeries::new(trunc)?;
    Ok(theta * series.get(0, c.half_square())?)
}

/// `n_{1,beta}(gamma) = 24 a2 N_1(d - 1)`, primitive `beta` only.
pub fn product_n1(g: &InsertionClass, c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.require_primitive()?;
    let series = GenusSeries::new(trunc)?;
    Ok(q(24) * &g.a2 * series.get(1, c.half_square())?)
}

/// `n_{2,beta} = N_2(d - 1)`, primitive `beta` only.
pub fn product_n2(c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.require_primitive()?;
    GenusSeries::new(trunc)?.get(2, c.half_square())
}
