//! Truncated Laurent series in one variable `q` with exact rational
//! coefficients, and the named series used throughout the crate.
//!
//! A [`QSeries`] knows the range of exponents on which it is exact:
//! coefficients from `valuation` up to (but excluding) `trunc`. Below the
//! valuation every coefficient is zero; at or above `trunc` nothing is known.
//! Binary operations keep only the range on which both operands are reliable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, frac, q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    coeffs: Vec<Q>,
    trunc: i64,
}

impl QSeries {
    /// Series with `coeffs[i]` at `q^(valuation + i)`; exact below `valuation + coeffs.len()`.
    pub fn new(valuation: i64, coeffs: Vec<Q>) -> Self {
        let trunc = valuation + coeffs.len() as i64;
        Self::normalized(valuation, coeffs, trunc)
    }

    /// Like [`QSeries::new`] but with an explicit truncation; missing
    /// coefficients are zero and surplus ones are dropped.
    pub fn with_trunc(valuation: i64, mut coeffs: Vec<Q>, trunc: i64) -> Self {
        let len = (trunc - valuation).max(0) as usize;
        coeffs.resize(len, Q::zero());
        Self::normalized(valuation.min(trunc), coeffs, trunc)
    }

    pub fn from_fn(start: i64, trunc: i64, f: impl Fn(i64) -> Q) -> Self {
        let coeffs = (start..trunc).map(f).collect();
        Self::normalized(start.min(trunc), coeffs, trunc)
    }

    pub fn zero(trunc: i64) -> Self {
        QSeries { valuation: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(Q::one(), 0, trunc)
    }

    pub fn constant(c: Q, trunc: i64) -> Self {
        Self::monomial(c, 0, trunc)
    }

    /// `c * q^exp`, exact below `q^trunc`.
    pub fn monomial(c: Q, exp: i64, trunc: i64) -> Self {
        if exp >= trunc {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![Q::zero(); (trunc - exp) as usize];
        coeffs[0] = c;
        Self::normalized(exp, coeffs, trunc)
    }

    fn normalized(valuation: i64, coeffs: Vec<Q>, trunc: i64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, trunc - valuation);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(trunc),
            Some(0) => QSeries { valuation, coeffs, trunc },
            Some(k) => QSeries {
                valuation: valuation + k as i64,
                coeffs: coeffs[k..].to_vec(),
                trunc,
            },
        }
    }

    /// Exponent of the first nonzero coefficient (`trunc` for the zero series).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`; fails when `n` lies outside the reliable range.
    pub fn coeff(&self, n: i64) -> Result<Q> {
        if n >= self.trunc {
            return Err(Error::TruncationTooSmall { exponent: n, trunc: self.trunc });
        }
        Ok(self.raw(n))
    }

    fn raw(&self, n: i64) -> Q {
        if n < self.valuation || n >= self.trunc {
            Q::zero()
        } else {
            self.coeffs[(n - self.valuation) as usize].clone()
        }
    }

    fn raw_ref(&self, n: i64) -> Option<&Q> {
        if n < self.valuation || n >= self.trunc {
            None
        } else {
            Some(&self.coeffs[(n - self.valuation) as usize])
        }
    }

    /// Forget every coefficient at or above `q^trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        let start = self.valuation.min(trunc);
        Self::from_fn(start, trunc, |n| self.raw(n))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::normalized(self.valuation, coeffs, self.trunc)
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let lead_inv = Q::one() / &self.coeffs[0];
        let prec = self.coeffs.len();
        let mut w: Vec<Q> = Vec::with_capacity(prec);
        w.push(lead_inv.clone());
        for n in 1..prec {
            let mut s = Q::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &w[n - k];
            }
            w.push(-(s * &lead_inv));
        }
        Ok(Self::normalized(-self.valuation, w, -self.valuation + prec as i64))
    }

    /// `q d/dq`: the coefficient of `q^n` is multiplied by `n`.
    pub fn qderiv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * q(self.valuation + i as i64))
            .collect();
        Self::normalized(self.valuation, coeffs, self.trunc)
    }

    /// Exponential of a series with vanishing constant term.
    pub fn exp_series(&self) -> Result<Self> {
        if self.valuation < 1 {
            return Err(Error::DomainViolation("exp_series (constant term must vanish)"));
        }
        let t = self.trunc as usize;
        // n b_n = sum_{k=1}^n k a_k b_{n-k}
        let mut b: Vec<Q> = Vec::with_capacity(t);
        b.push(Q::one());
        for n in 1..t {
            let mut s = Q::zero();
            for k in 1..=n {
                if let Some(a) = self.raw_ref(k as i64) {
                    s += a * q(k as i64) * &b[n - k];
                }
            }
            b.push(s / q(n as i64));
        }
        Ok(Self::normalized(0, b, self.trunc))
    }

    /// Logarithm of a series of the form `1 + O(q)`.
    pub fn log_series(&self) -> Result<Self> {
        if self.is_zero() || self.valuation != 0 || !self.coeffs[0].is_one() {
            return Err(Error::DomainViolation("log_series (series must be 1 + O(q))"));
        }
        let t = self.trunc as usize;
        // n c_n = n a_n - sum_{k=1}^{n-1} k c_k a_{n-k}
        let mut c: Vec<Q> = vec![Q::zero(); t];
        for n in 1..t {
            let mut s = &self.coeffs[n] * q(n as i64);
            for k in 1..n {
                s -= &c[k] * q(k as i64) * &self.coeffs[n - k];
            }
            c[n] = s / q(n as i64);
        }
        Ok(Self::normalized(0, c, self.trunc))
    }

    /// Integer power (negative exponents go through [`QSeries::inv`]).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QSeries::one(base.trunc - base.valuation);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiply in place by a sparse polynomial `sum_j c_j q^(step*j)`
    /// whose constant term is 1. Used for Euler-type products.
    fn mul_sparse_unit(&mut self, step: i64, factor: &[Q]) {
        debug_assert!(factor[0].is_one() && step >= 1);
        let start = self.valuation;
        let len = (self.trunc - start) as usize;
        let old = self.coeffs.clone();
        let mut out = old.clone();
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, c) in factor.iter().enumerate().skip(1) {
                let back = j as i64 * step;
                if back as usize > i {
                    break;
                }
                *slot += c * &old[i - back as usize];
            }
        }
        debug_assert_eq!(out.len(), len);
        *self = Self::normalized(start, out, self.trunc);
    }
}

fn add_impl(a: &QSeries, b: &QSeries, sign: bool) -> QSeries {
    let t = a.trunc.min(b.trunc);
    let v = a.valuation.min(b.valuation).min(t);
    QSeries::from_fn(v, t, |n| {
        if sign {
            a.raw(n) + b.raw(n)
        } else {
            a.raw(n) - b.raw(n)
        }
    })
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        add_impl(self, rhs, true)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        add_impl(self, rhs, false)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&-Q::one())
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let (a, b) = (self, rhs);
        let t = (a.valuation + b.trunc).min(b.valuation + a.trunc);
        let v = a.valuation + b.valuation;
        if a.is_zero() || b.is_zero() {
            return QSeries::zero(t);
        }
        let len = (t - v) as usize;
        let mut out = vec![Q::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += x * y;
            }
        }
        QSeries::normalized(v, out, t)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{a}*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    valuation: i64,
    trunc: i64,
    #[serde(with = "rational::vec_str")]
    coeffs: Vec<Q>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            valuation: self.valuation,
            trunc: self.trunc,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        if j.coeffs.len() as i64 != j.trunc - j.valuation {
            return Err(serde::de::Error::custom(format!(
                "coeffs has {} entries but trunc - valuation = {}",
                j.coeffs.len(),
                j.trunc - j.valuation
            )));
        }
        Ok(QSeries::normalized(j.valuation, j.coeffs, j.trunc))
    }
}

fn require_trunc(trunc: i64) -> Result<()> {
    if trunc < 1 {
        return Err(Error::Invalid(format!("trunc must be >= 1, got {trunc}")));
    }
    Ok(())
}

/// Coefficients of `(1 - x)^k` up to `x^max` (generalized binomial).
fn binomial_power(k: i64, max: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Q::one());
    for j in 1..=max {
        let prev = out[j - 1].clone();
        let next = -(prev * q(k - j as i64 + 1)) / q(j as i64);
        out.push(next);
    }
    out
}

/// `prod_{n >= 1} (1 - q^n)^{exponent(n)}` exact below `q^trunc`.
pub fn euler_product(trunc: i64, exponent: impl Fn(i64) -> i64) -> Result<QSeries> {
    require_trunc(trunc)?;
    let mut acc = QSeries::one(trunc);
    for n in 1..trunc {
        let k = exponent(n);
        if k == 0 {
            continue;
        }
        let max = ((trunc - 1) / n) as usize;
        acc.mul_sparse_unit(n, &binomial_power(k, max));
    }
    Ok(acc)
}

/// `prod_{n >= 1} (1 - q^n)^k`.
pub fn eta_power(k: i64, trunc: i64) -> Result<QSeries> {
    euler_product(trunc, |_| k)
}

/// `sum_{d | n} d^k` by trial division.
pub fn divisor_power_sum(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "divisor sums are defined for n >= 1");
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

pub fn sigma(k: u32, n: u64) -> Q {
    Q::from_integer(divisor_power_sum(k, n))
}

/// `G_2(q) = -1/24 + sum_{n >= 1} sigma_1(n) q^n`.
pub fn eisenstein_g2(trunc: i64) -> Result<QSeries> {
    require_trunc(trunc)?;
    Ok(QSeries::from_fn(0, trunc, |n| {
        if n == 0 {
            frac(-1, 24)
        } else {
            sigma(1, n as u64)
        }
    }))
}

/// MacMahon's plane partition series `prod_{k >= 1} (1 - q^k)^{-k}`.
pub fn macmahon(trunc: i64) -> Result<QSeries> {
    euler_product(trunc, |k| -k)
}

/// `sum_l N_0(l) q^l = q^{-1} prod (1 - q^n)^{-24}`; exact below `q^(trunc - 1)`.
pub fn n0_series(trunc: i64) -> Result<QSeries> {
    Ok(eta_power(-24, trunc)?.shift(-1))
}

/// `sum_l N_1(l) q^l = N_0-series * q G_2'`.
pub fn n1_series(trunc: i64) -> Result<QSeries> {
    Ok(&n0_series(trunc)? * &eisenstein_g2(trunc)?.qderiv())
}

/// `24 q G_2' - 24 G_2 - 1`.
pub fn genus2_kernel(trunc: i64) -> Result<QSeries> {
    let g2 = eisenstein_g2(trunc)?;
    let a = g2.qderiv().scale(&q(24));
    let b = g2.scale(&q(24));
    Ok(&(&a - &b) - &QSeries::one(trunc))
}

/// `sum_l N_2(l) q^l = N_0-series * (24 q G_2' - 24 G_2 - 1)`.
pub fn n2_series(trunc: i64) -> Result<QSeries> {
    Ok(&n0_series(trunc)? * &genus2_kernel(trunc)?)
}

/// The three generating series `N_0, N_1, N_2`, computed once.
#[derive(Clone, Debug)]
pub struct GenusSeries {
    pub n0: QSeries,
    pub n1: QSeries,
    pub n2: QSeries,
}

impl GenusSeries {
    pub fn new(trunc: i64) -> Result<Self> {
        Ok(GenusSeries {
            n0: n0_series(trunc)?,
            n1: n1_series(trunc)?,
            n2: n2_series(trunc)?,
        })
    }

    /// `N_genus(l)`.
    pub fn get(&self, genus: u8, l: i64) -> Result<Q> {
        match genus {
            0 => self.n0.coeff(l),
            1 => self.n1.coeff(l),
            2 => self.n2.coeff(l),
            _ => Err(Error::Invalid(format!("no generating series for genus {genus}"))),
        }
    }
}
