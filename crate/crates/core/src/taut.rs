//! Descendent algebra on the Hilbert scheme `S^[d]` of a K3 surface.
//!
//! Polynomials are built from the formal generators `delta`, `G2(x)`,
//! `G3(x)` (for `x` a divisor, expanded eagerly in the lattice basis) and
//! `G2(p)`. Normalized descendents `B_1, B_2` of rank-zero Mukai vectors are
//! rewritten into these generators, and degree-4 integrands are integrated
//! against `c_{2d-2}(T_{S^[d]})` with the Fujiki-type rules:
//!
//! * `int c G2(x) G2(y) = q(x, y) N_1(d - 1)`, where `q` is the lattice form on
//!   divisors, `q(delta, delta) = -(2d - 2)` and `q(delta, divisor) = 0`;
//! * `int c G3(divisor) = 0`;
//! * `sum_d q^d int c G2(p) = prod (1 - q^n)^-24 (G2(q) + 1/24)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mukai::{apply_g, K3Lattice, MukaiVector};
use crate::qseries::{eisenstein_g2, eta_power, GenusSeries, QSeries};
use crate::rational::{frac, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Delta,
    /// `G2` of the `i`-th divisor basis vector.
    G2(usize),
    /// `G2(p)`.
    G2Point,
    /// `G3` of the `i`-th divisor basis vector.
    G3(usize),
}

impl Generator {
    /// Cohomological degree.
    pub fn degree(self) -> u32 {
        match self {
            Generator::Delta | Generator::G2(_) => 2,
            Generator::G2Point | Generator::G3(_) => 4,
        }
    }

    pub fn label(self, lattice: &K3Lattice) -> String {
        let names = lattice.h2_labels();
        match self {
            Generator::Delta => "delta".to_string(),
            Generator::G2(i) => format!("G2({})", names[i]),
            Generator::G2Point => "G2(p)".to_string(),
            Generator::G3(i) => format!("G3({})", names[i]),
        }
    }
}

/// Sorted multiset of generators.
pub type Monomial = Vec<Generator>;

pub fn monomial_degree(m: &[Generator]) -> u32 {
    m.iter().map(|g| g.degree()).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendentPoly {
    d: u64,
    terms: BTreeMap<Monomial, Q>,
}

impl DescendentPoly {
    pub fn zero(d: u64) -> Self {
        DescendentPoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: u64, c: Q) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Vec::new(), c);
        p
    }

    pub fn generator(d: u64, g: Generator) -> Self {
        let mut p = Self::zero(d);
        p.add_term(vec![g], Q::one());
        p
    }

    pub fn delta(d: u64) -> Self {
        Self::generator(d, Generator::Delta)
    }

    pub fn g2_point(d: u64) -> Self {
        Self::generator(d, Generator::G2Point)
    }

    /// `G2(D)` expanded linearly in the divisor basis.
    pub fn g2(d: u64, div: &[Q]) -> Self {
        Self::linear(d, div, Generator::G2)
    }

    /// `G3(D)` expanded linearly in the divisor basis.
    pub fn g3(d: u64, div: &[Q]) -> Self {
        Self::linear(d, div, Generator::G3)
    }

    fn linear(d: u64, div: &[Q], make: fn(usize) -> Generator) -> Self {
        let mut p = Self::zero(d);
        for (i, c) in div.iter().enumerate() {
            p.add_term(vec![make(i)], c.clone());
        }
        p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut m: Monomial, c: Q) {
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

    fn same_d(&self, other: &Self) {
        assert_eq!(self.d, other.d, "descendent polynomials on different Hilbert schemes");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_d(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.d);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_d(other);
        let mut out = Self::zero(self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Homogeneous component of cohomological degree `k`.
    pub fn degree_part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            if monomial_degree(m) == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Part of the polynomial not involving `delta`.
    pub fn delta_free(&self) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            if !m.contains(&Generator::Delta) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn render(&self, lattice: &K3Lattice) -> String {
        Rendered { p: self, lattice }.to_string()
    }

    /// JSON-friendly term list: `[{"monomial": [...], "coeff": "a/b"}]`.
    pub fn to_terms_json(&self, lattice: &K3Lattice) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                monomial: m.iter().map(|g| g.label(lattice)).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub monomial: Vec<String>,
    pub coeff: String,
}

struct Rendered<'a> {
    p: &'a DescendentPoly,
    lattice: &'a K3Lattice,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let body: Vec<String> = m.iter().map(|g| g.label(self.lattice)).collect();
            if body.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", body.join("*"))?;
            } else {
                write!(f, "{a}*{}", body.join("*"))?;
            }
        }
        Ok(())
    }
}

fn check_d(d: u64) -> Result<Q> {
    match d {
        0 => Err(Error::Invalid("Hilbert scheme index must be >= 1".into())),
        1 => Err(Error::DegenerateD(1)),
        _ => Ok(q(2 * d as i64 - 2)),
    }
}

/// `B_k(v)` on `S^[d]` for a rank-zero Mukai vector `v = (0, D, m)`, `k in {1, 2}`.
pub fn b_class(k: u8, v: &MukaiVector, d: u64, lattice: &K3Lattice) -> Result<DescendentPoly> {
    if !v.r.is_zero() {
        return Err(Error::UnsupportedRank(v.r.to_string()));
    }
    if v.div.len() != lattice.h2_rank() {
        return Err(Error::BasisMismatch("Mukai vector and lattice ranks differ".into()));
    }
    let kappa = check_d(d)?;
    let delta_over = DescendentPoly::delta(d).scale(&(Q::one() / &kappa));
    let (div_part, point_part) = match k {
        1 => {
            // B1(D) = G2(D), B1(p) = -delta/(2d-2)
            (DescendentPoly::g2(d, &v.div), delta_over.scale(&q(-1)))
        }
        2 => {
            // B2(D) = G3(D) - delta/(2d-2) G2(D), B2(p) = delta^2/(2 (2d-2)^2) - G2(p)
            let dp = DescendentPoly::g3(d, &v.div).sub(&delta_over.mul(&DescendentPoly::g2(d, &v.div)));
            let pp = delta_over.mul(&delta_over).scale(&frac(1, 2)).sub(&DescendentPoly::g2_point(d));
            (dp, pp)
        }
        _ => return Err(Error::Invalid(format!("B_{k} is not available; only k = 1, 2"))),
    };
    Ok(div_part.add(&point_part.scale(&v.s)))
}

/// `c_1 = -B_1(x)` and `c_2 = B_1(x)^2 / 2 + B_2(x)` for a transported class `x`.
pub fn chern_from_class(x: &MukaiVector, degree: u8, d: u64, lattice: &K3Lattice) -> Result<DescendentPoly> {
    match degree {
        1 => Ok(b_class(1, x, d, lattice)?.scale(&q(-1))),
        2 => {
            let b1 = b_class(1, x, d, lattice)?;
            let b2 = b_class(2, x, d, lattice)?;
            Ok(b1.mul(&b1).scale(&frac(1, 2)).add(&b2))
        }
        _ => Err(Error::Invalid(format!("Chern degree {degree} not supported; only 1, 2"))),
    }
}

/// The class `1 + p` transported to `S^[d]`: `g(1) + g(p) = (0, -e + f, n)`.
pub fn transported_one_plus_point(n: i64, d: u64, lattice: &K3Lattice) -> Result<MukaiVector> {
    let one_plus_p = MukaiVector::new(q(1), vec![Q::zero(); lattice.h2_rank()], q(1));
    apply_g(&one_plus_p, n, d as i64, lattice)
}

/// `c_k(-R pi_* F)` on `M_n(S, beta)` written on `S^[d]` in descendents.
pub fn chern_of_minus_pushforward(n: i64, degree: u8, d: u64, lattice: &K3Lattice) -> Result<DescendentPoly> {
    let x = transported_one_plus_point(n, d, lattice)?;
    chern_from_class(&x, degree, d, lattice)
}

/// Integrates degree-4 descendent polynomials against `c_{2d-2}(T_{S^[d]})`.
#[derive(Clone, Debug)]
pub struct EulerIntegrator<'a> {
    d: u64,
    lattice: &'a K3Lattice,
    delta_square: Q,
    fujiki: Q,
    g2_point: Q,
}

impl<'a> EulerIntegrator<'a> {
    pub fn new(d: u64, lattice: &'a K3Lattice, trunc: i64) -> Result<Self> {
        let kappa = check_d(d)?;
        let fujiki = GenusSeries::new(trunc)?.get(1, d as i64 - 1)?;
        Ok(EulerIntegrator {
            d,
            lattice,
            delta_square: -kappa,
            fujiki,
            g2_point: point_descendent_integral(d, trunc)?,
        })
    }

    /// Replace the value of `q(delta, delta)`.
    pub fn with_delta_square(mut self, v: Q) -> Self {
        self.delta_square = v;
        self
    }

    /// Fujiki constant `C(c_{2d-2}) = N_1(d - 1)`.
    pub fn fujiki_constant(&self) -> &Q {
        &self.fujiki
    }

    fn form(&self, a: Generator, b: Generator) -> Q {
        use Generator::*;
        match (a, b) {
            (Delta, Delta) => self.delta_square.clone(),
            (Delta, G2(_)) | (G2(_), Delta) => Q::zero(),
            (G2(i), G2(j)) => q(self.lattice.h2_form(i, j)),
            _ => unreachable!("form is only evaluated on degree-2 generators"),
        }
    }

    fn monomial(&self, m: &[Generator]) -> Q {
        match m {
            [Generator::G2Point] => self.g2_point.clone(),
            [Generator::G3(_)] => Q::zero(),
            [a, b] => self.form(*a, *b) * &self.fujiki,
            _ => unreachable!("degree-4 monomials have one or two factors"),
        }
    }

    pub fn integrate(&self, p: &DescendentPoly) -> Q {
        assert_eq!(p.d(), self.d, "integrand lives on a different Hilbert scheme");
        let mut total = Q::zero();
        for (m, c) in p.terms() {
            if monomial_degree(m) != 4 {
                log::warn!(
                    "dropping monomial {:?} of degree {} (only degree 4 pairs with c_{{2d-2}})",
                    m,
                    monomial_degree(m)
                );
                continue;
            }
            total += c * self.monomial(m);
        }
        total
    }
}

/// `int_{S^[d]} c_{2d-2}(T) G2(p)`: the `q^d` coefficient of `prod (1-q^n)^-24 (G2 + 1/24)`.
pub fn point_descendent_integral(d: u64, trunc: i64) -> Result<Q> {
    let g2 = eisenstein_g2(trunc)?;
    let shifted = &g2 + &QSeries::constant(frac(1, 24), trunc);
    (&eta_power(-24, trunc)? * &shifted).coeff(d as i64)
}

pub fn integrate_against_euler(p: &DescendentPoly, lattice: &K3Lattice, trunc: i64) -> Result<Q> {
    Ok(EulerIntegrator::new(p.d(), lattice, trunc)?.integrate(p))
}

/// A replayed computation: the rewritten integrand, its integral, and the invariant.
#[derive(Clone, Debug)]
pub struct Replay {
    pub d: u64,
    pub integrand: DescendentPoly,
    pub integral: Q,
    pub value: Q,
}

/// `-int c_{2d-2} B_1(g(1 + p)) B_1(g(p))` with `n = 0`; equals `N_1(d - 1)`.
pub fn genus1_replay(d: u64, trunc: i64, lattice: &K3Lattice, delta_square: Option<Q>) -> Result<Replay> {
    let x = transported_one_plus_point(0, d, lattice)?;
    let pt = MukaiVector::basis(lattice, lattice.mukai_rank() - 1);
    let y = apply_g(&pt, 0, d as i64, lattice)?;
    let integrand = b_class(1, &x, d, lattice)?.mul(&b_class(1, &y, d, lattice)?).scale(&q(-1));
    let mut integ = EulerIntegrator::new(d, lattice, trunc)?;
    if let Some(v) = delta_square {
        integ = integ.with_delta_square(v);
    }
    let integral = integ.integrate(&integrand);
    Ok(Replay { d, integrand, value: integral.clone(), integral })
}

/// `P_{-1} = -e(T) int c_{2d-2} c_2(-R pi_* F)` with `n = -1`, `e(T) = 24`.
pub fn genus2_replay(d: u64, trunc: i64, lattice: &K3Lattice, delta_square: Option<Q>) -> Result<Replay> {
    let integrand = chern_of_minus_pushforward(-1, 2, d, lattice)?;
    let mut integ = EulerIntegrator::new(d, lattice, trunc)?;
    if let Some(v) = delta_square {
        integ = integ.with_delta_square(v);
    }
    let integral = integ.integrate(&integrand);
    let value = -(q(24) * &integral);
    Ok(Replay { d, integrand, integral, value })
}

pub fn genus1_pairs_eval(d: u64, trunc: i64) -> Result<Q> {
    Ok(genus1_replay(d, trunc, &K3Lattice::default(), None)?.value)
}

pub fn genus2_pairs_eval(d: u64, trunc: i64) -> Result<Q> {
    Ok(genus2_replay(d, trunc, &K3Lattice::default(), None)?.value)
}
