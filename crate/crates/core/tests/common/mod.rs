//! Property checks shared by the randomized suites. Each takes concrete
//! inputs and panics with a description when the property fails.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gvpairs::fock::{fock_pairing, CohBasis, Creation, FockState};
use gvpairs::gv::{multiple_cover_forward, product_n0, solve_multiple_cover, CurveClassData, Gram, InsertionClass, MixedTerm};
use gvpairs::mukai::{apply_g, mukai_pair, verify_isometry, K3Lattice, MukaiVector};
use gvpairs::qseries::eta_power;
use gvpairs::rational::{frac, q};
use gvpairs::taut::{genus1_replay, genus2_replay};
use gvpairs::{QSeries, Q};

/// Series with coefficients `nums[i] / den` at `q^(valuation + i)`, exact to `trunc`.
pub fn series(valuation: i64, nums: &[i64], den: i64, trunc: i64) -> QSeries {
    QSeries::with_trunc(valuation, nums.iter().map(|&n| frac(n, den)).collect(), trunc)
}

/// Equality up to the smaller of the two truncation orders.
pub fn assert_agree(x: &QSeries, y: &QSeries, what: &str) {
    let t = x.trunc().min(y.trunc());
    assert_eq!(x.truncate(t), y.truncate(t), "{what}");
}

pub fn ring_laws(a: &QSeries, b: &QSeries, c: &QSeries) {
    assert_agree(&(&(a + b) + c), &(a + &(b + c)), "addition is associative");
    assert_agree(&(a + b), &(b + a), "addition commutes");
    assert_agree(&(a * b), &(b * a), "multiplication commutes");
    assert_agree(&(&(a * b) * c), &(a * &(b * c)), "multiplication is associative");
    assert_agree(&(a * &(b + c)), &(&(a * b) + &(a * c)), "distributivity");
    let neg = a.scale(&frac(-1, 1));
    assert!((a + &neg).is_zero(), "a + (-a) = 0");
    assert_agree(&(a * &QSeries::one(a.trunc())), a, "unit");
}

/// `a * a^-1 = 1` for nonzero `a`.
pub fn inverse(a: &QSeries) {
    let inv = a.inv().expect("invertible");
    let prod = a * &inv;
    assert_agree(&prod, &QSeries::one(prod.trunc()), "a * a^-1");
    assert_agree(&inv.inv().unwrap(), a, "double inverse");
}

/// `x` must have valuation >= 1.
pub fn exp_log(x: &QSeries) {
    let e = x.exp_series().unwrap();
    assert_agree(&e.log_series().unwrap(), x, "log(exp(x)) = x");
    let one_plus = &QSeries::one(x.trunc()) + x;
    assert_agree(&one_plus.log_series().unwrap().exp_series().unwrap(), &one_plus, "exp(log(1 + x)) = 1 + x");
    let y = x.scale(&frac(-1, 1));
    assert_agree(&(&e * &y.exp_series().unwrap()), &QSeries::one(x.trunc()), "exp(x) exp(-x) = 1");
}

pub fn leibniz(a: &QSeries, b: &QSeries) {
    let lhs = (a * b).qderiv();
    let rhs = &(&a.qderiv() * b) + &(a * &b.qderiv());
    assert_agree(&lhs, &rhs, "q d/dq is a derivation");
}

pub fn eta_additivity(k1: i64, k2: i64, trunc: i64) {
    let lhs = &eta_power(k1, trunc).unwrap() * &eta_power(k2, trunc).unwrap();
    assert_eq!(lhs, eta_power(k1 + k2, trunc).unwrap(), "eta^{k1} eta^{k2}");
}

/// Solving the multiple cover formula inverts its forward form.
pub fn multiple_cover_round_trip(values: &[Q], exponent: i32) {
    let n0: BTreeMap<u64, Q> = values.iter().cloned().enumerate().map(|(i, v)| (i as u64 + 1, v)).collect();
    let gw = multiple_cover_forward(&n0, exponent).unwrap();
    assert_eq!(solve_multiple_cover(&gw, exponent).unwrap(), n0, "round trip, exponent {exponent}");
    assert_eq!(multiple_cover_forward(&solve_multiple_cover(&n0, exponent).unwrap(), exponent).unwrap(), n0);
}

pub fn mukai_vector(lattice: &K3Lattice, c: &[i64]) -> MukaiVector {
    assert_eq!(c.len(), lattice.mukai_rank());
    MukaiVector::from_coords(&c.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

fn combine(a: &Q, x: &MukaiVector, b: &Q, y: &MukaiVector) -> MukaiVector {
    MukaiVector::new(
        a * &x.r + b * &y.r,
        x.div.iter().zip(&y.div).map(|(u, v)| a * u + b * v).collect(),
        a * &x.s + b * &y.s,
    )
}

pub fn mukai_bilinear(lattice: &K3Lattice, x: &MukaiVector, y: &MukaiVector, z: &MukaiVector, a: &Q, b: &Q) {
    let p = |u: &MukaiVector, v: &MukaiVector| mukai_pair(u, v, lattice).unwrap();
    assert_eq!(p(x, y), p(y, x), "symmetry");
    let xy = combine(a, x, b, y);
    assert_eq!(p(&xy, z), a * p(x, z) + b * p(y, z), "linearity");
}

pub fn transport_preserves_pairing(lattice: &K3Lattice, n: i64, d: i64, x: &MukaiVector, y: &MukaiVector) {
    assert!(verify_isometry(n, d, lattice).unwrap());
    let gx = apply_g(x, n, d, lattice).unwrap();
    let gy = apply_g(y, n, d, lattice).unwrap();
    assert_eq!(mukai_pair(&gx, &gy, lattice).unwrap(), mukai_pair(x, y, lattice).unwrap());
}

/// The replays do not depend on the value assigned to `q(delta, delta)`.
pub fn delta_cancellation(d: u64, delta_square: &Q, trunc: i64) {
    let l = K3Lattice::default();
    let base1 = genus1_replay(d, trunc, &l, None).unwrap().value;
    let base2 = genus2_replay(d, trunc, &l, None).unwrap().value;
    assert_eq!(genus1_replay(d, trunc, &l, Some(delta_square.clone())).unwrap().value, base1);
    assert_eq!(genus2_replay(d, trunc, &l, Some(delta_square.clone())).unwrap().value, base2);
}

pub fn fock_monomial(parts: &[(u32, usize)]) -> FockState {
    FockState::monomial(parts.iter().map(|&(m, c)| Creation::new(m, c)).collect(), q(1))
}

fn profile(parts: &[(u32, usize)]) -> Vec<u32> {
    let mut p: Vec<u32> = parts.iter().map(|x| x.0).collect();
    p.sort();
    p
}

pub fn fock_symmetry_orthogonality(a: &[(u32, usize)], b: &[(u32, usize)]) {
    let basis = CohBasis::default();
    let (x, y) = (fock_monomial(a), fock_monomial(b));
    let xy = fock_pairing(&x, &y, &basis);
    assert_eq!(xy, fock_pairing(&y, &x, &basis), "pairing symmetric");
    if profile(a) != profile(b) {
        assert_eq!(xy, q(0), "distinct partition profiles are orthogonal");
    }
    let two = x.scale(&q(2)).add(&y);
    assert_eq!(fock_pairing(&two, &y, &basis), q(2) * &xy + fock_pairing(&y, &y, &basis), "bilinear");
}

pub fn insertion(a2: i64, mixed: &[(i64, [i64; 2])]) -> InsertionClass {
    InsertionClass {
        a1: q(0),
        a2: q(a2),
        mixed: mixed
            .iter()
            .map(|(d1, d2)| MixedTerm { d1_dot_beta: q(*d1), d2: vec![q(d2[0]), q(d2[1])] })
            .collect(),
        t_gram: Gram::hyperbolic(),
    }
}

/// `product_n0` is linear in its first insertion (concatenating mixed parts adds them).
pub fn product_n0_bilinear(g1: &InsertionClass, g2: &InsertionClass, h: &InsertionClass, d: u64) {
    let c = CurveClassData::primitive(d);
    let trunc = d as i64 + 2;
    let mut sum = g1.clone();
    sum.mixed.extend(g2.mixed.iter().cloned());
    let lhs = product_n0(&sum, h, &c, trunc).unwrap();
    let rhs = product_n0(g1, h, &c, trunc).unwrap() + product_n0(g2, h, &c, trunc).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(product_n0(g1, h, &c, trunc).unwrap(), product_n0(h, g1, &c, trunc).unwrap());
}
