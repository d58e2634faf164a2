//! The Mukai lattice of a K3 surface and the explicit isometry that carries
//! the class `(0, beta, n)` of one-dimensional sheaves to the class
//! `(1, 0, 1 - d)` of ideal sheaves of `d` points.
//!
//! `H^2` is modelled as a hyperbolic pair `e, f` plus `k` further classes
//! `o_1..o_k` orthogonal to both, with an arbitrary integral Gram block.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Lattice {
    pub o_labels: Vec<String>,
    pub o_gram: Vec<Vec<i64>>,
}

impl Default for K3Lattice {
    fn default() -> Self {
        K3Lattice { o_labels: vec!["o1".into()], o_gram: vec![vec![-2]] }
    }
}

impl K3Lattice {
    pub fn new(o_labels: Vec<String>, o_gram: Vec<Vec<i64>>) -> Result<Self> {
        let l = K3Lattice { o_labels, o_gram };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.o_labels.len();
        if self.o_gram.len() != k || self.o_gram.iter().any(|r| r.len() != k) {
            return Err(Error::Invalid(format!("o-block must be {k} x {k}")));
        }
        for i in 0..k {
            for j in 0..i {
                if self.o_gram[i][j] != self.o_gram[j][i] {
                    return Err(Error::Invalid(format!("o-block not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// Rank of `H^2`: `2 + k`.
    pub fn h2_rank(&self) -> usize {
        2 + self.o_labels.len()
    }

    /// Rank of the full Mukai lattice `H^0 + H^2 + H^4`.
    pub fn mukai_rank(&self) -> usize {
        self.h2_rank() + 2
    }

    pub fn e_index(&self) -> usize {
        0
    }

    pub fn f_index(&self) -> usize {
        1
    }

    pub fn h2_labels(&self) -> Vec<String> {
        let mut v = vec!["e".to_string(), "f".to_string()];
        v.extend(self.o_labels.iter().cloned());
        v
    }

    /// Intersection form on `H^2` in the basis `e, f, o_1..o_k`.
    pub fn h2_form(&self, i: usize, j: usize) -> i64 {
        match (i, j) {
            (0, 1) | (1, 0) => 1,
            (0, _) | (_, 0) | (1, _) | (_, 1) => 0,
            _ => self.o_gram[i - 2][j - 2],
        }
    }

    pub fn divisor_pair(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        let n = self.h2_rank();
        if x.len() != n || y.len() != n {
            return Err(Error::BasisMismatch(format!(
                "divisors of length {} and {} over a rank {n} lattice",
                x.len(),
                y.len()
            )));
        }
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let g = self.h2_form(i, j);
                if g != 0 {
                    s += xi * yj * q(g);
                }
            }
        }
        Ok(s)
    }

    /// Basis vector of `H^2`.
    pub fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.h2_rank()];
        v[i] = q(1);
        v
    }

    /// `beta = e + (d - 1) f`, a class of square `2d - 2`.
    pub fn curve_class(&self, d: i64) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.h2_rank()];
        v[0] = q(1);
        v[1] = q(d - 1);
        v
    }
}

/// `(r, D, s)` in `H^0 + H^2 + H^4`; `s` is the coefficient of the point class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "rational::as_str")]
    pub r: Q,
    #[serde(with = "rational::vec_str")]
    pub div: Vec<Q>,
    #[serde(with = "rational::as_str")]
    pub s: Q,
}

impl MukaiVector {
    pub fn new(r: Q, div: Vec<Q>, s: Q) -> Self {
        MukaiVector { r, div, s }
    }

    pub fn zero(lattice: &K3Lattice) -> Self {
        MukaiVector::new(Q::zero(), vec![Q::zero(); lattice.h2_rank()], Q::zero())
    }

    /// Coordinates in the basis `1, e, f, o_1..o_k, p`.
    pub fn coords(&self) -> Vec<Q> {
        let mut v = Vec::with_capacity(self.div.len() + 2);
        v.push(self.r.clone());
        v.extend(self.div.iter().cloned());
        v.push(self.s.clone());
        v
    }

    pub fn from_coords(c: &[Q]) -> Self {
        let n = c.len();
        MukaiVector::new(c[0].clone(), c[1..n - 1].to_vec(), c[n - 1].clone())
    }

    /// The `i`-th vector of the basis `1, e, f, o_1..o_k, p`.
    pub fn basis(lattice: &K3Lattice, i: usize) -> Self {
        let mut c = vec![Q::zero(); lattice.mukai_rank()];
        c[i] = q(1);
        MukaiVector::from_coords(&c)
    }

    fn add_scaled(&mut self, c: &Q, other: &MukaiVector) {
        self.r += c * &other.r;
        for (a, b) in self.div.iter_mut().zip(&other.div) {
            *a += c * b;
        }
        self.s += c * &other.s;
    }

    fn check(&self, lattice: &K3Lattice) -> Result<()> {
        if self.div.len() != lattice.h2_rank() {
            return Err(Error::BasisMismatch(format!(
                "Mukai vector has {} divisor coordinates, lattice has rank {}",
                self.div.len(),
                lattice.h2_rank()
            )));
        }
        Ok(())
    }
}

/// `<x, y> = -int x^v y = D.D' - r s' - r' s`.
pub fn mukai_pair(x: &MukaiVector, y: &MukaiVector, lattice: &K3Lattice) -> Result<Q> {
    x.check(lattice)?;
    y.check(lattice)?;
    Ok(lattice.divisor_pair(&x.div, &y.div)? - &x.r * &y.s - &y.r * &x.s)
}

/// Mukai vector `ch . sqrt(td_S)`, with `sqrt(td_S) = (1, 0, 1)`.
pub fn mukai_vector(ch0: Q, ch1: Vec<Q>, ch2: Q) -> MukaiVector {
    let s = ch2 + &ch0;
    MukaiVector::new(ch0, ch1, s)
}

/// A linear endomorphism of the Mukai lattice given by the images of the
/// basis `1, e, f, o_1..o_k, p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiMap {
    images: Vec<MukaiVector>,
}

impl MukaiMap {
    pub fn from_images(images: Vec<MukaiVector>) -> Self {
        MukaiMap { images }
    }

    pub fn images(&self) -> &[MukaiVector] {
        &self.images
    }

    pub fn image_mut(&mut self, i: usize) -> &mut MukaiVector {
        &mut self.images[i]
    }

    /// Matrix with the image of the `j`-th basis vector in column `j`.
    pub fn matrix(&self) -> Vec<Vec<Q>> {
        let n = self.images.len();
        let cols: Vec<Vec<Q>> = self.images.iter().map(|v| v.coords()).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn apply(&self, x: &MukaiVector, lattice: &K3Lattice) -> Result<MukaiVector> {
        x.check(lattice)?;
        if self.images.len() != lattice.mukai_rank() {
            return Err(Error::BasisMismatch("map and lattice ranks differ".into()));
        }
        let mut out = MukaiVector::zero(lattice);
        for (c, img) in x.coords().iter().zip(&self.images) {
            if !c.is_zero() {
                out.add_scaled(c, img);
            }
        }
        Ok(out)
    }

    /// Whether `<g b_i, g b_j> = <b_i, b_j>` for every ordered pair of basis vectors.
    pub fn is_isometry(&self, lattice: &K3Lattice) -> Result<bool> {
        let n = lattice.mukai_rank();
        if self.images.len() != n {
            return Err(Error::BasisMismatch("map and lattice ranks differ".into()));
        }
        for i in 0..n {
            let bi = MukaiVector::basis(lattice, i);
            for j in 0..n {
                let bj = MukaiVector::basis(lattice, j);
                if mukai_pair(&self.images[i], &self.images[j], lattice)? != mukai_pair(&bi, &bj, lattice)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `1 -> (0, -e, n)`, `p -> (0, f, 0)`, `e -> (1, -nf, 0)`, `f -> (0, 0, -1)`,
/// identity on the `o_i`.
pub fn transport_map(n: i64, lattice: &K3Lattice) -> MukaiMap {
    let (ei, fi) = (lattice.e_index(), lattice.f_index());
    let h2 = lattice.h2_rank();
    let mut images = Vec::with_capacity(lattice.mukai_rank());

    let mut one = MukaiVector::zero(lattice);
    one.div[ei] = q(-1);
    one.s = q(n);
    images.push(one);

    let mut e = MukaiVector::zero(lattice);
    e.r = q(1);
    e.div[fi] = q(-n);
    images.push(e);

    let mut f = MukaiVector::zero(lattice);
    f.s = q(-1);
    images.push(f);

    for i in 2..h2 {
        let mut o = MukaiVector::zero(lattice);
        o.div[i] = q(1);
        images.push(o);
    }

    let mut p = MukaiVector::zero(lattice);
    p.div[fi] = q(1);
    images.push(p);

    MukaiMap::from_images(images)
}

fn require_d(d: i64) -> Result<()> {
    if d < 1 {
        return Err(Error::Invalid(format!("transport needs d >= 1, got {d}")));
    }
    Ok(())
}

/// Image of `x` under the transport isometry for `chi = n` and `beta^2 = 2d - 2`.
pub fn apply_g(x: &MukaiVector, n: i64, d: i64, lattice: &K3Lattice) -> Result<MukaiVector> {
    require_d(d)?;
    transport_map(n, lattice).apply(x, lattice)
}

pub fn verify_isometry(n: i64, d: i64, lattice: &K3Lattice) -> Result<bool> {
    require_d(d)?;
    transport_map(n, lattice).is_isometry(lattice)
}

/// `(0, e + (d - 1) f, n)`.
pub fn sheaf_class(n: i64, d: i64, lattice: &K3Lattice) -> MukaiVector {
    MukaiVector::new(Q::zero(), lattice.curve_class(d), q(n))
}

/// `(1, 0, 1 - d)`.
pub fn ideal_sheaf_class(d: i64, lattice: &K3Lattice) -> MukaiVector {
    MukaiVector::new(q(1), vec![Q::zero(); lattice.h2_rank()], q(1 - d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn lat() -> K3Lattice {
        K3Lattice::default()
    }

    #[test]
    fn pairing_examples() {
        let l = lat();
        for d in 1..8 {
            let x = sheaf_class(3, d, &l);
            assert_eq!(mukai_pair(&x, &x, &l).unwrap(), q(2 * d - 2));
            let y = ideal_sheaf_class(d, &l);
            assert_eq!(mukai_pair(&y, &y, &l).unwrap(), q(2 * d - 2));
        }
        let one = MukaiVector::basis(&l, 0);
        let pt = MukaiVector::basis(&l, l.mukai_rank() - 1);
        assert_eq!(mukai_pair(&one, &pt, &l).unwrap(), q(-1));
    }

    #[test]
    fn pairing_rejects_wrong_rank() {
        let l = lat();
        let bad = MukaiVector::new(q(1), vec![q(0)], q(0));
        assert!(matches!(
            mukai_pair(&bad, &MukaiVector::zero(&l), &l),
            Err(Error::BasisMismatch(_))
        ));
    }

    #[test]
    fn mukai_vector_examples() {
        let z = || vec![Q::zero(); 3];
        assert_eq!(mukai_vector(q(1), z(), q(0)), MukaiVector::new(q(1), z(), q(1)));
        assert_eq!(mukai_vector(q(0), z(), q(1)), MukaiVector::new(q(0), z(), q(1)));
        assert_eq!(mukai_vector(q(1), z(), q(-4)), MukaiVector::new(q(1), z(), q(-3)));
    }

    #[test]
    fn apply_g_examples() {
        let l = lat();
        for d in 1..6 {
            for n in -1..=1 {
                let img = apply_g(&sheaf_class(n, d, &l), n, d, &l).unwrap();
                assert_eq!(img, ideal_sheaf_class(d, &l));
            }
        }
        let n = 5;
        let img = apply_g(&MukaiVector::basis(&l, 0), n, 2, &l).unwrap();
        let mut want = MukaiVector::zero(&l);
        want.div[0] = q(-1);
        want.s = q(n);
        assert_eq!(img, want);
        let o1 = MukaiVector::basis(&l, 3);
        assert_eq!(apply_g(&o1, n, 2, &l).unwrap(), o1);
        assert!(apply_g(&o1, 0, 0, &l).is_err());
    }

    #[test]
    fn isometry_examples() {
        let l = lat();
        assert!(verify_isometry(0, 2, &l).unwrap());
        assert!(verify_isometry(-1, 7, &l).unwrap());
        let mut broken = transport_map(0, &l);
        broken.image_mut(2).s = q(1);
        assert!(!broken.is_isometry(&l).unwrap());
    }

    #[test]
    fn larger_complement() {
        let l = K3Lattice::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]],
        )
        .unwrap();
        assert_eq!(l.mukai_rank(), 7);
        assert!(verify_isometry(3, 4, &l).unwrap());
        assert_eq!(transport_map(3, &l).matrix().len(), 7);
        assert!(K3Lattice::new(vec!["a".into()], vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn rational_entries() {
        let l = lat();
        let x = MukaiVector::new(frac(1, 2), vec![frac(1, 3), q(0), q(0)], q(0));
        let y = apply_g(&x, 1, 3, &l).unwrap();
        assert_eq!(mukai_pair(&y, &y, &l).unwrap(), mukai_pair(&x, &x, &l).unwrap());
    }
}
