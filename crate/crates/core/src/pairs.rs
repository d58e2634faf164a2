//! Stable pair invariants for the worked geometries and the comparison of
//! `P_{n, beta}` with Gopakumar-Vafa invariants:
//!
//! * `P_{n, beta} = 0` for `n >= 2`,
//! * `P_{1, beta}(gamma, gamma') = n_{0, beta}(gamma, gamma')`,
//! * `P_{0, beta}(gamma) = n_{1, beta}(gamma)` for primitive `beta`,
//! * `P_{-1, beta} = n_{2, beta}` for primitive `beta`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::fock_dimension;
use crate::golden::Tp2Golden;
use crate::gv::{self, CurveClassData, Gram, InsertionClass, MixedTerm};
use crate::qseries::{eta_power, genus2_kernel, sigma, QSeries};
use crate::rational::{self, q, Q};
use crate::taut;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Gv,
    Pairs,
}

/// Genus `g` on the GV side, holomorphic Euler characteristic `n` on the pairs side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Index {
    Genus(u8),
    Chi(i64),
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Genus(g) => write!(f, "g={g}"),
            Index::Chi(n) => write!(f, "n={n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Geometry {
    #[serde(rename = "K3xK3")]
    K3xK3,
    #[serde(rename = "T*P2")]
    TP2,
    #[serde(rename = "Hilb2K3-fiber")]
    Hilb2K3Fiber,
    EllipticFiber,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::K3xK3 => "K3xK3",
            Geometry::TP2 => "T*P2",
            Geometry::Hilb2K3Fiber => "Hilb2K3-fiber",
            Geometry::EllipticFiber => "EllipticFiber",
        }
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k3xk3" => Ok(Geometry::K3xK3),
            "t*p2" | "tp2" => Ok(Geometry::TP2),
            "hilb2k3-fiber" => Ok(Geometry::Hilb2K3Fiber),
            "ellipticfiber" => Ok(Geometry::EllipticFiber),
            _ => Err(Error::Invalid(format!("unknown geometry {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKey {
    Curve(CurveClassData),
    /// Degree `d` of a curve class on a local model, e.g. `d [line]`.
    Degree(u64),
    FiberMultiplicity(u64),
}

impl ClassKey {
    pub fn d(&self) -> u64 {
        match self {
            ClassKey::Curve(c) => c.d,
            ClassKey::Degree(d) | ClassKey::FiberMultiplicity(d) => *d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub side: Side,
    pub index: Index,
    pub geometry: Geometry,
    pub class_data: ClassKey,
    pub insertion_digest: String,
    #[serde(with = "rational::as_str")]
    pub value: Q,
}

impl InvariantRecord {
    pub fn key(&self) -> (Side, Index, Geometry, &ClassKey, &str) {
        (self.side, self.index, self.geometry, &self.class_data, &self.insertion_digest)
    }
}

/// Global orientation choice; `Minus` flips the sign of every pair invariant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Orientation {
    pub fn sign(self) -> Q {
        match self {
            Orientation::Plus => Q::one(),
            Orientation::Minus => -Q::one(),
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Orientation::Plus),
            "-" => Ok(Orientation::Minus),
            _ => Err(Error::Invalid(format!("orientation must be + or -, got {s:?}"))),
        }
    }
}

fn check_trunc(d: u64, trunc: i64) -> Result<()> {
    if d as i64 >= trunc {
        return Err(Error::TruncationTooSmall { exponent: d as i64, trunc });
    }
    Ok(())
}

/// `e(M_1(S, beta))` as the number of weight-`d` Nakajima monomials.
pub fn moduli_euler_characteristic(d: u64) -> Q {
    Q::from_integer(fock_dimension(d as u32))
}

/// `P_{1, beta}(g1, g2) = sum (D1.beta)(D1'.beta) int_T D2 D2' * e(M_1(S, beta))`.
pub fn pt_product_genus0(g1: &InsertionClass, g2: &InsertionClass, c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.require_primitive()?;
    check_trunc(c.d, trunc)?;
    if g1.t_gram != g2.t_gram {
        return Err(Error::BasisMismatch("insertions use different H^2(T) forms".into()));
    }
    g1.validate()?;
    g2.validate()?;
    let gram = g1.t_gram.rows();
    let mut pairing = Q::zero();
    for x in &g1.mixed {
        for y in &g2.mixed {
            let mut t = Q::zero();
            for (i, row) in gram.iter().enumerate() {
                for (j, w) in row.iter().enumerate() {
                    t += &x.d2[i] * w * &y.d2[j];
                }
            }
            pairing += &x.d1_dot_beta * &y.d1_dot_beta * t;
        }
    }
    Ok(pairing * moduli_euler_characteristic(c.d))
}

pub fn pt_higher_n_vanishing(n: i64) -> Result<Q> {
    if n < 2 {
        return Err(Error::DomainViolation("vanishing holds for n >= 2"));
    }
    Ok(Q::zero())
}

/// `P_{0, beta}(gamma) = 24 a2 int c_{2d-2} B_1 B_1`, replayed in the descendent algebra.
pub fn pt_product_genus1(g: &InsertionClass, c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.require_primitive()?;
    check_trunc(c.d, trunc)?;
    let integral = if c.d == 1 {
        // N_1(0); the descendent replay needs d >= 2
        Q::one()
    } else {
        taut::genus1_pairs_eval(c.d, trunc)?
    };
    Ok(q(24) * &g.a2 * integral)
}

/// `[q^d] prod (1 - q^n)^-24 (24 q d/dq G2 - 24 G2 - 1)`.
pub fn pt_product_genus2(c: &CurveClassData, trunc: i64) -> Result<Q> {
    c.require_primitive()?;
    check_trunc(c.d, trunc)?;
    (&eta_power(-24, trunc)? * &genus2_kernel(trunc)?).coeff(c.d as i64)
}

/// `24 (int gamma) sum_m sigma_2(m) q^m`.
pub fn multiple_fiber_series(integral_gamma: &Q, trunc: i64) -> Result<QSeries> {
    if trunc < 2 {
        return Err(Error::DomainViolation("multiple fiber series needs trunc >= 2"));
    }
    let c = q(24) * integral_gamma;
    Ok(QSeries::from_fn(0, trunc, |m| if m == 0 { Q::zero() } else { &c * sigma(2, m as u64) }))
}

/// Which Kunneth component is inserted on `Hilb^n(K3) x E`-type fibrations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberInsertion {
    /// A class pulled back from a point of the base.
    PointOnBase,
    /// `1 (x) D`, which pushes forward to zero.
    TDivisor,
}

/// `(-1)^(n+1) 24 sigma_2(n)`; `signed = false` drops the sign.
pub fn hilb_points_fiber_invariant(n: i64, insertion: FiberInsertion, signed: bool) -> Result<Q> {
    if n < 1 {
        return Err(Error::DomainViolation("fiber invariant needs n >= 1"));
    }
    if insertion == FiberInsertion::TDivisor {
        return Ok(Q::zero());
    }
    let v = q(24) * sigma(2, n as u64);
    Ok(if signed && n % 2 == 0 { -v } else { v })
}

/// Outcome for exceptional curve classes `r [P^1]` on `Hilb^2(K3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JsOutcome {
    Zero,
    /// Computed elsewhere; no value is produced here.
    External,
}

pub fn js_hilb2_fiber(n: i64, r: u64) -> Result<JsOutcome> {
    if r < 1 {
        return Err(Error::DomainViolation("js_hilb2_fiber needs r >= 1"));
    }
    let r = r as i64;
    if n <= 0 || n % r != 0 {
        return Ok(JsOutcome::Zero);
    }
    // n = m r with m > 1 vanishes by dimension; m = 1, r > 1 is supported on the small diagonal
    if n / r > 1 || r > 1 {
        return Ok(JsOutcome::Zero);
    }
    Ok(JsOutcome::External)
}

/// `-<tau_3(1)> - <tau_1(c_2)> / 12`.
pub fn genus2_descendent_relation(tau3: &Q, tau1_c2: &Q) -> Q {
    -tau3 - tau1_c2 / q(12)
}

/// `sum_{d | m} n_1(m / d) sigma_2(d)`.
pub fn imprimitive_genus1_prediction(n1_table: &BTreeMap<u64, Q>, beta_mult: u64) -> Result<Q> {
    if beta_mult < 1 {
        return Err(Error::DomainViolation("multiplicity must be >= 1"));
    }
    let mut total = Q::zero();
    for d in (1..=beta_mult).filter(|d| beta_mult.is_multiple_of(*d)) {
        let n1 = n1_table.get(&(beta_mult / d)).ok_or(Error::MissingDivisor(beta_mult / d))?;
        total += n1 * sigma(2, d);
    }
    Ok(total)
}

/// `n_1(1) = c`, `n_1(r) = 0` for `1 < r <= m_max`.
pub fn vanishing_n1_table(c: &Q, m_max: u64) -> BTreeMap<u64, Q> {
    (1..=m_max).map(|r| (r, if r == 1 { c.clone() } else { Q::zero() })).collect()
}

/// One comparison between a pair invariant and its GV counterpart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceRow {
    pub clause: u8,
    pub gv: Option<InvariantRecord>,
    pub pairs: InvariantRecord,
    /// Whether equality is claimed for this row; unasserted rows are informational.
    pub asserted: bool,
    /// `None` when there is nothing to compare against.
    pub matches: Option<bool>,
}

impl CorrespondenceRow {
    fn new(clause: u8, gv: Option<InvariantRecord>, pairs: InvariantRecord, asserted: bool) -> Self {
        let matches = match &gv {
            Some(g) => Some(g.value == pairs.value),
            None if clause == 1 => Some(pairs.value.is_zero()),
            None => None,
        };
        CorrespondenceRow { clause, gv, pairs, asserted, matches }
    }

    pub fn d(&self) -> u64 {
        self.pairs.class_data.d()
    }

    pub fn ok(&self) -> bool {
        !self.asserted || self.matches == Some(true)
    }

    pub const CSV_HEADER: &'static str = "geometry,index,d,gv_value,pairs_value,matches";

    pub fn csv_line(&self) -> String {
        let gv_index = self.gv.as_ref().map(|g| format!("{};", g.index)).unwrap_or_default();
        let gv_value = self.gv.as_ref().map(|g| g.value.to_string()).unwrap_or_default();
        format!(
            "{},{}{},{},{},{},{}",
            self.pairs.geometry.name(),
            gv_index,
            self.pairs.index,
            self.d(),
            gv_value,
            self.pairs.value,
            self.matches.map(|m| m.to_string()).unwrap_or_default()
        )
    }
}

/// Insertions used on `K3 x K3`: `gamma1` enters genus 0 and 1, `gamma2` genus 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInsertions {
    pub gamma1: InsertionClass,
    pub gamma2: InsertionClass,
}

impl Default for ReportInsertions {
    /// `gamma = p (x) 1 + D1 (x) (e + f)` with `D1 . beta = 1`, on a hyperbolic `H^2(T)`.
    fn default() -> Self {
        let g = InsertionClass {
            a1: Q::zero(),
            a2: Q::one(),
            mixed: vec![MixedTerm { d1_dot_beta: Q::one(), d2: vec![Q::one(), Q::one()] }],
            t_gram: Gram::hyperbolic(),
        };
        ReportInsertions { gamma1: g.clone(), gamma2: g }
    }
}

fn record(side: Side, index: Index, geometry: Geometry, class_data: ClassKey, digest: String, value: Q) -> InvariantRecord {
    InvariantRecord { side, index, geometry, class_data, insertion_digest: digest, value }
}

fn k3xk3_rows(d: u64, ins: &ReportInsertions, sign: &Q, trunc: i64) -> Result<Vec<CorrespondenceRow>> {
    let geo = Geometry::K3xK3;
    let c = CurveClassData::primitive(d);
    let key = ClassKey::Curve(c.clone());
    let both = format!("{}|{}", ins.gamma1.digest(), ins.gamma2.digest());
    let one = ins.gamma1.digest();
    let mut rows = Vec::with_capacity(4);

    let p = record(Side::Pairs, Index::Chi(2), geo, key.clone(), both.clone(), sign * pt_higher_n_vanishing(2)?);
    rows.push(CorrespondenceRow::new(1, None, p, true));

    let g = record(Side::Gv, Index::Genus(0), geo, key.clone(), both.clone(), gv::product_n0(&ins.gamma1, &ins.gamma2, &c, trunc)?);
    let p = record(Side::Pairs, Index::Chi(1), geo, key.clone(), both, sign * pt_product_genus0(&ins.gamma1, &ins.gamma2, &c, trunc)?);
    rows.push(CorrespondenceRow::new(2, Some(g), p, true));

    let g = record(Side::Gv, Index::Genus(1), geo, key.clone(), one.clone(), gv::product_n1(&ins.gamma1, &c, trunc)?);
    let p = record(Side::Pairs, Index::Chi(0), geo, key.clone(), one, sign * pt_product_genus1(&ins.gamma1, &c, trunc)?);
    rows.push(CorrespondenceRow::new(3, Some(g), p, true));

    let p2 = if d == 1 { pt_product_genus2(&c, trunc)? } else { taut::genus2_pairs_eval(d, trunc)? };
    let g = record(Side::Gv, Index::Genus(2), geo, key.clone(), String::new(), gv::product_n2(&c, trunc)?);
    let p = record(Side::Pairs, Index::Chi(-1), geo, key, String::new(), sign * p2);
    rows.push(CorrespondenceRow::new(4, Some(g), p, true));
    Ok(rows)
}

/// GV counterpart of `P_n` on a local model: clause and genus, if any.
fn clause_for_chi(n: i64) -> (u8, Option<u8>) {
    match n {
        1 => (2, Some(0)),
        0 => (3, Some(1)),
        -1 => (4, Some(2)),
        _ => (1, None),
    }
}

/// Rows of the `T*P^2` table; equality is asserted for `P_1` in every degree and for
/// `P_0, P_{-1}` in the primitive degree `d = 1`.
pub fn tp2_correspondence_table(golden: &Tp2Golden, orientation: Orientation) -> Vec<CorrespondenceRow> {
    let sign = orientation.sign();
    let geo = Geometry::TP2;
    let mut rows: Vec<CorrespondenceRow> = golden
        .pairs
        .iter()
        .map(|e| {
            let (clause, genus) = clause_for_chi(e.n);
            let key = ClassKey::Degree(e.d);
            let gv = genus.and_then(|g| golden.gv_value(g, e.d)).map(|g| {
                record(Side::Gv, Index::Genus(g.g), geo, key.clone(), g.insertion.clone(), g.value.clone())
            });
            let asserted = gv.is_some() && (clause == 2 || e.d == 1);
            let p = record(Side::Pairs, Index::Chi(e.n), geo, key, e.insertion.clone(), &sign * &e.value);
            CorrespondenceRow::new(clause, gv, p, asserted)
        })
        .collect();
    sort_rows(&mut rows);
    rows
}

fn sort_rows(rows: &mut [CorrespondenceRow]) {
    rows.sort_by_key(|a| (a.pairs.geometry, a.d(), a.clause));
}

/// Builds every comparison row for `d` in `d_min..=d_max`.
pub fn correspondence_report(
    geometry: Geometry,
    d_min: u64,
    d_max: u64,
    insertions: &ReportInsertions,
    orientation: Orientation,
    trunc: i64,
    tp2: &Tp2Golden,
) -> Result<Vec<CorrespondenceRow>> {
    if d_min < 1 || d_min > d_max {
        return Err(Error::Invalid(format!("bad degree range {d_min}..={d_max}")));
    }
    let mut rows = match geometry {
        Geometry::K3xK3 => {
            let sign = orientation.sign();
            let mut rows = Vec::new();
            for d in d_min..=d_max {
                rows.extend(k3xk3_rows(d, insertions, &sign, trunc)?);
            }
            rows
        }
        Geometry::TP2 => tp2_correspondence_table(tp2, orientation)
            .into_iter()
            .filter(|r| (d_min..=d_max).contains(&r.d()))
            .collect(),
        other => return Err(Error::Invalid(format!("no correspondence report for {}", other.name()))),
    };
    sort_rows(&mut rows);
    Ok(rows)
}

/// `true` iff every coefficient is an integer.
pub fn all_integral(rows: &[CorrespondenceRow]) -> bool {
    rows.iter().all(|r| {
        r.pairs.value.is_integer() && r.gv.as_ref().is_none_or(|g| g.value.is_integer())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::Golden;
    use crate::qseries::GenusSeries;
    use crate::rational::frac;

    fn ins(a2: i64, d1: i64, d2: [i64; 2]) -> InsertionClass {
        InsertionClass {
            a1: Q::zero(),
            a2: q(a2),
            mixed: vec![MixedTerm { d1_dot_beta: q(d1), d2: vec![q(d2[0]), q(d2[1])] }],
            t_gram: Gram::hyperbolic(),
        }
    }

    #[test]
    fn genus0_examples() {
        let g1 = ins(0, 1, [1, 0]);
        let g2 = ins(0, 1, [0, 1]);
        let c = CurveClassData::primitive(1);
        assert_eq!(pt_product_genus0(&g1, &g2, &c, 10).unwrap(), q(24));
        for d in 1..8 {
            let c = CurveClassData::primitive(d);
            let g1 = ins(0, 2, [1, 3]);
            let g2 = ins(0, -1, [2, 1]);
            assert_eq!(
                pt_product_genus0(&g1, &g2, &c, 12).unwrap(),
                gv::product_n0(&g1, &g2, &c, 12).unwrap()
            );
        }
        let empty = InsertionClass { mixed: vec![], ..ins(0, 0, [0, 0]) };
        assert_eq!(pt_product_genus0(&empty, &g2, &c, 10).unwrap(), q(0));
        let c2 = CurveClassData { multiplicity: 2, ..CurveClassData::primitive(2) };
        assert_eq!(pt_product_genus0(&g1, &g2, &c2, 10), Err(Error::NotPrimitive(2)));
    }

    #[test]
    fn higher_n() {
        for n in [2, 5, 100] {
            assert_eq!(pt_higher_n_vanishing(n).unwrap(), q(0));
        }
        assert!(pt_higher_n_vanishing(1).is_err());
    }

    #[test]
    fn genus1_examples() {
        let s = GenusSeries::new(12).unwrap();
        let c = CurveClassData::primitive(2);
        assert_eq!(pt_product_genus1(&ins(1, 0, [0, 0]), &c, 12).unwrap(), q(24) * s.get(1, 1).unwrap());
        assert_eq!(pt_product_genus1(&ins(1, 0, [0, 0]), &c, 12).unwrap(), q(720));
        assert_eq!(pt_product_genus1(&ins(0, 3, [1, 1]), &c, 12).unwrap(), q(0));
        let c1 = CurveClassData::primitive(1);
        assert_eq!(pt_product_genus1(&ins(1, 0, [0, 0]), &c1, 12).unwrap(), q(24) * s.get(1, 0).unwrap());
    }

    #[test]
    fn genus2_examples() {
        let v = |d| pt_product_genus2(&CurveClassData::primitive(d), 12).unwrap();
        assert_eq!(v(2), q(72));
        assert_eq!(v(5), q(305280));
        assert_eq!(v(1), q(0));
        assert!(pt_product_genus2(&CurveClassData::primitive(12), 12).is_err());
    }

    #[test]
    fn multiple_fiber_examples() {
        let s = multiple_fiber_series(&q(1), 8).unwrap();
        assert_eq!(s.coeff(6).unwrap(), q(1200));
        assert_eq!(multiple_fiber_series(&frac(3, 2), 4).unwrap().coeff(1).unwrap(), q(36));
        assert!(multiple_fiber_series(&q(0), 8).unwrap().is_zero());
        assert!(multiple_fiber_series(&q(1), 1).is_err());
    }

    #[test]
    fn fiber_invariant_examples() {
        let f = |n| hilb_points_fiber_invariant(n, FiberInsertion::PointOnBase, true).unwrap();
        assert_eq!(f(1), q(24));
        assert_eq!(f(2), q(-120));
        assert_eq!(hilb_points_fiber_invariant(2, FiberInsertion::PointOnBase, false).unwrap(), q(120));
        assert_eq!(hilb_points_fiber_invariant(3, FiberInsertion::TDivisor, true).unwrap(), q(0));
        assert!(hilb_points_fiber_invariant(0, FiberInsertion::PointOnBase, true).is_err());
    }

    #[test]
    fn js_examples() {
        assert_eq!(js_hilb2_fiber(3, 2).unwrap(), JsOutcome::Zero);
        assert_eq!(js_hilb2_fiber(2, 2).unwrap(), JsOutcome::Zero);
        assert_eq!(js_hilb2_fiber(1, 1).unwrap(), JsOutcome::External);
        assert_eq!(js_hilb2_fiber(4, 2).unwrap(), JsOutcome::Zero);
        assert_eq!(js_hilb2_fiber(-1, 1).unwrap(), JsOutcome::Zero);
        assert!(js_hilb2_fiber(1, 0).is_err());
    }

    #[test]
    fn descendent_relation_examples() {
        assert_eq!(genus2_descendent_relation(&q(0), &q(0)), q(0));
        assert_eq!(genus2_descendent_relation(&q(-72), &q(0)), q(72));
        assert_eq!(genus2_descendent_relation(&q(1), &q(-12)), q(0));
    }

    #[test]
    fn imprimitive_examples() {
        let c = frac(7, 3);
        let t = vanishing_n1_table(&c, 20);
        assert_eq!(imprimitive_genus1_prediction(&t, 1).unwrap(), c);
        assert_eq!(imprimitive_genus1_prediction(&t, 6).unwrap(), q(50) * &c);
        let mut gap = t.clone();
        gap.remove(&3);
        assert_eq!(imprimitive_genus1_prediction(&gap, 6), Err(Error::MissingDivisor(3)));
        let s = multiple_fiber_series(&q(1), 21).unwrap();
        let t = vanishing_n1_table(&q(24), 20);
        for m in 1..=20 {
            assert_eq!(imprimitive_genus1_prediction(&t, m).unwrap(), s.coeff(m as i64).unwrap());
        }
    }

    #[test]
    fn tp2_table() {
        let rows = tp2_correspondence_table(&Golden::builtin().tp2, Orientation::Plus);
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.ok()));
        let asserted: Vec<(u8, u64)> = rows.iter().filter(|r| r.asserted).map(|r| (r.clause, r.d())).collect();
        assert_eq!(asserted, vec![(2, 1), (3, 1), (4, 1), (2, 2), (2, 3)]);
        let p12 = rows.iter().find(|r| r.clause == 2 && r.d() == 2).unwrap();
        assert_eq!(p12.pairs.value, q(-1));
        assert_eq!(p12.matches, Some(true));
        let flipped = tp2_correspondence_table(&Golden::builtin().tp2, Orientation::Minus);
        assert!(!flipped.iter().all(|r| r.ok()));
    }

    #[test]
    fn k3xk3_report() {
        let rows = correspondence_report(
            Geometry::K3xK3,
            1,
            7,
            &ReportInsertions::default(),
            Orientation::Plus,
            12,
            &Golden::builtin().tp2,
        )
        .unwrap();
        assert_eq!(rows.len(), 28);
        assert!(rows.iter().all(|r| r.matches == Some(true)));
        assert!(all_integral(&rows));
        let g2d3 = rows.iter().find(|r| r.clause == 4 && r.d() == 3).unwrap();
        assert_eq!(g2d3.pairs.value, q(1920));
        assert_eq!(g2d3.gv.as_ref().unwrap().value, q(1920));
        assert!(correspondence_report(
            Geometry::EllipticFiber,
            1,
            2,
            &ReportInsertions::default(),
            Orientation::Plus,
            12,
            &Golden::builtin().tp2
        )
        .is_err());
    }

    #[test]
    fn csv_shape() {
        let rows = tp2_correspondence_table(&Golden::builtin().tp2, Orientation::Plus);
        assert_eq!(rows[0].csv_line(), "T*P2,g=0;n=1,1,1,1,true");
        assert_eq!(CorrespondenceRow::CSV_HEADER.split(',').count(), rows[0].csv_line().split(',').count());
    }

    #[test]
    fn record_json_round_trip() {
        let rows = tp2_correspondence_table(&Golden::builtin().tp2, Orientation::Plus);
        let s = serde_json::to_string(&rows[0]).unwrap();
        let back: CorrespondenceRow = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rows[0]);
    }
}
