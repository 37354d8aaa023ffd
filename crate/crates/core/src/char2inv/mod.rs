//! Characteristic-2 invariants of pairs `(a, b)` of binary forms of degrees
//! 3 and 6, obtained from the Igusa invariants by lifting `y^2 + a y = b` to
//! the sextic `a^2 + 4b`, dividing out the exact power of 2 and reducing
//! modulo 2.
//!
//! Convention: `a = Σ a_i x1^(3-i) x2^i`, `b = Σ b_j x1^(6-j) x2^j`; the
//! affine coordinate is `x = x2/x1`, so `a(x) = Σ a_i x^i`, and `x1 = 0` is
//! the point at infinity.

mod action;
pub mod anchors;
mod relations;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::igusa0::{igusa_table, IgusaTable, JName, ScaledInvariant};
use crate::polycore::{F2Poly, Monomial, Poly, PolyError, Substitution, Var, ZPoly, F2};

pub use action::{check_invariance, covariant_c20, generators, FormPair, Generator, GroupElement, InvarianceFailure};
pub use relations::{independence_monomials, verify_relations, RelationCheck, RelationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Char2Error {
    #[error("{0} reduced to zero after substitution")]
    ZeroAfterSubstitution(JName),
    #[error("K4 is not divisible by K1: {0}")]
    NotDivisible(PolyError),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

/// Names of the characteristic-2 invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KName {
    K1,
    K2,
    K3,
    K4,
    K8,
    K10,
    K12,
    K15,
}

impl KName {
    pub const ALL: [KName; 8] = [KName::K1, KName::K2, KName::K3, KName::K4, KName::K8, KName::K10, KName::K12, KName::K15];

    pub fn weight(self) -> u32 {
        match self {
            KName::K1 => 1,
            KName::K2 => 2,
            KName::K3 => 3,
            KName::K4 => 4,
            KName::K8 => 8,
            KName::K10 => 10,
            KName::K12 => 12,
            KName::K15 => 15,
        }
    }

    pub fn parse(s: &str) -> Option<KName> {
        KName::ALL.into_iter().find(|k| k.to_string().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for KName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A named characteristic-2 invariant of weight `weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub name: KName,
    pub weight: u32,
    pub body: F2Poly,
}

impl InvariantRecord {
    pub fn new(name: KName, body: F2Poly) -> Self {
        InvariantRecord { name, weight: name.weight(), body }
    }

    /// `(a-degree) + 2 (b-degree) = 2n` for every monomial.
    pub fn is_bi_isobaric(&self) -> bool {
        self.body.terms().iter().all(|(m, _)| {
            m.degree_where(Var::is_a) + 2 * m.degree_where(Var::is_b) == 2 * self.weight
                && m.degree() == m.degree_where(|v| v.is_a() || v.is_b())
        })
    }

    /// Weight `i` on `a_i` and `j` on `b_j` sums to `3n` on every monomial.
    pub fn is_weighted_isobaric(&self) -> bool {
        self.body.terms().iter().all(|(m, _)| weighted_degree(m) == 3 * self.weight)
    }
}

pub(crate) fn weighted_degree(m: &Monomial) -> u32 {
    m.iter().filter_map(|(v, e)| v.subscript().map(|j| j as u32 * e)).sum()
}

/// `c_i ↦ 4 b_i + Σ_{r+s=i} a_r a_s`, i.e. the coefficients of `a^2 + 4b`.
pub fn substitution_eq6() -> Substitution<BigInt> {
    let mut s = Substitution::new();
    for i in 0..=6usize {
        let mut terms = vec![(Monomial::var(Var::b(i)), BigInt::from(4))];
        for r in 0..=3usize {
            if i >= r && i - r <= 3 {
                terms.push((Monomial::var(Var::a(r)).mul(&Monomial::var(Var::a(i - r))), BigInt::from(1)));
            }
        }
        s.set(Var::c(i), Poly::from_terms(terms));
    }
    s
}

/// The Igusa invariant after the substitution of `a^2 + 4b`, still over the
/// integers and without its scale.
pub fn lifted_body(j: &ScaledInvariant) -> ZPoly {
    j.body.substitute(&substitution_eq6())
}

/// 2-adic valuation of `scale · body` after substitution; nonnegative iff
/// the invariant is integral on the lifted family.
pub fn lifted_valuation(j: &ScaledInvariant) -> Result<i64, Char2Error> {
    let content = lifted_body(j).content_2adic().map_err(|_| Char2Error::ZeroAfterSubstitution(j.name))?;
    Ok(content as i64 + j.scale.valuation2())
}

/// Substitutes, divides by the exact power of 2 and reduces modulo 2.
///
/// The odd part of the scale reduces to 1 and its power of 2 is absorbed in
/// the division, so only the body matters.
pub fn reduce_invariant(j: &ScaledInvariant) -> Result<F2Poly, Char2Error> {
    lifted_body(j).divide_pow2_and_reduce().map_err(|_| Char2Error::ZeroAfterSubstitution(j.name))
}

/// `K1 = a0 a3 + a1 a2`.
pub fn k1() -> F2Poly {
    let m = |i: usize, j: usize| Monomial::var(Var::a(i)).mul(&Monomial::var(Var::a(j)));
    Poly::from_terms([(m(0, 3), F2::ONE), (m(1, 2), F2::ONE)])
}

/// The table of characteristic-2 invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTable {
    records: Vec<InvariantRecord>,
}

impl KTable {
    pub fn get(&self, name: KName) -> &InvariantRecord {
        self.records.iter().find(|r| r.name == name).expect("table is complete")
    }

    pub fn body(&self, name: KName) -> &F2Poly {
        &self.get(name).body
    }

    pub fn iter(&self) -> impl Iterator<Item = &InvariantRecord> {
        self.records.iter()
    }

    pub fn from_records(records: Vec<InvariantRecord>) -> Option<Self> {
        let complete = KName::ALL.iter().all(|n| records.iter().filter(|r| r.name == *n).count() == 1);
        complete.then_some(KTable { records })
    }

    /// Replaces one body; used to exercise failure paths.
    pub fn with_body(mut self, name: KName, body: F2Poly) -> Self {
        for r in &mut self.records {
            if r.name == name {
                r.body = body.clone();
            }
        }
        self
    }
}

/// Outcome of reducing `J6`, including the fallback search if needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct J6Reduction {
    /// Integer weights `(x, y, z)` of `x J2^3 + y J2 J4 + z J6` that reduce to `K3^2`.
    pub combination: (i64, i64, i64),
    pub direct: bool,
}

/// Tries `reduce(J6) = K3^2` directly, then small integral combinations of
/// `J2^3, J2 J4, J6`.
pub fn reduce_j6_to_k3_squared(igusa: &IgusaTable, k3: &F2Poly) -> Result<J6Reduction, Char2Error> {
    let target = k3.square();
    let j6 = igusa.get(JName::J6);
    if reduce_invariant(j6)? == target {
        return Ok(J6Reduction { combination: (0, 0, 1), direct: true });
    }
    let parts = [
        scaled_product(&[igusa.get(JName::J2); 3]),
        scaled_product(&[igusa.get(JName::J2), igusa.get(JName::J4)]),
        (j6.scale.value().clone(), j6.body.clone()),
    ];
    for bound in 1..=4i64 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                for z in 1..=bound {
                    if x.abs().max(y.abs()).max(z) != bound {
                        continue;
                    }
                    let comb = rational_combination(&parts, &[x, y, z]);
                    if comb.is_zero() {
                        continue;
                    }
                    let reduced = comb.substitute(&substitution_eq6()).divide_pow2_and_reduce();
                    if reduced.as_ref() == Ok(&target) {
                        return Ok(J6Reduction { combination: (x, y, z), direct: false });
                    }
                }
            }
        }
    }
    Err(Char2Error::VerificationFailure("no small combination of J2^3, J2 J4, J6 reduces to K3^2".into()))
}

fn scaled_product(js: &[&ScaledInvariant]) -> (num_rational::BigRational, ZPoly) {
    js.iter().fold((num_rational::BigRational::from_integer(1.into()), ZPoly::one()), |(s, b), j| {
        (s * j.scale.value(), b.mul(&j.body))
    })
}

/// Integral body proportional to `Σ k_i s_i p_i`.
fn rational_combination(parts: &[(num_rational::BigRational, ZPoly)], ks: &[i64]) -> ZPoly {
    let lcm = parts.iter().fold(BigInt::from(1), |l, (s, _)| num_integer::Integer::lcm(&l, s.denom()));
    let mut out = ZPoly::zero();
    for ((s, p), k) in parts.iter().zip(ks) {
        let c = (s * num_rational::BigRational::from_integer(lcm.clone() * BigInt::from(*k))).to_integer();
        out = out.add(&p.scale(&c));
    }
    out
}

/// Builds all characteristic-2 invariants from a calibrated Igusa table.
pub fn build_k_table_from(igusa: &IgusaTable) -> Result<KTable, Char2Error> {
    let k1 = k1();
    let k2 = reduce_invariant(igusa.get(JName::J2))?;
    // J2^2 has 2-adic valuation 0 on the lifted family while 24 J4 has
    // valuation 3, so J2^2 - 24 J4 only reduces to K1^4; J4 itself carries
    // the new weight-4 invariant.
    let k4 = reduce_invariant(igusa.get(JName::J4))?;
    let k3 = k4.exact_div(&k1).map_err(Char2Error::NotDivisible)?;
    let k8 = reduce_invariant(igusa.get(JName::J8))?;
    let k10 = reduce_invariant(igusa.get(JName::J10))?;
    let k1_4 = k1.frobenius(2);
    let k3_3 = k3.pow(3);
    let k1_3 = k1.pow(3);
    let k12 = k8.mul(&k1_4).add(&k3.frobenius(2)).add(&k1_3.mul(&k3_3));
    let k15 = k1_3
        .mul(&k3.frobenius(2))
        .add(&k1.pow(5).mul(&k10))
        .add(&k1_4.mul(&k3).mul(&k8))
        .add(&k3.pow(5));
    let records = vec![
        InvariantRecord::new(KName::K1, k1),
        InvariantRecord::new(KName::K2, k2),
        InvariantRecord::new(KName::K3, k3),
        InvariantRecord::new(KName::K4, k4),
        InvariantRecord::new(KName::K8, k8),
        InvariantRecord::new(KName::K10, k10),
        InvariantRecord::new(KName::K12, k12),
        InvariantRecord::new(KName::K15, k15),
    ];
    let table = KTable { records };
    anchors::verify_anchors(&table)?;
    Ok(table)
}

pub fn build_k_table() -> Result<KTable, Char2Error> {
    build_k_table_from(igusa_table())
}

static TABLE: OnceLock<KTable> = OnceLock::new();

/// Process-wide memoized K-table.
pub fn k_table() -> &'static KTable {
    TABLE.get_or_init(|| build_k_table().expect("K-table construction must succeed"))
}

/// Seeds the process-wide table (e.g. from a cache) unless it is already
/// set; returns the table in effect.
pub fn install_k_table(table: KTable) -> &'static KTable {
    TABLE.get_or_init(|| table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::format::parse_text;

    fn z(s: &str) -> ZPoly {
        parse_text(s).unwrap()
    }

    #[test]
    fn eq6_images() {
        let s = substitution_eq6();
        assert_eq!(s.get(Var::c(0)), Some(&z("4*b0 + a0^2")));
        assert_eq!(s.get(Var::c(3)), Some(&z("4*b3 + 2*a0*a3 + 2*a1*a2")));
        assert_eq!(s.get(Var::c(6)), Some(&z("4*b6 + a3^2")));
    }

    #[test]
    fn k_names_round_trip() {
        for k in KName::ALL {
            assert_eq!(KName::parse(&k.to_string()), Some(k));
        }
        assert_eq!(KName::parse("k10"), Some(KName::K10));
        assert_eq!(KName::parse("K5"), None);
    }

    #[test]
    fn k1_record_is_isobaric() {
        let r = InvariantRecord::new(KName::K1, k1());
        assert!(r.is_bi_isobaric() && r.is_weighted_isobaric());
        let bad = InvariantRecord::new(KName::K1, parse_text("a0*a3 + a1*a3").unwrap());
        assert!(!bad.is_weighted_isobaric());
    }

    #[test]
    fn i4_reduces_only_to_k1_fourth_power() {
        let ig = igusa_table();
        assert_eq!(reduce_invariant(ig.get(JName::I4)).unwrap(), k1().pow(4));
        assert_eq!(lifted_valuation(ig.get(JName::J4)).unwrap(), 0);
    }

    #[test]
    fn table_from_records_requires_all_names() {
        let t = k_table();
        let partial: Vec<_> = t.iter().filter(|r| r.name != KName::K8).cloned().collect();
        assert!(KTable::from_records(partial).is_none());
        assert!(KTable::from_records(t.iter().cloned().collect()).is_some());
    }

    #[test]
    fn corrupted_table_fails_anchors() {
        let t = k_table().clone().with_body(KName::K3, k1());
        assert!(matches!(anchors::verify_anchors(&t), Err(Char2Error::VerificationFailure(_))));
    }
}
