//! Known expansions used to confirm that the reduction reproduced the
//! expected normalization of each invariant.

use serde::Serialize;

use crate::polycore::{format::parse_text, F2Poly, Poly, Var};

use super::{Char2Error, KName, KTable};

/// Sum over rows of products of parsed factors.
fn sum_of_products(rows: &[&[&str]]) -> F2Poly {
    rows.iter().fold(Poly::zero(), |acc, factors| {
        let prod = factors.iter().fold(Poly::one(), |p: F2Poly, f| p.mul(&parse_text(f).expect("anchor text")));
        acc.add(&prod)
    })
}

const K1: &str = "a0*a3 + a1*a2";

/// `K3` in full.
pub fn k3_display() -> F2Poly {
    sum_of_products(&[
        &[K1, "b3^2"],
        &["a0^2*a3^2 + a0*a2^3 + a1^3*a3 + a1^2*a2^2", "b3"],
        &[K1, "a1^2*b4"],
        &[K1, "a2^2*b2"],
        &["a0^2*a1*a3 + a0^2*a2^2 + a0*a1^2*a2 + a1^4", "b5"],
        &["a0*a2*a3^2 + a3^2*a1^2 + a1*a2^2*a3 + a2^4", "b1"],
        &[K1, "a0^2*b6"],
        &[K1, "a3^2*b0"],
    ])
}

/// Coefficient of `b3^k`, as a polynomial free of `b3`.
pub fn b3_stratum(p: &F2Poly, k: u32) -> F2Poly {
    p.coeff_of_power(Var::b(3), k)
}

/// The highest `b3`-strata of `K8`, from `b3^8` down to `b3^5`.
pub fn k8_top_strata() -> Vec<(u32, F2Poly)> {
    vec![
        (8, Poly::one()),
        (7, Poly::zero()),
        (6, sum_of_products(&[&[K1, K1]])),
        (5, sum_of_products(&[&[K1, "a0^2*a3^2 + a0*a2^3 + a1^3*a3 + a1^2*a2^2"]])),
    ]
}

/// The highest `b3`-strata of `K10`, from `b3^6` down to `b3^4`.
pub fn k10_top_strata() -> Vec<(u32, F2Poly)> {
    let b3_4 = parse_text(
        "a0^6*a3^6 + a0^5*a1*a2*a3^5 + a0^4*a1^2*a2^2*a3^4 + a0^3*a1^3*a2^3*a3^3 \
         + a0^6*a3^4*b6 + a0^5*a1*a3^4*b5 + a0^5*a2^2*a3^3*b5 + a0^4*a1^2*a3^4*b4 \
         + a0^4*a1*a2^3*a3^2*b5 + a0^4*a2^6*b6 + a0^4*a2^5*a3*b5 + a0^4*a2^4*a3^2*b4 \
         + a0^4*a2^2*a3^4*b2 + a0^4*a2*a3^5*b1 + a0^4*a3^6*b0 + a0^3*a1^2*a3^5*b1 \
         + a0^2*a1^4*a3^4*b2 + a0^2*a1^3*a2*a3^4*b1 + a0*a1^5*a3^4*b1 + a1^6*a3^4*b0 \
         + a0^4*a2^4*b5^2 + a1^4*a3^4*b1^2",
    )
    .expect("anchor text");
    vec![
        (6, parse_text("a0^4*a3^4").expect("anchor text")),
        (5, parse_text("a0^5*a3^5 + a0^4*a1*a2*a3^4 + a0^4*a2^3*a3^3 + a0^3*a1^3*a3^4").expect("anchor text")),
        (4, b3_4),
    ]
}

/// `(a0^2a3^2 + a0a1a2a3 + a0a2^3 + a1^3a3)^4`, the `b`-free part of the
/// `b3^4` stratum of `K12`.
pub fn k12_b3_4_leading() -> F2Poly {
    parse_text::<crate::polycore::F2>("a0^2*a3^2 + a0*a1*a2*a3 + a0*a2^3 + a1^3*a3").expect("anchor text").frobenius(2)
}

fn b_free(p: &F2Poly) -> F2Poly {
    p.filter_terms(|m| m.degree_where(Var::is_b) == 0)
}

fn check_strata(name: KName, body: &F2Poly, strata: &[(u32, F2Poly)]) -> Result<(), String> {
    let top = strata[0].0;
    if body.degree_in(Var::b(3)) != top {
        return Err(format!("{name} has b3-degree {}, expected {top}", body.degree_in(Var::b(3))));
    }
    for (k, expected) in strata {
        if &b3_stratum(body, *k) != expected {
            return Err(format!("{name}: b3^{k} stratum differs from the known expansion"));
        }
    }
    Ok(())
}

/// Outcome of one named anchor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnchorCheck {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn anchor(id: &'static str, outcome: Result<(), String>) -> AnchorCheck {
    match outcome {
        Ok(()) => AnchorCheck { id, passed: true, detail: "matches".into() },
        Err(detail) => AnchorCheck { id, passed: false, detail },
    }
}

fn ensure(ok: bool, msg: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Every anchor, evaluated independently so that one failure does not hide
/// another.
pub fn anchor_checks(table: &KTable) -> Vec<AnchorCheck> {
    let k1 = table.body(KName::K1);
    let k12 = table.body(KName::K12);
    vec![
        anchor("K2 = K1^2", ensure(table.body(KName::K2) == &k1.square(), "K2 != K1^2")),
        anchor("K4 = K3*K1", ensure(&table.body(KName::K3).mul(k1) == table.body(KName::K4), "K3 K1 != K4")),
        anchor("K3 full expansion", ensure(table.body(KName::K3) == &k3_display(), "K3 differs from the known expansion")),
        anchor("K8 b3^8..b3^5 strata", check_strata(KName::K8, table.body(KName::K8), &k8_top_strata())),
        anchor("K10 b3^6..b3^4 strata", check_strata(KName::K10, table.body(KName::K10), &k10_top_strata())),
        anchor(
            "K12 b3^4 stratum",
            ensure(
                k12.degree_in(Var::b(3)) == 4 && b_free(&b3_stratum(k12, 4)) == k12_b3_4_leading(),
                "K12 b3^4 stratum differs from the known expansion",
            ),
        ),
    ]
}

/// Checks every anchor against a table, reporting the first failure.
pub fn verify_anchors(table: &KTable) -> Result<(), Char2Error> {
    match anchor_checks(table).into_iter().find(|c| !c.passed) {
        Some(c) => Err(Char2Error::VerificationFailure(format!("{}: {}", c.id, c.detail))),
        None => Ok(()),
    }
}
