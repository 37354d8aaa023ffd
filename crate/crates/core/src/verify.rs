//! The verification suites behind `g2c2 verify`.
//!
//! Each suite returns a flat list of named checks. A check marked
//! informational is reported but never fails its suite.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::char2inv::{
    anchors, check_invariance, reduce_invariant, reduce_j6_to_k3_squared, verify_relations, KName, KTable,
};
use crate::curves::{compile_table, enumerate_curves, BinaryField, FqGroupElement, Genus2Curve};
use crate::hilbert;
use crate::igusa0::{self, proj_relation_residual, IgusaTable, JName, ScaledInvariant};
use crate::polycore::{RationalConstant, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Invariants,
    Hilbert,
    Curves,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Invariants, Suite::Hilbert, Suite::Curves];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Invariants => "invariants",
            Suite::Hilbert => "hilbert",
            Suite::Curves => "curves",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.to_string() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub informational: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { suite, name: name.into(), passed, informational: false, detail: detail.into() }
    }

    fn info(suite: Suite, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { suite, name: name.into(), passed: true, informational: true, detail: detail.into() }
    }

    /// `PASS`, `FAIL` or `INFO` followed by the name and detail.
    pub fn line(&self) -> String {
        let tag = match (self.informational, self.passed) {
            (true, _) => "INFO",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        format!("{tag} [{}] {}: {}", self.suite, self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<Suite>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn extend(&mut self, suite: Suite, checks: Vec<Check>) {
        self.suites.push(suite);
        self.checks.extend(checks);
    }
}

/// Order to which the series identities are checked.
pub const HILBERT_ORDER: usize = 200;
/// Weight bound of the independence witness.
pub const INDEPENDENCE_WEIGHT: u32 = 20;
/// Random `(curve, group element)` pairs per field in the curves suite.
pub const ACTION_SAMPLES: usize = 1000;
const SEED: u64 = 0x6732_6332;

fn verdict(ok: bool, yes: &str, no: impl FnOnce() -> String) -> (bool, String) {
    if ok {
        (true, yes.to_string())
    } else {
        (false, no())
    }
}

fn sl2_invariant(j: &ScaledInvariant) -> bool {
    let upper = j.body.substitute(&igusa0::sextic_unipotent_substitution(Var::T));
    let swap = j.body.substitute(&igusa0::sextic_swap_substitution());
    upper == j.body && swap == j.body
}

/// Calibration of the Igusa invariants.
pub fn igusa_checks(igusa: &IgusaTable) -> Vec<Check> {
    let s = Suite::Invariants;
    let mut out = Vec::new();

    let j2 = igusa.get(JName::J2);
    let expected = ScaledInvariant::from_parts(JName::J2, igusa0::anchors::j2_scale().value().clone(), igusa0::anchors::j2_display());
    let (ok, d) = verdict(j2 == &expected, "J2 = 2^-2 (-120 c0c6 + 20 c1c5 - 8 c2c4 + 3 c3^2)", || {
        format!("J2 has scale {} and {} terms", j2.scale, j2.body.len())
    });
    out.push(Check::new(s, "J2 displayed formula", ok, d));

    let j4 = igusa.get(JName::J4);
    let leading_ok = igusa0::anchors::j4_leading().iter().all(|(m, v)| &j4.coefficient(m) == v);
    let (ok, d) = verdict(leading_ok && j4.scale == RationalConstant::pow2(-7), "J4 = 2^-7 (2640 c0^2c6^2 - 880 c0c1c5c6 + ...)", || {
        format!("J4 has scale {}", j4.scale)
    });
    out.push(Check::new(s, "J4 leading terms", ok, d));

    let residual = proj_relation_residual(igusa);
    out.push(Check::new(
        s,
        "J4^2 - J2 J6 + 4 J8 = 0",
        residual.is_zero(),
        format!("residual has {} terms", residual.len()),
    ));

    let not_isobaric: Vec<String> = igusa.iter().filter(|j| !j.is_isobaric()).map(|j| j.name.to_string()).collect();
    out.push(Check::new(s, "J isobarity", not_isobaric.is_empty(), if not_isobaric.is_empty() {
        "every monomial has c-weight 3 * degree".to_string()
    } else {
        format!("not isobaric: {}", not_isobaric.join(", "))
    }));

    let names: Vec<JName> = igusa.iter().map(|j| j.name).collect();
    let failed: Vec<String> =
        names.par_iter().filter(|&&n| !sl2_invariant(igusa.get(n))).map(|n| n.to_string()).collect();
    out.push(Check::new(s, "J SL2 invariance", failed.is_empty(), if failed.is_empty() {
        "unchanged under x1 -> x1 + t x2 and x1 <-> x2".to_string()
    } else {
        format!("not invariant: {}", failed.join(", "))
    }));
    out
}

/// Reduction anchors, symbolic invariance and ring identities of the
/// K-table, given the Igusa table it was derived from.
pub fn k_table_checks(igusa: &IgusaTable, table: &KTable) -> Vec<Check> {
    let s = Suite::Invariants;
    let mut out = Vec::new();

    let k1 = table.body(KName::K1);
    let (ok, d) = match reduce_invariant(igusa.get(JName::J2)) {
        Ok(r) => verdict(r == k1.square(), "reduce(J2) = K1^2", || format!("reduce(J2) has {} terms", r.len())),
        Err(e) => (false, e.to_string()),
    };
    out.push(Check::new(s, "reduce(J2) = K1^2", ok, d));

    let (ok, d) = match reduce_j6_to_k3_squared(igusa, table.body(KName::K3)) {
        Ok(r) if r.direct => (true, "J6 reduces directly".to_string()),
        Ok(r) => (true, format!("via {:?} * (J2^3, J2 J4, J6)", r.combination)),
        Err(e) => (false, e.to_string()),
    };
    out.push(Check::new(s, "reduce(J6) = K3^2", ok, d));

    for a in anchors::anchor_checks(table) {
        out.push(Check::new(s, format!("anchor {}", a.id), a.passed, a.detail));
    }

    let invariance: Vec<Check> = table
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|r| {
            let (ok, d) = match check_invariance(r) {
                Ok(()) => (true, format!("{} terms, zero residual under all seven generators", r.body.len())),
                Err(e) => (false, e.to_string()),
            };
            Check::new(s, format!("{} invariance and isobarity", r.name), ok, d)
        })
        .collect();
    out.extend(invariance);

    let rel = verify_relations(table, INDEPENDENCE_WEIGHT);
    for id in rel.identities {
        let detail = if id.passed { "zero residual".to_string() } else { format!("{} terms: {}", id.residual_terms, id.residual) };
        out.push(Check::new(s, id.name, id.passed, detail));
    }
    let ind = rel.independence;
    out.push(Check::new(
        s,
        "independence of K1, K3, K8, K10",
        ind.passed,
        format!("rank {} of {} monomials of weight <= {}", ind.rank, ind.monomials, ind.weight_bound),
    ));
    out
}

pub fn run_invariants(igusa: &IgusaTable, table: &KTable) -> Vec<Check> {
    let mut out = igusa_checks(igusa);
    out.extend(k_table_checks(igusa, table));
    out
}

pub fn run_hilbert() -> Vec<Check> {
    let s = Suite::Hilbert;
    let report = hilbert::verify_series_identities(HILBERT_ORDER);
    let mut out: Vec<Check> = report
        .checks
        .iter()
        .map(|c| {
            let detail = match c.first_violation {
                None => format!("holds for k <= {HILBERT_ORDER}"),
                Some(k) => format!("first violated at k = {k}"),
            };
            Check::new(s, c.name, c.passed(), detail)
        })
        .collect();
    out.push(Check::new(
        s,
        "52 / (1*10*12*13*48) = 1/1440",
        hilbert::degree_identity_check(),
        format!("generator degree product {}", hilbert::generator_degree_product()),
    ));
    let needed = hilbert::period() - 1 + 3 * hilbert::linear_period();
    out.push(match hilbert::asymptotic_fit(needed) {
        Ok(fit) => {
            let verdict = match (fit.matches_1_1080, fit.matches_1_8640) {
                (true, _) => "agrees with the stated 1/1080",
                (_, true) => "equals 1/8640, not the stated 1/1080",
                _ => "matches neither 1/1080 nor 1/8640",
            };
            Check::info(
                s,
                "asymptotic leading coefficient",
                format!("r(k) ~ {} k^3 (period {}, step {}, stable {}): {verdict}", fit.lambda, fit.period, fit.step, fit.stable),
            )
        }
        Err(e) => Check::info(s, "asymptotic leading coefficient", e.to_string()),
    });
    out
}

/// Checks the action on random pairs over `F_{2^n}`: each `K_w` picks up
/// `det^w`, and smoothness, 2-rank and `N1` are preserved.
fn action_check(table: &KTable, n: u32, samples: usize, seed: u64) -> Check {
    let f = BinaryField::new(n).expect("small field");
    let compiled = compile_table(table);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(n));
    let mut smooth = 0;
    let mut failure = None;
    for _ in 0..samples {
        let mut el = || rng.gen_range(0..f.size());
        let a = [el(), el(), el(), el()];
        let b = [el(), el(), el(), el(), el(), el(), el()];
        let curve = match Genus2Curve::from_coeffs(f, a, b) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let g = FqGroupElement::random(&f, &mut rng);
        let image = curve.act(&g).expect("invertible");
        let det = g.determinant(&f);
        let (x, y) = (curve.coefficient_values(), image.coefficient_values());
        for k in &compiled {
            let expected = f.mul(f.pow(det, u64::from(k.name.weight())), k.eval(&f, &x));
            if k.eval(&f, &y) != expected {
                failure.get_or_insert(format!("{} not multiplied by det^{} for a = {a:?}, b = {b:?}", k.name, k.name.weight()));
            }
        }
        if curve.is_smooth() != image.is_smooth() {
            failure.get_or_insert(format!("smoothness changed for a = {a:?}, b = {b:?}"));
            continue;
        }
        if curve.is_smooth() {
            smooth += 1;
            if curve.two_rank() != image.two_rank() {
                failure.get_or_insert(format!("2-rank changed for a = {a:?}, b = {b:?}"));
            }
            if curve.count_points(1).ok() != image.count_points(1).ok() {
                failure.get_or_insert(format!("N1 changed for a = {a:?}, b = {b:?}"));
            }
        }
    }
    let detail = failure.clone().unwrap_or_else(|| format!("{samples} pairs ({smooth} smooth)"));
    Check::new(Suite::Curves, format!("action invariance over F_2^{n}"), failure.is_none(), detail)
}

/// `K(c a, c^2 b) = c^(2w) K(a, b)` on random pairs.
fn scaling_check(table: &KTable, n: u32, samples: usize, seed: u64) -> Check {
    let f = BinaryField::new(n).expect("small field");
    let compiled = compile_table(table);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    for _ in 0..samples {
        let mut el = || rng.gen_range(0..f.size());
        let a = [el(), el(), el(), el() | 1];
        let b = [el(), el(), el(), el(), el(), el(), el()];
        let c = el().max(1);
        let curve = Genus2Curve::from_coeffs(f, a, b).expect("a != 0");
        let (x, y) = (curve.coefficient_values(), curve.scale(c).coefficient_values());
        for k in &compiled {
            if k.eval(&f, &y) != f.mul(f.pow(c, 2 * u64::from(k.name.weight())), k.eval(&f, &x)) {
                failure.get_or_insert(format!("{} at a = {a:?}, b = {b:?}, c = {c}", k.name));
            }
        }
    }
    let detail = failure.clone().unwrap_or_else(|| format!("{samples} random pairs"));
    Check::new(Suite::Curves, format!("scaling law over F_2^{n}"), failure.is_none(), detail)
}

/// `deg(L mod 2)` equals the 2-rank on random smooth curves.
fn l_rank_check(n: u32, samples: usize, seed: u64) -> Check {
    let f = BinaryField::new(n).expect("small field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut failure = None;
    while checked < samples {
        let mut el = || rng.gen_range(0..f.size());
        let a = [el(), el(), el(), el()];
        let b = [el(), el(), el(), el(), el(), el(), el()];
        let Ok(curve) = Genus2Curve::from_coeffs(f, a, b) else { continue };
        if !curve.is_smooth() {
            continue;
        }
        checked += 1;
        let from_l = curve.two_rank_from_l().expect("smooth");
        if from_l != curve.two_rank() {
            failure.get_or_insert(format!("a = {a:?}, b = {b:?}: 2-rank {} but deg(L mod 2) = {from_l}", curve.two_rank()));
        }
    }
    let detail = failure.clone().unwrap_or_else(|| format!("{samples} random smooth curves"));
    Check::new(Suite::Curves, format!("2-rank from L over F_2^{n}"), failure.is_none(), detail)
}

fn artin_schreier_check() -> Check {
    let outcome = (|| {
        let c = Genus2Curve::parse(1, "1", "x^5").ok()?;
        Some((c.is_smooth(), c.two_rank(), c.count_points(1).ok()?, c.count_points(2).ok()?, c.l_polynomial().ok()?))
    })();
    let expected = (true, 0, 3, 5, [1, 0, 0, 0, 4]);
    let (ok, d) = verdict(outcome == Some(expected), "smooth, 2-rank 0, N1 = 3, N2 = 5, L = 1 + 4t^4", || {
        format!("got {outcome:?}")
    });
    Check::new(Suite::Curves, "y^2 + y = x^5 over F_2", ok, d)
}

/// Curve-level checks. The exhaustive enumeration evaluates the
/// process-wide K-table; the sampled checks use `table`.
pub fn run_curves(table: &KTable) -> Vec<Check> {
    let s = Suite::Curves;
    let mut out = Vec::new();
    let f2 = BinaryField::new(1).expect("F2");
    let report = enumerate_curves(f2, true);
    let summary = format!("{} pairs, {} smooth", report.pairs, report.smooth);
    let first_violation = || report.violations.first().map(|v| format!("{v:?}")).unwrap_or_default();
    out.push(Check::new(s, "F2: K1 = 0 iff 2-rank <= 1", report.k1_zero_iff_nonordinary, if report.k1_zero_iff_nonordinary {
        summary.clone()
    } else {
        first_violation()
    }));
    out.push(Check::new(s, "F2: 2-rank = deg(L mod 2)", report.rank_matches_l, if report.rank_matches_l {
        summary.clone()
    } else {
        first_violation()
    }));
    out.push(Check::new(s, "F2: K10 != 0 on smooth curves", report.k10_nonzero_on_smooth, if report.k10_nonzero_on_smooth {
        format!("{summary}; {} singular pairs with K10 != 0", report.singular_with_k10_nonzero)
    } else {
        first_violation()
    }));

    let sampled: Vec<Check> = [1u32, 2, 4]
        .into_par_iter()
        .map(|n| action_check(table, n, ACTION_SAMPLES, SEED))
        .chain(rayon::iter::once(scaling_check(table, 4, ACTION_SAMPLES, SEED)))
        .chain(rayon::iter::once(l_rank_check(2, ACTION_SAMPLES, SEED)))
        .collect();
    out.extend(sampled);
    out.push(artin_schreier_check());
    out
}

/// Runs the requested suites in order.
pub fn run(suites: &[Suite], igusa: &IgusaTable, table: &KTable) -> VerifyReport {
    let mut report = VerifyReport::default();
    for &suite in suites {
        let checks = match suite {
            Suite::Invariants => run_invariants(igusa, table),
            Suite::Hilbert => run_hilbert(),
            Suite::Curves => run_curves(table),
        };
        report.extend(suite, checks);
    }
    report
}
