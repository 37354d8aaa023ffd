use g2c2_core::char2inv::anchors::{anchor_checks, k3_display};
use g2c2_core::char2inv::{
    check_invariance, independence_monomials, k1, k_table, reduce_invariant, reduce_j6_to_k3_squared, verify_relations,
    KName,
};
use g2c2_core::curves::{compile_table, BinaryField, Genus2Curve};
use g2c2_core::igusa0::{igusa_table, JName};
use g2c2_core::polycore::format::to_text;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn k1_text_form() {
    assert_eq!(to_text(k_table().body(KName::K1)), "a0*a3 + a1*a2");
    assert_eq!(k_table().body(KName::K1), &k1());
}

#[test]
fn reductions_of_j2_and_j6() {
    let t = k_table();
    assert_eq!(reduce_invariant(igusa_table().get(JName::J2)).unwrap(), t.body(KName::K1).square());
    let j6 = reduce_j6_to_k3_squared(igusa_table(), t.body(KName::K3)).unwrap();
    assert!(j6.direct);
    assert_eq!(j6.combination, (0, 0, 1));
}

#[test]
fn k3_is_the_eight_term_display_and_divides_k4() {
    let t = k_table();
    assert_eq!(t.body(KName::K3), &k3_display());
    assert_eq!(&t.body(KName::K3).mul(t.body(KName::K1)), t.body(KName::K4));
}

#[test]
fn all_anchors_hold() {
    for c in anchor_checks(k_table()) {
        assert!(c.passed, "{}: {}", c.id, c.detail);
    }
}

#[test]
fn corrupted_k3_is_named() {
    let bad = k_table().clone().with_body(KName::K3, k1());
    let failed: Vec<&str> = anchor_checks(&bad).into_iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.contains(&"K3 full expansion"), "{failed:?}");
}

#[test]
fn every_invariant_is_invariant_and_isobaric() {
    for r in k_table().iter() {
        assert_eq!(check_invariance(r), Ok(()), "{}", r.name);
        assert!(r.is_bi_isobaric() && r.is_weighted_isobaric(), "{}", r.name);
    }
}

#[test]
fn identities_and_independence_at_weight_13() {
    let report = verify_relations(k_table(), 13);
    for id in &report.identities {
        assert!(id.passed, "{}: {}", id.name, id.residual);
    }
    // e + 3f + 8g + 10h <= 13, counted directly
    let mut count = 0;
    for h in 0..=1 {
        for g in 0..=1 {
            for f in 0..=4 {
                for e in 0..=13 {
                    count += usize::from(e + 3 * f + 8 * g + 10 * h <= 13);
                }
            }
        }
    }
    assert_eq!(independence_monomials(13).len(), count);
    assert_eq!(report.independence.rank, count);
}

#[test]
fn scaling_law_over_small_fields() {
    let compiled = compile_table(k_table());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 3, 5] {
        let f = BinaryField::new(n).unwrap();
        for _ in 0..200 {
            let mut el = || rng.gen_range(0..f.size());
            let a = [el(), el(), el(), 1];
            let b = [el(), el(), el(), el(), el(), el(), el()];
            let c = el().max(1);
            let curve = Genus2Curve::from_coeffs(f, a, b).unwrap();
            let (x, y) = (curve.coefficient_values(), curve.scale(c).coefficient_values());
            for k in &compiled {
                let w = u64::from(k.name.weight());
                assert_eq!(k.eval(&f, &y), f.mul(f.pow(c, 2 * w), k.eval(&f, &x)), "{} over F_2^{n}", k.name);
            }
        }
    }
}
