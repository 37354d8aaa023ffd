use g2c2_core::hilbert::{asymptotic_fit, c, dimensions, expand_g, monomial_basis_n, period, table, verify_series_identities};
use num_bigint::BigInt;
use num_rational::BigRational;

#[test]
fn low_weight_dimensions() {
    let r = dimensions(13);
    let expected = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 3, 4];
    assert_eq!(r, expected.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
}

#[test]
fn table_rows() {
    let rows = table(13);
    assert_eq!(rows.len(), 14);
    assert_eq!(rows[13], (13, BigInt::from(4), 1, 2));
    assert_eq!(rows[10], (10, BigInt::from(2), 1, 1));
}

#[test]
fn increments_are_monomial_counts() {
    let r = dimensions(60);
    for k in 1..=60 {
        assert_eq!(&r[k] - &r[k - 1], BigInt::from(monomial_basis_n(k).len()), "k = {k}");
    }
}

#[test]
fn elliptic_dimension_formula() {
    assert_eq!((c(0), c(11), c(12), c(25)), (1, 1, 2, 3));
}

#[test]
fn identities_to_order_200() {
    let report = verify_series_identities(200);
    assert!(report.passed(), "{report:?}");
    assert_eq!(expand_g(200).order(), 200);
}

#[test]
fn leading_coefficient_is_one_over_8640() {
    assert_eq!(period(), 3120);
    let fit = asymptotic_fit(3200).unwrap();
    assert!(fit.stable && fit.monotone && fit.positive);
    assert_eq!(fit.lambda, BigRational::new(BigInt::from(1), BigInt::from(8640)));
    assert!(!fit.matches_1_1080);
    assert!(asymptotic_fit(500).is_err());
}
