use g2c2_core::igusa0::{
    anchors, igusa_table, oracle_j_values, proj_relation_residual, root_difference_oracle, sextic_swap_substitution,
    sextic_unipotent_substitution, JName, RootInvariant, RootedSextic, SexticSampler,
};
use g2c2_core::polycore::{Monomial, RationalConstant, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn coeffs(c: [i64; 7]) -> [BigRational; 7] {
    c.map(q)
}

#[test]
fn j2_matches_the_displayed_formula() {
    let j2 = igusa_table().get(JName::J2);
    assert_eq!(j2.scale, RationalConstant::pow2(-2));
    assert_eq!(j2.body, anchors::j2_display());
    let mono = |pairs: &[(usize, u32)]| Monomial::from_pairs(pairs.iter().map(|&(j, e)| (Var::c(j), e)));
    let vector: Vec<BigRational> =
        [mono(&[(0, 1), (6, 1)]), mono(&[(1, 1), (5, 1)]), mono(&[(2, 1), (4, 1)]), mono(&[(3, 2)])]
            .iter()
            .map(|m| j2.coefficient(m))
            .collect();
    let quarter = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(4));
    assert_eq!(vector, vec![quarter(-120), quarter(20), quarter(-8), quarter(3)]);
}

#[test]
fn j2_of_x1_sixth_plus_x2_sixth() {
    assert_eq!(igusa_table().get(JName::J2).eval(&coeffs([1, 0, 0, 0, 0, 0, 1])), q(-30));
}

#[test]
fn j4_leading_terms() {
    let j4 = igusa_table().get(JName::J4);
    assert_eq!(j4.scale, RationalConstant::pow2(-7));
    for (m, v) in anchors::j4_leading() {
        assert_eq!(j4.coefficient(&m), v);
    }
}

#[test]
fn proj_relation_holds_identically() {
    assert!(proj_relation_residual(igusa_table()).is_zero());
}

#[test]
fn bodies_are_isobaric_and_primitive() {
    for j in igusa_table().iter() {
        assert!(j.is_isobaric(), "{}", j.name);
        assert!(j.body.content().is_one(), "{}", j.name);
    }
}

#[test]
fn bodies_are_sl2_invariant() {
    let upper = sextic_unipotent_substitution(Var::T);
    let swap = sextic_swap_substitution();
    for j in igusa_table().iter() {
        assert_eq!(j.body.substitute(&upper), j.body, "{} under x1 -> x1 + t x2", j.name);
        assert_eq!(j.body.substitute(&swap), j.body, "{} under x1 <-> x2", j.name);
    }
}

#[test]
fn discriminant_vanishes_on_repeated_roots() {
    let s = RootedSextic::from_integers(3, [1, 1, -2, 5, 7, 0]);
    assert!(igusa_table().get(JName::J10).eval(&s.coefficients()).is_zero());
    assert!(root_difference_oracle(RootInvariant::I10, &s).is_zero());
}

#[test]
fn i2_is_eight_times_j2() {
    let mut sampler = SexticSampler::new(901);
    let j2 = igusa_table().get(JName::J2);
    let first = sampler.next_sextic();
    let ratio = root_difference_oracle(RootInvariant::I2, &first) / j2.eval(&first.coefficients());
    assert_eq!(ratio, q(8));
    for _ in 0..4 {
        let s = sampler.next_sextic();
        assert_eq!(root_difference_oracle(RootInvariant::I2, &s), &ratio * j2.eval(&s.coefficients()));
    }
}

#[test]
fn table_agrees_with_root_differences_on_fresh_sextics() {
    let mut sampler = SexticSampler::new(4242);
    let names = [JName::J2, JName::J4, JName::J6, JName::J8, JName::J10];
    for _ in 0..3 {
        let s = sampler.next_sextic();
        let expected = oracle_j_values(&s);
        for (name, value) in names.iter().zip(expected) {
            assert_eq!(igusa_table().get(*name).eval(&s.coefficients()), value, "{name}");
        }
    }
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else { return BigRational::zero() };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for k in col..n {
                let sub = &f * &m[col][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

/// `Res(f, f')` for `f = Σ c_i x^(6-i)` via the Sylvester determinant.
fn resultant_with_derivative(c: &[BigRational; 7]) -> BigRational {
    let f: Vec<BigRational> = c.to_vec();
    let df: Vec<BigRational> = (0..6).map(|i| &c[i] * q(6 - i as i64)).collect();
    let n = 11;
    let mut rows = Vec::new();
    for shift in 0..5 {
        let mut row = vec![BigRational::zero(); n];
        for (i, x) in f.iter().enumerate() {
            row[shift + i] = x.clone();
        }
        rows.push(row);
    }
    for shift in 0..6 {
        let mut row = vec![BigRational::zero(); n];
        for (i, x) in df.iter().enumerate() {
            row[shift + i] = x.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

#[test]
fn j10_is_proportional_to_the_resultant() {
    let j10 = igusa_table().get(JName::J10);
    let mut sampler = SexticSampler::new(77);
    let first = sampler.next_sextic().coefficients();
    // Res(f, f') = ± c0 disc(f); divide the leading coefficient out.
    let ratio = resultant_with_derivative(&first) / (&first[0] * j10.eval(&first));
    assert!(!ratio.is_zero());
    for _ in 0..4 {
        let c = sampler.next_sextic().coefficients();
        assert_eq!(resultant_with_derivative(&c), &ratio * &c[0] * j10.eval(&c));
    }
    assert_eq!(ratio, q(-4096));
}
