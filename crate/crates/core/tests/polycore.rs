use g2c2_core::polycore::{format, MultiPoly, PolyError, Ring, Var, ZPoly, F2Poly, Monomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn z(text: &str) -> MultiPoly {
    MultiPoly::parse(Ring::Integers, text).unwrap()
}

fn f2(text: &str) -> MultiPoly {
    MultiPoly::parse(Ring::F2, text).unwrap()
}

#[test]
fn characteristic_two_arithmetic() {
    let k1 = f2("a0*a3 + a1*a2");
    assert!(k1.add(&k1).unwrap().is_zero());
    assert_eq!(k1.pow(2), f2("a0^2*a3^2 + a1^2*a2^2"));
    let s = z("x1 + x2");
    assert_eq!(s.mul(&s).unwrap(), z("x1^2 + 2*x1*x2 + x2^2"));
}

#[test]
fn ring_mismatch_is_an_error() {
    assert_eq!(z("a0").add(&f2("a0")), Err(PolyError::RingMismatch(Ring::Integers, Ring::F2)));
}

#[test]
fn substitution_of_the_lift() {
    let c6 = z("c6");
    assert_eq!(c6.substitute(&[(Var::c(6), z("4*b6 + a3^2"))]).unwrap(), z("4*b6 + a3^2"));
    let image = z("4*b3 + 2*a0*a3 + 2*a1*a2");
    assert_eq!(z("c3").substitute(&[(Var::c(3), image.clone())]).unwrap(), image);
    let p = z("c0*c6 - 3*c3^2");
    let identity: Vec<(Var, MultiPoly)> = (0..7).map(|j| (Var::c(j), z(Var::c(j).name()))).collect();
    assert_eq!(p.substitute(&identity).unwrap(), p);
}

#[test]
fn exact_division() {
    assert_eq!(f2("a0^2*a3^2 + a1^2*a2^2").exact_div(&f2("a0*a3 + a1*a2")).unwrap(), f2("a0*a3 + a1*a2"));
    let p = z("7*a0*b3 - a1^2");
    assert_eq!(p.exact_div(&z("1")).unwrap(), p);
    assert_eq!(f2("a0*a3 + a1*a2 + b3").exact_div(&f2("a0*a3")), Err(PolyError::NotDivisible));
}

#[test]
fn derivatives() {
    assert_eq!(z("x1^3").derivative(Var::X1), z("3*x1^2"));
    assert!(f2("b3^2").derivative(Var::b(3)).is_zero());
    assert_eq!(f2("a0*a3 + a1*a2").derivative(Var::a(0)), f2("a3"));
}

#[test]
fn two_adic_content_and_reduction() {
    assert_eq!(z("4*b0 + 2*a0*a1").content_2adic(), Ok(1));
    assert_eq!(z("4*b0 + a0^2").content_2adic(), Ok(0));
    assert_eq!(z("8*b0 + 16*b1").content_2adic(), Ok(3));
    assert_eq!(z("0").content_2adic(), Err(PolyError::ZeroPolynomial));
    assert_eq!(z("4*b0 + 2*a0*a1").divide_pow2_and_reduce().unwrap(), f2("a0*a1"));
    assert_eq!(z("3*c3^2").divide_pow2_and_reduce().unwrap(), f2("c3^2"));
    assert_eq!(z("-120*c0*c6 + 20*c1*c5 - 8*c2*c4 + 3*c3^2").divide_pow2_and_reduce().unwrap(), f2("c3^2"));
}

#[test]
fn text_and_json_formats() {
    let k1 = f2("a1*a2 + a0*a3");
    assert_eq!(k1.to_text(), "a0*a3 + a1*a2");
    let json = k1.to_json();
    assert_eq!(
        json.to_string(),
        r#"{"ring":"F2","terms":[{"coef":"1","exps":{"a0":1,"a3":1}},{"coef":"1","exps":{"a1":1,"a2":1}}]}"#
    );
    assert_eq!(MultiPoly::from_json(&json).unwrap(), k1);
    let big = z("123456789012345678901234567890*c0^2*c6 - 5");
    assert_eq!(MultiPoly::from_json(&big.to_json()).unwrap(), big);
    assert_eq!(MultiPoly::parse(Ring::Integers, &big.to_text()).unwrap(), big);
    assert!(matches!(MultiPoly::parse(Ring::F2, "a0*q7"), Err(PolyError::UnknownVariable(_))));
}

#[test]
fn variable_order_is_fixed() {
    let names: Vec<&str> = (0..g2c2_core::polycore::NVARS).map(|i| Var::from_index(i).unwrap().name()).collect();
    let expected = [
        "a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "b4", "b5", "b6", "c0", "c1", "c2", "c3", "c4", "c5", "c6", "x1",
        "x2", "t", "s", "m",
    ];
    assert_eq!(names, expected);
}

const POOL: [Var; 5] = [Var::A0, Var::A3, Var::B3, Var::C1, Var::X2];

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, POOL.len()), -20i64..20), 0..6).prop_map(|terms| {
        ZPoly::from_terms(terms.into_iter().map(|(exps, c)| {
            (Monomial::from_pairs(POOL.iter().copied().zip(exps)), BigInt::from(c))
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_is_exact(p in zpoly(), q in zpoly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn reduction_ignores_powers_of_two(p in zpoly(), k in 0u32..12) {
        prop_assume!(!p.is_zero());
        let scaled = p.scale(&(BigInt::from(1) << k));
        prop_assert_eq!(scaled.divide_pow2_and_reduce().unwrap(), p.divide_pow2_and_reduce().unwrap());
        prop_assert_eq!(scaled.content_2adic().unwrap(), p.content_2adic().unwrap() + u64::from(k));
    }

    #[test]
    fn leibniz_rule(p in zpoly(), q in zpoly(), i in 0usize..POOL.len()) {
        let v = POOL[i];
        let lhs = p.mul(&q).derivative(v);
        let rhs = p.mul(&q.derivative(v)).add(&q.mul(&p.derivative(v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in zpoly(), q in zpoly(), img in zpoly(), i in 0usize..POOL.len()) {
        let s = g2c2_core::polycore::Substitution::new().bind(POOL[i], img);
        prop_assert_eq!(p.add(&q).substitute(&s), p.substitute(&s).add(&q.substitute(&s)));
        prop_assert_eq!(p.mul(&q).substitute(&s), p.substitute(&s).mul(&q.substitute(&s)));
    }

    #[test]
    fn f2_squaring_is_frobenius(p in zpoly()) {
        let r: F2Poly = p.reduce_mod2();
        prop_assert_eq!(r.square(), r.frobenius(1));
    }

    #[test]
    fn text_round_trip(p in zpoly()) {
        prop_assert_eq!(format::parse_text::<BigInt>(&format::to_text(&p)).unwrap(), p);
    }
}
