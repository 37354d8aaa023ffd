use g2c2_core::char2inv::KName;
use g2c2_core::curves::parse::{format_fq_poly, parse_fq_poly};
use g2c2_core::curves::{enumerate_curves, BinaryField, FqElement, FqGroupElement, FqPoly, Genus2Curve};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(f: BinaryField, deg: usize, rng: &mut ChaCha8Rng) -> FqPoly {
    FqPoly::new((0..=deg).map(|_| rng.gen_range(0..f.size())).collect())
}

fn mobius(n: u32) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while n > 1 {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    sign
}

/// Distinct roots over the algebraic closure for a polynomial of degree
/// at most 6: every root lies in some `F_{q^d}` with `d <= 6`; roots whose
/// minimal field is exactly `F_{q^d}` are counted by Möbius inversion.
fn brute_force_root_count(f: BinaryField, p: &FqPoly) -> usize {
    let roots_in = |d: u32| -> i64 {
        let big = BinaryField::new(f.degree() * d).unwrap();
        let e = f.embedding_into(big).unwrap();
        let q = p.embed(&e);
        big.elements().filter(|&x| q.eval(&big, x) == 0).count() as i64
    };
    let counts: Vec<i64> = (1..=6).map(roots_in).collect();
    let mut total = 0;
    for d in 1..=6u32 {
        let exact: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * counts[e as usize - 1]).sum();
        total += exact;
    }
    total as usize
}

#[test]
fn gcd_root_count_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in [1, 2] {
        let f = BinaryField::new(n).unwrap();
        for _ in 0..60 {
            let deg = rng.gen_range(1..=6);
            let p = random_poly(f, deg, &mut rng);
            if p.degree().unwrap_or(0) == 0 {
                continue;
            }
            assert_eq!(p.distinct_root_count(&f), brute_force_root_count(f, &p), "{} over F_2^{n}", format_fq_poly(&p));
        }
    }
}

/// Searches the affine singular points (x a root of `a`, y^2 = b(x),
/// a'(x) y = b'(x)) in `F_{q^6}`, which contains every root of the cubic,
/// and the point over `x = ∞` in the reversed chart.
fn brute_force_smooth(c: &Genus2Curve) -> bool {
    let f = c.field();
    let big = BinaryField::new(6 * f.degree()).unwrap();
    let e = f.embedding_into(big).unwrap();
    let singular_at = |a: &FqPoly, b: &FqPoly, x: FqElement| {
        let (a, b) = (a.embed(&e), b.embed(&e));
        if a.eval(&big, x) != 0 {
            return false;
        }
        let y = big.sqrt(b.eval(&big, x));
        big.mul(a.derivative().eval(&big, x), y) == b.derivative().eval(&big, x)
    };
    let (a, b) = (c.a_poly(), c.b_poly());
    if big.elements().any(|x| singular_at(&a, &b, x)) {
        return false;
    }
    let mut ra = *c.a();
    ra.reverse();
    let mut rb = *c.b();
    rb.reverse();
    !singular_at(&FqPoly::new(ra.to_vec()), &FqPoly::new(rb.to_vec()), 0)
}

#[test]
fn smoothness_matches_singular_point_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [1, 2] {
        let f = BinaryField::new(n).unwrap();
        let mut seen = [0; 2];
        for _ in 0..150 {
            let a: [u32; 4] = std::array::from_fn(|_| rng.gen_range(0..f.size()));
            let b: [u32; 7] = std::array::from_fn(|_| rng.gen_range(0..f.size()));
            let Ok(c) = Genus2Curve::from_coeffs(f, a, b) else { continue };
            seen[usize::from(c.is_smooth())] += 1;
            assert_eq!(c.is_smooth(), brute_force_smooth(&c), "a = {a:?}, b = {b:?}");
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }
}

#[test]
fn k1_detects_ordinarity_over_f4_and_f8() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3] {
        let f = BinaryField::new(n).unwrap();
        let mut checked = 0;
        while checked < 3000 {
            let a: [u32; 4] = std::array::from_fn(|_| rng.gen_range(0..f.size()));
            let b: [u32; 7] = std::array::from_fn(|_| rng.gen_range(0..f.size()));
            let Ok(c) = Genus2Curve::from_coeffs(f, a, b) else { continue };
            if !c.is_smooth() {
                continue;
            }
            checked += 1;
            assert_eq!(c.eval_invariant(KName::K1) == 0, c.two_rank() <= 1, "a = {a:?}, b = {b:?}");
        }
    }
}

#[test]
fn input_grammar() {
    let c = Genus2Curve::parse(2, "x^3+g*x", "(g+1)*x^5+1").unwrap();
    let g = c.field().generator();
    assert_eq!(c.a(), &[0, g, 0, 1]);
    assert_eq!(c.b(), &[1, 0, 0, 0, 0, g ^ 1, 0]);
    let f = BinaryField::new(2).unwrap();
    assert_eq!(parse_fq_poly(f, &format_fq_poly(&c.b_poly())).unwrap(), c.b_poly());
    assert!(Genus2Curve::parse(1, "x^3", "x^7").is_err());
    assert!(Genus2Curve::parse(17, "1", "x").is_err());
}

#[test]
fn point_counts_are_action_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let f = BinaryField::new(3).unwrap();
    let mut checked = 0;
    while checked < 100 {
        let a: [u32; 4] = std::array::from_fn(|_| rng.gen_range(0..f.size()));
        let b: [u32; 7] = std::array::from_fn(|_| rng.gen_range(0..f.size()));
        let Ok(c) = Genus2Curve::from_coeffs(f, a, b) else { continue };
        if !c.is_smooth() {
            continue;
        }
        checked += 1;
        let image = c.act(&FqGroupElement::random(&f, &mut rng)).unwrap();
        assert_eq!(c.l_polynomial(), image.l_polynomial());
    }
}

#[test]
fn exhaustive_f2_classification() {
    let report = enumerate_curves(BinaryField::new(1).unwrap(), true);
    assert_eq!(report.pairs, 15 * 128);
    assert!(report.passed(), "{:?}", report.violations);
    let total: u64 = report.buckets.iter().map(|(_, n)| n).sum();
    assert_eq!(total, report.smooth);
}
