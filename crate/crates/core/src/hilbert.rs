//! Exact power-series checks of the dimension formula for the graded ring
//! generated in weights 1, 10, 12, 13, 48 with one relation in weight 52.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series whose constant term is not a unit")]
    NonUnitConstant,
}

/// A power series known exactly up to and including `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 1, order)
    }

    /// `c t^k`.
    pub fn monomial(k: usize, c: i64, order: usize) -> Self {
        Self::polynomial(&[(k, c)], order)
    }

    /// A polynomial given as `(exponent, coefficient)` pairs.
    pub fn polynomial(terms: &[(usize, i64)], order: usize) -> Self {
        let mut s = Self::zero(order);
        for &(k, c) in terms {
            if k <= order {
                s.coeffs[k] += c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for i in k..=self.order() {
            s.coeffs[i] = self.coeffs[i - k].clone();
        }
        s
    }

    /// Division by `1 - t^d` as a strided running sum.
    pub fn div_one_minus(&self, d: usize) -> Self {
        let mut s = self.clone();
        for i in d..=s.order() {
            let prev = s.coeffs[i - d].clone();
            s.coeffs[i] += prev;
        }
        s
    }

    /// Exact long division; the divisor's constant term must be `±1`.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let c0 = divisor.coeffs[0].clone();
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstant);
        }
        let support: Vec<usize> = (1..=divisor.order()).filter(|&i| !divisor.coeffs[i].is_zero()).collect();
        let n = self.order().min(divisor.order());
        let mut q = Self::zero(n);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for &i in support.iter().take_while(|&&i| i <= k) {
                acc -= &divisor.coeffs[i] * &q.coeffs[k - i];
            }
            q.coeffs[k] = acc * &c0;
        }
        Ok(q)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1).filter(|(_, a)| !a.is_zero()) {
            for j in 0..=n - i {
                if !rhs.coeffs[j].is_zero() {
                    out.coeffs[i + j] += a * &rhs.coeffs[j];
                }
            }
        }
        out
    }
}

/// Generator weights and the weight of the single relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RingPresentation {
    pub generators: [(&'static str, usize); 5],
    pub relation_weight: usize,
}

pub const PRESENTATION: RingPresentation = RingPresentation {
    generators: [("psi1", 1), ("chi10", 10), ("psi12", 12), ("chi13", 13), ("chi48", 48)],
    relation_weight: 52,
};

/// `G = (1 - t^52) / ((1-t)(1-t^10)(1-t^12)(1-t^13)(1-t^48))` to order `n`.
pub fn expand_g(n: usize) -> TruncatedSeries {
    let numerator = TruncatedSeries::polynomial(&[(0, 1), (PRESENTATION.relation_weight, -1)], n);
    PRESENTATION.generators.iter().fold(numerator, |s, &(_, d)| s.div_one_minus(d))
}

/// `r(k)` for `k = 0..=n`.
pub fn dimensions(n: usize) -> Vec<BigInt> {
    expand_g(n).coeffs
}

/// Exponents `(α, β, γ, δ)` with `10α + 12β + 13γ + 48δ = k` and `γ ≤ 3`.
pub fn monomial_basis_n(k: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for d in 0..=k / 48 {
        for g in 0..=3.min((k - 48 * d) / 13) {
            let rest = k - 48 * d - 13 * g;
            for b in 0..=rest / 12 {
                if (rest - 12 * b).is_multiple_of(10) {
                    out.push([(rest - 12 * b) / 10, b, g, d]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `c(k) = ⌊k/12⌋ + 1`, the dimension of elliptic modular forms of weight `k`.
pub fn c(k: usize) -> usize {
    k / 12 + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub name: &'static str,
    pub first_violation: Option<usize>,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub order: usize,
    pub checks: Vec<SeriesCheck>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SeriesCheck::passed)
    }
}

fn first_violation(range: impl IntoIterator<Item = usize>, ok: impl Fn(usize) -> bool) -> Option<usize> {
    range.into_iter().find(|&k| !ok(k))
}

/// Runs the four identity families to order `n`.
pub fn verify_series_identities(n: usize) -> SeriesReport {
    let g = expand_g(n);
    let r = |k: usize| g.coeff(k).clone();

    // G - t^10 G - 1/((1-t)(1-t^12)^2) = -t^12 (t^26+t^25+t^24+t^13+t^12+1) / (t^60-t^48-t^12+1)
    let lhs = &(&g - &g.shift(10)) - &TruncatedSeries::one(n).div_one_minus(1).div_one_minus(12).div_one_minus(12);
    let num = TruncatedSeries::polynomial(&[(38, -1), (37, -1), (36, -1), (25, -1), (24, -1), (12, -1)], n);
    let den = TruncatedSeries::polynomial(&[(60, 1), (48, -1), (12, -1), (0, 1)], n);
    let rhs = num.div(&den).expect("constant term 1");
    let rational = first_violation(0..=n, |k| lhs.coeff(k) == rhs.coeff(k));

    let tenfold = first_violation((10..=n).filter(|k| k % 12 > 2), |k| {
        r(k) - r(k - 10) == BigInt::from(c(k) * (c(k) + 1) / 2)
    });

    let increments = first_violation(1..=n, |k| r(k) - r(k - 1) == BigInt::from(monomial_basis_n(k).len()));

    let small: Vec<(usize, i64)> = (1..=9).map(|k| (k, 1)).chain([(10, 2), (11, 2), (12, 3), (13, 4)]).collect();
    let low = first_violation(small.iter().map(|&(k, _)| k).filter(|&k| k <= n), |k| {
        small.iter().any(|&(j, v)| j == k && r(k) == BigInt::from(v))
    });

    SeriesReport {
        order: n,
        checks: vec![
            SeriesCheck { name: "G - t^10 G rational-function identity", first_violation: rational },
            SeriesCheck { name: "r(k) - r(k-10) = c(k)(c(k)+1)/2", first_violation: tenfold },
            SeriesCheck { name: "r(k) - r(k-1) = |N_k|", first_violation: increments },
            SeriesCheck { name: "low-weight dimensions", first_violation: low },
        ],
    }
}

/// `1 · 10 · 12 · 13 · 48`.
pub fn generator_degree_product() -> usize {
    PRESENTATION.generators.iter().map(|&(_, d)| d).product()
}

/// `52 / (1·10·12·13·48) = 1/1440` as exact rationals.
pub fn degree_identity_check() -> bool {
    let lhs = BigRational::new(BigInt::from(PRESENTATION.relation_weight), BigInt::from(generator_degree_product()));
    lhs == BigRational::new(BigInt::one(), BigInt::from(1440))
}

fn weights() -> impl Iterator<Item = usize> {
    PRESENTATION.generators.iter().map(|&(_, d)| d)
}

/// Order of the pole of `G` at a primitive `m`-th root of unity.
fn pole_order(m: usize) -> usize {
    weights().filter(|d| d % m == 0).count().saturating_sub(usize::from(PRESENTATION.relation_weight.is_multiple_of(m)))
}

/// Period of the quasi-polynomial `r(k)`: the lcm of the generator weights.
pub fn period() -> usize {
    weights().fold(1, |l, d| l.lcm(&d))
}

/// Common period of the coefficients of `k^1` and higher in `r(k)`: the lcm
/// of the orders `m > 1` of roots of unity where `G` has a pole of order at
/// least 2.
pub fn linear_period() -> usize {
    (2..=period()).filter(|m| period().is_multiple_of(*m) && pole_order(*m) >= 2).fold(1, |l, m| l.lcm(&m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticFit {
    pub order: usize,
    pub period: usize,
    pub step: usize,
    /// Leading coefficient of `r(k) ~ λ k^3`.
    #[serde(serialize_with = "ser_rational")]
    pub lambda: BigRational,
    /// Whether `λ` is the same for every admissible window.
    pub stable: bool,
    pub matches_1_1080: bool,
    pub matches_1_8640: bool,
    pub monotone: bool,
    pub positive: bool,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Error type for [`asymptotic_fit`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("order {order} is below one period plus three steps ({needed})")]
pub struct FitOrderTooSmall {
    pub order: usize,
    pub needed: usize,
}

/// Fits `r(k) ≈ λ k^3`.
///
/// `r(k) = λk^3 + μk^2 + p(k)k + q(k)` with `p` of period `h` (see
/// [`linear_period`]) and `q` of period `P`. The third difference with step
/// `h` is `6λh^3 + Δ_h^3 q(k)`, and the second term sums to zero over any
/// window of `P` consecutive `k`, so
/// `λ = Σ_{window} Δ_h^3 r(k) / (6 h^3 P)` exactly.
pub fn asymptotic_fit(n: usize) -> Result<AsymptoticFit, FitOrderTooSmall> {
    let (p, h) = (period(), linear_period());
    let needed = p - 1 + 3 * h;
    if n < needed {
        return Err(FitOrderTooSmall { order: n, needed });
    }
    let r = dimensions(n);
    let third: Vec<BigInt> = (0..=n - 3 * h)
        .map(|k| &r[k + 3 * h] - BigInt::from(3) * &r[k + 2 * h] + BigInt::from(3) * &r[k + h] - &r[k])
        .collect();
    let mut window: BigInt = third[..p].iter().sum();
    let first = window.clone();
    let mut stable = true;
    for k in p..third.len() {
        window += &third[k] - &third[k - p];
        stable &= window == first;
    }
    let lambda = BigRational::new(first, BigInt::from(6 * h * h * h * p));
    let q = |d: i64| BigRational::new(BigInt::one(), BigInt::from(d));
    Ok(AsymptoticFit {
        order: n,
        period: p,
        step: h,
        matches_1_1080: lambda == q(1080),
        matches_1_8640: lambda == q(8640),
        lambda,
        stable,
        monotone: r.windows(2).skip(1).all(|w| w[1] >= w[0]),
        positive: r.iter().all(|x| x.is_positive()),
    })
}

/// Rows `(k, r(k), |N_k|, c(k))` for `k = 0..=max_k`.
pub fn table(max_k: usize) -> Vec<(usize, BigInt, usize, usize)> {
    let r = dimensions(max_k);
    (0..=max_k).map(|k| (k, r[k].clone(), monomial_basis_n(k).len(), c(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_coefficients() {
        let r = dimensions(60);
        assert_eq!(r[0], BigInt::one());
        assert_eq!(r[10], BigInt::from(2));
        assert_eq!(r[13], BigInt::from(4));
        assert_eq!(&r[14] - &r[4], BigInt::from(3));
    }

    #[test]
    fn weight_52_has_37() {
        // 38 monomials ψ1^ε χ10^α ψ12^β χ13^γ χ48^δ of weight 52, one relation.
        let mut count = 0;
        for d in 0..=1 {
            for g in 0..=4 {
                for b in 0..=4 {
                    for a in 0..=5 {
                        if 48 * d + 13 * g + 12 * b + 10 * a <= 52 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 38);
        assert_eq!(dimensions(52)[52], BigInt::from(37));
    }

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis_n(23), vec![[1, 0, 1, 0]]);
        assert!(monomial_basis_n(11).is_empty());
        assert_eq!(monomial_basis_n(12), vec![[0, 1, 0, 0]]);
        assert!(monomial_basis_n(52).iter().all(|m| m[2] <= 3));
    }

    #[test]
    fn factored_equals_quotient_of_expansions() {
        let n = 300;
        let num = TruncatedSeries::polynomial(&[(0, 1), (52, -1)], n);
        let den = [1, 10, 12, 13, 48].iter().fold(TruncatedSeries::one(n), |acc, &d| {
            &acc * &TruncatedSeries::polynomial(&[(0, 1), (d, -1)], n)
        });
        assert_eq!(num.div(&den).unwrap(), expand_g(n));
    }

    #[test]
    fn division_requires_unit() {
        let s = TruncatedSeries::polynomial(&[(0, 2)], 5);
        assert_eq!(TruncatedSeries::one(5).div(&s), Err(SeriesError::NonUnitConstant));
    }

    #[test]
    fn identities_to_200() {
        let report = verify_series_identities(200);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn degree_arithmetic() {
        assert_eq!(generator_degree_product(), 74880);
        assert_eq!(74880 / 52, 1440);
        assert!(degree_identity_check());
    }

    #[test]
    fn fit_window() {
        assert_eq!(period(), 3120);
        assert_eq!(linear_period(), 12);
        assert!(asymptotic_fit(3000).is_err());
    }

    #[test]
    fn fit_at_default_order() {
        let fit = asymptotic_fit(5000).unwrap();
        assert!(fit.stable && fit.monotone && fit.positive);
        // fourth-order pole at t = 1 with residue 52/74880, divided by 3!
        assert_eq!(fit.lambda, BigRational::new(BigInt::from(52), BigInt::from(74880 * 6)));
        assert!(fit.matches_1_8640 && !fit.matches_1_1080);
    }
}
