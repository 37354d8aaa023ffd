use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;

use crate::polycore::{Monomial, RationalConstant, Var, ZPoly};

use super::IgusaError;

/// A binary form `scale · poly`, with `poly` homogeneous of degree `degree`
/// in `x1, x2` and integral with positive content removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    pub scale: RationalConstant,
    pub poly: ZPoly,
}

impl BinaryForm {
    /// Wraps an integral homogeneous polynomial; panics if it is not
    /// homogeneous of the stated degree in `x1, x2`.
    pub fn new(degree: u32, poly: ZPoly) -> Self {
        assert!(is_homogeneous(&poly, degree), "form is not homogeneous of degree {degree}");
        let mut f = BinaryForm { degree, scale: RationalConstant::one(), poly };
        f.normalize();
        f
    }

    /// The universal binary sextic `f = Σ c_i x1^(6-i) x2^i`.
    pub fn universal_sextic() -> Self {
        Self::generic(6, Var::c)
    }

    /// `Σ coeff(i) x1^(d-i) x2^i` for coefficient variables `coeff(i)`.
    pub fn generic(degree: u32, coeff: impl Fn(usize) -> Var) -> Self {
        let poly = ZPoly::from_terms((0..=degree).map(|i| {
            let m = Monomial::from_pairs([(coeff(i as usize), 1), (Var::X1, degree - i), (Var::X2, i)]);
            (m, BigInt::one())
        }));
        Self::new(degree, poly)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient of `x1^(d-i) x2^i` in `poly` (scale excluded).
    pub fn coefficient(&self, i: u32) -> ZPoly {
        let mono = self.poly.coeff_of_power(Var::X1, self.degree - i);
        mono.coeff_of_power(Var::X2, i)
    }

    /// The full value `scale · poly` as a rational multiple, for evaluation.
    pub fn value_scale(&self) -> BigRational {
        self.scale.value().clone()
    }

    fn normalize(&mut self) {
        if self.poly.is_zero() {
            self.scale = RationalConstant::one();
            return;
        }
        let g = self.poly.content();
        if !g.is_one() {
            self.poly = ZPoly::from_terms(self.poly.terms().iter().map(|(m, c)| (*m, c / &g)));
            self.scale = self.scale.mul(&RationalConstant::new(g, BigInt::one()));
        }
    }
}

pub(crate) fn is_homogeneous(p: &ZPoly, degree: u32) -> bool {
    p.terms().iter().all(|(m, _)| m.exp(Var::X1) + m.exp(Var::X2) == degree)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Mixed partial `∂^k p / ∂x1^(k-i) ∂x2^i` for every `i` in `0..=k`.
fn mixed_partials(p: &ZPoly, k: u32) -> Vec<ZPoly> {
    let mut by_x1 = p.clone();
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut x1_derivs = vec![p.clone()];
    for _ in 0..k {
        by_x1 = by_x1.derivative(Var::X1);
        x1_derivs.push(by_x1.clone());
    }
    for i in 0..=k {
        let mut q = x1_derivs[(k - i) as usize].clone();
        for _ in 0..i {
            q = q.derivative(Var::X2);
        }
        out.push(q);
    }
    out
}

/// The k-th transvectant
/// `(f, g)_k = ((m-k)!(n-k)!)/(m! n!) Σ_i (-1)^i C(k,i) ∂^k f/∂x1^(k-i)∂x2^i · ∂^k g/∂x1^i∂x2^(k-i)`.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, k: u32) -> Result<BinaryForm, IgusaError> {
    let (m, n) = (f.degree, g.degree);
    if k > m.min(n) {
        return Err(IgusaError::TransvectantOrder { k, m, n });
    }
    let df = mixed_partials(&f.poly, k);
    let dg = mixed_partials(&g.poly, k);
    let mut body = ZPoly::zero();
    for i in 0..=k {
        let c = binomial(BigInt::from(k), BigInt::from(i));
        let c = if i % 2 == 1 { -c } else { c };
        let term = df[i as usize].mul(&dg[(k - i) as usize]).scale(&c);
        body = body.add(&term);
    }
    let degree = m + n - 2 * k;
    if body.is_zero() {
        return Ok(BinaryForm { degree, scale: RationalConstant::one(), poly: body });
    }
    let norm = BigRational::new(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n));
    let scale = f.scale.mul(&g.scale).mul(&RationalConstant::from_rational(norm));
    let mut out = BinaryForm { degree, scale, poly: body };
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(degree: u32, text: &str) -> BinaryForm {
        BinaryForm::new(degree, crate::polycore::format::parse_text(text).unwrap())
    }

    #[test]
    fn zeroth_transvectant_is_product() {
        let f = BinaryForm::universal_sextic();
        let g = form(2, "x1^2 + 3*x1*x2");
        let t = transvectant(&f, &g, 0).unwrap();
        let value = t.poly.scale(&t.scale.numer().clone());
        assert_eq!(t.scale.denom(), &BigInt::one());
        assert_eq!(value, f.poly.mul(&g.poly));
    }

    #[test]
    fn odd_self_transvectant_vanishes() {
        let f = BinaryForm::universal_sextic();
        for k in [1, 3, 5] {
            assert!(transvectant(&f, &f, k).unwrap().is_zero());
        }
    }

    #[test]
    fn x1_squared_with_x2_squared() {
        let t = transvectant(&form(2, "x1^2"), &form(2, "x2^2"), 2).unwrap();
        assert_eq!(t.degree, 0);
        assert!(t.poly.is_one());
        assert_eq!(t.scale, RationalConstant::one());
    }

    #[test]
    fn order_too_large() {
        let f = form(2, "x1^2");
        assert!(matches!(transvectant(&f, &f, 3), Err(IgusaError::TransvectantOrder { .. })));
    }
}
