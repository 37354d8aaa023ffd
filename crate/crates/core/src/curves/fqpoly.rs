//! Univariate polynomials over a binary field.

use super::field::{BinaryField, Embedding, FqElement};

/// Coefficients in increasing degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FqPoly {
    coeffs: Vec<FqElement>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElement>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FqElement) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Coefficients `0..len`, zero-padded.
    pub fn padded<const N: usize>(&self) -> Option<[FqElement; N]> {
        (self.coeffs.len() <= N).then(|| std::array::from_fn(|i| self.coeff(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FqElement {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect())
    }

    pub fn scale(&self, f: &BinaryField, c: FqElement) -> Self {
        Self::new(self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, f: &BinaryField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] ^= f.mul(x, y);
            }
        }
        Self::new(out)
    }

    pub fn square(&self, f: &BinaryField) -> Self {
        let mut out = vec![0; 2 * self.coeffs.len()];
        for (i, &x) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(x);
        }
        Self::new(out)
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Self {
        Self::new((1..self.coeffs.len()).map(|i| if i % 2 == 1 { self.coeffs[i] } else { 0 }).collect())
    }

    /// Square root of a polynomial with vanishing odd coefficients.
    pub fn sqrt(&self, f: &BinaryField) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect()))
    }

    pub fn eval(&self, f: &BinaryField, x: FqElement) -> FqElement {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// `(quotient, remainder)`; panics on a zero divisor.
    pub fn div_rem(&self, f: &BinaryField, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = *rem.last().expect("nonempty");
            if top != 0 {
                let k = rem.len() - 1 - d;
                let c = f.mul(top, inv);
                quot[k] = c;
                for (j, &y) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] ^= f.mul(c, y);
                }
            }
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self, f: &BinaryField) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(&lc) => self.scale(f, f.inv(lc).expect("nonzero")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &BinaryField, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(f, &b).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self, f: &BinaryField) -> Self {
        match self.degree() {
            None => return Self::zero(),
            Some(0) => return Self::constant(1),
            _ => {}
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.sqrt(f).expect("zero derivative means a square").radical(f);
        }
        let g = self.gcd(f, &d);
        // factors whose multiplicity is odd, each once
        let w = self.div_rem(f, &g).0.monic(f);
        let r = g.radical(f);
        let common = w.gcd(f, &r);
        w.mul(f, &r).div_rem(f, &common).0.monic(f)
    }

    /// Number of distinct roots in an algebraic closure.
    pub fn distinct_root_count(&self, f: &BinaryField) -> usize {
        self.radical(f).degree().unwrap_or(0)
    }

    pub fn embed(&self, e: &Embedding) -> Self {
        Self::new(self.coeffs.iter().map(|&c| e.apply(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> BinaryField {
        BinaryField::new(1).unwrap()
    }

    fn p(bits: &[u32]) -> FqPoly {
        FqPoly::new(bits.to_vec())
    }

    #[test]
    fn division_round_trip() {
        let f = BinaryField::new(3).unwrap();
        let a = p(&[1, 2, 3, 4, 5, 6, 7]);
        let b = p(&[3, 0, 1, 5]);
        let (q, r) = a.div_rem(&f, &b);
        assert!(r.degree() < b.degree());
        assert_eq!(q.mul(&f, &b).add(&r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = f2();
        let x1 = p(&[1, 1]);
        let a = x1.mul(&f, &p(&[1, 1, 1]));
        let b = x1.mul(&f, &p(&[0, 1]));
        assert_eq!(a.gcd(&f, &b), x1);
    }

    #[test]
    fn radical_in_characteristic_two() {
        let f = f2();
        // x^3 (x+1)^2 (x^2+x+1)^4 has three distinct irreducible factors
        let x = FqPoly::x();
        let x1 = p(&[1, 1]);
        let q = p(&[1, 1, 1]);
        let poly = x.mul(&f, &x).mul(&f, &x).mul(&f, &x1.square(&f)).mul(&f, &q.square(&f).square(&f));
        assert_eq!(poly.radical(&f), x.mul(&f, &x1).mul(&f, &q));
        assert_eq!(poly.distinct_root_count(&f), 4);
        assert_eq!(p(&[0, 0, 0, 1]).distinct_root_count(&f), 1);
    }

    #[test]
    fn derivative_drops_even_terms() {
        assert_eq!(p(&[1, 1, 1, 1]).derivative(), p(&[1, 0, 1]));
    }
}
