use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::valuation2;
use super::PolyError;

/// A nonzero rational scale factor, kept in lowest terms.
///
/// Displayed as `±p/q·2^e` with `p`, `q` odd, which makes the power of two
/// (the only part that survives reduction modulo 2) explicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalConstant(BigRational);

impl RationalConstant {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        assert!(!numer.is_zero(), "scale must be nonzero");
        RationalConstant(BigRational::new(numer, denom))
    }

    pub fn from_rational(r: BigRational) -> Self {
        assert!(!r.is_zero(), "scale must be nonzero");
        RationalConstant(r)
    }

    pub fn integer(n: i64) -> Self {
        Self::new(BigInt::from(n), BigInt::one())
    }

    /// `2^e` for any integer `e`.
    pub fn pow2(e: i64) -> Self {
        let p = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Self::new(p, BigInt::one())
        } else {
            Self::new(BigInt::one(), p)
        }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// 2-adic valuation of the scale.
    pub fn valuation2(&self) -> i64 {
        let n = valuation2(self.0.numer()).expect("nonzero") as i64;
        let d = valuation2(self.0.denom()).expect("nonzero") as i64;
        n - d
    }

    /// Returns `(sign·p, q, e)` with `p, q` odd and positive.
    pub fn odd_parts(&self) -> (BigInt, BigInt, i64) {
        let vn = valuation2(self.0.numer()).expect("nonzero");
        let vd = valuation2(self.0.denom()).expect("nonzero");
        (self.0.numer() >> vn, self.0.denom() >> vd, vn as i64 - vd as i64)
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalConstant(&self.0 * &other.0)
    }

    pub fn div(&self, other: &Self) -> Self {
        RationalConstant(&self.0 / &other.0)
    }

    pub fn pow(&self, k: i32) -> Self {
        RationalConstant(num_traits::Pow::pow(&self.0, k))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for RationalConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, e) = self.odd_parts();
        let sign = if p.is_negative() { '-' } else { '+' };
        write!(f, "{sign}{}/{}·2^{e}", p.abs(), q)
    }
}

impl FromStr for RationalConstant {
    type Err = PolyError;

    /// Parses the display form `±p/q·2^e`.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let bad = || PolyError::Parse(format!("bad scale `{s}`"));
        let (frac, e) = s.split_once("·2^").ok_or_else(bad)?;
        let (p, q) = frac.split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.strip_prefix('+').unwrap_or(p).parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        let e: i64 = e.parse().map_err(|_| bad())?;
        if p.is_zero() || q.is_zero() {
            return Err(bad());
        }
        Ok(Self::new(p, q).mul(&Self::pow2(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_valuation() {
        let s = RationalConstant::pow2(-2);
        assert_eq!(s.to_string(), "+1/1·2^-2");
        assert_eq!(s.valuation2(), -2);
        let t = RationalConstant::new(BigInt::from(-40), BigInt::from(3));
        assert_eq!(t.to_string(), "-5/3·2^3");
        assert_eq!(t.valuation2(), 3);
    }

    #[test]
    fn parse_round_trip() {
        for r in [RationalConstant::pow2(-7), RationalConstant::new(BigInt::from(-40), BigInt::from(3)), RationalConstant::one()] {
            assert_eq!(r.to_string().parse::<RationalConstant>().unwrap(), r);
        }
        assert!("1/0·2^1".parse::<RationalConstant>().is_err());
        assert!("3".parse::<RationalConstant>().is_err());
    }
}
