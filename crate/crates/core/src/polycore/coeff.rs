use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    F2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Integers"),
            Ring::F2 => f.write_str("F2"),
        }
    }
}

/// A commutative coefficient ring usable inside [`super::Poly`].
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(n: &BigInt) -> Self;
    /// Exact quotient `self / d`, if it exists in the ring.
    fn exact_div(&self, d: &Self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }
}

impl Coefficient for BigInt {
    const RING: Ring = Ring::Integers;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    #[inline]
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);
}

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Coefficient for F2 {
    const RING: Ring = Ring::F2;

    fn zero() -> Self {
        F2::ZERO
    }
    fn one() -> Self {
        F2::ONE
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_one(&self) -> bool {
        self.0
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        self.0 ^= other.0;
    }
    #[inline]
    fn sub_assign(&mut self, other: &Self) {
        self.0 ^= other.0;
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn from_int(n: &BigInt) -> Self {
        F2(n.is_odd())
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.0.then_some(*self)
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn valuation2(n: &BigInt) -> Option<u64> {
    if Zero::is_zero(n) {
        None
    } else {
        n.abs().trailing_zeros()
    }
}
