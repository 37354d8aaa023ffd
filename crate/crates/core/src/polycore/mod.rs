//! Exact sparse multivariate polynomials over the integers and over F2.
//!
//! [`Poly`] is generic over its coefficient ring; [`MultiPoly`] carries the
//! ring as a runtime tag for the serialization boundary and rejects mixed-ring
//! arithmetic.

mod coeff;
pub mod format;
mod monomial;
mod poly;
mod rational;
mod var;

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

pub use coeff::{valuation2, Coefficient, Ring, F2};
pub use monomial::Monomial;
pub use poly::{EvalRing, F2Poly, Poly, Rationals, Substitution, ZPoly};
pub use rational::RationalConstant;
pub use var::{Var, NVARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A polynomial tagged with its coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiPoly {
    Integers(ZPoly),
    F2(F2Poly),
}

impl From<ZPoly> for MultiPoly {
    fn from(p: ZPoly) -> Self {
        MultiPoly::Integers(p)
    }
}

impl From<F2Poly> for MultiPoly {
    fn from(p: F2Poly) -> Self {
        MultiPoly::F2(p)
    }
}

macro_rules! same_ring {
    ($lhs:expr, $rhs:expr, |$a:ident, $b:ident| $body:expr) => {
        match ($lhs, $rhs) {
            (MultiPoly::Integers($a), MultiPoly::Integers($b)) => Ok(MultiPoly::Integers($body)),
            (MultiPoly::F2($a), MultiPoly::F2($b)) => Ok(MultiPoly::F2($body)),
            (l, r) => Err(PolyError::RingMismatch(l.ring(), r.ring())),
        }
    };
}

impl MultiPoly {
    pub fn ring(&self) -> Ring {
        match self {
            MultiPoly::Integers(_) => Ring::Integers,
            MultiPoly::F2(_) => Ring::F2,
        }
    }

    pub fn parse(ring: Ring, text: &str) -> Result<Self, PolyError> {
        Ok(match ring {
            Ring::Integers => MultiPoly::Integers(format::parse_text(text)?),
            Ring::F2 => MultiPoly::F2(format::parse_text(text)?),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        same_ring!(self, other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        same_ring!(self, other, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        same_ring!(self, other, |a, b| a.mul(b))
    }

    pub fn exact_div(&self, other: &Self) -> Result<Self, PolyError> {
        match (self, other) {
            (MultiPoly::Integers(a), MultiPoly::Integers(b)) => Ok(MultiPoly::Integers(a.exact_div(b)?)),
            (MultiPoly::F2(a), MultiPoly::F2(b)) => Ok(MultiPoly::F2(a.exact_div(b)?)),
            (l, r) => Err(PolyError::RingMismatch(l.ring(), r.ring())),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        match self {
            MultiPoly::Integers(p) => MultiPoly::Integers(p.pow(k)),
            MultiPoly::F2(p) => MultiPoly::F2(p.pow(k)),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        match self {
            MultiPoly::Integers(p) => MultiPoly::Integers(p.derivative(v)),
            MultiPoly::F2(p) => MultiPoly::F2(p.derivative(v)),
        }
    }

    /// Simultaneous substitution; every image must live in the same ring.
    pub fn substitute(&self, bindings: &[(Var, MultiPoly)]) -> Result<Self, PolyError> {
        match self {
            MultiPoly::Integers(p) => {
                let mut s = Substitution::new();
                for (v, img) in bindings {
                    match img {
                        MultiPoly::Integers(q) => s.set(*v, q.clone()),
                        other => return Err(PolyError::RingMismatch(Ring::Integers, other.ring())),
                    }
                }
                Ok(MultiPoly::Integers(p.substitute(&s)))
            }
            MultiPoly::F2(p) => {
                let mut s = Substitution::new();
                for (v, img) in bindings {
                    match img {
                        MultiPoly::F2(q) => s.set(*v, q.clone()),
                        other => return Err(PolyError::RingMismatch(Ring::F2, other.ring())),
                    }
                }
                Ok(MultiPoly::F2(p.substitute(&s)))
            }
        }
    }

    pub fn content_2adic(&self) -> Result<u64, PolyError> {
        match self {
            MultiPoly::Integers(p) => p.content_2adic(),
            MultiPoly::F2(_) => Err(PolyError::RingMismatch(Ring::Integers, Ring::F2)),
        }
    }

    pub fn divide_pow2_and_reduce(&self) -> Result<Self, PolyError> {
        match self {
            MultiPoly::Integers(p) => Ok(MultiPoly::F2(p.divide_pow2_and_reduce()?)),
            MultiPoly::F2(_) => Err(PolyError::RingMismatch(Ring::Integers, Ring::F2)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MultiPoly::Integers(p) => p.is_zero(),
            MultiPoly::F2(p) => p.is_zero(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            MultiPoly::Integers(p) => format::to_text(p),
            MultiPoly::F2(p) => format::to_text(p),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MultiPoly::Integers(p) => format::to_json_value(p),
            MultiPoly::F2(p) => format::to_json_value(p),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self, PolyError> {
        format::from_json_value(value)
    }
}

/// Integer constant as a polynomial, for building expressions tersely.
pub fn zconst(n: i64) -> ZPoly {
    Poly::constant(BigInt::from(n))
}
