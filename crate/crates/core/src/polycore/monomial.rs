use std::cmp::Ordering;
use std::fmt;

use super::var::{Var, NVARS};

/// Exponent vector over the fixed variable universe.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `a0`, then `a1`, and so on down the canonical variable order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; NVARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NVARS] };

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = Self::ONE;
        m.exps[v.index()] = to_exp(e as u64);
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut m = Self::ONE;
        for (v, e) in pairs {
            let cur = m.exps[v.index()] as u64;
            m.exps[v.index()] = to_exp(cur + e as u64);
        }
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.index()] as u32
    }

    pub fn exps(&self) -> &[u8; NVARS] {
        &self.exps
    }

    pub fn set_exp(&mut self, v: Var, e: u32) {
        self.exps[v.index()] = to_exp(e as u64);
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Sum of exponents over the variables selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.iter().filter(|(v, _)| pred(*v)).map(|(_, e)| e).sum()
    }

    /// Variables with positive exponent, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::ALL[i], e as u32))
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(*o).expect("exponent overflow (limit 255)");
        }
        Monomial { exps }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_sub(*o)?;
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = to_exp(*e as u64 * k as u64);
        }
        Monomial { exps }
    }

    /// Drops variable `v`, returning the removed exponent.
    pub fn take(&mut self, v: Var) -> u32 {
        std::mem::replace(&mut self.exps[v.index()], 0) as u32
    }
}

fn to_exp(e: u64) -> u8 {
    u8::try_from(e).expect("exponent overflow (limit 255)")
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
