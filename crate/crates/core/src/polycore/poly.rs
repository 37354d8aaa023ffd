use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::coeff::{valuation2, Coefficient, F2};
use super::monomial::Monomial;
use super::var::{Var, NVARS};
use super::PolyError;

/// Products with more than this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 1 << 16;

/// Sparse multivariate polynomial with coefficients in `C`.
///
/// Terms are stored in strictly decreasing graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: Vec<(Monomial, C)>,
}

/// Polynomial over the integers.
pub type ZPoly = Poly<BigInt>;
/// Polynomial over the two-element field.
pub type F2Poly = Poly<F2>;

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        for (m, c) in terms {
            accumulate(&mut acc, m, &c);
        }
        Self::from_map(acc)
    }

    fn from_map(map: FxHashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Wraps terms already in canonical order; used where order is preserved
    /// by construction.
    fn from_sorted(terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Coefficient of the exact monomial `m`.
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut seen = [false; NVARS];
        for (m, _) in &self.terms {
            for (v, _) in m.iter() {
                seen[v.index()] = true;
            }
        }
        Var::ALL.iter().copied().filter(|v| seen[v.index()]).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if subtract {
                        c.sub_assign(&b[j].1);
                    } else {
                        c.add_assign(&b[j].1);
                    }
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(out)
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_sorted(terms)
    }

    /// Multiplies by a single monomial; order is preserved.
    pub fn mul_monomial(&self, m: &Monomial, k: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (t.mul(m), c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_sorted(terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_monomial(m, c);
        }
        if small.len() * large.len() < PAR_THRESHOLD {
            let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
            acc.reserve(large.len() * 2);
            mul_into(&mut acc, &small.terms, &large.terms);
            return Self::from_map(acc);
        }
        let chunk = (small.len() / rayon::current_num_threads().max(1)).max(1);
        let acc = small
            .terms
            .par_chunks(chunk)
            .map(|part| {
                let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
                mul_into(&mut acc, part, &large.terms);
                acc
            })
            .reduce(FxHashMap::default, merge_maps);
        Self::from_map(acc)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(v);
            if e == 0 {
                return None;
            }
            let mut m2 = *m;
            m2.set_exp(v, e - 1);
            let c2 = c.mul(&C::from_i64(e as i64));
            (!c2.is_zero()).then_some((m2, c2))
        });
        Self::from_terms(terms)
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, subst: &Substitution<C>) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let cache = PowerCache::new(self, subst);
        let work = |part: &[(Monomial, C)]| {
            let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
            for (m, c) in part {
                let (fixed, images) = cache.split(m);
                let mut prod = Poly::term(fixed, c.clone());
                for img in images {
                    prod = prod.mul(img);
                    if prod.is_zero() {
                        break;
                    }
                }
                for (t, k) in prod.terms {
                    accumulate(&mut acc, t, &k);
                }
            }
            acc
        };
        if self.len() < 64 {
            return Self::from_map(work(&self.terms));
        }
        let chunk = (self.len() / (4 * rayon::current_num_threads().max(1))).max(1);
        let acc = self.terms.par_chunks(chunk).map(work).reduce(FxHashMap::default, merge_maps);
        Self::from_map(acc)
    }

    /// Exact division: returns `r` with `divisor * r == self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?.clone();
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm).ok_or(PolyError::NotDivisible)?;
            let qc = c.exact_div(&lc).ok_or(PolyError::NotDivisible)?;
            for (dm, dc) in &divisor.terms[1..] {
                let t = dm.mul(&qm);
                let prod = dc.mul(&qc);
                let entry = rem.entry(t).or_insert_with(C::zero);
                entry.sub_assign(&prod);
                if entry.is_zero() {
                    rem.remove(&t);
                }
            }
            quotient.push((qm, qc));
        }
        Ok(Self::from_sorted(quotient))
    }

    /// Keeps only terms whose monomial satisfies `pred`.
    pub fn filter_terms(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        Self::from_sorted(self.terms.iter().filter(|(m, _)| pred(m)).cloned().collect())
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, v: Var, e: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(v) == e).map(|(m, c)| {
            let mut m2 = *m;
            m2.take(v);
            (m2, c.clone())
        });
        Self::from_terms(terms)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_sorted(
            self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        )
    }

    /// Evaluates at a point of any commutative ring supplied through `ops`.
    pub fn eval<R: EvalRing>(&self, ops: &R, embed: impl Fn(&C) -> R::Elem, value: impl Fn(Var) -> R::Elem) -> R::Elem {
        let vars = self.variables();
        let mut powers: Vec<Vec<R::Elem>> = vec![Vec::new(); NVARS];
        for v in vars {
            let x = value(v);
            let max = self.degree_in(v) as usize;
            let mut p = Vec::with_capacity(max + 1);
            p.push(ops.one());
            for i in 1..=max {
                let next = ops.mul(&p[i - 1], &x);
                p.push(next);
            }
            powers[v.index()] = p;
        }
        let mut sum = ops.zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (v, e) in m.iter() {
                t = ops.mul(&t, &powers[v.index()][e as usize]);
            }
            sum = ops.add(&sum, &t);
        }
        sum
    }
}

impl Poly<F2> {
    /// `p^(2^k)` via the Frobenius endomorphism.
    pub fn frobenius(&self, k: u32) -> Self {
        let e = 1u32 << k;
        Self::from_sorted(self.terms.iter().map(|(m, c)| (m.pow(e), *c)).collect())
    }
}

impl Poly<BigInt> {
    /// Minimum 2-adic valuation over all coefficients.
    pub fn content_2adic(&self) -> Result<u64, PolyError> {
        self.terms
            .iter()
            .map(|(_, c)| valuation2(c).expect("stored coefficients are nonzero"))
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Divides by `2^content` and reduces modulo 2. The result is nonzero.
    pub fn divide_pow2_and_reduce(&self) -> Result<Poly<F2>, PolyError> {
        let v = self.content_2adic()?;
        Ok(self.map_coeffs(|c| F2((c >> v).is_odd())))
    }

    /// Plain reduction modulo 2.
    pub fn reduce_mod2(&self) -> Poly<F2> {
        self.map_coeffs(|c| F2(c.is_odd()))
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::from(0), |g, (_, c)| g.gcd(c))
    }
}

#[inline]
fn accumulate<C: Coefficient>(acc: &mut FxHashMap<Monomial, C>, m: Monomial, c: &C) {
    match acc.get_mut(&m) {
        Some(e) => e.add_assign(c),
        None => {
            acc.insert(m, c.clone());
        }
    }
}

fn mul_into<C: Coefficient>(acc: &mut FxHashMap<Monomial, C>, a: &[(Monomial, C)], b: &[(Monomial, C)]) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            let c = ca.mul(cb);
            match acc.get_mut(&m) {
                Some(e) => e.add_assign(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
    }
}

fn merge_maps<C: Coefficient>(mut a: FxHashMap<Monomial, C>, b: FxHashMap<Monomial, C>) -> FxHashMap<Monomial, C> {
    if a.len() < b.len() {
        return merge_maps(b, a);
    }
    for (m, c) in b {
        accumulate(&mut a, m, &c);
    }
    a
}

/// Images of variables for [`Poly::substitute`]; unbound variables pass through.
#[derive(Clone)]
pub struct Substitution<C> {
    images: Vec<Option<Poly<C>>>,
}

impl<C: Coefficient> Default for Substitution<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> Substitution<C> {
    pub fn new() -> Self {
        Substitution { images: vec![None; NVARS] }
    }

    pub fn bind(mut self, v: Var, image: Poly<C>) -> Self {
        self.set(v, image);
        self
    }

    pub fn set(&mut self, v: Var, image: Poly<C>) {
        self.images[v.index()] = Some(image);
    }

    pub fn get(&self, v: Var) -> Option<&Poly<C>> {
        self.images[v.index()].as_ref()
    }
}

struct PowerCache<C> {
    bound: [bool; NVARS],
    powers: Vec<Vec<Poly<C>>>,
}

impl<C: Coefficient> PowerCache<C> {
    fn new(p: &Poly<C>, subst: &Substitution<C>) -> Self {
        let mut bound = [false; NVARS];
        let mut powers = vec![Vec::new(); NVARS];
        for v in p.variables() {
            if let Some(img) = subst.get(v) {
                bound[v.index()] = true;
                let max = p.degree_in(v) as usize;
                let mut pw = Vec::with_capacity(max + 1);
                pw.push(Poly::one());
                for i in 1..=max {
                    let next = pw[i - 1].mul(img);
                    pw.push(next);
                }
                powers[v.index()] = pw;
            }
        }
        PowerCache { bound, powers }
    }

    /// Splits a monomial into its unbound part and the images of bound powers,
    /// smallest image first.
    fn split(&self, m: &Monomial) -> (Monomial, Vec<&Poly<C>>) {
        let mut fixed = *m;
        let mut images = Vec::new();
        for (v, e) in m.iter() {
            if self.bound[v.index()] {
                fixed.take(v);
                images.push(&self.powers[v.index()][e as usize]);
            }
        }
        images.sort_by_key(|p| p.len());
        (fixed, images)
    }
}

/// Arithmetic needed to evaluate a polynomial in some commutative ring.
pub trait EvalRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Evaluation in the rationals.
pub struct Rationals;

impl EvalRing for Rationals {
    type Elem = num_rational::BigRational;
    fn zero(&self) -> Self::Elem {
        num_traits::Zero::zero()
    }
    fn one(&self) -> Self::Elem {
        num_traits::One::one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::to_text(self))
    }
}

impl<C: Coefficient> std::ops::Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        Poly::add(self, rhs)
    }
}

impl<C: Coefficient> std::ops::Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        Poly::sub(self, rhs)
    }
}

impl<C: Coefficient> std::ops::Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        Poly::mul(self, rhs)
    }
}

impl<C: Coefficient> std::ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}
