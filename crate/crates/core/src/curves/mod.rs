//! Genus-2 curves `y^2 + a(x) y = b(x)` over binary fields.
//!
//! `a(x) = Σ a_i x^i` (degree ≤ 3) and `b(x) = Σ b_j x^j` (degree ≤ 6) are the
//! dehomogenizations at `x1 = 1` of the forms used for the invariants, so
//! `x = x2/x1` and the point at infinity is `x1 = 0`.

mod enumerate;
pub mod field;
mod fqpoly;
pub mod parse;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::char2inv::{k_table, KName, KTable};
use crate::polycore::Var;

pub use enumerate::{enumerate_curves, enumerate_curves_with_progress, Bucket, EnumerationReport};
pub use field::{BinaryField, Embedding, FqElement};
pub use fqpoly::FqPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the cubic a must be nonzero")]
    ZeroCubic,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("field degree {0} is outside 1..=16")]
    FieldTooLarge(u32),
    #[error("F_2^{small} is not a subfield of F_2^{big}")]
    NotASubfield { small: u32, big: u32 },
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} has degree {1}, above the allowed {2}")]
    DegreeTooLarge(&'static str, usize, usize),
    #[error("coefficient {0} is not an element of F_2^{1}")]
    NotInField(FqElement, u32),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `(α β; γ δ)` with nonzero determinant and a translation cubic
/// `v = Σ v_i x^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqGroupElement {
    pub alpha: FqElement,
    pub beta: FqElement,
    pub gamma: FqElement,
    pub delta: FqElement,
    pub v: [FqElement; 4],
}

impl FqGroupElement {
    pub fn identity() -> Self {
        FqGroupElement { alpha: 1, beta: 0, gamma: 0, delta: 1, v: [0; 4] }
    }

    pub fn translation(v: [FqElement; 4]) -> Self {
        FqGroupElement { v, ..Self::identity() }
    }

    pub fn swap() -> Self {
        FqGroupElement { alpha: 0, beta: 1, gamma: 1, delta: 0, v: [0; 4] }
    }

    pub fn determinant(&self, f: &BinaryField) -> FqElement {
        f.mul(self.alpha, self.delta) ^ f.mul(self.beta, self.gamma)
    }

    /// A uniformly random invertible element.
    pub fn random(f: &BinaryField, rng: &mut impl Rng) -> Self {
        let el = |rng: &mut dyn rand::RngCore| rng.gen_range(0..f.size());
        loop {
            let g = FqGroupElement {
                alpha: el(rng),
                beta: el(rng),
                gamma: el(rng),
                delta: el(rng),
                v: [el(rng), el(rng), el(rng), el(rng)],
            };
            if g.determinant(f) != 0 {
                return g;
            }
        }
    }
}

/// Product of coefficient vectors of binary forms, indexed by the power of
/// `x2`.
fn form_mul(f: &BinaryField, p: &[FqElement], q: &[FqElement]) -> Vec<FqElement> {
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, &x) in p.iter().enumerate() {
        for (j, &y) in q.iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    out
}

/// `c(αx1 + βx2, γx1 + δx2)` for a form `c = Σ c_i x1^(d-i) x2^i`.
fn substitute_form(f: &BinaryField, c: &[FqElement], g: &FqGroupElement) -> Vec<FqElement> {
    let d = c.len() - 1;
    let l1 = [g.alpha, g.beta];
    let l2 = [g.gamma, g.delta];
    let power = |l: &[FqElement; 2], k: usize| (0..k).fold(vec![1], |acc, _| form_mul(f, &acc, l));
    let mut out = vec![0; d + 1];
    for (i, &ci) in c.iter().enumerate().filter(|(_, c)| **c != 0) {
        let term = form_mul(f, &power(&l1, d - i), &power(&l2, i));
        for (o, t) in out.iter_mut().zip(term) {
            *o ^= f.mul(ci, t);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genus2Curve {
    field: BinaryField,
    a: [FqElement; 4],
    b: [FqElement; 7],
}

impl Genus2Curve {
    pub fn from_coeffs(field: BinaryField, a: [FqElement; 4], b: [FqElement; 7]) -> Result<Self, CurveError> {
        if let Some(&bad) = a.iter().chain(&b).find(|&&c| !field.contains(c)) {
            return Err(CurveError::NotInField(bad, field.degree()));
        }
        if a.iter().all(|&c| c == 0) {
            return Err(CurveError::ZeroCubic);
        }
        Ok(Genus2Curve { field, a, b })
    }

    pub fn new(field: BinaryField, a: &FqPoly, b: &FqPoly) -> Result<Self, CurveError> {
        let a_c = a.padded::<4>().ok_or(CurveError::DegreeTooLarge("a", a.degree().unwrap_or(0), 3))?;
        let b_c = b.padded::<7>().ok_or(CurveError::DegreeTooLarge("b", b.degree().unwrap_or(0), 6))?;
        Self::from_coeffs(field, a_c, b_c)
    }

    /// Parses `a` and `b` in the `x`/`g` grammar over `F_{2^n}`.
    pub fn parse(n: u32, a: &str, b: &str) -> Result<Self, CurveError> {
        let field = BinaryField::new(n)?;
        Self::new(field, &parse::parse_fq_poly(field, a)?, &parse::parse_fq_poly(field, b)?)
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn a(&self) -> &[FqElement; 4] {
        &self.a
    }

    pub fn b(&self) -> &[FqElement; 7] {
        &self.b
    }

    pub fn a_poly(&self) -> FqPoly {
        FqPoly::new(self.a.to_vec())
    }

    pub fn b_poly(&self) -> FqPoly {
        FqPoly::new(self.b.to_vec())
    }

    /// `a'^2 b + b'^2`, whose common roots with `a` are the singular `x`.
    fn singular_locus_poly(f: &BinaryField, a: &FqPoly, b: &FqPoly) -> FqPoly {
        a.derivative().square(f).mul(f, b).add(&b.derivative().square(f))
    }

    pub fn is_smooth(&self) -> bool {
        let f = &self.field;
        let (a, b) = (self.a_poly(), self.b_poly());
        let affine = a.gcd(f, &Self::singular_locus_poly(f, &a, &b)).degree() == Some(0);
        // chart x' = 1/x, y' = y/x^3: reversed coefficients, tested at x' = 0
        let mut ra = self.a;
        ra.reverse();
        let mut rb = self.b;
        rb.reverse();
        let (ra, rb) = (FqPoly::new(ra.to_vec()), FqPoly::new(rb.to_vec()));
        let at_infinity = ra.coeff(0) != 0 || Self::singular_locus_poly(f, &ra, &rb).coeff(0) != 0;
        affine && at_infinity
    }

    /// `(number of distinct zeros of the homogenized cubic) - 1`.
    pub fn two_rank(&self) -> u32 {
        let a = self.a_poly();
        let affine = a.distinct_root_count(&self.field) as u32;
        let infinity = u32::from(a.degree() != Some(3));
        affine + infinity - 1
    }

    /// `(a, b) ↦ (det^-1 a∘M, det^-2 b∘M + v^2 + (det^-1 a∘M) v)`.
    pub fn act(&self, g: &FqGroupElement) -> Result<Self, CurveError> {
        let f = &self.field;
        let det = g.determinant(f);
        let det_inv = f.inv(det).map_err(|_| CurveError::SingularMatrix)?;
        let det_inv2 = f.square(det_inv);
        let a: Vec<FqElement> = substitute_form(f, &self.a, g).into_iter().map(|c| f.mul(c, det_inv)).collect();
        let mut b: Vec<FqElement> = substitute_form(f, &self.b, g).into_iter().map(|c| f.mul(c, det_inv2)).collect();
        for (i, &vi) in g.v.iter().enumerate() {
            b[2 * i] ^= f.square(vi);
        }
        for (o, t) in b.iter_mut().zip(form_mul(f, &a, &g.v)) {
            *o ^= t;
        }
        let image = Genus2Curve { field: self.field, a: a.try_into().expect("cubic"), b: b.try_into().expect("sextic") };
        debug_assert_eq!(image.is_smooth(), self.is_smooth());
        debug_assert_eq!(image.two_rank(), self.two_rank());
        Ok(image)
    }

    /// `(c a, c^2 b)`, the action of the scalar matrix `c·Id`.
    pub fn scale(&self, c: FqElement) -> Self {
        let f = &self.field;
        Genus2Curve { field: self.field, a: self.a.map(|x| f.mul(c, x)), b: self.b.map(|x| f.mul(f.square(c), x)) }
    }

    /// `a0..a3, b0..b6` in the slot order used by [`CompiledInvariant`].
    pub fn coefficient_values(&self) -> [FqElement; 11] {
        std::array::from_fn(|i| if i < 4 { self.a[i] } else { self.b[i - 4] })
    }

    /// Every K-invariant evaluated at the curve's coefficients.
    pub fn eval_invariants(&self) -> BTreeMap<KName, FqElement> {
        compiled_invariants().iter().map(|k| (k.name, k.eval(&self.field, &self.coefficient_values()))).collect()
    }

    pub fn eval_invariant(&self, name: KName) -> FqElement {
        compiled_invariants().iter().find(|k| k.name == name).expect("all names compiled").eval(&self.field, &self.coefficient_values())
    }

    /// `|C(F_{q^m})|` on the smooth model.
    pub fn count_points(&self, m: u32) -> Result<u64, CurveError> {
        if !self.is_smooth() {
            return Err(CurveError::NotSmooth);
        }
        let n = self.field.degree() * m;
        let big = BinaryField::new(n)?;
        let e = self.field.embedding_into(big)?;
        let (a, b) = (self.a_poly().embed(&e), self.b_poly().embed(&e));
        // number of y with y^2 + α y = β
        let fibre = |alpha: FqElement, beta: FqElement| -> u64 {
            if alpha == 0 {
                1
            } else if big.trace(big.mul(beta, big.square(big.inv(alpha).expect("nonzero")))) == 0 {
                2
            } else {
                0
            }
        };
        let affine: u64 = big.elements().map(|x| fibre(a.eval(&big, x), b.eval(&big, x))).sum();
        Ok(affine + fibre(e.apply(self.a[3]), e.apply(self.b[6])))
    }

    /// `L(t) = 1 + a1 t + a2 t^2 + q a1 t^3 + q^2 t^4` from `N1` and `N2`.
    pub fn l_polynomial(&self) -> Result<[i64; 5], CurveError> {
        let q = self.field.size() as i64;
        let n1 = self.count_points(1)? as i64;
        let n2 = self.count_points(2)? as i64;
        let a1 = n1 - q - 1;
        let a2 = (n2 - q * q - 1 + a1 * a1) / 2;
        Ok([1, a1, a2, q * a1, q * q])
    }

    /// Degree of `L(t) mod 2`.
    pub fn two_rank_from_l(&self) -> Result<u32, CurveError> {
        let l = self.l_polynomial()?;
        Ok((0..5).rev().find(|&i| l[i].rem_euclid(2) == 1).unwrap_or(0) as u32)
    }

    pub fn record(&self) -> CurveRecord {
        let smooth = self.is_smooth();
        CurveRecord {
            n: self.field.degree(),
            a: self.a.to_vec(),
            b: self.b.to_vec(),
            smooth,
            two_rank: self.two_rank(),
            invariants: self.eval_invariants().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            l: if smooth && self.field.degree() <= 8 { self.l_polynomial().ok() } else { None },
        }
    }
}

/// JSON form of a curve: coefficients as bit vectors of the field elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub n: u32,
    pub a: Vec<FqElement>,
    pub b: Vec<FqElement>,
    pub smooth: bool,
    pub two_rank: u32,
    pub invariants: BTreeMap<String, FqElement>,
    #[serde(rename = "L")]
    pub l: Option<[i64; 5]>,
}

/// An invariant body flattened for repeated evaluation: each term is a list
/// of `(variable slot, exponent)` with `a_i ↦ i` and `b_j ↦ 4 + j`.
#[derive(Clone, Debug)]
pub struct CompiledInvariant {
    pub name: KName,
    terms: Vec<Vec<(u8, u32)>>,
}

impl CompiledInvariant {
    pub fn compile(name: KName, body: &crate::polycore::F2Poly) -> Self {
        let slot = |v: Var| -> u8 {
            let j = v.subscript().expect("coefficient variable") as u8;
            if v.is_a() {
                j
            } else {
                4 + j
            }
        };
        let terms = body.terms().iter().map(|(m, _)| m.iter().map(|(v, e)| (slot(v), e)).collect()).collect();
        CompiledInvariant { name, terms }
    }

    /// Evaluates through discrete logarithms; terms touching a zero value vanish.
    pub fn eval(&self, f: &BinaryField, values: &[FqElement; 11]) -> FqElement {
        let logs: [Option<u64>; 11] = std::array::from_fn(|i| (values[i] != 0).then(|| f.log(values[i]) as u64));
        let mut acc = 0;
        'terms: for term in &self.terms {
            let mut l = 0u64;
            for &(slot, e) in term {
                match logs[slot as usize] {
                    Some(lg) => l += lg * e as u64,
                    None => continue 'terms,
                }
            }
            acc ^= f.exp(l);
        }
        acc
    }
}

pub fn compile_table(table: &KTable) -> Vec<CompiledInvariant> {
    table.iter().map(|r| CompiledInvariant::compile(r.name, &r.body)).collect()
}

fn compiled_invariants() -> &'static [CompiledInvariant] {
    static COMPILED: OnceLock<Vec<CompiledInvariant>> = OnceLock::new();
    COMPILED.get_or_init(|| compile_table(k_table()))
}
