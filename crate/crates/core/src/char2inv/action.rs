//! Symbolic action of `SL(V) ⋉ Sym^3(V)` on pairs `(a, b)` over `F2[t, s]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polycore::{F2Poly, Monomial, Poly, Substitution, Var, F2};

use super::InvariantRecord;

/// A pair `(a, b)` given by coefficient polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPair {
    pub a: [F2Poly; 4],
    pub b: [F2Poly; 7],
}

impl FormPair {
    /// The pair with universal coefficients `a_i`, `b_j`.
    pub fn universal() -> Self {
        FormPair { a: std::array::from_fn(|i| Poly::var(Var::a(i))), b: std::array::from_fn(|j| Poly::var(Var::b(j))) }
    }

    /// Homogeneous form `Σ coeffs[i] x1^(d-i) x2^i`.
    fn homogenize(coeffs: &[F2Poly]) -> F2Poly {
        let d = coeffs.len() as u32 - 1;
        coeffs.iter().enumerate().fold(Poly::zero(), |acc, (i, c)| {
            let m = Monomial::from_pairs([(Var::X1, d - i as u32), (Var::X2, i as u32)]);
            acc.add(&c.mul_monomial(&m, &F2::ONE))
        })
    }

    /// Coefficients of `x1^(d-i) x2^i` in a homogeneous form.
    fn coefficients<const N: usize>(form: &F2Poly) -> [F2Poly; N] {
        let d = N as u32 - 1;
        std::array::from_fn(|i| form.coeff_of_power(Var::X1, d - i as u32).coeff_of_power(Var::X2, i as u32))
    }

    pub fn a_form(&self) -> F2Poly {
        Self::homogenize(&self.a)
    }

    pub fn b_form(&self) -> F2Poly {
        Self::homogenize(&self.b)
    }

    /// Substitution sending `a_i, b_j` to this pair's coefficients.
    pub fn as_substitution(&self) -> Substitution<F2> {
        let mut s = Substitution::new();
        for (i, p) in self.a.iter().enumerate() {
            s.set(Var::a(i), p.clone());
        }
        for (j, p) in self.b.iter().enumerate() {
            s.set(Var::b(j), p.clone());
        }
        s
    }
}

/// A matrix `(α β; γ δ)` of determinant 1 together with a translation cubic
/// `v = Σ v_i x1^(3-i) x2^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub alpha: F2Poly,
    pub beta: F2Poly,
    pub gamma: F2Poly,
    pub delta: F2Poly,
    pub translation: [F2Poly; 4],
}

impl GroupElement {
    pub fn matrix(alpha: F2Poly, beta: F2Poly, gamma: F2Poly, delta: F2Poly) -> Self {
        GroupElement { alpha, beta, gamma, delta, translation: std::array::from_fn(|_| Poly::zero()) }
    }

    pub fn translation(v: [F2Poly; 4]) -> Self {
        let mut g = Self::matrix(Poly::one(), Poly::zero(), Poly::zero(), Poly::one());
        g.translation = v;
        g
    }

    pub fn determinant(&self) -> F2Poly {
        self.alpha.mul(&self.delta).add(&self.beta.mul(&self.gamma))
    }

    /// `(a, b) ↦ (a∘M, b∘M + v^2 + (a∘M) v)`; the twist is trivial since
    /// the determinant is 1.
    pub fn act(&self, pair: &FormPair) -> FormPair {
        assert!(self.determinant().is_one(), "symbolic action requires determinant 1");
        let lin = Substitution::new()
            .bind(Var::X1, self.alpha.mul(&Poly::var(Var::X1)).add(&self.beta.mul(&Poly::var(Var::X2))))
            .bind(Var::X2, self.gamma.mul(&Poly::var(Var::X1)).add(&self.delta.mul(&Poly::var(Var::X2))));
        let a = pair.a_form().substitute(&lin);
        let v = FormPair::homogenize(&self.translation);
        let b = pair.b_form().substitute(&lin).add(&v.square()).add(&a.mul(&v));
        FormPair { a: FormPair::coefficients::<4>(&a), b: FormPair::coefficients::<7>(&b) }
    }
}

/// The seven symbolic generators used for invariance checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `x1 ↦ x1 + t x2`
    UpperUnipotent,
    /// `x2 ↦ x2 + s x1`
    LowerUnipotent,
    /// `x1 ↔ x2`
    Swap,
    /// `b ↦ b + v^2 + a v` with `v = t x1^(3-r) x2^r`
    Translation(u8),
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::UpperUnipotent,
        Generator::LowerUnipotent,
        Generator::Swap,
        Generator::Translation(0),
        Generator::Translation(1),
        Generator::Translation(2),
        Generator::Translation(3),
    ];

    pub fn element(self) -> GroupElement {
        let t = Poly::var(Var::T);
        match self {
            Generator::UpperUnipotent => GroupElement::matrix(Poly::one(), t, Poly::zero(), Poly::one()),
            Generator::LowerUnipotent => GroupElement::matrix(Poly::one(), Poly::zero(), Poly::var(Var::S), Poly::one()),
            Generator::Swap => GroupElement::matrix(Poly::zero(), Poly::one(), Poly::one(), Poly::zero()),
            Generator::Translation(r) => {
                let mut v: [F2Poly; 4] = std::array::from_fn(|_| Poly::zero());
                v[r as usize] = t;
                GroupElement::translation(v)
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::UpperUnipotent => f.write_str("x1->x1+t*x2"),
            Generator::LowerUnipotent => f.write_str("x2->x2+s*x1"),
            Generator::Swap => f.write_str("x1<->x2"),
            Generator::Translation(r) => {
                let m = Monomial::from_pairs([(Var::X1, 3 - *r as u32), (Var::X2, *r as u32)]);
                write!(f, "b->b+t^2*({m})^2+t*a*({m})")
            }
        }
    }
}

/// The generators as group elements.
pub fn generators() -> Vec<(Generator, GroupElement)> {
    Generator::ALL.iter().map(|g| (*g, g.element())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvarianceFailure {
    Residual { generator: Generator, residual: F2Poly },
    NotBiIsobaric,
    NotWeightedIsobaric,
}

impl fmt::Display for InvarianceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvarianceFailure::Residual { generator, residual } => {
                write!(f, "nonzero residual under {generator} ({} terms)", residual.len())
            }
            InvarianceFailure::NotBiIsobaric => f.write_str("not bi-isobaric"),
            InvarianceFailure::NotWeightedIsobaric => f.write_str("not weighted isobaric"),
        }
    }
}

/// Residual `K(g·(a,b)) - K(a,b)` under one generator.
pub fn invariance_residual(body: &F2Poly, g: &GroupElement) -> F2Poly {
    let image = g.act(&FormPair::universal());
    body.substitute(&image.as_substitution()).sub(body)
}

/// Checks all seven generators and both isobarity conditions.
pub fn check_invariance(record: &InvariantRecord) -> Result<(), InvarianceFailure> {
    if !record.is_bi_isobaric() {
        return Err(InvarianceFailure::NotBiIsobaric);
    }
    if !record.is_weighted_isobaric() {
        return Err(InvarianceFailure::NotWeightedIsobaric);
    }
    for (generator, g) in generators() {
        let residual = invariance_residual(&record.body, &g);
        if !residual.is_zero() {
            return Err(InvarianceFailure::Residual { generator, residual });
        }
    }
    Ok(())
}

/// The weight-(2,0) covariant
/// `(a0a2+a1^2) x1^2 + (a0a3+a1a2) x1x2 + (a1a3+a2^2) x2^2`.
pub fn covariant_c20(a: &[F2Poly; 4]) -> F2Poly {
    let q0 = a[0].mul(&a[2]).add(&a[1].square());
    let q1 = a[0].mul(&a[3]).add(&a[1].mul(&a[2]));
    let q2 = a[1].mul(&a[3]).add(&a[2].square());
    FormPair::homogenize(&[q0, q1, q2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::format::parse_text;

    fn f2(s: &str) -> F2Poly {
        parse_text(s).unwrap()
    }

    #[test]
    fn upper_unipotent_on_cubic() {
        let image = Generator::UpperUnipotent.element().act(&FormPair::universal());
        // a1' = 3 t a0 + a1 ≡ t a0 + a1
        assert_eq!(image.a[1], f2("a1 + a0*t"));
        assert_eq!(image.a[3], f2("a3 + a2*t + a1*t^2 + a0*t^3"));
    }

    #[test]
    fn translation_x1_cubed() {
        let image = Generator::Translation(0).element().act(&FormPair::universal());
        assert_eq!(image.b[0], f2("b0 + a0*t + t^2"));
        assert_eq!(image.b[3], f2("b3 + a3*t"));
        assert_eq!(image.b[6], f2("b6"));
        assert_eq!(image.a, FormPair::universal().a);
    }

    #[test]
    fn k1_invariance() {
        let k1 = super::super::k1();
        for (_, g) in generators() {
            assert!(invariance_residual(&k1, &g).is_zero());
        }
    }

    #[test]
    fn c20_middle_coefficient_is_k1() {
        let c = covariant_c20(&FormPair::universal().a);
        let mid = c.coeff_of_power(Var::X1, 1).coeff_of_power(Var::X2, 1);
        assert_eq!(mid, super::super::k1());
    }

    #[test]
    fn c20_of_x1_cubed_vanishes() {
        let a = [Poly::one(), Poly::zero(), Poly::zero(), Poly::zero()];
        assert!(covariant_c20(&a).is_zero());
    }

    #[test]
    fn c20_equivariant_under_swap_and_unipotent() {
        for gen in [Generator::Swap, Generator::UpperUnipotent, Generator::LowerUnipotent] {
            let g = gen.element();
            let moved = g.act(&FormPair::universal());
            let lhs = covariant_c20(&moved.a);
            let lin = Substitution::new()
                .bind(Var::X1, g.alpha.mul(&Poly::var(Var::X1)).add(&g.beta.mul(&Poly::var(Var::X2))))
                .bind(Var::X2, g.gamma.mul(&Poly::var(Var::X1)).add(&g.delta.mul(&Poly::var(Var::X2))));
            let rhs = covariant_c20(&FormPair::universal().a).substitute(&lin);
            assert_eq!(lhs, rhs, "{gen}");
        }
    }
}
