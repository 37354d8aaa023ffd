//! Characteristic-0 Igusa invariants of the universal binary sextic.
//!
//! Candidate invariants come from the classical transvectant generators
//! `A = (f,f)_6`, `B = (i,i)_4`, `C = (i,Δ)_4`, `D = (y3,y1)_2` with
//! `i = (f,f)_4`, `Δ = (i,i)_2`, `y1 = (f,i)_4`, `y2 = (i,y1)_2`,
//! `y3 = (i,y2)_2`. Each `J_{2k}` is a rational combination of the degree-`2k`
//! products of these generators. The mixing coefficients are pinned by the
//! known leading strings of `J2` and `J4` and by exact root-difference
//! evaluations at random rational sextics; `J8` is then forced by the Proj
//! relation `J4^2 - J2 J6 + 4 J8 = 0`.

mod oracle;
mod transvectant;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::polycore::{Monomial, Poly, Rationals, RationalConstant, Var, ZPoly};

pub use oracle::{oracle_j_values, root_difference_oracle, RootInvariant, RootedSextic};
pub use transvectant::{transvectant, BinaryForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IgusaError {
    #[error("transvectant order {k} exceeds min of degrees {m}, {n}")]
    TransvectantOrder { k: u32, m: u32, n: u32 },
    #[error("calibration failed for {name}: {reason}")]
    CalibrationFailure { name: JName, reason: String },
}

/// Names of the characteristic-0 invariants produced here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JName {
    J2,
    J4,
    J6,
    J8,
    J10,
    I4,
}

impl JName {
    pub const ALL: [JName; 6] = [JName::J2, JName::J4, JName::J6, JName::J8, JName::J10, JName::I4];

    /// Degree in the sextic coefficients.
    pub fn degree(self) -> u32 {
        match self {
            JName::J2 => 2,
            JName::J4 | JName::I4 => 4,
            JName::J6 => 6,
            JName::J8 => 8,
            JName::J10 => 10,
        }
    }

    pub fn parse(s: &str) -> Option<JName> {
        JName::ALL.into_iter().find(|n| n.to_string() == s)
    }
}

impl fmt::Display for JName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An invariant `scale · body` with `body` an integer polynomial in `c0..c6`
/// whose coefficients have gcd 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledInvariant {
    pub name: JName,
    pub body: ZPoly,
    pub scale: RationalConstant,
}

impl ScaledInvariant {
    /// Normalizes `r · body` into primitive body and positive scale.
    pub fn from_parts(name: JName, r: BigRational, body: ZPoly) -> Self {
        let (scale, body) = normalize(r, body);
        ScaledInvariant { name, body, scale }
    }

    /// Exact value at a sextic given by its coefficients `c0..c6`.
    pub fn eval(&self, c: &[BigRational; 7]) -> BigRational {
        self.scale.value() * eval_c(&self.body, c)
    }

    /// Rational coefficient of a monomial in `scale · body`.
    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.scale.value() * BigRational::from_integer(self.body.coeff(m))
    }

    /// Every monomial has c-weight `3 ·` c-degree and c-degree equal to the
    /// invariant's degree.
    pub fn is_isobaric(&self) -> bool {
        let d = self.name.degree();
        self.body.terms().iter().all(|(m, _)| {
            let deg = m.degree_where(Var::is_c);
            let weight: u32 = m.iter().filter_map(|(v, e)| v.subscript().map(|j| j as u32 * e)).sum();
            deg == d && weight == 3 * d && m.degree() == d
        })
    }

    /// `scale · body` as a product of scaled values.
    fn value(&self) -> Scaled {
        Scaled { scale: self.scale.value().clone(), body: self.body.clone() }
    }
}

/// Intermediate `scale · body` with an arbitrary rational scale.
#[derive(Clone, Debug)]
struct Scaled {
    scale: BigRational,
    body: ZPoly,
}

impl Scaled {
    fn from_form(f: &BinaryForm) -> Self {
        assert_eq!(f.degree, 0, "expected an invariant");
        Scaled { scale: f.value_scale(), body: f.poly.clone() }
    }

    fn mul(&self, other: &Scaled) -> Scaled {
        Scaled { scale: &self.scale * &other.scale, body: self.body.mul(&other.body) }
    }

    fn pow(&self, k: u32) -> Scaled {
        Scaled { scale: num_traits::Pow::pow(&self.scale, k), body: self.body.pow(k) }
    }

    fn eval(&self, c: &[BigRational; 7]) -> BigRational {
        &self.scale * eval_c(&self.body, c)
    }
}

/// `Σ r_i · s_i` as a normalized scaled polynomial.
fn combine(parts: &[(BigRational, Scaled)]) -> (BigRational, ZPoly) {
    let coeffs: Vec<BigRational> = parts.iter().map(|(r, s)| r * &s.scale).collect();
    let lcm = coeffs.iter().fold(BigInt::one(), |l, r| num_integer::Integer::lcm(&l, r.denom()));
    let mut body = ZPoly::zero();
    for (r, (_, s)) in coeffs.iter().zip(parts) {
        if r.is_zero() {
            continue;
        }
        let k = (r * BigRational::from_integer(lcm.clone())).to_integer();
        body = body.add(&s.body.scale(&k));
    }
    (BigRational::new(BigInt::one(), lcm), body)
}

fn normalize(r: BigRational, body: ZPoly) -> (RationalConstant, ZPoly) {
    assert!(!body.is_zero() && !r.is_zero(), "invariant must be nonzero");
    let g = body.content();
    let body = if g.is_one() { body } else { ZPoly::from_terms(body.terms().iter().map(|(m, c)| (*m, c / &g))) };
    let mut scale = r * BigRational::from_integer(g);
    let body = if scale.is_negative() {
        scale = -scale;
        body.neg()
    } else {
        body
    };
    (RationalConstant::from_rational(scale), body)
}

fn eval_c(body: &ZPoly, c: &[BigRational; 7]) -> BigRational {
    body.eval(&Rationals, |k| BigRational::from_integer(k.clone()), |v| {
        let j = v.subscript().filter(|_| v.is_c()).expect("only c-variables expected");
        c[j].clone()
    })
}

/// The calibrated table of `J2, J4, J6, J8, J10` and `I4 = J2^2 - 24 J4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaTable {
    invariants: Vec<ScaledInvariant>,
}

impl IgusaTable {
    pub fn get(&self, name: JName) -> &ScaledInvariant {
        self.invariants.iter().find(|j| j.name == name).expect("table is complete")
    }

    pub fn iter(&self) -> impl Iterator<Item = &ScaledInvariant> {
        self.invariants.iter()
    }

    pub fn from_invariants(invariants: Vec<ScaledInvariant>) -> Option<Self> {
        let complete = JName::ALL.iter().all(|n| invariants.iter().filter(|j| j.name == *n).count() == 1);
        complete.then_some(IgusaTable { invariants })
    }
}

/// The transvectant generators `A, B, C, D` of degrees 2, 4, 6, 10.
pub struct ClebschGenerators {
    a: Scaled,
    b: Scaled,
    c: Scaled,
    d: Scaled,
}

impl ClebschGenerators {
    pub fn compute() -> Result<Self, IgusaError> {
        let f = BinaryForm::universal_sextic();
        let i = transvectant(&f, &f, 4)?;
        let delta = transvectant(&i, &i, 2)?;
        let y1 = transvectant(&f, &i, 4)?;
        let y2 = transvectant(&i, &y1, 2)?;
        let y3 = transvectant(&i, &y2, 2)?;
        Ok(ClebschGenerators {
            a: Scaled::from_form(&transvectant(&f, &f, 6)?),
            b: Scaled::from_form(&transvectant(&i, &i, 4)?),
            c: Scaled::from_form(&transvectant(&i, &delta, 4)?),
            d: Scaled::from_form(&transvectant(&y3, &y1, 2)?),
        })
    }

    /// All products of generators of the given degree in `c`.
    fn products(&self, degree: u32) -> Vec<Scaled> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        match degree {
            2 => vec![a.clone()],
            4 => vec![a.pow(2), b.clone()],
            6 => vec![a.pow(3), a.mul(b), c.clone()],
            10 => vec![a.pow(5), a.pow(3).mul(b), a.pow(2).mul(c), a.mul(&b.pow(2)), b.mul(c), d.clone()],
            _ => panic!("no invariant basis in degree {degree}"),
        }
    }
}

/// Leading coefficients of J2 and J4 that are used as calibration anchors.
pub mod anchors {
    use super::*;

    fn c_mono(pairs: &[(usize, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(j, e)| (Var::c(j), e)))
    }

    /// `J2 = 2^-2 (-120 c0c6 + 20 c1c5 - 8 c2c4 + 3 c3^2)`.
    pub fn j2_display() -> ZPoly {
        ZPoly::from_terms([
            (c_mono(&[(0, 1), (6, 1)]), BigInt::from(-120)),
            (c_mono(&[(1, 1), (5, 1)]), BigInt::from(20)),
            (c_mono(&[(2, 1), (4, 1)]), BigInt::from(-8)),
            (c_mono(&[(3, 2)]), BigInt::from(3)),
        ])
    }

    pub fn j2_scale() -> RationalConstant {
        RationalConstant::pow2(-2)
    }

    /// The two displayed leading terms of J4: `2^-7 (2640 c0^2c6^2 - 880 c0c1c5c6 + ...)`.
    pub fn j4_leading() -> [(Monomial, BigRational); 2] {
        let s = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(128));
        [(c_mono(&[(0, 2), (6, 2)]), s(2640)), (c_mono(&[(0, 1), (1, 1), (5, 1), (6, 1)]), s(-880))]
    }
}

/// Deterministic source of random rational sextics with distinct roots.
pub struct SexticSampler {
    rng: ChaCha8Rng,
}

impl SexticSampler {
    pub fn new(seed: u64) -> Self {
        SexticSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_sextic(&mut self) -> RootedSextic {
        let mut roots: Vec<BigRational> = Vec::with_capacity(6);
        while roots.len() < 6 {
            let r = BigRational::new(self.rng.gen_range(-12i64..=12).into(), self.rng.gen_range(1i64..=3).into());
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut lead = 0i64;
        while lead == 0 {
            lead = self.rng.gen_range(-4..=4);
        }
        RootedSextic::new(BigRational::from_integer(lead.into()), roots.try_into().expect("six roots"))
    }
}

/// Solves `Σ x_j basis_j = target` for the mixing coefficients, sampling
/// sextics until the system has full rank, then re-checks on fresh samples.
///
/// `fixed_rows` (augmented `[coefficients | value]`) are included in the
/// system and must be satisfied as well.
fn calibrate_by_oracle(
    name: JName,
    basis: &[Scaled],
    fixed_rows: Vec<Vec<BigRational>>,
    target: impl Fn(&RootedSextic) -> BigRational,
    sampler: &mut SexticSampler,
) -> Result<Vec<BigRational>, IgusaError> {
    let n = basis.len();
    let fail = |reason: String| IgusaError::CalibrationFailure { name, reason };
    let full_rank = |rows: &[Vec<BigRational>]| {
        rows.len() >= n && linalg::rank(&rows.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>()) == n
    };
    let mut rows = fixed_rows;
    let mut tries = 0;
    while !full_rank(&rows) {
        let s = sampler.next_sextic();
        let c = s.coefficients();
        let mut row: Vec<BigRational> = basis.iter().map(|b| b.eval(&c)).collect();
        row.push(target(&s));
        rows.push(row);
        tries += 1;
        if tries > 8 * n {
            return Err(fail("oracle samples never reached full rank".into()));
        }
    }
    let solution = linalg::solve_exact(&rows).ok_or_else(|| fail("inconsistent oracle system".into()))?;
    for _ in 0..2 {
        let s = sampler.next_sextic();
        let c = s.coefficients();
        let lhs: BigRational = basis.iter().zip(&solution).map(|(b, x)| b.eval(&c) * x).sum();
        if lhs != target(&s) {
            return Err(fail("fresh sextic disagrees with calibrated combination".into()));
        }
    }
    Ok(solution)
}

fn build(generators: &ClebschGenerators) -> Result<IgusaTable, IgusaError> {
    let mut sampler = SexticSampler::new(0x6732_6332);
    let fail = |name, reason: &str| IgusaError::CalibrationFailure { name, reason: reason.to_string() };

    // J2 from its displayed c0c6 coefficient, then checked term by term.
    let basis2 = generators.products(2);
    let (target_mono, target) = {
        let m = Monomial::from_pairs([(Var::C0, 1), (Var::C6, 1)]);
        let t = anchors::j2_scale().value() * BigRational::from_integer(anchors::j2_display().coeff(&m));
        (m, t)
    };
    let a_coeff = &basis2[0].scale * BigRational::from_integer(basis2[0].body.coeff(&target_mono));
    if a_coeff.is_zero() {
        return Err(fail(JName::J2, "generator A lacks the anchor monomial"));
    }
    let (r, body) = combine(&[(target / a_coeff, basis2[0].clone())]);
    let j2 = ScaledInvariant::from_parts(JName::J2, r, body);
    if j2.body != anchors::j2_display() || j2.scale != anchors::j2_scale() {
        return Err(fail(JName::J2, "does not reproduce the displayed formula"));
    }

    // J4 from its two displayed leading coefficients, completed by oracle
    // samples where the anchors alone do not separate the basis.
    let basis4 = generators.products(4);
    let leading = anchors::j4_leading();
    let rows: Vec<Vec<BigRational>> = leading
        .iter()
        .map(|(m, value)| {
            let mut row: Vec<BigRational> =
                basis4.iter().map(|b| &b.scale * BigRational::from_integer(b.body.coeff(m))).collect();
            row.push(value.clone());
            row
        })
        .collect();
    let mix4 = calibrate_by_oracle(JName::J4, &basis4, rows, |s| oracle_j_values(s)[1].clone(), &mut sampler)?;
    let (r, body) = combine(&basis4.iter().cloned().zip(mix4).map(|(b, x)| (x, b)).collect::<Vec<_>>());
    let j4 = ScaledInvariant::from_parts(JName::J4, r, body);
    for (m, value) in &leading {
        if &j4.coefficient(m) != value {
            return Err(fail(JName::J4, "does not reproduce the displayed leading terms"));
        }
    }

    // J6 and J10 from oracle evaluations.
    let basis6 = generators.products(6);
    let mix6 = calibrate_by_oracle(JName::J6, &basis6, Vec::new(), |s| oracle_j_values(s)[2].clone(), &mut sampler)?;
    let (r, body) = combine(&basis6.iter().cloned().zip(mix6).map(|(b, x)| (x, b)).collect::<Vec<_>>());
    let j6 = ScaledInvariant::from_parts(JName::J6, r, body);

    let basis10 = generators.products(10);
    let mix10 = calibrate_by_oracle(JName::J10, &basis10, Vec::new(), |s| oracle_j_values(s)[4].clone(), &mut sampler)?;
    let (r, body) = combine(&basis10.iter().cloned().zip(mix10).map(|(b, x)| (x, b)).collect::<Vec<_>>());
    let j10 = ScaledInvariant::from_parts(JName::J10, r, body);

    // J8 = (J2 J6 - J4^2) / 4.
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let (r, body) = combine(&[
        (quarter.clone(), j2.value().mul(&j6.value())),
        (-quarter, j4.value().pow(2)),
    ]);
    let j8 = ScaledInvariant::from_parts(JName::J8, r, body);

    // I4 = J2^2 - 24 J4.
    let (r, body) = combine(&[
        (BigRational::one(), j2.value().pow(2)),
        (BigRational::from_integer(BigInt::from(-24)), j4.value()),
    ]);
    let i4 = ScaledInvariant::from_parts(JName::I4, r, body);

    Ok(IgusaTable { invariants: vec![j2, j4, j6, j8, j10, i4] })
}

/// Builds and calibrates the Igusa invariants.
pub fn build_igusa_invariants() -> Result<IgusaTable, IgusaError> {
    build(&ClebschGenerators::compute()?)
}

/// Process-wide memoized table.
pub fn igusa_table() -> &'static IgusaTable {
    static TABLE: OnceLock<IgusaTable> = OnceLock::new();
    TABLE.get_or_init(|| build_igusa_invariants().expect("Igusa calibration must succeed"))
}

/// Residual of `J4^2 - J2 J6 + 4 J8` as an exact scaled polynomial.
pub fn proj_relation_residual(table: &IgusaTable) -> ZPoly {
    let v = |n| table.get(n).value();
    let (_, body) = combine(&[
        (BigRational::one(), v(JName::J4).pow(2)),
        (BigRational::from_integer(BigInt::from(-1)), v(JName::J2).mul(&v(JName::J6))),
        (BigRational::from_integer(BigInt::from(4)), v(JName::J8)),
    ]);
    body
}

/// Substitution `c_k ↦ Σ_{i≤k} C(6-i, k-i) t^(k-i) c_i` induced by
/// `x1 ↦ x1 + t x2` on the universal sextic.
pub fn sextic_unipotent_substitution(param: Var) -> crate::polycore::Substitution<BigInt> {
    let mut s = crate::polycore::Substitution::new();
    for k in 0..=6u32 {
        let image = Poly::from_terms((0..=k).map(|i| {
            let coeff = num_integer::binomial(BigInt::from(6 - i), BigInt::from(k - i));
            (Monomial::from_pairs([(Var::c(i as usize), 1), (param, k - i)]), coeff)
        }));
        s.set(Var::c(k as usize), image);
    }
    s
}

/// Substitution `c_k ↦ c_(6-k)` induced by swapping `x1` and `x2`.
pub fn sextic_swap_substitution() -> crate::polycore::Substitution<BigInt> {
    let mut s = crate::polycore::Substitution::new();
    for k in 0..=6 {
        s.set(Var::c(k), Poly::var(Var::c(6 - k)));
    }
    s
}
