//! Binary fields `F_{2^n}` for `1 <= n <= 16` in a polynomial basis.

use std::fmt;
use std::sync::OnceLock;

use super::CurveError;

/// Elements are bit vectors: bit `i` is the coefficient of `z^i`.
pub type FqElement = u32;

pub const MAX_DEGREE: u32 = 16;

/// Fixed moduli for `n <= 8`, bit `i` = coefficient of `z^i`.
const SMALL_MODULI: [u32; 9] = [
    0,
    0b11,        // z + 1
    0b111,       // z^2 + z + 1
    0b1011,      // z^3 + z + 1
    0b10011,     // z^4 + z + 1
    0b100101,    // z^5 + z^2 + 1
    0b1011011,   // z^6 + z^4 + z^3 + z + 1
    0b10000011,  // z^7 + z + 1
    0b100011011, // z^8 + z^4 + z^3 + z + 1
];

/// Carry-less product of two bit polynomials.
fn clmul(a: u64, b: u64) -> u64 {
    let mut out = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    out
}

fn bit_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn bit_rem(mut a: u64, m: u64) -> u64 {
    let dm = bit_degree(m);
    while a != 0 && bit_degree(a) >= dm {
        a ^= m << (bit_degree(a) - dm);
    }
    a
}

/// Irreducibility over F2 by trial division by every polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(p: u64) -> bool {
    let d = bit_degree(p);
    if d < 1 {
        return false;
    }
    (2u64..1 << (d / 2 + 1)).all(|q| bit_rem(p, q) != 0)
}

/// The modulus for degree `n`: the fixed table up to 8, else the smallest
/// irreducible polynomial of degree `n` (as an integer).
fn modulus_for(n: u32) -> u32 {
    if (n as usize) < SMALL_MODULI.len() {
        return SMALL_MODULI[n as usize];
    }
    ((1u64 << n) | 1..1u64 << (n + 1)).step_by(2).find(|&p| is_irreducible(p)).expect("irreducibles exist") as u32
}

pub struct FieldData {
    n: u32,
    modulus: u32,
    /// `exp[i] = w^i` for a primitive element `w`, doubled to avoid a modulo.
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_mask: u32,
}

fn registry() -> &'static [OnceLock<FieldData>; MAX_DEGREE as usize + 1] {
    static FIELDS: OnceLock<[OnceLock<FieldData>; MAX_DEGREE as usize + 1]> = OnceLock::new();
    FIELDS.get_or_init(|| std::array::from_fn(|_| OnceLock::new()))
}

impl FieldData {
    fn build(n: u32) -> Self {
        let modulus = modulus_for(n);
        assert!(is_irreducible(modulus as u64), "modulus for degree {n} is not irreducible");
        let q = 1usize << n;
        let order = q - 1;
        let slow_mul = |a: u32, b: u32| bit_rem(clmul(a as u64, b as u64), modulus as u64) as u32;
        let w = (1..q as u32).find(|&w| order_of(w, order, &slow_mul) == order).expect("a primitive element exists");
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            exp[i + order] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, w);
        }
        // trace(z^i) via the definition x + x^2 + ... + x^(2^(n-1))
        let trace_mask = (0..n)
            .filter(|i| {
                let mut y = 1u32 << i;
                let mut acc = 0;
                for _ in 0..n {
                    acc ^= y;
                    y = slow_mul(y, y);
                }
                acc == 1
            })
            .fold(0, |m, i| m | 1 << i);
        FieldData { n, modulus, exp, log, trace_mask }
    }
}

/// Multiplicative order of `w`, capped just above `group_order`.
fn order_of(w: u32, group_order: usize, mul: &impl Fn(u32, u32) -> u32) -> usize {
    let mut x = w;
    let mut k = 1;
    while x != 1 && k <= group_order {
        x = mul(x, w);
        k += 1;
    }
    k
}

/// A handle to the field `F_{2^n}`; cheap to copy.
#[derive(Clone, Copy)]
pub struct BinaryField(&'static FieldData);

impl BinaryField {
    pub fn new(n: u32) -> Result<Self, CurveError> {
        if n == 0 || n > MAX_DEGREE {
            return Err(CurveError::FieldTooLarge(n));
        }
        Ok(BinaryField(registry()[n as usize].get_or_init(|| FieldData::build(n))))
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn size(&self) -> u32 {
        1 << self.0.n
    }

    /// Modulus bits including the leading `z^n`.
    pub fn modulus(&self) -> u32 {
        self.0.modulus
    }

    /// The class of `z`, written `g` in curve input.
    pub fn generator(&self) -> FqElement {
        bit_rem(0b10, self.0.modulus as u64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        0..self.size()
    }

    pub fn contains(&self, x: FqElement) -> bool {
        x < self.size()
    }

    pub fn add(&self, x: FqElement, y: FqElement) -> FqElement {
        x ^ y
    }

    pub fn mul(&self, x: FqElement, y: FqElement) -> FqElement {
        if x == 0 || y == 0 {
            return 0;
        }
        let d = self.0;
        d.exp[(d.log[x as usize] + d.log[y as usize]) as usize]
    }

    pub fn square(&self, x: FqElement) -> FqElement {
        self.mul(x, x)
    }

    pub fn inv(&self, x: FqElement) -> Result<FqElement, CurveError> {
        if x == 0 {
            return Err(CurveError::DivisionByZero);
        }
        let d = self.0;
        let order = self.size() - 1;
        Ok(d.exp[((order - d.log[x as usize]) % order) as usize])
    }

    pub fn div(&self, x: FqElement, y: FqElement) -> Result<FqElement, CurveError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FqElement, e: u64) -> FqElement {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let order = (self.size() - 1) as u64;
        let d = self.0;
        d.exp[((d.log[x as usize] as u64 * (e % order)) % order) as usize]
    }

    /// `x ↦ x^(2^k)`.
    pub fn frobenius(&self, x: FqElement, k: u32) -> FqElement {
        (0..k % self.degree()).fold(x, |y, _| self.square(y))
    }

    /// The unique square root.
    pub fn sqrt(&self, x: FqElement) -> FqElement {
        self.frobenius(x, self.degree() - 1)
    }

    /// Absolute trace to F2.
    pub fn trace(&self, x: FqElement) -> u32 {
        (x & self.0.trace_mask).count_ones() & 1
    }

    /// Discrete logarithm to the field's primitive element, for nonzero `x`.
    pub(crate) fn log(&self, x: FqElement) -> u32 {
        self.0.log[x as usize]
    }

    pub(crate) fn exp(&self, k: u64) -> FqElement {
        self.0.exp[(k % (self.size() as u64 - 1)) as usize]
    }

    /// A field homomorphism into `big`, sending `z` to the first root of this
    /// field's modulus in `big`.
    pub fn embedding_into(&self, big: BinaryField) -> Result<Embedding, CurveError> {
        if !big.degree().is_multiple_of(self.degree()) {
            return Err(CurveError::NotASubfield { small: self.degree(), big: big.degree() });
        }
        let m = self.modulus();
        let eval = |r: FqElement| {
            (0..=self.degree()).rev().fold(0, |acc, i| big.mul(acc, r) ^ ((m >> i) & 1))
        };
        let root = big.elements().find(|&r| eval(r) == 0).expect("modulus splits in the extension");
        let mut images = Vec::with_capacity(self.degree() as usize);
        let mut p = 1;
        for _ in 0..self.degree() {
            images.push(p);
            p = big.mul(p, root);
        }
        Ok(Embedding { images })
    }
}

impl PartialEq for BinaryField {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree()
    }
}

impl Eq for BinaryField {}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_2^{}", self.degree())
    }
}

/// An F2-linear field embedding given by the images of `1, z, z^2, ...`.
#[derive(Clone, Debug)]
pub struct Embedding {
    images: Vec<FqElement>,
}

impl Embedding {
    pub fn apply(&self, x: FqElement) -> FqElement {
        self.images.iter().enumerate().filter(|(i, _)| (x >> i) & 1 == 1).fold(0, |acc, (_, im)| acc ^ im)
    }
}
