//! Classical root-difference expressions for the invariants of a binary
//! sextic. They are independent of the transvectant construction and serve
//! as the calibration target.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Which classical root-difference invariant to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootInvariant {
    I2,
    I4,
    I6,
    I10,
}

/// A sextic `leading · Π (x - root_i)` with exact rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSextic {
    pub leading: BigRational,
    pub roots: [BigRational; 6],
}

impl RootedSextic {
    pub fn new(leading: BigRational, roots: [BigRational; 6]) -> Self {
        RootedSextic { leading, roots }
    }

    pub fn from_integers(leading: i64, roots: [i64; 6]) -> Self {
        RootedSextic {
            leading: BigRational::from_integer(leading.into()),
            roots: roots.map(|r| BigRational::from_integer(r.into())),
        }
    }

    /// Coefficients `c_0..c_6` of `Σ c_i x^(6-i)`.
    pub fn coefficients(&self) -> [BigRational; 7] {
        // poly[j] is the coefficient of x^j
        let mut poly = vec![BigRational::one()];
        for r in &self.roots {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * r;
            }
            poly = next;
        }
        std::array::from_fn(|i| &poly[6 - i] * &self.leading)
    }

    fn diff2(&self, i: usize, j: usize) -> BigRational {
        let d = &self.roots[i] - &self.roots[j];
        &d * &d
    }
}

/// The fifteen perfect matchings of `{0..5}`.
fn matchings() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for a in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != a).collect();
        for b in 1..4 {
            let r2: Vec<usize> = rest.iter().copied().filter(|&x| x != rest[0] && x != rest[b]).collect();
            out.push([(0, a), (rest[0], rest[b]), (r2[0], r2[1])]);
        }
    }
    out
}

/// The ten unordered splits of `{0..5}` into two triples.
fn triple_splits() -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for a in 1..6 {
        for b in (a + 1)..6 {
            let t = [0, a, b];
            let rest: Vec<usize> = (1..6).filter(|&x| x != a && x != b).collect();
            out.push((t, [rest[0], rest[1], rest[2]]));
        }
    }
    out
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Exact value of the classical root-difference invariant.
pub fn root_difference_oracle(which: RootInvariant, sextic: &RootedSextic) -> BigRational {
    let s = sextic;
    let tri = |t: &[usize; 3]| s.diff2(t[0], t[1]) * s.diff2(t[1], t[2]) * s.diff2(t[2], t[0]);
    let (sum, power) = match which {
        RootInvariant::I2 => {
            let sum = matchings()
                .iter()
                .map(|m| m.iter().fold(BigRational::one(), |acc, &(i, j)| acc * s.diff2(i, j)))
                .fold(BigRational::zero(), |a, b| a + b);
            (sum, 2)
        }
        RootInvariant::I4 => {
            let sum = triple_splits()
                .iter()
                .map(|(t, u)| tri(t) * tri(u))
                .fold(BigRational::zero(), |a, b| a + b);
            (sum, 4)
        }
        RootInvariant::I6 => {
            let mut sum = BigRational::zero();
            for (t, u) in triple_splits() {
                let base = tri(&t) * tri(&u);
                for p in PERMS3 {
                    let cross = (0..3).fold(BigRational::one(), |acc, k| acc * s.diff2(t[k], u[p[k]]));
                    sum += &base * cross;
                }
            }
            (sum, 6)
        }
        RootInvariant::I10 => {
            let mut prod = BigRational::one();
            for i in 0..6 {
                for j in (i + 1)..6 {
                    prod *= s.diff2(i, j);
                }
            }
            (prod, 10)
        }
    };
    sum * num_traits::Pow::pow(&s.leading, power as u32)
}

/// Igusa's J-invariants of a sextic computed purely from root differences:
/// `J2 = I2/8`, `J4 = (4 J2^2 - I4)/96`, `J6 = (8 J2^3 - 160 J2 J4 - I6)/576`,
/// `J8 = (J2 J6 - J4^2)/4`, `J10 = I10/4096`.
pub fn oracle_j_values(sextic: &RootedSextic) -> [BigRational; 5] {
    let r = |n: i64| BigRational::from_integer(BigInt::from(n));
    let i2 = root_difference_oracle(RootInvariant::I2, sextic);
    let i4 = root_difference_oracle(RootInvariant::I4, sextic);
    let i6 = root_difference_oracle(RootInvariant::I6, sextic);
    let i10 = root_difference_oracle(RootInvariant::I10, sextic);
    let j2 = &i2 / r(8);
    let j4 = (r(4) * &j2 * &j2 - &i4) / r(96);
    let j6 = (r(8) * &j2 * &j2 * &j2 - r(160) * &j2 * &j4 - &i6) / r(576);
    let j8 = (&j2 * &j6 - &j4 * &j4) / r(4);
    let j10 = i10 / r(4096);
    [j2, j4, j6, j8, j10]
}
