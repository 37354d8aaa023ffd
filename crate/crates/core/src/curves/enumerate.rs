use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::char2inv::KName;

use super::{BinaryField, FqElement, Genus2Curve};

/// Smooth curves sharing `(two_rank, K1, K10 != 0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Bucket {
    pub two_rank: u32,
    pub k1: FqElement,
    pub k10_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub field_degree: u32,
    pub pairs: u64,
    pub smooth: u64,
    pub buckets: Vec<(Bucket, u64)>,
    /// `K1 = 0` exactly when the 2-rank is at most 1.
    pub k1_zero_iff_nonordinary: bool,
    /// The 2-rank agrees with `deg(L mod 2)`.
    pub rank_matches_l: bool,
    pub k10_nonzero_on_smooth: bool,
    /// Singular pairs on which `K10` nevertheless does not vanish.
    pub singular_with_k10_nonzero: u64,
    /// First few offending curves, as `(a, b, reason)`.
    pub violations: Vec<(Vec<FqElement>, Vec<FqElement>, String)>,
}

impl EnumerationReport {
    pub fn passed(&self) -> bool {
        self.k1_zero_iff_nonordinary && self.rank_matches_l && self.k10_nonzero_on_smooth
    }
}

#[derive(Default)]
struct Partial {
    pairs: u64,
    smooth: u64,
    buckets: BTreeMap<Bucket, u64>,
    singular_with_k10_nonzero: u64,
    violations: Vec<(Vec<FqElement>, Vec<FqElement>, String)>,
    counts: [u64; 3],
}

const MAX_VIOLATIONS: usize = 20;

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.pairs += other.pairs;
        self.smooth += other.smooth;
        for (k, v) in other.buckets {
            *self.buckets.entry(k).or_default() += v;
        }
        self.singular_with_k10_nonzero += other.singular_with_k10_nonzero;
        self.violations.extend(other.violations);
        for i in 0..3 {
            self.counts[i] += other.counts[i];
        }
        self
    }
}

fn unpack<const N: usize>(mut index: u64, q: u64) -> [FqElement; N] {
    std::array::from_fn(|_| {
        let c = (index % q) as FqElement;
        index /= q;
        c
    })
}

/// Every pair with `a != 0`, `deg a <= 3`, `deg b <= 6`, classified.
///
/// With `check_l` the L-polynomial is computed for each smooth curve (two
/// point counts); this dominates the cost over `F_4`.
pub fn enumerate_curves(field: BinaryField, check_l: bool) -> EnumerationReport {
    enumerate_curves_with_progress(field, check_l, |_, _| {})
}

/// As [`enumerate_curves`], calling `progress(done, total)` after each cubic
/// `a` has been paired with every sextic.
pub fn enumerate_curves_with_progress(
    field: BinaryField,
    check_l: bool,
    progress: impl Fn(u64, u64) + Sync,
) -> EnumerationReport {
    let q = field.size() as u64;
    let a_count = q.pow(4);
    let b_count = q.pow(7);
    let done = AtomicU64::new(0);
    let total = (1..a_count)
        .into_par_iter()
        .map(|ai| {
            let a = unpack::<4>(ai, q);
            let mut part = Partial::default();
            for bi in 0..b_count {
                let b = unpack::<7>(bi, q);
                let c = Genus2Curve::from_coeffs(field, a, b).expect("valid coefficients");
                part.pairs += 1;
                let k10 = c.eval_invariant(KName::K10);
                if !c.is_smooth() {
                    part.singular_with_k10_nonzero += u64::from(k10 != 0);
                    continue;
                }
                part.smooth += 1;
                let two_rank = c.two_rank();
                let k1 = c.eval_invariant(KName::K1);
                *part.buckets.entry(Bucket { two_rank, k1, k10_nonzero: k10 != 0 }).or_default() += 1;
                let mut flag = |i: usize, reason: String| {
                    part.counts[i] += 1;
                    if part.violations.len() < MAX_VIOLATIONS {
                        part.violations.push((a.to_vec(), b.to_vec(), reason));
                    }
                };
                if (k1 == 0) != (two_rank <= 1) {
                    flag(0, format!("K1 = {k1} with 2-rank {two_rank}"));
                }
                if check_l {
                    let from_l = c.two_rank_from_l().expect("smooth");
                    if from_l != two_rank {
                        flag(1, format!("2-rank {two_rank} but deg(L mod 2) = {from_l}"));
                    }
                }
                if k10 == 0 {
                    flag(2, "K10 vanishes on a smooth curve".into());
                }
            }
            progress(done.fetch_add(1, Ordering::Relaxed) + 1, a_count - 1);
            part
        })
        .reduce(Partial::default, Partial::merge);
    let mut violations = total.violations;
    violations.sort();
    violations.truncate(MAX_VIOLATIONS);
    EnumerationReport {
        field_degree: field.degree(),
        pairs: total.pairs,
        smooth: total.smooth,
        buckets: total.buckets.into_iter().collect(),
        k1_zero_iff_nonordinary: total.counts[0] == 0,
        rank_matches_l: total.counts[1] == 0,
        k10_nonzero_on_smooth: total.counts[2] == 0,
        singular_with_k10_nonzero: total.singular_with_k10_nonzero,
        violations,
    }
}
