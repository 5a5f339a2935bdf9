//! Deterministic summation. Pairwise reduction keeps rounding growth at
//! `O(log n)` and makes results independent of any later parallel split.

use std::ops::Add;

use crate::quaternion::Quaternion;

const LEAF: usize = 32;

/// Pairwise sum of real terms.
pub fn pairwise(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise(a) + pairwise(b)
}

/// Pairwise sum of quaternion terms.
pub fn pairwise_q(xs: &[Quaternion]) -> Quaternion {
    if xs.len() <= LEAF {
        return xs.iter().copied().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_q(a) + pairwise_q(b)
}

/// Pairwise sum of `term(i)` for `i in 0..n` without materializing the terms.
pub fn pairwise_map_by<T, F>(n: usize, term: F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    fn go<T: Copy + Default + Add<Output = T>>(lo: usize, hi: usize, term: &dyn Fn(usize) -> T) -> T {
        if hi - lo <= LEAF {
            return (lo..hi).map(term).fold(T::default(), |a, b| a + b);
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, term) + go(mid, hi, term)
    }
    go(0, n, &term)
}

pub fn pairwise_map_q(n: usize, term: impl Fn(usize) -> Quaternion) -> Quaternion {
    pairwise_map_by(n, term)
}

pub fn pairwise_map(n: usize, term: impl Fn(usize) -> f64) -> f64 {
    pairwise_map_by(n, term)
}

/// Two quaternion accumulators summed in lockstep.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QPair(pub Quaternion, pub Quaternion);

impl Add for QPair {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        QPair(self.0 + o.0, self.1 + o.1)
    }
}
