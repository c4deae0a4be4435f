//! Fast evaluation of `T_A(prod_i F_i)` for multilinear factors `F_i`.
//!
//! Variables are eliminated from `x_m` downward. Eliminating `x_j` removes
//! one unit of degree and pushes the remaining `r - 1` units of `x_j^r` onto
//! lower variables, so once all variables above `t` are gone the exponents of
//! `x_1..x_t` sum to exactly `t`. Units never move upward, hence any term
//! whose exponents over `x_1..x_t` already sum to more than `t` contributes
//! nothing and is dropped as soon as it appears, both while the factors are
//! multiplied and during elimination. A variable whose exponent is zero and
//! that no remaining higher variable can feed is dead for the same reason.

use std::hash::Hash;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::num::{ck, Overflow, Scalar};

/// Monomial exponent vector used as a hash key.
pub(crate) trait Key: Clone + Eq + Hash + Send + Sync {
    fn zero(nvars: usize) -> Self;
    fn get(&self, i: usize) -> u32;
    fn bump(&self, i: usize, by: u32) -> Self;
    fn cleared(&self, i: usize) -> Self;
    fn add(&self, other: &Self) -> Self;
}

/// Five bits per variable; valid while `nvars <= 25` (exponents never
/// exceed the total degree `nvars`).
pub(crate) const PACKED_MAX_VARS: usize = 25;
const BITS: u32 = 5;
const MASK: u128 = 0x1f;

impl Key for u128 {
    #[inline]
    fn zero(_: usize) -> Self {
        0
    }
    #[inline]
    fn get(&self, i: usize) -> u32 {
        ((self >> (BITS as usize * i)) & MASK) as u32
    }
    #[inline]
    fn bump(&self, i: usize, by: u32) -> Self {
        self + ((by as u128) << (BITS as usize * i))
    }
    #[inline]
    fn cleared(&self, i: usize) -> Self {
        self & !(MASK << (BITS as usize * i))
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }
}

impl Key for Vec<u8> {
    fn zero(nvars: usize) -> Self {
        vec![0; nvars]
    }
    fn get(&self, i: usize) -> u32 {
        self[i] as u32
    }
    fn bump(&self, i: usize, by: u32) -> Self {
        let mut k = self.clone();
        k[i] += by as u8;
        k
    }
    fn cleared(&self, i: usize) -> Self {
        let mut k = self.clone();
        k[i] = 0;
        k
    }
    fn add(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a + b).collect()
    }
}

pub(crate) fn key_from_positions<K: Key>(nvars: usize, positions: &[usize]) -> K {
    positions.iter().fold(K::zero(nvars), |k, &p| k.bump(p, 1))
}

/// Strictly upper triangular matrix, column-major view of the nonzero
/// entries above the diagonal: `columns[t]` lists `(s, a_{s,t})`, `s < t`.
pub(crate) struct Columns<C> {
    columns: Vec<Vec<(usize, C)>>,
    /// `first_feeder[t]`: smallest `p > t` with `a_{t,p} != 0`.
    first_feeder: Vec<Option<usize>>,
}

impl<C: Scalar> Columns<C> {
    pub(crate) fn new(a: &[Vec<i64>]) -> Result<Self, Overflow> {
        let m = a.len();
        let mut columns = vec![vec![]; m];
        let mut first_feeder = vec![None; m];
        for (t, col) in columns.iter_mut().enumerate() {
            for (s, row) in a.iter().enumerate().take(t) {
                if row[t] != 0 {
                    col.push((s, ck(C::from_i64(row[t]))?));
                }
            }
        }
        for (t, f) in first_feeder.iter_mut().enumerate() {
            *f = (t + 1..m).find(|&p| a[t][p] != 0);
        }
        Ok(Columns { columns, first_feeder })
    }
}

/// Remaining variables are `0..nv`; checks the prefix bound and the
/// dead-variable rule.
#[inline]
fn viable<K: Key, C>(k: &K, nv: usize, cols: &Columns<C>) -> bool {
    let mut sum = 0u32;
    for t in 0..nv.saturating_sub(1) {
        let e = k.get(t);
        sum += e;
        if sum as usize > t + 1 {
            return false;
        }
        if e == 0 {
            match cols.first_feeder[t] {
                Some(p) if p < nv => {}
                _ => return false,
            }
        }
    }
    true
}

type Poly<K, C> = FxHashMap<K, C>;

fn accumulate<K: Key, C: Scalar>(p: &mut Poly<K, C>, k: K, c: C) -> Result<(), Overflow> {
    match p.get_mut(&k) {
        Some(v) => *v = ck(v.add(&c))?,
        None => {
            p.insert(k, c);
        }
    }
    Ok(())
}

fn drop_zeros<K: Key, C: Scalar>(p: &mut Poly<K, C>) {
    p.retain(|_, c| !c.is_zero());
}

/// `T_A(prod factors)` where each factor is a sum of squarefree monomials
/// with coefficient one.
pub(crate) fn evaluate<K: Key, C: Scalar>(
    a: &[Vec<i64>],
    factors: &[Vec<K>],
) -> Result<C, Overflow> {
    let m = a.len();
    let cols = Columns::<C>::new(a)?;
    let one = ck(C::from_i64(1))?;

    // The dead-variable rule only applies once the factors are complete.
    let mut prod: Poly<K, C> = FxHashMap::default();
    prod.insert(K::zero(m), one.clone());
    for f in factors {
        let mut next: Poly<K, C> = FxHashMap::default();
        for (k, c) in &prod {
            for s in f {
                let nk = k.add(s);
                if prefix_ok(&nk, m) {
                    accumulate(&mut next, nk, c.clone())?;
                }
            }
        }
        drop_zeros(&mut next);
        prod = next;
        if prod.is_empty() {
            return Ok(C::zero());
        }
    }
    prod.retain(|k, _| viable(k, m, &cols));

    for j in (1..m).rev() {
        // eliminate variable j (zero-based); variables 0..j remain
        let mut buckets: Vec<Poly<K, C>> = vec![];
        for (k, c) in prod.drain() {
            let r = k.get(j) as usize;
            if r == 0 {
                continue;
            }
            if buckets.len() < r {
                buckets.resize_with(r, FxHashMap::default);
            }
            buckets[r - 1].insert(k.cleared(j), c);
        }
        let column = &cols.columns[j];
        let mut acc: Poly<K, C> = FxHashMap::default();
        for bucket in buckets.into_iter().rev() {
            if !acc.is_empty() {
                let mut next: Poly<K, C> = FxHashMap::default();
                for (k, c) in &acc {
                    for (s, coef) in column {
                        let nk = k.bump(*s, 1);
                        if prefix_ok(&nk, j) {
                            accumulate(&mut next, nk, ck(c.mul(coef))?)?;
                        }
                    }
                }
                acc = next;
            }
            for (k, c) in bucket {
                accumulate(&mut acc, k, c)?;
            }
        }
        drop_zeros(&mut acc);
        acc.retain(|k, _| viable(k, j, &cols));
        if acc.is_empty() {
            return Ok(C::zero());
        }
        prod = acc;
    }
    let unit = K::zero(m).bump(0, 1);
    Ok(prod.remove(&unit).unwrap_or_else(C::zero))
}

#[inline]
fn prefix_ok<K: Key>(k: &K, nv: usize) -> bool {
    let mut sum = 0u32;
    for t in 0..nv.saturating_sub(1) {
        sum += k.get(t);
        if sum as usize > t + 1 {
            return false;
        }
    }
    true
}

/// Runs [`evaluate`] on `i128`, retrying with `BigInt` on overflow, and
/// picks the packed key when it fits.
pub(crate) fn evaluate_exact(a: &[Vec<i64>], positions: &[Vec<Vec<usize>>]) -> BigInt {
    let m = a.len();
    fn run<K: Key>(a: &[Vec<i64>], positions: &[Vec<Vec<usize>>]) -> BigInt {
        let m = a.len();
        let factors: Vec<Vec<K>> = positions
            .iter()
            .map(|f| f.iter().map(|p| key_from_positions::<K>(m, p)).collect())
            .collect();
        match evaluate::<K, i128>(a, &factors) {
            Ok(v) => BigInt::from(v),
            Err(Overflow) => evaluate::<K, BigInt>(a, &factors).expect("BigInt never overflows"),
        }
    }
    if m <= PACKED_MAX_VARS {
        run::<u128>(a, positions)
    } else {
        run::<Vec<u8>>(a, positions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_key_ops() {
        let k: u128 = key_from_positions(20, &[0, 3, 19]);
        assert_eq!(k.get(0), 1);
        assert_eq!(k.get(3), 1);
        assert_eq!(k.get(19), 1);
        assert_eq!(k.get(1), 0);
        let k2 = k.bump(3, 4);
        assert_eq!(k2.get(3), 5);
        assert_eq!(k2.cleared(3).get(3), 0);
        assert_eq!(k2.cleared(3).get(19), 1);
    }

    #[test]
    fn two_by_two() {
        let a = vec![vec![0, 7], vec![0, 0]];
        // x1 x2 -> 1, x2^2 -> a12, x1^2 -> 0
        assert_eq!(evaluate_exact(&a, &[vec![vec![0]], vec![vec![1]]]), BigInt::from(1));
        assert_eq!(evaluate_exact(&a, &[vec![vec![1]], vec![vec![1]]]), BigInt::from(7));
        assert_eq!(evaluate_exact(&a, &[vec![vec![0]], vec![vec![0]]]), BigInt::from(0));
    }

    #[test]
    fn wide_and_packed_keys_agree() {
        let a = vec![vec![0, 1, -2, 1], vec![0, 0, 3, -2], vec![0, 0, 0, 1], vec![0, 0, 0, 0]];
        let f = vec![vec![0], vec![1], vec![2], vec![3]];
        let factors = [f.clone(), f.clone(), f.clone(), f];
        let packed: Vec<Vec<u128>> = factors.iter().map(|f| f.iter().map(|p| key_from_positions(4, p)).collect()).collect();
        let wide: Vec<Vec<Vec<u8>>> = factors.iter().map(|f| f.iter().map(|p| key_from_positions(4, p)).collect()).collect();
        let x: i128 = evaluate(&a, &packed).unwrap();
        let y: BigInt = evaluate(&a, &wide).unwrap();
        assert_eq!(BigInt::from(x), y);
    }
}
