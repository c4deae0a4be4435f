//! Structure matrices, the triangular operator and characteristic numbers.
//!
//! For `w` with minimized word `(i_1..i_m)` and classes `u_1..u_k` of total
//! length `m`,
//!
//! ```text
//! c^w_{u_1..u_k} = T_{A_w}( prod_i sum_{I} x_I )
//! ```
//!
//! where `I` runs over position subsets `j_1 < .. < j_t` of `w`'s word with
//! `t = l(u_i)` and `sigma_{i_{j_1}} o .. o sigma_{i_{j_t}} = u_i` in `W(G)`,
//! and `x_I = x_{j_1} .. x_{j_t}` is indexed by position.

mod engine;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::num::{ck, Overflow};
use rustc_hash::FxHashMap;

use crate::poly::Polynomial;
use crate::weyl::{CosetIndex, CosetTable};

/// `A_w = (a_{s,t})` with `a_{s,t} = -c_{i_s,i_t}` for `s < t`, zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureMatrix {
    entries: Vec<Vec<i64>>,
}

impl StructureMatrix {
    /// Wraps a square matrix, checking strict upper triangularity.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = entries.len();
        for (s, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Parse(format!("row {} of structure matrix has wrong length", s + 1)));
            }
            if row.iter().take(s + 1).any(|&x| x != 0) {
                return Err(Error::Parse(format!("structure matrix row {} not strictly upper triangular", s + 1)));
            }
        }
        Ok(StructureMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `a_{s,t}`, zero-based.
    pub fn get(&self, s: usize, t: usize) -> i64 {
        self.entries[s][t]
    }
}

pub fn structure_matrix(c: &CartanMatrix, word: &[u8]) -> Result<StructureMatrix> {
    let n = c.rank();
    if let Some(&bad) = word.iter().find(|&&a| a == 0 || a as usize > n) {
        return Err(Error::IndexOutOfRange { index: bad as usize, bound: n });
    }
    let m = word.len();
    let mut a = vec![vec![0i64; m]; m];
    for s in 0..m {
        for t in s + 1..m {
            a[s][t] = -c.get(word[s] as usize - 1, word[t] as usize - 1);
        }
    }
    Ok(StructureMatrix { entries: a })
}

/// `T_A(h)` by the elimination rules, directly on a [`Polynomial`].
///
/// `h` must be homogeneous of degree `m` in `m` variables where `m` is the
/// size of `A`. This path does no pruning; [`characteristic`] uses a faster
/// engine for products of subword sums.
pub fn triangular_operator(a: &StructureMatrix, h: &Polynomial) -> Result<BigInt> {
    let m = a.size();
    if h.nvars() != m {
        return Err(Error::DegreeMismatch { expected: m, found: h.nvars() });
    }
    if h.is_zero() {
        return Ok(BigInt::zero());
    }
    match h.homogeneous_degree() {
        Some(d) if d == m => {}
        Some(d) => return Err(Error::DegreeMismatch { expected: m, found: d }),
        None => return Err(Error::DegreeMismatch { expected: m, found: h.terms().map(|(e, _)| e.iter().sum::<u32>() as usize).max().unwrap_or(0) }),
    }
    let mut cur = h.clone();
    for j in (1..m).rev() {
        let mut linear = Polynomial::zero(m);
        for s in 0..j {
            let a_sj = a.get(s, j);
            if a_sj != 0 {
                linear.add_term(unit(m, s), BigInt::from(a_sj));
            }
        }
        let mut next = Polynomial::zero(m);
        for r in 1..=cur.degree_in(j) {
            let mut h_r = Polynomial::zero(m);
            for (e, c) in cur.terms() {
                if e[j] == r {
                    let mut e = e.clone();
                    e[j] = 0;
                    h_r.add_term(e, c.clone());
                }
            }
            if !h_r.is_zero() {
                next = &next + &(&h_r * &linear.pow(r - 1));
            }
        }
        cur = next;
    }
    Ok(cur.coefficient(&unit(m, 0)))
}

fn unit(m: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; m];
    e[i] = 1;
    e
}

/// All position subsets `j_1 < .. < j_t` of `w_word` whose letters multiply
/// to the element of `u_word` (a reduced word of length `t`).
///
/// A subword of length `l(u)` equals `u` exactly when each chosen letter is
/// a left descent of what remains, which is read off the image of the
/// regular weight `rho`: `sigma_a` is a left descent of `r` iff the `a`-th
/// coordinate of `r(rho)` is negative.
pub fn subword_positions(c: &CartanMatrix, w_word: &[u8], u_word: &[u8]) -> Result<Vec<Vec<usize>>> {
    for &a in w_word.iter().chain(u_word) {
        if a == 0 || a as usize > c.rank() {
            return Err(Error::IndexOutOfRange { index: a as usize, bound: c.rank() });
        }
    }
    match subword_positions_with::<i64>(c, w_word, u_word) {
        Ok(v) => Ok(v),
        Err(Overflow) => Ok(subword_positions_with::<BigInt>(c, w_word, u_word).expect("BigInt never overflows")),
    }
}

fn reflect<C: crate::num::Scalar>(c: &CartanMatrix, a: usize, v: &mut [C]) -> std::result::Result<(), Overflow> {
    let coeff = v[a - 1].clone();
    for (j, x) in v.iter_mut().enumerate() {
        let cij = c.get(a - 1, j);
        if cij != 0 {
            *x = ck(x.sub(&ck(coeff.mul(&ck(C::from_i64(cij))?))?))?;
        }
    }
    Ok(())
}

fn subword_positions_with<C: crate::num::Scalar>(
    c: &CartanMatrix,
    w_word: &[u8],
    u_word: &[u8],
) -> std::result::Result<Vec<Vec<usize>>, Overflow> {
    let n = c.rank();
    let one = ck(C::from_i64(1))?;
    let mut v: Vec<C> = vec![one; n];
    for &a in u_word.iter().rev() {
        reflect(c, a as usize, &mut v)?;
    }
    let mut out = vec![];
    let mut chosen = vec![];
    fn dfs<C: crate::num::Scalar>(
        c: &CartanMatrix,
        w: &[u8],
        pos: usize,
        left: usize,
        v: &[C],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> std::result::Result<(), Overflow> {
        if left == 0 {
            out.push(chosen.clone());
            return Ok(());
        }
        if w.len() - pos < left {
            return Ok(());
        }
        let a = w[pos] as usize;
        if v[a - 1].signum() < 0 {
            let mut nv = v.to_vec();
            reflect(c, a, &mut nv)?;
            chosen.push(pos);
            dfs(c, w, pos + 1, left - 1, &nv, chosen, out)?;
            chosen.pop();
        }
        dfs(c, w, pos + 1, left, v, chosen, out)
    }
    dfs(c, w_word, 0, u_word.len(), &v, &mut chosen, &mut out)?;
    Ok(out)
}

/// `sum_I x_I` as an explicit polynomial in `l(w)` variables.
pub fn subword_polynomial(c: &CartanMatrix, w_word: &[u8], u_word: &[u8]) -> Result<Polynomial> {
    let m = w_word.len();
    let subsets = subword_positions(c, w_word, u_word)?;
    Ok(Polynomial::from_terms(
        m,
        subsets.into_iter().map(|s| {
            let mut e = vec![0u32; m];
            for p in s {
                e[p] = 1;
            }
            (e, BigInt::one())
        }),
    ))
}

/// `c^w_{u_1..u_k}` from words directly. `w_word` must be the minimized
/// word of `w`; the `u` words must be reduced.
pub fn characteristic_of_words(c: &CartanMatrix, w_word: &[u8], class_words: &[&[u8]]) -> Result<BigInt> {
    let m = w_word.len();
    let total: usize = class_words.iter().map(|u| u.len()).sum();
    if total != m {
        return Err(Error::DegreeMismatch { expected: m, found: total });
    }
    let a = structure_matrix(c, w_word)?;
    if m == 0 {
        return Ok(BigInt::one());
    }
    let mut order: Vec<&[u8]> = class_words.iter().copied().filter(|u| !u.is_empty()).collect();
    order.sort_by_key(|u| u.len());
    let mut factors: Vec<Vec<Vec<usize>>> = Vec::with_capacity(order.len());
    let mut cache: Vec<(&[u8], usize)> = vec![];
    for u in order {
        if let Some(&(_, idx)) = cache.iter().find(|(w, _)| *w == u) {
            factors.push(factors[idx].clone());
            continue;
        }
        let subsets = subword_positions(c, w_word, u)?;
        if subsets.is_empty() {
            return Ok(BigInt::zero());
        }
        cache.push((u, factors.len()));
        factors.push(subsets);
    }
    Ok(engine::evaluate_exact(a.entries(), &factors))
}

/// `c^w_{u_1..u_k}` evaluated as a single triangular operator on the full
/// product. Memory grows quickly with the number of factors; see
/// [`ProductCalculator`] for the route used by [`characteristic`].
pub fn characteristic_direct(table: &CosetTable, w: CosetIndex, classes: &[CosetIndex]) -> Result<BigInt> {
    let w_word = table.word(w)?;
    let words: Vec<&[u8]> = classes.iter().map(|&u| table.word(u).map(|w| w.letters())).collect::<Result<_>>()?;
    characteristic_of_words(table.cartan(), w_word.letters(), &words)
}

/// `c^w_{u_1..u_k}` for classes of a coset table.
///
/// With at most two nontrivial classes this is one operator evaluation;
/// longer products are expanded pairwise in the Schubert basis.
pub fn characteristic(table: &CosetTable, w: CosetIndex, classes: &[CosetIndex]) -> Result<BigInt> {
    ProductCalculator::new(table).characteristic(w, classes)
}

/// A linear combination of Schubert classes with nonzero coefficients,
/// sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchubertExpansion {
    pub terms: Vec<(CosetIndex, BigInt)>,
}

impl SchubertExpansion {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: CosetIndex) -> BigInt {
        self.terms.iter().find(|(i, _)| *i == idx).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    fn from_map(map: FxHashMap<CosetIndex, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(i, _)| *i);
        SchubertExpansion { terms }
    }
}

impl fmt::Display for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("{c}*s{i}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Products of Schubert classes with memoized pair products.
pub struct ProductCalculator<'a> {
    table: &'a CosetTable,
    pairs: FxHashMap<(CosetIndex, CosetIndex), SchubertExpansion>,
}

impl<'a> ProductCalculator<'a> {
    pub fn new(table: &'a CosetTable) -> Self {
        ProductCalculator { table, pairs: FxHashMap::default() }
    }

    pub fn table(&self) -> &'a CosetTable {
        self.table
    }

    fn check_degree(&self, total: usize) -> Result<bool> {
        if total <= self.table.top_length() {
            return Ok(true);
        }
        if self.table.is_complete() {
            Ok(false)
        } else {
            Err(Error::TruncatedTable(self.table.top_length()))
        }
    }

    /// `s_u * s_v`.
    pub fn multiply(&mut self, u: CosetIndex, v: CosetIndex) -> Result<SchubertExpansion> {
        let key = if u <= v { (u, v) } else { (v, u) };
        if let Some(e) = self.pairs.get(&key) {
            return Ok(e.clone());
        }
        let total = self.table.entry(u)?.length() + self.table.entry(v)?.length();
        let mut terms = vec![];
        if self.check_degree(total)? {
            for i in 1..=self.table.betti_at(total) {
                let w = CosetIndex::new(total, i);
                let c = characteristic_direct(self.table, w, &[u, v])?;
                if !c.is_zero() {
                    terms.push((w, c));
                }
            }
        }
        let e = SchubertExpansion { terms };
        self.pairs.insert(key, e.clone());
        Ok(e)
    }

    /// `e * s_u` for an expansion `e`.
    pub fn multiply_expansion(&mut self, e: &SchubertExpansion, u: CosetIndex) -> Result<SchubertExpansion> {
        let mut acc: FxHashMap<CosetIndex, BigInt> = FxHashMap::default();
        for (w, c) in &e.terms {
            for (x, d) in self.multiply(*w, u)?.terms {
                *acc.entry(x).or_default() += c * d;
            }
        }
        Ok(SchubertExpansion::from_map(acc))
    }

    /// The Schubert expansion of `s_{u_1} .. s_{u_k}`.
    pub fn expand(&mut self, classes: &[CosetIndex]) -> Result<SchubertExpansion> {
        let mut total = 0;
        for &u in classes {
            total += self.table.entry(u)?.length();
        }
        if !self.check_degree(total)? {
            return Ok(SchubertExpansion::default());
        }
        let mut cur = SchubertExpansion { terms: vec![(CosetIndex::new(0, 1), BigInt::one())] };
        for &u in classes {
            if u.m == 0 {
                continue;
            }
            cur = self.multiply_expansion(&cur, u)?;
            if cur.is_empty() {
                break;
            }
        }
        Ok(cur)
    }

    /// `c^w_{u_1..u_k}`; the last factor is paired against `w` directly.
    pub fn characteristic(&mut self, w: CosetIndex, classes: &[CosetIndex]) -> Result<BigInt> {
        let m = self.table.entry(w)?.length();
        let mut nontrivial = vec![];
        let mut total = 0;
        for &u in classes {
            let l = self.table.entry(u)?.length();
            total += l;
            if l > 0 {
                nontrivial.push(u);
            }
        }
        if total != m {
            return Err(Error::DegreeMismatch { expected: m, found: total });
        }
        if nontrivial.len() <= 2 {
            return characteristic_direct(self.table, w, &nontrivial);
        }
        let last = nontrivial.pop().expect("at least three factors");
        let head = self.expand(&nontrivial)?;
        let mut sum = BigInt::zero();
        for (x, c) in &head.terms {
            let d = characteristic_direct(self.table, w, &[*x, last])?;
            if !d.is_zero() {
                sum += c * d;
            }
        }
        Ok(sum)
    }
}

/// The Schubert expansion of a product of classes: the coefficient of every
/// `s_w` with `l(w)` equal to the total length.
pub fn expand_product(table: &CosetTable, classes: &[CosetIndex]) -> Result<SchubertExpansion> {
    ProductCalculator::new(table).expand(classes)
}

/// `s_u * s_v` in the Schubert basis.
pub fn multiply_schubert(table: &CosetTable, u: CosetIndex, v: CosetIndex) -> Result<SchubertExpansion> {
    ProductCalculator::new(table).multiply(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;
    use crate::weyl::enumerate_cosets;
    use proptest::prelude::*;

    fn g2() -> CartanMatrix {
        CartanMatrix::builtin(Series::G, 2).unwrap()
    }

    #[test]
    fn g2_structure_matrices() {
        let au = structure_matrix(&g2(), &[1, 2, 1, 2]).unwrap();
        assert_eq!(au.entries(), &[vec![0, 1, -2, 1], vec![0, 0, 3, -2], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
        let av = structure_matrix(&g2(), &[2, 1, 2, 1]).unwrap();
        assert_eq!(av.entries(), &[vec![0, 3, -2, 3], vec![0, 0, 1, -2], vec![0, 0, 0, 3], vec![0, 0, 0, 0]]);
        assert_eq!(structure_matrix(&g2(), &[2]).unwrap().entries(), &[vec![0]]);
        assert!(matches!(structure_matrix(&g2(), &[3]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn operator_rules() {
        let a1 = StructureMatrix::new(vec![vec![0]]).unwrap();
        assert_eq!(triangular_operator(&a1, &Polynomial::var(1, 0)).unwrap(), BigInt::one());
        let a = StructureMatrix::new(vec![vec![0, 5], vec![0, 0]]).unwrap();
        let x = |i| Polynomial::var(2, i);
        assert_eq!(triangular_operator(&a, &(&x(0) * &x(1))).unwrap(), BigInt::one());
        assert_eq!(triangular_operator(&a, &(&x(1) * &x(1))).unwrap(), BigInt::from(5));
        assert_eq!(triangular_operator(&a, &(&x(0) * &x(0))).unwrap(), BigInt::zero());
        let au = structure_matrix(&g2(), &[1, 2, 1, 2]).unwrap();
        let full = Polynomial::monomial(vec![1, 1, 1, 1], BigInt::one());
        assert_eq!(triangular_operator(&au, &full).unwrap(), BigInt::one());
    }

    #[test]
    fn operator_degree_checks() {
        let a = StructureMatrix::new(vec![vec![0, 5], vec![0, 0]]).unwrap();
        let x = Polynomial::var(2, 0);
        assert_eq!(triangular_operator(&a, &x).unwrap_err(), Error::DegreeMismatch { expected: 2, found: 1 });
        assert!(triangular_operator(&a, &Polynomial::var(3, 0)).is_err());
        assert!(StructureMatrix::new(vec![vec![1]]).is_err());
    }

    #[test]
    fn single_class_characteristic_is_one() {
        for (c, k) in [(g2(), vec![1, 2]), (CartanMatrix::builtin(Series::A, 3).unwrap(), vec![2]), (CartanMatrix::builtin(Series::B, 3).unwrap(), vec![1, 3])] {
            let t = enumerate_cosets(&c, &k, None).unwrap();
            for (idx, _) in t.iter() {
                assert_eq!(characteristic(&t, idx, &[idx]).unwrap(), BigInt::one(), "{idx}");
            }
        }
    }

    #[test]
    fn degree_mismatch_reported() {
        let t = enumerate_cosets(&CartanMatrix::builtin(Series::A, 3).unwrap(), &[2], None).unwrap();
        let err = characteristic(&t, CosetIndex::new(4, 1), &[CosetIndex::new(1, 1)]).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 4, found: 1 });
    }

    #[test]
    fn gr24_square_of_hyperplane_class() {
        // G(2,4): s_[2]^2 = s_[1,2] + s_[3,2]
        let t = enumerate_cosets(&CartanMatrix::builtin(Series::A, 3).unwrap(), &[2], None).unwrap();
        assert_eq!(t.word(CosetIndex::new(2, 1)).unwrap().0, vec![1, 2]);
        assert_eq!(t.word(CosetIndex::new(2, 2)).unwrap().0, vec![3, 2]);
        let e = multiply_schubert(&t, CosetIndex::new(1, 1), CosetIndex::new(1, 1)).unwrap();
        assert_eq!(e.terms, vec![(CosetIndex::new(2, 1), BigInt::one()), (CosetIndex::new(2, 2), BigInt::one())]);
        // degree beyond the top gives the empty expansion
        let top = t.top_element().unwrap().0;
        assert!(multiply_schubert(&t, top, CosetIndex::new(1, 1)).unwrap().is_empty());
    }

    #[test]
    fn fast_engine_matches_reference_operator() {
        // every pair on G2/T and B3/P{1,3}, through both routes
        for (c, k) in [(g2(), vec![1, 2]), (CartanMatrix::builtin(Series::B, 3).unwrap(), vec![1, 3])] {
            let t = enumerate_cosets(&c, &k, None).unwrap();
            let all: Vec<_> = t.iter().map(|(i, _)| i).collect();
            for &u in &all {
                for &v in &all {
                    let m = u.m + v.m;
                    if m > t.top_length() || u.m == 0 || v.m == 0 {
                        continue;
                    }
                    for i in 1..=t.betti_at(m) {
                        let w = CosetIndex::new(m, i);
                        let ww = t.word(w).unwrap();
                        let a = structure_matrix(&c, ww.letters()).unwrap();
                        let h = &subword_polynomial(&c, ww.letters(), t.word(u).unwrap().letters()).unwrap()
                            * &subword_polynomial(&c, ww.letters(), t.word(v).unwrap().letters()).unwrap();
                        let reference = triangular_operator(&a, &h).unwrap();
                        assert_eq!(characteristic(&t, w, &[u, v]).unwrap(), reference);
                    }
                }
            }
        }
    }

    #[test]
    fn pairwise_expansion_matches_direct_operator() {
        let c = CartanMatrix::builtin(Series::C, 3).unwrap();
        let t = enumerate_cosets(&c, &[1, 2, 3], None).unwrap();
        let s1 = CosetIndex::new(1, 1);
        let s2 = CosetIndex::new(1, 2);
        let mut calc = ProductCalculator::new(&t);
        for m in 3..=6 {
            for i in 1..=t.betti_at(m) {
                let w = CosetIndex::new(m, i);
                let mut classes = vec![s1; m - 2];
                classes.push(s2);
                classes.push(CosetIndex::new(1, 3));
                classes.truncate(m);
                let total: usize = classes.iter().map(|u| u.m).sum();
                if total != m {
                    continue;
                }
                assert_eq!(calc.characteristic(w, &classes).unwrap(), characteristic_direct(&t, w, &classes).unwrap());
            }
        }
        // a class of length two among linear ones
        let u = CosetIndex::new(2, 1);
        let w = CosetIndex::new(5, 1);
        let classes = [s1, u, s2, s1];
        assert_eq!(calc.characteristic(w, &classes).unwrap(), characteristic_direct(&t, w, &classes).unwrap());
    }

    proptest! {
        #[test]
        fn operator_is_linear(m in 1usize..5, seed in proptest::collection::vec(-3i64..4, 16),
                              f in proptest::collection::vec((proptest::collection::vec(0u32..3, 4), -4i64..5), 1..6),
                              g in proptest::collection::vec((proptest::collection::vec(0u32..3, 4), -4i64..5), 1..6)) {
            let mut a = vec![vec![0i64; m]; m];
            for s in 0..m { for t in s + 1..m { a[s][t] = seed[s * 4 + t]; } }
            let a = StructureMatrix::new(a).unwrap();
            // project random terms onto degree-m monomials in m variables
            let homog = |v: &Vec<(Vec<u32>, i64)>| {
                Polynomial::from_terms(m, v.iter().filter_map(|(e, c)| {
                    let mut e: Vec<u32> = e[..m].to_vec();
                    let d: u32 = e.iter().sum();
                    if d > m as u32 { return None; }
                    e[m - 1] += m as u32 - d;
                    Some((e, BigInt::from(*c)))
                }))
            };
            let (p, q) = (homog(&f), homog(&g));
            let lhs = triangular_operator(&a, &(&p + &q)).unwrap();
            let rhs = triangular_operator(&a, &p).unwrap() + triangular_operator(&a, &q).unwrap();
            prop_assert_eq!(lhs, rhs);
            // a monomial free of the last variable maps to zero
            if m > 1 {
                let mut e = vec![0u32; m];
                e[0] = m as u32;
                prop_assert_eq!(triangular_operator(&a, &Polynomial::monomial(e, BigInt::one())).unwrap(), BigInt::zero());
            }
        }
    }
}
