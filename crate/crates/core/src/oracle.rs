//! Type-A checks independent of the operator formula: partitions for
//! Grassmannian classes, Littlewood–Richardson coefficients by tableau
//! enumeration, Pieri's rule, Borel's relations and Giambelli determinants.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::Series;
use crate::characteristics::ProductCalculator;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::weyl::{CosetIndex, CosetTable};

/// Weakly decreasing parts, trailing zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `lambda_i`, zero-based, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((0..w).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Fits in `rows` rows of length at most `cols`.
    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `(n, k)` of a Grassmannian table `A_{n-1}`, `K = {k}`.
pub fn grassmannian_shape(table: &CosetTable) -> Result<(usize, usize)> {
    match table.cartan().builtin_name() {
        Some(g) if g.series == Series::A => {}
        _ => return Err(Error::NotTypeA),
    }
    match table.k() {
        [k] => Ok((table.cartan().rank() + 1, *k)),
        _ => Err(Error::NotSingletonK),
    }
}

/// Partition of a Grassmannian class: with `w` the permutation of the
/// representative (`s_a` swaps `a` and `a+1`), `lambda_i = w(k+1-i) - (k+1-i)`.
pub fn coset_to_partition(table: &CosetTable, idx: CosetIndex) -> Result<Partition> {
    let (n, k) = grassmannian_shape(table)?;
    let word = table.word(idx)?;
    let image = |j: usize| {
        word.letters().iter().rev().fold(j, |x, &a| {
            let a = a as usize;
            if x == a {
                a + 1
            } else if x == a + 1 {
                a
            } else {
                x
            }
        })
    };
    let parts: Vec<usize> = (1..=k).map(|i| image(k + 1 - i) - (k + 1 - i)).collect();
    debug_assert!(parts.iter().all(|&p| p <= n - k));
    Partition::new(parts)
}

/// Every class of a Grassmannian table keyed by its partition.
pub fn partition_index(table: &CosetTable) -> Result<HashMap<Partition, CosetIndex>> {
    let mut map = HashMap::new();
    for (idx, _) in table.iter() {
        map.insert(coset_to_partition(table, idx)?, idx);
    }
    Ok(map)
}

/// Number of semistandard skew tableaux of shape `nu / lambda` and content
/// `mu` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if nu.size() != lambda.size() + mu.size() {
        return Err(Error::SizeMismatch { nu: nu.size(), sum: lambda.size() + mu.size() });
    }
    if !nu.contains(lambda) {
        return Ok(0);
    }
    // cells in reading order: rows top to bottom, right to left
    let cells: Vec<(usize, usize)> =
        (0..nu.len()).flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c))).collect();
    let mut filling: HashMap<(usize, usize), usize> = HashMap::new();
    let mut count = vec![0usize; mu.len() + 1];
    fn go(
        pos: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        filling: &mut HashMap<(usize, usize), usize>,
        count: &mut [usize],
    ) -> u64 {
        if pos == cells.len() {
            return 1;
        }
        let (r, c) = cells[pos];
        let mut total = 0;
        for v in 1..=mu.len() {
            if count[v] >= mu.part(v - 1) || (v > 1 && count[v] + 1 > count[v - 1]) {
                continue;
            }
            if filling.get(&(r, c + 1)).is_some_and(|&right| v > right) {
                continue;
            }
            if r > 0 && c >= lambda.part(r - 1) && filling.get(&(r - 1, c)).is_some_and(|&up| v <= up) {
                continue;
            }
            filling.insert((r, c), v);
            count[v] += 1;
            total += go(pos + 1, cells, lambda, mu, filling, count);
            count[v] -= 1;
            filling.remove(&(r, c));
        }
        total
    }
    Ok(go(0, &cells, lambda, mu, &mut filling, &mut count))
}

/// Partitions in the `k x (n-k)` box obtained from `lambda` by adding a
/// vertical strip of `r` boxes (multiplication by `c_r`).
pub fn pieri(lambda: &Partition, r: usize, k: usize, n: usize) -> Result<Vec<Partition>> {
    if r == 0 || r > k || k >= n {
        return Err(Error::OutOfRange(format!("pieri needs 1 <= r <= k < n, got r={r}, k={k}, n={n}")));
    }
    if !lambda.fits(k, n - k) {
        return Err(Error::OutOfRange(format!("{lambda} does not fit the {k}x{} box", n - k)));
    }
    let mut out = vec![];
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let parts: Vec<usize> = (0..k).map(|i| lambda.part(i) + ((mask >> i) & 1) as usize).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) || parts[0] > n - k {
            continue;
        }
        out.push(Partition::new(parts).expect("checked decreasing"));
    }
    out.sort();
    Ok(out)
}

/// Degree-`j` component of `(1 + c_1 + .. + c_k)^{-1}` in `Z[c_1..c_k]`.
pub fn borel_inverse(k: usize, j: usize) -> Polynomial {
    let mut comps: Vec<Polynomial> = vec![Polynomial::one(k)];
    for d in 1..=j {
        let mut acc = Polynomial::zero(k);
        for i in 1..=d.min(k) {
            acc = &acc - &(&Polynomial::var(k, i - 1) * &comps[d - i]);
        }
        comps.push(acc);
    }
    comps.swap_remove(j)
}

/// Borel's relations for `G_{n,k}`: the components of degrees
/// `n-k+1 ..= n`.
pub fn borel_inverse_components(k: usize, n: usize) -> Result<Vec<Polynomial>> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    Ok((n - k + 1..=n).map(|j| borel_inverse(k, j)).collect())
}

/// `s_lambda = det(e_{lambda'_i - i + j})` with `e_r = c_r`, as a
/// polynomial in `c_1..c_k`.
pub fn giambelli(lambda: &Partition, k: usize) -> Polynomial {
    let conj = lambda.conjugate();
    let l = conj.len();
    let e = |r: i64| -> Polynomial {
        if r == 0 {
            Polynomial::one(k)
        } else if r < 0 || r as usize > k {
            Polynomial::zero(k)
        } else {
            Polynomial::var(k, r as usize - 1)
        }
    };
    let m: Vec<Vec<Polynomial>> =
        (0..l).map(|i| (0..l).map(|j| e(conj.part(i) as i64 - i as i64 + j as i64)).collect()).collect();
    determinant(&m, k)
}

fn determinant(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &determinant(&minor, nvars);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub u: CosetIndex,
    pub v: CosetIndex,
    pub w: CosetIndex,
    pub characteristic: BigInt,
    pub lr: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c^{}_{{{},{}}} = {} but LR gives {}", self.w, self.u, self.v, self.characteristic, self.lr)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub triples: usize,
    pub pieri_checks: usize,
    pub mismatches: Vec<Mismatch>,
    /// Computed characteristics that came out negative.
    pub negatives: usize,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.negatives == 0
    }
}

/// Compares every `c^w_{u,v}` of a Grassmannian table with the LR
/// coefficient of the partitions, and every product with `c_r` with Pieri.
pub fn crosscheck(table: &CosetTable) -> Result<CrosscheckReport> {
    let (n, k) = grassmannian_shape(table)?;
    let mut calc = ProductCalculator::new(table);
    let parts: Vec<(CosetIndex, Partition)> =
        table.iter().map(|(i, _)| coset_to_partition(table, i).map(|p| (i, p))).collect::<Result<_>>()?;
    let by_partition: HashMap<&Partition, CosetIndex> = parts.iter().map(|(i, p)| (p, *i)).collect();
    let top = table.top_length();
    let mut report = CrosscheckReport::default();
    for (u, lu) in &parts {
        for (v, lv) in &parts {
            let m = u.m + v.m;
            if m > top {
                continue;
            }
            let product = calc.multiply(*u, *v)?;
            for i in 1..=table.betti_at(m) {
                let w = CosetIndex::new(m, i);
                let lw = &parts.iter().find(|(x, _)| *x == w).expect("every class has a partition").1;
                let c = product.coefficient(w);
                let lr = lr_coefficient(lu, lv, lw)?;
                report.triples += 1;
                if c.sign() == num_bigint::Sign::Minus {
                    report.negatives += 1;
                }
                if c != BigInt::from(lr) {
                    report.mismatches.push(Mismatch { u: *u, v: *v, w, characteristic: c, lr });
                }
            }
        }
    }
    for r in 1..=k {
        let cr = by_partition[&Partition(vec![1; r])];
        for (u, lu) in &parts {
            if u.m + r > top {
                continue;
            }
            let expected: Vec<CosetIndex> = pieri(lu, r, k, n)?.iter().map(|p| by_partition[p]).collect();
            let got = calc.multiply(*u, cr)?;
            report.pieri_checks += 1;
            let ok = got.terms.len() == expected.len()
                && got.terms.iter().all(|(w, c)| c.is_one() && expected.contains(w));
            if !ok {
                for w in expected.iter().chain(got.terms.iter().map(|(w, _)| w)) {
                    let c = got.coefficient(*w);
                    let lr = u64::from(expected.contains(w));
                    if c != BigInt::from(lr) {
                        report.mismatches.push(Mismatch { u: *u, v: cr, w: *w, characteristic: c, lr });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `pi` pulled back along the type-A bijection: coefficients of a
/// polynomial in `c_1..c_k` on Schubert classes, via Pieri products.
pub fn pieri_expansion(p: &Polynomial, k: usize, n: usize) -> Result<HashMap<Partition, BigInt>> {
    let mut out: HashMap<Partition, BigInt> = HashMap::new();
    for (e, c) in p.terms() {
        let mut cur: HashMap<Partition, BigInt> = HashMap::from([(Partition::empty(), BigInt::one())]);
        for (r, &times) in e.iter().enumerate() {
            for _ in 0..times {
                let mut next: HashMap<Partition, BigInt> = HashMap::new();
                for (lam, x) in &cur {
                    for nu in pieri(lam, r + 1, k, n)? {
                        *next.entry(nu).or_default() += x;
                    }
                }
                cur = next;
            }
        }
        for (lam, x) in cur {
            *out.entry(lam).or_default() += c * x;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::weyl::enumerate_cosets;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn gr(n: usize, k: usize) -> CosetTable {
        enumerate_cosets(&CartanMatrix::builtin(Series::A, n - 1).unwrap(), &[k], None).unwrap()
    }

    #[test]
    fn partitions_of_small_classes() {
        let t = gr(9, 4);
        assert_eq!(coset_to_partition(&t, CosetIndex::new(1, 1)).unwrap(), p("1"));
        assert_eq!(t.word(CosetIndex::new(2, 1)).unwrap().0, vec![3, 4]);
        assert_eq!(coset_to_partition(&t, CosetIndex::new(2, 1)).unwrap(), p("1,1"));
        assert_eq!(coset_to_partition(&t, CosetIndex::new(2, 2)).unwrap(), p("2"));
        assert_eq!(coset_to_partition(&t, CosetIndex::new(0, 1)).unwrap(), Partition::empty());
    }

    #[test]
    fn bijection_onto_box_partitions() {
        for n in 2..=9 {
            for k in 1..n {
                let t = gr(n, k);
                let idx = partition_index(&t).unwrap();
                assert_eq!(idx.len(), t.len());
                for (lam, i) in &idx {
                    assert_eq!(lam.size(), i.m);
                    assert!(lam.fits(k, n - k));
                }
            }
        }
    }

    #[test]
    fn rejects_non_grassmannian_tables() {
        let t = enumerate_cosets(&CartanMatrix::builtin(Series::B, 3).unwrap(), &[1], None).unwrap();
        assert_eq!(coset_to_partition(&t, CosetIndex::new(0, 1)).unwrap_err(), Error::NotTypeA);
        let t = enumerate_cosets(&CartanMatrix::builtin(Series::A, 3).unwrap(), &[1, 2], None).unwrap();
        assert_eq!(coset_to_partition(&t, CosetIndex::new(0, 1)).unwrap_err(), Error::NotSingletonK);
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("2")).unwrap(), 1);
        assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("1,1")).unwrap(), 1);
        assert_eq!(lr_coefficient(&p("2,1"), &p("2,1"), &p("3,2,1")).unwrap(), 2);
        assert_eq!(lr_coefficient(&p(""), &p("2,1"), &p("2,1")).unwrap(), 1);
        assert_eq!(lr_coefficient(&p("2"), &p("1"), &p("1,1,1")).unwrap(), 0);
        assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("3")).unwrap_err(), Error::SizeMismatch { nu: 3, sum: 2 });
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri(&Partition::empty(), 1, 2, 4).unwrap(), vec![p("1")]);
        assert_eq!(pieri(&p("1"), 1, 2, 4).unwrap(), vec![p("1,1"), p("2")]);
        assert!(pieri(&p("1"), 3, 2, 4).is_err());
        // agrees with LR against a single column
        let lam = p("2,1");
        for nu in pieri(&lam, 2, 4, 8).unwrap() {
            assert_eq!(lr_coefficient(&lam, &p("1,1"), &nu).unwrap(), 1);
        }
    }

    #[test]
    fn borel_components() {
        let c = |i| Polynomial::var(2, i);
        assert_eq!(borel_inverse(2, 1), -&c(0));
        assert_eq!(borel_inverse(2, 2), &(&c(0) * &c(0)) - &c(1));
        let three = &(&(&c(0) * &c(0)) * &c(0)).scale(&BigInt::from(-1)) + &(&c(0) * &c(1)).scale(&BigInt::from(2));
        assert_eq!(borel_inverse(2, 3), three);
        assert_eq!(borel_inverse(1, 4), Polynomial::monomial(vec![4], BigInt::one()));
        assert_eq!(borel_inverse_components(2, 4).unwrap().len(), 2);
    }

    #[test]
    fn giambelli_small() {
        let c = |i| Polynomial::var(2, i);
        assert_eq!(giambelli(&p("1,1"), 2), c(1));
        assert_eq!(giambelli(&p("2"), 2), &(&c(0) * &c(0)) - &c(1));
        // images under Pieri expansion are single classes
        for lam in [p("2,1"), p("2,2"), p("2"), p("1")] {
            let img = pieri_expansion(&giambelli(&lam, 2), 2, 4).unwrap();
            assert_eq!(img, HashMap::from([(lam.clone(), BigInt::one())]));
        }
    }

    #[test]
    fn crosscheck_small_grassmannians() {
        for (n, k) in [(4, 2), (5, 2)] {
            let report = crosscheck(&gr(n, k)).unwrap();
            assert!(report.passed(), "{:?}", report.mismatches.first());
            assert!(report.triples > 0);
        }
    }
}
