//! Degree-bounded presentations `H*(G/P) = Z[y_1..y_n] / <f_1..f_m>` and
//! Schubert polynomials in the special classes.
//!
//! Polynomials in the generators are [`Polynomial`]s whose variable `j` is
//! the `j`-th generator; the grading weights each variable by its degree.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::characteristics::{ProductCalculator, SchubertExpansion};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::snf::{hermite_normal_form, integer_diagonalize, IntMatrix, RowLattice};
use crate::weyl::{CosetIndex, CosetTable};

/// A special Schubert class chosen as generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: CosetIndex,
    pub degree: usize,
}

/// Generators in ascending degree, ties by index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(table: &CosetTable, indices: &[CosetIndex]) -> Result<Self> {
        let mut gens = vec![];
        for &idx in indices {
            let degree = table.entry(idx)?.length();
            if degree == 0 {
                return Err(Error::OutOfRange("the identity class cannot be a generator".into()));
            }
            gens.push(Generator { index: idx, degree });
        }
        gens.sort_by_key(|g| (g.degree, g.index));
        gens.dedup();
        Ok(GeneratorSet { gens })
    }

    /// Generators named by words; each word is reduced to its coset.
    pub fn from_words(table: &CosetTable, words: &[&[u8]]) -> Result<Self> {
        let idx: Vec<CosetIndex> = words.iter().map(|w| table.lookup_word(w)).collect::<Result<_>>()?;
        Self::new(table, &idx)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, j: usize) -> Generator {
        self.gens[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    /// `y<d>` for the only generator of degree `d`, `y<d>_<j>` when there
    /// are several.
    pub fn names(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| {
                let same: Vec<_> = self.gens.iter().filter(|h| h.degree == g.degree).collect();
                if same.len() == 1 {
                    format!("y{}", g.degree)
                } else {
                    let j = same.iter().position(|h| h.index == g.index).unwrap() + 1;
                    format!("y{}_{}", g.degree, j)
                }
            })
            .collect()
    }

    pub fn position_of(&self, idx: CosetIndex) -> Option<usize> {
        self.gens.iter().position(|g| g.index == idx)
    }

    fn push(&mut self, g: Generator) {
        self.gens.push(g);
    }
}

/// Exponent vectors of weighted degree `m`, lexicographically descending.
pub fn monomials_of_degree(degrees: &[usize], m: usize) -> Vec<Vec<u32>> {
    fn rec(degrees: &[usize], j: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left / degrees[j]).rev() {
            cur[j] = e as u32;
            rec(degrees, j + 1, left - e * degrees[j], cur, out);
        }
        cur[j] = 0;
    }
    let mut out = vec![];
    rec(degrees, 0, m, &mut vec![0; degrees.len()], &mut out);
    out
}

/// The ring map `pi: Z[y] -> H*(G/P)` with memoized monomial images.
pub struct Projection<'a> {
    calc: ProductCalculator<'a>,
    gens: GeneratorSet,
    memo: FxHashMap<Vec<u32>, SchubertExpansion>,
}

impl<'a> Projection<'a> {
    pub fn new(table: &'a CosetTable, gens: &GeneratorSet) -> Self {
        Projection { calc: ProductCalculator::new(table), gens: gens.clone(), memo: FxHashMap::default() }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn table(&self) -> &'a CosetTable {
        self.calc.table()
    }

    /// `pi(y^e)`, built by multiplying one generator onto a smaller monomial.
    pub fn monomial(&mut self, e: &[u32]) -> Result<SchubertExpansion> {
        if let Some(x) = self.memo.get(e) {
            return Ok(x.clone());
        }
        let out = match e.iter().rposition(|&x| x > 0) {
            None => SchubertExpansion { terms: vec![(CosetIndex::new(0, 1), BigInt::one())] },
            Some(j) => {
                let mut smaller = e.to_vec();
                smaller[j] -= 1;
                let head = self.monomial(&smaller)?;
                let g = self.gens.get(j).index;
                let total: usize = e.iter().zip(self.gens.degrees()).map(|(&x, d)| x as usize * d).sum();
                let t = self.calc.table();
                if total > t.top_length() && !t.is_complete() {
                    return Err(Error::TruncatedTable(t.top_length()));
                }
                self.calc.multiply_expansion(&head, g)?
            }
        };
        self.memo.insert(e.to_vec(), out.clone());
        Ok(out)
    }

    /// `pi(f)` for any polynomial in the generators.
    pub fn image(&mut self, f: &Polynomial) -> Result<SchubertExpansion> {
        let mut acc: FxHashMap<CosetIndex, BigInt> = FxHashMap::default();
        for (e, c) in f.terms() {
            for (w, d) in self.monomial(e)?.terms {
                *acc.entry(w).or_default() += c * d;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(i, _)| *i);
        Ok(SchubertExpansion { terms })
    }

    /// `pi(y^e)` as a row over the classes of length `m`.
    pub fn row(&mut self, e: &[u32], m: usize) -> Result<Vec<BigInt>> {
        let beta = self.table().betti_at(m);
        let mut row = vec![BigInt::zero(); beta];
        for (w, c) in self.monomial(e)?.terms {
            debug_assert_eq!(w.m, m);
            row[w.i - 1] = c;
        }
        Ok(row)
    }

    pub fn expansion_matrix(&mut self, m: usize) -> Result<ExpansionMatrix> {
        check_bound(self.table(), m)?;
        let monomials = monomials_of_degree(&self.gens.degrees(), m);
        let beta = self.table().betti_at(m);
        let rows = monomials.iter().map(|e| self.row(e, m)).collect::<Result<Vec<_>>>()?;
        Ok(ExpansionMatrix { degree: m, monomials, matrix: IntMatrix::with_cols(beta, rows) })
    }
}

fn check_bound(table: &CosetTable, m: usize) -> Result<()> {
    if m > table.top_length() && !table.is_complete() {
        return Err(Error::TruncatedTable(table.top_length()));
    }
    Ok(())
}

/// `M(pi_m)`: row `p` is the Schubert expansion of the `p`-th monomial of
/// `B(m)`, columns are `s_{m,1}..s_{m,beta(m)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionMatrix {
    pub degree: usize,
    pub monomials: Vec<Vec<u32>>,
    pub matrix: IntMatrix,
}

pub fn expansion_matrix(table: &CosetTable, gens: &GeneratorSet, m: usize) -> Result<ExpansionMatrix> {
    Projection::new(table, gens).expansion_matrix(m)
}

/// Order in which classes of one degree are offered as new generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// Chooses special Schubert classes degree by degree until the monomials
/// in the chosen classes span every `H^{2m}`, `m <= max_degree`.
pub fn find_generators(table: &CosetTable, max_degree: usize) -> Result<GeneratorSet> {
    find_generators_with(table, max_degree, TieBreak::LowestIndex)
}

pub fn find_generators_with(table: &CosetTable, max_degree: usize, tie: TieBreak) -> Result<GeneratorSet> {
    let mut gens = GeneratorSet::default();
    for m in 1..=max_degree {
        check_bound(table, m)?;
        let beta = table.betti_at(m);
        if beta == 0 {
            continue;
        }
        let mut rows = Projection::new(table, &gens).expansion_matrix(m)?.matrix.into_rows();
        let mut order: Vec<usize> = (1..=beta).collect();
        if tie == TieBreak::HighestIndex {
            order.reverse();
        }
        let unit = |i: usize| {
            let mut v = vec![BigInt::zero(); beta];
            v[i - 1] = BigInt::one();
            v
        };
        loop {
            let current = integer_diagonalize(&IntMatrix::with_cols(beta, rows.clone()));
            let need = current.cokernel_generators();
            if need == 0 {
                break;
            }
            let lattice = RowLattice::new(&IntMatrix::with_cols(beta, rows.clone()));
            let reducing = order.iter().copied().find(|&i| {
                let mut r = rows.clone();
                r.push(unit(i));
                integer_diagonalize(&IntMatrix::with_cols(beta, r)).cokernel_generators() < need
            });
            let pick = reducing
                .or_else(|| order.iter().copied().find(|&i| !lattice.contains(&unit(i))))
                .expect("unit vectors span the whole lattice");
            rows.push(unit(pick));
            gens.push(Generator { index: CosetIndex::new(m, pick), degree: m });
        }
    }
    Ok(gens)
}

/// A relation of the presentation, homogeneous of `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub degree: usize,
    pub polynomial: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: GeneratorSet,
    pub relations: Vec<Relation>,
    pub bound: usize,
}

impl Presentation {
    pub fn relations_of_degree(&self, m: usize) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.degree == m)
    }

    pub fn to_json(&self, table: &CosetTable, group: &str) -> Value {
        let names = self.generators.names();
        let gens: Vec<Value> = self
            .generators
            .iter()
            .zip(&names)
            .map(|(g, name)| {
                json!({
                    "name": name,
                    "degree": g.degree,
                    "index": [g.index.m, g.index.i],
                    "word": table.word(g.index).map(|w| w.0.clone()).unwrap_or_default(),
                })
            })
            .collect();
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                json!({
                    "degree": r.degree,
                    "polynomial": r.polynomial.display_with(&names),
                    "terms": polynomial_terms_json(&r.polynomial),
                })
            })
            .collect();
        json!({
            "schema": "presentation/1",
            "group": group,
            "K": table.k(),
            "generators": gens,
            "relations": rels,
            "bound": self.bound,
        })
    }
}

pub(crate) fn polynomial_terms_json(p: &Polynomial) -> Vec<Value> {
    p.terms_canonical()
        .into_iter()
        .map(|(e, c)| json!({"exps": e, "coef": big_json(c)}))
        .collect()
}

pub(crate) fn big_json(c: &BigInt) -> Value {
    serde_json::from_str(&c.to_string()).expect("integers are valid JSON numbers")
}

/// Positive leading coefficient in canonical term order.
fn normalize_sign(p: Polynomial) -> Polynomial {
    match p.terms_canonical().first() {
        Some((_, c)) if c.is_negative() => -&p,
        _ => p,
    }
}

fn poly_from_row(nvars: usize, monomials: &[Vec<u32>], row: &[BigInt]) -> Polynomial {
    Polynomial::from_terms(nvars, monomials.iter().cloned().zip(row.iter().cloned()))
}

/// Coordinates over `B(m)` of `y^b * f` for every relation `f` of degree
/// below `m` and every monomial `y^b` completing the degree.
pub fn ideal_rows(degrees: &[usize], relations: &[Relation], m: usize) -> Vec<Vec<BigInt>> {
    let monomials = monomials_of_degree(degrees, m);
    let pos: FxHashMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = vec![];
    for r in relations.iter().filter(|r| r.degree <= m) {
        for b in monomials_of_degree(degrees, m - r.degree) {
            let mut row = vec![BigInt::zero(); monomials.len()];
            for (e, c) in r.polynomial.terms() {
                let prod: Vec<u32> = e.iter().zip(&b).map(|(x, y)| x + y).collect();
                row[pos[&prod]] += c;
            }
            rows.push(row);
        }
    }
    rows
}

/// The degree-`m` part of the ideal generated by `relations` as a lattice in
/// `Z^{b(m)}`.
pub fn ideal_lattice(degrees: &[usize], relations: &[Relation], m: usize) -> IntMatrix {
    let b = monomials_of_degree(degrees, m).len();
    IntMatrix::with_cols(b, ideal_rows(degrees, relations, m))
}

/// Relations degree by degree through `max_degree`: at each degree the
/// kernel of `pi_m` modulo the part already generated by lower relations.
pub fn find_relations(table: &CosetTable, gens: &GeneratorSet, max_degree: usize) -> Result<Presentation> {
    let mut proj = Projection::new(table, gens);
    let degrees = gens.degrees();
    let n = gens.len();
    let mut relations: Vec<Relation> = vec![];
    for m in 1..=max_degree {
        let em = proj.expansion_matrix(m)?;
        let b = em.monomials.len();
        if b == 0 {
            if table.betti_at(m) > 0 {
                return Err(Error::NonSurjective { degree: m });
            }
            continue;
        }
        let snf = integer_diagonalize(&em.matrix);
        if !snf.is_surjective() {
            return Err(Error::NonSurjective { degree: m });
        }
        let rank = snf.rank();
        if rank == b {
            continue;
        }
        // left kernel of M: rows rank.. of P, put in Hermite form
        let kernel = hermite_normal_form(&IntMatrix::with_cols(b, (rank..b).map(|i| snf.p.row(i).to_vec()).collect()));
        let ideal = ideal_rows(&degrees, &relations, m);
        let new_rows: Vec<Vec<BigInt>> = if ideal.is_empty() {
            kernel.row_vecs().to_vec()
        } else {
            quotient_generators(&kernel, &ideal)
        };
        for row in new_rows {
            let p = normalize_sign(poly_from_row(n, &em.monomials, &row));
            relations.push(Relation { degree: m, polynomial: p });
        }
    }
    Ok(Presentation { generators: gens.clone(), relations, bound: max_degree })
}

/// Lifts of generators of `span(kernel) / span(ideal)`, as vectors in the
/// ambient coordinates.
fn quotient_generators(kernel: &IntMatrix, ideal: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = kernel.rows();
    let klat = RowLattice::new(kernel);
    let coords: Vec<Vec<BigInt>> = ideal
        .iter()
        .map(|v| klat.solve(v).expect("the ideal lies in the kernel of pi"))
        .collect();
    let c = IntMatrix::with_cols(k, coords);
    let snf = integer_diagonalize(&c);
    let factors = snf.invariant_factors();
    // rowspan(C) = span{d_j b_j} where b_j are the rows of Q^-1
    let qlat = RowLattice::new(&snf.q);
    let mut out = vec![];
    for j in 0..k {
        if factors.get(j).is_some_and(One::is_one) {
            continue;
        }
        let mut e = vec![BigInt::zero(); k];
        e[j] = BigInt::one();
        let bj = qlat.solve(&e).expect("Q is unimodular");
        out.push(kernel.left_apply(&bj));
    }
    // a tidier basis of the same quotient lift
    if out.is_empty() {
        return out;
    }
    reduce_against(hermite_normal_form(&IntMatrix::with_cols(kernel.cols(), out)).into_rows(), ideal)
}

/// Shortens each vector by subtracting ideal vectors while that lowers the
/// sum of absolute values. Leaves lattice classes unchanged.
fn reduce_against(mut rows: Vec<Vec<BigInt>>, ideal: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let norm = |v: &[BigInt]| v.iter().map(|x| x.abs()).sum::<BigInt>();
    for row in rows.iter_mut() {
        let mut improved = true;
        while improved {
            improved = false;
            for g in ideal {
                for sign in [BigInt::one(), -BigInt::one()] {
                    let cand: Vec<BigInt> = row.iter().zip(g).map(|(a, b)| a - &sign * b).collect();
                    if norm(&cand) < norm(row) {
                        *row = cand;
                        improved = true;
                    }
                }
            }
        }
    }
    rows
}

/// `G_{m,k}` with `pi(G_{m,k}) = s_{m,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertPolynomial {
    pub class: CosetIndex,
    pub polynomial: Polynomial,
}

/// `(G_{m,1} .. G_{m,beta(m)}) = Q [P] (y^{a_1} .. y^{a_b})` from the Smith
/// form `P M Q` of the expansion matrix, where `[P]` is the first `beta(m)`
/// rows of `P`. Each result is re-expanded and checked.
pub fn schubert_polynomials(table: &CosetTable, gens: &GeneratorSet, m: usize) -> Result<Vec<SchubertPolynomial>> {
    let mut proj = Projection::new(table, gens);
    schubert_polynomials_with(&mut proj, m)
}

pub fn schubert_polynomials_with(proj: &mut Projection<'_>, m: usize) -> Result<Vec<SchubertPolynomial>> {
    let em = proj.expansion_matrix(m)?;
    let beta = em.matrix.cols();
    let b = em.monomials.len();
    if beta == 0 {
        return Ok(vec![]);
    }
    let snf = integer_diagonalize(&em.matrix);
    if !snf.is_surjective() {
        return Err(Error::NonSurjective { degree: m });
    }
    let top_p = IntMatrix::with_cols(b, (0..beta).map(|i| snf.p.row(i).to_vec()).collect());
    let coeffs = snf.q.mul(&top_p).into_rows();
    let kernel_rows: Vec<Vec<BigInt>> = (snf.rank()..b).map(|i| snf.p.row(i).to_vec()).collect();
    let coeffs = if kernel_rows.is_empty() {
        coeffs
    } else {
        let kernel = hermite_normal_form(&IntMatrix::with_cols(b, kernel_rows)).into_rows();
        reduce_against(coeffs, &kernel)
    };
    let n = proj.generators().len();
    let mut out = vec![];
    for (k, row) in coeffs.iter().enumerate() {
        let p = poly_from_row(n, &em.monomials, row);
        let class = CosetIndex::new(m, k + 1);
        let image = proj.image(&p)?;
        if image.terms != vec![(class, BigInt::one())] {
            return Err(Error::Verification(format!("pi(G{class}) = {image}")));
        }
        out.push(SchubertPolynomial { class, polynomial: p });
    }
    Ok(out)
}
