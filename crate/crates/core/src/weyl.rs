//! Numerical Weyl group and minimal coset representatives `W(P;G)`.
//!
//! The simple reflection `sigma_i` fixes `omega_k` for `k != i` and sends
//! `omega_i` to `omega_i - alpha_i`, where `alpha_i` is row `i` of the Cartan
//! matrix. A word `(i_1, ..., i_m)` denotes `sigma_{i_1} o ... o sigma_{i_m}`,
//! so the last letter acts first.
//!
//! Cosets `wW(P)` are detected through the orbit of `v_K = sum_{j in K} omega_j`,
//! whose stabilizer is `W(P)`. A breadth-first search over that orbit visits
//! each coset at depth `l(w)`. New points are generated from every parent by
//! prepending a letter `a` with `<v, alpha_a^vee> > 0`; letters are tried in
//! ascending order in the outer loop and parents in table order in the inner
//! loop, so the first arrival at a point carries its lexicographically least
//! reduced word and each level comes out already sorted.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};

/// A weight written in the basis of fundamental weights.
pub type Weight = Vec<BigInt>;

/// A sequence of simple-reflection indices (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord(pub Vec<u8>);

impl ReducedWord {
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    /// Parses `[3,4]`, `[3, 4]` or `3,4`; `[]` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if inner.is_empty() {
            return Ok(ReducedWord(vec![]));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad letter `{}` in word `{s}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(ReducedWord)
    }
}

/// An element of `W(G)` acting on the weight lattice, as an integer matrix
/// (columns are images of the fundamental weights).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<BigInt>>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        WeylElement { matrix }
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `self o other`: `other` acts first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (k, a) in self.matrix[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell += a * &other.matrix[k][j];
                }
            }
        }
        WeylElement { matrix: out }
    }

    pub fn apply(&self, v: &[BigInt]) -> Weight {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank())
    }

    pub fn determinant(&self) -> BigInt {
        crate::snf::IntMatrix::from_rows(self.matrix.clone()).determinant()
    }
}

fn check_letter(c: &CartanMatrix, i: usize) -> Result<()> {
    if i == 0 || i > c.rank() {
        return Err(Error::IndexOutOfRange { index: i, bound: c.rank() });
    }
    Ok(())
}

/// The matrix of `sigma_i` (1-based `i`).
pub fn simple_reflection(c: &CartanMatrix, i: usize) -> Result<WeylElement> {
    check_letter(c, i)?;
    let n = c.rank();
    let mut e = WeylElement::identity(n);
    // column i becomes e_i - alpha_i
    for j in 0..n {
        e.matrix[j][i - 1] -= BigInt::from(c.get(i - 1, j));
    }
    Ok(e)
}

/// The matrix of `sigma_{i_1} o ... o sigma_{i_m}`.
pub fn element_of_word(c: &CartanMatrix, word: &[u8]) -> Result<WeylElement> {
    let mut acc = WeylElement::identity(c.rank());
    for &a in word {
        acc = acc.compose(&simple_reflection(c, a as usize)?);
    }
    Ok(acc)
}

/// Applies `sigma_a` (1-based) to a weight in place.
#[inline]
pub fn reflect_weight(c: &CartanMatrix, a: usize, v: &mut [BigInt]) {
    let coeff = v[a - 1].clone();
    if coeff.is_zero() {
        return;
    }
    for (j, x) in v.iter_mut().enumerate() {
        let cij = c.get(a - 1, j);
        if cij != 0 {
            *x -= &coeff * cij;
        }
    }
}

/// Applies the word's element to `v` (last letter first).
pub fn act_by_word(c: &CartanMatrix, word: &[u8], v: &[BigInt]) -> Result<Weight> {
    let mut out = v.to_vec();
    for &a in word.iter().rev() {
        check_letter(c, a as usize)?;
        reflect_weight(c, a as usize, &mut out);
    }
    Ok(out)
}

/// Position `w_{m,i}` in the canonical index; `i` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetIndex {
    pub m: usize,
    pub i: usize,
}

impl CosetIndex {
    pub fn new(m: usize, i: usize) -> Self {
        CosetIndex { m, i }
    }
}

impl fmt::Display for CosetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetEntry {
    word: ReducedWord,
    orbit: Weight,
}

impl CosetEntry {
    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// The image `w(v_K)` identifying the coset.
    pub fn orbit_point(&self) -> &[BigInt] {
        &self.orbit
    }

    /// The element's matrix, rebuilt from its word.
    pub fn element(&self, c: &CartanMatrix) -> WeylElement {
        element_of_word(c, &self.word.0).expect("stored words are in range")
    }
}

/// Resource bounds for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cosets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cosets: 10_000_000 }
    }
}

/// The ordered set `W(P;G)` with minimized words and the `(m,i)` index.
#[derive(Debug, Clone)]
pub struct CosetTable {
    cartan: CartanMatrix,
    k: Vec<usize>,
    levels: Vec<Vec<CosetEntry>>,
    max_length: Option<usize>,
    complete: bool,
    lookup: FxHashMap<Weight, CosetIndex>,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
            && self.k == other.k
            && self.levels == other.levels
            && self.max_length == other.max_length
            && self.complete == other.complete
    }
}

fn normalize_k(c: &CartanMatrix, k: &[usize]) -> Result<Vec<usize>> {
    if k.is_empty() {
        return Err(Error::EmptyK);
    }
    let mut k = k.to_vec();
    for &j in &k {
        check_letter(c, j)?;
    }
    k.sort_unstable();
    k.dedup();
    Ok(k)
}

/// `v_K = sum_{j in K} omega_j`.
pub fn dominant_weight(n: usize, k: &[usize]) -> Weight {
    let mut v = vec![BigInt::zero(); n];
    for &j in k {
        v[j - 1] = BigInt::one();
    }
    v
}

/// Enumerates `W(P;G)` with the default [`Limits`].
pub fn enumerate_cosets(c: &CartanMatrix, k: &[usize], max_length: Option<usize>) -> Result<CosetTable> {
    enumerate_cosets_with_limits(c, k, max_length, Limits::default())
}

pub fn enumerate_cosets_with_limits(
    c: &CartanMatrix,
    k: &[usize],
    max_length: Option<usize>,
    limits: Limits,
) -> Result<CosetTable> {
    let k = normalize_k(c, k)?;
    let n = c.rank();
    let start = dominant_weight(n, &k);
    let mut lookup = FxHashMap::default();
    lookup.insert(start.clone(), CosetIndex::new(0, 1));
    let mut levels = vec![vec![CosetEntry { word: ReducedWord::default(), orbit: start }]];
    let mut count = 1usize;
    let complete;
    loop {
        let m = levels.len() - 1;
        let frontier = &levels[m];
        if max_length == Some(m) {
            complete = !frontier.iter().any(|e| e.orbit.iter().any(|x| x.is_positive()));
            break;
        }
        let mut next: Vec<CosetEntry> = Vec::new();
        for a in 1..=n {
            for parent in frontier {
                if !parent.orbit[a - 1].is_positive() {
                    continue;
                }
                let mut p = parent.orbit.clone();
                reflect_weight(c, a, &mut p);
                if lookup.contains_key(&p) {
                    continue;
                }
                count += 1;
                if count > limits.max_cosets {
                    return Err(Error::ResourceLimit(format!(
                        "more than {} cosets (reached length {})",
                        limits.max_cosets,
                        m + 1
                    )));
                }
                lookup.insert(p.clone(), CosetIndex::new(m + 1, next.len() + 1));
                let mut word = Vec::with_capacity(m + 1);
                word.push(a as u8);
                word.extend_from_slice(&parent.word.0);
                next.push(CosetEntry { word: ReducedWord(word), orbit: p });
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        debug_assert!(next.windows(2).all(|w| w[0].word < w[1].word));
        levels.push(next);
    }
    Ok(CosetTable { cartan: c.clone(), k, levels, max_length, complete, lookup })
}

impl CosetTable {
    /// Rebuilds a table from its words alone, recomputing every orbit point
    /// and checking that the words are distinct cosets of the stated lengths.
    pub fn from_words(
        c: &CartanMatrix,
        k: &[usize],
        max_length: Option<usize>,
        complete: bool,
        levels: Vec<Vec<ReducedWord>>,
    ) -> Result<CosetTable> {
        let k = normalize_k(c, k)?;
        let start = dominant_weight(c.rank(), &k);
        let mut lookup = FxHashMap::default();
        let mut out = Vec::with_capacity(levels.len());
        for (m, words) in levels.into_iter().enumerate() {
            let mut level = Vec::with_capacity(words.len());
            for (i, word) in words.into_iter().enumerate() {
                if word.len() != m {
                    return Err(Error::Verification(format!("word {word} stored at length {m}")));
                }
                let orbit = act_by_word(c, &word.0, &start)?;
                if lookup.insert(orbit.clone(), CosetIndex::new(m, i + 1)).is_some() {
                    return Err(Error::Verification(format!("duplicate coset {word}")));
                }
                level.push(CosetEntry { word, orbit });
            }
            out.push(level);
        }
        if out.first().map(|l| l.len()) != Some(1) {
            return Err(Error::Verification("length 0 must hold exactly the identity".into()));
        }
        Ok(CosetTable { cartan: c.clone(), k, levels: out, max_length, complete, lookup })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn max_length_bound(&self) -> Option<usize> {
        self.max_length
    }

    /// True when no coset beyond the stored lengths exists.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The largest length present.
    pub fn top_length(&self) -> usize {
        self.levels.len() - 1
    }

    /// `beta(m)` for `m = 0..=top_length()`.
    pub fn betti(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn betti_at(&self, m: usize) -> usize {
        self.levels.get(m).map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self, m: usize) -> &[CosetEntry] {
        self.levels.get(m).map_or(&[], Vec::as_slice)
    }

    /// Entries in `(m,i)` order.
    pub fn iter(&self) -> impl Iterator<Item = (CosetIndex, &CosetEntry)> {
        self.levels.iter().enumerate().flat_map(|(m, level)| {
            level.iter().enumerate().map(move |(i, e)| (CosetIndex::new(m, i + 1), e))
        })
    }

    pub fn entry(&self, idx: CosetIndex) -> Result<&CosetEntry> {
        let level = self.levels.get(idx.m).ok_or_else(|| {
            if self.complete {
                Error::IndexOutOfRange { index: idx.m, bound: self.top_length() }
            } else {
                Error::TruncatedTable(self.top_length())
            }
        })?;
        if idx.i == 0 || idx.i > level.len() {
            return Err(Error::IndexOutOfRange { index: idx.i, bound: level.len() });
        }
        Ok(&level[idx.i - 1])
    }

    pub fn word(&self, idx: CosetIndex) -> Result<&ReducedWord> {
        self.entry(idx).map(CosetEntry::word)
    }

    /// Locates the coset of an arbitrary word.
    pub fn lookup_word(&self, word: &[u8]) -> Result<CosetIndex> {
        let start = dominant_weight(self.cartan.rank(), &self.k);
        let p = act_by_word(&self.cartan, word, &start)?;
        match self.lookup.get(&p) {
            Some(&idx) => Ok(idx),
            None if !self.complete => Err(Error::TruncatedTable(self.top_length())),
            None => Err(Error::NotFound(format!("coset of {}", ReducedWord(word.to_vec())))),
        }
    }

    /// The unique element of maximal length.
    pub fn top_element(&self) -> Result<(CosetIndex, &ReducedWord)> {
        if !self.complete {
            return Err(Error::TruncatedTable(self.top_length()));
        }
        let m = self.top_length();
        let level = &self.levels[m];
        if level.len() != 1 {
            return Err(Error::Verification(format!("{} elements of maximal length", level.len())));
        }
        Ok((CosetIndex::new(m, 1), &level[0].word))
    }

    /// JSON dump, schema `coset-table/1`.
    pub fn to_json(&self, group: &str) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .map(|(idx, e)| json!({"m": idx.m, "i": idx.i, "word": e.word.0}))
            .collect();
        json!({
            "schema": "coset-table/1",
            "group": group,
            "K": self.k,
            "complete": self.complete,
            "betti": self.betti(),
            "entries": entries,
        })
    }
}
