//! Sparse multivariate polynomials with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

/// The polynomials the triangular operator consumes: homogeneous, with the
/// degree equal to the number of variables.
pub type GradedIntPolynomial = Polynomial;

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    /// The variable `x_i`, zero-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Exponents, coef: BigInt) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exps, coef);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in canonical order: higher total degree first, then
    /// lexicographically larger exponent vectors first.
    pub fn terms_canonical(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    pub fn add_term(&mut self, exps: Exponents, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Common degree of all terms under the given variable weights, or
    /// `None` if the polynomial is not homogeneous. The zero polynomial has
    /// no degree either.
    pub fn weighted_degree(&self, weights: &[usize]) -> Option<usize> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: usize = e.iter().zip(weights).map(|(&x, &w)| x as usize * w).sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        self.weighted_degree(&vec![1; self.nvars])
    }

    /// Highest power of `x_i` occurring.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Substitutes polynomials (all in a common ring) for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, Polynomial::nvars);
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::monomial(vec![0; target], c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Formats with the given variable names, terms in canonical order.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms_canonical().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
                .collect();
            if vars.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&vars.join("*"));
            }
        }
        s
    }

    /// Parses sums of products such as `2*y4^2 - 3 y4 y3 y1 + y1^4`, with
    /// `*` or whitespace between factors.
    pub fn parse(text: &str, names: &[&str]) -> Result<Self> {
        let n = names.len();
        let mut out = Polynomial::zero(n);
        let cleaned = text.replace('−', "-");
        let mut chunks: Vec<(bool, String)> = vec![];
        let mut cur = String::new();
        let mut sign = false;
        for ch in cleaned.chars() {
            if ch == '+' || ch == '-' {
                if !cur.trim().is_empty() {
                    chunks.push((sign, std::mem::take(&mut cur)));
                } else if !chunks.is_empty() || !cur.trim().is_empty() {
                    return Err(Error::Parse(format!("dangling sign in `{text}`")));
                }
                cur.clear();
                sign = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            chunks.push((sign, cur));
        }
        if chunks.is_empty() {
            return Err(Error::Parse(format!("empty polynomial `{text}`")));
        }
        for (neg, chunk) in chunks {
            let mut coef = BigInt::one();
            let mut e = vec![0u32; n];
            for factor in chunk.split(|c: char| c == '*' || c.is_whitespace()).filter(|f| !f.is_empty()) {
                if let Ok(k) = factor.parse::<BigInt>() {
                    coef *= k;
                    continue;
                }
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (
                        b,
                        p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let i = names
                    .iter()
                    .position(|&nm| nm == base)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{base}`")))?;
                e[i] += power;
            }
            out.add_term(e, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_cancels() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expect = &x.pow(2) - &y.pow(2);
        assert_eq!(prod, expect);
        assert!((&prod - &expect).is_zero());
        assert_eq!(prod.homogeneous_degree(), Some(2));
    }

    #[test]
    fn parse_and_display() {
        let names = ["y1", "y3", "y4", "y6"];
        let p = Polynomial::parse("y4^2 - 2y4 y3 y1 + y4 y1^4", &names).unwrap_err();
        assert!(matches!(p, Error::Parse(_)));
        let p = Polynomial::parse("y4^2 - 2*y4*y3*y1 + y4*y1^4", &names).unwrap();
        assert_eq!(p.coefficient(&[1, 1, 1, 0]), BigInt::from(-2));
        assert_eq!(p.weighted_degree(&[1, 3, 4, 6]), Some(8));
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        assert_eq!(p.display_with(&owned), "y1^4*y4 - 2*y1*y3*y4 + y4^2");
        let q = Polynomial::parse("-y6 y3 + 2 y4^2 y1", &names).unwrap();
        assert_eq!(q.coefficient(&[0, 1, 0, 1]), BigInt::from(-1));
    }

    #[test]
    fn inhomogeneous_has_no_degree() {
        let p = Polynomial::parse("x^2 + x", &["x"]).unwrap();
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(1).homogeneous_degree(), None);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in proptest::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5),
                       b in proptest::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5),
                       c in proptest::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5)) {
            let mk = |v: &Vec<(u32, u32, i64)>| Polynomial::from_terms(2, v.iter().map(|&(i, j, k)| (vec![i, j], BigInt::from(k))));
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!(!(&a - &a).terms().any(|(_, c)| c.is_zero()));
        }
    }
}
