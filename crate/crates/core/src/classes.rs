//! Class specifiers used on the command line.
//!
//! A monomial is a sequence of factors separated by whitespace or `*`. A
//! factor is an atom with an optional power `^e` (or `xe`):
//!
//! - `[3,4]` a word, reduced to its coset
//! - `(2,1)` the index `w_{2,1}`
//! - `c2` the class of `[k-1,k]` on a Grassmannian `A_{n-1}/P_k`
//! - `{2,1}` a partition on a Grassmannian
//! - `y3` the generator of degree 3, `y3_2` the second one when a degree
//!   has several

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{grassmannian_shape, partition_index, Partition};
use crate::presentation::GeneratorSet;
use crate::weyl::{CosetIndex, CosetTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassAtom {
    Word(Vec<u8>),
    Index(CosetIndex),
    Chern(usize),
    Partition(Partition),
    Generator { degree: usize, which: usize },
}

impl fmt::Display for ClassAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassAtom::Word(w) => {
                let s: Vec<String> = w.iter().map(|a| a.to_string()).collect();
                write!(f, "[{}]", s.join(","))
            }
            ClassAtom::Index(i) => write!(f, "{i}"),
            ClassAtom::Chern(r) => write!(f, "c{r}"),
            ClassAtom::Partition(p) => {
                let s: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", s.join(","))
            }
            ClassAtom::Generator { degree, which: 1 } => write!(f, "y{degree}"),
            ClassAtom::Generator { degree, which } => write!(f, "y{degree}_{which}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub atom: ClassAtom,
    pub power: usize,
}

/// A product of classes as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub factors: Vec<Factor>,
}

impl Monomial {
    pub fn parse(text: &str) -> Result<Self> {
        Parser { s: text.as_bytes(), pos: 0, text }.monomial()
    }

    pub fn uses_generators(&self) -> bool {
        self.factors.iter().any(|f| matches!(f.atom, ClassAtom::Generator { .. }))
    }

    /// Largest generator degree mentioned.
    pub fn max_generator_degree(&self) -> usize {
        self.factors
            .iter()
            .filter_map(|f| match f.atom {
                ClassAtom::Generator { degree, .. } => Some(degree),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// One coset index per factor occurrence, powers expanded.
    pub fn resolve(&self, table: &CosetTable, gens: Option<&GeneratorSet>) -> Result<Vec<CosetIndex>> {
        let mut out = vec![];
        for f in &self.factors {
            let idx = resolve_atom(&f.atom, table, gens)?;
            out.extend(std::iter::repeat_n(idx, f.power));
        }
        Ok(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| if x.power == 1 { x.atom.to_string() } else { format!("{}^{}", x.atom, x.power) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn resolve_atom(atom: &ClassAtom, table: &CosetTable, gens: Option<&GeneratorSet>) -> Result<CosetIndex> {
    match atom {
        ClassAtom::Word(w) => table.lookup_word(w),
        ClassAtom::Index(i) => table.entry(*i).map(|_| *i),
        ClassAtom::Chern(r) => {
            let (_, k) = grassmannian_shape(table)?;
            if *r == 0 || *r > k {
                return Err(Error::OutOfRange(format!("c{r} needs 1 <= r <= {k}")));
            }
            let word: Vec<u8> = (k - r + 1..=k).map(|a| a as u8).collect();
            table.lookup_word(&word)
        }
        ClassAtom::Partition(p) => {
            let (n, k) = grassmannian_shape(table)?;
            if !p.fits(k, n - k) {
                return Err(Error::NotFound(format!("partition {p} outside the {k}x{} box", n - k)));
            }
            partition_index(table)?.get(p).copied().ok_or_else(|| Error::NotFound(format!("partition {p}")))
        }
        ClassAtom::Generator { degree, which } => {
            let gens = gens.ok_or_else(|| Error::NotFound(format!("{atom}: no generators available")))?;
            gens.iter()
                .filter(|g| g.degree == *degree)
                .nth(which - 1)
                .map(|g| g.index)
                .ok_or_else(|| Error::NotFound(format!("generator {atom}")))
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'*')) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("number too large"))
    }

    fn list(&mut self, close: u8) -> Result<Vec<usize>> {
        self.pos += 1;
        let mut out = vec![];
        let mut after_comma = false;
        loop {
            while self.peek() == Some(b' ') {
                self.pos += 1;
            }
            match self.peek() {
                Some(c) if c == close && !after_comma => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(b',') if !out.is_empty() && !after_comma => {
                    self.pos += 1;
                    after_comma = true;
                }
                Some(c) if c.is_ascii_digit() && (out.is_empty() || after_comma) => {
                    out.push(self.number()?);
                    after_comma = false;
                }
                _ => return Err(self.err("malformed list")),
            }
        }
    }

    fn atom(&mut self) -> Result<ClassAtom> {
        match self.peek() {
            Some(b'[') => {
                let v = self.list(b']')?;
                let letters = v
                    .into_iter()
                    .map(|x| u8::try_from(x).map_err(|_| self.err("letter too large")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ClassAtom::Word(letters))
            }
            Some(b'(') => match self.list(b')')?.as_slice() {
                [m, i] if *i >= 1 => Ok(ClassAtom::Index(CosetIndex::new(*m, *i))),
                _ => Err(self.err("index must be (m,i) with i >= 1")),
            },
            Some(b'{') => {
                let v = self.list(b'}')?;
                Partition::new(v).map(ClassAtom::Partition)
            }
            Some(b'c') => {
                self.pos += 1;
                Ok(ClassAtom::Chern(self.number()?))
            }
            Some(b'y') => {
                self.pos += 1;
                let degree = self.number()?;
                let which = if self.peek() == Some(b'_') {
                    self.pos += 1;
                    self.number()?
                } else {
                    1
                };
                if degree == 0 || which == 0 {
                    return Err(self.err("generator degree and position start at 1"));
                }
                Ok(ClassAtom::Generator { degree, which })
            }
            _ => Err(self.err("expected a class")),
        }
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut factors = vec![];
        self.skip_separators();
        while self.pos < self.s.len() {
            let atom = self.atom()?;
            let power = match self.peek() {
                Some(b'^') => {
                    self.pos += 1;
                    self.number()?
                }
                Some(b'x') if self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) => {
                    self.pos += 1;
                    self.number()?
                }
                _ => 1,
            };
            if !matches!(self.peek(), None | Some(b' ' | b'\t' | b'*')) {
                return Err(self.err("unexpected character"));
            }
            factors.push(Factor { atom, power });
            self.skip_separators();
        }
        if factors.is_empty() {
            return Err(self.err("empty monomial"));
        }
        Ok(Monomial { factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanMatrix, Series};
    use crate::weyl::enumerate_cosets;

    #[test]
    fn parse_forms() {
        let m = Monomial::parse("c1^3 c2^2").unwrap();
        assert_eq!(
            m.factors,
            vec![Factor { atom: ClassAtom::Chern(1), power: 3 }, Factor { atom: ClassAtom::Chern(2), power: 2 }]
        );
        assert_eq!(Monomial::parse("[4]x5").unwrap().factors[0], Factor { atom: ClassAtom::Word(vec![4]), power: 5 });
        assert_eq!(Monomial::parse("[3, 4]*(2,1)").unwrap().factors.len(), 2);
        assert_eq!(Monomial::parse("y3_2^4 {2,1}").unwrap().to_string(), "y3_2^4 {2,1}");
        assert_eq!(Monomial::parse("y1^21").unwrap().to_string(), "y1^21");
        for bad in ["", "c", "[1,]", "(1)", "z2", "c1^", "c1c2", "y0", "(3,0)"] {
            assert!(matches!(Monomial::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn resolve_on_grassmannian() {
        let t = enumerate_cosets(&CartanMatrix::builtin(Series::A, 8).unwrap(), &[4], None).unwrap();
        let m = Monomial::parse("c2 [5,4] {1,1} (2,2) [4,3,5,4]").unwrap();
        let idx = m.resolve(&t, None).unwrap();
        assert_eq!(idx, vec![CosetIndex::new(2, 1), CosetIndex::new(2, 2), CosetIndex::new(2, 1), CosetIndex::new(2, 2), CosetIndex::new(4, 4)]);
        assert!(Monomial::parse("c5").unwrap().resolve(&t, None).is_err());
        assert!(Monomial::parse("y1").unwrap().resolve(&t, None).is_err());
        assert_eq!(Monomial::parse("c1^3").unwrap().resolve(&t, None).unwrap().len(), 3);
    }
}
