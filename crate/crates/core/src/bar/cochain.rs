use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::linalg::Rational;

/// A tensor word of dual basis labels `p_{x_1} ⊗ ... ⊗ p_{x_n}`.
pub type Word = SmallVec<[u8; 16]>;

/// A cochain in the bar complex: a finite combination of tensor words of a
/// fixed length `n`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Cochain {
    n: usize,
    terms: BTreeMap<Word, Rational>,
}

impl Cochain {
    pub fn zero(n: usize) -> Self {
        Cochain { n, terms: BTreeMap::new() }
    }

    /// The unit in degree 0.
    pub fn one() -> Self {
        Cochain::from_terms(0, [(Word::new(), Rational::from_int(1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(n: usize, terms: I) -> Self {
        let mut c = Cochain::zero(n);
        for (w, x) in terms {
            c.add_term(w, &x);
        }
        c
    }

    pub fn add_term(&mut self, w: Word, x: &Rational) {
        assert_eq!(w.len(), self.n, "word length does not match cochain degree");
        if x.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(x.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + x;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u8]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.add_scaled(&Rational::from_int(1), other)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add_scaled(&Rational::from_int(-1), other)
    }

    pub fn add_scaled(&self, c: &Rational, other: &Cochain) -> Cochain {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() && self.n != other.n {
            return other.scale(c);
        }
        assert_eq!(self.n, other.n, "adding cochains of different degrees");
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        let mut out = Cochain::zero(self.n);
        if !c.is_zero() {
            for (w, x) in &self.terms {
                out.terms.insert(w.clone(), x * c);
            }
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&Rational::from_int(-1))
    }

    /// Cup product: concatenation of tensor words.
    pub fn cup(&self, other: &Cochain) -> Cochain {
        let mut out = Cochain::zero(self.n + other.n);
        for (u, x) in &self.terms {
            for (v, y) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(x * y));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Cochain {
        (0..k).fold(Cochain::one(), |acc, _| acc.cup(self))
    }

    /// Scales so that the first term (in word order) has coefficient 1.
    pub fn normalized(&self) -> Cochain {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn map_terms(&self, f: impl Fn(&Word) -> Vec<(Word, Rational)>) -> Cochain {
        let mut out = Cochain::zero(self.n);
        for (w, x) in &self.terms {
            for (v, y) in f(w) {
                out.add_term(v, &(x * &y));
            }
        }
        out
    }

    /// Formats with the given label names, e.g. `1 [b|ab] + 1 [ba|b]`.
    pub fn format_with(&self, names: &dyn Fn(u8) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let inner: Vec<String> = w.iter().map(|&l| names(l)).collect();
                format!("{c} [{}]", inner.join("|"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain<{}>({})", self.n, self.format_with(&|l| l.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u8]) -> Word {
        Word::from_slice(v)
    }

    #[test]
    fn cup_concatenates_and_is_associative() {
        let x = Cochain::from_terms(1, [(w(&[0]), Rational::from_int(1)), (w(&[1]), Rational::from_int(2))]);
        let y = Cochain::from_terms(2, [(w(&[1, 2]), Rational::from_int(-1))]);
        let xy = x.cup(&y);
        assert_eq!(xy.n(), 3);
        assert_eq!(xy.coefficient(&[1, 1, 2]), Rational::from_int(-2));
        assert_eq!(x.cup(&y).cup(&x), x.cup(&y.cup(&x)));
        assert_eq!(Cochain::one().cup(&x), x);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Cochain::from_terms(1, [(w(&[0]), Rational::from_int(1))]);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.scale(&Rational::from_int(3)).normalized(), x);
    }
}
