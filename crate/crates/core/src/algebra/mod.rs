//! Finite dimensional connected graded algebras given by generators and
//! homogeneous relations.
//!
//! The degree `d` part is computed as the quotient of the span of words of
//! degree `d` by the span of all `u r w` with `r` a relation. The chosen
//! basis consists of the lexicographically smallest words that stay
//! independent modulo the ideal, so a word is a basis word exactly when it is
//! not the leading (largest) word of an ideal element.

mod hilbert;
mod json;

use std::collections::HashMap;
use std::ops::Range;

pub use hilbert::{expand_rational_series, HilbertSeries};
pub use json::{AlgebraFile, BasisEntry, PresentationFile, ProductEntry};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Rational, SparseVec};

pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    /// Optional group degree, written in cycle notation such as `(12)`.
    pub gdeg: Option<String>,
}

/// Homogeneous relation: a sum of scalar multiples of generator words.
pub type Relation = Vec<(Rational, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: usize,
    /// The generator word this basis element is the class of, if known.
    pub word: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    basis: Vec<BasisElement>,
    by_degree: Vec<Range<usize>>,
    products: Vec<Vec<SparseVec>>,
    /// Class of each generator in the algebra.
    gen_elements: Vec<SparseVec>,
    label_index: HashMap<String, usize>,
    complete: bool,
}

impl Presentation {
    /// Builds a presentation from generator names and relations written with
    /// generator names, e.g. `(1, "ab")` when all names are single characters.
    pub fn from_words(generators: &[(&str, usize)], relations: &[Vec<(i64, &str)>]) -> Self {
        let gens: Vec<Generator> =
            generators.iter().map(|(n, d)| Generator { name: n.to_string(), degree: *d, gdeg: None }).collect();
        let idx = |c: char| gens.iter().position(|g| g.name == c.to_string()).expect("unknown generator");
        let rels = relations
            .iter()
            .map(|r| r.iter().map(|(c, w)| (Rational::from_int(*c), w.chars().map(idx).collect())).collect())
            .collect();
        Presentation { generators: gens, relations: rels }
    }

    pub fn word_degree(&self, word: &[usize]) -> usize {
        word.iter().map(|&g| self.generators[g].degree).sum()
    }

    pub fn word_label(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|&g| self.generators[g].name.as_str()).collect()
        }
    }

    fn validate(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::Input(format!("generator {} has degree 0", g.name)));
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Input(format!("duplicate generator {}", g.name)));
            }
        }
        for (index, r) in self.relations.iter().enumerate() {
            for (_, w) in r {
                if w.iter().any(|&g| g >= self.generators.len()) {
                    return Err(Error::Input(format!("relation {index} uses an unknown generator")));
                }
            }
            let degrees: Vec<usize> = r.iter().map(|(_, w)| self.word_degree(w)).collect();
            if degrees.is_empty() || degrees.contains(&0) || degrees.iter().any(|&d| d != degrees[0]) {
                return Err(Error::NonHomogeneousRelation { index });
            }
        }
        Ok(())
    }
}

/// All generator words of total degree `d`, in lexicographic order.
fn words_of_degree(pres: &Presentation, d: usize) -> Vec<Vec<usize>> {
    fn rec(pres: &Presentation, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (g, gen) in pres.generators.iter().enumerate() {
            if gen.degree <= left {
                cur.push(g);
                rec(pres, left - gen.degree, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(pres, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Degree `d` slice of the quotient: words, ideal echelon, and basis words.
struct DegreeSlice {
    words: Vec<Vec<usize>>,
    position: HashMap<Vec<usize>, usize>,
    ideal: Echelon,
    /// Basis index (global) of each non pivot coordinate.
    basis_of_coord: HashMap<usize, usize>,
}

impl DegreeSlice {
    // Coordinates are reversed so that pivots fall on the largest words.
    fn coord(&self, word: &[usize]) -> usize {
        self.words.len() - 1 - self.position[word]
    }

    fn normal_form(&self, word: &[usize]) -> SparseVec {
        let v = SparseVec::unit(self.coord(word));
        self.ideal.reduce(&v).reindex(|c| self.basis_of_coord[&c])
    }
}

impl GradedAlgebra {
    /// Degreewise quotient of the free algebra by the two sided ideal of the
    /// relations, up to `max_degree`. Stops early once the algebra vanishes.
    pub fn from_presentation(pres: &Presentation, max_degree: usize) -> Result<Self> {
        pres.validate()?;
        let max_gen = pres.generators.iter().map(|g| g.degree).max().unwrap_or(1);
        let mut basis = vec![BasisElement { label: "1".into(), degree: 0, word: Some(vec![]) }];
        let mut by_degree = vec![0..1];
        let mut slices: Vec<Option<DegreeSlice>> = vec![None];
        let mut zero_run = 0;
        let mut complete = pres.generators.is_empty();
        for d in 1..=max_degree {
            if complete {
                break;
            }
            let words = words_of_degree(pres, d);
            let position: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let n = words.len();
            let mut ideal = Echelon::new(n);
            for r in &pres.relations {
                let e = pres.word_degree(&r[0].1);
                if e > d {
                    continue;
                }
                for i in 0..=(d - e) {
                    let lefts = if i == 0 { vec![vec![]] } else { words_of_degree(pres, i) };
                    let rights = if d - e - i == 0 { vec![vec![]] } else { words_of_degree(pres, d - e - i) };
                    for u in &lefts {
                        for w in &rights {
                            let v = SparseVec::from_pairs(r.iter().map(|(c, x)| {
                                let full: Vec<usize> = u.iter().chain(x).chain(w).cloned().collect();
                                (n - 1 - position[&full], c.clone())
                            }));
                            let _ = ideal.insert(&v);
                        }
                    }
                }
            }
            let start = basis.len();
            let mut basis_of_coord = HashMap::new();
            for (i, w) in words.iter().enumerate() {
                let coord = n - 1 - i;
                if !ideal.is_pivot(coord) {
                    basis_of_coord.insert(coord, basis.len());
                    basis.push(BasisElement { label: pres.word_label(w), degree: d, word: Some(w.clone()) });
                }
            }
            by_degree.push(start..basis.len());
            if basis.len() == start {
                zero_run += 1;
                if zero_run >= max_gen {
                    complete = true;
                }
            } else {
                zero_run = 0;
            }
            slices.push(Some(DegreeSlice { words, position, ideal, basis_of_coord }));
        }
        while by_degree.len() > 1 && by_degree.last().unwrap().is_empty() {
            by_degree.pop();
        }
        let nb = basis.len();
        let mut products = vec![vec![SparseVec::new(); nb]; nb];
        for i in 0..nb {
            for j in 0..nb {
                let (wi, wj) = (basis[i].word.as_ref().unwrap(), basis[j].word.as_ref().unwrap());
                let d = basis[i].degree + basis[j].degree;
                products[i][j] = if d == 0 {
                    SparseVec::unit(0)
                } else if d < slices.len() {
                    let w: Vec<usize> = wi.iter().chain(wj).cloned().collect();
                    slices[d].as_ref().unwrap().normal_form(&w)
                } else {
                    SparseVec::new()
                };
            }
        }
        let gen_elements = pres
            .generators
            .iter()
            .enumerate()
            .map(|(g, gen)| match slices.get(gen.degree) {
                Some(Some(s)) => s.normal_form(&[g]),
                _ => SparseVec::new(),
            })
            .collect();
        let label_index = basis.iter().enumerate().map(|(i, b)| (b.label.clone(), i)).collect();
        Ok(GradedAlgebra {
            generators: pres.generators.clone(),
            relations: pres.relations.clone(),
            basis,
            by_degree,
            products,
            gen_elements,
            label_index,
            complete,
        })
    }

    /// Builds an algebra directly from a multiplication table on a graded
    /// basis whose element 0 is the unit. Checks unit, grading and
    /// associativity.
    pub fn from_structure_constants(basis: Vec<BasisElement>, products: Vec<Vec<SparseVec>>) -> Result<Self> {
        let nb = basis.len();
        if nb == 0 || basis[0].degree != 0 || basis.iter().skip(1).any(|b| b.degree == 0) {
            return Err(Error::Input("basis must start with the unit and be positively graded elsewhere".into()));
        }
        if products.len() != nb || products.iter().any(|r| r.len() != nb) {
            return Err(Error::DimensionMismatch { expected: nb, found: products.len() });
        }
        let mut order: Vec<usize> = (0..nb).collect();
        order.sort_by_key(|&i| basis[i].degree);
        if order.iter().enumerate().any(|(k, &i)| k != i) {
            return Err(Error::Input("basis must be sorted by degree".into()));
        }
        let top = basis.last().unwrap().degree;
        let mut by_degree = Vec::new();
        for d in 0..=top {
            let s = basis.iter().position(|b| b.degree >= d).unwrap();
            let e = basis.iter().position(|b| b.degree > d).unwrap_or(nb);
            by_degree.push(s..e);
        }
        let label_index: HashMap<String, usize> = basis.iter().enumerate().map(|(i, b)| (b.label.clone(), i)).collect();
        if label_index.len() != nb {
            return Err(Error::Input("duplicate basis labels".into()));
        }
        let alg = GradedAlgebra {
            generators: Vec::new(),
            relations: Vec::new(),
            basis,
            by_degree,
            products,
            gen_elements: Vec::new(),
            label_index,
            complete: true,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let nb = self.dim();
        for i in 0..nb {
            if self.products[0][i] != SparseVec::unit(i) || self.products[i][0] != SparseVec::unit(i) {
                return Err(Error::RelationViolation(format!("unit law fails at {}", self.basis[i].label)));
            }
            for j in 0..nb {
                let d = self.basis[i].degree + self.basis[j].degree;
                if self.products[i][j].iter().any(|(k, _)| self.basis[k].degree != d) {
                    return Err(Error::RelationViolation(format!(
                        "product {}*{} is not homogeneous",
                        self.basis[i].label, self.basis[j].label
                    )));
                }
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    let left = self.mul(&self.products[i][j], &SparseVec::unit(k));
                    let right = self.mul(&SparseVec::unit(i), &self.products[j][k]);
                    if left != right {
                        return Err(Error::RelationViolation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.basis[i].label, self.basis[j].label, self.basis[k].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Basis indices of the degree `d` part.
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        self.by_degree.get(d).cloned().unwrap_or(0..0)
    }

    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries::new(self.by_degree.iter().map(|r| r.len()).collect())
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i][j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.products[i][j].iter() {
                    pairs.push((k, c * &ab));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn generator_element(&self, g: usize) -> &SparseVec {
        &self.gen_elements[g]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Class of a generator word.
    pub fn word_element(&self, word: &[usize]) -> SparseVec {
        word.iter().fold(SparseVec::unit(0), |acc, &g| self.mul(&acc, &self.gen_elements[g]))
    }

    /// Element given as `[(coefficient, basis label)]`.
    pub fn element(&self, terms: &[(i64, &str)]) -> SparseVec {
        SparseVec::from_pairs(terms.iter().map(|(c, l)| {
            (self.index_of(l).unwrap_or_else(|| panic!("unknown basis label {l}")), Rational::from_int(*c))
        }))
    }

    pub fn format_element(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v.iter().map(|(i, c)| format!("{c}*{}", self.basis[i].label)).collect();
        parts.join(" + ")
    }

    /// Linear map on the algebra given by images of basis elements.
    pub fn apply(&self, images: &[SparseVec], x: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (k, c) in images[i].iter() {
                pairs.push((k, c * a));
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fk3() -> Presentation {
        Presentation::from_words(
            &[("a", 1), ("b", 1), ("c", 1)],
            &[
                vec![(1, "aa")],
                vec![(1, "bb")],
                vec![(1, "cc")],
                vec![(1, "ab"), (1, "bc"), (1, "ca")],
                vec![(1, "ba"), (1, "ac"), (1, "cb")],
            ],
        )
    }

    #[test]
    fn fk3_basis_and_dimensions() {
        let alg = GradedAlgebra::from_presentation(&fk3(), DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(alg.hilbert().coefficients(), &[1, 3, 4, 3, 1]);
        let mut labels: Vec<&str> = alg.basis().iter().map(|b| b.label.as_str()).collect();
        labels.sort();
        let mut expected = vec!["1", "a", "b", "ab", "ba", "aba", "c", "ac", "bc", "abc", "bac", "abac"];
        expected.sort();
        assert_eq!(labels, expected);
        assert!(alg.is_complete());
        // c a = -ab - bc
        let ca = alg.mul(&alg.element(&[(1, "c")]), &alg.element(&[(1, "a")]));
        assert_eq!(ca, alg.element(&[(-1, "ab"), (-1, "bc")]));
    }

    #[test]
    fn nilcoxeter_quotient() {
        let pres = Presentation::from_words(
            &[("a", 1), ("b", 1)],
            &[vec![(1, "aa")], vec![(1, "bb")], vec![(1, "aba"), (-1, "bab")]],
        );
        let alg = GradedAlgebra::from_presentation(&pres, 8).unwrap();
        assert_eq!(alg.hilbert().coefficients(), &[1, 2, 2, 1]);
        let labels: Vec<&str> = alg.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, vec!["1", "a", "b", "ab", "ba", "aba"]);
        let bab = alg.word_element(&[1, 0, 1]);
        assert_eq!(bab, alg.element(&[(1, "aba")]));
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let pres = Presentation::from_words(&[("a", 1), ("b", 2)], &[vec![(1, "aa")], vec![(1, "ab"), (1, "b")]]);
        assert_eq!(GradedAlgebra::from_presentation(&pres, 4).unwrap_err(), Error::NonHomogeneousRelation { index: 1 });
    }

    #[test]
    fn truncated_polynomial_ring() {
        let pres = Presentation::from_words(&[("x", 2), ("y", 2)], &[vec![(1, "xy"), (-1, "yx")]]);
        let alg = GradedAlgebra::from_presentation(&pres, 6).unwrap();
        assert!(!alg.is_complete());
        assert_eq!(alg.hilbert().coefficients(), &[1, 0, 2, 0, 3, 0, 4]);
    }

    #[test]
    fn structure_constants_round_trip() {
        let alg = GradedAlgebra::from_presentation(&fk3(), 8).unwrap();
        let rebuilt = GradedAlgebra::from_structure_constants(
            alg.basis().to_vec(),
            (0..alg.dim()).map(|i| (0..alg.dim()).map(|j| alg.product_of_basis(i, j).clone()).collect()).collect(),
        )
        .unwrap();
        assert_eq!(rebuilt.hilbert(), alg.hilbert());
    }
}
