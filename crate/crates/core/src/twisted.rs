//! Twisted tensor products `A ⊗_σ R` and the induced `R`-action on bar
//! cochains of `A`.
//!
//! Convention: `σ(e_i ⊗ x) = Σ_j σ_{ji}(x) ⊗ e_j` for a basis `e_0 = 1, e_1, ...`
//! of `R`. The maps `σ_{ji}` are endomorphisms of `A` stored as matrices.
//! Multiplicativity in `A` reads `σ_{ji}(xy) = Σ_k σ_{ki}(x) σ_{jk}(y)`, that is,
//! `x ↦ σ̃(x)ᵗ` is an algebra map into matrices over `A`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisElement, GradedAlgebra, Presentation, PresentationFile};
use crate::bar::{BarComplex, Cochain, Word};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Rational, SparseMatrix, SparseVec};

/// A pair `(α, β)` of endomorphisms of `A` with `β` an algebra map and `α` a
/// skew derivation, `α(xy) = α(x) y + β(x) α(y)`. This is exactly what makes
/// `σ̃ = [[id, α], [0, β]]` multiplicative over the dual numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPair {
    pub alpha: SparseMatrix,
    pub beta: SparseMatrix,
}

fn endo_from_basis_images(alg: &GradedAlgebra, f: impl Fn(usize) -> SparseVec) -> SparseMatrix {
    SparseMatrix::from_columns(alg.dim(), (0..alg.dim()).map(f).collect())
}

fn require_words(alg: &GradedAlgebra) -> Result<Vec<Vec<usize>>> {
    alg.basis().iter().map(|b| b.word.clone().ok_or_else(|| Error::Input("basis words are needed".into()))).collect()
}

/// Values of a multiplicative matrix valued map `x ↦ M(x)` (with
/// `M(xy) = M(x) M(y)` after transposition) on a word, given its values on
/// generators. `m[j][i]` holds the `(j, i)` entry as an algebra element.
fn matrix_on_word(
    alg: &GradedAlgebra,
    gens: &[Vec<Vec<SparseVec>>],
    word: &[usize],
    size: usize,
) -> Vec<Vec<SparseVec>> {
    let mut cur: Vec<Vec<SparseVec>> = (0..size)
        .map(|j| (0..size).map(|i| if i == j { SparseVec::unit(0) } else { SparseVec::new() }).collect())
        .collect();
    for &g in word {
        let mut next = vec![vec![SparseVec::new(); size]; size];
        for (j, row) in next.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                for k in 0..size {
                    // σ_{ji}(x g) = Σ_k σ_{ki}(x) σ_{jk}(g)
                    if !cur[k][i].is_zero() && !gens[g][j][k].is_zero() {
                        *entry = entry.add(&alg.mul(&cur[k][i], &gens[g][j][k]));
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

impl SkewPair {
    /// Extends values on generators: `β` multiplicatively, `α` by the skew
    /// Leibniz rule. Fails with `RelationViolation` if the relations of `A` are
    /// not respected.
    pub fn extend(alg: &GradedAlgebra, alpha_gen: &[SparseVec], beta_gen: &[SparseVec]) -> Result<Self> {
        let ngen = alg.generators().len();
        if alpha_gen.len() != ngen || beta_gen.len() != ngen {
            return Err(Error::DimensionMismatch { expected: ngen, found: alpha_gen.len().min(beta_gen.len()) });
        }
        // [[x, α(x)], [0, β(x)]] in the σ_{ji} indexing: entry (0,1) is α, (1,1) is β.
        let gens: Vec<Vec<Vec<SparseVec>>> = (0..ngen)
            .map(|g| {
                vec![
                    vec![alg.generator_element(g).clone(), alpha_gen[g].clone()],
                    vec![SparseVec::new(), beta_gen[g].clone()],
                ]
            })
            .collect();
        for (k, rel) in alg.relations().iter().enumerate() {
            let mut alpha = SparseVec::new();
            let mut beta = SparseVec::new();
            for (c, w) in rel {
                let m = matrix_on_word(alg, &gens, w, 2);
                alpha = alpha.add_scaled(c, &m[0][1]);
                beta = beta.add_scaled(c, &m[1][1]);
            }
            if !alpha.is_zero() || !beta.is_zero() {
                return Err(Error::RelationViolation(format!("the skew pair does not preserve relation {k}")));
            }
        }
        let words = require_words(alg)?;
        let ms: Vec<_> = words.iter().map(|w| matrix_on_word(alg, &gens, w, 2)).collect();
        Ok(SkewPair {
            alpha: endo_from_basis_images(alg, |i| ms[i][0][1].clone()),
            beta: endo_from_basis_images(alg, |i| ms[i][1][1].clone()),
        })
    }

    /// Checks `α² = 0`, `βα = -αβ`, `β² = id`, that `β` is multiplicative and
    /// that `α` is a skew derivation, on all basis pairs.
    pub fn identities(&self, alg: &GradedAlgebra) -> SkewPairReport {
        let id = SparseMatrix::identity(alg.dim());
        let ab = self.alpha.mul(&self.beta);
        let ba = self.beta.mul(&self.alpha);
        let mut beta_mult = true;
        let mut skew = true;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let xy = alg.product_of_basis(i, j);
                let (bx, by) = (self.beta.column(i), self.beta.column(j));
                if self.beta.mul_vec(xy) != alg.mul(bx, by) {
                    beta_mult = false;
                }
                let lhs = self.alpha.mul_vec(xy);
                let rhs = alg.mul(self.alpha.column(i), &SparseVec::unit(j)).add(&alg.mul(bx, self.alpha.column(j)));
                if lhs != rhs {
                    skew = false;
                }
            }
        }
        SkewPairReport {
            alpha_squared_zero: self.alpha.mul(&self.alpha).is_zero(),
            anticommute: ab.add(&ba).is_zero(),
            beta_involution: self.beta.mul(&self.beta) == id,
            beta_multiplicative: beta_mult,
            alpha_skew_derivation: skew,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewPairReport {
    pub alpha_squared_zero: bool,
    pub anticommute: bool,
    pub beta_involution: bool,
    pub beta_multiplicative: bool,
    pub alpha_skew_derivation: bool,
}

impl SkewPairReport {
    pub fn all(&self) -> bool {
        self.alpha_squared_zero
            && self.anticommute
            && self.beta_involution
            && self.beta_multiplicative
            && self.alpha_skew_derivation
    }
}

#[derive(Clone, Debug)]
pub struct TwistingMap<'a> {
    a: &'a GradedAlgebra,
    r: &'a GradedAlgebra,
    /// `sigma[j][i] = σ_{ji}`.
    sigma: Vec<Vec<SparseMatrix>>,
    /// Inverse: `τ(x ⊗ e_i) = Σ_j e_j ⊗ τ_{ji}(x)`, `tau[j][i] = τ_{ji}`.
    tau: Vec<Vec<SparseMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistingReport {
    pub unit: bool,
    pub multiplicative: bool,
    pub r_compatible: bool,
    pub inverse: bool,
    pub preserves_augmentation: bool,
}

impl TwistingReport {
    pub fn all(&self) -> bool {
        self.unit && self.multiplicative && self.r_compatible && self.inverse && self.preserves_augmentation
    }
}

/// `{"A": presentation, "R": presentation, "Rbasis": ["1","c"],
///   "sigma": {"c": {"a": {"1": [["ab",-1]], "c": [["b",-1]]}, ...}}}`.
/// Entries give `σ(e ⊗ x)` for basis elements `e ≠ 1` of `R` and generators
/// `x` of `A`, as a map from `e_j` to the `A` component `σ_{ji}(x)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TwistFile {
    #[serde(rename = "A")]
    pub a: PresentationFile,
    #[serde(rename = "R")]
    pub r: PresentationFile,
    #[serde(rename = "Rbasis")]
    pub r_basis: Vec<String>,
    pub sigma: BTreeMap<String, BTreeMap<String, BTreeMap<String, Vec<(String, Rational)>>>>,
}

fn invert(m: &SparseMatrix) -> Option<SparseMatrix> {
    let n = m.nrows();
    if n != m.ncols() {
        return None;
    }
    let mut e = Echelon::tracking(n);
    for c in m.columns() {
        if e.insert(c).is_err() {
            return None;
        }
    }
    let cols = (0..n).map(|k| e.express(&SparseVec::unit(k))).collect::<Option<Vec<_>>>()?;
    Some(SparseMatrix::from_columns(n, cols))
}

/// Kronecker product: `(f ⊗ g)` on a tensor basis indexed `i * dim_g + j`.
pub fn kron(f: &SparseMatrix, g: &SparseMatrix) -> SparseMatrix {
    let (fr, gr) = (f.nrows(), g.nrows());
    let mut cols = Vec::with_capacity(f.ncols() * g.ncols());
    for i in 0..f.ncols() {
        for j in 0..g.ncols() {
            let mut pairs = Vec::new();
            for (a, x) in f.column(i).iter() {
                for (b, y) in g.column(j).iter() {
                    pairs.push((a * gr + b, x * y));
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
    }
    SparseMatrix::from_columns(fr * gr, cols)
}

impl<'a> TwistingMap<'a> {
    /// `σ` given on generators of `A`: `values[i][g][j] = σ_{ji}(x_g)` for
    /// `i ≥ 1`. Extended multiplicatively and checked against the relations.
    pub fn from_generator_values(
        a: &'a GradedAlgebra,
        r: &'a GradedAlgebra,
        values: &[Vec<Vec<SparseVec>>],
    ) -> Result<Self> {
        let m = r.dim();
        let ngen = a.generators().len();
        if values.len() + 1 != m {
            return Err(Error::DimensionMismatch { expected: m - 1, found: values.len() });
        }
        let gens: Vec<Vec<Vec<SparseVec>>> = (0..ngen)
            .map(|g| {
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|i| {
                                if i == 0 {
                                    if j == 0 {
                                        a.generator_element(g).clone()
                                    } else {
                                        SparseVec::new()
                                    }
                                } else {
                                    values[i - 1][g][j].clone()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for (k, rel) in a.relations().iter().enumerate() {
            let mut acc = vec![vec![SparseVec::new(); m]; m];
            for (c, w) in rel {
                let mw = matrix_on_word(a, &gens, w, m);
                for j in 0..m {
                    for i in 0..m {
                        acc[j][i] = acc[j][i].add_scaled(c, &mw[j][i]);
                    }
                }
            }
            if acc.iter().flatten().any(|v| !v.is_zero()) {
                return Err(Error::RelationViolation(format!("σ does not preserve relation {k} of A")));
            }
        }
        let words = require_words(a)?;
        let ms: Vec<_> = words.iter().map(|w| matrix_on_word(a, &gens, w, m)).collect();
        let sigma: Vec<Vec<SparseMatrix>> =
            (0..m).map(|j| (0..m).map(|i| endo_from_basis_images(a, |b| ms[b][j][i].clone())).collect()).collect();
        Self::from_sigma(a, r, sigma)
    }

    /// `σ̃ = [[id, α], [0, β]]` over the dual numbers `R = k[c]/(c²)`.
    pub fn from_skew_pair(a: &'a GradedAlgebra, r: &'a GradedAlgebra, pair: &SkewPair) -> Result<Self> {
        if !is_dual_numbers(r) {
            return Err(Error::RNotDualNumbers);
        }
        let n = a.dim();
        let sigma = vec![
            vec![SparseMatrix::identity(n), pair.alpha.clone()],
            vec![SparseMatrix::zero(n, n), pair.beta.clone()],
        ];
        Self::from_sigma(a, r, sigma)
    }

    /// Builds from all `σ_{ji}`; `τ` is obtained by inverting `σ` as a linear
    /// map `R ⊗ A → A ⊗ R`.
    pub fn from_sigma(a: &'a GradedAlgebra, r: &'a GradedAlgebra, sigma: Vec<Vec<SparseMatrix>>) -> Result<Self> {
        let (na, m) = (a.dim(), r.dim());
        // Source index i * na + x for e_i ⊗ x; target j * na + x' for x' ⊗ e_j.
        let mut cols = Vec::with_capacity(m * na);
        for i in 0..m {
            for x in 0..na {
                let mut pairs = Vec::new();
                for (j, row) in sigma.iter().enumerate() {
                    for (y, c) in row[i].column(x).iter() {
                        pairs.push((j * na + y, c.clone()));
                    }
                }
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        let big = SparseMatrix::from_columns(m * na, cols);
        let inv = invert(&big).ok_or_else(|| Error::Input("σ is not invertible".into()))?;
        // τ(x ⊗ e_i) = Σ_j e_j ⊗ τ_{ji}(x): column (i, x) of the inverse.
        let tau = (0..m)
            .map(|j| {
                (0..m)
                    .map(|i| {
                        endo_from_basis_images(a, |x| {
                            SparseVec::from_pairs(
                                inv.column(i * na + x)
                                    .iter()
                                    .filter(|(k, _)| k / na == j)
                                    .map(|(k, c)| (k % na, c.clone())),
                            )
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(TwistingMap { a, r, sigma, tau })
    }

    pub fn from_file(a: &'a GradedAlgebra, r: &'a GradedAlgebra, file: &TwistFile) -> Result<Self> {
        let m = r.dim();
        if file.r_basis.len() != m || file.r_basis.iter().enumerate().any(|(i, l)| r.index_of(l) != Some(i)) {
            return Err(Error::Input("Rbasis does not match the basis of R".into()));
        }
        let elem = |terms: &[(String, Rational)]| -> Result<SparseVec> {
            Ok(SparseVec::from_pairs(
                terms
                    .iter()
                    .map(|(l, c)| {
                        Ok((a.index_of(l).ok_or_else(|| Error::Input(format!("unknown label {l:?}")))?, c.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ))
        };
        let mut values = vec![vec![vec![SparseVec::new(); m]; a.generators().len()]; m - 1];
        for (ri, per_gen) in &file.sigma {
            let i =
                r.index_of(ri).filter(|&i| i > 0).ok_or_else(|| Error::Input(format!("bad R basis element {ri:?}")))?;
            for (gname, comps) in per_gen {
                let g = a.generator_index(gname).ok_or_else(|| Error::Input(format!("unknown generator {gname:?}")))?;
                for (rj, terms) in comps {
                    let j = r.index_of(rj).ok_or_else(|| Error::Input(format!("bad R basis element {rj:?}")))?;
                    values[i - 1][g][j] = elem(terms)?;
                }
            }
        }
        Self::from_generator_values(a, r, &values)
    }

    /// Inverse of [`TwistingMap::from_file`], given the presentations `A`
    /// and `R` were built from.
    pub fn to_file(&self, a_pres: &Presentation, r_pres: &Presentation) -> TwistFile {
        let (a, r) = (self.a, self.r);
        let mut sigma = BTreeMap::new();
        for i in 1..r.dim() {
            let mut per_gen = BTreeMap::new();
            for (g, gen) in a.generators().iter().enumerate() {
                let x = a.generator_element(g);
                let mut comps = BTreeMap::new();
                for j in 0..r.dim() {
                    let v = self.sigma[j][i].mul_vec(x);
                    if !v.is_zero() {
                        comps.insert(
                            r.label(j).to_string(),
                            v.iter().map(|(k, c)| (a.label(k).to_string(), c.clone())).collect(),
                        );
                    }
                }
                per_gen.insert(gen.name.clone(), comps);
            }
            sigma.insert(r.label(i).to_string(), per_gen);
        }
        TwistFile {
            a: PresentationFile::from_presentation(a_pres),
            r: PresentationFile::from_presentation(r_pres),
            r_basis: (0..r.dim()).map(|i| r.label(i).to_string()).collect(),
            sigma,
        }
    }

    pub fn a(&self) -> &GradedAlgebra {
        self.a
    }

    pub fn r(&self) -> &GradedAlgebra {
        self.r
    }

    pub fn sigma(&self, j: usize, i: usize) -> &SparseMatrix {
        &self.sigma[j][i]
    }

    pub fn tau(&self, j: usize, i: usize) -> &SparseMatrix {
        &self.tau[j][i]
    }

    pub fn verify_axioms(&self) -> TwistingReport {
        let (a, r) = (self.a, self.r);
        let (na, m) = (a.dim(), r.dim());
        let id = SparseMatrix::identity(na);
        let zero = SparseMatrix::zero(na, na);
        let mut unit = (0..m).all(|j| self.sigma[j][0] == if j == 0 { id.clone() } else { zero.clone() });
        for i in 0..m {
            for j in 0..m {
                let expect = if i == j { SparseVec::unit(0) } else { SparseVec::new() };
                if *self.sigma[j][i].column(0) != expect {
                    unit = false;
                }
            }
        }
        let mut multiplicative = true;
        'outer: for x in 0..na {
            for y in 0..na {
                let xy = a.product_of_basis(x, y);
                for i in 0..m {
                    for j in 0..m {
                        let lhs = self.sigma[j][i].mul_vec(xy);
                        let mut rhs = SparseVec::new();
                        for k in 0..m {
                            rhs = rhs.add(&a.mul(self.sigma[k][i].column(x), self.sigma[j][k].column(y)));
                        }
                        if lhs != rhs {
                            multiplicative = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        // Σ_p c_ij^p σ_kp = Σ_{p,q} c_pq^k σ_pi ∘ σ_qj
        let mut r_compatible = true;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut lhs = zero.clone();
                    for (p, c) in r.product_of_basis(i, j).iter() {
                        lhs = lhs.add(&self.sigma[k][p].scale(c));
                    }
                    let mut rhs = zero.clone();
                    for p in 0..m {
                        for q in 0..m {
                            let c = r.product_of_basis(p, q).get(k);
                            if !c.is_zero() {
                                rhs = rhs.add(&self.sigma[p][i].mul(&self.sigma[q][j]).scale(&c));
                            }
                        }
                    }
                    if lhs != rhs {
                        r_compatible = false;
                    }
                }
            }
        }
        let compose = |x: &Vec<Vec<SparseMatrix>>, y: &Vec<Vec<SparseMatrix>>| -> Vec<Vec<SparseMatrix>> {
            (0..m)
                .map(|k| (0..m).map(|i| (0..m).fold(zero.clone(), |acc, j| acc.add(&x[k][j].mul(&y[j][i])))).collect())
                .collect()
        };
        let is_identity = |z: &Vec<Vec<SparseMatrix>>| {
            (0..m).all(|k| (0..m).all(|i| z[k][i] == if k == i { id.clone() } else { zero.clone() }))
        };
        let inverse = is_identity(&compose(&self.sigma, &self.tau)) && is_identity(&compose(&self.tau, &self.sigma));
        let preserves_augmentation = self
            .sigma
            .iter()
            .flatten()
            .chain(self.tau.iter().flatten())
            .all(|f| (1..na).all(|x| f.column(x).get(0).is_zero()));
        TwistingReport { unit, multiplicative, r_compatible, inverse, preserves_augmentation }
    }

    /// Label of the basis element `x ⊗ e_i` of `A ⊗_σ R`.
    pub fn product_label(&self, x: usize, i: usize) -> String {
        match (self.a.label(x), self.r.label(i)) {
            ("1", l) => l.to_string(),
            (l, "1") => l.to_string(),
            (l, m) => format!("{l}{m}"),
        }
    }

    /// Basis `x ⊗ e_i` in `(i, x)` order, before sorting by degree.
    pub fn product_basis_labels(&self) -> Vec<String> {
        (0..self.r.dim())
            .flat_map(|i| (0..self.a.dim()).map(move |x| (i, x)))
            .map(|(i, x)| self.product_label(x, i))
            .collect()
    }

    /// The algebra `A ⊗_σ R` with product
    /// `(x ⊗ e_i)(y ⊗ e_k) = Σ_j x σ_{ji}(y) ⊗ e_j e_k`.
    pub fn build_twisted_algebra(&self) -> Result<GradedAlgebra> {
        let (a, r) = (self.a, self.r);
        let (na, m) = (a.dim(), r.dim());
        let mut order: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..na).map(move |x| (i, x))).collect();
        order.sort_by_key(|&(i, x)| a.degree(x) + r.degree(i));
        let pos: BTreeMap<(usize, usize), usize> = order.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let basis: Vec<BasisElement> = order
            .iter()
            .map(|&(i, x)| BasisElement {
                label: self.product_label(x, i),
                degree: a.degree(x) + r.degree(i),
                word: None,
            })
            .collect();
        let mut products = vec![vec![SparseVec::new(); order.len()]; order.len()];
        for (u, &(i, x)) in order.iter().enumerate() {
            for (v, &(k, y)) in order.iter().enumerate() {
                let mut pairs = Vec::new();
                for j in 0..m {
                    let left = a.mul(&SparseVec::unit(x), self.sigma[j][i].column(y));
                    if left.is_zero() {
                        continue;
                    }
                    for (l, c) in r.product_of_basis(j, k).iter() {
                        for (z, d) in left.iter() {
                            pairs.push((pos[&(l, z)], c * d));
                        }
                    }
                }
                products[u][v] = SparseVec::from_pairs(pairs);
            }
        }
        GradedAlgebra::from_structure_constants(basis, products)
    }

    fn positive_restriction(&self, f: &SparseMatrix) -> SparseMatrix {
        let pos: Vec<usize> = (0..self.a.dim()).filter(|&x| self.a.degree(x) > 0).collect();
        let index: BTreeMap<usize, usize> = pos.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        SparseMatrix::from_columns(
            pos.len(),
            pos.iter()
                .map(|&x| {
                    SparseVec::from_pairs(
                        f.column(x).iter().filter_map(|(y, c)| index.get(&y).map(|&k| (k, c.clone()))),
                    )
                })
                .collect(),
        )
    }

    /// `σ^{(q)}` on `R ⊗ A_+^{⊗q}` by the recursion
    /// `σ^{(q+1)} = (id ⊗ σ)(σ^{(q)} ⊗ id)`, i.e.
    /// `S^{(q+1)}_{ji} = Σ_k S^{(q)}_{ki} ⊗ σ_{jk}`. Indexed `[j][i]`.
    pub fn lift_sigma(&self, q: usize) -> Vec<Vec<SparseMatrix>> {
        let m = self.r.dim();
        let base: Vec<Vec<SparseMatrix>> =
            (0..m).map(|j| (0..m).map(|i| self.positive_restriction(&self.sigma[j][i])).collect()).collect();
        let mut cur = base.clone();
        for _ in 1..q {
            let dim = cur[0][0].nrows() * base[0][0].nrows();
            cur = (0..m)
                .map(|j| {
                    (0..m)
                        .map(|i| {
                            (0..m).fold(SparseMatrix::zero(dim, dim), |acc, k| acc.add(&kron(&cur[k][i], &base[j][k])))
                        })
                        .collect()
                })
                .collect();
        }
        cur
    }

    /// `σ^{(q)}` by the closed form: the sum over index paths
    /// `i = i_0, i_1, ..., i_q = j` of `σ_{i_1 i_0} ⊗ σ_{i_2 i_1} ⊗ ... ⊗ σ_{i_q i_{q-1}}`.
    pub fn lift_sigma_closed(&self, q: usize) -> Vec<Vec<SparseMatrix>> {
        self.path_sum(q, |next, prev| self.positive_restriction(&self.sigma[next][prev]), false)
    }

    /// `τ^{(q)}`: `T^{(q)}_{ji} = Σ τ_{j i_2} ⊗ τ_{i_2 i_3} ⊗ ... ⊗ τ_{i_q i}`. Indexed `[j][i]`.
    pub fn lift_tau(&self, q: usize) -> Vec<Vec<SparseMatrix>> {
        self.path_sum(q, |left, right| self.positive_restriction(&self.tau[left][right]), true)
    }

    fn path_sum(
        &self,
        q: usize,
        factor: impl Fn(usize, usize) -> SparseMatrix,
        reversed: bool,
    ) -> Vec<Vec<SparseMatrix>> {
        let m = self.r.dim();
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let mut row = Vec::with_capacity(m);
            for i in 0..m {
                let mut total: Option<SparseMatrix> = None;
                let npaths = m.pow(q.saturating_sub(1) as u32);
                for code in 0..npaths {
                    // interior indices
                    let mut mids = Vec::with_capacity(q.saturating_sub(1));
                    let mut c = code;
                    for _ in 1..q {
                        mids.push(c % m);
                        c /= m;
                    }
                    let mut path = vec![i];
                    path.extend(mids);
                    path.push(j);
                    // σ: factor t maps index path[t] to path[t+1].
                    // τ: factor t (from the left) is τ_{path'[t], path'[t+1]} along j -> ... -> i.
                    let mut term: Option<SparseMatrix> = None;
                    for t in 0..q {
                        let f = if reversed {
                            let rev: Vec<usize> = path.iter().rev().cloned().collect();
                            factor(rev[t], rev[t + 1])
                        } else {
                            factor(path[t + 1], path[t])
                        };
                        term = Some(match term {
                            None => f,
                            Some(acc) => kron(&acc, &f),
                        });
                    }
                    let term = term.unwrap();
                    total = Some(match total {
                        None => term,
                        Some(acc) => acc.add(&term),
                    });
                }
                row.push(total.unwrap());
            }
            out.push(row);
        }
        out
    }

    /// `e_i · f` for a bar cochain `f` of `A`:
    /// `e_i·(f_1⊗...⊗f_q) = Σ f_1∘τ_{0 i_2} ⊗ f_2∘τ_{i_2 i_3} ⊗ ... ⊗ f_q∘τ_{i_q i}`.
    pub fn act_on_cochain(&self, bar: &BarComplex<'_>, i: usize, f: &Cochain) -> Cochain {
        let m = self.r.dim();
        // For each τ_{st} and label y: p_y ∘ τ_{st} = Σ_x (coeff of y in τ_{st}(x)) p_x.
        let nl = bar.num_labels();
        let mut pull: Vec<Vec<Vec<Vec<(u8, Rational)>>>> = vec![vec![vec![Vec::new(); nl]; m]; m];
        for s in 0..m {
            for t in 0..m {
                for x in 0..nl {
                    let bx = bar.label_basis_index(x as u8);
                    for (by, c) in self.tau[s][t].column(bx).iter() {
                        if self.a.degree(by) == 0 {
                            continue;
                        }
                        let y = bar.label_of(self.a.label(by)).unwrap();
                        pull[s][t][y as usize].push((x as u8, c.clone()));
                    }
                }
            }
        }
        f.map_terms(|w| {
            let mut states: Vec<(usize, Word, Rational)> = vec![(0, Word::new(), Rational::from_int(1))];
            for &l in w.iter() {
                let mut next = Vec::new();
                for (s, v, c) in &states {
                    for t in 0..m {
                        for (x, d) in &pull[*s][t][l as usize] {
                            let mut v2 = v.clone();
                            v2.push(*x);
                            next.push((t, v2, c * d));
                        }
                    }
                }
                states = next;
            }
            states.into_iter().filter(|(s, _, _)| *s == i).map(|(_, v, c)| (v, c)).collect()
        })
    }

    /// The second page of the Cartan-Eilenberg spectral sequence for
    /// `A ⊗_σ R` with `R = k[c]/(c²)`.
    pub fn ce_second_page(&self, bar: &BarComplex<'_>, p_max: usize, q_max: usize) -> Result<SpectralPage> {
        if !is_dual_numbers(self.r) {
            return Err(Error::RNotDualNumbers);
        }
        if !std::ptr::eq(bar.algebra(), self.a) {
            return Err(Error::Input("bar complex of a different algebra".into()));
        }
        let mut eq_dims = Vec::with_capacity(q_max + 1);
        let mut c_ranks = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            if q == 0 {
                // c kills the unit
                eq_dims.push(1);
                c_ranks.push(0);
                continue;
            }
            let mut basis = Vec::new();
            for p in q..=bar.max_internal_degree(q) {
                basis.extend(bar.cocycle_basis(q, p)?);
            }
            let images: Vec<Cochain> = basis.iter().map(|f| self.act_on_cochain(bar, 1, f)).collect();
            eq_dims.push(basis.len());
            c_ranks.push(bar.class_span_dim(&images)?);
        }
        let dims = (0..=p_max)
            .map(|p| {
                (0..=q_max)
                    .map(|q| {
                        let kernel = eq_dims[q] - c_ranks[q];
                        if p == 0 {
                            kernel
                        } else {
                            kernel - c_ranks[q]
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(SpectralPage { p_max, q_max, eq_dims, c_ranks, dims })
    }

    /// The `R`-action on the bar cochains `Ω^n(A, p)` as a matrix per basis
    /// element of `R`, with target the full cochain space of degree `n`
    /// (the internal degree may change).
    pub fn r_action_on_cochains(&self, bar: &BarComplex<'_>, n: usize, p: usize) -> Vec<Vec<(Word, Cochain)>> {
        let words: Vec<Word> = (0..bar.num_gblocks()).flat_map(|g| bar.block(n, p, g).words().to_vec()).collect();
        (0..self.r.dim())
            .map(|i| {
                words
                    .iter()
                    .map(|w| {
                        let f = Cochain::from_terms(n, [(w.clone(), Rational::from_int(1))]);
                        (w.clone(), self.act_on_cochain(bar, i, &f))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Dimensions of `E_2^{p,q} = Z^{p,q} / B^{p,q}` for `R = k[c]/(c²)`, where
/// `Z` and `B` are the kernel and image of `c` acting on `E_q(A)`. For
/// `p = 0` the page is the kernel alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPage {
    pub p_max: usize,
    pub q_max: usize,
    /// `dim E_q(A)` for `q = 0..=q_max`.
    pub eq_dims: Vec<usize>,
    /// Rank of `c` on `E_q(A)`.
    pub c_ranks: Vec<usize>,
    /// `dims[p][q]`.
    pub dims: Vec<Vec<usize>>,
}

impl SpectralPage {
    pub fn dim(&self, p: usize, q: usize) -> Option<usize> {
        self.dims.get(p).and_then(|row| row.get(q)).copied()
    }

    /// `Σ_{p+q=n} dim E_2^{p,n-p}` for `n = 0..=n_max`; an upper bound for
    /// `dim E_n` of the twisted product.
    pub fn upper_bounds(&self, n_max: usize) -> Result<Vec<usize>> {
        if n_max > self.p_max || n_max > self.q_max {
            return Err(Error::Input(format!(
                "anti-diagonal {n_max} leaves the page (p <= {}, q <= {})",
                self.p_max, self.q_max
            )));
        }
        Ok((0..=n_max).map(|n| (0..=n).map(|p| self.dims[p][n - p]).sum()).collect())
    }
}

/// Whether `r` is `k[c]/(c²)` with `c` in positive degree: basis `1, c`.
pub fn is_dual_numbers(r: &GradedAlgebra) -> bool {
    r.dim() == 2 && r.degree(1) > 0 && r.product_of_basis(1, 1).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities() {
        let k = kron(&SparseMatrix::identity(2), &SparseMatrix::identity(3));
        assert_eq!(k, SparseMatrix::identity(6));
    }

    #[test]
    fn invert_small() {
        let m = SparseMatrix::from_dense(&[
            vec![Rational::from_int(1), Rational::from_int(1)],
            vec![Rational::from_int(0), Rational::from_int(1)],
        ]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), SparseMatrix::identity(2));
        assert!(invert(&SparseMatrix::zero(2, 2)).is_none());
    }
}
