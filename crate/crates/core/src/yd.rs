//! Group actions on graded algebras that are compatible with a group grading
//! (Yetter-Drinfeld structures over a finite group), the induced actions on
//! bar cochains, and dimensions of invariants.
//!
//! Conventions. `g` acts on the algebra by algebra automorphisms determined by
//! the images of the generators. On the dual basis, `(g·f)(v) = f(g⁻¹·v)`. The
//! dual label `p_x` is given the group degree of `x`, and a tensor word has the
//! ordered product of the degrees of its letters; with this choice the bar
//! differential is homogeneous and `g` maps degree `h` to `g h g⁻¹`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::bar::{BarComplex, Cochain, Grading, Word};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{rank_of_vectors, Echelon, Rational, SparseVec};

/// Which bosonization the invariants are taken for: the group algebra `kG`
/// (take `G`-invariants) or its dual `k^G` (take the group degree `e` part).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bosonization {
    GroupAlgebra,
    DualGroupAlgebra,
}

#[derive(Clone, Debug)]
pub struct YdStructure<'a> {
    alg: &'a GradedAlgebra,
    group: FiniteGroup,
    /// `action[g][i]`: image of basis element `i` under `g`.
    action: Vec<Vec<SparseVec>>,
    basis_gdeg: Vec<usize>,
}

/// `{"group":"S3","action":{"(12)":{"a":[["a",-1]],...},...},"gdeg":{"a":"(12)",...}}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionFile {
    pub group: String,
    pub action: BTreeMap<String, BTreeMap<String, Vec<(String, Rational)>>>,
    pub gdeg: BTreeMap<String, String>,
}

impl<'a> YdStructure<'a> {
    /// `gen_images` lists, for some group elements generating the group, the
    /// images of all algebra generators. The action is extended
    /// multiplicatively and checked to be well defined, to be a group action,
    /// and to move degree `h` to `g h g⁻¹`.
    pub fn from_generator_action(
        alg: &'a GradedAlgebra,
        group: FiniteGroup,
        gen_images: &[(usize, Vec<SparseVec>)],
        gen_gdeg: &[usize],
    ) -> Result<Self> {
        let ngen = alg.generators().len();
        if gen_gdeg.len() != ngen {
            return Err(Error::DimensionMismatch { expected: ngen, found: gen_gdeg.len() });
        }
        let nb = alg.dim();
        let word_image =
            |imgs: &[SparseVec], w: &[usize]| w.iter().fold(SparseVec::unit(0), |acc, &g| alg.mul(&acc, &imgs[g]));
        let mut known: Vec<Option<Vec<SparseVec>>> = vec![None; group.order()];
        known[group.identity()] = Some((0..nb).map(SparseVec::unit).collect());
        let mut gens = Vec::new();
        for (g, imgs) in gen_images {
            if imgs.len() != ngen {
                return Err(Error::DimensionMismatch { expected: ngen, found: imgs.len() });
            }
            for (k, rel) in alg.relations().iter().enumerate() {
                let mut acc = SparseVec::new();
                for (c, w) in rel {
                    acc = acc.add_scaled(c, &word_image(imgs, w));
                }
                if !acc.is_zero() {
                    return Err(Error::RelationViolation(format!(
                        "{} does not preserve relation {k}",
                        group.element_name(*g)
                    )));
                }
            }
            let mut mat = Vec::with_capacity(nb);
            for b in alg.basis() {
                let w = b.word.as_ref().ok_or_else(|| Error::Input("basis words are needed".into()))?;
                mat.push(word_image(imgs, w));
            }
            gens.push((*g, mat));
        }
        // Close under composition.
        let mut frontier = vec![group.identity()];
        while let Some(h) = frontier.pop() {
            for (g, mg) in &gens {
                let gh = group.mul(*g, h);
                let mh = known[h].clone().unwrap();
                let composed: Vec<SparseVec> = mh.iter().map(|v| alg.apply(mg, v)).collect();
                match &known[gh] {
                    None => {
                        known[gh] = Some(composed);
                        frontier.push(gh);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(Error::RelationViolation("the action is not a group homomorphism".into()))
                    }
                    Some(_) => {}
                }
            }
        }
        let action: Vec<Vec<SparseVec>> = known
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::Input("the given elements do not generate the group".into())))
            .collect::<Result<_>>()?;
        for g in 0..group.order() {
            for h in 0..group.order() {
                let lhs = &action[group.mul(g, h)];
                let rhs: Vec<SparseVec> = action[h].iter().map(|v| alg.apply(&action[g], v)).collect();
                if *lhs != rhs {
                    return Err(Error::RelationViolation("the action is not a group homomorphism".into()));
                }
            }
        }
        let basis_gdeg: Vec<usize> =
            alg.basis().iter().map(|b| group.product(b.word.as_ref().unwrap().iter().map(|&g| gen_gdeg[g]))).collect();
        for i in 0..nb {
            for j in 0..nb {
                let d = group.mul(basis_gdeg[i], basis_gdeg[j]);
                if alg.product_of_basis(i, j).iter().any(|(k, _)| basis_gdeg[k] != d) {
                    return Err(Error::RelationViolation("multiplication does not respect the group grading".into()));
                }
            }
        }
        for g in 0..group.order() {
            for i in 0..nb {
                let target = group.conj(g, basis_gdeg[i]);
                if action[g][i].iter().any(|(k, _)| basis_gdeg[k] != target) {
                    return Err(Error::RelationViolation(format!(
                        "{} does not move degree {} to its conjugate",
                        group.element_name(g),
                        group.element_name(basis_gdeg[i])
                    )));
                }
            }
        }
        Ok(YdStructure { alg, group, action, basis_gdeg })
    }

    pub fn from_file(alg: &'a GradedAlgebra, file: &ActionFile) -> Result<Self> {
        let group = FiniteGroup::by_name(&file.group)?;
        let gen_index =
            |n: &str| alg.generator_index(n).ok_or_else(|| Error::Input(format!("unknown generator {n:?}")));
        let mut gen_gdeg = vec![usize::MAX; alg.generators().len()];
        for (n, d) in &file.gdeg {
            gen_gdeg[gen_index(n)?] = group.parse_element(d)?;
        }
        if gen_gdeg.contains(&usize::MAX) {
            return Err(Error::Input("every generator needs a group degree".into()));
        }
        let mut images = Vec::new();
        for (g, imgs) in &file.action {
            let gi = group.parse_element(g)?;
            let mut v = vec![SparseVec::new(); alg.generators().len()];
            let mut seen = vec![false; v.len()];
            for (n, terms) in imgs {
                let k = gen_index(n)?;
                seen[k] = true;
                v[k] = SparseVec::from_pairs(
                    terms
                        .iter()
                        .map(|(l, c)| {
                            let i =
                                alg.index_of(l).ok_or_else(|| Error::Input(format!("unknown basis label {l:?}")))?;
                            Ok((i, c.clone()))
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            if seen.contains(&false) {
                return Err(Error::Input(format!("action of {g} misses a generator")));
            }
            images.push((gi, v));
        }
        YdStructure::from_generator_action(alg, group, &images, &gen_gdeg)
    }

    pub fn to_file(&self, generators_of_group: &[usize]) -> ActionFile {
        let mut action = BTreeMap::new();
        for &g in generators_of_group {
            let mut m = BTreeMap::new();
            for (k, gen) in self.alg.generators().iter().enumerate() {
                let img = self.alg.apply(&self.action[g], self.alg.generator_element(k));
                m.insert(
                    gen.name.clone(),
                    img.iter().map(|(i, c)| (self.alg.label(i).to_string(), c.clone())).collect(),
                );
            }
            action.insert(self.group.element_name(g), m);
        }
        let gdeg = self
            .alg
            .generators()
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let b = self.alg.generator_element(k).leading().map(|e| e.0).unwrap_or(0);
                (g.name.clone(), self.group.element_name(self.basis_gdeg[b]))
            })
            .collect();
        ActionFile { group: self.group.name().to_string(), action, gdeg }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.alg
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn act(&self, g: usize, x: &SparseVec) -> SparseVec {
        self.alg.apply(&self.action[g], x)
    }

    pub fn basis_gdeg(&self, i: usize) -> usize {
        self.basis_gdeg[i]
    }

    /// Group grading of the dual labels, for building the matching bar complex.
    pub fn grading(&self) -> Grading {
        let label_gdeg = (0..self.alg.dim()).filter(|&i| self.alg.degree(i) > 0).map(|i| self.basis_gdeg[i]).collect();
        Grading { group: self.group.clone(), label_gdeg }
    }

    fn check_bar(&self, bar: &BarComplex<'_>) -> Result<()> {
        let ok = bar
            .grading()
            .is_some_and(|g| g.group.order() == self.group.order() && g.label_gdeg == self.grading().label_gdeg);
        if ok && std::ptr::eq(bar.algebra(), self.alg) {
            Ok(())
        } else {
            Err(Error::Input("the bar complex must be built with this structure's grading".into()))
        }
    }

    /// `g·p_x` for every dual label `x`, as combinations of labels.
    pub fn dual_action(&self, bar: &BarComplex<'_>, g: usize) -> Vec<Vec<(u8, Rational)>> {
        let ginv = self.group.inv(g);
        let n = bar.num_labels();
        let mut out = vec![Vec::new(); n];
        for y in 0..n {
            let by = bar.label_basis_index(y as u8);
            for (bx, c) in self.action[ginv][by].iter() {
                let x = bar.label_of(self.alg.label(bx)).unwrap();
                out[x as usize].push((y as u8, c.clone()));
            }
        }
        out
    }

    /// Diagonal action on a tensor word.
    pub fn act_on_word(dual: &[Vec<(u8, Rational)>], w: &[u8]) -> Vec<(Word, Rational)> {
        let mut acc: Vec<(Word, Rational)> = vec![(Word::new(), Rational::from_int(1))];
        for &l in w {
            let mut next = Vec::with_capacity(acc.len() * dual[l as usize].len());
            for (v, c) in &acc {
                for (m, d) in &dual[l as usize] {
                    let mut v2 = v.clone();
                    v2.push(*m);
                    next.push((v2, c * d));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn act_on_cochain(&self, bar: &BarComplex<'_>, g: usize, c: &Cochain) -> Cochain {
        let dual = self.dual_action(bar, g);
        c.map_terms(|w| Self::act_on_word(&dual, w))
    }

    /// Words of `Ω^n(p)` in group degree `gdeg` (all degrees when `None`).
    /// The degree must be fixed by conjugation for the space to be stable.
    fn stable_words(&self, bar: &BarComplex<'_>, n: usize, p: usize, gdeg: Option<usize>) -> Result<Vec<Word>> {
        match gdeg {
            Some(g) => {
                if !self.group.is_central(g) {
                    return Err(Error::Input(format!(
                        "degree {} is not central, its component is not stable",
                        self.group.element_name(g)
                    )));
                }
                Ok(bar.block(n, p, g).words().to_vec())
            }
            None => Ok((0..bar.num_gblocks()).flat_map(|g| bar.block(n, p, g).words().to_vec()).collect()),
        }
    }

    /// Images `Σ_{g ∈ subgroup} g·w` of the given words (the averaging
    /// projector up to the factor `1/|subgroup|`), plus the trace of the
    /// projector times `|subgroup|`.
    fn orbit_sums(&self, bar: &BarComplex<'_>, words: &[Word], subgroup: &[usize]) -> (Vec<SparseVec>, Rational) {
        let index: rustc_hash::FxHashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (&w[..], i)).collect();
        let duals: Vec<_> = subgroup.iter().map(|&g| self.dual_action(bar, g)).collect();
        let mut trace = Rational::from_int(0);
        let mut cols = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            let mut pairs = Vec::new();
            for d in &duals {
                for (v, c) in Self::act_on_word(d, w) {
                    let j = index[&v[..]];
                    if j == i {
                        trace += &c;
                    }
                    pairs.push((j, c));
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
        (cols, trace)
    }

    /// Rank and trace of the averaging projector on `Ω^n(p)` (restricted to
    /// group degree `gdeg` when given). Equal for a genuine projector.
    pub fn projector_rank_and_trace(
        &self,
        bar: &BarComplex<'_>,
        n: usize,
        p: usize,
        gdeg: Option<usize>,
    ) -> Result<(usize, Rational)> {
        self.check_bar(bar)?;
        let words = self.stable_words(bar, n, p, gdeg)?;
        let all: Vec<usize> = (0..self.group.order()).collect();
        let (cols, trace) = self.orbit_sums(bar, &words, &all);
        let rank = rank_of_vectors(words.len(), cols, None);
        Ok((rank, &trace / &Rational::from_int(self.group.order() as i64)))
    }

    /// Matrix of the averaging projector on the given stable component, for
    /// idempotency checks.
    pub fn projector_matrix(
        &self,
        bar: &BarComplex<'_>,
        n: usize,
        p: usize,
        gdeg: Option<usize>,
    ) -> Result<crate::linalg::SparseMatrix> {
        self.check_bar(bar)?;
        let words = self.stable_words(bar, n, p, gdeg)?;
        let all: Vec<usize> = (0..self.group.order()).collect();
        let (cols, _) = self.orbit_sums(bar, &words, &all);
        let m = crate::linalg::SparseMatrix::from_columns(words.len(), cols);
        Ok(m.scale(&Rational::new(1, self.group.order() as i64)))
    }

    /// `dim Ω^n(p)^G` (in group degree `gdeg` when given), by the rank of the
    /// averaging projector.
    pub fn invariant_dims_direct(
        &self,
        bar: &BarComplex<'_>,
        n: usize,
        p: usize,
        gdeg: Option<usize>,
    ) -> Result<usize> {
        Ok(self.projector_rank_and_trace(bar, n, p, gdeg)?.0)
    }

    /// `dim Ω^n(p)_e^G` by orbit counting: sum over ordered degree patterns
    /// `q` (listed as nondecreasing tuples, weighted by their number of
    /// rearrangements) and over orbit representatives `x` of tuples of group
    /// degrees with product `e`, of the dimension of the invariants of the
    /// stabilizer of `x` in `V_{q_1,x_1} ⊗ ... ⊗ V_{q_n,x_n}`.
    pub fn invariant_dims_formula(&self, bar: &BarComplex<'_>, n: usize, p: usize) -> Result<OrbitDecomposition> {
        self.check_bar(bar)?;
        let g = &self.group;
        let max_deg = (0..bar.num_labels()).map(|l| bar.label_degree(l as u8)).max().unwrap_or(0);
        // labels by (internal degree, group degree)
        let mut slots: BTreeMap<(usize, usize), Vec<u8>> = BTreeMap::new();
        for l in 0..bar.num_labels() {
            let l = l as u8;
            slots.entry((bar.label_degree(l), self.grading().label_gdeg[l as usize])).or_default().push(l);
        }
        let mut patterns = Vec::new();
        nondecreasing(n, p, 1, max_deg, &mut Vec::new(), &mut patterns);
        let mut terms = Vec::new();
        let mut total = 0;
        for q in patterns {
            let rearrangements = count_rearrangements(&q);
            // Tuples of group degrees with product e and nonzero slots.
            let mut tuples = Vec::new();
            let mut cur = Vec::new();
            enumerate_tuples(g, &q, &slots, 0, g.identity(), &mut cur, &mut tuples);
            if tuples.is_empty() {
                continue;
            }
            let set: std::collections::BTreeSet<Vec<usize>> = tuples.iter().cloned().collect();
            let mut seen = std::collections::BTreeSet::new();
            let mut orbits = Vec::new();
            for x in &set {
                if seen.contains(x) {
                    continue;
                }
                let orbit: std::collections::BTreeSet<Vec<usize>> =
                    (0..g.order()).map(|h| x.iter().map(|&xi| g.conj(h, xi)).collect()).collect();
                let rep = orbit.iter().next().unwrap().clone();
                seen.extend(orbit.iter().cloned());
                let stabilizer: Vec<usize> =
                    (0..g.order()).filter(|&h| rep.iter().all(|&xi| g.conj(h, xi) == xi)).collect();
                let mut words: Vec<Word> = vec![Word::new()];
                for (k, &xi) in rep.iter().enumerate() {
                    let labels = &slots[&(q[k], xi)];
                    words = words
                        .iter()
                        .flat_map(|w| {
                            labels.iter().map(move |&l| {
                                let mut v = w.clone();
                                v.push(l);
                                v
                            })
                        })
                        .collect();
                }
                let (cols, _) = self.orbit_sums(bar, &words, &stabilizer);
                let inv = rank_of_vectors(words.len(), cols, None);
                orbits.push(OrbitTerm {
                    representative: rep.iter().map(|&e| g.element_name(e)).collect(),
                    orbit_size: orbit.len(),
                    stabilizer_order: stabilizer.len(),
                    space_dim: words.len(),
                    invariant_dim: inv,
                });
            }
            let sub: usize = orbits.iter().map(|o| o.invariant_dim).sum::<usize>() * rearrangements;
            total += sub;
            terms.push(PatternTerm { pattern: q, rearrangements, tuples: set.len(), orbits });
        }
        Ok(OrbitDecomposition { total, terms })
    }

    /// `dim` of the invariant part of `E_n` for the given bosonization,
    /// summed over all internal degrees.
    ///
    /// For `kG`, invariants are computed on the invariant subcomplex; in
    /// characteristic zero this equals the invariants of cohomology. A group
    /// degree class is handled through one representative `h` and the
    /// invariants of its centralizer on the degree `h` block.
    pub fn invariant_cohomology_dim(&self, bar: &BarComplex<'_>, kind: Bosonization, n: usize) -> Result<usize> {
        self.check_bar(bar)?;
        let ps: Vec<usize> = if n == 0 { vec![0] } else { (n..=bar.max_internal_degree(n)).collect() };
        let mut total = 0;
        for p in ps {
            match kind {
                Bosonization::DualGroupAlgebra => total += bar.cohomology_dim(n, p, self.group.identity())?,
                Bosonization::GroupAlgebra => {
                    for class in self.group.conjugacy_classes() {
                        let h = class[0];
                        if bar.cohomology_dim(n, p, h)? == 0 {
                            // Invariants of a zero space.
                            continue;
                        }
                        total += self.invariant_block_cohomology(bar, n, p, h)?;
                    }
                }
            }
        }
        Ok(total)
    }

    fn invariant_basis(&self, bar: &BarComplex<'_>, n: usize, p: usize, h: usize) -> Vec<SparseVec> {
        let block = bar.block(n, p, h);
        let cent = self.group.centralizer(h);
        let (cols, _) = self.orbit_sums(bar, block.words(), &cent);
        let mut e = Echelon::new(block.len());
        for c in &cols {
            let _ = e.insert(c);
        }
        e.rows().to_vec()
    }

    fn delta_rank_on(
        &self,
        bar: &BarComplex<'_>,
        n: usize,
        p: usize,
        h: usize,
        vecs: &[SparseVec],
        bound: usize,
    ) -> usize {
        let src = bar.block(n, p, h);
        let dst = bar.block(n + 1, p, h);
        if vecs.is_empty() || dst.is_empty() {
            return 0;
        }
        let images: Vec<SparseVec> = vecs
            .iter()
            .map(|v| {
                let c = src.to_cochain(n, v);
                dst.to_vec(&bar.delta(&c))
            })
            .collect();
        rank_of_vectors(dst.len(), images, Some(bound))
    }

    /// Cohomology of the centralizer invariant subcomplex at `(n, p, h)`.
    fn invariant_block_cohomology(&self, bar: &BarComplex<'_>, n: usize, p: usize, h: usize) -> Result<usize> {
        let here = self.invariant_basis(bar, n, p, h);
        let r_in = if n == 0 {
            0
        } else {
            let before = self.invariant_basis(bar, n - 1, p, h);
            self.delta_rank_on(bar, n - 1, p, h, &before, before.len())
        };
        let r_out = self.delta_rank_on(bar, n, p, h, &here, here.len() - r_in);
        Ok(here.len() - r_in - r_out)
    }
}

/// Result of orbit counting for invariants of a degree `e` component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub total: usize,
    pub terms: Vec<PatternTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternTerm {
    /// Nondecreasing tuple of internal degrees.
    pub pattern: Vec<usize>,
    /// Number of distinct rearrangements of `pattern`.
    pub rearrangements: usize,
    /// Number of group degree tuples with product `e` and nonzero slots.
    pub tuples: usize,
    pub orbits: Vec<OrbitTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTerm {
    /// Lexicographically least tuple of the orbit.
    pub representative: Vec<String>,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub space_dim: usize,
    pub invariant_dim: usize,
}

impl OrbitDecomposition {
    /// Groups orbits of each pattern by stabilizer order (largest first) and
    /// invariant dimension, giving `(number of orbits, rearrangements,
    /// invariant dim)` triples whose products sum to the total.
    pub fn summary(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for t in &self.terms {
            let mut groups: BTreeMap<(std::cmp::Reverse<usize>, usize), usize> = BTreeMap::new();
            for o in &t.orbits {
                if o.invariant_dim > 0 {
                    *groups.entry((std::cmp::Reverse(o.stabilizer_order), o.invariant_dim)).or_default() += 1;
                }
            }
            for ((_, d), k) in groups {
                out.push((k, t.rearrangements, d));
            }
        }
        out
    }
}

fn nondecreasing(n: usize, p: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        if p == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for d in min..=max.min(p) {
        if d * n > p {
            break;
        }
        cur.push(d);
        nondecreasing(n - 1, p - d, d, max, cur, out);
        cur.pop();
    }
}

fn count_rearrangements(q: &[usize]) -> usize {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in q {
        *counts.entry(d).or_default() += 1;
    }
    let fact = |k: usize| (1..=k).product::<usize>();
    counts.values().fold(fact(q.len()), |acc, &k| acc / fact(k))
}

fn enumerate_tuples(
    g: &FiniteGroup,
    q: &[usize],
    slots: &BTreeMap<(usize, usize), Vec<u8>>,
    k: usize,
    prod: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == q.len() {
        if prod == g.identity() {
            out.push(cur.clone());
        }
        return;
    }
    for x in 0..g.order() {
        if slots.get(&(q[k], x)).is_some_and(|v| !v.is_empty()) {
            cur.push(x);
            enumerate_tuples(g, q, slots, k + 1, g.mul(prod, x), cur, out);
            cur.pop();
        }
    }
}
