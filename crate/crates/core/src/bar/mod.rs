//! The normalized bar complex computing the Yoneda algebra of a connected
//! finite dimensional graded algebra.
//!
//! Cochains live in tensor powers of the dual of the augmentation ideal.
//! `Ω^n(p)` is spanned by words of `n` dual basis labels whose internal
//! degrees sum to `p`; the differential preserves `p` and, when the algebra is
//! graded by a finite group, the ordered product of the group degrees of the
//! letters. Each such piece is handled as an independent block.
//!
//! Sign convention: `δ¹(f) = -Σ f'⊗f''` where `f(xy) = Σ f'(x) f''(y)`, and
//! `δ^{n+1} = δ¹⊗id - id⊗δ^n`, so the letter in position `k` (from 0) picks
//! up the sign `(-1)^k`.

mod cochain;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

pub use cochain::{Cochain, Word};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Perm};
use crate::linalg::{rank_of_vectors, Echelon, Rational, SparseVec};

/// Group grading of the dual labels.
#[derive(Clone, Debug)]
pub struct Grading {
    pub group: FiniteGroup,
    /// Group degree of each dual label.
    pub label_gdeg: Vec<usize>,
}

/// Words of one block `(n, p, g)` and their positions.
#[derive(Debug, Default)]
pub struct Block {
    words: Vec<Word>,
    index: FxHashMap<Word, u32>,
}

impl Block {
    fn new(words: Vec<Word>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        Block { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn position(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    pub fn to_vec(&self, c: &Cochain) -> SparseVec {
        SparseVec::from_pairs(c.terms().map(|(w, x)| (self.index[w] as usize, x.clone())))
    }

    pub fn to_cochain(&self, n: usize, v: &SparseVec) -> Cochain {
        Cochain::from_terms(n, v.iter().map(|(i, x)| (self.words[i].clone(), x.clone())))
    }
}

type BlockKey = (usize, usize, usize);

pub struct BarComplex<'a> {
    alg: &'a GradedAlgebra,
    /// Algebra basis index of each dual label.
    labels: Vec<usize>,
    label_degree: Vec<usize>,
    /// For each label `x`: all `(y, z, c)` with `c` the coefficient of `x` in `y z`.
    factorizations: Vec<Vec<(u8, u8, Rational)>>,
    grading: Option<Grading>,
    max_label_degree: usize,
    blocks: Mutex<FxHashMap<(usize, usize), Arc<Vec<Arc<Block>>>>>,
    ranks: Mutex<FxHashMap<BlockKey, usize>>,
    images: Mutex<FxHashMap<BlockKey, Arc<Echelon>>>,
    memory_limit_mb: Option<usize>,
}

/// Reads `YONEDA_MAX_MEMORY_MB`.
pub fn memory_limit_from_env() -> Option<usize> {
    std::env::var("YONEDA_MAX_MEMORY_MB").ok().and_then(|s| s.trim().parse().ok())
}

impl Grading {
    /// Grading induced by the `gdeg` annotations of the generators, if every
    /// generator carries one. The group is the symmetric group on the points
    /// that occur.
    pub fn from_generators(alg: &GradedAlgebra, labels: &[usize]) -> Result<Option<Grading>> {
        let gens = alg.generators();
        if gens.is_empty() || gens.iter().any(|g| g.gdeg.is_none()) {
            return Ok(None);
        }
        let points = gens
            .iter()
            .flat_map(|g| g.gdeg.as_ref().unwrap().chars().filter_map(|c| c.to_digit(10)))
            .max()
            .unwrap_or(1) as usize;
        let group = FiniteGroup::symmetric(points.max(2));
        let gen_deg: Vec<usize> = gens
            .iter()
            .map(|g| {
                let p = Perm::parse(g.gdeg.as_ref().unwrap(), group.degree())?;
                group.index_of(&p).ok_or_else(|| Error::Input("group degree outside the group".into()))
            })
            .collect::<Result<_>>()?;
        let mut label_gdeg = Vec::with_capacity(labels.len());
        for &b in labels {
            let word =
                alg.basis()[b].word.as_ref().ok_or_else(|| Error::Input("group grading needs basis words".into()))?;
            label_gdeg.push(group.product(word.iter().map(|&g| gen_deg[g])));
        }
        Ok(Some(Grading { group, label_gdeg }))
    }
}

impl<'a> BarComplex<'a> {
    /// Bar complex, split by the group grading of the generators when present.
    pub fn new(alg: &'a GradedAlgebra) -> Result<Self> {
        let labels: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) > 0).collect();
        let grading = Grading::from_generators(alg, &labels)?;
        Self::with_grading(alg, grading)
    }

    pub fn ungraded(alg: &'a GradedAlgebra) -> Result<Self> {
        Self::with_grading(alg, None)
    }

    pub fn with_grading(alg: &'a GradedAlgebra, grading: Option<Grading>) -> Result<Self> {
        if !alg.is_complete() {
            return Err(Error::Input("the bar complex needs a finite dimensional (complete) algebra".into()));
        }
        if alg.degree_range(0).len() != 1 {
            return Err(Error::Input("the algebra must be connected".into()));
        }
        let labels: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) > 0).collect();
        if labels.len() > 255 {
            return Err(Error::Input("too many basis elements for the bar complex".into()));
        }
        let mut label_of = vec![usize::MAX; alg.dim()];
        for (l, &b) in labels.iter().enumerate() {
            label_of[b] = l;
        }
        let mut factorizations = vec![Vec::new(); labels.len()];
        for (y, &by) in labels.iter().enumerate() {
            for (z, &bz) in labels.iter().enumerate() {
                for (bx, c) in alg.product_of_basis(by, bz).iter() {
                    factorizations[label_of[bx]].push((y as u8, z as u8, c.clone()));
                }
            }
        }
        if let Some(g) = &grading {
            for (x, fs) in factorizations.iter().enumerate() {
                for (y, z, _) in fs {
                    let gy = g.label_gdeg[*y as usize];
                    let gz = g.label_gdeg[*z as usize];
                    if g.group.mul(gy, gz) != g.label_gdeg[x] {
                        return Err(Error::RelationViolation(
                            "multiplication does not respect the group grading".into(),
                        ));
                    }
                }
            }
        }
        let label_degree: Vec<usize> = labels.iter().map(|&b| alg.degree(b)).collect();
        let max_label_degree = label_degree.iter().copied().max().unwrap_or(0);
        Ok(BarComplex {
            alg,
            labels,
            label_degree,
            factorizations,
            grading,
            max_label_degree,
            blocks: Mutex::new(FxHashMap::default()),
            ranks: Mutex::new(FxHashMap::default()),
            images: Mutex::new(FxHashMap::default()),
            memory_limit_mb: memory_limit_from_env(),
        })
    }

    pub fn set_memory_limit_mb(&mut self, limit: Option<usize>) {
        self.memory_limit_mb = limit;
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.alg
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn label_degree(&self, l: u8) -> usize {
        self.label_degree[l as usize]
    }

    pub fn label_name(&self, l: u8) -> &str {
        self.alg.label(self.labels[l as usize])
    }

    pub fn label_basis_index(&self, l: u8) -> usize {
        self.labels[l as usize]
    }

    pub fn label_of(&self, name: &str) -> Option<u8> {
        let b = self.alg.index_of(name)?;
        self.labels.iter().position(|&x| x == b).map(|l| l as u8)
    }

    /// Largest internal degree `p` with `Ω^n(p) != 0`.
    pub fn max_internal_degree(&self, n: usize) -> usize {
        n * self.max_label_degree
    }

    pub fn num_gblocks(&self) -> usize {
        self.grading.as_ref().map_or(1, |g| g.group.order())
    }

    pub fn word_gdeg(&self, w: &[u8]) -> usize {
        match &self.grading {
            None => 0,
            Some(g) => g.group.product(w.iter().map(|&l| g.label_gdeg[l as usize])),
        }
    }

    pub fn word_degree(&self, w: &[u8]) -> usize {
        w.iter().map(|&l| self.label_degree[l as usize]).sum()
    }

    /// Cochain from basis labels, e.g. `[(1, &["b", "ab"]), (1, &["ba", "b"])]`.
    pub fn cochain(&self, terms: &[(i64, &[&str])]) -> Cochain {
        self.try_cochain(terms).expect("unknown label in cochain")
    }

    pub fn try_cochain(&self, terms: &[(i64, &[&str])]) -> Result<Cochain> {
        let n = terms.first().map_or(0, |t| t.1.len());
        let mut out = Cochain::zero(n);
        for (c, names) in terms {
            if names.len() != n {
                return Err(Error::Input("cochain terms of different lengths".into()));
            }
            let w = names
                .iter()
                .map(|s| self.label_of(s).ok_or_else(|| Error::Input(format!("unknown label {s:?}"))))
                .collect::<Result<Word>>()?;
            out.add_term(w, &Rational::from_int(*c));
        }
        Ok(out)
    }

    pub fn format(&self, c: &Cochain) -> String {
        c.format_with(&|l| self.label_name(l).to_string())
    }

    /// Number of words in `Ω^n(p)`, without building them.
    pub fn count_words(&self, n: usize, p: usize) -> u128 {
        let mut dp = vec![vec![0u128; p + 1]; n + 1];
        dp[0][0] = 1;
        for k in 1..=n {
            for q in 0..=p {
                let mut s = 0u128;
                for &d in &self.label_degree {
                    if d <= q {
                        s += dp[k - 1][q - d];
                    }
                }
                dp[k][q] = s;
            }
        }
        dp[n][p]
    }

    fn generate(&self, n: usize, p: usize) -> Vec<Arc<Block>> {
        let nb = self.num_gblocks();
        let mut buckets: Vec<Vec<Word>> = vec![Vec::new(); nb];
        let maxd = self.max_label_degree;
        fn rec(
            bar: &BarComplex<'_>,
            left_n: usize,
            left_p: usize,
            maxd: usize,
            g: usize,
            cur: &mut Word,
            buckets: &mut Vec<Vec<Word>>,
        ) {
            if left_n == 0 {
                if left_p == 0 {
                    buckets[g].push(cur.clone());
                }
                return;
            }
            for l in 0..bar.labels.len() {
                let d = bar.label_degree[l];
                if d > left_p {
                    continue;
                }
                let rest = left_p - d;
                if rest < left_n - 1 || rest > (left_n - 1) * maxd {
                    continue;
                }
                let g2 = match &bar.grading {
                    None => 0,
                    Some(gr) => gr.group.mul(g, gr.label_gdeg[l]),
                };
                cur.push(l as u8);
                rec(bar, left_n - 1, rest, maxd, g2, cur, buckets);
                cur.pop();
            }
        }
        if n == 0 {
            if p == 0 {
                buckets[0].push(Word::new());
            }
        } else if p >= n && p <= n * maxd {
            rec(self, n, p, maxd, 0, &mut Word::new(), &mut buckets);
        }
        buckets.into_iter().map(|w| Arc::new(Block::new(w))).collect()
    }

    /// The block of words of `Ω^n(p)` in group degree `g` (use 0 when ungraded).
    pub fn block(&self, n: usize, p: usize, g: usize) -> Arc<Block> {
        self.blocks_np(n, p)[g].clone()
    }

    fn blocks_np(&self, n: usize, p: usize) -> Arc<Vec<Arc<Block>>> {
        if let Some(b) = self.blocks.lock().unwrap().get(&(n, p)) {
            return b.clone();
        }
        let fam = Arc::new(self.generate(n, p));
        self.blocks.lock().unwrap().insert((n, p), fam.clone());
        fam
    }

    /// Drops cached blocks, ranks are kept.
    pub fn clear_cache(&self) {
        self.blocks.lock().unwrap().clear();
        self.images.lock().unwrap().clear();
    }

    fn drop_blocks(&self, n: usize, p: usize) {
        self.blocks.lock().unwrap().remove(&(n, p));
    }

    /// `δ(p_w)` as a list of terms.
    pub fn delta_word(&self, w: &[u8]) -> Vec<(Word, Rational)> {
        let mut out = Vec::new();
        for k in 0..w.len() {
            let neg = k % 2 == 0;
            for (y, z, c) in &self.factorizations[w[k] as usize] {
                let mut v = Word::with_capacity(w.len() + 1);
                v.extend_from_slice(&w[..k]);
                v.push(*y);
                v.push(*z);
                v.extend_from_slice(&w[k + 1..]);
                out.push((v, if neg { -c } else { c.clone() }));
            }
        }
        out
    }

    pub fn delta(&self, c: &Cochain) -> Cochain {
        let mut out = Cochain::zero(c.n() + 1);
        for (w, x) in c.terms() {
            for (v, y) in self.delta_word(w) {
                out.add_term(v, &(x * &y));
            }
        }
        out
    }

    fn delta_columns(&self, src: &Block, dst: &Block) -> Vec<SparseVec> {
        src.words
            .iter()
            .map(|w| SparseVec::from_pairs(self.delta_word(w).into_iter().map(|(v, c)| (dst.index[&v] as usize, c))))
            .collect()
    }

    /// Matrix of `δ^n : Ω^n(p)_g -> Ω^{n+1}(p)_g`.
    pub fn delta_matrix(&self, n: usize, p: usize, g: usize) -> crate::linalg::SparseMatrix {
        let src = self.block(n, p, g);
        let dst = self.block(n + 1, p, g);
        crate::linalg::SparseMatrix::from_columns(dst.len(), self.delta_columns(&src, &dst))
    }

    fn check_budget(&self, n: usize, p: usize) -> Result<()> {
        let Some(limit) = self.memory_limit_mb else { return Ok(()) };
        let src = self.count_words(n, p);
        let dst = self.count_words(n + 1, p);
        // Rough footprint: word tables plus the elimination working set.
        let bytes = dst * 96 + src * 8 * 48 * 4;
        if bytes > (limit as u128) << 20 {
            return Err(Error::ResourceLimit(format!("block n={n}, p={p} needs about {} MB", bytes >> 20)));
        }
        Ok(())
    }

    /// Rank of `δ^n` on the block `(n, p, g)`.
    pub fn rank_delta(&self, n: usize, p: usize, g: usize) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        if let Some(&r) = self.ranks.lock().unwrap().get(&(n, p, g)) {
            return Ok(r);
        }
        let prev = self.rank_delta(n - 1, p, g)?;
        let src = self.block(n, p, g);
        let dst = self.block(n + 1, p, g);
        let r = if src.is_empty() || dst.is_empty() {
            0
        } else {
            self.check_budget(n, p)?;
            let bound = src.len() - prev;
            let cols = self.delta_columns(&src, &dst);
            rank_of_vectors(dst.len(), cols, Some(bound))
        };
        self.ranks.lock().unwrap().insert((n, p, g), r);
        Ok(r)
    }

    /// `dim H^n(Ω(p)_g)`.
    pub fn cohomology_dim(&self, n: usize, p: usize, g: usize) -> Result<usize> {
        let size = self.block(n, p, g).len();
        if size == 0 {
            return Ok(0);
        }
        let r_in = if n == 0 { 0 } else { self.rank_delta(n - 1, p, g)? };
        let r_out = self.rank_delta(n, p, g)?;
        Ok(size - r_in - r_out)
    }

    /// `dim H^n(Ω(p))`, summed over group degrees.
    pub fn cohomology_dim_total(&self, n: usize, p: usize) -> Result<usize> {
        let mut s = 0;
        for g in 0..self.num_gblocks() {
            s += self.cohomology_dim(n, p, g)?;
        }
        Ok(s)
    }

    /// `dim H^n(Ω(p))` for every `p` that can carry cohomology, i.e.
    /// `n <= p <= n * (top degree)`; all other blocks are empty.
    pub fn ext_dims_by_internal_degree(&self, n: usize) -> Result<Vec<(usize, usize)>> {
        if n == 0 {
            return Ok(vec![(0, 1)]);
        }
        let mut out = Vec::new();
        for p in n..=self.max_internal_degree(n) {
            let d = self.cohomology_dim_total(n, p)?;
            // Blocks of degree n + 1 are only needed for this n.
            self.drop_blocks(n + 1, p);
            out.push((p, d));
        }
        Ok(out)
    }

    /// `dim E_n` of the Yoneda algebra.
    pub fn ext_dim(&self, n: usize) -> Result<usize> {
        Ok(self.ext_dims_by_internal_degree(n)?.iter().map(|e| e.1).sum())
    }

    fn image_echelon(&self, n: usize, p: usize, g: usize) -> Arc<Echelon> {
        if let Some(e) = self.images.lock().unwrap().get(&(n, p, g)) {
            return e.clone();
        }
        let dst = self.block(n, p, g);
        let mut e = Echelon::tracking(dst.len());
        if n > 0 {
            let src = self.block(n - 1, p, g);
            for c in self.delta_columns(&src, &dst) {
                let _ = e.insert(&c);
            }
        }
        let e = Arc::new(e);
        self.images.lock().unwrap().insert((n, p, g), e.clone());
        e
    }

    /// Splits a cochain into its `(p, g)` parts.
    pub fn split(&self, c: &Cochain) -> BTreeMap<(usize, usize), Cochain> {
        let mut out: BTreeMap<(usize, usize), Cochain> = BTreeMap::new();
        for (w, x) in c.terms() {
            out.entry((self.word_degree(w), self.word_gdeg(w)))
                .or_insert_with(|| Cochain::zero(c.n()))
                .add_term(w.clone(), x);
        }
        out
    }

    /// Cocycle representatives of a basis of `H^n(Ω(p))`, block by block.
    /// Each representative is reduced modulo coboundaries and scaled so its
    /// first term has coefficient 1.
    pub fn cocycle_basis(&self, n: usize, p: usize) -> Result<Vec<Cochain>> {
        let mut out = Vec::new();
        for g in 0..self.num_gblocks() {
            out.extend(self.cocycle_basis_block(n, p, g)?);
        }
        Ok(out)
    }

    pub fn cocycle_basis_block(&self, n: usize, p: usize, g: usize) -> Result<Vec<Cochain>> {
        let src = self.block(n, p, g);
        if src.is_empty() {
            return Ok(Vec::new());
        }
        self.check_budget(n, p)?;
        let dst = self.block(n + 1, p, g);
        let mut ker = Echelon::tracking(dst.len());
        let mut relations = Vec::new();
        for c in self.delta_columns(&src, &dst) {
            if let Err(Some(rel)) = ker.insert(&c) {
                relations.push(rel);
            }
        }
        let image = self.image_echelon(n, p, g);
        let mut chosen = (*image).clone();
        let mut reps = Vec::new();
        for rel in relations {
            let r = image.reduce(&rel);
            if chosen.insert(&r).is_ok() {
                reps.push(src.to_cochain(n, &r.normalized()));
            }
        }
        Ok(reps)
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.delta(c).is_zero()
    }

    /// For a cocycle `c`, returns some `u` with `δu = c` if one exists.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<Option<Cochain>> {
        if !self.is_cocycle(c) {
            return Err(Error::NotACocycle);
        }
        let n = c.n();
        if c.is_zero() {
            return Ok(Some(Cochain::zero(n.saturating_sub(1))));
        }
        if n == 0 {
            return Ok(None);
        }
        let mut witness = Cochain::zero(n - 1);
        for ((p, g), part) in self.split(c) {
            self.check_budget(n - 1, p)?;
            let dst = self.block(n, p, g);
            let src = self.block(n - 1, p, g);
            let e = self.image_echelon(n, p, g);
            match e.express(&dst.to_vec(&part)) {
                None => return Ok(None),
                Some(x) => witness = witness.add(&src.to_cochain(n - 1, &x)),
            }
        }
        Ok(Some(witness))
    }

    /// Whether two cocycles define the same class.
    pub fn cohomologous(&self, a: &Cochain, b: &Cochain) -> Result<bool> {
        self.is_exact(&a.sub(b))
    }

    /// Dimension of the span of the classes of the given cocycles, all of the
    /// same cohomological degree.
    pub fn class_span_dim(&self, cocycles: &[Cochain]) -> Result<usize> {
        let Some(first) = cocycles.first() else { return Ok(0) };
        let n = first.n();
        let mut keys: Vec<(usize, usize)> = Vec::new();
        for c in cocycles {
            if c.n() != n && !c.is_zero() {
                return Err(Error::Input("classes of different degrees".into()));
            }
            if !self.is_cocycle(c) {
                return Err(Error::NotACocycle);
            }
            keys.extend(self.split(c).into_keys());
        }
        keys.sort_unstable();
        keys.dedup();
        let mut offsets = FxHashMap::default();
        let mut total = 0;
        for &(p, g) in &keys {
            offsets.insert((p, g), total);
            total += self.block(n, p, g).len();
        }
        // rank(coboundaries + cocycles) - rank(coboundaries), block by block
        // offsets keep the pieces apart in one elimination
        let mut vectors = Vec::new();
        let mut base = 0;
        if n > 0 {
            for &(p, g) in &keys {
                self.check_budget(n - 1, p)?;
                base += self.rank_delta(n - 1, p, g)?;
                let off = offsets[&(p, g)];
                let src = self.block(n - 1, p, g);
                let dst = self.block(n, p, g);
                vectors.extend(self.delta_columns(&src, &dst).into_iter().map(|c| c.reindex(|i| i + off)));
            }
        }
        for c in cocycles {
            let mut pairs = Vec::new();
            for ((p, g), part) in self.split(c) {
                let off = offsets[&(p, g)];
                let b = self.block(n, p, g);
                pairs.extend(b.to_vec(&part).iter().map(|(i, x)| (i + off, x.clone())));
            }
            vectors.push(SparseVec::from_pairs(pairs));
        }
        Ok(rank_of_vectors(total, vectors, Some(base + cocycles.len())) - base)
    }

    /// Whether the cocycle `c` is a coboundary, without producing a witness.
    pub fn is_exact(&self, c: &Cochain) -> Result<bool> {
        Ok(self.class_span_dim(std::slice::from_ref(c))? == 0)
    }

    /// `dim` of the degree `n` part of the subalgebra generated by the given
    /// classes, for `n = 0..=n_max`.
    pub fn subalgebra_growth(&self, generators: &[Cochain], n_max: usize) -> Result<Vec<usize>> {
        let mut products: Vec<Vec<Cochain>> = vec![vec![Cochain::one()]];
        let mut dims = vec![1];
        for n in 1..=n_max {
            let mut level = Vec::new();
            for gen in generators {
                let k = gen.n();
                if k == 0 || k > n {
                    continue;
                }
                for prefix in &products[n - k] {
                    level.push(prefix.cup(gen));
                }
            }
            dims.push(self.class_span_dim(&level)?);
            products.push(level);
        }
        Ok(dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GradedAlgebra, Presentation};

    fn nil() -> GradedAlgebra {
        let pres = Presentation::from_words(
            &[("a", 1), ("b", 1)],
            &[vec![(1, "aa")], vec![(1, "bb")], vec![(1, "aba"), (-1, "bab")]],
        );
        GradedAlgebra::from_presentation(&pres, 8).unwrap()
    }

    #[test]
    fn low_differentials_match_hand_computation() {
        let alg = nil();
        let bar = BarComplex::new(&alg).unwrap();
        assert!(bar.delta(&bar.cochain(&[(1, &["a"])])).is_zero());
        assert_eq!(bar.delta(&bar.cochain(&[(1, &["ab"])])), bar.cochain(&[(-1, &["a", "b"])]));
        let expected = bar.cochain(&[(1, &["a", "ba"]), (1, &["ab", "a"]), (1, &["b", "ab"]), (1, &["ba", "b"])]);
        assert_eq!(bar.delta(&bar.cochain(&[(1, &["aba"])])), expected.neg());
    }

    #[test]
    fn delta_squares_to_zero() {
        let alg = nil();
        let bar = BarComplex::new(&alg).unwrap();
        for n in 1..4 {
            for p in n..=3 * n {
                for g in 0..bar.num_gblocks() {
                    let d1 = bar.delta_matrix(n, p, g);
                    let d2 = bar.delta_matrix(n + 1, p, g);
                    assert!(d2.mul(&d1).is_zero());
                }
            }
        }
    }

    #[test]
    fn ext_of_nilcoxeter_is_linear() {
        let alg = nil();
        let bar = BarComplex::new(&alg).unwrap();
        for n in 0..5 {
            assert_eq!(bar.ext_dim(n).unwrap(), n + 1);
        }
    }

    #[test]
    fn ungraded_and_graded_agree() {
        let alg = nil();
        let graded = BarComplex::new(&alg).unwrap();
        assert!(graded.grading().is_none());
        let pres = Presentation {
            generators: alg
                .generators()
                .iter()
                .zip(["(12)", "(23)"])
                .map(|(g, d)| crate::algebra::Generator { gdeg: Some(d.into()), ..g.clone() })
                .collect(),
            relations: alg.relations().to_vec(),
        };
        let galg = GradedAlgebra::from_presentation(&pres, 8).unwrap();
        let gbar = BarComplex::new(&galg).unwrap();
        assert_eq!(gbar.num_gblocks(), 6);
        for n in 0..4 {
            assert_eq!(gbar.ext_dim(n).unwrap(), graded.ext_dim(n).unwrap());
        }
    }

    #[test]
    fn coboundary_witness() {
        let alg = nil();
        let bar = BarComplex::new(&alg).unwrap();
        let c = bar.cochain(&[(1, &["a", "b"])]);
        let u = bar.is_coboundary(&c).unwrap().unwrap();
        assert_eq!(bar.delta(&u), c);
        let x = bar.cochain(&[(1, &["a"])]);
        assert_eq!(bar.is_coboundary(&x).unwrap(), None);
        let bad = bar.cochain(&[(1, &["ab"])]);
        assert_eq!(bar.is_coboundary(&bad), Err(Error::NotACocycle));
    }

    #[test]
    fn word_counts_match_blocks() {
        let alg = nil();
        let bar = BarComplex::new(&alg).unwrap();
        for n in 0..5 {
            for p in 0..12 {
                let total: usize = (0..bar.num_gblocks()).map(|g| bar.block(n, p, g).len()).sum();
                assert_eq!(total as u128, bar.count_words(n, p));
            }
        }
    }
}
