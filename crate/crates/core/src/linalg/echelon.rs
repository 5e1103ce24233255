//! Incremental echelon basis.
//!
//! Every stored vector has leading coefficient 1 at its pivot, and pivots are
//! distinct. Reduction walks coordinates in increasing order, so a reduced
//! vector never has a nonzero entry at a pivot coordinate.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use super::{Rational, SparseVec};

#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_of: FxHashMap<u32, usize>,
    /// Expression of each stored row in terms of the inserted vectors.
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

fn to_acc(v: &SparseVec) -> BTreeMap<u32, Rational> {
    v.entries().iter().cloned().collect()
}

fn from_acc(acc: BTreeMap<u32, Rational>) -> SparseVec {
    SparseVec::from_sorted(acc.into_iter().filter(|e| !e.1.is_zero()).collect())
}

fn axpy(acc: &mut BTreeMap<u32, Rational>, c: &Rational, v: &SparseVec) {
    for (i, x) in v.entries() {
        let t = x * c;
        match acc.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(t);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &t;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_of: FxHashMap::default(), combos: None, inserted: 0 }
    }

    /// Like [`Echelon::new`] but remembers how each basis row was formed.
    pub fn tracking(dim: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Echelon::new(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_of.contains_key(&(i as u32))
    }

    fn reduce_acc(&self, acc: &mut BTreeMap<u32, Rational>, mut combo: Option<&mut BTreeMap<u32, Rational>>) {
        let mut cursor = 0u32;
        loop {
            let Some((&k, c)) = acc.range(cursor..).next() else { break };
            cursor = k + 1;
            if let Some(&r) = self.pivot_of.get(&k) {
                let c = -c;
                axpy(acc, &c, &self.rows[r]);
                debug_assert!(!acc.contains_key(&k));
                if let Some(cb) = combo.as_deref_mut() {
                    axpy(cb, &c, &self.combos.as_ref().unwrap()[r]);
                }
            }
        }
    }

    /// Normal form of `v`: no entries at pivot coordinates.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = to_acc(v);
        self.reduce_acc(&mut acc, None);
        from_acc(acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Writes `v` as a combination of inserted vectors when `v` lies in the span.
    /// Requires a tracking echelon.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "express needs a tracking echelon");
        let mut acc = to_acc(v);
        let mut combo = BTreeMap::new();
        self.reduce_acc(&mut acc, Some(&mut combo));
        if acc.values().any(|c| !c.is_zero()) {
            return None;
        }
        // v - sum(c_r row_r) = 0 with the subtracted part recorded negated.
        Some(from_acc(combo).neg())
    }

    /// Inserts a vector. Returns `Ok(pivot)` when it enlarged the span. For a
    /// dependent vector on a tracking echelon, returns `Err(Some(relation))`
    /// where `relation` is a vanishing combination of inserted vectors that
    /// involves this one with coefficient 1; otherwise `Err(None)`.
    pub fn insert(&mut self, v: &SparseVec) -> Result<usize, Option<SparseVec>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut acc = to_acc(v);
        let mut combo = self.combos.as_ref().map(|_| {
            let mut m = BTreeMap::new();
            m.insert(idx as u32, Rational::from_int(1));
            m
        });
        self.reduce_acc(&mut acc, combo.as_mut());
        let reduced = from_acc(acc);
        match reduced.leading() {
            None => Err(combo.map(from_acc)),
            Some((p, c)) => {
                let inv = c.recip();
                self.pivot_of.insert(p as u32, self.rows.len());
                self.rows.push(reduced.scale(&inv));
                if let (Some(combos), Some(cb)) = (self.combos.as_mut(), combo) {
                    combos.push(from_acc(cb).scale(&inv));
                }
                Ok(p)
            }
        }
    }

    /// Fully reduced basis (reduced row echelon form), rows sorted by pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].leading().unwrap().0));
        let mut done = Echelon::new(self.dim);
        let mut out = Vec::with_capacity(self.rows.len());
        // Process from the largest pivot down; `done` holds fully reduced rows.
        for r in order {
            let row = &self.rows[r];
            let (p, _) = row.leading().unwrap();
            let mut acc = to_acc(row);
            acc.remove(&(p as u32));
            done.reduce_acc(&mut acc, None);
            acc.insert(p as u32, Rational::from_int(1));
            let full = from_acc(acc);
            done.pivot_of.insert(p as u32, done.rows.len());
            done.rows.push(full.clone());
            out.push(full);
        }
        out.reverse();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, c)| (i, Rational::from_int(c))))
    }

    #[test]
    fn insert_and_reduce() {
        let mut e = Echelon::new(4);
        assert!(e.insert(&v(&[(0, 2), (1, 2)])).is_ok());
        assert!(e.insert(&v(&[(1, 1), (2, 1)])).is_ok());
        assert!(e.insert(&v(&[(0, 1), (2, -1)])).is_err());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 1), (1, 2), (2, 1)])));
        assert!(!e.contains(&v(&[(3, 1)])));
    }

    #[test]
    fn tracking_relations_and_expressions() {
        let mut e = Echelon::tracking(3);
        let a = v(&[(0, 1), (1, 1)]);
        let b = v(&[(1, 1), (2, 1)]);
        let c = v(&[(0, 1), (2, -1)]);
        e.insert(&a).unwrap();
        e.insert(&b).unwrap();
        let rel = e.insert(&c).unwrap_err().unwrap();
        // c - a + b = 0
        assert_eq!(rel, v(&[(0, -1), (1, 1), (2, 1)]));
        let target = v(&[(0, 2), (1, 3), (2, 1)]);
        let x = e.express(&target).unwrap();
        let rebuilt = a.scale(&x.get(0)).add(&b.scale(&x.get(1))).add(&c.scale(&x.get(2)));
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn reduced_basis_is_rref() {
        let mut e = Echelon::new(3);
        e.insert(&v(&[(0, 1), (1, 1), (2, 1)])).unwrap();
        e.insert(&v(&[(1, 1), (2, 2)])).unwrap();
        let b = e.reduced_basis();
        assert_eq!(b, vec![v(&[(0, 1), (2, -1)]), v(&[(1, 1), (2, 2)])]);
    }
}
