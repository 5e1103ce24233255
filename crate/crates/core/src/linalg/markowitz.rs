//! Right looking sparse elimination used for plain rank computations.
//!
//! Pivot choice: the active coordinate with the fewest nonzeros, then the
//! shortest vector containing it (ties by index). Counts are tracked exactly;
//! the heap holds possibly stale `(count, coordinate)` pairs that are skipped
//! on pop.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Rational, SparseVec};

pub(crate) struct Elimination {
    vecs: Vec<Option<Vec<(u32, Rational)>>>,
    holders: Vec<Vec<u32>>,
    count: Vec<u32>,
    done: Vec<bool>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
}

fn find(v: &[(u32, Rational)], c: u32) -> Option<usize> {
    v.binary_search_by_key(&c, |e| e.0).ok()
}

impl Elimination {
    pub(crate) fn new(dim: usize, vectors: Vec<SparseVec>) -> Self {
        let mut holders = vec![Vec::new(); dim];
        let mut count = vec![0u32; dim];
        let mut vecs = Vec::with_capacity(vectors.len());
        for (k, v) in vectors.into_iter().enumerate() {
            for (i, _) in v.entries() {
                holders[*i as usize].push(k as u32);
                count[*i as usize] += 1;
            }
            vecs.push(if v.is_zero() { None } else { Some(v.into_entries()) });
        }
        let heap = count.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| Reverse((c, i as u32))).collect();
        Elimination { vecs, holders, count, done: vec![false; dim], heap }
    }

    fn next_pivot_coordinate(&mut self) -> Option<u32> {
        while let Some(Reverse((c, i))) = self.heap.pop() {
            let iu = i as usize;
            if self.done[iu] || self.count[iu] != c || c == 0 {
                continue;
            }
            return Some(i);
        }
        None
    }

    fn touch(&mut self, coord: u32) {
        let c = self.count[coord as usize];
        if c > 0 && !self.done[coord as usize] {
            self.heap.push(Reverse((c, coord)));
        }
    }

    /// One elimination step; returns false when nothing is left.
    fn step(&mut self) -> bool {
        let Some(col) = self.next_pivot_coordinate() else { return false };
        let mut holders = std::mem::take(&mut self.holders[col as usize]);
        holders.sort_unstable();
        holders.dedup();
        holders.retain(|&k| self.vecs[k as usize].as_ref().is_some_and(|v| find(v, col).is_some()));
        debug_assert_eq!(holders.len() as u32, self.count[col as usize]);
        let pivot = *holders
            .iter()
            .min_by_key(|&&k| (self.vecs[k as usize].as_ref().unwrap().len(), k))
            .expect("active coordinate without holders");
        let prow = self.vecs[pivot as usize].take().unwrap();
        let ppos = find(&prow, col).unwrap();
        let pinv = prow[ppos].1.recip();
        let mut changed: Vec<u32> = Vec::new();
        for &k in &holders {
            if k == pivot {
                continue;
            }
            let row = self.vecs[k as usize].take().unwrap();
            let f = -(&row[find(&row, col).unwrap()].1 * &pinv);
            let mut out = Vec::with_capacity(row.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < prow.len() {
                if j == prow.len() || (i < row.len() && row[i].0 < prow[j].0) {
                    out.push(row[i].clone());
                    i += 1;
                } else if i == row.len() || prow[j].0 < row[i].0 {
                    let c = prow[j].0;
                    out.push((c, &prow[j].1 * &f));
                    self.count[c as usize] += 1;
                    self.holders[c as usize].push(k);
                    changed.push(c);
                    j += 1;
                } else {
                    let c = row[i].0;
                    let s = &row[i].1 + &(&prow[j].1 * &f);
                    if s.is_zero() {
                        self.count[c as usize] -= 1;
                        changed.push(c);
                    } else {
                        out.push((c, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.vecs[k as usize] = if out.is_empty() { None } else { Some(out) };
        }
        for (c, _) in &prow {
            self.count[*c as usize] -= 1;
            changed.push(*c);
        }
        self.done[col as usize] = true;
        changed.sort_unstable();
        changed.dedup();
        for c in changed {
            self.touch(c);
        }
        true
    }
}

/// Rank of the span of `vectors` inside a space of dimension `dim`, stopping
/// early once `bound` pivots have been found.
pub fn rank_of_vectors(dim: usize, vectors: Vec<SparseVec>, bound: Option<usize>) -> usize {
    let bound = bound.unwrap_or(usize::MAX);
    let mut e = Elimination::new(dim, vectors);
    let mut rank = 0;
    while rank < bound && e.step() {
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, c)| (i, Rational::from_int(c))))
    }

    #[test]
    fn small_ranks() {
        let vs = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])];
        assert_eq!(rank_of_vectors(3, vs.clone(), None), 2);
        assert_eq!(rank_of_vectors(3, vs, Some(1)), 1);
        assert_eq!(rank_of_vectors(5, vec![SparseVec::new(), v(&[(4, 3)])], None), 1);
    }
}
