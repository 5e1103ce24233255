//! Finite permutation groups, small enough to tabulate.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Permutation of `0..n`, stored as the list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut j = self.0[s] as usize;
            while j != s {
                seen[j] = true;
                cyc.push(j);
                j = self.0[j] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn sign(&self) -> i64 {
        if self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let id = Perm::identity(self.degree());
        let mut k = 1;
        while p != id {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Parses cycle notation on points `1..=n`, e.g. `(12)`, `(1,3)(2,4)`, `e`.
    pub fn parse(s: &str, n: usize) -> Result<Perm> {
        let err = || Error::Input(format!("cannot parse permutation {s:?}"));
        let t = s.trim();
        let mut images: Vec<u8> = (0..n as u8).collect();
        if t == "e" || t == "()" || t == "1" {
            return Ok(Perm(images));
        }
        let mut rest = t;
        let mut used = BTreeSet::new();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(err)?;
            let close = open.find(')').ok_or_else(err)?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points: Vec<usize> = if body.contains(',') {
                body.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| err())).collect::<Result<_>>()?
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err)).collect::<Result<_>>()?
            };
            for &p in &points {
                if p == 0 || p > n || !used.insert(p) {
                    return Err(err());
                }
            }
            for k in 0..points.len() {
                images[points[k] - 1] = (points[(k + 1) % points.len()] - 1) as u8;
            }
        }
        Ok(Perm(images))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        let sep = if self.degree() > 9 { "," } else { "" };
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite permutation group with its multiplication table. Elements are
/// ordered by element order and then by cycle notation, so the identity is
/// element 0; for S3 this gives `e,(12),(13),(23),(123),(132)`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<Perm>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn generated_by(name: &str, degree: usize, gens: &[Perm]) -> Self {
        let id = Perm::identity(degree);
        let mut seen: BTreeSet<Perm> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort_by_key(|p| (p.order(), p.to_string()));
        let index = |p: &Perm| elements.iter().position(|q| q == p).unwrap();
        let table = elements.iter().map(|a| elements.iter().map(|b| index(&a.compose(b))).collect()).collect();
        let inverse = elements.iter().map(|a| index(&a.inverse())).collect();
        FiniteGroup { name: name.to_string(), elements, table, inverse }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut v: Vec<u8> = (0..n as u8).collect();
            v.swap(i, i + 1);
            gens.push(Perm(v));
        }
        FiniteGroup::generated_by(&format!("S{n}"), n, &gens)
    }

    /// Looks up a group by name; only symmetric groups `S<n>` are known.
    pub fn by_name(name: &str) -> Result<Self> {
        match name.strip_prefix('S').and_then(|d| d.parse::<usize>().ok()) {
            Some(n) if (1..=6).contains(&n) => Ok(FiniteGroup::symmetric(n)),
            _ => Err(Error::Input(format!("unknown group {name:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, g: usize) -> &Perm {
        &self.elements[g]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn sign(&self, g: usize) -> i64 {
        self.elements[g].sign()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.iter().position(|q| q == p)
    }

    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let p = Perm::parse(s, self.degree())?;
        self.index_of(&p).ok_or_else(|| Error::Input(format!("{s} is not in {}", self.name)))
    }

    pub fn element_name(&self, g: usize) -> String {
        self.elements[g].to_string()
    }

    pub fn is_central(&self, g: usize) -> bool {
        (0..self.order()).all(|h| self.mul(g, h) == self.mul(h, g))
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.mul(g, h) == self.mul(h, g)).collect()
    }

    /// Conjugacy classes, each sorted, listed by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for h in 0..self.order() {
            if seen[h] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order()).map(|g| self.conj(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, seq: impl IntoIterator<Item = usize>) -> usize {
        seq.into_iter().fold(self.identity(), |acc, g| self.mul(acc, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_order_and_names() {
        let g = FiniteGroup::symmetric(3);
        let names: Vec<String> = (0..6).map(|i| g.element_name(i)).collect();
        assert_eq!(names, ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]);
        assert_eq!(g.conjugacy_classes().len(), 3);
    }

    #[test]
    fn composition_convention() {
        let g = FiniteGroup::symmetric(3);
        let a = g.parse_element("(12)").unwrap();
        let b = g.parse_element("(23)").unwrap();
        assert_eq!(g.element_name(g.mul(a, b)), "(123)");
        assert_eq!(g.element_name(g.conj(a, b)), "(13)");
        assert_eq!(g.sign(a), -1);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse("(14)", 3).is_err());
        assert!(Perm::parse("(11)", 3).is_err());
        assert!(Perm::parse("12", 3).is_err());
        assert_eq!(Perm::parse("(1,2,3)", 3).unwrap(), Perm::parse("(123)", 3).unwrap());
    }
}
