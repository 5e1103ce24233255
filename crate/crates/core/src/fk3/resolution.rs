//! A minimal free resolution of `k` over `A = k<a,b>/(a², b², aba - bab)` as
//! the total complex of a double complex with `C_{p,q} = A` and every map a
//! right multiplication `ρ_x(z) = z x`.
//!
//! `d^h_{p,q}: C_{p,q} → C_{p-1,q}` and `d^v_{p,q}: C_{p,q} → C_{p,q-1}`:
//! - on or above the diagonal (`q >= p`), `d^h = ρ_{ba}` for odd `p` and
//!   `ρ_{ab}` for even `p`;
//! - strictly above it (`q > p`), `d^v = ρ_b` for even `p` and `ρ_{-a}` for
//!   odd `p`;
//! - below, the maps are reflected: `d^h_{p,q} = β d^v_{q,p} β` for `q < p`
//!   and `d^v_{p,q} = β d^h_{q,p} β` for `q <= p`.
//!
//! The signs of the four basic families are not taken on trust: every sign
//! choice is tested against the double complex identities, and the
//! transcription above is kept only if the valid choices form a single class
//! up to rescaling the `C_{p,q}` by `±1`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{rank, Rational, SparseMatrix, SparseVec};
use crate::twisted::SkewPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapFamily {
    /// `d^h`, `q >= p`, `p` odd: `ρ_{ba}`.
    HorizontalOdd,
    /// `d^h`, `q >= p`, `p` even: `ρ_{ab}`.
    HorizontalEven,
    /// `d^v`, `q > p`, `p` even: `ρ_b`.
    VerticalEven,
    /// `d^v`, `q > p`, `p` odd: `ρ_{-a}`.
    VerticalOdd,
}

const FAMILIES: [MapFamily; 4] =
    [MapFamily::HorizontalOdd, MapFamily::HorizontalEven, MapFamily::VerticalEven, MapFamily::VerticalOdd];

impl MapFamily {
    fn element(self) -> &'static [(i64, &'static str)] {
        match self {
            MapFamily::HorizontalOdd => &[(1, "ba")],
            MapFamily::HorizontalEven => &[(1, "ab")],
            MapFamily::VerticalEven => &[(1, "b")],
            MapFamily::VerticalOdd => &[(-1, "a")],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    H,
    V,
}

/// Where a map comes from: a basic family, possibly reflected through `β`.
#[derive(Clone, Copy, Debug)]
struct Origin {
    family: MapFamily,
    reflected: bool,
}

fn origin(dir: Dir, p: usize, q: usize) -> Origin {
    match dir {
        Dir::H if q >= p => Origin {
            family: if p % 2 == 1 { MapFamily::HorizontalOdd } else { MapFamily::HorizontalEven },
            reflected: false,
        },
        // β d^v_{q,p} β with p > q
        Dir::H => Origin { family: origin(Dir::V, q, p).family, reflected: true },
        Dir::V if q > p => Origin {
            family: if p.is_multiple_of(2) { MapFamily::VerticalEven } else { MapFamily::VerticalOdd },
            reflected: false,
        },
        // β d^h_{q,p} β with q <= p
        Dir::V => Origin { family: origin(Dir::H, q, p).family, reflected: true },
    }
}

#[derive(Clone, Debug)]
pub struct DoubleComplex<'a> {
    alg: &'a GradedAlgebra,
    cutoff: usize,
    /// Sign per family, in the order of `FAMILIES`.
    signs: [i64; 4],
    valid_choices: usize,
    right_mult: [SparseMatrix; 4],
    beta: SparseMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub cutoff: usize,
    /// Sign choices (per family) passing all double complex identities.
    pub valid_sign_choices: usize,
    pub signs: Vec<(MapFamily, i64)>,
    pub rows_are_complexes: bool,
    pub columns_are_complexes: bool,
    pub squares_anticommute: bool,
    pub reflections_hold: bool,
    pub total_squares_to_zero: bool,
    /// `dim H_n(Tot)` for `n = 0..cutoff`.
    pub homology: Vec<usize>,
    /// Rank of the free module `Tot_n`, `n = 0..=cutoff`.
    pub free_ranks: Vec<usize>,
    /// All maps land in `A_+`, so `Hom_A(-, k)` kills every differential.
    pub minimal: bool,
}

impl ResolutionReport {
    pub fn is_resolution(&self) -> bool {
        self.rows_are_complexes
            && self.columns_are_complexes
            && self.squares_anticommute
            && self.reflections_hold
            && self.total_squares_to_zero
            && self.homology.first() == Some(&1)
            && self.homology[1..].iter().all(|&h| h == 0)
            && self.minimal
    }
}

fn right_multiplication(alg: &GradedAlgebra, x: &SparseVec) -> SparseMatrix {
    SparseMatrix::from_columns(alg.dim(), (0..alg.dim()).map(|i| alg.mul(&SparseVec::unit(i), x)).collect())
}

impl<'a> DoubleComplex<'a> {
    /// Builds the complex on `C_{p,q}` with `p + q <= cutoff`, resolving the
    /// family signs as described in the module docs.
    pub fn build(alg: &'a GradedAlgebra, pair: &SkewPair, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::Input("the resolution needs a cutoff of at least 2".into()));
        }
        let right_mult = FAMILIES.map(|f| right_multiplication(alg, &alg.element(f.element())));
        let mut dc =
            DoubleComplex { alg, cutoff, signs: [1; 4], valid_choices: 0, right_mult, beta: pair.beta.clone() };
        let valid: Vec<[i64; 4]> = (0..16u32)
            .map(|m| [0, 1, 2, 3].map(|k| if m >> k & 1 == 1 { -1 } else { 1 }))
            .filter(|s| {
                dc.signs = *s;
                dc.rows_are_complexes() && dc.columns_are_complexes() && dc.squares_anticommute()
            })
            .collect();
        let Some(first) = valid.first() else {
            return Err(Error::SignResolutionFailure("no sign choice gives a double complex".into()));
        };
        if let Some(other) = valid.iter().find(|s| !dc.gauge_equivalent(first, s)) {
            return Err(Error::SignResolutionFailure(format!(
                "inequivalent sign choices {first:?} and {other:?} both give double complexes"
            )));
        }
        dc.signs = if valid.contains(&[1; 4]) { [1; 4] } else { *first };
        dc.valid_choices = valid.len();
        Ok(dc)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn signs(&self) -> Vec<(MapFamily, i64)> {
        FAMILIES.iter().copied().zip(self.signs).collect()
    }

    fn exists(&self, dir: Dir, p: usize, q: usize) -> bool {
        p + q <= self.cutoff && if dir == Dir::H { p >= 1 } else { q >= 1 }
    }

    fn family_index(f: MapFamily) -> usize {
        FAMILIES.iter().position(|&g| g == f).unwrap()
    }

    fn map(&self, dir: Dir, p: usize, q: usize) -> SparseMatrix {
        let o = origin(dir, p, q);
        let k = Self::family_index(o.family);
        let base = self.right_mult[k].scale(&Rational::from_int(self.signs[k]));
        if o.reflected {
            self.beta.mul(&base).mul(&self.beta)
        } else {
            base
        }
    }

    /// `d^h_{p,q}`, a map `C_{p,q} → C_{p-1,q}`.
    pub fn horizontal(&self, p: usize, q: usize) -> Option<SparseMatrix> {
        self.exists(Dir::H, p, q).then(|| self.map(Dir::H, p, q))
    }

    /// `d^v_{p,q}`, a map `C_{p,q} → C_{p,q-1}`.
    pub fn vertical(&self, p: usize, q: usize) -> Option<SparseMatrix> {
        self.exists(Dir::V, p, q).then(|| self.map(Dir::V, p, q))
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.cutoff).flat_map(move |n| (0..=n).map(move |p| (p, n - p)))
    }

    fn rows_are_complexes(&self) -> bool {
        self.cells()
            .filter(|&(p, _)| p >= 2)
            .all(|(p, q)| self.map(Dir::H, p - 1, q).mul(&self.map(Dir::H, p, q)).is_zero())
    }

    fn columns_are_complexes(&self) -> bool {
        self.cells()
            .filter(|&(_, q)| q >= 2)
            .all(|(p, q)| self.map(Dir::V, p, q - 1).mul(&self.map(Dir::V, p, q)).is_zero())
    }

    fn squares_anticommute(&self) -> bool {
        self.cells().filter(|&(p, q)| p >= 1 && q >= 1).all(|(p, q)| {
            let hv = self.map(Dir::H, p, q - 1).mul(&self.map(Dir::V, p, q));
            let vh = self.map(Dir::V, p - 1, q).mul(&self.map(Dir::H, p, q));
            hv.add(&vh).is_zero()
        })
    }

    fn reflections_hold(&self) -> bool {
        self.cells().all(|(p, q)| {
            let h_ok = !(q < p && self.exists(Dir::H, p, q) && self.exists(Dir::V, q, p))
                || self.map(Dir::H, p, q) == self.beta.mul(&self.map(Dir::V, q, p)).mul(&self.beta);
            let v_ok = !(q <= p && self.exists(Dir::V, p, q) && self.exists(Dir::H, q, p))
                || self.map(Dir::V, p, q) == self.beta.mul(&self.map(Dir::H, q, p)).mul(&self.beta);
            h_ok && v_ok
        })
    }

    /// Whether two sign assignments differ by rescaling each `C_{p,q}` by `±1`.
    fn gauge_equivalent(&self, s: &[i64; 4], t: &[i64; 4]) -> bool {
        let ratio = |dir, p, q| {
            let k = Self::family_index(origin(dir, p, q).family);
            s[k] * t[k]
        };
        let n = self.cutoff + 1;
        let mut scale: Vec<Vec<i64>> = vec![vec![0; n]; n];
        scale[0][0] = 1;
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        while let Some((p, q)) = queue.pop_front() {
            let here = scale[p][q];
            // Edges to and from (p, q): each map X -> Y needs scale(X) scale(Y) = ratio.
            let mut edges = Vec::new();
            if self.exists(Dir::H, p, q) {
                edges.push(((p - 1, q), ratio(Dir::H, p, q)));
            }
            if self.exists(Dir::V, p, q) {
                edges.push(((p, q - 1), ratio(Dir::V, p, q)));
            }
            if self.exists(Dir::H, p + 1, q) {
                edges.push(((p + 1, q), ratio(Dir::H, p + 1, q)));
            }
            if self.exists(Dir::V, p, q + 1) {
                edges.push(((p, q + 1), ratio(Dir::V, p, q + 1)));
            }
            for ((x, y), r) in edges {
                let want = here * r;
                if scale[x][y] == 0 {
                    scale[x][y] = want;
                    queue.push_back((x, y));
                } else if scale[x][y] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Differential `Tot_n → Tot_{n-1}`; `Tot_n = ⊕_p C_{p,n-p}` with the
    /// summand `p` at offset `p · dim A`.
    pub fn total_differential(&self, n: usize) -> SparseMatrix {
        let d = self.alg.dim();
        let mut cols = Vec::with_capacity((n + 1) * d);
        for p in 0..=n {
            let q = n - p;
            let h = self.horizontal(p, q);
            let v = self.vertical(p, q);
            for i in 0..d {
                let mut pairs = Vec::new();
                if let Some(h) = &h {
                    pairs.extend(h.column(i).iter().map(|(k, c)| ((p - 1) * d + k, c.clone())));
                }
                if let Some(v) = &v {
                    pairs.extend(v.column(i).iter().map(|(k, c)| (p * d + k, c.clone())));
                }
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        SparseMatrix::from_columns(n * d, cols)
    }

    pub fn check(&self) -> ResolutionReport {
        let d = self.alg.dim();
        let diffs: Vec<SparseMatrix> = (1..=self.cutoff).map(|n| self.total_differential(n)).collect();
        let total_squares_to_zero = diffs.windows(2).all(|w| w[0].mul(&w[1]).is_zero());
        let ranks: Vec<usize> = diffs.iter().map(rank).collect();
        // rank of Tot_n → Tot_{n-1}, zero for n = 0
        let r = |n: usize| if n == 0 { 0 } else { ranks[n - 1] };
        let homology = (0..self.cutoff).map(|n| (n + 1) * d - r(n) - r(n + 1)).collect();
        let minimal = self.cells().all(|(p, q)| {
            [self.horizontal(p, q), self.vertical(p, q)]
                .into_iter()
                .flatten()
                .all(|m| (0..d).all(|i| m.column(i).get(0).is_zero()))
        });
        ResolutionReport {
            cutoff: self.cutoff,
            valid_sign_choices: self.valid_choices,
            signs: self.signs(),
            rows_are_complexes: self.rows_are_complexes(),
            columns_are_complexes: self.columns_are_complexes(),
            squares_anticommute: self.squares_anticommute(),
            reflections_hold: self.reflections_hold(),
            total_squares_to_zero,
            homology,
            free_ranks: (0..=self.cutoff).map(|n| n + 1).collect(),
            minimal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fk3::Fk3;

    #[test]
    fn transcription_is_a_minimal_resolution() {
        let f = Fk3::new().unwrap();
        let dc = DoubleComplex::build(&f.a, &f.skew_pair().unwrap(), 6).unwrap();
        let rep = dc.check();
        assert!(rep.is_resolution(), "{rep:?}");
        assert_eq!(rep.homology, vec![1, 0, 0, 0, 0, 0]);
        assert!(dc.signs().iter().all(|s| s.1 == 1));
    }

    #[test]
    fn picture_entries() {
        let f = Fk3::new().unwrap();
        let dc = DoubleComplex::build(&f.a, &f.skew_pair().unwrap(), 6).unwrap();
        let rho = |x: &[(i64, &str)]| right_multiplication(&f.a, &f.a.element(x));
        // bottom row and first column
        assert_eq!(dc.horizontal(3, 0).unwrap(), rho(&[(-1, "a")]));
        assert_eq!(dc.vertical(0, 3).unwrap(), rho(&[(1, "b")]));
        // second row: ρ_{ba}, then ρ_b below the diagonal
        assert_eq!(dc.horizontal(1, 1).unwrap(), rho(&[(1, "ba")]));
        assert_eq!(dc.horizontal(2, 1).unwrap(), rho(&[(1, "b")]));
        // vertical maps on the diagonal: ρ_{ab} for odd q, ρ_{ba} for even q
        assert_eq!(dc.vertical(1, 1).unwrap(), rho(&[(1, "ab")]));
        assert_eq!(dc.vertical(2, 2).unwrap(), rho(&[(1, "ba")]));
        assert_eq!(dc.vertical(1, 3).unwrap(), rho(&[(-1, "a")]));
        assert!(dc.horizontal(0, 2).is_none());
    }
}
