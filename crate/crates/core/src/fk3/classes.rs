//! Named cohomology classes of `E(A)` and `E(B)` and the identities between
//! them. Every identity is checked at class level: the difference of the two
//! sides must be a coboundary.

use serde::Serialize;

use crate::bar::{BarComplex, Cochain};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::twisted::TwistingMap;
use crate::yd::YdStructure;

/// Outcome of one class-level identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub name: String,
    pub holds: bool,
}

impl ClassCheck {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        ClassCheck { name: name.into(), holds }
    }
}

/// Cup product of the factors, left to right.
pub fn cup_all(factors: &[&Cochain]) -> Cochain {
    factors.iter().fold(Cochain::one(), |acc, f| acc.cup(f))
}

fn check_nonzero(bar: &BarComplex<'_>, name: &str, c: &Cochain) -> Result<()> {
    if !bar.is_cocycle(c) || bar.class_span_dim(std::slice::from_ref(c))? != 1 {
        return Err(Error::RelationViolation(format!("{name} is not a nonzero cohomology class")));
    }
    Ok(())
}

fn vanishes(bar: &BarComplex<'_>, name: String, c: &Cochain) -> Result<ClassCheck> {
    Ok(ClassCheck::new(name, bar.is_cocycle(c) && bar.is_exact(c)?))
}

fn equal(bar: &BarComplex<'_>, name: String, lhs: &Cochain, rhs: &Cochain) -> Result<ClassCheck> {
    vanishes(bar, name, &lhs.sub(rhs))
}

/// `x = [p_a]`, `y = [p_b]` in `E_1(A)` and `z = [p_b⊗p_ab + p_ba⊗p_b]` in `E_2(A)`.
#[derive(Clone, Debug)]
pub struct ClassesA {
    pub x: Cochain,
    pub y: Cochain,
    pub z: Cochain,
}

impl ClassesA {
    pub fn new(bar: &BarComplex<'_>) -> Result<Self> {
        let cls = ClassesA {
            x: bar.try_cochain(&[(1, &["a"])])?,
            y: bar.try_cochain(&[(1, &["b"])])?,
            z: bar.try_cochain(&[(1, &["b", "ab"]), (1, &["ba", "b"])])?,
        };
        for (name, c) in [("x", &cls.x), ("y", &cls.y), ("z", &cls.z)] {
            check_nonzero(bar, name, c)?;
        }
        Ok(cls)
    }

    /// `{x^{n-2i} z^i} ∪ {y^{n-2i} z^i}`, without repeating the pure powers of `z`.
    pub fn monomials(&self, n: usize) -> Vec<Cochain> {
        let mut out = Vec::new();
        for i in 0..=n / 2 {
            let zi = self.z.pow(i);
            out.push(self.x.pow(n - 2 * i).cup(&zi));
            if n > 2 * i {
                out.push(self.y.pow(n - 2 * i).cup(&zi));
            }
        }
        out
    }

    /// `xy`, `yx`, `zx + yz` and `xz + zy` vanish in `E(A)`.
    pub fn relations(&self, bar: &BarComplex<'_>) -> Result<Vec<ClassCheck>> {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        Ok(vec![
            vanishes(bar, "xy = 0".into(), &x.cup(y))?,
            vanishes(bar, "yx = 0".into(), &y.cup(x))?,
            vanishes(bar, "zx + yz = 0".into(), &z.cup(x).add(&y.cup(z)))?,
            vanishes(bar, "xz + zy = 0".into(), &x.cup(z).add(&z.cup(y)))?,
        ])
    }

    /// The action of `c` on `t^l z^m` for `t ∈ {x, y}` and `l + 4k <= bound`:
    /// `c·(t^l z^{2k}) = 0`, `c·(t^l z^{2k+1}) = t^l (x² - y²) z^{2k}`, and for
    /// `l > 0` also `c·(x^l z^{2k+1}) = x^{l+2} z^{2k}`,
    /// `c·(y^l z^{2k+1}) = -y^{l+2} z^{2k}`.
    pub fn r_action(&self, bar: &BarComplex<'_>, twist: &TwistingMap<'_>, bound: usize) -> Result<Vec<ClassCheck>> {
        let c = |f: &Cochain| twist.act_on_cochain(bar, 1, f);
        let mut out = Vec::new();
        // cochain-level values behind the first cases
        out.push(ClassCheck::new("c·p_a = 0", c(&self.x).is_zero()));
        out.push(ClassCheck::new("c·p_b = 0", c(&self.y).is_zero()));
        let w = bar.try_cochain(&[(1, &["a", "a"]), (-1, &["b", "b"])])?;
        out.push(ClassCheck::new("c·(p_b⊗p_ab + p_ba⊗p_b) = p_a⊗p_a - p_b⊗p_b", c(&self.z) == w));
        let x2_y2 = self.x.pow(2).sub(&self.y.pow(2));
        for k in 0..=bound / 4 {
            let z_even = self.z.pow(2 * k);
            let z_odd = z_even.cup(&self.z);
            for l in 0..=bound - 4 * k {
                for (name, t) in [("x", &self.x), ("y", &self.y)] {
                    if l == 0 && name == "y" {
                        continue;
                    }
                    let tl = t.pow(l);
                    let tag = if l == 0 { String::new() } else { format!("{name}^{l} ") };
                    out.push(vanishes(bar, format!("c·({tag}z^{}) = 0", 2 * k), &c(&tl.cup(&z_even)))?);
                    out.push(equal(
                        bar,
                        format!("c·({tag}z^{}) = {tag}(x² - y²) z^{}", 2 * k + 1, 2 * k),
                        &c(&tl.cup(&z_odd)),
                        &cup_all(&[&tl, &x2_y2, &z_even]),
                    )?);
                    if l > 0 {
                        let sign = if name == "x" { "" } else { "-" };
                        let rhs = t.pow(l + 2).cup(&z_even);
                        let rhs = if name == "x" { rhs } else { rhs.neg() };
                        out.push(equal(
                            bar,
                            format!("c·({tag}z^{}) = {sign}{name}^{} z^{}", 2 * k + 1, l + 2, 2 * k),
                            &c(&tl.cup(&z_odd)),
                            &rhs,
                        )?);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Classes of `E(B)`: `a, b, c = [q_a], [q_b], [q_c]`, the degree 4 class
/// `d` of internal degree 6, `u = a(b + c)`, `v = a² + b² + c²`,
/// `p = a²`, `q = b²`, `r = c²`.
#[derive(Clone, Debug)]
pub struct ClassesB {
    pub a: Cochain,
    pub b: Cochain,
    pub c: Cochain,
    pub d: Cochain,
    pub u: Cochain,
    pub v: Cochain,
    pub p: Cochain,
    pub q: Cochain,
    pub r: Cochain,
}

impl ClassesB {
    pub fn new(bar: &BarComplex<'_>) -> Result<Self> {
        let a = bar.try_cochain(&[(1, &["a"])])?;
        let b = bar.try_cochain(&[(1, &["b"])])?;
        let c = bar.try_cochain(&[(1, &["c"])])?;
        let h46 = bar.cocycle_basis(4, 6)?;
        if h46.len() != 1 {
            return Err(Error::RelationViolation(format!("H^4(Ω(B,6)) has dimension {}, expected 1", h46.len())));
        }
        let d = h46.into_iter().next().unwrap();
        let u = a.cup(&b.add(&c));
        let v = a.pow(2).add(&b.pow(2)).add(&c.pow(2));
        let cls = ClassesB { p: a.pow(2), q: b.pow(2), r: c.pow(2), a, b, c, d, u, v };
        for (name, x) in cls.named() {
            check_nonzero(bar, name, x)?;
        }
        Ok(cls)
    }

    pub fn named(&self) -> [(&'static str, &Cochain); 9] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
            ("u", &self.u),
            ("v", &self.v),
            ("p", &self.p),
            ("q", &self.q),
            ("r", &self.r),
        ]
    }

    fn generators(&self) -> [(&'static str, &Cochain); 3] {
        [("a", &self.a), ("b", &self.b), ("c", &self.c)]
    }

    /// `xy = zx` for every permutation `(x, y, z)` of `(a, b, c)`.
    pub fn braided_relations(&self, bar: &BarComplex<'_>) -> Result<Vec<ClassCheck>> {
        let g = self.generators();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        perms
            .iter()
            .map(|&[i, j, k]| {
                let (x, y, z) = (g[i], g[j], g[k]);
                equal(bar, format!("{}{} = {}{}", x.0, y.0, z.0, x.0), &x.1.cup(y.1), &z.1.cup(x.1))
            })
            .collect()
    }

    /// `ab³ = a³b` and `ac² = ab²`.
    pub fn s_identities(&self, bar: &BarComplex<'_>) -> Result<Vec<ClassCheck>> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        Ok(vec![
            equal(bar, "ab³ = a³b".into(), &a.cup(&b.pow(3)), &a.pow(3).cup(b))?,
            equal(bar, "ac² = ab²".into(), &a.cup(&c.pow(2)), &a.cup(&b.pow(2)))?,
        ])
    }

    /// `uv = vu` and `2uv² + 3u²v - 9u³ = 0`.
    pub fn uv_identities(&self, bar: &BarComplex<'_>) -> Result<Vec<ClassCheck>> {
        let (u, v) = (&self.u, &self.v);
        let cubic = cup_all(&[u, v, v])
            .scale(&Rational::from_int(2))
            .add(&cup_all(&[u, u, v]).scale(&Rational::from_int(3)))
            .sub(&u.pow(3).scale(&Rational::from_int(9)));
        Ok(vec![
            equal(bar, "uv = vu".into(), &u.cup(v), &v.cup(u))?,
            vanishes(bar, "2uv² + 3u²v - 9u³ = 0".into(), &cubic)?,
        ])
    }

    /// `p, q, r` commute pairwise and `pq = pr = qr`.
    pub fn pqr_identities(&self, bar: &BarComplex<'_>) -> Result<Vec<ClassCheck>> {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        Ok(vec![
            equal(bar, "pq = qp".into(), &p.cup(q), &q.cup(p))?,
            equal(bar, "pr = rp".into(), &p.cup(r), &r.cup(p))?,
            equal(bar, "qr = rq".into(), &q.cup(r), &r.cup(q))?,
            equal(bar, "pq = pr".into(), &p.cup(q), &p.cup(r))?,
            equal(bar, "pq = qr".into(), &p.cup(q), &q.cup(r))?,
        ])
    }

    /// `d` is fixed by `S3` at class level, is not a product of degree one
    /// classes, and commutes with `a, b, c` up to coboundary.
    pub fn d_properties(&self, bar: &BarComplex<'_>, yd: &YdStructure<'_>) -> Result<Vec<ClassCheck>> {
        let mut out = Vec::new();
        let group = yd.group();
        let fixed = (0..group.order())
            .map(|g| bar.cohomologous(&yd.act_on_cochain(bar, g, &self.d), &self.d))
            .collect::<Result<Vec<_>>>()?;
        out.push(ClassCheck::new("d is S3-invariant", fixed.iter().all(|&f| f)));
        let g = self.generators();
        let mut products = Vec::new();
        for i in 0..81usize {
            let digits = [i % 3, i / 3 % 3, i / 9 % 3, i / 27];
            products.push(cup_all(&digits.map(|k| g[k].1)));
        }
        let without = bar.class_span_dim(&products)?;
        products.push(self.d.clone());
        let with = bar.class_span_dim(&products)?;
        out.push(ClassCheck::new("d is not a product of degree one classes", with == without + 1));
        for (name, x) in g {
            out.push(equal(bar, format!("d{name} = {name}d"), &self.d.cup(x), &x.cup(&self.d))?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fk3::Fk3;

    #[test]
    fn classes_of_a() {
        let f = Fk3::new().unwrap();
        let bar = BarComplex::new(&f.a).unwrap();
        let cls = ClassesA::new(&bar).unwrap();
        assert!(cls.relations(&bar).unwrap().iter().all(|c| c.holds));
        for n in 0..5 {
            let m = cls.monomials(n);
            assert_eq!(m.len(), n + 1);
            assert_eq!(bar.class_span_dim(&m).unwrap(), n + 1);
        }
        // x² is a nonzero class
        assert!(!bar.is_exact(&cls.x.pow(2)).unwrap());
    }

    #[test]
    fn c_action_low_degrees() {
        let f = Fk3::new().unwrap();
        let bar = BarComplex::new(&f.a).unwrap();
        let t = f.twisting_map().unwrap();
        let cls = ClassesA::new(&bar).unwrap();
        let checks = cls.r_action(&bar, &t, 1).unwrap();
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }

    #[test]
    fn degree_one_relations_of_b() {
        let f = Fk3::new().unwrap();
        let bar = BarComplex::new(&f.b).unwrap();
        let cls = ClassesB::new(&bar).unwrap();
        assert!(cls.braided_relations(&bar).unwrap().iter().all(|c| c.holds));
        // a² and ab are independent
        assert_eq!(bar.class_span_dim(&[cls.a.pow(2), cls.a.cup(&cls.b)]).unwrap(), 2);
    }
}
