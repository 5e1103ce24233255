//! The Fomin-Kirillov algebra on three generators and the pieces it is built
//! from: `A = k<a,b>/(a², b², aba - bab)`, `R = k[c]/(c²)`, the twisting map
//! given by `α`, `β`, and the sign action of `S3`.

mod classes;
mod resolution;

use crate::algebra::{GradedAlgebra, Presentation, PresentationFile, DEFAULT_MAX_DEGREE};
use crate::bar::BarComplex;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{rank, SparseMatrix, SparseVec};
use crate::twisted::{SkewPair, TwistFile, TwistingMap};
use crate::yd::{ActionFile, YdStructure};

pub use classes::{cup_all, ClassCheck, ClassesA, ClassesB};
pub use resolution::{DoubleComplex, MapFamily, ResolutionReport};

/// Group degrees of `a, b, c` (the transpositions they are attached to).
pub const GDEG: [(&str, &str); 3] = [("a", "(12)"), ("b", "(23)"), ("c", "(13)")];

fn with_gdeg(mut pres: Presentation) -> Presentation {
    for g in &mut pres.generators {
        g.gdeg = GDEG.iter().find(|(n, _)| *n == g.name).map(|(_, d)| d.to_string());
    }
    pres
}

pub fn presentation_b() -> Presentation {
    with_gdeg(Presentation::from_words(
        &[("a", 1), ("b", 1), ("c", 1)],
        &[
            vec![(1, "aa")],
            vec![(1, "bb")],
            vec![(1, "cc")],
            vec![(1, "ab"), (1, "bc"), (1, "ca")],
            vec![(1, "ba"), (1, "ac"), (1, "cb")],
        ],
    ))
}

pub fn presentation_a() -> Presentation {
    with_gdeg(Presentation::from_words(
        &[("a", 1), ("b", 1)],
        &[vec![(1, "aa")], vec![(1, "bb")], vec![(1, "aba"), (-1, "bab")]],
    ))
}

pub fn presentation_r() -> Presentation {
    Presentation::from_words(&[("c", 1)], &[vec![(1, "cc")]])
}

/// The algebras `A`, `B`, `R`, built once.
#[derive(Clone, Debug)]
pub struct Fk3 {
    pub a: GradedAlgebra,
    pub b: GradedAlgebra,
    pub r: GradedAlgebra,
}

impl Fk3 {
    pub fn new() -> Result<Self> {
        Ok(Fk3 {
            a: GradedAlgebra::from_presentation(&presentation_a(), DEFAULT_MAX_DEGREE)?,
            b: GradedAlgebra::from_presentation(&presentation_b(), DEFAULT_MAX_DEGREE)?,
            r: GradedAlgebra::from_presentation(&presentation_r(), DEFAULT_MAX_DEGREE)?,
        })
    }

    /// `α(a) = -ab, α(b) = -ba, β(a) = -b, β(b) = -a`.
    pub fn skew_pair(&self) -> Result<SkewPair> {
        let a = &self.a;
        SkewPair::extend(
            a,
            &[a.element(&[(-1, "ab")]), a.element(&[(-1, "ba")])],
            &[a.element(&[(-1, "b")]), a.element(&[(-1, "a")])],
        )
    }

    pub fn twisting_map(&self) -> Result<TwistingMap<'_>> {
        TwistingMap::from_skew_pair(&self.a, &self.r, &self.skew_pair()?)
    }

    /// `g·x_t = sgn(g) x_{g t g⁻¹}` on `B`, where `x_t` is the generator
    /// attached to the transposition `t`.
    pub fn s3_action(&self) -> Result<YdStructure<'_>> {
        let group = FiniteGroup::symmetric(3);
        let gens = self.b.generators();
        let gdeg: Vec<usize> =
            gens.iter().map(|g| group.parse_element(g.gdeg.as_deref().unwrap())).collect::<Result<_>>()?;
        let mut images = Vec::new();
        for name in ["(12)", "(23)"] {
            let g = group.parse_element(name)?;
            let imgs: Vec<SparseVec> = gdeg
                .iter()
                .map(|&t| {
                    let target = group.conj(g, t);
                    let k = gdeg.iter().position(|&d| d == target).unwrap();
                    self.b.generator_element(k).scale(&crate::Rational::from_int(group.sign(g)))
                })
                .collect();
            images.push((g, imgs));
        }
        YdStructure::from_generator_action(&self.b, group, &images, &gdeg)
    }

    /// Whether `A ⊗_σ R` and `B` have the same structure constants under
    /// `x ⊗ 1 ↦ x`, `x ⊗ c ↦ xc`: the map is bijective and multiplicative on
    /// every pair of basis elements.
    pub fn twisted_product_matches_b(&self) -> Result<bool> {
        let t = self.twisting_map()?;
        let prod = t.build_twisted_algebra()?;
        let c = self.b.generator_element(2).clone();
        let image = |label: &str| -> SparseVec {
            let (x, i) = (0..self.a.dim())
                .flat_map(|x| (0..self.r.dim()).map(move |i| (x, i)))
                .find(|&(x, i)| t.product_label(x, i) == label)
                .unwrap();
            let w = self.a.basis()[x].word.as_ref().expect("A has basis words");
            let v = self.b.word_element(w);
            if i == 0 {
                v
            } else {
                self.b.mul(&v, &c)
            }
        };
        let phi = SparseMatrix::from_columns(self.b.dim(), (0..prod.dim()).map(|u| image(prod.label(u))).collect());
        if prod.dim() != self.b.dim() || rank(&phi) != self.b.dim() {
            return Ok(false);
        }
        for u in 0..prod.dim() {
            for v in 0..prod.dim() {
                let lhs = phi.mul_vec(prod.product_of_basis(u, v));
                let rhs = self.b.mul(phi.column(u), phi.column(v));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The double complex resolution of `k` over `A` up to total degree `cutoff`.
    pub fn min_resolution(&self, cutoff: usize) -> Result<DoubleComplex<'_>> {
        DoubleComplex::build(&self.a, &self.skew_pair()?, cutoff)
    }

    /// Bar complex of `B` graded by the group degrees of the `S3` action, as
    /// needed for invariant computations.
    pub fn bar_b<'s>(&'s self, yd: &YdStructure<'s>) -> Result<BarComplex<'s>> {
        BarComplex::with_grading(&self.b, Some(yd.grading()))
    }

    pub fn presentation_file(name: &str) -> Option<PresentationFile> {
        match name {
            "A" => Some(PresentationFile::from_presentation(&presentation_a())),
            "B" => Some(PresentationFile::from_presentation(&presentation_b())),
            "R" => Some(PresentationFile::from_presentation(&presentation_r())),
            _ => None,
        }
    }

    pub fn action_file(&self) -> Result<ActionFile> {
        let yd = self.s3_action()?;
        let g = yd.group();
        let gens = [g.parse_element("(12)")?, g.parse_element("(23)")?];
        Ok(yd.to_file(&gens))
    }

    pub fn twist_file(&self) -> Result<TwistFile> {
        let t = self.twisting_map()?;
        Ok(t.to_file(&presentation_a(), &presentation_r()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn dual_has_the_same_graded_dimensions() {
        // p_x sits in degree gdeg(x)⁻¹ for the dual structure; the counts agree
        let f = Fk3::new().unwrap();
        let yd = f.s3_action().unwrap();
        let group = yd.group();
        for d in 0..=4 {
            for g in 0..group.order() {
                let count = |h: usize| f.b.degree_range(d).filter(|&i| yd.basis_gdeg(i) == h).count();
                assert_eq!(count(g), count(group.inv(g)), "degree {d}, {}", group.element_name(g));
            }
        }
    }

    #[test]
    fn dimensions_and_bases() {
        let f = Fk3::new().unwrap();
        assert_eq!(f.b.hilbert().coefficients(), &[1, 3, 4, 3, 1]);
        assert_eq!(f.a.hilbert().coefficients(), &[1, 2, 2, 1]);
        assert_eq!(f.r.hilbert().coefficients(), &[1, 1]);
        let labels: Vec<&str> = (0..f.a.dim()).map(|i| f.a.label(i)).collect();
        assert_eq!(labels, ["1", "a", "b", "ab", "ba", "aba"]);
    }

    #[test]
    fn skew_pair_values() {
        let f = Fk3::new().unwrap();
        let s = f.skew_pair().unwrap();
        let a = &f.a;
        assert!(s.identities(a).all());
        // β(ab) = β(a)β(b) = (-b)(-a) = ba
        assert_eq!(s.beta.mul_vec(&a.element(&[(1, "ab")])), a.element(&[(1, "ba")]));
        assert_eq!(s.beta.mul_vec(&a.element(&[(1, "aba")])), a.element(&[(-1, "aba")]));
        // α(ab) = α(a) b + β(a) α(b) = -ab·b + (-b)(-ba) = bba = 0
        assert!(s.alpha.mul_vec(&a.element(&[(1, "ab")])).is_zero());
    }

    #[test]
    fn sign_action_on_generators() {
        let f = Fk3::new().unwrap();
        let yd = f.s3_action().unwrap();
        let g = yd.group().parse_element("(12)").unwrap();
        let b = &f.b;
        assert_eq!(yd.act(g, &b.element(&[(1, "a")])), b.element(&[(-1, "a")]));
        assert_eq!(yd.act(g, &b.element(&[(1, "b")])), b.element(&[(-1, "c")]));
        let file = f.action_file().unwrap();
        assert_eq!(file.action["(12)"]["b"], vec![("c".to_string(), Rational::from_int(-1))]);
    }

    #[test]
    fn twisted_product_is_b() {
        let f = Fk3::new().unwrap();
        assert!(f.twisted_product_matches_b().unwrap());
        assert!(f.twisting_map().unwrap().verify_axioms().all());
    }
}
