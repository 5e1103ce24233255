use proptest::prelude::*;

use yoneda::algebra::{GradedAlgebra, Presentation};
use yoneda::bar::{BarComplex, Cochain, Word};
use yoneda::linalg::{rank, rank_of_vectors, Echelon};
use yoneda::{Rational, SparseMatrix, SparseVec};

fn small() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn big() -> impl Strategy<Value = Rational> {
    prop_oneof![small(), (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))]
}

fn sized(r: usize, c: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(
        proptest::collection::vec(prop_oneof![3 => Just(Rational::from_int(0)), 2 => small()], c),
        r,
    )
    .prop_map(|rows| SparseMatrix::from_dense(&rows))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| sized(r, c))
}

proptest! {
    #[test]
    fn rational_field_laws(a in big(), b in big(), c in big()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
        }
    }

    #[test]
    fn rational_text_round_trip(a in big()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }

    #[test]
    fn rank_agrees_across_methods(m in matrix(7, 7)) {
        let r = rank(&m);
        prop_assert_eq!(r, rank(&m.transpose()));
        prop_assert_eq!(r, rank_of_vectors(m.nrows(), m.columns().to_vec(), None));
        let mut e = Echelon::new(m.nrows());
        for c in m.columns() {
            let _ = e.insert(c);
        }
        prop_assert_eq!(r, e.rank());
    }

    #[test]
    fn rank_bound_is_a_cap(m in matrix(6, 8), bound in 0usize..6) {
        let full = rank(&m);
        prop_assert_eq!(rank_of_vectors(m.nrows(), m.columns().to_vec(), Some(bound)), full.min(bound));
    }

    #[test]
    fn echelon_express_reconstructs(m in matrix(6, 5), coeffs in proptest::collection::vec(small(), 5)) {
        let mut e = Echelon::tracking(m.nrows());
        for c in m.columns() {
            let _ = e.insert(c);
        }
        let v = m.columns().iter().zip(&coeffs).fold(SparseVec::new(), |acc, (c, x)| acc.add_scaled(x, c));
        prop_assert!(e.contains(&v));
        let x = e.express(&v).unwrap();
        prop_assert_eq!(m.mul_vec(&x), v);
    }

    #[test]
    fn matrix_product_is_associative(
        (a, b, c) in (1..5usize, 1..5usize, 1..5usize, 1..5usize).prop_flat_map(|(i, j, k, l)| (sized(i, j), sized(j, k), sized(k, l)))
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

fn truncated_polynomial(m: usize) -> GradedAlgebra {
    let rel = "x".repeat(m);
    GradedAlgebra::from_presentation(&Presentation::from_words(&[("x", 1)], &[vec![(1, rel.as_str())]]), m + 1).unwrap()
}

fn exterior(gens: &[&str]) -> GradedAlgebra {
    let pairs: Vec<(&str, usize)> = gens.iter().map(|g| (*g, 1)).collect();
    let mut rels = Vec::new();
    let words: Vec<String> = gens.iter().flat_map(|a| gens.iter().map(move |b| format!("{a}{b}"))).collect();
    let k = gens.len();
    for i in 0..k {
        rels.push(vec![(1, words[i * k + i].as_str())]);
        for j in i + 1..k {
            rels.push(vec![(1, words[i * k + j].as_str()), (1, words[j * k + i].as_str())]);
        }
    }
    GradedAlgebra::from_presentation(&Presentation::from_words(&pairs, &rels), gens.len() + 1).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn ext_of_truncated_polynomial_is_one_dimensional() {
    for m in 2..=4 {
        let alg = truncated_polynomial(m);
        let bar = BarComplex::new(&alg).unwrap();
        for n in 0..=5 {
            assert_eq!(bar.ext_dim(n).unwrap(), 1, "k[x]/(x^{m}), n = {n}");
            // concentrated in internal degree m·(n/2) + (n mod 2)
            let p = m * (n / 2) + n % 2;
            let nonzero: Vec<_> =
                bar.ext_dims_by_internal_degree(n).unwrap().into_iter().filter(|&(_, d)| d > 0).collect();
            assert_eq!(nonzero, vec![(p, 1)]);
        }
    }
}

#[test]
fn ext_of_exterior_algebra_is_polynomial() {
    for gens in [&["a", "b"][..], &["a", "b", "c"][..]] {
        let alg = exterior(gens);
        assert_eq!(alg.dim(), 1 << gens.len());
        let bar = BarComplex::new(&alg).unwrap();
        let k = gens.len();
        for n in 0..=4 {
            assert_eq!(bar.ext_dim(n).unwrap(), binomial(n + k - 1, k - 1), "{k} generators, n = {n}");
        }
    }
}

#[test]
fn cup_product_on_exterior_algebra_is_commutative() {
    let alg = exterior(&["a", "b"]);
    let bar = BarComplex::new(&alg).unwrap();
    let a = bar.cochain(&[(1, &["a"])]);
    let b = bar.cochain(&[(1, &["b"])]);
    assert!(bar.cohomologous(&a.cup(&b), &b.cup(&a)).unwrap());
    let monomials = [a.pow(3), a.pow(2).cup(&b), a.cup(&b.pow(2)), b.pow(3)];
    assert_eq!(bar.class_span_dim(&monomials).unwrap(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_squares_to_zero_on_random_cochains(terms in proptest::collection::vec((proptest::collection::vec(0u8..3, 2), -5i64..=5), 1..8)) {
        let alg = exterior(&["a", "b"]);
        let bar = BarComplex::new(&alg).unwrap();
        let labels = bar.num_labels() as u8;
        let c = Cochain::from_terms(2, terms.into_iter().map(|(w, x)| (w.into_iter().map(|l| l % labels).collect::<Word>(), Rational::from_int(x))));
        prop_assert!(bar.delta(&bar.delta(&c)).is_zero());
        prop_assert!(bar.is_cocycle(&bar.delta(&c)));
        prop_assert!(bar.is_exact(&bar.delta(&c)).unwrap());
    }
}
