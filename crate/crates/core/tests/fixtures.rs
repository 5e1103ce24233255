use yoneda::algebra::{AlgebraFile, GradedAlgebra, PresentationFile};
use yoneda::fk3::Fk3;
use yoneda::twisted::{TwistFile, TwistingMap};
use yoneda::yd::{ActionFile, YdStructure};

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&serde_json::to_string_pretty(x).unwrap()).unwrap()
}

#[test]
fn presentations_rebuild_the_same_algebras() {
    let f = Fk3::new().unwrap();
    for (name, alg, dims) in [("A", &f.a, vec![1, 2, 2, 1]), ("B", &f.b, vec![1, 3, 4, 3, 1]), ("R", &f.r, vec![1, 1])]
    {
        let file = Fk3::presentation_file(name).unwrap();
        let back: PresentationFile = round_trip(&file);
        assert_eq!(back, file);
        let rebuilt = GradedAlgebra::from_presentation(&back.to_presentation().unwrap(), 10).unwrap();
        assert_eq!(rebuilt.hilbert().coefficients(), &dims[..]);
        assert_eq!(AlgebraFile::from_algebra(&rebuilt), AlgebraFile::from_algebra(alg));
    }
    assert!(Fk3::presentation_file("nope").is_none());
}

#[test]
fn algebra_files_round_trip() {
    let f = Fk3::new().unwrap();
    for alg in [&f.a, &f.b, &f.r] {
        let file = AlgebraFile::from_algebra(alg);
        let back: AlgebraFile = round_trip(&file);
        assert_eq!(back, file);
        let rebuilt = back.to_algebra().unwrap();
        for u in 0..alg.dim() {
            for v in 0..alg.dim() {
                assert_eq!(rebuilt.product_of_basis(u, v), alg.product_of_basis(u, v));
            }
        }
    }
}

#[test]
fn action_file_round_trips() {
    let f = Fk3::new().unwrap();
    let yd = f.s3_action().unwrap();
    let file: ActionFile = round_trip(&f.action_file().unwrap());
    let back = YdStructure::from_file(&f.b, &file).unwrap();
    assert_eq!(back.group().order(), 6);
    for g in 0..6 {
        for i in 0..f.b.dim() {
            let e = yoneda::SparseVec::unit(i);
            assert_eq!(back.act(g, &e), yd.act(g, &e));
        }
    }
    for i in 0..f.b.dim() {
        assert_eq!(back.basis_gdeg(i), yd.basis_gdeg(i));
    }
}

#[test]
fn twist_file_round_trips() {
    let f = Fk3::new().unwrap();
    let t = f.twisting_map().unwrap();
    let file: TwistFile = round_trip(&f.twist_file().unwrap());
    let back = TwistingMap::from_file(&f.a, &f.r, &file).unwrap();
    assert!(back.verify_axioms().all());
    for j in 0..f.r.dim() {
        for i in 0..f.r.dim() {
            assert_eq!(back.sigma(j, i), t.sigma(j, i));
        }
    }
}

#[test]
fn malformed_files_are_rejected() {
    assert!(serde_json::from_str::<PresentationFile>(r#"{"generators": 3}"#).is_err());
    let f = Fk3::new().unwrap();
    let mut v = serde_json::to_value(f.action_file().unwrap()).unwrap();
    let images = v["action"]["(12)"].take();
    v["action"]["(17)"] = images;
    v["action"].as_object_mut().unwrap().remove("(12)");
    let file: ActionFile = serde_json::from_value(v).unwrap();
    assert!(YdStructure::from_file(&f.b, &file).is_err());
}
