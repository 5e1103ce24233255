//! JSON forms of presentations and of computed algebras.

use serde::{Deserialize, Serialize};

use super::{BasisElement, Generator, GradedAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseVec};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gdeg: Option<String>,
}

/// `{"field":"Q","generators":[...],"relations":[[[1,["a","a"]]], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationFile {
    pub field: String,
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<Vec<(Rational, Vec<String>)>>,
}

fn check_field(field: &str) -> Result<()> {
    if field != "Q" {
        return Err(Error::Input(format!("unsupported field {field:?}, only \"Q\" is available")));
    }
    Ok(())
}

fn word_from_names(gens: &[Generator], names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| gens.iter().position(|g| &g.name == n).ok_or_else(|| Error::Input(format!("unknown generator {n:?}"))))
        .collect()
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation> {
        check_field(&self.field)?;
        let generators: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator { name: g.name.clone(), degree: g.degree, gdeg: g.gdeg.clone() })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().map(|(c, w)| Ok((c.clone(), word_from_names(&generators, w)?))).collect())
            .collect::<Result<_>>()?;
        Ok(Presentation { generators, relations })
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            field: "Q".into(),
            generators: p
                .generators
                .iter()
                .map(|g| GeneratorEntry { name: g.name.clone(), degree: g.degree, gdeg: g.gdeg.clone() })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, w)| (c.clone(), w.iter().map(|&g| p.generators[g].name.clone()).collect()))
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisEntry {
    pub label: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<(String, Rational)>,
}

/// A computed algebra: basis, nonzero products and (optionally) the
/// presentation it came from.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: String,
    #[serde(default)]
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<(Rational, Vec<String>)>>,
    pub hilbert: Vec<usize>,
    pub basis: Vec<BasisEntry>,
    pub products: Vec<ProductEntry>,
    pub complete: bool,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &GradedAlgebra) -> Self {
        let pres = Presentation { generators: alg.generators.clone(), relations: alg.relations.clone() };
        let pf = PresentationFile::from_presentation(&pres);
        let basis = alg
            .basis
            .iter()
            .map(|b| BasisEntry {
                label: b.label.clone(),
                degree: b.degree,
                word: b.word.as_ref().map(|w| w.iter().map(|&g| alg.generators[g].name.clone()).collect()),
            })
            .collect();
        let mut products = Vec::new();
        for i in 1..alg.dim() {
            for j in 1..alg.dim() {
                let p = &alg.products[i][j];
                if !p.is_zero() {
                    products.push(ProductEntry {
                        left: alg.label(i).to_string(),
                        right: alg.label(j).to_string(),
                        result: p.iter().map(|(k, c)| (alg.label(k).to_string(), c.clone())).collect(),
                    });
                }
            }
        }
        AlgebraFile {
            field: "Q".into(),
            generators: pf.generators,
            relations: pf.relations,
            hilbert: alg.hilbert().coefficients().to_vec(),
            basis,
            products,
            complete: alg.complete,
        }
    }

    pub fn to_algebra(&self) -> Result<GradedAlgebra> {
        check_field(&self.field)?;
        let pf = PresentationFile {
            field: self.field.clone(),
            generators: self.generators.clone(),
            relations: self.relations.clone(),
        };
        let pres = pf.to_presentation()?;
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|b| {
                Ok(BasisElement {
                    label: b.label.clone(),
                    degree: b.degree,
                    word: match &b.word {
                        Some(w) => Some(word_from_names(&pres.generators, w)?),
                        None => None,
                    },
                })
            })
            .collect::<Result<_>>()?;
        let nb = basis.len();
        let index = |l: &str| {
            basis.iter().position(|b| b.label == l).ok_or_else(|| Error::Input(format!("unknown basis label {l:?}")))
        };
        let mut products = vec![vec![SparseVec::new(); nb]; nb];
        for i in 0..nb {
            if basis[i].degree == 0 {
                for j in 0..nb {
                    products[i][j] = SparseVec::unit(j);
                    products[j][i] = SparseVec::unit(j);
                }
            }
        }
        for p in &self.products {
            let (i, j) = (index(&p.left)?, index(&p.right)?);
            let terms = p.result.iter().map(|(l, c)| Ok((index(l)?, c.clone()))).collect::<Result<Vec<_>>>()?;
            products[i][j] = SparseVec::from_pairs(terms);
        }
        let mut alg = GradedAlgebra::from_structure_constants(basis, products)?;
        alg.complete = self.complete;
        alg.generators = pres.generators;
        alg.relations = pres.relations;
        // Generators are recovered from single letter basis words.
        alg.gen_elements = (0..alg.generators.len())
            .map(|g| match alg.basis.iter().position(|b| b.word.as_deref() == Some(&[g][..])) {
                Some(i) => SparseVec::unit(i),
                None => SparseVec::new(),
            })
            .collect();
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FK3: &str = r#"{"field":"Q",
        "generators":[{"name":"a","degree":1,"gdeg":"(12)"},{"name":"b","degree":1,"gdeg":"(23)"},{"name":"c","degree":1,"gdeg":"(13)"}],
        "relations":[[[1,["a","a"]]],[[1,["b","b"]]],[[1,["c","c"]]],
                     [[1,["a","b"]],[1,["b","c"]],[1,["c","a"]]],
                     [[1,["b","a"]],[1,["a","c"]],[1,["c","b"]]]]}"#;

    #[test]
    fn presentation_parses_and_builds() {
        let pf: PresentationFile = serde_json::from_str(FK3).unwrap();
        let pres = pf.to_presentation().unwrap();
        assert_eq!(pres.generators[0].gdeg.as_deref(), Some("(12)"));
        let alg = GradedAlgebra::from_presentation(&pres, 8).unwrap();
        assert_eq!(alg.dim(), 12);
        assert_eq!(PresentationFile::from_presentation(&pres), pf);
    }

    #[test]
    fn algebra_file_round_trip() {
        let pf: PresentationFile = serde_json::from_str(FK3).unwrap();
        let alg = GradedAlgebra::from_presentation(&pf.to_presentation().unwrap(), 8).unwrap();
        let file = AlgebraFile::from_algebra(&alg);
        let text = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        let alg2 = back.to_algebra().unwrap();
        assert_eq!(AlgebraFile::from_algebra(&alg2), file);
        assert_eq!(alg2.generator_element(2), &SparseVec::unit(alg2.index_of("c").unwrap()));
    }

    #[test]
    fn rejects_other_fields() {
        let text = FK3.replace("\"Q\"", "\"F2\"");
        let pf: PresentationFile = serde_json::from_str(&text).unwrap();
        assert!(matches!(pf.to_presentation(), Err(Error::Input(_))));
    }
}
