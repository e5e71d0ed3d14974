//! The bundled example corpus: small spheres and other complexes, plus
//! characteristic pairs over some of them.
//!
//! A document with a `lambda` key is a pair; anything else is a complex.

use std::fs;
use std::path::Path;

use crate::complex::{ComplexDocument, SimplicialComplex};
use crate::error::{Error, Result};
use crate::quasitoric::{CharacteristicPair, PairDocument};

const BUNDLED: &[(&str, &str)] = &[
    ("cp1", include_str!("../corpus/cp1.json")),
    ("cp2-alt", include_str!("../corpus/cp2-alt.json")),
    ("cp2-standard", include_str!("../corpus/cp2-standard.json")),
    ("cp3", include_str!("../corpus/cp3.json")),
    ("cp4", include_str!("../corpus/cp4.json")),
    ("cyclic-4-7", include_str!("../corpus/cyclic-4-7.json")),
    ("cyclic-4-8", include_str!("../corpus/cyclic-4-8.json")),
    ("delta1-boundary", include_str!("../corpus/delta1-boundary.json")),
    ("delta2-boundary", include_str!("../corpus/delta2-boundary.json")),
    ("delta3-boundary", include_str!("../corpus/delta3-boundary.json")),
    ("delta4-boundary", include_str!("../corpus/delta4-boundary.json")),
    ("delta5-boundary", include_str!("../corpus/delta5-boundary.json")),
    ("delta6-boundary", include_str!("../corpus/delta6-boundary.json")),
    ("heptagon", include_str!("../corpus/heptagon.json")),
    ("hexagon", include_str!("../corpus/hexagon.json")),
    ("join-pentagon-points", include_str!("../corpus/join-pentagon-points.json")),
    ("join-points-triangle", include_str!("../corpus/join-points-triangle.json")),
    ("join-square-square", include_str!("../corpus/join-square-square.json")),
    ("octagon", include_str!("../corpus/octagon.json")),
    ("pentagon", include_str!("../corpus/pentagon.json")),
    ("pentagon-pair-a", include_str!("../corpus/pentagon-pair-a.json")),
    ("pentagon-pair-b", include_str!("../corpus/pentagon-pair-b.json")),
    ("simplex", include_str!("../corpus/simplex.json")),
    ("square", include_str!("../corpus/square.json")),
    ("square-product", include_str!("../corpus/square-product.json")),
    ("three-points", include_str!("../corpus/three-points.json")),
    ("torus9", include_str!("../corpus/torus9.json")),
    ("two-points", include_str!("../corpus/two-points.json")),
];

#[derive(Clone, Debug)]
pub struct NamedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
}

#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: String,
    pub pair: CharacteristicPair,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub complexes: Vec<NamedComplex>,
    pub pairs: Vec<NamedPair>,
}

#[derive(Clone, Debug)]
pub enum CorpusDocument {
    Complex(SimplicialComplex),
    Pair(CharacteristicPair),
}

/// Parses a complex or pair document. Errors are reported as schema errors
/// prefixed with `source`.
pub fn parse_document(source: &str, json: &str) -> Result<CorpusDocument> {
    let schema = |e: Error| Error::Schema(format!("{source}: {e}"));
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| schema(e.into()))?;
    if value.get("lambda").is_some() {
        let doc: PairDocument = serde_json::from_value(value).map_err(|e| schema(e.into()))?;
        Ok(CorpusDocument::Pair(doc.to_pair().map_err(schema)?))
    } else {
        let doc: ComplexDocument = serde_json::from_value(value).map_err(|e| schema(e.into()))?;
        Ok(CorpusDocument::Complex(doc.to_complex().map_err(schema)?))
    }
}

impl Corpus {
    pub fn bundled() -> Result<Corpus> {
        let mut c = Corpus::default();
        for (name, json) in BUNDLED {
            c.insert(name, parse_document(&format!("{name}.json"), json)?);
        }
        Ok(c)
    }

    /// Every `*.json` file in `dir`, in file-name order.
    pub fn from_dir(dir: &Path) -> Result<Corpus> {
        let mut paths: Vec<_> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut c = Corpus::default();
        for path in paths {
            let json = fs::read_to_string(&path)?;
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            c.insert(&name, parse_document(&path.display().to_string(), &json)?);
        }
        Ok(c)
    }

    fn insert(&mut self, name: &str, doc: CorpusDocument) {
        let name = name.to_string();
        match doc {
            CorpusDocument::Complex(complex) => self.complexes.push(NamedComplex { name, complex }),
            CorpusDocument::Pair(pair) => self.pairs.push(NamedPair { name, pair }),
        }
    }

    pub fn complex(&self, name: &str) -> Option<&SimplicialComplex> {
        self.complexes.iter().find(|c| c.name == name).map(|c| &c.complex)
    }

    pub fn pair(&self, name: &str) -> Option<&CharacteristicPair> {
        self.pairs.iter().find(|p| p.name == name).map(|p| &p.pair)
    }
}
