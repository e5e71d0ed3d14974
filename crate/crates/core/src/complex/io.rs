use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::SimplicialComplex;

/// JSON form of a complex: `{"m": 3, "facets": [[1,2],[2,3],[1,3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ComplexDocument {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.m, &self.facets)
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDocument { m: k.m(), facets: k.facets().to_vec(), name: None, note: None }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::torus_9_vertex;

    #[test]
    fn round_trip() {
        let k = torus_9_vertex();
        let doc = ComplexDocument::from_complex(&k);
        let back = ComplexDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_complex().unwrap(), k);
    }

    #[test]
    fn bad_label_rejected() {
        let doc = ComplexDocument::from_json(r#"{"m":2,"facets":[[1,3]]}"#).unwrap();
        assert!(doc.to_complex().is_err());
    }
}
