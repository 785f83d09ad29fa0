//! JSON file formats for pencils and relations. Scalars use the text form
//! `a/b+c/d*i`.

use serde::{Deserialize, Serialize};

use crate::linalg::{GaussianRational, Matrix};
use crate::pencil::OperatorPencil;
use crate::relation::LinearRelation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilFile {
    pub n: usize,
    #[serde(rename = "E")]
    pub e: Vec<Vec<GaussianRational>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<GaussianRational>>,
}

impl PencilFile {
    pub fn into_pencil(self) -> Result<OperatorPencil> {
        let shaped = |rows: &Vec<Vec<GaussianRational>>| {
            rows.len() == self.n && rows.iter().all(|r| r.len() == self.n)
        };
        if !shaped(&self.e) || !shaped(&self.a) {
            return Err(Error::Parse(format!(
                "pencil file declares n = {} but matrices are not {0}x{0}",
                self.n
            )));
        }
        OperatorPencil::new(Matrix::from_rows(self.e)?, Matrix::from_rows(self.a)?)
    }
}

impl From<&OperatorPencil> for PencilFile {
    fn from(p: &OperatorPencil) -> Self {
        Self {
            n: p.n(),
            e: p.e().to_rows(),
            a: p.a().to_rows(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationPair {
    pub x: Vec<GaussianRational>,
    pub y: Vec<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub dim_x: usize,
    pub dim_y: usize,
    pub basis: Vec<RelationPair>,
}

impl RelationFile {
    /// Canonicalizes on load.
    pub fn into_relation(self) -> Result<LinearRelation> {
        let pairs: Vec<_> = self.basis.into_iter().map(|p| (p.x, p.y)).collect();
        LinearRelation::from_span(self.dim_x, self.dim_y, &pairs)
    }
}

impl From<&LinearRelation> for RelationFile {
    fn from(l: &LinearRelation) -> Self {
        Self {
            dim_x: l.dim_x(),
            dim_y: l.dim_y(),
            basis: l
                .pairs()
                .into_iter()
                .map(|(x, y)| RelationPair { x, y })
                .collect(),
        }
    }
}

pub fn parse_pencil(json: &str) -> Result<OperatorPencil> {
    serde_json::from_str::<PencilFile>(json)
        .map_err(|e| Error::Parse(e.to_string()))?
        .into_pencil()
}

pub fn parse_relation(json: &str) -> Result<LinearRelation> {
    serde_json::from_str::<RelationFile>(json)
        .map_err(|e| Error::Parse(e.to_string()))?
        .into_relation()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_file_round_trip() {
        let json = r#"{"n":2,"E":[["1","0"],["0","0"]],"A":[["1/2","0+1*i"],["-3","1"]]}"#;
        let p = parse_pencil(json).unwrap();
        assert_eq!(p.a()[(0, 1)], GaussianRational::i());
        let back = serde_json::to_string(&PencilFile::from(&p)).unwrap();
        assert_eq!(back, json);
    }

    #[test]
    fn malformed_pencil_files() {
        assert!(parse_pencil(r#"{"n":2,"E":[["1"]],"A":[["1"]]}"#).is_err());
        assert!(parse_pencil(r#"{"n":1,"E":[["1.5"]],"A":[["1"]]}"#).is_err());
        assert!(parse_pencil(r#"{"n":1,"E":[["1"]]}"#).is_err());
    }

    #[test]
    fn relation_file_canonicalizes() {
        let json = r#"{"dim_x":1,"dim_y":1,"basis":[{"x":["2"],"y":["4"]},{"x":["1"],"y":["2"]}]}"#;
        let l = parse_relation(json).unwrap();
        assert_eq!(l, LinearRelation::from_graph(&Matrix::from_ints(&[[2]])));
        let f = RelationFile::from(&l);
        assert_eq!(f.basis.len(), 1);
        assert!(parse_relation(r#"{"dim_x":1,"dim_y":1,"basis":[{"x":["1","2"],"y":["1"]}]}"#).is_err());
    }
}
