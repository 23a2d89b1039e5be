//! JSON file formats: plumbing graphs, singular-link documents and
//! permutations.
//!
//! Graph documents look like
//! `{"vertices":[{"e":-2,"g":0}],"edges":[[0,1]],"arrows":[{"v":0,"label":"a"}]}`.
//! [`graph_to_json`] writes the canonical form (compact, edges as sorted
//! `[min,max]` pairs) and parsing it back gives the same graph.

use std::fmt;

use pinchlink_core::{
    Arrow, Attachment, Permutation, PlumbingGraph, SingularCurveData, SingularLinkDescription,
    Vertex,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocError {
    /// Not JSON, or JSON of the wrong shape.
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed document describing an invalid object.
    Invalid(String),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Json {
                line,
                column,
                message,
            } => write!(
                f,
                "malformed JSON at line {line} column {column}: {message}"
            ),
            DocError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for DocError {}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C" itself
        let message = e.to_string();
        let message = message
            .rsplit_once(" at line ")
            .map_or(message.clone(), |(m, _)| m.to_string());
        DocError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub e: i64,
    #[serde(default)]
    pub g: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub v: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub name: String,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentDoc {
    pub curve: String,
    pub sheet: usize,
    pub arrow: String,
    pub matrix: [[i64; 2]; 2],
}

/// Top-level singular-link document. `_expected` is carried along for test
/// harnesses and never read by the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub exterior: GraphDoc,
    #[serde(default)]
    pub curves: Vec<CurveDoc>,
    #[serde(default)]
    pub attachments: Vec<AttachmentDoc>,
    #[serde(rename = "_expected", default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
}

impl From<&PlumbingGraph> for GraphDoc {
    fn from(g: &PlumbingGraph) -> Self {
        GraphDoc {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexDoc {
                    e: v.euler,
                    g: v.genus,
                })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            arrows: g
                .arrows()
                .iter()
                .map(|a| ArrowDoc {
                    v: a.vertex,
                    label: a.label.clone(),
                })
                .collect(),
        }
    }
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<PlumbingGraph, DocError> {
        PlumbingGraph::new(
            self.vertices
                .iter()
                .map(|v| Vertex::new(v.e, v.g))
                .collect(),
            self.edges.iter().map(|&[a, b]| (a, b)).collect(),
            self.arrows
                .iter()
                .map(|a| Arrow::new(a.v, a.label.clone()))
                .collect(),
        )
        .map_err(|e| DocError::Invalid(format!("invalid plumbing graph: {e}")))
    }
}

impl LinkDoc {
    pub fn to_link(&self) -> Result<SingularLinkDescription, DocError> {
        let exterior = self.exterior.to_graph()?;
        let curves = self
            .curves
            .iter()
            .map(|c| SingularCurveData::new(c.name.clone(), c.degrees.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| DocError::Invalid(format!("invalid curve: {e}")))?;
        let attachments = self
            .attachments
            .iter()
            .map(|a| Attachment::new(a.curve.clone(), a.sheet, a.arrow.clone(), a.matrix))
            .collect();
        SingularLinkDescription::new(exterior, curves, attachments)
            .map_err(|e| DocError::Invalid(format!("invalid singular link: {e}")))
    }
}

pub fn parse_graph(text: &str) -> Result<PlumbingGraph, DocError> {
    serde_json::from_str::<GraphDoc>(text)?.to_graph()
}

/// Canonical compact JSON of a graph.
pub fn graph_to_json(g: &PlumbingGraph) -> String {
    serde_json::to_string(&GraphDoc::from(g)).expect("graph documents always serialize")
}

pub fn parse_link_doc(text: &str) -> Result<LinkDoc, DocError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_link(text: &str) -> Result<SingularLinkDescription, DocError> {
    parse_link_doc(text)?.to_link()
}

/// Permutations are JSON arrays of 1-based images, e.g. `[2,3,1]`.
pub fn parse_permutation(text: &str) -> Result<Permutation, DocError> {
    let images: Vec<usize> = serde_json::from_str(text)?;
    Permutation::new(images).map_err(|e| DocError::Invalid(format!("invalid permutation: {e}")))
}

pub fn permutation_to_json(p: &Permutation) -> String {
    serde_json::to_string(p.images()).expect("integer arrays always serialize")
}
