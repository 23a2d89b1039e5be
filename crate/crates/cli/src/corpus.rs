//! Built-in example documents.

use serde_json::json;

use crate::document::{ArrowDoc, AttachmentDoc, CurveDoc, GraphDoc, LinkDoc, VertexDoc};

/// Gluing matrix exchanging meridian and parallel.
pub const SWAP: [[i64; 2]; 2] = [[0, 1], [1, 0]];

pub const NAMES: &[&str] = &["curling-d", "two-planes", "cylinder"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    UnknownExample(String),
    BadDegree(usize),
}

impl std::fmt::Display for CorpusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorpusError::UnknownExample(name) => {
                write!(f, "unknown example {name:?} (known: {})", NAMES.join(", "))
            }
            CorpusError::BadDegree(d) => write!(f, "curling-d needs d >= 2, got {d}"),
        }
    }
}

impl std::error::Error for CorpusError {}

/// Looks up an example; `d` is only read by `curling-d` and defaults to 2.
pub fn example(name: &str, d: Option<usize>) -> Result<LinkDoc, CorpusError> {
    match name {
        "curling-d" => {
            let d = d.unwrap_or(2);
            if d < 2 {
                return Err(CorpusError::BadDegree(d));
            }
            Ok(curling(d))
        }
        "two-planes" => Ok(two_planes()),
        "cylinder" => Ok(cylinder()),
        other => Err(CorpusError::UnknownExample(other.to_string())),
    }
}

fn solid_torus(label: &str) -> GraphDoc {
    GraphDoc {
        vertices: vec![VertexDoc { e: 0, g: 0 }],
        edges: vec![],
        arrows: vec![ArrowDoc {
            v: 0,
            label: label.into(),
        }],
    }
}

fn attach(sheet: usize, arrow: &str) -> AttachmentDoc {
    AttachmentDoc {
        curve: "sigma".into(),
        sheet,
        arrow: arrow.into(),
        matrix: SWAP,
    }
}

fn one_branch(degree: usize) -> LinkDoc {
    LinkDoc {
        exterior: solid_torus("sigma.b0"),
        curves: vec![CurveDoc {
            name: "sigma".into(),
            degrees: vec![degree],
        }],
        attachments: vec![attach(0, "sigma.b0")],
        expected: None,
    }
}

/// A single branch wrapped `d` times around the pinch: link group `Z/d`.
pub fn curling(d: usize) -> LinkDoc {
    let mut doc = one_branch(d);
    doc.expected = Some(json!({
        "h1": format!("Z/{d}"),
        "manifold": false,
        "normalized_components": 1,
        "certificates": ["yes"],
        "obstruction": format!("order_bound({d})"),
        "smooth": format!("not_simply_connected(order_bound({d}))"),
    }));
    doc
}

/// Two smooth sheets through one curve; normalizes to two copies of `S³`.
pub fn two_planes() -> LinkDoc {
    let exterior = GraphDoc {
        vertices: vec![VertexDoc { e: 0, g: 0 }, VertexDoc { e: 0, g: 0 }],
        edges: vec![],
        arrows: vec![
            ArrowDoc {
                v: 0,
                label: "sigma.b0".into(),
            },
            ArrowDoc {
                v: 1,
                label: "sigma.b1".into(),
            },
        ],
    };
    LinkDoc {
        exterior,
        curves: vec![CurveDoc {
            name: "sigma".into(),
            degrees: vec![1, 1],
        }],
        attachments: vec![attach(0, "sigma.b0"), attach(1, "sigma.b1")],
        expected: Some(json!({
            "h1": "0",
            "manifold": false,
            "normalized_components": 2,
            "certificates": ["yes", "yes"],
            "obstruction": null,
            "smooth": null,
            "diagnostic": "germ reducible",
        })),
    }
}

/// Degree-one curling: the pinch is not a singularity and the link is `S³`.
pub fn cylinder() -> LinkDoc {
    let mut doc = one_branch(1);
    doc.expected = Some(json!({
        "h1": "0",
        "manifold": true,
        "normalized_components": 1,
        "certificates": ["yes"],
        "obstruction": "manifold",
        "smooth": "smooth",
    }));
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_are_valid() {
        for name in NAMES {
            let doc = example(name, None).unwrap();
            doc.to_link().unwrap();
            assert!(doc.expected.is_some());
        }
        assert_eq!(
            example("curling-d", Some(1)),
            Err(CorpusError::BadDegree(1))
        );
        assert!(matches!(
            example("nope", None),
            Err(CorpusError::UnknownExample(_))
        ));
    }

    #[test]
    fn curling_group() {
        for d in 2..8 {
            let link = curling(d).to_link().unwrap();
            assert_eq!(link.h1_singular_link().to_string(), format!("Z/{d}"));
        }
    }
}
