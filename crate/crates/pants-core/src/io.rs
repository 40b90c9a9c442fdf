//! JSON document formats. A complex document holds vertices, edges, faces
//! (as alternating corner/side words), dot markings, and optionally the
//! labels of a labeling; this combined form is the contract for the CLI.

use crate::complex::{
    CornerRef, Dir, DotMarking, Edge, EdgeId, Face, FaceId, FaceStep, SideRef, SpecialComplex,
    Vertex, VertexId,
};
use crate::gl2z::LabelMatrix;
use crate::labeling::Labeling;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("face {0} has an odd or empty word; words alternate corner, side, ...")]
    BadWordShape(u32),
    #[error("face {0} word item {1} has the wrong kind; words alternate corner, side, ...")]
    BadWordAlternation(u32, usize),
    #[error("side dir must be +1 or -1, got {0}")]
    BadDir(i64),
    #[error("dot marking key {0:?} is not a vertex id")]
    BadDotKey(String),
    #[error("label matrix {0:?} is not upper triangular with unit diagonal")]
    BadLabel([i64; 4]),
}

#[derive(Serialize, Deserialize)]
struct JEdge {
    id: u32,
    #[serde(rename = "type")]
    etype: crate::complex::EdgeType,
    ends: [u32; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JWordItem {
    Corner { corner: u32 },
    Side { side: JSide },
}

#[derive(Serialize, Deserialize)]
struct JSide {
    edge: u32,
    dir: i64,
}

#[derive(Serialize, Deserialize)]
struct JFace {
    id: u32,
    word: Vec<JWordItem>,
}

#[derive(Serialize, Deserialize)]
struct JLabel {
    face: u32,
    position: usize,
    matrix: [i64; 4],
}

#[derive(Serialize, Deserialize)]
struct JComplexDoc {
    vertices: Vec<Vertex>,
    edges: Vec<JEdge>,
    faces: Vec<JFace>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    dots: BTreeMap<String, [(u32, usize); 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<JLabel>>,
}

#[derive(Serialize, Deserialize)]
struct JLabelingDoc {
    labels: Vec<JLabel>,
}

fn labels_to_json(lab: &Labeling) -> Vec<JLabel> {
    lab.iter()
        .map(|((face, pos), m)| JLabel {
            face: face.0,
            position: *pos,
            matrix: m.to_gl2z().into(),
        })
        .collect()
}

fn labels_from_json(items: Vec<JLabel>) -> Result<Labeling, DocError> {
    let mut lab = Labeling::empty();
    for item in items {
        let m = LabelMatrix::try_from(item.matrix).map_err(|_| DocError::BadLabel(item.matrix))?;
        lab.insert(FaceId(item.face), item.position, m);
    }
    Ok(lab)
}

/// Serializes a complex (and optionally a labeling) to the document format.
pub fn complex_to_value(x: &SpecialComplex, labels: Option<&Labeling>) -> serde_json::Value {
    let doc = JComplexDoc {
        vertices: x.vertices.clone(),
        edges: x
            .edges
            .iter()
            .map(|e| JEdge { id: e.id.0, etype: e.etype, ends: [e.ends[0].0, e.ends[1].0] })
            .collect(),
        faces: x
            .faces
            .iter()
            .map(|f| JFace {
                id: f.id.0,
                word: f
                    .steps
                    .iter()
                    .flat_map(|s| {
                        [
                            JWordItem::Corner { corner: s.corner.0 },
                            JWordItem::Side {
                                side: JSide {
                                    edge: s.side.edge.0,
                                    dir: if s.side.dir == Dir::With { 1 } else { -1 },
                                },
                            },
                        ]
                    })
                    .collect(),
            })
            .collect(),
        dots: x
            .dots
            .iter()
            .map(|(v, d)| {
                (
                    v.0.to_string(),
                    [
                        (d.corners[0].face.0, d.corners[0].pos),
                        (d.corners[1].face.0, d.corners[1].pos),
                    ],
                )
            })
            .collect(),
        labels: labels.map(labels_to_json),
    };
    serde_json::to_value(doc).expect("complex serialization")
}

pub fn complex_to_string(x: &SpecialComplex, labels: Option<&Labeling>) -> String {
    serde_json::to_string_pretty(&complex_to_value(x, labels)).expect("complex serialization")
}

/// Parses a complex document; returns the labeling too when one is embedded.
pub fn complex_from_str(s: &str) -> Result<(SpecialComplex, Option<Labeling>), DocError> {
    let doc: JComplexDoc = serde_json::from_str(s)?;
    let mut faces = Vec::new();
    for jf in doc.faces {
        if jf.word.is_empty() || jf.word.len() % 2 != 0 {
            return Err(DocError::BadWordShape(jf.id));
        }
        let mut steps = Vec::new();
        for (i, pair) in jf.word.chunks(2).enumerate() {
            let corner = match &pair[0] {
                JWordItem::Corner { corner } => VertexId(*corner),
                _ => return Err(DocError::BadWordAlternation(jf.id, 2 * i)),
            };
            let side = match &pair[1] {
                JWordItem::Side { side } => SideRef {
                    edge: EdgeId(side.edge),
                    dir: match side.dir {
                        1 => Dir::With,
                        -1 => Dir::Against,
                        other => return Err(DocError::BadDir(other)),
                    },
                },
                _ => return Err(DocError::BadWordAlternation(jf.id, 2 * i + 1)),
            };
            steps.push(FaceStep { corner, side });
        }
        faces.push(Face { id: FaceId(jf.id), steps });
    }
    let mut dots = BTreeMap::new();
    for (key, [c0, c1]) in doc.dots {
        let v: u32 = key.parse().map_err(|_| DocError::BadDotKey(key.clone()))?;
        dots.insert(
            VertexId(v),
            DotMarking {
                corners: [
                    CornerRef { face: FaceId(c0.0), pos: c0.1 },
                    CornerRef { face: FaceId(c1.0), pos: c1.1 },
                ],
            },
        );
    }
    let x = SpecialComplex {
        vertices: doc.vertices,
        edges: doc
            .edges
            .into_iter()
            .map(|e| Edge {
                id: EdgeId(e.id),
                etype: e.etype,
                ends: [VertexId(e.ends[0]), VertexId(e.ends[1])],
            })
            .collect(),
        faces,
        dots,
    };
    let labels = doc.labels.map(labels_from_json).transpose()?;
    Ok((x, labels))
}

/// Serializes a labeling on its own, `{"labels": [...]}`.
pub fn labeling_to_string(lab: &Labeling) -> String {
    serde_json::to_string_pretty(&JLabelingDoc { labels: labels_to_json(lab) })
        .expect("labeling serialization")
}

pub fn labeling_from_str(s: &str) -> Result<Labeling, DocError> {
    let doc: JLabelingDoc = serde_json::from_str(s)?;
    labels_from_json(doc.labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn complex_round_trip() {
        for x in [fixtures::ngon(1), fixtures::ngon(5), fixtures::doubled_pants(), fixtures::pi2_complex_with_dots()] {
            let s = complex_to_string(&x, None);
            let (back, lab) = complex_from_str(&s).unwrap();
            assert_eq!(back, x);
            assert!(lab.is_none());
        }
    }

    #[test]
    fn combined_round_trip() {
        let (x, lab) = fixtures::triangle();
        let s = complex_to_string(&x, Some(&lab));
        let (bx, blab) = complex_from_str(&s).unwrap();
        assert_eq!(bx, x);
        assert_eq!(blab.unwrap(), lab);
    }

    #[test]
    fn labeling_round_trip() {
        let (_, lab) = fixtures::square();
        let s = labeling_to_string(&lab);
        assert_eq!(labeling_from_str(&s).unwrap(), lab);
    }
}
