//! Reference complexes and labelings: polygons, the model complex over the
//! tetrahedron cone with its tropical labeling, and the doubled-pants
//! example with non-injective fundamental group map.

use crate::complex::{
    CornerRef, DotMarking, Edge, EdgeId, EdgeType, Face, FaceId, FaceStep, SideRef,
    SpecialComplex, Vertex, VertexId,
};
use crate::gl2z::{LabelMatrix, VertexType};
use crate::labeling::Labeling;

/// A polygon with `n >= 1` vertices of type (0,0).
pub fn ngon(n: u32) -> SpecialComplex {
    assert!(n >= 1);
    let vertices =
        (0..n).map(|i| Vertex { id: VertexId(i), vtype: VertexType::V00 }).collect();
    let edges = (0..n)
        .map(|i| Edge {
            id: EdgeId(i),
            etype: EdgeType::E11,
            ends: [VertexId(i), VertexId((i + 1) % n)],
        })
        .collect();
    let steps = (0..n)
        .map(|i| FaceStep { corner: VertexId(i), side: SideRef::with(EdgeId(i)) })
        .collect();
    SpecialComplex {
        vertices,
        edges,
        faces: vec![Face { id: FaceId(0), steps }],
        dots: Default::default(),
    }
}

/// Labels a polygon: `labels[i]` goes to side `i` in traversal order.
pub fn label_ngon(n: u32, labels: &[LabelMatrix]) -> Labeling {
    assert_eq!(labels.len(), n as usize);
    let mut lab = Labeling::empty();
    for (i, l) in labels.iter().enumerate() {
        lab.insert(FaceId(0), i, *l);
    }
    lab
}

/// The monogon with an arbitrary (never admissible) label.
pub fn monogon() -> (SpecialComplex, Labeling) {
    (ngon(1), label_ngon(1, &[LabelMatrix::positive(0)]))
}

/// The bigon representing the 4-sphere.
pub fn bigon() -> (SpecialComplex, Labeling) {
    let d = LabelMatrix::positive(0);
    (ngon(2), label_ngon(2, &[d, d.neg()]))
}

/// The triangle representing the projective plane, all labels `[[1,-1],[0,-1]]`.
pub fn triangle() -> (SpecialComplex, Labeling) {
    let l = LabelMatrix::positive(-1);
    (ngon(3), label_ngon(3, &[l, l, l]))
}

/// The square representing `S^2 x S^2`, all labels `[[1,0],[0,-1]]`.
pub fn square() -> (SpecialComplex, Labeling) {
    let d = LabelMatrix::positive(0);
    (ngon(4), label_ngon(4, &[d, d, d, d]))
}

/// A pentagon obtained from the square by one blowup.
pub fn pentagon() -> (SpecialComplex, Labeling) {
    let d = LabelMatrix::positive(0);
    let u = LabelMatrix::positive(1);
    (ngon(5), label_ngon(5, &[u, u, u, d, d]))
}

/// Two (0,1) vertices joined by three boundary edges and one interior edge,
/// with three bigon faces. Fibers over it the double of a theta-graph
/// neighborhood; the fundamental group map downstairs is not injective.
pub fn doubled_pants() -> SpecialComplex {
    let vertices = vec![
        Vertex { id: VertexId(0), vtype: VertexType::V01 },
        Vertex { id: VertexId(1), vtype: VertexType::V01 },
    ];
    let mut edges: Vec<Edge> = (0..3)
        .map(|i| Edge { id: EdgeId(i), etype: EdgeType::E11, ends: [VertexId(0), VertexId(1)] })
        .collect();
    edges.push(Edge { id: EdgeId(3), etype: EdgeType::E12, ends: [VertexId(0), VertexId(1)] });
    let faces = (0..3)
        .map(|i| Face {
            id: FaceId(i),
            steps: vec![
                FaceStep { corner: VertexId(0), side: SideRef::with(EdgeId(i)) },
                FaceStep { corner: VertexId(1), side: SideRef::against(EdgeId(3)) },
            ],
        })
        .collect();
    SpecialComplex { vertices, edges, faces, dots: Default::default() }
}

pub fn doubled_pants_labeling() -> Labeling {
    let d = LabelMatrix::positive(0);
    let mut lab = Labeling::empty();
    for f in 0..3 {
        lab.insert(FaceId(f), 0, d);
        lab.insert(FaceId(f), 1, d);
    }
    lab
}

// Cell ids of the model complex: the six (0,0) vertices are indexed by the
// unordered pairs {a,b} of {1,2,3,4} in lexicographic order, the four (0,1)
// vertices follow, then the central (0,2) vertex.

const PAIRS: [(u32, u32); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_index(a: u32, b: u32) -> u32 {
    PAIRS.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap() as u32
}

/// Node vertex over the intersection of sheets `a` and `b`.
pub fn pi2_node(a: u32, b: u32) -> VertexId {
    VertexId(pair_index(a, b))
}

/// The (0,1) vertex at the center of sheet `i`'s Y-graph.
pub fn pi2_y_center(i: u32) -> VertexId {
    VertexId(5 + i)
}

pub const PI2_CENTER: VertexId = VertexId(10);

/// The boundary leg from `pi2_y_center(i)` to `pi2_node(a, b)`, `i` not in `{a,b}`.
pub fn pi2_leg(i: u32, a: u32, b: u32) -> EdgeId {
    debug_assert!(i != a && i != b);
    EdgeId((i - 1) * 3 + PAIRS.iter().filter(|&&(x, y)| x != i && y != i).position(|&p| p == (a.min(b), a.max(b))).unwrap() as u32)
}

/// The interior edge from `pi2_y_center(d)` to the center.
pub fn pi2_interior(d: u32) -> EdgeId {
    EdgeId(12 + (d - 1))
}

/// Face spanning between the legs into `pi2_node(a, b)`, one per pair.
pub fn pi2_face(a: u32, b: u32) -> FaceId {
    FaceId(pair_index(a, b))
}

/// The model complex over the cone of the tetrahedron 1-skeleton: six (0,0)
/// vertices, four (0,1) vertices, one central (0,2) vertex, twelve boundary
/// edges, four interior edges, and six square faces.
pub fn pi2_complex() -> SpecialComplex {
    let mut vertices: Vec<Vertex> =
        (0..6).map(|i| Vertex { id: VertexId(i), vtype: VertexType::V00 }).collect();
    vertices.extend((1..=4).map(|i| Vertex { id: pi2_y_center(i), vtype: VertexType::V01 }));
    vertices.push(Vertex { id: PI2_CENTER, vtype: VertexType::V02 });

    let mut edges = Vec::new();
    for i in 1..=4 {
        for &(a, b) in PAIRS.iter().filter(|&&(x, y)| x != i && y != i) {
            edges.push(Edge {
                id: pi2_leg(i, a, b),
                etype: EdgeType::E11,
                ends: [pi2_y_center(i), pi2_node(a, b)],
            });
        }
    }
    for d in 1..=4 {
        edges.push(Edge {
            id: pi2_interior(d),
            etype: EdgeType::E12,
            ends: [pi2_y_center(d), PI2_CENTER],
        });
    }

    let mut faces = Vec::new();
    for &(a, b) in &PAIRS {
        let rest: Vec<u32> = (1..=4).filter(|&x| x != a && x != b).collect();
        let (c, d) = (rest[0], rest[1]);
        faces.push(Face {
            id: pi2_face(a, b),
            steps: vec![
                FaceStep { corner: pi2_node(a, b), side: SideRef::against(pi2_leg(d, a, b)) },
                FaceStep { corner: pi2_y_center(d), side: SideRef::with(pi2_interior(d)) },
                FaceStep { corner: PI2_CENTER, side: SideRef::against(pi2_interior(c)) },
                FaceStep { corner: pi2_y_center(c), side: SideRef::with(pi2_leg(c, a, b)) },
            ],
        });
    }

    SpecialComplex { vertices, edges, faces, dots: Default::default() }
}

/// Dot marking of the central vertex for the sheet partition {1,2} | {3,4}:
/// the two marked corners lie on the faces over those two nodes.
pub fn pi2_dots() -> std::collections::BTreeMap<VertexId, DotMarking> {
    let mut dots = std::collections::BTreeMap::new();
    dots.insert(
        PI2_CENTER,
        DotMarking {
            corners: [
                CornerRef { face: pi2_face(1, 2), pos: 2 },
                CornerRef { face: pi2_face(3, 4), pos: 2 },
            ],
        },
    );
    dots
}

/// The model complex together with its dots.
pub fn pi2_complex_with_dots() -> SpecialComplex {
    let mut x = pi2_complex();
    x.dots = pi2_dots();
    x
}

/// The labeling induced by the tropical fibration: `[[1,0],[0,-1]]`
/// everywhere except `[[1,-1],[0,-1]]` on the four legs into the two marked
/// nodes.
pub fn pi2_labeling() -> Labeling {
    let d = LabelMatrix::positive(0);
    let n = LabelMatrix::positive(-1);
    let x = pi2_complex();
    let special: Vec<EdgeId> =
        vec![pi2_leg(3, 1, 2), pi2_leg(4, 1, 2), pi2_leg(1, 3, 4), pi2_leg(2, 3, 4)];
    let mut lab = Labeling::empty();
    for f in &x.faces {
        for (i, step) in f.steps.iter().enumerate() {
            let m = if special.contains(&step.side.edge) { n } else { d };
            lab.insert(f.id, i, m);
        }
    }
    lab
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi2_is_valid_even_and_counted() {
        let x = pi2_complex_with_dots();
        let report = x.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(report.warnings.is_empty());
        assert!(x.is_even());
        let c = x.census();
        assert_eq!((c.n0, c.n1, c.n2, c.e11, c.e12, c.f), (6, 4, 1, 12, 4, 6));
    }

    #[test]
    fn pi2_interior_is_connected() {
        let bi = pi2_complex().boundary_interior();
        assert_eq!(bi.interior_components.len(), 1);
        assert_eq!(bi.boundary_edges.len(), 12);
    }

    #[test]
    fn pi2_default_dots_are_a_valid_marking() {
        let mut x = pi2_complex();
        x.dots = x.default_dots();
        assert!(x.validate().is_valid());
        assert_eq!(x.dots.len(), 1);
    }
}
