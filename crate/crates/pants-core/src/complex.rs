//! Special 2-dimensional complexes: typed vertices and edges, faces given by
//! cyclic corner/side words, dot markings at (0,2) vertices, validation of
//! the local models, and the strata census.

use crate::gl2z::VertexType;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub u32);
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub u32);
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId(pub u32);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}
impl fmt::Debug for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeType {
    /// Type (1,1): boundary edge, one face side.
    #[serde(rename = "(1,1)")]
    E11,
    /// Type (1,2): interior edge, three face sides.
    #[serde(rename = "(1,2)")]
    E12,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    #[serde(rename = "type")]
    pub vtype: VertexType,
}

/// An edge with a fixed global orientation: `ends[0] -> ends[1]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    #[serde(rename = "type")]
    pub etype: EdgeType,
    pub ends: [VertexId; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn other_end(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// Direction of a face side relative to the global orientation of its edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "+")]
    With,
    #[serde(rename = "-")]
    Against,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::With => Dir::Against,
            Dir::Against => Dir::With,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SideRef {
    pub edge: EdgeId,
    pub dir: Dir,
}

impl SideRef {
    pub fn with(edge: EdgeId) -> Self {
        SideRef { edge, dir: Dir::With }
    }

    pub fn against(edge: EdgeId) -> Self {
        SideRef { edge, dir: Dir::Against }
    }

    pub fn reversed(self) -> Self {
        SideRef { edge: self.edge, dir: self.dir.flip() }
    }
}

/// One step of a face boundary word: the corner, then the side leaving it.
///
/// The word is cyclic and strictly alternating, so the corner at position
/// `i` is flanked by the sides at positions `i-1` (incoming) and `i`
/// (outgoing), indices mod the word length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FaceStep {
    pub corner: VertexId,
    pub side: SideRef,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub id: FaceId,
    pub steps: Vec<FaceStep>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The side coming into the corner at position `i`.
    pub fn side_before(&self, i: usize) -> SideRef {
        let n = self.steps.len();
        self.steps[(i + n - 1) % n].side
    }

    /// The side leaving the corner at position `i`.
    pub fn side_after(&self, i: usize) -> SideRef {
        self.steps[i].side
    }
}

/// A corner occurrence: position `pos` within the word of face `face`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CornerRef {
    pub face: FaceId,
    pub pos: usize,
}

/// A dot marking at a (0,2) vertex: a pair of opposite face corners,
/// i.e. one of the three perfect matchings of the K4 link.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DotMarking {
    pub corners: [CornerRef; 2],
}

/// An edge end, disambiguated for loops: `end = 0` is `ends[0]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: u8,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SpecialComplex {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub dots: BTreeMap<VertexId, DotMarking>,
}

/// Strata census of a special complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StrataCensus {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub e11: usize,
    pub e12: usize,
    pub f: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Violation {
    DuplicateVertexId(VertexId),
    DuplicateEdgeId(EdgeId),
    DuplicateFaceId(FaceId),
    UnknownVertex(VertexId),
    UnknownEdge(EdgeId),
    EmptyFaceWord(FaceId),
    /// Consecutive sides of a face word do not meet at the interposed corner.
    BrokenFaceWord {
        face: FaceId,
        pos: usize,
    },
    /// Endpoint types incompatible with the edge type.
    BadEdgeEndpoints(EdgeId),
    /// A (1,1) edge must have exactly 1 face side, a (1,2) edge exactly 3.
    WrongSideCount {
        edge: EdgeId,
        got: usize,
        want: usize,
    },
    /// The link of the vertex does not match the local model of its type.
    BadVertexLink {
        vertex: VertexId,
        detail: String,
    },
    /// A dot marking that is not a pair of opposite corners at its vertex.
    BadDotMarking(VertexId),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Warning {
    LoopEdge(EdgeId),
    ShortFace(FaceId),
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SpecialComplex {
    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.iter().find(|f| f.id == id)
    }

    pub fn vertex_type(&self, id: VertexId) -> VertexType {
        self.vertex(id).expect("vertex id").vtype
    }

    pub fn fresh_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.iter().map(|v| v.id.0 + 1).max().unwrap_or(0))
    }

    pub fn fresh_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.iter().map(|e| e.id.0 + 1).max().unwrap_or(0))
    }

    pub fn fresh_face_id(&self) -> FaceId {
        FaceId(self.faces.iter().map(|f| f.id.0 + 1).max().unwrap_or(0))
    }

    /// Start and end vertex of a side as traversed.
    pub fn side_endpoints(&self, s: SideRef) -> (VertexId, VertexId) {
        let e = self.edge(s.edge).expect("edge id");
        match s.dir {
            Dir::With => (e.ends[0], e.ends[1]),
            Dir::Against => (e.ends[1], e.ends[0]),
        }
    }

    /// The edge end a traversed side departs from.
    pub fn side_start_end(&self, s: SideRef) -> EdgeEnd {
        EdgeEnd { edge: s.edge, end: if s.dir == Dir::With { 0 } else { 1 } }
    }

    /// The edge end a traversed side arrives at.
    pub fn side_stop_end(&self, s: SideRef) -> EdgeEnd {
        EdgeEnd { edge: s.edge, end: if s.dir == Dir::With { 1 } else { 0 } }
    }

    /// The two edge ends spanned by the corner at `(face, pos)`:
    /// the incoming side's arriving end and the outgoing side's departing end.
    pub fn corner_ends(&self, face: &Face, pos: usize) -> (EdgeEnd, EdgeEnd) {
        (self.side_stop_end(face.side_before(pos)), self.side_start_end(face.side_after(pos)))
    }

    /// All side occurrences of each edge, as `(face, position)` pairs.
    pub fn side_occurrences(&self) -> BTreeMap<EdgeId, Vec<CornerRef>> {
        let mut occ: BTreeMap<EdgeId, Vec<CornerRef>> = BTreeMap::new();
        for e in &self.edges {
            occ.insert(e.id, Vec::new());
        }
        for f in &self.faces {
            for (i, step) in f.steps.iter().enumerate() {
                occ.entry(step.side.edge).or_default().push(CornerRef { face: f.id, pos: i });
            }
        }
        occ
    }

    /// All corner occurrences grouped by vertex.
    pub fn corner_occurrences(&self) -> BTreeMap<VertexId, Vec<CornerRef>> {
        let mut occ: BTreeMap<VertexId, Vec<CornerRef>> = BTreeMap::new();
        for v in &self.vertices {
            occ.insert(v.id, Vec::new());
        }
        for f in &self.faces {
            for (i, step) in f.steps.iter().enumerate() {
                occ.entry(step.corner).or_default().push(CornerRef { face: f.id, pos: i });
            }
        }
        occ
    }

    /// Edge ends incident to each vertex.
    pub fn vertex_ends(&self) -> BTreeMap<VertexId, Vec<EdgeEnd>> {
        let mut ends: BTreeMap<VertexId, Vec<EdgeEnd>> = BTreeMap::new();
        for v in &self.vertices {
            ends.insert(v.id, Vec::new());
        }
        for e in &self.edges {
            for end in [0u8, 1u8] {
                ends.entry(e.ends[end as usize]).or_default().push(EdgeEnd { edge: e.id, end });
            }
        }
        ends
    }

    /// Checks every local-model invariant and reports all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut vids = BTreeSet::new();
        for v in &self.vertices {
            if !vids.insert(v.id) {
                report.violations.push(Violation::DuplicateVertexId(v.id));
            }
        }
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id) {
                report.violations.push(Violation::DuplicateEdgeId(e.id));
            }
            for &v in &e.ends {
                if !vids.contains(&v) {
                    report.violations.push(Violation::UnknownVertex(v));
                }
            }
            if e.is_loop() {
                report.warnings.push(Warning::LoopEdge(e.id));
            }
        }
        let mut fids = BTreeSet::new();
        for f in &self.faces {
            if !fids.insert(f.id) {
                report.violations.push(Violation::DuplicateFaceId(f.id));
            }
            if f.is_empty() {
                report.violations.push(Violation::EmptyFaceWord(f.id));
                continue;
            }
            if f.len() < 2 {
                report.warnings.push(Warning::ShortFace(f.id));
            }
            for step in &f.steps {
                if !vids.contains(&step.corner) {
                    report.violations.push(Violation::UnknownVertex(step.corner));
                }
                if !eids.contains(&step.side.edge) {
                    report.violations.push(Violation::UnknownEdge(step.side.edge));
                }
            }
            if !report.violations.is_empty()
                && f.steps.iter().any(|s| {
                    !vids.contains(&s.corner) || !eids.contains(&s.side.edge)
                })
            {
                continue;
            }
            // each corner must be the endpoint shared by its flanking sides
            for (i, step) in f.steps.iter().enumerate() {
                let (start, _) = self.side_endpoints(step.side);
                let (_, stop) = self.side_endpoints(f.side_before(i));
                if start != step.corner || stop != step.corner {
                    report.violations.push(Violation::BrokenFaceWord { face: f.id, pos: i });
                }
            }
        }
        if !report.violations.is_empty() {
            // structural damage; the link conditions below assume references hold
            return report;
        }

        for e in &self.edges {
            let t0 = self.vertex_type(e.ends[0]);
            let t1 = self.vertex_type(e.ends[1]);
            let ok = match e.etype {
                EdgeType::E11 => {
                    t0 != VertexType::V02 && t1 != VertexType::V02
                }
                EdgeType::E12 => t0 != VertexType::V00 && t1 != VertexType::V00,
            };
            if !ok {
                report.violations.push(Violation::BadEdgeEndpoints(e.id));
            }
        }

        let occ = self.side_occurrences();
        for e in &self.edges {
            let want = match e.etype {
                EdgeType::E11 => 1,
                EdgeType::E12 => 3,
            };
            let got = occ[&e.id].len();
            if got != want {
                report.violations.push(Violation::WrongSideCount { edge: e.id, got, want });
            }
        }

        let ends = self.vertex_ends();
        let corners = self.corner_occurrences();
        for v in &self.vertices {
            let vends = &ends[&v.id];
            let e11_ends: Vec<EdgeEnd> = vends
                .iter()
                .copied()
                .filter(|ee| self.edge(ee.edge).unwrap().etype == EdgeType::E11)
                .collect();
            let e12_ends: Vec<EdgeEnd> = vends
                .iter()
                .copied()
                .filter(|ee| self.edge(ee.edge).unwrap().etype == EdgeType::E12)
                .collect();
            let vcorners = &corners[&v.id];
            let mut spans: Vec<(EdgeEnd, EdgeEnd)> = Vec::new();
            for c in vcorners {
                let face = self.face(c.face).unwrap();
                let (a, b) = self.corner_ends(face, c.pos);
                let span = if a <= b { (a, b) } else { (b, a) };
                spans.push(span);
            }
            let fail = |detail: String| Violation::BadVertexLink { vertex: v.id, detail };
            match v.vtype {
                VertexType::V00 => {
                    if e11_ends.len() != 2 || !e12_ends.is_empty() {
                        report.violations.push(fail(format!(
                            "type (0,0) needs 2 boundary edge ends, found {} boundary and {} interior",
                            e11_ends.len(),
                            e12_ends.len()
                        )));
                    } else if spans.len() != 1 {
                        report
                            .violations
                            .push(fail(format!("type (0,0) needs 1 corner, found {}", spans.len())));
                    } else {
                        let (a, b) = spans[0];
                        let mut want = e11_ends.clone();
                        want.sort();
                        if a == b || vec![a, b] != want {
                            report.violations.push(fail(
                                "the single corner must span the two boundary edge ends".into(),
                            ));
                        }
                    }
                }
                VertexType::V01 => {
                    if e11_ends.len() != 3 || e12_ends.len() != 1 {
                        report.violations.push(fail(format!(
                            "type (0,1) needs 3 boundary + 1 interior edge ends, found {} + {}",
                            e11_ends.len(),
                            e12_ends.len()
                        )));
                    } else if spans.len() != 3 {
                        report
                            .violations
                            .push(fail(format!("type (0,1) needs 3 corners, found {}", spans.len())));
                    } else {
                        let interior = e12_ends[0];
                        let mut covered: Vec<EdgeEnd> = Vec::new();
                        let mut ok = true;
                        for &(a, b) in &spans {
                            let boundary = if a == interior {
                                Some(b)
                            } else if b == interior {
                                Some(a)
                            } else {
                                None
                            };
                            match boundary {
                                Some(x) if e11_ends.contains(&x) && !covered.contains(&x) => {
                                    covered.push(x)
                                }
                                _ => ok = false,
                            }
                        }
                        if !ok || covered.len() != 3 {
                            report.violations.push(fail(
                                "corners must pair the interior end with each boundary end once"
                                    .into(),
                            ));
                        }
                    }
                }
                VertexType::V02 => {
                    if e12_ends.len() != 4 || !e11_ends.is_empty() {
                        report.violations.push(fail(format!(
                            "type (0,2) needs 4 interior edge ends, found {} interior and {} boundary",
                            e12_ends.len(),
                            e11_ends.len()
                        )));
                    } else if spans.len() != 6 {
                        report
                            .violations
                            .push(fail(format!("type (0,2) needs 6 corners, found {}", spans.len())));
                    } else {
                        let mut want: BTreeSet<(EdgeEnd, EdgeEnd)> = BTreeSet::new();
                        for i in 0..4 {
                            for j in (i + 1)..4 {
                                let (a, b) = (e12_ends[i], e12_ends[j]);
                                want.insert(if a <= b { (a, b) } else { (b, a) });
                            }
                        }
                        let got: BTreeSet<(EdgeEnd, EdgeEnd)> = spans.iter().copied().collect();
                        if got != want || spans.len() != got.len() {
                            report.violations.push(fail(
                                "the 6 corners must realize the complete graph on the 4 interior ends"
                                    .into(),
                            ));
                        }
                    }
                }
            }
        }

        for (&v, dot) in &self.dots {
            if !self.dot_is_valid(v, dot) {
                report.violations.push(Violation::BadDotMarking(v));
            }
        }

        report
    }

    fn dot_is_valid(&self, v: VertexId, dot: &DotMarking) -> bool {
        let Some(vx) = self.vertex(v) else { return false };
        if vx.vtype != VertexType::V02 {
            return false;
        }
        let mut pairs = Vec::new();
        for c in dot.corners {
            let Some(face) = self.face(c.face) else { return false };
            if c.pos >= face.len() || face.steps[c.pos].corner != v {
                return false;
            }
            let (a, b) = self.corner_ends(face, c.pos);
            pairs.push(BTreeSet::from([a, b]));
        }
        // opposite corners span disjoint pairs of edge ends
        pairs[0].is_disjoint(&pairs[1]) && pairs[0].len() == 2 && pairs[1].len() == 2
    }

    pub fn census(&self) -> StrataCensus {
        let count_v = |t| self.vertices.iter().filter(|v| v.vtype == t).count();
        let count_e = |t| self.edges.iter().filter(|e| e.etype == t).count();
        StrataCensus {
            n0: count_v(VertexType::V00),
            n1: count_v(VertexType::V01),
            n2: count_v(VertexType::V02),
            e11: count_e(EdgeType::E11),
            e12: count_e(EdgeType::E12),
            f: self.faces.len(),
        }
    }

    /// A complex is even when every face has an even number of corners,
    /// counted with multiplicity.
    pub fn is_even(&self) -> bool {
        self.faces.iter().all(|f| f.len() % 2 == 0)
    }

    /// A complex is closed when its boundary is empty.
    pub fn is_closed(&self) -> bool {
        self.boundary_interior().boundary_is_empty()
    }

    pub fn boundary_interior(&self) -> BoundaryInterior {
        let boundary_edges: Vec<EdgeId> = self
            .edges
            .iter()
            .filter(|e| e.etype == EdgeType::E11)
            .map(|e| e.id)
            .collect();
        let boundary_vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .filter(|v| v.vtype != VertexType::V02)
            .map(|v| v.id)
            .collect();

        // components of the interior graph: (1,2) edges glued at (0,2)
        // vertices; (0,1) ends are dangling and do not merge components
        let interior: Vec<&Edge> =
            self.edges.iter().filter(|e| e.etype == EdgeType::E12).collect();
        let mut parent: Vec<usize> = (0..interior.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        let mut by_vertex: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, e) in interior.iter().enumerate() {
            for &v in &e.ends {
                if self.vertex_type(v) == VertexType::V02 {
                    by_vertex.entry(v).or_default().push(i);
                }
            }
        }
        for group in by_vertex.values() {
            for w in group.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
        for i in 0..interior.len() {
            let r = find(&mut parent, i);
            comps.entry(r).or_default().push(interior[i].id);
        }
        let interior_components: Vec<Vec<EdgeId>> = comps.into_values().collect();

        BoundaryInterior {
            boundary_edges,
            boundary_vertices,
            interior_components,
            is_surface: self.vertices.is_empty() && self.edges.is_empty(),
        }
    }

    /// Deterministic dot assignment: at each (0,2) vertex, the matching that
    /// pairs the lowest corner occurrence with its opposite.
    pub fn default_dots(&self) -> BTreeMap<VertexId, DotMarking> {
        let corners = self.corner_occurrences();
        let mut dots = BTreeMap::new();
        for v in &self.vertices {
            if v.vtype != VertexType::V02 {
                continue;
            }
            let mut vcorners = corners[&v.id].clone();
            vcorners.sort();
            if vcorners.len() != 6 {
                continue; // invalid link; validate() reports it
            }
            let span = |c: &CornerRef| {
                let face = self.face(c.face).unwrap();
                let (a, b) = self.corner_ends(face, c.pos);
                BTreeSet::from([a, b])
            };
            let first = vcorners[0];
            let first_span = span(&first);
            let opposite = vcorners[1..]
                .iter()
                .find(|c| span(c).is_disjoint(&first_span))
                .copied();
            if let Some(op) = opposite {
                dots.insert(v.id, DotMarking { corners: [first, op] });
            }
        }
        dots
    }

    /// Renames every cell id through the given maps. Used to check that the
    /// census and other invariants do not depend on the labeling of ids.
    pub fn relabel(
        &self,
        vmap: &BTreeMap<VertexId, VertexId>,
        emap: &BTreeMap<EdgeId, EdgeId>,
        fmap: &BTreeMap<FaceId, FaceId>,
    ) -> SpecialComplex {
        SpecialComplex {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex { id: vmap[&v.id], vtype: v.vtype })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: emap[&e.id],
                    etype: e.etype,
                    ends: [vmap[&e.ends[0]], vmap[&e.ends[1]]],
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| Face {
                    id: fmap[&f.id],
                    steps: f
                        .steps
                        .iter()
                        .map(|s| FaceStep {
                            corner: vmap[&s.corner],
                            side: SideRef { edge: emap[&s.side.edge], dir: s.side.dir },
                        })
                        .collect(),
                })
                .collect(),
            dots: self
                .dots
                .iter()
                .map(|(v, d)| {
                    (
                        vmap[v],
                        DotMarking {
                            corners: [
                                CornerRef { face: fmap[&d.corners[0].face], pos: d.corners[0].pos },
                                CornerRef { face: fmap[&d.corners[1].face], pos: d.corners[1].pos },
                            ],
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Boundary/interior split of the 1-skeleton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryInterior {
    pub boundary_edges: Vec<EdgeId>,
    pub boundary_vertices: Vec<VertexId>,
    /// Connected components of the interior 1-skeleton, as sets of (1,2) edges.
    pub interior_components: Vec<Vec<EdgeId>>,
    pub is_surface: bool,
}

impl BoundaryInterior {
    pub fn boundary_is_empty(&self) -> bool {
        self.boundary_edges.is_empty() && self.boundary_vertices.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ngon_census() {
        for n in 1..=6 {
            let x = fixtures::ngon(n);
            assert!(x.validate().is_valid(), "n = {n}");
            let c = x.census();
            assert_eq!((c.n0, c.n1, c.n2, c.e11, c.e12, c.f), (n as usize, 0, 0, n as usize, 0, 1));
        }
    }

    #[test]
    fn monogon_is_valid_with_loop_warning() {
        let x = fixtures::ngon(1);
        let report = x.validate();
        assert!(report.is_valid());
        assert!(report.warnings.iter().any(|w| matches!(w, Warning::LoopEdge(_))));
    }

    #[test]
    fn ngon_evenness() {
        assert!(!fixtures::ngon(3).is_even());
        assert!(fixtures::ngon(4).is_even());
    }

    #[test]
    fn broken_word_is_reported() {
        let mut x = fixtures::ngon(3);
        // corrupt one side direction so endpoints no longer chain
        x.faces[0].steps[1].side.dir = Dir::Against;
        let report = x.validate();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::BrokenFaceWord { .. })));
    }

    #[test]
    fn wrong_side_count_is_reported() {
        let mut x = fixtures::doubled_pants();
        // drop one face; its (1,2) edge then has only 2 sides
        x.faces.pop();
        let report = x.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::WrongSideCount { want: 3, .. })));
    }

    #[test]
    fn ngon_boundary_and_interior() {
        let x = fixtures::ngon(4);
        let bi = x.boundary_interior();
        assert_eq!(bi.boundary_edges.len(), 4);
        assert_eq!(bi.boundary_vertices.len(), 4);
        assert!(bi.interior_components.is_empty());
        assert!(!bi.is_surface);
    }

    #[test]
    fn doubled_pants_census_and_interior() {
        let x = fixtures::doubled_pants();
        assert!(x.validate().is_valid());
        let c = x.census();
        assert_eq!((c.n0, c.n1, c.n2), (0, 2, 0));
        assert_eq!((c.e11, c.e12, c.f), (3, 1, 3));
        let bi = x.boundary_interior();
        assert_eq!(bi.interior_components.len(), 1);
        assert!(!bi.boundary_is_empty());
    }

    #[test]
    fn default_dots_deterministic() {
        let x = fixtures::pi2_complex();
        let d1 = x.default_dots();
        let d2 = x.default_dots();
        assert_eq!(d1, d2);
        assert_eq!(d1.len(), 1);
        assert!(fixtures::ngon(4).default_dots().is_empty());
    }
}
