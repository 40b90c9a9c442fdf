//! Labelings of special complexes and the admissibility checker, the vertex
//! sign move, positive normalization for polygons, and the automatic
//! labeling of even complexes.

use crate::complex::{
    CornerRef, Dir, DotMarking, EdgeId, EdgeType, FaceId, SpecialComplex, VertexId,
};
use crate::gl2z::{corner_matrix, Gl2z, LabelMatrix, VertexType, IDENTITY};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabelingError {
    #[error("labeling domain does not match the face-side occurrences of the complex")]
    DomainMismatch,
    #[error("vertex {0:?} of type (0,2) carries no dot marking")]
    MissingDots(VertexId),
    #[error("vertex {0:?} has a loop edge; the sign move is not defined there")]
    LoopAtVertex(VertexId),
    #[error("operation requires a polygon")]
    NotAPolygon,
    #[error("operation requires an oriented labeling (all labels of determinant -1)")]
    NotOriented,
    #[error("automatic labeling failed verification: {0:?}")]
    AutoLabelFailed(Box<AdmissibilityVerdict>),
    #[error("automatic labeling requires an even complex")]
    NotEven,
    #[error("boundary-edge repair conflict at edge {0:?}")]
    RepairConflict(EdgeId),
}

/// Assignment of a label to every face-side occurrence, stored relative to
/// the side's traversal direction in the face word.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Labeling {
    labels: BTreeMap<(FaceId, usize), LabelMatrix>,
}

impl Labeling {
    pub fn empty() -> Self {
        Labeling::default()
    }

    /// The all-trivial labeling on the side occurrences of `x`.
    pub fn trivial(x: &SpecialComplex) -> Self {
        let mut lab = Labeling::empty();
        for f in &x.faces {
            for i in 0..f.len() {
                lab.insert(f.id, i, LabelMatrix::trivial());
            }
        }
        lab
    }

    pub fn insert(&mut self, face: FaceId, pos: usize, m: LabelMatrix) {
        self.labels.insert((face, pos), m);
    }

    pub fn get(&self, face: FaceId, pos: usize) -> Option<LabelMatrix> {
        self.labels.get(&(face, pos)).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(FaceId, usize), &LabelMatrix)> {
        self.labels.iter()
    }

    pub fn is_oriented(&self) -> bool {
        self.labels.values().all(|l| l.is_oriented())
    }

    pub fn is_positive(&self) -> bool {
        self.labels.values().all(|l| l.is_positive())
    }

    /// Checks that the domain is exactly the side occurrences of `x`.
    pub fn matches(&self, x: &SpecialComplex) -> bool {
        let mut want = BTreeSet::new();
        for f in &x.faces {
            for i in 0..f.len() {
                want.insert((f.id, i));
            }
        }
        let got: BTreeSet<(FaceId, usize)> = self.labels.keys().copied().collect();
        want == got
    }

    /// The label of the occurrence converted to the global orientation of
    /// its edge.
    pub fn global_label(&self, x: &SpecialComplex, face: FaceId, pos: usize) -> LabelMatrix {
        let f = x.face(face).expect("face id");
        let side = f.steps[pos].side;
        let stored = self.get(face, pos).expect("label present");
        match side.dir {
            Dir::With => stored,
            Dir::Against => stored.invert(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeViolation {
    pub edge: EdgeId,
    /// The three labels converted to the global orientation of the edge.
    pub labels: Vec<[i64; 4]>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FaceViolation {
    pub face: FaceId,
    /// The accumulated monodromy matrix, which should have been the identity.
    pub monodromy: [i64; 4],
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub ok: bool,
    pub edge_violations: Vec<EdgeViolation>,
    pub face_violations: Vec<FaceViolation>,
}

/// Whether the corner occurrence is marked by a dot.
pub fn corner_is_dotted(
    dots: &BTreeMap<VertexId, DotMarking>,
    v: VertexId,
    c: CornerRef,
) -> bool {
    dots.get(&v).map_or(false, |d| d.corners.contains(&c))
}

/// The corner matrix of a corner occurrence, given the dot markings.
fn corner_matrix_at(
    x: &SpecialComplex,
    dots: &BTreeMap<VertexId, DotMarking>,
    c: CornerRef,
) -> Result<Gl2z, LabelingError> {
    let f = x.face(c.face).expect("face id");
    let v = f.steps[c.pos].corner;
    let vtype = x.vertex_type(v);
    if vtype == VertexType::V02 && !dots.contains_key(&v) {
        return Err(LabelingError::MissingDots(v));
    }
    let dotted = corner_is_dotted(dots, v, c);
    Ok(corner_matrix(vtype, dotted).expect("table entry").matrix())
}

/// The monodromy along the cyclic word of a face: the product
/// `J_n L_n ... J_1 L_1` with the label of side `i` applied first and the
/// corner matrix of the vertex following it applied next.
pub fn face_monodromy(
    x: &SpecialComplex,
    dots: &BTreeMap<VertexId, DotMarking>,
    lab: &Labeling,
    face: FaceId,
) -> Result<Gl2z, LabelingError> {
    let f = x.face(face).expect("face id");
    let n = f.len();
    let mut m = IDENTITY;
    for i in 0..n {
        let l = lab.get(face, i).ok_or(LabelingError::DomainMismatch)?;
        let j = corner_matrix_at(x, dots, CornerRef { face, pos: (i + 1) % n })?;
        m = j.compose(&l.to_gl2z()).compose(&m);
    }
    Ok(m)
}

/// Checks the two admissibility conditions: at every interior edge the three
/// labels agree in signs and their upper-right entries sum to zero, and at
/// every face the monodromy is the identity.
pub fn check_admissible(
    x: &SpecialComplex,
    dots: &BTreeMap<VertexId, DotMarking>,
    lab: &Labeling,
) -> Result<AdmissibilityVerdict, LabelingError> {
    if !lab.matches(x) {
        return Err(LabelingError::DomainMismatch);
    }
    let mut edge_violations = Vec::new();
    let occ = x.side_occurrences();
    for e in &x.edges {
        if e.etype != EdgeType::E12 {
            continue;
        }
        let slots = &occ[&e.id];
        let globals: Vec<LabelMatrix> =
            slots.iter().map(|s| lab.global_label(x, s.face, s.pos)).collect();
        let ok = globals.len() == 3
            && globals.windows(2).all(|w| w[0].eps() == w[1].eps() && w[0].eps2() == w[1].eps2())
            && globals.iter().map(|l| l.k()).sum::<i64>() == 0;
        if !ok {
            edge_violations.push(EdgeViolation {
                edge: e.id,
                labels: globals.iter().map(|l| l.to_gl2z().into()).collect(),
            });
        }
    }
    let mut face_violations = Vec::new();
    for f in &x.faces {
        let m = face_monodromy(x, dots, lab, f.id)?;
        if !m.is_identity() {
            face_violations.push(FaceViolation { face: f.id, monodromy: m.into() });
        }
    }
    Ok(AdmissibilityVerdict {
        ok: edge_violations.is_empty() && face_violations.is_empty(),
        edge_violations,
        face_violations,
    })
}

/// Euler characteristic of any total space fibering over `x`.
pub fn euler_characteristic(x: &SpecialComplex) -> i64 {
    let c = x.census();
    c.n0 as i64 - c.n1 as i64 + c.n2 as i64
}

/// Negates the labels of every non-loop edge incident to `v`, on all of the
/// edge's side occurrences. Admissibility and the encoded fibration are
/// preserved.
pub fn vertex_sign_move(
    x: &SpecialComplex,
    lab: &Labeling,
    v: VertexId,
) -> Result<Labeling, LabelingError> {
    let incident: Vec<EdgeId> = x
        .edges
        .iter()
        .filter(|e| e.ends.contains(&v))
        .map(|e| {
            if e.is_loop() {
                Err(LabelingError::LoopAtVertex(v))
            } else {
                Ok(e.id)
            }
        })
        .collect::<Result<_, _>>()?;
    let mut out = lab.clone();
    for f in &x.faces {
        for (i, step) in f.steps.iter().enumerate() {
            if incident.contains(&step.side.edge) {
                let l = lab.get(f.id, i).ok_or(LabelingError::DomainMismatch)?;
                out.insert(f.id, i, l.neg());
            }
        }
    }
    Ok(out)
}

/// True when `x` is a polygon: a single face whose cells are all of
/// boundary type.
pub fn is_polygon(x: &SpecialComplex) -> bool {
    x.faces.len() == 1
        && x.vertices.iter().all(|v| v.vtype == VertexType::V00)
        && x.edges.iter().all(|e| e.etype == EdgeType::E11)
        && !x.vertices.is_empty()
}

/// Pushes negative signs along a polygon with sign moves until at most one
/// label is non-positive.
pub fn normalize_positive(
    x: &SpecialComplex,
    lab: &Labeling,
) -> Result<Labeling, LabelingError> {
    if !is_polygon(x) {
        return Err(LabelingError::NotAPolygon);
    }
    if !lab.is_oriented() {
        return Err(LabelingError::NotOriented);
    }
    let f = &x.faces[0];
    let n = f.len();
    let mut out = lab.clone();
    for i in 0..n.saturating_sub(1) {
        let l = out.get(f.id, i).ok_or(LabelingError::DomainMismatch)?;
        if !l.is_positive() {
            // the corner after side i joins sides i and i+1
            let v = f.steps[(i + 1) % n].corner;
            out = vertex_sign_move(x, &out, v)?;
        }
    }
    Ok(out)
}

/// Constructs an admissible labeling on an even complex: trivial labels,
/// then unipotent corrections around odd runs of dotted corners, then the
/// boundary-edge repair. The result is re-verified before it is returned.
pub fn even_auto_label(
    x: &SpecialComplex,
    dots: &BTreeMap<VertexId, DotMarking>,
) -> Result<Labeling, LabelingError> {
    if !x.is_even() {
        return Err(LabelingError::NotEven);
    }
    for v in &x.vertices {
        if v.vtype == VertexType::V02 && !dots.contains_key(&v.id) {
            return Err(LabelingError::MissingDots(v.id));
        }
    }
    let mut lab = Labeling::trivial(x);
    let u = LabelMatrix::unipotent(1);
    let u_inv = LabelMatrix::unipotent(-1);

    // unipotent corrections flanking each odd run of dotted corners
    for f in &x.faces {
        let n = f.len();
        let dotted: Vec<bool> = (0..n)
            .map(|i| {
                corner_is_dotted(dots, f.steps[i].corner, CornerRef { face: f.id, pos: i })
            })
            .collect();
        if dotted.iter().all(|&d| d) {
            // a fully dotted face is one even run; no corrections
            continue;
        }
        if !dotted.iter().any(|&d| d) {
            continue;
        }
        // maximal cyclic runs of dotted corners
        let mut start = 0;
        while dotted[start] {
            start += 1;
        }
        let mut i = start;
        loop {
            let next = (i + 1) % n;
            if dotted[next] {
                // measure the run beginning at `next`
                let mut len = 0;
                let mut j = next;
                while dotted[j] {
                    len += 1;
                    j = (j + 1) % n;
                }
                if len % 2 == 1 {
                    // incoming side: the side before the first dotted corner;
                    // outgoing side: the side after the last dotted corner
                    let incoming = (next + n - 1) % n;
                    let outgoing = (j + n - 1) % n;
                    lab.insert(f.id, incoming, u_inv);
                    lab.insert(f.id, outgoing, u);
                }
                i = j;
            } else {
                i = next;
            }
            if i == start {
                break;
            }
            debug_assert!(!dotted[i], "run scanning always lands on an undotted corner");
        }
    }

    // repair of interior edges that picked up a single unbalanced correction:
    // slide it across the adjacent (0,1) corner onto a boundary edge, or
    // cancel a facing pair across a boundary edge
    let occ = x.side_occurrences();
    let trivial = LabelMatrix::trivial();
    let mut repaired: BTreeSet<(FaceId, usize)> = BTreeSet::new();
    for e in &x.edges {
        if e.etype != EdgeType::E12 {
            continue;
        }
        let t0 = x.vertex_type(e.ends[0]);
        let t1 = x.vertex_type(e.ends[1]);
        let has_v01 = t0 == VertexType::V01 || t1 == VertexType::V01;
        let has_v02 = t0 == VertexType::V02 || t1 == VertexType::V02;
        if !(has_v01 && has_v02) {
            continue;
        }
        let v1 = if t0 == VertexType::V01 { e.ends[0] } else { e.ends[1] };
        for slot in &occ[&e.id] {
            if lab.get(slot.face, slot.pos) == Some(trivial) || repaired.contains(&(slot.face, slot.pos)) {
                continue;
            }
            let f = x.face(slot.face).expect("face id");
            let n = f.len();
            // the corner of this occurrence at the (0,1) end
            let flanks = [slot.pos, (slot.pos + 1) % n];
            let c = *flanks
                .iter()
                .find(|&&p| f.steps[p].corner == v1)
                .expect("interior edge occurrence touches its (0,1) end");
            // the boundary side on the other flank of that corner
            let s1 = if c == slot.pos { (slot.pos + n - 1) % n } else { (slot.pos + 1) % n };
            debug_assert_eq!(
                x.edge(f.steps[s1].side.edge).unwrap().etype,
                EdgeType::E11,
                "corner at a (0,1) vertex pairs the interior end with a boundary end"
            );
            // other corner of the boundary side, and the side beyond it
            let (far_corner, far_side) = if c == slot.pos {
                // word order: far_side, far_corner, s1, c, our side
                (s1, (s1 + n - 1) % n)
            } else {
                // word order: our side, c, s1, far_corner, far_side
                ((s1 + 1) % n, (s1 + 1) % n)
            };
            let far_is_pair = x.vertex_type(f.steps[far_corner].corner) == VertexType::V01
                && x.edge(f.steps[far_side].side.edge).unwrap().etype == EdgeType::E12
                && lab.get(f.id, far_side) != Some(trivial)
                && !repaired.contains(&(f.id, far_side));
            if far_is_pair {
                // facing pair: both corrections cancel across the boundary edge
                lab.insert(f.id, slot.pos, trivial);
                lab.insert(f.id, far_side, trivial);
                repaired.insert((f.id, slot.pos));
                repaired.insert((f.id, far_side));
            } else {
                // slide the correction across the identity corner
                if lab.get(f.id, s1) != Some(trivial) {
                    return Err(LabelingError::RepairConflict(f.steps[s1].side.edge));
                }
                let m = lab.get(f.id, slot.pos).unwrap();
                lab.insert(f.id, s1, m);
                lab.insert(f.id, slot.pos, trivial);
                repaired.insert((f.id, slot.pos));
                repaired.insert((f.id, s1));
            }
        }
    }

    let verdict = check_admissible(x, dots, &lab)?;
    if !verdict.ok {
        return Err(LabelingError::AutoLabelFailed(Box::new(verdict)));
    }
    Ok(lab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gl2z::SWAP;

    fn no_dots() -> BTreeMap<VertexId, DotMarking> {
        BTreeMap::new()
    }

    #[test]
    fn polygon_fixture_admissibility() {
        for (x, lab) in [fixtures::bigon(), fixtures::triangle(), fixtures::square(), fixtures::pentagon()] {
            let verdict = check_admissible(&x, &no_dots(), &lab).unwrap();
            assert!(verdict.ok, "{:?}", verdict);
        }
    }

    #[test]
    fn monogon_never_admissible() {
        let x = fixtures::ngon(1);
        for eps in [1i64, -1] {
            for eps2 in [1i64, -1] {
                for k in -10..=10 {
                    let lab =
                        fixtures::label_ngon(1, &[LabelMatrix::new(eps, k, eps2).unwrap()]);
                    let verdict = check_admissible(&x, &no_dots(), &lab).unwrap();
                    assert!(!verdict.ok);
                    assert_eq!(verdict.face_violations.len(), 1);
                }
            }
        }
    }

    #[test]
    fn pi2_tropical_labeling_is_admissible() {
        let x = fixtures::pi2_complex_with_dots();
        let lab = fixtures::pi2_labeling();
        let verdict = check_admissible(&x, &x.dots, &lab).unwrap();
        assert!(verdict.ok, "{:?}", verdict);
    }

    #[test]
    fn doubled_pants_admissible() {
        let x = fixtures::doubled_pants();
        let lab = fixtures::doubled_pants_labeling();
        assert!(check_admissible(&x, &no_dots(), &lab).unwrap().ok);
    }

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(euler_characteristic(&fixtures::pi2_complex()), 3);
        for n in 1..=6 {
            assert_eq!(euler_characteristic(&fixtures::ngon(n)), n as i64);
        }
        assert_eq!(euler_characteristic(&fixtures::doubled_pants()), -2);
    }

    #[test]
    fn check_is_invariant_under_word_rotation() {
        let (mut x, lab) = fixtures::square();
        let verdict1 = check_admissible(&x, &no_dots(), &lab).unwrap();
        // rotate the face word by one step and remap label positions
        let f = &mut x.faces[0];
        f.steps.rotate_left(1);
        let mut rotated = Labeling::empty();
        for i in 0..4usize {
            rotated.insert(FaceId(0), i, lab.get(FaceId(0), (i + 1) % 4).unwrap());
        }
        let verdict2 = check_admissible(&x, &no_dots(), &rotated).unwrap();
        assert_eq!(verdict1.ok, verdict2.ok);
        assert!(verdict2.ok);
    }

    #[test]
    fn sign_move_bigon() {
        let (x, lab) = fixtures::bigon();
        let moved = vertex_sign_move(&x, &lab, VertexId(0)).unwrap();
        // both labels flip: [[1,0],[0,-1]] and [[-1,0],[0,1]] trade places
        assert_eq!(moved.get(FaceId(0), 0).unwrap(), LabelMatrix::positive(0).neg());
        assert_eq!(moved.get(FaceId(0), 1).unwrap(), LabelMatrix::positive(0));
        assert!(check_admissible(&x, &no_dots(), &moved).unwrap().ok);
        // the move is an involution
        let back = vertex_sign_move(&x, &moved, VertexId(0)).unwrap();
        assert_eq!(back, lab);
    }

    #[test]
    fn sign_move_preserves_admissibility_on_fixtures() {
        let fixtures_with_dots: Vec<(SpecialComplex, Labeling)> = vec![
            fixtures::triangle(),
            fixtures::square(),
            fixtures::pentagon(),
            (fixtures::pi2_complex_with_dots(), fixtures::pi2_labeling()),
            (fixtures::doubled_pants(), fixtures::doubled_pants_labeling()),
        ];
        for (x, lab) in fixtures_with_dots {
            for v in &x.vertices {
                if x.edges.iter().any(|e| e.is_loop() && e.ends.contains(&v.id)) {
                    continue;
                }
                let moved = vertex_sign_move(&x, &lab, v.id).unwrap();
                let verdict = check_admissible(&x, &x.dots, &moved).unwrap();
                assert!(verdict.ok, "sign move at {:?} broke admissibility", v.id);
            }
        }
    }

    #[test]
    fn sign_move_at_center_negates_all_interior_labels() {
        let x = fixtures::pi2_complex_with_dots();
        let lab = fixtures::pi2_labeling();
        let moved = vertex_sign_move(&x, &lab, fixtures::PI2_CENTER).unwrap();
        assert!(check_admissible(&x, &x.dots, &moved).unwrap().ok);
        let mut changed = 0;
        for (key, l) in moved.iter() {
            let orig = lab.get(key.0, key.1).unwrap();
            if *l != orig {
                assert_eq!(*l, orig.neg());
                changed += 1;
            }
        }
        // four interior edges with three sides each
        assert_eq!(changed, 12);
    }

    #[test]
    fn loop_edge_blocks_sign_move() {
        let (x, lab) = fixtures::monogon();
        assert!(matches!(
            vertex_sign_move(&x, &lab, VertexId(0)),
            Err(LabelingError::LoopAtVertex(_))
        ));
    }

    #[test]
    fn normalize_positive_examples() {
        let (x, lab) = fixtures::triangle();
        assert_eq!(normalize_positive(&x, &lab).unwrap(), lab);

        let (x2, lab2) = fixtures::bigon();
        let norm = normalize_positive(&x2, &lab2).unwrap();
        let negatives =
            norm.iter().filter(|(_, l)| !l.is_positive()).count();
        assert!(negatives <= 1);
        assert!(check_admissible(&x2, &no_dots(), &norm).unwrap().ok);

        // 4-gon with two negative labels at adjacent edges normalizes fully
        let d = LabelMatrix::positive(0);
        let lab4 = fixtures::label_ngon(4, &[d.neg(), d.neg(), d, d]);
        let x4 = fixtures::ngon(4);
        assert!(check_admissible(&x4, &no_dots(), &lab4).unwrap().ok);
        let norm4 = normalize_positive(&x4, &lab4).unwrap();
        assert!(norm4.is_positive());
        assert!(check_admissible(&x4, &no_dots(), &norm4).unwrap().ok);
    }

    #[test]
    fn even_auto_label_square() {
        let x = fixtures::ngon(4);
        let lab = even_auto_label(&x, &no_dots()).unwrap();
        assert!(lab.iter().all(|(_, l)| *l == LabelMatrix::trivial()));
        // monodromy J^4 = I
        assert_eq!(SWAP.pow(4), crate::gl2z::IDENTITY);
    }

    #[test]
    fn even_auto_label_rejects_odd() {
        let x = fixtures::ngon(3);
        assert!(matches!(even_auto_label(&x, &no_dots()), Err(LabelingError::NotEven)));
    }

    #[test]
    fn even_auto_label_pi2() {
        let x = fixtures::pi2_complex();
        let dots = x.default_dots();
        let lab = even_auto_label(&x, &dots).unwrap();
        assert!(check_admissible(&x, &dots, &lab).unwrap().ok);
        // labels have determinant +1 by construction; orientedness is not claimed
        assert!(lab.iter().all(|(_, l)| l.det() == 1));
    }

    #[test]
    fn polygon_specialized_product_agrees_with_checker() {
        // independent oracle for polygons: J L_n J L_{n-1} ... J L_1 = I
        let polygon_product = |labels: &[LabelMatrix]| {
            let mut m = IDENTITY;
            for l in labels {
                m = SWAP.compose(&l.to_gl2z()).compose(&m);
            }
            m
        };
        for n in 2..=4u32 {
            let x = fixtures::ngon(n);
            let mut count_checked = 0;
            for signs in 0..(1u32 << n) {
                for ks in [-1i64, 0, 1].iter().copied() {
                    let labels: Vec<LabelMatrix> = (0..n)
                        .map(|i| {
                            let l = LabelMatrix::positive(ks);
                            if signs & (1 << i) != 0 {
                                l.neg()
                            } else {
                                l
                            }
                        })
                        .collect();
                    let lab = fixtures::label_ngon(n, &labels);
                    let direct = polygon_product(&labels).is_identity();
                    let verdict = check_admissible(&x, &no_dots(), &lab).unwrap();
                    assert_eq!(direct, verdict.ok);
                    count_checked += 1;
                }
            }
            assert!(count_checked > 0);
        }
    }
}
