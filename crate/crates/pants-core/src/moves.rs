//! Blowup and surgery moves on labeled complexes, their inverses on
//! polygons, the classification of polygon labelings by repeated blowdown,
//! and a brute-force enumerator of admissible polygon labelings that serves
//! as an independent oracle.

use crate::complex::{
    Edge, EdgeId, EdgeType, FaceId, FaceStep, SideRef, SpecialComplex, Vertex, VertexId,
};
use crate::gl2z::{Gl2z, LabelMatrix, VertexType, IDENTITY, SWAP};
use crate::labeling::{
    check_admissible, is_polygon, normalize_positive, vertex_sign_move, Labeling, LabelingError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("labeling error: {0}")]
    Labeling(#[from] LabelingError),
    #[error("move requires an admissible labeling")]
    Inadmissible,
    #[error("site {0} has the wrong type for this move")]
    WrongSiteType(String),
    #[error("the move is not defined at a loop edge")]
    LoopSite,
    #[error("blowdown target must carry a label [[1,k],[0,-1]] with |k| <= 1, up to sign")]
    BadBlowdownTarget,
    #[error("blowdown would not leave a polygon")]
    TooSmall,
    #[error("no blowdown applies: every label has |k| >= 2")]
    NoMoveApplies,
    #[error("classification requires an oriented labeling")]
    NotOriented,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum MoveKind {
    Cp2,
    Cp2Bar,
    S2xS2,
    Sign,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Site {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A record of one applied move, with full label snapshots; replaying a
/// record means checking that the before-state transforms into the
/// after-state.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub site: Site,
    pub labels_before: Vec<((u32, usize), [i64; 4])>,
    pub labels_after: Vec<((u32, usize), [i64; 4])>,
}

fn snapshot(lab: &Labeling) -> Vec<((u32, usize), [i64; 4])> {
    lab.iter().map(|((f, p), m)| ((f.0, *p), m.to_gl2z().into())).collect()
}

/// The three matrices of a blowup move: the left factor for the
/// first-traversed neighbor, the new edge label, and the right factor for
/// the second-traversed neighbor.
fn blowup_matrices(kind: MoveKind) -> (LabelMatrix, LabelMatrix, LabelMatrix) {
    match kind {
        MoveKind::Cp2 => (
            LabelMatrix::unipotent(1),
            LabelMatrix::positive(-1),
            LabelMatrix::new(-1, 1, -1).unwrap(),
        ),
        MoveKind::Cp2Bar => {
            (LabelMatrix::unipotent(-1), LabelMatrix::positive(1), LabelMatrix::unipotent(1))
        }
        _ => unreachable!("surgery moves use their own matrices"),
    }
}

/// Shifts the label positions of one face after a word splice: one slot at
/// `at` is removed and `inserted` fills the gap.
fn resplice_labels(
    lab: &Labeling,
    face: FaceId,
    at: usize,
    inserted: &[LabelMatrix],
) -> Labeling {
    let mut out = Labeling::empty();
    for ((f, p), m) in lab.iter() {
        if *f != face || *p < at {
            out.insert(*f, *p, *m);
        } else if *p > at {
            out.insert(*f, *p - 1 + inserted.len(), *m);
        }
    }
    for (i, m) in inserted.iter().enumerate() {
        out.insert(face, at + i, *m);
    }
    out
}

/// Blowup at a (0,0) vertex (`Cp2`, `Cp2Bar`) or surgery on a point of a
/// (1,1) edge (`S2xS2`). The vertex is replaced by a new labeled edge, or
/// the edge is subdivided by a new zero-framed edge; admissibility is
/// preserved and re-checked.
pub fn blowup(
    x: &SpecialComplex,
    lab: &Labeling,
    site: Site,
    kind: MoveKind,
) -> Result<(SpecialComplex, Labeling, MoveRecord), MoveError> {
    let verdict = check_admissible(x, &x.dots, lab)?;
    if !verdict.ok {
        return Err(MoveError::Inadmissible);
    }
    let labels_before = snapshot(lab);
    let (x2, lab2) = match (kind, site) {
        (MoveKind::Cp2 | MoveKind::Cp2Bar, Site::Vertex(v)) => {
            if x.vertex(v).map(|vx| vx.vtype) != Some(VertexType::V00) {
                return Err(MoveError::WrongSiteType(format!("{:?}", v)));
            }
            let corners = x.corner_occurrences();
            let c = corners[&v][0];
            let f = x.face(c.face).expect("face id");
            let n = f.len();
            let apos = (c.pos + n - 1) % n;
            let bpos = c.pos;
            let a_side = f.steps[apos].side;
            let b_side = f.steps[bpos].side;
            if a_side.edge == b_side.edge {
                return Err(MoveError::LoopSite);
            }
            let (u, new_label, vfac) = blowup_matrices(kind);

            let v1 = x.fresh_vertex_id();
            let v2 = VertexId(v1.0 + 1);
            let m_edge = x.fresh_edge_id();
            let mut x2 = x.clone();
            x2.vertices.retain(|vx| vx.id != v);
            x2.vertices.push(Vertex { id: v1, vtype: VertexType::V00 });
            x2.vertices.push(Vertex { id: v2, vtype: VertexType::V00 });
            // reattach the flanking edge ends
            let stop = x.side_stop_end(a_side);
            let start = x.side_start_end(b_side);
            for e in x2.edges.iter_mut() {
                if e.id == stop.edge {
                    e.ends[stop.end as usize] = v1;
                }
                if e.id == start.edge {
                    e.ends[start.end as usize] = v2;
                }
            }
            x2.edges.push(Edge { id: m_edge, etype: EdgeType::E11, ends: [v1, v2] });
            let fx = x2.faces.iter_mut().find(|fx| fx.id == f.id).expect("face");
            fx.steps.splice(
                bpos..=bpos,
                [
                    FaceStep { corner: v1, side: SideRef::with(m_edge) },
                    FaceStep { corner: v2, side: b_side },
                ],
            );

            let lb = lab.get(f.id, bpos).expect("label");
            let mut lab2 = resplice_labels(lab, f.id, bpos, &[new_label, lb.compose(&vfac)]);
            // the first-traversed neighbor picks up the left factor; slots
            // after the splice point shift by one
            let a_slot = if apos < bpos { apos } else { apos + 1 };
            let la = lab2.get(f.id, a_slot).expect("label");
            lab2.insert(f.id, a_slot, u.compose(&la));
            (x2, lab2)
        }
        (MoveKind::S2xS2, Site::Edge(eid)) => {
            let e = x.edge(eid).ok_or_else(|| MoveError::WrongSiteType(format!("{:?}", eid)))?;
            if e.etype != EdgeType::E11 {
                return Err(MoveError::WrongSiteType(format!("{:?}", eid)));
            }
            let occ = x.side_occurrences();
            let slot = occ[&eid][0];
            let f = x.face(slot.face).expect("face id");
            let (start_v, stop_v) = x.side_endpoints(f.steps[slot.pos].side);

            let u1 = x.fresh_vertex_id();
            let u2 = VertexId(u1.0 + 1);
            let e_a = x.fresh_edge_id();
            let e_m = EdgeId(e_a.0 + 1);
            let e_b = EdgeId(e_a.0 + 2);
            let mut x2 = x.clone();
            x2.vertices.push(Vertex { id: u1, vtype: VertexType::V00 });
            x2.vertices.push(Vertex { id: u2, vtype: VertexType::V00 });
            x2.edges.retain(|ex| ex.id != eid);
            x2.edges.push(Edge { id: e_a, etype: EdgeType::E11, ends: [start_v, u1] });
            x2.edges.push(Edge { id: e_m, etype: EdgeType::E11, ends: [u1, u2] });
            x2.edges.push(Edge { id: e_b, etype: EdgeType::E11, ends: [u2, stop_v] });
            let corner_v = f.steps[slot.pos].corner;
            let fx = x2.faces.iter_mut().find(|fx| fx.id == f.id).expect("face");
            fx.steps.splice(
                slot.pos..=slot.pos,
                [
                    FaceStep { corner: corner_v, side: SideRef::with(e_a) },
                    FaceStep { corner: u1, side: SideRef::with(e_m) },
                    FaceStep { corner: u2, side: SideRef::with(e_b) },
                ],
            );
            let d = LabelMatrix::positive(0);
            let kept = lab.get(f.id, slot.pos).expect("label");
            let lab2 = resplice_labels(lab, f.id, slot.pos, &[kept, d, d.neg()]);
            (x2, lab2)
        }
        _ => return Err(MoveError::WrongSiteType(format!("{:?}", site))),
    };
    let verdict = check_admissible(&x2, &x2.dots, &lab2)?;
    if !verdict.ok {
        return Err(MoveError::Inadmissible);
    }
    let record = MoveRecord { kind, site, labels_before, labels_after: snapshot(&lab2) };
    Ok((x2, lab2, record))
}

/// The signed framing parameter of a stored label `+-[[1,k],[0,-1]]`.
fn framing(l: LabelMatrix) -> Option<i64> {
    if l.is_positive() {
        Some(l.k())
    } else if l.neg().is_positive() {
        Some(l.neg().k())
    } else {
        None
    }
}

/// Inverse of a blowup on a polygon: removes the target edge, restores the
/// flanking labels, and records the summand split off (framing -1 a
/// projective plane, +1 a reversed one, 0 a sphere product).
pub fn blowdown(
    x: &SpecialComplex,
    lab: &Labeling,
    edge: EdgeId,
) -> Result<(SpecialComplex, Labeling, MoveRecord), MoveError> {
    if !is_polygon(x) {
        return Err(MoveError::WrongSiteType("blowdown needs a polygon".into()));
    }
    let verdict = check_admissible(x, &x.dots, lab)?;
    if !verdict.ok {
        return Err(MoveError::Inadmissible);
    }
    let f = x.faces[0].clone();
    let n = f.len();
    let pos = f
        .steps
        .iter()
        .position(|s| s.side.edge == edge)
        .ok_or_else(|| MoveError::WrongSiteType(format!("{:?}", edge)))?;

    let mut lab = lab.clone();
    let mut stored = lab.get(f.id, pos).expect("label");
    let k = framing(stored).ok_or(MoveError::BadBlowdownTarget)?;
    if k.abs() > 1 {
        return Err(MoveError::BadBlowdownTarget);
    }
    if !stored.is_positive() {
        // flip the target positive with a sign move at its trailing corner
        let v = f.steps[(pos + 1) % n].corner;
        lab = vertex_sign_move(x, &lab, v)?;
        stored = lab.get(f.id, pos).expect("label");
        debug_assert!(stored.is_positive());
    }
    let labels_before = snapshot(&lab);

    let apos = (pos + n - 1) % n;
    let bpos = (pos + 1) % n;
    let (x2, lab2, kind) = if k == 0 {
        if n < 4 {
            return Err(MoveError::TooSmall);
        }
        // merge the flanking edges across the removed zero-framed edge
        let a_side = f.steps[apos].side;
        let b_side = f.steps[bpos].side;
        let (a_start, _) = x.side_endpoints(a_side);
        let (_, b_stop) = x.side_endpoints(b_side);
        let removed_vertices = [f.steps[pos].corner, f.steps[bpos].corner];
        let merged = x.fresh_edge_id();
        let la = lab.get(f.id, apos).expect("label");
        let lb = lab.get(f.id, bpos).expect("label");
        let swapped = LabelMatrix::from_gl2z(&SWAP.compose(&stored.to_gl2z()).compose(&SWAP))
            .expect("conjugated zero-framed label stays triangular");
        let lambda = lb.compose(&swapped).compose(&la);

        let mut x2 = x.clone();
        x2.vertices.retain(|vx| !removed_vertices.contains(&vx.id));
        x2.edges.retain(|ex| ex.id != edge && ex.id != a_side.edge && ex.id != b_side.edge);
        x2.edges.push(Edge { id: merged, etype: EdgeType::E11, ends: [a_start, b_stop] });
        // rebuild the word: drop steps apos, pos, bpos; the merged edge
        // inherits the corner before the first dropped side
        let keep_corner = f.steps[apos].corner;
        let mut steps = vec![FaceStep { corner: keep_corner, side: SideRef::with(merged) }];
        let mut lab2 = Labeling::empty();
        lab2.insert(f.id, 0, lambda);
        let mut i = bpos;
        loop {
            i = (i + 1) % n;
            if i == apos {
                break;
            }
            lab2.insert(f.id, steps.len(), lab.get(f.id, i).expect("label"));
            steps.push(f.steps[i]);
        }
        let fx = x2.faces.iter_mut().find(|fx| fx.id == f.id).expect("face");
        fx.steps = steps;
        (x2, lab2, MoveKind::S2xS2)
    } else {
        if n < 3 {
            return Err(MoveError::TooSmall);
        }
        let kind = if k == -1 { MoveKind::Cp2 } else { MoveKind::Cp2Bar };
        let (u, _, vfac) = blowup_matrices(kind);
        let a_side = f.steps[apos].side;
        let b_side = f.steps[bpos].side;
        let removed_vertices = [f.steps[pos].corner, f.steps[bpos].corner];
        let w = x.fresh_vertex_id();

        let mut x2 = x.clone();
        x2.vertices.retain(|vx| !removed_vertices.contains(&vx.id));
        x2.vertices.push(Vertex { id: w, vtype: VertexType::V00 });
        x2.edges.retain(|ex| ex.id != edge);
        let stop = x.side_stop_end(a_side);
        let start = x.side_start_end(b_side);
        for e in x2.edges.iter_mut() {
            if e.id == stop.edge {
                e.ends[stop.end as usize] = w;
            }
            if e.id == start.edge {
                e.ends[start.end as usize] = w;
            }
        }
        let mut steps = f.steps.clone();
        steps[bpos] = FaceStep { corner: w, side: b_side };
        steps.remove(pos);
        let fx = x2.faces.iter_mut().find(|fx| fx.id == f.id).expect("face");
        fx.steps = steps;

        let mut lab2 = Labeling::empty();
        for ((fid, p), m) in lab.iter() {
            if *p == pos {
                continue;
            }
            let new_p = if *p > pos { *p - 1 } else { *p };
            lab2.insert(*fid, new_p, *m);
        }
        let a_new = if apos > pos { apos - 1 } else { apos };
        let b_new = if bpos > pos { bpos - 1 } else { bpos };
        let la = lab2.get(f.id, a_new).expect("label");
        let lb = lab2.get(f.id, b_new).expect("label");
        lab2.insert(f.id, a_new, u.invert().compose(&la));
        lab2.insert(f.id, b_new, lb.compose(&vfac.invert()));
        (x2, lab2, kind)
    };

    let verdict = check_admissible(&x2, &x2.dots, &lab2)?;
    if !verdict.ok {
        return Err(MoveError::Inadmissible);
    }
    let record =
        MoveRecord { kind, site: Site::Edge(edge), labels_before, labels_after: snapshot(&lab2) };
    Ok((x2, lab2, record))
}

/// Diffeomorphism type of the total space over a polygon, as the raw
/// multiset of summands produced by reduction to the bigon.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum DiffeoType {
    S4,
    ConnectedSum { cp2: usize, cp2bar: usize, s2xs2: usize },
}

impl DiffeoType {
    pub fn from_counts(cp2: usize, cp2bar: usize, s2xs2: usize) -> Self {
        if cp2 == 0 && cp2bar == 0 && s2xs2 == 0 {
            DiffeoType::S4
        } else {
            DiffeoType::ConnectedSum { cp2, cp2bar, s2xs2 }
        }
    }

    /// Rewrites every sphere-product summand as two planes and a reversed
    /// plane whenever a plane summand is present, using the standard
    /// diffeomorphism (S2xS2) # CP2 = 2 CP2 # conj CP2. Presentation only;
    /// the reduction itself never applies it.
    pub fn normalized(self) -> DiffeoType {
        match self {
            DiffeoType::ConnectedSum { cp2, cp2bar, s2xs2 }
                if s2xs2 > 0 && (cp2 > 0 || cp2bar > 0) =>
            {
                DiffeoType::ConnectedSum { cp2: cp2 + s2xs2, cp2bar: cp2bar + s2xs2, s2xs2: 0 }
            }
            other => other,
        }
    }
}

/// Classifies an oriented admissible polygon labeling by normalizing signs
/// and blowing down until the bigon remains.
pub fn classify_polygon(
    x: &SpecialComplex,
    lab: &Labeling,
) -> Result<(DiffeoType, Vec<MoveRecord>), MoveError> {
    if !is_polygon(x) {
        return Err(MoveError::WrongSiteType("classification needs a polygon".into()));
    }
    if !lab.is_oriented() {
        return Err(MoveError::NotOriented);
    }
    let verdict = check_admissible(x, &x.dots, lab)?;
    if !verdict.ok {
        return Err(MoveError::Inadmissible);
    }
    let mut cur_x = x.clone();
    let mut cur_lab = normalize_positive(x, lab)?;
    let mut records = Vec::new();
    let (mut cp2, mut cp2bar, mut s2xs2) = (0usize, 0usize, 0usize);
    while cur_x.faces[0].len() > 2 {
        let f = &cur_x.faces[0];
        let mut ids: Vec<EdgeId> = cur_x.edges.iter().map(|e| e.id).collect();
        ids.sort();
        let target = ids.into_iter().find(|eid| {
            let pos = f.steps.iter().position(|s| s.side.edge == *eid).expect("polygon edge");
            framing(cur_lab.get(f.id, pos).expect("label")).map_or(false, |k| k.abs() <= 1)
        });
        let Some(eid) = target else {
            return Err(MoveError::NoMoveApplies);
        };
        let (nx, nlab, record) = blowdown(&cur_x, &cur_lab, eid)?;
        match record.kind {
            MoveKind::Cp2 => cp2 += 1,
            MoveKind::Cp2Bar => cp2bar += 1,
            MoveKind::S2xS2 => s2xs2 += 1,
            MoveKind::Sign => {}
        }
        records.push(record);
        cur_x = nx;
        cur_lab = nlab;
    }
    Ok((DiffeoType::from_counts(cp2, cp2bar, s2xs2), records))
}

/// Direct monodromy product for a polygon labeling, the specialized oracle
/// `J L_n J L_{n-1} ... J L_1`.
pub fn polygon_monodromy(labels: &[LabelMatrix]) -> Gl2z {
    let mut m = IDENTITY;
    for l in labels {
        m = SWAP.compose(&l.to_gl2z()).compose(&m);
    }
    m
}

/// Exhaustively enumerates oriented labelings of the n-gon with all
/// framings bounded by `kmax`, one representative per sign-move class, and
/// classifies each admissible one. Admissibility is decided by the direct
/// monodromy product, independently of the checker.
pub fn enumerate_admissible(
    n: u32,
    kmax: i64,
) -> Result<Vec<(Vec<LabelMatrix>, DiffeoType)>, MoveError> {
    assert!(n >= 1);
    assert!(kmax >= 0);
    let x = crate::fixtures::ngon(n);
    let mut out = Vec::new();
    // sign-move classes of oriented polygon labelings are detected by the
    // product of the signs; representatives: all positive, or all positive
    // except the last label
    for negative_last in [false, true] {
        let mut ks = vec![-kmax; n as usize];
        'grid: loop {
            let labels: Vec<LabelMatrix> = ks
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    let l = LabelMatrix::positive(k);
                    if negative_last && i + 1 == n as usize {
                        l.neg()
                    } else {
                        l
                    }
                })
                .collect();
            if polygon_monodromy(&labels).is_identity() {
                let lab = crate::fixtures::label_ngon(n, &labels);
                let (diffeo, _) = classify_polygon(&x, &lab)?;
                out.push((labels, diffeo));
            }
            for i in 0..ks.len() {
                if ks[i] < kmax {
                    ks[i] += 1;
                    continue 'grid;
                }
                ks[i] = -kmax;
            }
            break;
        }
    }
    Ok(out)
}

/// Euler characteristic deltas of the moves: blowups add one vertex,
/// surgeries add two.
pub fn euler_delta(kind: MoveKind) -> i64 {
    match kind {
        MoveKind::Cp2 | MoveKind::Cp2Bar => 1,
        MoveKind::S2xS2 => 2,
        MoveKind::Sign => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::labeling::euler_characteristic;

    fn classify(x: &SpecialComplex, lab: &Labeling) -> DiffeoType {
        classify_polygon(x, lab).unwrap().0
    }

    #[test]
    fn fixture_classification() {
        let (x, lab) = fixtures::bigon();
        assert_eq!(classify(&x, &lab), DiffeoType::S4);
        let (x, lab) = fixtures::triangle();
        assert_eq!(classify(&x, &lab), DiffeoType::from_counts(1, 0, 0));
        let (x, lab) = fixtures::square();
        assert_eq!(classify(&x, &lab), DiffeoType::from_counts(0, 0, 1));
        let (x, lab) = fixtures::pentagon();
        assert_eq!(classify(&x, &lab), DiffeoType::from_counts(0, 1, 1));
    }

    #[test]
    fn bigon_blowup_gives_projective_plane_triangle() {
        let (x, lab) = fixtures::bigon();
        let (x2, lab2, record) =
            blowup(&x, &lab, Site::Vertex(VertexId(1)), MoveKind::Cp2).unwrap();
        assert_eq!(euler_characteristic(&x2), 3);
        assert_eq!(classify(&x2, &lab2), DiffeoType::from_counts(1, 0, 0));
        assert_eq!(record.labels_after.len(), 3);
        for (_, m) in record.labels_after {
            assert_eq!(m, [1, -1, 0, -1]);
        }
        // the other vertex yields the same labeling up to sign moves
        let (x3, lab3, _) = blowup(&x, &lab, Site::Vertex(VertexId(0)), MoveKind::Cp2).unwrap();
        assert_eq!(classify(&x3, &lab3), DiffeoType::from_counts(1, 0, 0));
    }

    #[test]
    fn square_cp2bar_blowup_classifies_like_pentagon_fixture() {
        let (x, lab) = fixtures::square();
        let (x2, lab2, _) =
            blowup(&x, &lab, Site::Vertex(VertexId(3)), MoveKind::Cp2Bar).unwrap();
        assert_eq!(euler_characteristic(&x2), 5);
        assert_eq!(classify(&x2, &lab2), DiffeoType::from_counts(0, 1, 1));
        // a different site changes the reduction order; the summands agree
        // after rewriting sphere products
        let (x3, lab3, _) =
            blowup(&x, &lab, Site::Vertex(VertexId(0)), MoveKind::Cp2Bar).unwrap();
        assert_eq!(
            classify(&x3, &lab3).normalized(),
            DiffeoType::from_counts(0, 1, 1).normalized()
        );
    }

    #[test]
    fn surgery_adds_two_to_euler() {
        let (x, lab) = fixtures::square();
        let (x2, lab2, _) = blowup(&x, &lab, Site::Edge(EdgeId(1)), MoveKind::S2xS2).unwrap();
        assert_eq!(euler_characteristic(&x2), euler_characteristic(&x) + 2);
        assert!(check_admissible(&x2, &x2.dots, &lab2).unwrap().ok);
        assert_eq!(classify(&x2, &lab2), DiffeoType::from_counts(0, 0, 2));
    }

    #[test]
    fn blowdown_undoes_blowup() {
        let (x, lab) = fixtures::triangle();
        for kind in [MoveKind::Cp2, MoveKind::Cp2Bar] {
            let (x2, lab2, _) = blowup(&x, &lab, Site::Vertex(VertexId(1)), kind).unwrap();
            let new_edge = x2.edges.iter().map(|e| e.id).max().unwrap();
            let (x3, lab3, down) = blowdown(&x2, &lab2, new_edge).unwrap();
            assert_eq!(down.kind, kind);
            assert_eq!(euler_characteristic(&x3), euler_characteristic(&x));
            let original: Vec<[i64; 4]> =
                (0..3).map(|i| lab.get(FaceId(0), i).unwrap().to_gl2z().into()).collect();
            let restored: Vec<[i64; 4]> =
                (0..3).map(|i| lab3.get(FaceId(0), i).unwrap().to_gl2z().into()).collect();
            assert_eq!(original, restored);
        }
    }

    #[test]
    fn triangle_blowdown_reaches_bigon() {
        let (x, lab) = fixtures::triangle();
        let (x2, lab2, record) = blowdown(&x, &lab, EdgeId(1)).unwrap();
        assert_eq!(record.kind, MoveKind::Cp2);
        assert_eq!(x2.faces[0].len(), 2);
        assert!(check_admissible(&x2, &x2.dots, &lab2).unwrap().ok);
    }

    #[test]
    fn isolated_zero_framing_classifies_by_merge() {
        // framings (0, 2, 0, -2): admissible, no framing of absolute value
        // one, no cancelling adjacent pair; the merge blowdown resolves it
        // to a single sphere-product summand
        let labels: Vec<LabelMatrix> =
            [0, 2, 0, -2].iter().map(|&k| LabelMatrix::positive(k)).collect();
        assert!(polygon_monodromy(&labels).is_identity());
        let x = fixtures::ngon(4);
        let lab = fixtures::label_ngon(4, &labels);
        assert_eq!(classify(&x, &lab), DiffeoType::from_counts(0, 0, 1));
    }

    #[test]
    fn admissible_labelings_never_have_all_large_framings() {
        for n in 3..=5u32 {
            for (labels, _) in enumerate_admissible(n, 3).unwrap() {
                assert!(
                    labels.iter().any(|l| framing(*l).unwrap().abs() <= 1),
                    "admissible labeling with all framings >= 2: {:?}",
                    labels
                );
            }
        }
    }

    #[test]
    fn enumerate_small_polygons() {
        assert!(enumerate_admissible(1, 10).unwrap().is_empty());
        let bigons = enumerate_admissible(2, 1).unwrap();
        assert!(!bigons.is_empty());
        assert!(bigons.iter().all(|(_, d)| *d == DiffeoType::S4));
    }

    #[test]
    fn enumerator_agrees_with_checker() {
        let x = fixtures::ngon(3);
        for (labels, _) in enumerate_admissible(3, 2).unwrap() {
            let lab = fixtures::label_ngon(3, &labels);
            assert!(check_admissible(&x, &x.dots, &lab).unwrap().ok);
        }
    }

    #[test]
    fn classification_is_sign_move_invariant() {
        let (x, lab) = fixtures::square();
        let base = classify(&x, &lab);
        for v in 0..4 {
            let moved = vertex_sign_move(&x, &lab, VertexId(v)).unwrap();
            assert_eq!(classify(&x, &moved), base);
        }
    }

    #[test]
    fn classification_is_rotation_invariant_after_normalization() {
        // rotating the word changes which blowdown fires first; the raw
        // multisets may differ by the sphere-product relation only
        let (x, lab) = fixtures::pentagon();
        let base = classify(&x, &lab).normalized();
        for shift in 1..5usize {
            let mut labels = Vec::new();
            for i in 0..5usize {
                labels.push(lab.get(FaceId(0), (i + shift) % 5).unwrap());
            }
            let rotated = fixtures::label_ngon(5, &labels);
            assert_eq!(classify(&x, &rotated).normalized(), base);
        }
    }

    #[test]
    fn blowup_on_model_complex_vertex() {
        let x = fixtures::pi2_complex_with_dots();
        let lab = fixtures::pi2_labeling();
        let (x2, lab2, _) =
            blowup(&x, &lab, Site::Vertex(fixtures::pi2_node(1, 2)), MoveKind::Cp2).unwrap();
        assert!(x2.validate().is_valid());
        assert!(check_admissible(&x2, &x2.dots, &lab2).unwrap().ok);
        assert_eq!(euler_characteristic(&x2), 4);
    }

    #[test]
    fn normalized_presentation() {
        assert_eq!(
            DiffeoType::from_counts(1, 0, 1).normalized(),
            DiffeoType::from_counts(2, 1, 0)
        );
        assert_eq!(
            DiffeoType::from_counts(0, 0, 2).normalized(),
            DiffeoType::from_counts(0, 0, 2)
        );
        assert_eq!(DiffeoType::S4.normalized(), DiffeoType::S4);
    }
}
