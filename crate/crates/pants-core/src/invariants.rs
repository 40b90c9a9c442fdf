//! Invariants of a labeled complex: the nodal surface over the boundary,
//! self-intersection numbers of its spheres, fundamental-group presentations
//! of the base, first homology via Smith normal form, and the criteria under
//! which the fundamental group upstairs agrees with the one downstairs.

use crate::complex::{EdgeEnd, EdgeId, EdgeType, SpecialComplex, VertexId};
use crate::gl2z::VertexType;
use crate::labeling::Labeling;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("self-intersection requires an all-positive labeling")]
    NonPositiveLabels,
    #[error("self-intersection is defined only for embedded components")]
    ImmersedComponent,
    #[error("no nodal component with index {0}")]
    NoSuchComponent(usize),
    #[error("the 1-skeleton is disconnected; no presentation is computed")]
    Disconnected,
    #[error("integer overflow during Smith normal form reduction")]
    Overflow,
    #[error("invariant factor does not fit the report type")]
    FactorTooLarge,
}

/// One building block of the nodal surface.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum NodalPiece {
    /// One of the two discs over a (0,0) vertex, attached toward one
    /// incident boundary edge end.
    Disc { vertex: VertexId, edge: EdgeId, end: u8 },
    /// The annulus over a (1,1) edge.
    Annulus { edge: EdgeId },
    /// The pair of pants over a (0,1) vertex.
    Pants { vertex: VertexId },
}

impl NodalPiece {
    pub fn euler(&self) -> i64 {
        match self {
            NodalPiece::Disc { .. } => 1,
            NodalPiece::Annulus { .. } => 0,
            NodalPiece::Pants { .. } => -1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NodalComponent {
    pub pieces: Vec<usize>,
    pub euler: i64,
    pub is_sphere: bool,
    pub embedded: bool,
}

/// A transverse self-intersection of the nodal surface, one over each
/// (0,0) vertex, joining the vertex's two discs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Node {
    pub vertex: VertexId,
    pub components: [usize; 2],
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NodalReport {
    pub pieces: Vec<NodalPiece>,
    pub components: Vec<NodalComponent>,
    pub nodes: Vec<Node>,
}

impl NodalReport {
    pub fn component_of_piece(&self, piece: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.pieces.contains(&piece))
            .expect("every piece lies in a component")
    }

    pub fn all_spheres(&self) -> bool {
        self.components.iter().all(|c| c.is_sphere)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.parent[a] = b;
        }
    }
}

/// Assembles the nodal surface: two discs per (0,0) vertex, an annulus per
/// (1,1) edge, a pair of pants per (0,1) vertex, glued along matching
/// boundary circles.
pub fn assemble_nodal(x: &SpecialComplex) -> NodalReport {
    let mut pieces = Vec::new();
    let mut disc_index: BTreeMap<EdgeEnd, usize> = BTreeMap::new();
    let mut annulus_index: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut pants_index: BTreeMap<VertexId, usize> = BTreeMap::new();

    for e in &x.edges {
        if e.etype != EdgeType::E11 {
            continue;
        }
        for end in [0u8, 1u8] {
            let v = e.ends[end as usize];
            if x.vertex_type(v) == VertexType::V00 {
                disc_index.insert(EdgeEnd { edge: e.id, end }, pieces.len());
                pieces.push(NodalPiece::Disc { vertex: v, edge: e.id, end });
            }
        }
        annulus_index.insert(e.id, pieces.len());
        pieces.push(NodalPiece::Annulus { edge: e.id });
    }
    for v in &x.vertices {
        if v.vtype == VertexType::V01 {
            pants_index.insert(v.id, pieces.len());
            pieces.push(NodalPiece::Pants { vertex: v.id });
        }
    }

    let mut uf = UnionFind::new(pieces.len());
    for e in &x.edges {
        if e.etype != EdgeType::E11 {
            continue;
        }
        let annulus = annulus_index[&e.id];
        for end in [0u8, 1u8] {
            let v = e.ends[end as usize];
            match x.vertex_type(v) {
                VertexType::V00 => uf.union(annulus, disc_index[&EdgeEnd { edge: e.id, end }]),
                VertexType::V01 => uf.union(annulus, pants_index[&v]),
                VertexType::V02 => {}
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..pieces.len() {
        by_root.entry(uf.find(i)).or_default().push(i);
    }
    let mut components: Vec<NodalComponent> = by_root
        .into_values()
        .map(|members| {
            let euler = members.iter().map(|&i| pieces[i].euler()).sum();
            NodalComponent { pieces: members, euler, is_sphere: euler == 2, embedded: true }
        })
        .collect();

    let mut nodes = Vec::new();
    for v in &x.vertices {
        if v.vtype != VertexType::V00 {
            continue;
        }
        let discs: Vec<usize> = pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, NodalPiece::Disc { vertex, .. } if *vertex == v.id))
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(discs.len(), 2);
        let comp_of = |piece: usize| {
            components.iter().position(|c| c.pieces.contains(&piece)).expect("component")
        };
        let (c0, c1) = (comp_of(discs[0]), comp_of(discs[1]));
        if c0 == c1 {
            components[c0].embedded = false;
        }
        nodes.push(Node { vertex: v.id, components: [c0, c1] });
    }

    NodalReport { pieces, components, nodes }
}

/// Self-intersection number of an embedded nodal component under a positive
/// labeling: minus the sum of the upper-right label entries over the
/// boundary edges the component projects onto.
pub fn self_intersection(
    x: &SpecialComplex,
    lab: &Labeling,
    report: &NodalReport,
    component: usize,
) -> Result<i64, InvariantError> {
    if !lab.is_positive() {
        return Err(InvariantError::NonPositiveLabels);
    }
    let comp =
        report.components.get(component).ok_or(InvariantError::NoSuchComponent(component))?;
    if !comp.embedded {
        return Err(InvariantError::ImmersedComponent);
    }
    let occ = x.side_occurrences();
    let mut sum = 0i64;
    for &i in &comp.pieces {
        if let NodalPiece::Annulus { edge } = report.pieces[i] {
            let slot = occ[&edge][0];
            sum += lab.get(slot.face, slot.pos).expect("label present").k();
        }
    }
    Ok(-sum)
}

/// A finite group presentation; letters are nonzero integers whose sign
/// marks inversion, generator `g` (zero-based) is letter `g+1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Self {
        for r in &relators {
            for &l in r {
                assert!(l != 0 && l.unsigned_abs() as usize <= generators, "letter out of range");
            }
        }
        Presentation { generators, relators }
    }

    /// Exponent-sum matrix, one row per generator, one column per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; self.relators.len()]; self.generators];
        for (j, r) in self.relators.iter().enumerate() {
            for &l in r {
                let g = (l.unsigned_abs() - 1) as usize;
                m[g][j] += l.signum() as i128;
            }
        }
        m
    }
}

/// Fundamental group of a connected complex from a spanning tree of its
/// 1-skeleton: generators are the non-tree edges, relators are the face
/// boundary words.
pub fn pi1_presentation(x: &SpecialComplex) -> Result<Presentation, InvariantError> {
    if x.vertices.is_empty() {
        return Ok(Presentation::new(0, vec![]));
    }
    let vidx: BTreeMap<VertexId, usize> =
        x.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let mut uf = UnionFind::new(x.vertices.len());
    let mut tree: BTreeSet<EdgeId> = BTreeSet::new();
    let mut edges_sorted: Vec<_> = x.edges.iter().collect();
    edges_sorted.sort_by_key(|e| e.id);
    for e in &edges_sorted {
        let (a, b) = (vidx[&e.ends[0]], vidx[&e.ends[1]]);
        if uf.find(a) != uf.find(b) {
            uf.union(a, b);
            tree.insert(e.id);
        }
    }
    let root = uf.find(0);
    if (0..x.vertices.len()).any(|i| uf.find(i) != root) {
        return Err(InvariantError::Disconnected);
    }
    let gen_index: BTreeMap<EdgeId, usize> = edges_sorted
        .iter()
        .filter(|e| !tree.contains(&e.id))
        .enumerate()
        .map(|(i, e)| (e.id, i))
        .collect();
    let relators = x
        .faces
        .iter()
        .map(|f| {
            f.steps
                .iter()
                .filter_map(|s| {
                    gen_index.get(&s.side.edge).map(|&g| {
                        let letter = (g + 1) as i64;
                        match s.side.dir {
                            crate::complex::Dir::With => letter,
                            crate::complex::Dir::Against => -letter,
                        }
                    })
                })
                .collect()
        })
        .collect();
    Ok(Presentation::new(gen_index.len(), relators))
}

fn checked_mul(a: i128, b: i128) -> Result<i128, InvariantError> {
    a.checked_mul(b).ok_or(InvariantError::Overflow)
}

fn checked_sub(a: i128, b: i128) -> Result<i128, InvariantError> {
    a.checked_sub(b).ok_or(InvariantError::Overflow)
}

/// Smith normal form over the integers by repeated pivoting on a smallest
/// nonzero entry. Returns the nonzero diagonal in divisibility order.
pub fn smith_invariant_factors(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>, InvariantError> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors: Vec<i128> = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut progress = false;
            for i in (t + 1)..rows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(m[t][t]);
                    for j in t..cols {
                        let s = checked_mul(q, m[t][j])?;
                        m[i][j] = checked_sub(m[i][j], s)?;
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        progress = true;
                    }
                }
            }
            for j in (t + 1)..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(m[t][t]);
                    for row in m.iter_mut().skip(t) {
                        let s = checked_mul(q, row[t])?;
                        row[j] = checked_sub(row[j], s)?;
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        progress = true;
                    }
                }
            }
            let col_clear = (t + 1..rows).all(|i| m[i][t] == 0);
            let row_clear = (t + 1..cols).all(|j| m[t][j] == 0);
            if progress || !col_clear || !row_clear {
                continue;
            }
            // divisibility: fold in a row containing an entry the pivot
            // does not divide and keep reducing
            let d = m[t][t];
            let mut folded = false;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if m[i][j] % d != 0 {
                        for jj in t..cols {
                            let add = m[i][jj];
                            m[t][jj] = m[t][jj].checked_add(add).ok_or(InvariantError::Overflow)?;
                        }
                        folded = true;
                        break 'scan;
                    }
                }
            }
            if !folded {
                break;
            }
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    factors.retain(|&f| f != 0);
    factors.sort_unstable();
    Ok(factors)
}

/// Rank and torsion of a finitely generated abelian group, the torsion as
/// invariant factors in divisibility order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct H1Invariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl H1Invariants {
    pub fn free(rank: usize) -> Self {
        H1Invariants { rank, torsion: vec![] }
    }
}

fn factors_to_invariants(
    ambient_rank: usize,
    factors: &[i128],
) -> Result<H1Invariants, InvariantError> {
    let torsion = factors
        .iter()
        .filter(|&&f| f > 1)
        .map(|&f| u64::try_from(f).map_err(|_| InvariantError::FactorTooLarge))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(H1Invariants { rank: ambient_rank - factors.len(), torsion })
}

/// Abelianization of a presentation.
pub fn h1_of_presentation(p: &Presentation) -> Result<H1Invariants, InvariantError> {
    let factors = smith_invariant_factors(p.exponent_matrix())?;
    factors_to_invariants(p.generators, &factors)
}

/// First homology of a complex from its cellular boundary maps. Torsion is
/// read off the second boundary map; the quotient by the cycle lattice
/// splits because the image of the first boundary map is free.
pub fn h1_of_complex(x: &SpecialComplex) -> Result<H1Invariants, InvariantError> {
    let vidx: BTreeMap<VertexId, usize> =
        x.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let eidx: BTreeMap<EdgeId, usize> =
        x.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
    let mut d1 = vec![vec![0i128; x.edges.len()]; x.vertices.len()];
    for (j, e) in x.edges.iter().enumerate() {
        d1[vidx[&e.ends[1]]][j] += 1;
        d1[vidx[&e.ends[0]]][j] -= 1;
    }
    let mut d2 = vec![vec![0i128; x.faces.len()]; x.edges.len()];
    for (j, f) in x.faces.iter().enumerate() {
        for s in &f.steps {
            let sign = match s.side.dir {
                crate::complex::Dir::With => 1,
                crate::complex::Dir::Against => -1,
            };
            d2[eidx[&s.side.edge]][j] += sign;
        }
    }
    let rank_d1 = smith_invariant_factors(d1)?.len();
    let d2_factors = smith_invariant_factors(d2)?;
    let cycles = x.edges.len() - rank_d1;
    factors_to_invariants(cycles, &d2_factors)
}

/// Report of the sufficient conditions under which the map on fundamental
/// groups induced by the fibration is an isomorphism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IsoCriteriaReport {
    pub boundary_nonempty: bool,
    pub interior_one_skeleton_connected: bool,
    pub not_a_surface: bool,
    pub all_nodal_components_spheres: bool,
    pub per_component_boundary_incidence: bool,
    pub verdict: bool,
}

/// Evaluates both sufficient variants: the global one (connected interior
/// skeleton, nonempty boundary, spherical nodal surface) and the
/// per-component one (each interior component meets a boundary vertex whose
/// fiber sits inside a spherical component, and the complex is not a
/// surface).
pub fn check_iso_criteria(x: &SpecialComplex, nodal: &NodalReport) -> IsoCriteriaReport {
    let bi = x.boundary_interior();
    let boundary_nonempty = !bi.boundary_is_empty();
    let interior_one_skeleton_connected = bi.interior_components.len() == 1;
    let not_a_surface = !bi.is_surface;
    let all_nodal_components_spheres = nodal.all_spheres();

    let pants_component: BTreeMap<VertexId, usize> = nodal
        .pieces
        .iter()
        .enumerate()
        .filter_map(|(i, p)| match p {
            NodalPiece::Pants { vertex } => Some((*vertex, nodal.component_of_piece(i))),
            _ => None,
        })
        .collect();
    let per_component_boundary_incidence = bi.interior_components.iter().all(|comp| {
        comp.iter().any(|eid| {
            let e = x.edge(*eid).expect("edge id");
            e.ends.iter().any(|&v| {
                x.vertex_type(v) == VertexType::V01
                    && pants_component.get(&v).map_or(false, |&c| nodal.components[c].is_sphere)
            })
        })
    });

    let corollary =
        interior_one_skeleton_connected && boundary_nonempty && all_nodal_components_spheres;
    let proposition = not_a_surface && per_component_boundary_incidence;
    IsoCriteriaReport {
        boundary_nonempty,
        interior_one_skeleton_connected,
        not_a_surface,
        all_nodal_components_spheres,
        per_component_boundary_incidence,
        verdict: corollary || proposition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ngon_nodal_spheres() {
        for n in 2..=6u32 {
            let x = fixtures::ngon(n);
            let report = assemble_nodal(&x);
            assert_eq!(report.components.len(), n as usize);
            assert!(report.components.iter().all(|c| c.is_sphere && c.embedded));
            assert_eq!(report.nodes.len(), n as usize);
        }
    }

    #[test]
    fn monogon_sphere_is_immersed() {
        let report = assemble_nodal(&fixtures::ngon(1));
        assert_eq!(report.components.len(), 1);
        assert!(report.components[0].is_sphere);
        assert!(!report.components[0].embedded);
    }

    #[test]
    fn pi2_nodal_four_embedded_spheres_six_nodes() {
        let x = fixtures::pi2_complex();
        let report = assemble_nodal(&x);
        assert_eq!(report.components.len(), 4);
        assert!(report.components.iter().all(|c| c.is_sphere && c.embedded));
        assert_eq!(report.nodes.len(), 6);
        for node in &report.nodes {
            assert_ne!(node.components[0], node.components[1]);
        }
    }

    #[test]
    fn pieces_euler_sum() {
        for x in [fixtures::ngon(4), fixtures::pi2_complex(), fixtures::doubled_pants()] {
            let report = assemble_nodal(&x);
            let c = x.census();
            let total: i64 = report.pieces.iter().map(|p| p.euler()).sum();
            assert_eq!(total, 2 * c.n0 as i64 - c.n1 as i64);
            assert_eq!(report.nodes.len(), c.n0);
        }
    }

    #[test]
    fn doubled_pants_single_genus_two_component() {
        let report = assemble_nodal(&fixtures::doubled_pants());
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.components[0].euler, -2);
        assert!(!report.components[0].is_sphere);
    }

    #[test]
    fn self_intersections() {
        // triangle: every sphere has self-intersection +1
        let (x, lab) = fixtures::triangle();
        let report = assemble_nodal(&x);
        for c in 0..report.components.len() {
            assert_eq!(self_intersection(&x, &lab, &report, c).unwrap(), 1);
        }
        // square: the factor classes have self-intersection 0
        let (x, lab) = fixtures::square();
        let report = assemble_nodal(&x);
        for c in 0..report.components.len() {
            assert_eq!(self_intersection(&x, &lab, &report, c).unwrap(), 0);
        }
        // model complex: each line sphere has self-intersection +1
        let x = fixtures::pi2_complex();
        let lab = fixtures::pi2_labeling();
        let report = assemble_nodal(&x);
        for c in 0..report.components.len() {
            assert_eq!(self_intersection(&x, &lab, &report, c).unwrap(), 1);
        }
    }

    #[test]
    fn self_intersection_rejects_non_positive() {
        let (x, lab) = fixtures::bigon();
        let report = assemble_nodal(&x);
        assert!(matches!(
            self_intersection(&x, &lab, &report, 0),
            Err(InvariantError::NonPositiveLabels)
        ));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_invariant_factors(vec![vec![3]]).unwrap(), vec![3]);
        assert_eq!(smith_invariant_factors(vec![vec![0, 0], vec![0, 0]]).unwrap(), vec![]);
        assert_eq!(smith_invariant_factors(vec![vec![2, 4], vec![6, 8]]).unwrap(), vec![2, 4]);
        // divisibility chain
        assert_eq!(smith_invariant_factors(vec![vec![2, 0], vec![0, 3]]).unwrap(), vec![1, 6]);
    }

    #[test]
    fn h1_presentation_examples() {
        let free2 = Presentation::new(2, vec![vec![1, 2, -1, -2]]);
        assert_eq!(h1_of_presentation(&free2).unwrap(), H1Invariants::free(2));

        let z3 = Presentation::new(1, vec![vec![1, 1, 1]]);
        assert_eq!(h1_of_presentation(&z3).unwrap(), H1Invariants { rank: 0, torsion: vec![3] });

        let klein = Presentation::new(2, vec![vec![1, 2, 1, -2]]);
        assert_eq!(
            h1_of_presentation(&klein).unwrap(),
            H1Invariants { rank: 1, torsion: vec![2] }
        );
    }

    #[test]
    fn pi1_of_polygon_is_trivial() {
        let x = fixtures::ngon(4);
        let p = pi1_presentation(&x).unwrap();
        assert_eq!(h1_of_presentation(&p).unwrap(), H1Invariants::free(0));
    }

    #[test]
    fn pi2_contractible_h1() {
        let x = fixtures::pi2_complex();
        let p = pi1_presentation(&x).unwrap();
        assert_eq!(h1_of_presentation(&p).unwrap(), H1Invariants::free(0));
        assert_eq!(h1_of_complex(&x).unwrap(), H1Invariants::free(0));
    }

    #[test]
    fn h1_two_routes_agree_on_fixtures() {
        for x in [
            fixtures::ngon(1),
            fixtures::ngon(5),
            fixtures::pi2_complex(),
            fixtures::doubled_pants(),
        ] {
            let via_pi1 = h1_of_presentation(&pi1_presentation(&x).unwrap()).unwrap();
            let via_cells = h1_of_complex(&x).unwrap();
            assert_eq!(via_pi1, via_cells);
        }
    }

    #[test]
    fn iso_criteria_doubled_pants_fails() {
        let x = fixtures::doubled_pants();
        let nodal = assemble_nodal(&x);
        let report = check_iso_criteria(&x, &nodal);
        assert!(!report.all_nodal_components_spheres);
        assert!(!report.verdict);
    }

    #[test]
    fn iso_criteria_polygon_holds() {
        let x = fixtures::ngon(3);
        let nodal = assemble_nodal(&x);
        let report = check_iso_criteria(&x, &nodal);
        assert!(report.verdict);
    }
}
