//! Exact 2x2 integer matrix arithmetic for gluing labels, corner matrices,
//! and monodromy words.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix {0} is not unimodular (det = {1})")]
    NonUnimodular(Gl2z, i64),
    #[error("matrix {0} is not an upper-triangular label with unit diagonal")]
    NotALabel(Gl2z),
    #[error("dotted corner matrices only exist at vertices of type (0,2)")]
    DottedNonCentral,
}

/// A 2x2 integer matrix, row-major `[[a, b], [c, d]]`.
///
/// Serialized everywhere as the integer 4-tuple `[a, b, c, d]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 4]", into = "[i64; 4]")]
pub struct Gl2z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl From<[i64; 4]> for Gl2z {
    fn from(v: [i64; 4]) -> Self {
        Gl2z { a: v[0], b: v[1], c: v[2], d: v[3] }
    }
}

impl From<Gl2z> for [i64; 4] {
    fn from(m: Gl2z) -> Self {
        [m.a, m.b, m.c, m.d]
    }
}

impl fmt::Debug for Gl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Gl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub const IDENTITY: Gl2z = Gl2z { a: 1, b: 0, c: 0, d: 1 };

/// The factor-swap matrix `[[0,1],[1,0]]`.
pub const SWAP: Gl2z = Gl2z { a: 0, b: 1, c: 1, d: 0 };

impl Gl2z {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Gl2z { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_identity(&self) -> bool {
        *self == IDENTITY
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// Matrix product `self * rhs`. Compositions are read right to left:
    /// in a word `J_n L_n ... J_1 L_1` the factor `L_1` acts first.
    pub fn compose(&self, rhs: &Gl2z) -> Gl2z {
        Gl2z {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn invert(&self) -> Result<Gl2z, MatrixError> {
        let det = self.det();
        match det {
            1 => Ok(Gl2z { a: self.d, b: -self.b, c: -self.c, d: self.a }),
            -1 => Ok(Gl2z { a: -self.d, b: self.b, c: self.c, d: -self.a }),
            _ => Err(MatrixError::NonUnimodular(*self, det)),
        }
    }

    pub fn neg(&self) -> Gl2z {
        Gl2z { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn pow(&self, n: u32) -> Gl2z {
        let mut acc = IDENTITY;
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }
}

/// An upper-triangular gluing label `[[eps, k], [0, eps2]]` with
/// `eps, eps2 = +-1`. The lower-left entry is identically zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct LabelMatrix {
    eps: i64,
    k: i64,
    eps2: i64,
}

impl fmt::Debug for LabelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[0,{}]]", self.eps, self.k, self.eps2)
    }
}

impl TryFrom<[i64; 4]> for LabelMatrix {
    type Error = MatrixError;
    fn try_from(v: [i64; 4]) -> Result<Self, Self::Error> {
        LabelMatrix::from_gl2z(&Gl2z::from(v))
    }
}

impl From<LabelMatrix> for [i64; 4] {
    fn from(l: LabelMatrix) -> Self {
        [l.eps, l.k, 0, l.eps2]
    }
}

impl LabelMatrix {
    pub fn new(eps: i64, k: i64, eps2: i64) -> Result<Self, MatrixError> {
        if eps.abs() != 1 || eps2.abs() != 1 {
            return Err(MatrixError::NotALabel(Gl2z::new(eps, k, 0, eps2)));
        }
        Ok(LabelMatrix { eps, k, eps2 })
    }

    /// The trivial label `I`.
    pub fn trivial() -> Self {
        LabelMatrix { eps: 1, k: 0, eps2: 1 }
    }

    /// The positive label `[[1, k], [0, -1]]`.
    pub fn positive(k: i64) -> Self {
        LabelMatrix { eps: 1, k, eps2: -1 }
    }

    /// The unipotent label `[[1, k], [0, 1]]`.
    pub fn unipotent(k: i64) -> Self {
        LabelMatrix { eps: 1, k, eps2: 1 }
    }

    pub fn from_gl2z(m: &Gl2z) -> Result<Self, MatrixError> {
        if m.c != 0 || m.a.abs() != 1 || m.d.abs() != 1 {
            return Err(MatrixError::NotALabel(*m));
        }
        Ok(LabelMatrix { eps: m.a, k: m.b, eps2: m.d })
    }

    pub fn eps(&self) -> i64 {
        self.eps
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn eps2(&self) -> i64 {
        self.eps2
    }

    pub fn to_gl2z(&self) -> Gl2z {
        Gl2z::new(self.eps, self.k, 0, self.eps2)
    }

    pub fn det(&self) -> i64 {
        self.eps * self.eps2
    }

    /// Oriented labels have determinant -1.
    pub fn is_oriented(&self) -> bool {
        self.det() == -1
    }

    /// Positive labels are `[[1, k], [0, -1]]`.
    pub fn is_positive(&self) -> bool {
        self.eps == 1 && self.eps2 == -1
    }

    /// Label carried by the reversed side. Oriented labels are involutions,
    /// so for them this is the label itself.
    pub fn invert(&self) -> LabelMatrix {
        // [[e,k],[0,e2]]^-1 = det * [[e2,-k],[0,e]]
        let det = self.det();
        LabelMatrix { eps: det * self.eps2, k: -det * self.k, eps2: det * self.eps }
    }

    pub fn neg(&self) -> LabelMatrix {
        LabelMatrix { eps: -self.eps, k: -self.k, eps2: -self.eps2 }
    }

    pub fn compose(&self, rhs: &LabelMatrix) -> LabelMatrix {
        LabelMatrix {
            eps: self.eps * rhs.eps,
            k: self.eps * rhs.k + self.k * rhs.eps2,
            eps2: self.eps2 * rhs.eps2,
        }
    }
}

/// Vertex types of a special 2-complex, named after the point types of the
/// model complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    /// Type (0,0): a polygon-style corner on the boundary.
    #[serde(rename = "(0,0)")]
    V00,
    /// Type (0,1): a boundary vertex where three sheets meet a triple line.
    #[serde(rename = "(0,1)")]
    V01,
    /// Type (0,2): an interior vertex with tetrahedral link.
    #[serde(rename = "(0,2)")]
    V02,
}

/// The corner matrix attached to a face corner, determined by the vertex
/// type and, at (0,2) vertices, by the dot marking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CornerMatrix {
    J00,
    J01,
    J02Plain,
    J02Dotted,
}

impl CornerMatrix {
    pub fn matrix(&self) -> Gl2z {
        match self {
            CornerMatrix::J00 => Gl2z::new(0, 1, 1, 0),
            CornerMatrix::J01 => IDENTITY,
            CornerMatrix::J02Plain => Gl2z::new(0, 1, 1, 0),
            CornerMatrix::J02Dotted => Gl2z::new(-1, 0, 1, 1),
        }
    }

    pub fn all() -> [CornerMatrix; 4] {
        [CornerMatrix::J00, CornerMatrix::J01, CornerMatrix::J02Plain, CornerMatrix::J02Dotted]
    }
}

/// Corner matrix for a corner at a vertex of the given type.
pub fn corner_matrix(vtype: VertexType, dotted: bool) -> Result<CornerMatrix, MatrixError> {
    match (vtype, dotted) {
        (VertexType::V00, false) => Ok(CornerMatrix::J00),
        (VertexType::V01, false) => Ok(CornerMatrix::J01),
        (VertexType::V02, false) => Ok(CornerMatrix::J02Plain),
        (VertexType::V02, true) => Ok(CornerMatrix::J02Dotted),
        (_, true) => Err(MatrixError::DottedNonCentral),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_composition() {
        let a = Gl2z::new(3, -2, 1, 4);
        assert_eq!(IDENTITY.compose(&a), a);
        assert_eq!(a.compose(&IDENTITY), a);
    }

    #[test]
    fn triangle_monodromy_step() {
        // J * [[1,-1],[0,-1]] = [[0,-1],[1,-1]], hand multiplication
        let l = Gl2z::new(1, -1, 0, -1);
        assert_eq!(SWAP.compose(&l), Gl2z::new(0, -1, 1, -1));
    }

    #[test]
    fn square_rotation_has_order_four() {
        // J * [[1,0],[0,-1]] is a rotation of order 4
        let jl = SWAP.compose(&Gl2z::new(1, 0, 0, -1));
        assert_eq!(jl.pow(4), IDENTITY);
        assert_ne!(jl.pow(2), IDENTITY);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(IDENTITY.invert().unwrap(), IDENTITY);
        // oriented labels are involutions
        let l = Gl2z::new(1, 1, 0, -1);
        assert_eq!(l.invert().unwrap(), l);
        // det = +1 case
        let m = Gl2z::new(-1, 1, 0, -1);
        assert_eq!(m.invert().unwrap(), Gl2z::new(-1, -1, 0, -1));
        assert!(Gl2z::new(2, 0, 0, 1).invert().is_err());
    }

    #[test]
    fn corner_matrix_table() {
        assert_eq!(corner_matrix(VertexType::V00, false).unwrap().matrix(), Gl2z::new(0, 1, 1, 0));
        assert_eq!(corner_matrix(VertexType::V01, false).unwrap().matrix(), IDENTITY);
        assert_eq!(corner_matrix(VertexType::V02, true).unwrap().matrix(), Gl2z::new(-1, 0, 1, 1));
        assert!(corner_matrix(VertexType::V00, true).is_err());
    }

    #[test]
    fn corner_matrices_are_involutions() {
        for j in CornerMatrix::all() {
            let m = j.matrix();
            assert_eq!(m.compose(&m), IDENTITY, "{:?}", j);
        }
    }

    fn arb_label() -> impl Strategy<Value = LabelMatrix> {
        (prop_oneof![Just(1i64), Just(-1i64)], -50i64..=50, prop_oneof![Just(1i64), Just(-1i64)])
            .prop_map(|(e, k, e2)| LabelMatrix::new(e, k, e2).unwrap())
    }

    proptest! {
        #[test]
        fn oriented_labels_are_involutions(l in arb_label()) {
            prop_assume!(l.is_oriented());
            let m = l.to_gl2z();
            prop_assert_eq!(m.compose(&m), IDENTITY);
        }

        #[test]
        fn label_inverse_round_trip(l in arb_label()) {
            prop_assert_eq!(l.invert().invert(), l);
            prop_assert_eq!(l.to_gl2z().compose(&l.invert().to_gl2z()), IDENTITY);
        }

        #[test]
        fn det_multiplicative(a in arb_label(), b in arb_label()) {
            let p = a.to_gl2z().compose(&b.to_gl2z());
            prop_assert_eq!(p.det(), a.det() * b.det());
            prop_assert_eq!(LabelMatrix::from_gl2z(&p).unwrap(), a.compose(&b));
        }
    }
}
