//! Reduced F2 (co)homology of a [`Complex2`], the Alexander–Whitney cup
//! product on degree-one classes, and the property (A) test.

use serde::Serialize;
use thiserror::Error;

use crate::complex::Complex2;
use crate::gf2::{self, EchelonBasis, Gf2Matrix, Gf2Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("expected a {expected}-dimensional (co)chain, got dimension {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error(
        "(co)chain has length {found}, but the complex has {expected} simplices in that dimension"
    )]
    WrongLength { expected: usize, found: usize },
}

/// A chain with F2 coefficients indexed by canonical simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub dimension: usize,
    pub coefficients: Gf2Vector,
}

/// A cochain with F2 values indexed by canonical simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainVector {
    pub dimension: usize,
    pub coefficients: Gf2Vector,
}

impl CochainVector {
    pub fn zero(k: &Complex2, dimension: usize) -> Self {
        Self {
            dimension,
            coefficients: Gf2Vector::zeros(k.counts()[dimension]),
        }
    }

    pub fn new(dimension: usize, coefficients: Gf2Vector) -> Self {
        Self {
            dimension,
            coefficients,
        }
    }

    fn check(&self, k: &Complex2, dimension: usize) -> Result<(), HomologyError> {
        if self.dimension != dimension {
            return Err(HomologyError::WrongDimension {
                expected: dimension,
                found: self.dimension,
            });
        }
        let expected = k.counts()[dimension];
        if self.coefficients.len() != expected {
            return Err(HomologyError::WrongLength {
                expected,
                found: self.coefficients.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Betti {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

impl Betti {
    pub fn new(b0: usize, b1: usize, b2: usize) -> Self {
        Self { b0, b1, b2 }
    }

    pub fn as_tuple(self) -> (usize, usize, usize) {
        (self.b0, self.b1, self.b2)
    }
}

#[derive(Clone, Debug)]
pub struct HomologySummary {
    pub betti: Betti,
    /// Representatives of reduced H₀, H₁, H₂.
    pub cycle_bases: [Vec<ChainVector>; 3],
    /// Representatives of reduced H⁰, H¹, H².
    pub cocycle_bases: [Vec<CochainVector>; 3],
}

/// The matrix of ∂ₙ: rows are (n−1)-simplices, columns n-simplices.
pub fn boundary_matrix(k: &Complex2, n: usize) -> Gf2Matrix {
    match n {
        1 => {
            let mut m = Gf2Matrix::zeros(k.num_vertices(), k.num_edges());
            for (j, &[a, b]) in k.edges().iter().enumerate() {
                m.set(a, j, true);
                m.set(b, j, true);
            }
            m
        }
        2 => {
            let mut m = Gf2Matrix::zeros(k.num_edges(), k.num_triangles());
            for (j, &[a, b, c]) in k.triangles().iter().enumerate() {
                for e in [[a, b], [a, c], [b, c]] {
                    m.set(k.edge_index(e).expect("closure"), j, true);
                }
            }
            m
        }
        _ => panic!("boundary_matrix is defined for n = 1, 2 only"),
    }
}

/// Basis of the column space of `m`, chosen greedily among its columns.
fn column_space_basis(m: &Gf2Matrix) -> Vec<Gf2Vector> {
    let mut basis = EchelonBasis::new(m.rows());
    let mut out = Vec::new();
    for j in 0..m.cols() {
        let c = m.column(j);
        if basis.insert(&c).expect("column length") {
            out.push(c);
        }
    }
    out
}

/// Representatives of ker / im: the vectors appended when completing a basis
/// of the image to a basis of the kernel.
fn quotient_representatives(image: &[Gf2Vector], kernel: &[Gf2Vector]) -> Vec<Gf2Vector> {
    gf2::extend_to_basis(image, kernel).expect("image lies in kernel")[image.len()..].to_vec()
}

pub fn homology_summary(k: &Complex2) -> HomologySummary {
    let d1 = boundary_matrix(k, 1);
    let d2 = boundary_matrix(k, 2);
    let (comp, components) = k.component_ids();

    // H₂ = ker ∂₂ since there are no 3-simplices.
    let z2 = gf2::kernel_basis(&d2);
    let z1 = gf2::kernel_basis(&d1);
    let b1_image = column_space_basis(&d2);
    let h1 = quotient_representatives(&b1_image, &z1);

    // reduced H₀: v − v₀ for the first vertex of every later component
    let mut firsts = vec![usize::MAX; components];
    for (v, &c) in comp.iter().enumerate() {
        if firsts[c] == usize::MAX {
            firsts[c] = v;
        }
    }
    let h0: Vec<Gf2Vector> = firsts
        .iter()
        .skip(1)
        .map(|&v| Gf2Vector::from_support(k.num_vertices(), [firsts[0], v]))
        .collect();

    // cohomology: δⁿ⁻¹ = ∂ₙᵀ
    let delta0 = d1.transpose();
    let delta1 = d2.transpose();
    let zc1 = gf2::kernel_basis(&delta1);
    let bc1 = column_space_basis(&delta0);
    let hc1 = quotient_representatives(&bc1, &zc1);
    let hc2 = h2_coordinates(k).representatives;
    let hc0: Vec<Gf2Vector> = (1..components)
        .map(|c| {
            Gf2Vector::from_support(
                k.num_vertices(),
                comp.iter()
                    .enumerate()
                    .filter(|(_, &x)| x == c)
                    .map(|(v, _)| v),
            )
        })
        .collect();

    let chains = |dimension: usize, vs: Vec<Gf2Vector>| {
        vs.into_iter()
            .map(|coefficients| ChainVector {
                dimension,
                coefficients,
            })
            .collect::<Vec<_>>()
    };
    let cochains = |dimension: usize, vs: Vec<Gf2Vector>| {
        vs.into_iter()
            .map(|coefficients| CochainVector {
                dimension,
                coefficients,
            })
            .collect::<Vec<_>>()
    };
    HomologySummary {
        betti: Betti::new(components.saturating_sub(1), h1.len(), z2.len()),
        cycle_bases: [chains(0, h0), chains(1, h1), chains(2, z2)],
        cocycle_bases: [cochains(0, hc0), cochains(1, hc1), cochains(2, hc2)],
    }
}

/// Betti numbers only, by ranks.
pub fn betti_numbers(k: &Complex2) -> Betti {
    let r1 = gf2::rank(&boundary_matrix(k, 1));
    let r2 = gf2::rank(&boundary_matrix(k, 2));
    let components = k.component_ids().1;
    Betti::new(
        components.saturating_sub(1),
        k.num_edges() - r1 - r2,
        k.num_triangles() - r2,
    )
}

/// Coordinates on H² = C² / im δ¹, obtained by completing a basis of im δ¹
/// with unit cochains in triangle order.
pub struct H2Coordinates {
    basis: EchelonBasis,
    image_rank: usize,
    pub representatives: Vec<Gf2Vector>,
}

impl H2Coordinates {
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    /// The class of a 2-cochain in the representative basis.
    pub fn class_of(&self, c: &Gf2Vector) -> Gf2Vector {
        let full = self
            .basis
            .coordinates(c)
            .expect("cochain length")
            .expect("basis spans C²");
        Gf2Vector::from_bits((self.image_rank..full.len()).map(|i| full.get(i)))
    }
}

pub fn h2_coordinates(k: &Complex2) -> H2Coordinates {
    let n = k.num_triangles();
    let delta1 = boundary_matrix(k, 2).transpose();
    let mut basis = EchelonBasis::new(n);
    for j in 0..delta1.cols() {
        basis.insert(&delta1.column(j)).expect("length");
    }
    let image_rank = basis.rank();
    let mut representatives = Vec::new();
    for t in 0..n {
        let e = Gf2Vector::unit(n, t);
        if basis.insert(&e).expect("length") {
            representatives.push(e);
        }
    }
    H2Coordinates {
        basis,
        image_rank,
        representatives,
    }
}

/// Alexander–Whitney cup product of two 1-cochains: on a triangle
/// `[v0 < v1 < v2]` the value is `a(v0 v1) · b(v1 v2)`.
pub fn cup_product(
    k: &Complex2,
    a: &CochainVector,
    b: &CochainVector,
) -> Result<CochainVector, HomologyError> {
    a.check(k, 1)?;
    b.check(k, 1)?;
    let mut out = Gf2Vector::zeros(k.num_triangles());
    for (i, &[v0, v1, v2]) in k.triangles().iter().enumerate() {
        let front = k.edge_index([v0, v1]).expect("closure");
        let back = k.edge_index([v1, v2]).expect("closure");
        if a.coefficients.get(front) && b.coefficients.get(back) {
            out.set(i, true);
        }
    }
    Ok(CochainVector::new(2, out))
}

/// The cup product form on H¹ with values in H² coordinates.
#[derive(Clone, Debug)]
pub struct CupPairing {
    pub b1: usize,
    pub b2: usize,
    /// `values[i][j]` are the H² coordinates of `[αᵢ ∪ αⱼ]`.
    pub values: Vec<Vec<Gf2Vector>>,
}

impl CupPairing {
    /// Matrix of `x ↦ ([x ∪ αⱼ])ⱼ`: rows are (j, H² coordinate), columns are H¹ basis indices.
    fn left_multiplication(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.b1 * self.b2, self.b1);
        for i in 0..self.b1 {
            for j in 0..self.b1 {
                for c in self.values[i][j].ones() {
                    m.set(j * self.b2 + c, i, true);
                }
            }
        }
        m
    }

    /// Basis (in H¹ coordinates) of the left radical `{x : x ∪ β = 0 ∀β}`.
    pub fn radical(&self) -> Vec<Gf2Vector> {
        gf2::kernel_basis(&self.left_multiplication())
    }

    /// `b1 − dim radical`; for scalar-valued forms this is the matrix rank.
    pub fn rank(&self) -> usize {
        gf2::rank(&self.left_multiplication())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Gf2Vector::is_zero)
    }

    /// Scalar matrix of the form when H² is one-dimensional.
    pub fn scalar_matrix(&self) -> Option<Vec<Vec<u8>>> {
        (self.b2 == 1).then(|| {
            self.values
                .iter()
                .map(|row| row.iter().map(|v| u8::from(v.get(0))).collect())
                .collect()
        })
    }
}

pub fn cup_pairing_on_h1(k: &Complex2) -> CupPairing {
    let summary = homology_summary(k);
    cup_pairing_with(k, &summary)
}

pub fn cup_pairing_with(k: &Complex2, summary: &HomologySummary) -> CupPairing {
    let coords = h2_coordinates(k);
    let h1 = &summary.cocycle_bases[1];
    let values = h1
        .iter()
        .map(|a| {
            h1.iter()
                .map(|b| {
                    let c = cup_product(k, a, b).expect("cocycles live on k");
                    coords.class_of(&c.coefficients)
                })
                .collect()
        })
        .collect();
    CupPairing {
        b1: h1.len(),
        b2: coords.dimension(),
        values,
    }
}

#[derive(Clone, Debug)]
pub struct PropertyA {
    pub holds: bool,
    /// A nonzero degree-one class annihilating all of H¹ under cup product.
    pub witness: Option<CochainVector>,
    /// The witness in H¹-basis coordinates.
    pub witness_coordinates: Option<Gf2Vector>,
}

/// Property (A): every nonzero class in H¹ cups nontrivially with some class.
/// Equivalent to the left radical of the cup form being zero.
pub fn has_property_a(k: &Complex2) -> PropertyA {
    let summary = homology_summary(k);
    let pairing = cup_pairing_with(k, &summary);
    let radical = pairing.radical();
    match radical.first() {
        None => PropertyA {
            holds: true,
            witness: None,
            witness_coordinates: None,
        },
        Some(x) => {
            let mut w = Gf2Vector::zeros(k.num_edges());
            for i in x.ones() {
                w.add_assign(&summary.cocycle_bases[1][i].coefficients);
            }
            PropertyA {
                holds: false,
                witness: Some(CochainVector::new(1, w)),
                witness_coordinates: Some(x.clone()),
            }
        }
    }
}

/// The coboundary of a 0-cochain.
pub fn coboundary0(k: &Complex2, c: &Gf2Vector) -> Gf2Vector {
    boundary_matrix(k, 1)
        .transpose()
        .mul_vec(c)
        .expect("0-cochain length")
}

/// Whether a 2-cochain is a coboundary.
pub fn is_coboundary2(k: &Complex2, c: &Gf2Vector) -> bool {
    let delta1 = boundary_matrix(k, 2).transpose();
    gf2::solve(&delta1, c).expect("2-cochain length").is_some()
}
