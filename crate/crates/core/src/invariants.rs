//! Derivations, centroid and inner derivations.
//!
//! Operators are `n × n` matrices in column convention: column `i` holds the
//! coordinates of the image of `e_i`, so `d(e_i) = Σ_j d_ji e_j`. Unknowns
//! are flattened row-major, `d_tk` at index `t * n + k`.

use crate::solver::{self, ExceptionalLocus, Matrix, MatrixSubspace};
use crate::structconst::{StructureConstants, Vector};
use crate::scalar::Scalar;

use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct DerivationResult {
    pub space: MatrixSubspace,
    pub locus: ExceptionalLocus,
}

impl DerivationResult {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug)]
pub struct CentroidResult {
    pub space: MatrixSubspace,
    pub locus: ExceptionalLocus,
}

impl CentroidResult {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug)]
pub struct InnerResult {
    pub space: MatrixSubspace,
    /// `ad_{e_t}` for `t = 0..n`.
    pub generators: Vec<Matrix>,
    pub locus: ExceptionalLocus,
}

impl InnerResult {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Linear system whose solutions are the derivations: for every `(i, j, t)`,
/// `Σ_k (λ^k_ij d_tk − λ^t_kj d_ki − λ^t_ik d_kj) = 0`.
pub fn derivation_system(alg: &StructureConstants) -> Matrix {
    let n = alg.dim();
    let lam = alg.dense();
    let l = |i: usize, j: usize, k: usize| &lam[(i * n + j) * n + k];
    let mut m = Matrix::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for t in 0..n {
                let row = (i * n + j) * n + t;
                for k in 0..n {
                    accumulate(&mut m, row, t * n + k, l(i, j, k), false);
                    accumulate(&mut m, row, k * n + i, l(k, j, t), true);
                    accumulate(&mut m, row, k * n + j, l(i, k, t), true);
                }
            }
        }
    }
    m
}

/// Stacked system for the centroid. For every `(i, j, p)` one row encodes
/// `Σ_k λ^k_ij c_pk = Σ_k c_ki λ^p_kj` and a second row encodes
/// `Σ_k λ^k_ij c_pk = Σ_k c_kj λ^p_ik`.
pub fn centroid_system(alg: &StructureConstants) -> Matrix {
    let n = alg.dim();
    let lam = alg.dense();
    let l = |i: usize, j: usize, k: usize| &lam[(i * n + j) * n + k];
    let mut m = Matrix::zeros(2 * n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let left = 2 * ((i * n + j) * n + p);
                let right = left + 1;
                for k in 0..n {
                    accumulate(&mut m, left, p * n + k, l(i, j, k), false);
                    accumulate(&mut m, left, k * n + i, l(k, j, p), true);
                    accumulate(&mut m, right, p * n + k, l(i, j, k), false);
                    accumulate(&mut m, right, k * n + j, l(i, k, p), true);
                }
            }
        }
    }
    m
}

fn accumulate(m: &mut Matrix, r: usize, c: usize, v: &Scalar, negate: bool) {
    if v.is_zero() {
        return;
    }
    let cur = m.get(r, c);
    let next = if negate { cur - v } else { cur + v };
    m.set(r, c, next);
}

/// Matrix of `ad_w : x ↦ x·w − w·x` in column convention.
pub fn ad_matrix(alg: &StructureConstants, w: &Vector) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let e = Vector::basis(n, i);
        let image = alg
            .multiply(&e, w)
            .and_then(|l| Ok(l.sub(&alg.multiply(w, &e)?)))
            .expect("w has the algebra's dimension");
        for (r, x) in image.0.into_iter().enumerate() {
            m.set(r, i, x);
        }
    }
    m
}

pub fn derivation_algebra(alg: &StructureConstants) -> DerivationResult {
    let n = alg.dim();
    let solved = solver::nullspace_shaped(&derivation_system(alg), n, n);
    DerivationResult {
        space: solved.space,
        locus: solved.locus,
    }
}

pub fn centroid(alg: &StructureConstants) -> CentroidResult {
    let n = alg.dim();
    let solved = solver::nullspace_shaped(&centroid_system(alg), n, n);
    CentroidResult {
        space: solved.space,
        locus: solved.locus,
    }
}

/// Span of `ad_{e_t}` over the basis.
pub fn inner_derivations(alg: &StructureConstants) -> InnerResult {
    let n = alg.dim();
    let generators: Vec<Matrix> = (0..n).map(|t| ad_matrix(alg, &Vector::basis(n, t))).collect();
    let (space, locus) = MatrixSubspace::span(n, n, &generators).expect("generators are n × n");
    InnerResult {
        space,
        generators,
        locus,
    }
}

/// Whether the commutator of every pair of basis derivations is again a
/// derivation in the computed space.
pub fn lie_closure_check(der: &DerivationResult) -> bool {
    der.space.is_closed_under_commutator().unwrap_or(false)
}

/// Whether the identity lies in the space and the space is closed under
/// composition.
pub fn composition_closure_check(cent: &CentroidResult) -> bool {
    let (n, _) = cent.space.ambient();
    cent.space.contains(&Matrix::identity(n)).unwrap_or(false)
        && cent.space.is_closed_under_composition().unwrap_or(false)
}

fn images(alg: &StructureConstants, m: &Matrix) -> Vec<Vector> {
    (0..alg.dim()).map(|i| Vector(m.column(i))).collect()
}

/// Checks `d(e_i e_j) = d(e_i) e_j + e_i d(e_j)` on all basis pairs using
/// only the multiplication.
pub fn is_derivation(alg: &StructureConstants, d: &Matrix) -> bool {
    let n = alg.dim();
    if d.shape() != (n, n) {
        return false;
    }
    let img = images(alg, d);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let e_i = Vector::basis(n, i);
            let e_j = Vector::basis(n, j);
            let lhs = Vector::apply(d, &alg.product_of_basis(i, j));
            let rhs = &alg.multiply(&img[i], &e_j).unwrap() + &alg.multiply(&e_i, &img[j]).unwrap();
            lhs == rhs
        })
    })
}

/// Checks `φ(e_i e_j) = φ(e_i) e_j = e_i φ(e_j)` on all basis pairs using
/// only the multiplication.
pub fn is_centroid_element(alg: &StructureConstants, phi: &Matrix) -> bool {
    let n = alg.dim();
    if phi.shape() != (n, n) {
        return false;
    }
    let img = images(alg, phi);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = Vector::apply(phi, &alg.product_of_basis(i, j));
            let mid = alg.multiply(&img[i], &Vector::basis(n, j)).unwrap();
            let rhs = alg.multiply(&Vector::basis(n, i), &img[j]).unwrap();
            lhs == mid && mid == rhs
        })
    })
}
