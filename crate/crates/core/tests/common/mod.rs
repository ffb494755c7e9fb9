#![allow(dead_code)]

pub mod naive;
pub mod scalars;

use nilalg_core::solver::Matrix;
use nilalg_core::{Scalar, StructureConstants, Vector};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

/// Strictly upper triangular `m × m` matrices, basis `E_rc` for `r < c`.
pub fn strictly_upper(m: usize) -> StructureConstants {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|r| (r + 1..m).map(move |c| (r, c))).collect();
    let mut alg = StructureConstants::zero(pairs.len()).with_name(format!("N{m}"));
    for (x, &(r, c)) in pairs.iter().enumerate() {
        for (y, &(c2, d)) in pairs.iter().enumerate() {
            if c == c2 {
                let z = pairs.iter().position(|&p| p == (r, d)).unwrap();
                alg.set(x, y, z, Scalar::one()).unwrap();
            }
        }
    }
    alg
}

/// `x k[x] / x^{m+1}`: `e_i e_j = e_{i+j}` (1-based) while `i + j ≤ m`.
pub fn truncated_powers(m: usize) -> StructureConstants {
    let mut alg = StructureConstants::zero(m);
    for i in 0..m {
        for j in 0..m {
            if i + j + 1 < m {
                alg.set(i, j, i + j + 1, Scalar::one()).unwrap();
            }
        }
    }
    alg
}

fn unipotent_inverse(t: &Matrix) -> Matrix {
    let n = t.rows();
    let nil = t.sub(&Matrix::identity(n)).unwrap();
    let neg = nil.scale(&int(-1));
    let mut acc = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for _ in 1..n {
        power = power.mul(&neg).unwrap();
        acc = acc.add(&power).unwrap();
    }
    acc
}

/// Invertible `P = L U` with unipotent integer triangular factors, and its
/// inverse.
pub fn change_of_basis(n: usize, lower: &[i64], upper: &[i64]) -> (Matrix, Matrix) {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    let mut li = lower.iter().cycle();
    let mut ui = upper.iter().cycle();
    for r in 0..n {
        for c in 0..r {
            l.set(r, c, int(*li.next().unwrap()));
            u.set(c, r, int(*ui.next().unwrap()));
        }
    }
    let p = l.mul(&u).unwrap();
    let p_inv = unipotent_inverse(&u).mul(&unipotent_inverse(&l)).unwrap();
    assert_eq!(p.mul(&p_inv).unwrap(), Matrix::identity(n));
    (p, p_inv)
}

/// Structure constants in the basis `f_a = Σ_k P_ka e_k`.
pub fn transform(alg: &StructureConstants, p: &Matrix, p_inv: &Matrix) -> StructureConstants {
    let n = alg.dim();
    let f: Vec<Vector> = (0..n).map(|a| Vector(p.column(a))).collect();
    let mut out = StructureConstants::zero(n);
    for a in 0..n {
        for b in 0..n {
            let prod = alg.multiply(&f[a], &f[b]).unwrap();
            let coords = Vector::apply(p_inv, &prod);
            for (c, v) in coords.0.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(a, b, c, v).unwrap();
                }
            }
        }
    }
    out
}

pub fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(p, q, im)| {
        &Scalar::from_ratio(p, q) + &(&Scalar::from_integer(im) * &Scalar::i())
    })
}

/// Random tables of dimension 1 to 4. With `allow_param` the dimension is
/// at most 3 and up to two entries also get a term linear in the
/// parameter, which keeps the systems as sparse in `a` as the catalog's.
pub fn random_table(allow_param: bool) -> impl Strategy<Value = StructureConstants> {
    let max_dim = if allow_param { 3 } else { 4 };
    (1usize..=max_dim).prop_flat_map(move |n| {
        let entry = (small_scalar(), any::<bool>()).prop_map(|(c, keep)| if keep { c } else { Scalar::zero() });
        let max_param = if allow_param { 2 } else { 0 };
        let params = prop::collection::vec((0..n * n * n, small_scalar()), 0..=max_param);
        (prop::collection::vec(entry, n * n * n), params).prop_map(move |(vals, params)| {
            let mut alg = StructureConstants::zero(n);
            let at = |idx: usize| (idx / (n * n), (idx / n) % n, idx % n);
            for (idx, v) in vals.into_iter().enumerate() {
                let (i, j, k) = at(idx);
                alg.set(i, j, k, v).unwrap();
            }
            for (idx, c) in params {
                let (i, j, k) = at(idx);
                let v = &alg.get(i, j, k) + &(&c * &Scalar::param());
                alg.set(i, j, k, v).unwrap();
            }
            alg
        })
    })
}
