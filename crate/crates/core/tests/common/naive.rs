//! Naive elimination, written independently of the main solver: bottom-most
//! pivot choice, row echelon form only, back-substitution, and a separate
//! reduction of the solution vectors to canonical form.

#![allow(clippy::needless_range_loop)]

use nilalg_core::solver::{self, Matrix};
use nilalg_core::{GaussianRational, Scalar};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type G = GaussianRational;

pub fn random_entry(rng: &mut ChaCha8Rng, density: f64) -> G {
    if !rng.gen_bool(density) {
        return G::zero();
    }
    let re = G::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
    if rng.gen_bool(0.3) {
        let im = G::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        &re + &(&im * &G::i())
    } else {
        re
    }
}

/// Random matrix, sometimes forced to low rank by building it as a product.
pub fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<G>> {
    let rows = rng.gen_range(1..=8);
    let cols = rng.gen_range(1..=8);
    let density = rng.gen_range(0.2..=1.0);
    if rng.gen_bool(0.4) {
        let k = rng.gen_range(1..=rows.min(cols));
        let left: Vec<Vec<G>> = (0..rows).map(|_| (0..k).map(|_| random_entry(rng, 1.0)).collect()).collect();
        let right: Vec<Vec<G>> = (0..k).map(|_| (0..cols).map(|_| random_entry(rng, density)).collect()).collect();
        (0..rows)
            .map(|r| {
                (0..cols)
                    .map(|c| (0..k).fold(G::zero(), |acc, t| &acc + &(&left[r][t] * &right[t][c])))
                    .collect()
            })
            .collect()
    } else {
        (0..rows).map(|_| (0..cols).map(|_| random_entry(rng, density)).collect()).collect()
    }
}

/// Row echelon form choosing the last row with a nonzero entry as pivot.
/// Returns the echelon rows and their pivot columns.
pub fn echelon(mut m: Vec<Vec<G>>, cols: usize) -> (Vec<Vec<G>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(p) = (top..m.len()).rev().find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        for r in top + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[top][c];
            for k in c..cols {
                let delta = &f * &m[top][k];
                m[r][k] = &m[r][k] - &delta;
            }
        }
        pivots.push(c);
        top += 1;
    }
    m.truncate(top);
    (m, pivots)
}

pub fn naive_nullspace(m: &[Vec<G>], cols: usize) -> Vec<Vec<G>> {
    let (e, pivots) = echelon(m.to_vec(), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x = vec![G::zero(); cols];
        x[f] = G::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let s = (pc + 1..cols).fold(G::zero(), |acc, k| &acc + &(&e[r][k] * &x[k]));
            x[pc] = -(&s / &e[r][pc]);
        }
        out.push(x);
    }
    canonical(out, cols)
}

/// Reduced echelon form of a set of row vectors, zero rows dropped.
pub fn canonical(vectors: Vec<Vec<G>>, cols: usize) -> Vec<Vec<G>> {
    let (mut e, pivots) = echelon(vectors, cols);
    for (r, &pc) in pivots.iter().enumerate() {
        let inv = e[r][pc].inv().unwrap();
        for x in e[r].iter_mut() {
            *x = &*x * &inv;
        }
        for other in 0..e.len() {
            if other == r || e[other][pc].is_zero() {
                continue;
            }
            let f = e[other][pc].clone();
            for k in 0..cols {
                let delta = &f * &e[r][k];
                e[other][k] = &e[other][k] - &delta;
            }
        }
    }
    e
}

pub fn to_matrix(m: &[Vec<G>], cols: usize) -> Matrix {
    let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().cloned().map(Scalar::constant).collect()).collect();
    let mut out = Matrix::zeros(rows.len(), cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    out
}

pub fn main_nullspace(m: &Matrix) -> Vec<Vec<G>> {
    solver::nullspace(m)
        .space
        .basis()
        .iter()
        .map(|b| b.flat().iter().map(|s| s.as_constant().unwrap()).collect())
        .collect()
}
