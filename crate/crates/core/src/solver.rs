//! Exact dense linear algebra over [`Scalar`].
//!
//! The parameter `a` is treated as transcendental: a pivot is usable iff it
//! is not identically zero. Every pivot's numerator and denominator are
//! recorded in an [`ExceptionalLocus`], which over-approximates the finite
//! set of parameter values where a computed rank may drop.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{GaussianRational, Poly, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Dense row-major matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Panics unless `data.len() == rows * cols`.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data has wrong length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries.
    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Scalar::is_constant)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, SolverError> {
        if self.cols != rhs.rows {
            return Err(SolverError::ShapeMismatch {
                expected: (self.cols, rhs.cols),
                found: rhs.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let x = self.get(r, k);
                let y = rhs.get(k, c);
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            acc
        }))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, SolverError> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, SolverError> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `XY - YX` for square matrices of equal size.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Matrix, SolverError> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Substitutes `a := t` in every entry.
    pub fn specialize(&self, t: &GaussianRational) -> Result<Matrix, ScalarError> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| x.specialize(t))
                .collect::<Result<_, _>>()?,
        })
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<(), SolverError> {
        if self.shape() == rhs.shape() {
            Ok(())
        } else {
            Err(SolverError::ShapeMismatch {
                expected: self.shape(),
                found: rhs.shape(),
            })
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

/// Polynomials in `a` whose roots are parameter values where a generic
/// rank may change.
///
/// Members are monic, square-free, nonconstant and pairwise coprime.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExceptionalLocus {
    polys: BTreeSet<Poly>,
    solved_roots: BTreeSet<GaussianRational>,
}

impl ExceptionalLocus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.polys.iter()
    }

    pub fn solved_roots(&self) -> impl Iterator<Item = &GaussianRational> {
        self.solved_roots.iter()
    }

    /// Roots of quadratic members outside ℚ(i), in radical form.
    pub fn radical_roots(&self) -> Vec<String> {
        self.polys.iter().filter_map(Poly::radical_roots).flatten().collect()
    }

    /// Members whose roots are neither in ℚ(i) nor quadratic radicals.
    pub fn unsolved(&self) -> impl Iterator<Item = &Poly> {
        self.polys
            .iter()
            .filter(|p| p.small_degree_roots().is_none() && p.radical_roots().is_none())
    }

    pub fn max_degree(&self) -> usize {
        self.polys.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// True when some member vanishes at `t`.
    pub fn contains_root(&self, t: &GaussianRational) -> bool {
        self.polys.iter().any(|p| p.eval(t).is_zero())
    }

    pub fn insert_scalar(&mut self, s: &Scalar) {
        self.insert_poly(s.numer());
        self.insert_poly(s.denom());
    }

    pub fn insert_poly(&mut self, p: &Poly) {
        if p.is_constant() {
            return;
        }
        let mut work = vec![p.squarefree_part()];
        while let Some(p) = work.pop() {
            if p.is_constant() || self.polys.contains(&p) {
                continue;
            }
            let shared = self.polys.iter().find_map(|q| {
                let g = p.gcd(q);
                (!g.is_constant()).then(|| (q.clone(), g))
            });
            match shared {
                None => {
                    if let Some(roots) = p.small_degree_roots() {
                        self.solved_roots.extend(roots);
                    }
                    self.polys.insert(p);
                }
                Some((q, g)) => {
                    self.polys.remove(&q);
                    work.push(q.exact_div(&g).monic());
                    work.push(p.exact_div(&g).monic());
                    work.push(g);
                }
            }
        }
        self.solved_roots = self
            .polys
            .iter()
            .filter_map(Poly::small_degree_roots)
            .flatten()
            .collect();
    }

    pub fn merge(&mut self, other: &ExceptionalLocus) {
        for p in &other.polys {
            self.insert_poly(p);
        }
    }
}

/// Reduced row-echelon form with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub locus: ExceptionalLocus,
}

/// Gauss–Jordan elimination. The pivot for each column is the topmost
/// remaining row whose entry is not identically zero.
pub fn rref(m: &Matrix) -> Rref {
    let (rows, cols) = m.shape();
    let mut grid: Vec<Vec<Scalar>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut locus = ExceptionalLocus::new();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !grid[k][c].is_zero()) else {
            continue;
        };
        grid.swap(r, p);
        let pivot = grid[r][c].clone();
        locus.insert_scalar(&pivot);
        if !pivot.is_one() {
            let inv = pivot.inv().expect("pivot is nonzero");
            for x in grid[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = grid[r].clone();
        for (k, row) in grid.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Rref {
        matrix: Matrix::from_rows(grid).reshape_empty(rows, cols),
        rank: r,
        pivot_cols,
        locus,
    }
}

impl Matrix {
    // from_rows loses the column count of a matrix with no rows
    fn reshape_empty(mut self, rows: usize, cols: usize) -> Self {
        if rows == 0 {
            self.cols = cols;
        }
        self
    }
}

/// A subspace of `rows × cols` matrices, stored as the reduced-echelon basis
/// of the row-major flattenings. Equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSubspace {
    rows: usize,
    cols: usize,
    basis: Vec<Matrix>,
    pivots: Vec<usize>,
}

impl MatrixSubspace {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All `rows × cols` matrices.
    pub fn full(rows: usize, cols: usize) -> Self {
        let n = rows * cols;
        let basis = (0..n)
            .map(|k| {
                let mut m = Matrix::zeros(rows, cols);
                m.set(k / cols, k % cols, Scalar::one());
                m
            })
            .collect();
        Self {
            rows,
            cols,
            basis,
            pivots: (0..n).collect(),
        }
    }

    /// Canonical span of `generators`.
    pub fn span<'m>(
        rows: usize,
        cols: usize,
        generators: impl IntoIterator<Item = &'m Matrix>,
    ) -> Result<(Self, ExceptionalLocus), SolverError> {
        let mut flat = Vec::new();
        for g in generators {
            if g.shape() != (rows, cols) {
                return Err(SolverError::ShapeMismatch {
                    expected: (rows, cols),
                    found: g.shape(),
                });
            }
            flat.push(g.flat().to_vec());
        }
        Ok(Self::span_flat(rows, cols, flat))
    }

    /// Canonical span of row-major vectors of length `rows * cols`.
    pub fn span_flat(rows: usize, cols: usize, vectors: Vec<Vec<Scalar>>) -> (Self, ExceptionalLocus) {
        if vectors.is_empty() {
            return (Self::zero(rows, cols), ExceptionalLocus::new());
        }
        let reduced = rref(&Matrix::from_rows(vectors));
        let basis = (0..reduced.rank)
            .map(|r| Matrix::from_flat(rows, cols, reduced.matrix.row(r).to_vec()))
            .collect();
        (
            Self {
                rows,
                cols,
                basis,
                pivots: reduced.pivot_cols,
            },
            reduced.locus,
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Flat index of each basis element's leading 1.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `m` against the echelon basis and tests the residue.
    pub fn contains(&self, m: &Matrix) -> Result<bool, SolverError> {
        if m.shape() != (self.rows, self.cols) {
            return Err(SolverError::ShapeMismatch {
                expected: (self.rows, self.cols),
                found: m.shape(),
            });
        }
        let mut v = m.flat().to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let coef = v[p].clone();
            for (x, y) in v.iter_mut().zip(b.flat()) {
                if !y.is_zero() {
                    *x = &*x - &(&coef * y);
                }
            }
        }
        Ok(v.iter().all(Zero::is_zero))
    }

    pub fn contains_subspace(&self, other: &MatrixSubspace) -> Result<bool, SolverError> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when `XY - YX` stays in the space for every pair of basis
    /// elements. Requires square ambient matrices.
    pub fn is_closed_under_commutator(&self) -> Result<bool, SolverError> {
        for (k, x) in self.basis.iter().enumerate() {
            for y in &self.basis[k + 1..] {
                if !self.contains(&x.commutator(y)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True when `XY` stays in the space for every ordered pair of basis
    /// elements. Requires square ambient matrices.
    pub fn is_closed_under_composition(&self) -> Result<bool, SolverError> {
        for x in &self.basis {
            for y in &self.basis {
                if !self.contains(&x.mul(y)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `membership(S, M)`: whether `M` lies in the span of `S`.
pub fn membership(space: &MatrixSubspace, m: &Matrix) -> Result<bool, SolverError> {
    space.contains(m)
}

/// A solved homogeneous system.
#[derive(Clone, Debug)]
pub struct Solved {
    pub space: MatrixSubspace,
    pub locus: ExceptionalLocus,
}

/// Canonical basis of `{ v : Mv = 0 }` as `cols × 1` column vectors.
pub fn nullspace(m: &Matrix) -> Solved {
    nullspace_shaped(m, m.cols(), 1)
}

/// Nullspace of `m` with each solution vector reshaped (row-major) into a
/// `rows × cols` matrix. Panics unless `rows * cols == m.cols()`.
pub fn nullspace_shaped(m: &Matrix, rows: usize, cols: usize) -> Solved {
    assert_eq!(rows * cols, m.cols(), "unknown count does not match shape");
    let reduced = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &c in &reduced.pivot_cols {
        is_pivot[c] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (r, &pc) in reduced.pivot_cols.iter().enumerate() {
                v[pc] = -reduced.matrix.get(r, f);
            }
            v
        })
        .collect();
    let (space, canon_locus) = MatrixSubspace::span_flat(rows, cols, vectors);
    let mut locus = reduced.locus;
    locus.merge(&canon_locus);
    Solved { space, locus }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Nullspace dimension of `m` after substituting `a := t`, computed over ℚ(i).
pub fn specialize_dim(m: &Matrix, t: &GaussianRational) -> Result<usize, SolverError> {
    let s = m.specialize(t)?;
    Ok(m.cols() - rank(&s))
}
