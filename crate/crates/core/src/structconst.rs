//! Algebras presented by structure constants `e_i · e_j = Σ_k λ^k_ij e_k`.
//!
//! Indices are 0-based in the API and 1-based in text.
//!
//! File grammar:
//!
//! ```text
//! file    := header line*
//! header  := "dim" INT ["param" "a"] ["name" STRING]
//! line    := "e" INT "*" "e" INT "=" sum
//! sum     := term (("+"|"-") term)*
//! term    := [scalar] "e" INT
//! ```
//!
//! `#` starts a comment. Products that are not listed are zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index};

use num_traits::{One, Zero};

use crate::scalar::{GaussianRational, Scalar, ScalarError};
use crate::solver::{self, Matrix, Solved};
use crate::text::{lex_line, Cursor, ParseError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructError {
    #[error("dimension mismatch: algebra has dimension {expected}, vector has length {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coordinates of an algebra element in the basis `e_1 … e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zero(n: usize) -> Self {
        Self(vec![Scalar::zero(); n])
    }

    /// The basis element `e_{k+1}`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[k] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    pub fn sub(&self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }

    /// Image under a matrix in column convention.
    pub fn apply(m: &Matrix, v: &Vector) -> Vector {
        Vector(
            (0..m.rows())
                .map(|r| {
                    m.row(r)
                        .iter()
                        .zip(&v.0)
                        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                        .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
                })
                .collect(),
        )
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, k: usize) -> &Scalar {
        &self.0[k]
    }
}

impl fmt::Display for Vector {
    /// Written as a combination of basis elements, e.g. `e2 - 1/2*e5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.0.iter().enumerate())
    }
}

fn write_combination<'s>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, &'s Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = match c.as_constant() {
            Some(g) if g.im.is_zero() && g.re < num_traits::zero() => (true, -c),
            _ => (false, c.clone()),
        };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
            (true, false) => {}
        }
        if !mag.is_one() {
            f.write_str(&mag.factor_string())?;
            f.write_str(" ")?;
        }
        write!(f, "e{}", k + 1)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// A violation of `(e_i e_j) e_k = e_i (e_j e_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatorViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub associator: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    /// `(i, j) -> {k -> λ^k_ij}`; no stored entry is zero.
    table: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
    name: Option<String>,
    declares_param: bool,
}

impl StructureConstants {
    /// The algebra with zero multiplication.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            table: BTreeMap::new(),
            name: None,
            declares_param: false,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Sets `λ^k_ij`; setting zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) -> Result<(), StructError> {
        for index in [i, j, k] {
            if index >= self.dim {
                return Err(StructError::IndexOutOfRange {
                    index,
                    dim: self.dim,
                });
            }
        }
        if !value.is_constant() {
            self.declares_param = true;
        }
        let row = self.table.entry((i, j)).or_default();
        if value.is_zero() {
            row.remove(&k);
            if row.is_empty() {
                self.table.remove(&(i, j));
            }
        } else {
            row.insert(k, value);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// True iff some structure constant depends on the parameter.
    pub fn is_parametric(&self) -> bool {
        self.entries().any(|(_, _, _, v)| !v.is_constant())
    }

    /// `λ^k_ij`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table
            .get(&(i, j))
            .and_then(|row| row.get(&k))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero entries as `(i, j, k, λ^k_ij)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.table
            .iter()
            .flat_map(|(&(i, j), row)| row.iter().map(move |(&k, v)| (i, j, k, v)))
    }

    /// Dense `n³` copy indexed `[(i * n + j) * n + k]`.
    pub fn dense(&self) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n * n * n];
        for (i, j, k, v) in self.entries() {
            out[(i * n + j) * n + k] = v.clone();
        }
        out
    }

    /// `e_i · e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vector {
        let mut v = Vector::zero(self.dim);
        if let Some(row) = self.table.get(&(i, j)) {
            for (&k, c) in row {
                v.0[k] = c.clone();
            }
        }
        v
    }

    /// `(x · y)_k = Σ_ij x_i y_j λ^k_ij`.
    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector, StructError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(StructError::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let mut out = Vector::zero(self.dim);
        for (&(i, j), row) in &self.table {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for (&k, c) in row {
                out.0[k] = &out.0[k] + &(&xy * c);
            }
        }
        Ok(out)
    }

    /// Every basis triple whose associator is nonzero. For parametric
    /// tables the associator must vanish identically in `a`.
    pub fn check_associative(&self) -> Vec<AssociatorViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j);
                for k in 0..n {
                    let jk = self.product_of_basis(j, k);
                    let left = self.multiply(&ij, &Vector::basis(n, k)).expect("dims agree");
                    let right = self.multiply(&Vector::basis(n, i), &jk).expect("dims agree");
                    let associator = left.sub(&right);
                    if !associator.is_zero() {
                        out.push(AssociatorViolation { i, j, k, associator });
                    }
                }
            }
        }
        out
    }

    /// Least `k` with `A^k = 0`, or `None` when the power chain stabilizes
    /// at a nonzero subspace.
    ///
    /// `A^{m+1}` is spanned by products of basis elements of `A` with basis
    /// elements of `A^m` on either side.
    pub fn nilindex(&self) -> Option<usize> {
        let n = self.dim;
        if n == 0 {
            return Some(1);
        }
        let full: Vec<Vector> = (0..n).map(|k| Vector::basis(n, k)).collect();
        let mut current = full.clone();
        let mut k = 1;
        loop {
            let mut gens = Vec::new();
            for x in &full {
                for y in &current {
                    gens.push(self.multiply(x, y).expect("dims agree").0);
                    gens.push(self.multiply(y, x).expect("dims agree").0);
                }
            }
            let (next, _) = solver::MatrixSubspace::span_flat(n, 1, gens);
            k += 1;
            if next.dim() == 0 {
                return Some(k);
            }
            if next.dim() == current.len() {
                return None;
            }
            current = next.basis().iter().map(|m| Vector(m.flat().to_vec())).collect();
        }
    }

    /// Elements commuting with every basis vector, as an `n × 1` subspace.
    pub fn center(&self) -> Solved {
        let n = self.dim;
        // row (j, k): Σ_i x_i (λ^k_ij − λ^k_ji) = 0
        let m = Matrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            &self.get(i, j, k) - &self.get(j, i, k)
        });
        solver::nullspace(&m)
    }

    /// Substitutes `a := t` in every structure constant.
    pub fn specialize(&self, t: &GaussianRational) -> Result<Self, ScalarError> {
        let mut out = Self::zero(self.dim);
        out.name = self.name.clone();
        for (i, j, k, v) in self.entries() {
            out.set(i, j, k, v.specialize(t)?).expect("indices already validated");
        }
        Ok(out)
    }

    /// Multiplies every structure constant by `s`.
    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.dim);
        out.name = self.name.clone();
        out.declares_param = self.declares_param;
        for (i, j, k, v) in self.entries() {
            out.set(i, j, k, v * s).expect("indices already validated");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut algebra: Option<StructureConstants> = None;
        let mut defined: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let toks = lex_line(raw, line_no)?;
            if toks.is_empty() {
                continue;
            }
            let end = raw.chars().count() + 1;
            match algebra.as_mut() {
                None => algebra = Some(parse_header(&toks, line_no, end)?),
                Some(alg) => {
                    let mut cur = Cursor::new(&toks, line_no, end, alg.declares_param);
                    let (i, j) = parse_lhs(&mut cur, alg.dim)?;
                    if let Some(prev) = defined.insert((i, j), line_no) {
                        return Err(ParseError::new(
                            line_no,
                            1,
                            format!("duplicate definition of e{}*e{} (first defined on line {prev})", i + 1, j + 1),
                        ));
                    }
                    for (k, v) in parse_sum(&mut cur, alg.dim)? {
                        alg.set(i, j, k, v).expect("indices checked by parser");
                    }
                }
            }
        }
        algebra.ok_or_else(|| ParseError::new(1, 1, "missing `dim` header"))
    }
}

fn parse_header(toks: &[crate::text::Token], line: usize, end: usize) -> Result<StructureConstants, ParseError> {
    let mut cur = Cursor::new(toks, line, end, false);
    match cur.peek() {
        Some(Tok::Word(w)) if w == "dim" => {
            cur.next();
        }
        _ => return Err(cur.unexpected("`dim` header")),
    }
    let column = cur.column();
    let dim = match cur.next() {
        Some(Tok::Int(n)) => num_traits::ToPrimitive::to_usize(n)
            .filter(|&d| (1..=64).contains(&d))
            .ok_or_else(|| ParseError::new(line, column, "dimension must be between 1 and 64"))?,
        _ => return Err(ParseError::new(line, column, "expected dimension")),
    };
    let mut alg = StructureConstants::zero(dim);
    while !cur.at_end() {
        let column = cur.column();
        match cur.next() {
            Some(Tok::Word(w)) if w == "param" => {
                let column = cur.column();
                match cur.next() {
                    Some(Tok::Param) if !alg.declares_param => alg.declares_param = true,
                    Some(Tok::Param) => {
                        return Err(ParseError::new(line, column, "parameter declared twice"))
                    }
                    _ => {
                        return Err(ParseError::new(
                            line,
                            column,
                            "only the single parameter `a` is supported",
                        ))
                    }
                }
            }
            Some(Tok::Word(w)) if w == "name" => {
                let column = cur.column();
                match cur.next() {
                    Some(Tok::Str(s)) if alg.name.is_none() => alg.name = Some(s.clone()),
                    Some(Tok::Str(_)) => return Err(ParseError::new(line, column, "name given twice")),
                    _ => return Err(ParseError::new(line, column, "expected quoted name")),
                }
            }
            _ => return Err(ParseError::new(line, column, "expected `param a` or `name \"...\"`")),
        }
    }
    Ok(alg)
}

fn basis_index(cur: &mut Cursor<'_>, dim: usize) -> Result<usize, ParseError> {
    let column = cur.column();
    match cur.next() {
        Some(Tok::Basis(k)) if (1..=dim).contains(k) => Ok(k - 1),
        Some(Tok::Basis(k)) => Err(ParseError::new(
            cur.line(),
            column,
            format!("basis index e{k} out of range 1..{dim}"),
        )),
        _ => Err(ParseError::new(cur.line(), column, "expected basis element `e<k>`")),
    }
}

fn parse_lhs(cur: &mut Cursor<'_>, dim: usize) -> Result<(usize, usize), ParseError> {
    let i = basis_index(cur, dim)?;
    cur.expect(&Tok::Star, "`*`")?;
    let j = basis_index(cur, dim)?;
    cur.expect(&Tok::Eq, "`=`")?;
    Ok((i, j))
}

fn parse_sum(cur: &mut Cursor<'_>, dim: usize) -> Result<BTreeMap<usize, Scalar>, ParseError> {
    let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
    let mut negate = match cur.peek() {
        Some(Tok::Minus) => {
            cur.next();
            true
        }
        Some(Tok::Plus) => {
            cur.next();
            false
        }
        _ => false,
    };
    loop {
        let (k, mut c) = parse_term(cur, dim)?;
        if negate {
            c = -c;
        }
        let slot = out.entry(k).or_default();
        *slot = &*slot + &c;
        match cur.peek() {
            Some(Tok::Plus) => negate = false,
            Some(Tok::Minus) => negate = true,
            None => break,
            Some(_) => return Err(cur.unexpected("`+`, `-` or end of line")),
        }
        cur.next();
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>, dim: usize) -> Result<(usize, Scalar), ParseError> {
    if matches!(cur.peek(), Some(Tok::Basis(_))) {
        return Ok((basis_index(cur, dim)?, Scalar::one()));
    }
    let mut coef = cur.factor()?;
    cur.term_tail(&mut coef)?;
    if cur.peek() == Some(&Tok::Star) {
        cur.next();
    }
    Ok((basis_index(cur, dim)?, coef))
}

impl fmt::Display for StructureConstants {
    /// Writes the algebra in the file format; the output parses back to an
    /// identical value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {}", self.dim)?;
        if self.declares_param {
            f.write_str(" param a")?;
        }
        if let Some(name) = &self.name {
            write!(f, " name \"{name}\"")?;
        }
        writeln!(f)?;
        for (&(i, j), row) in &self.table {
            write!(f, "e{}*e{} = ", i + 1, j + 1)?;
            write_combination(f, row.iter().map(|(&k, v)| (k, v)))?;
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const A1: &str = "dim 5 name \"A1\"\n\
        e1*e1 = e2\ne1*e2 = e4\ne1*e3 = e4\ne2*e1 = e4\ne3*e3 = e4\n";

    fn g(re: i64, im: i64) -> Scalar {
        Scalar::from_integer(re) + Scalar::from_integer(im) * Scalar::i()
    }

    fn e(n: usize, k: usize) -> Vector {
        Vector::basis(n, k)
    }

    #[test]
    fn parse_minimal() {
        let alg = StructureConstants::parse("dim 2\ne1*e1 = e2").unwrap();
        assert_eq!(alg.get(0, 0, 1), Scalar::one());
        assert_eq!(alg.entries().count(), 1);
        assert!(!alg.is_parametric());
    }

    #[test]
    fn parse_gaussian_coefficients() {
        let alg = StructureConstants::parse("dim 5\ne4*e1 = (1-i) e2 + i e5").unwrap();
        assert_eq!(alg.get(3, 0, 1), g(1, -1));
        assert_eq!(alg.get(3, 0, 4), Scalar::i());
        let alg = StructureConstants::parse("dim 5\ne4*e1 = (1-i)e2+ie5").unwrap();
        assert_eq!(alg.get(3, 0, 4), Scalar::i());
    }

    #[test]
    fn parse_parametric_coefficients() {
        let alg = StructureConstants::parse("dim 5 param a\ne4*e4 = -a e2 + (1+a) e5").unwrap();
        assert_eq!(alg.get(3, 3, 1), -Scalar::param());
        assert_eq!(alg.get(3, 3, 4), Scalar::one() + Scalar::param());
        assert!(alg.is_parametric());
    }

    #[test]
    fn parse_errors() {
        let err = StructureConstants::parse("dim 2\ne1*e3 = e2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
        let err = StructureConstants::parse("dim 2\ne1*e1 = e2\ne1*e1 = e2").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("duplicate"));
        let err = StructureConstants::parse("dim 2\ne1*e1 = a e2").unwrap_err();
        assert!(err.message.contains("param a"));
        let err = StructureConstants::parse("dim 2 param b\n").unwrap_err();
        assert!(err.message.contains("single parameter"));
        assert!(StructureConstants::parse("# only a comment\n").is_err());
        let err = StructureConstants::parse("dim 2\ne1*e1 = e2 e1").unwrap_err();
        assert_eq!(err.column, 12);
        assert!(StructureConstants::parse("dim 2\ne1*e1 = ?").is_err());
    }

    #[test]
    fn parse_combines_and_drops_zero_terms() {
        let alg = StructureConstants::parse("dim 3\ne1*e1 = e2 + e2 - 2e3 + 2*e3 # c\n\n").unwrap();
        assert_eq!(alg.get(0, 0, 1), Scalar::from_integer(2));
        assert_eq!(alg.entries().count(), 1);
    }

    #[test]
    fn multiply_examples() {
        let a1 = StructureConstants::parse(A1).unwrap();
        assert_eq!(a1.multiply(&e(5, 0), &e(5, 0)).unwrap(), e(5, 1));
        assert!(a1.multiply(&Vector::zero(5), &e(5, 3)).unwrap().is_zero());
        // (e1 + e3)·e3 = e1e3 + e3e3 = 2 e4
        let x = &e(5, 0) + &e(5, 2);
        assert_eq!(a1.multiply(&x, &e(5, 2)).unwrap(), e(5, 3).scale(&Scalar::from_integer(2)));
        assert_eq!(
            a1.multiply(&e(4, 0), &e(5, 0)),
            Err(StructError::DimensionMismatch { expected: 5, found: 4 })
        );
    }

    #[test]
    fn associativity() {
        let a1 = StructureConstants::parse(A1).unwrap();
        assert!(a1.check_associative().is_empty());
        let bad = StructureConstants::parse("dim 3\ne1*e1 = e2\ne2*e1 = e3").unwrap();
        let v = bad.check_associative();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].i, v[0].j, v[0].k), (0, 0, 0));
        assert_eq!(v[0].associator, e(3, 2));
        assert!(StructureConstants::zero(4).check_associative().is_empty());
    }

    #[test]
    fn nilindex_examples() {
        assert_eq!(StructureConstants::zero(3).nilindex(), Some(2));
        assert_eq!(StructureConstants::parse(A1).unwrap().nilindex(), Some(4));
        let idem = StructureConstants::parse("dim 1\ne1*e1 = e1").unwrap();
        assert_eq!(idem.nilindex(), None);
    }

    #[test]
    fn center_examples() {
        let a1 = StructureConstants::parse(A1).unwrap();
        let z = a1.center().space;
        let expected: Vec<Matrix> = [1, 3, 4]
            .iter()
            .map(|&k| Matrix::from_flat(5, 1, e(5, k).0))
            .collect();
        assert_eq!(z.basis(), expected.as_slice());
        assert_eq!(StructureConstants::zero(5).center().space.dim(), 5);
    }

    #[test]
    fn display_round_trip() {
        let text = "dim 5 param a name \"X\"\ne4*e1 = (1-a) e2 + a e5\ne4*e2 = (1-a^2) e3\ne4*e5 = -a^2 e3\ne2*e2 = (1/2-i) e1 - 3/4 e3\n";
        let alg = StructureConstants::parse(text).unwrap();
        let printed = alg.to_string();
        assert_eq!(StructureConstants::parse(&printed).unwrap(), alg, "{printed}");
    }

    #[test]
    fn vector_display() {
        let v = Vector(vec![Scalar::zero(), Scalar::one(), Scalar::from_ratio(-1, 2)]);
        assert_eq!(v.to_string(), "e2 - 1/2 e3");
        assert_eq!(Vector::zero(2).to_string(), "0");
    }
}
