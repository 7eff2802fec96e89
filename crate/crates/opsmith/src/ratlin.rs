//! Exact rational linear algebra.
//!
//! Matrices are dense, row-major, with arbitrary-precision rational entries.
//! Empty dimensions (0×n, n×0) are legal everywhere; they show up constantly
//! as components of bounded complexes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Scalar of the whole workbench: an arbitrary-precision rational, always
/// stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for small integer rationals.
pub fn rat(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// `p/q` as a rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, RatError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| RatError::BadRational(s.to_string()))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| RatError::BadRational(s.to_string()))?;
    if q.is_zero() {
        return Err(RatError::BadRational(s.to_string()));
    }
    Ok(Rational::new(p, q))
}

/// Renders a rational as `"p"` or `"p/q"` (denominator omitted when 1).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("cannot parse rational: {0:?}")]
    BadRational(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", format_rational(self.at(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, RatError> {
        if entries.len() != rows * cols {
            return Err(RatError::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    /// Builds a matrix from small integer rows; handy in tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| rat(x)));
        }
        Matrix { rows: r, cols: c, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} · {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Kronecker product; the basis of the result is ordered row-major in
    /// the pair of indices, matching the tensor-product basis convention.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.at(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.at(r2, c2);
                        if !b.is_zero() {
                            *out.at_mut(r1 * other.rows + r2, c1 * other.cols + c2) = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    pub fn hstack_all(rows: usize, blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zero(rows, 0);
        for b in blocks {
            out = out.hstack(b);
        }
        out
    }

    pub fn vstack_all(cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zero(0, cols);
        for b in blocks {
            out = out.vstack(b);
        }
        out
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(row_range.len(), col_range.len(), |r, c| {
            self.at(row_range.start + r, col_range.start + c).clone()
        })
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }
}

/// Result of a full Gauss–Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduced {
    pub rref: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Reduced row echelon form with pivot bookkeeping; exact throughout.
pub fn row_reduce(m: &Matrix) -> RowReduced {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        // Prefer a pivot with the largest absolute value only for tie-free
        // determinism we pick the first nonzero entry.
        let pivot_row = (row..a.rows).find(|&r| !a.at(r, col).is_zero());
        let Some(p) = pivot_row else { continue };
        if p != row {
            for c in 0..a.cols {
                let tmp = a.at(p, c).clone();
                *a.at_mut(p, c) = a.at(row, c).clone();
                *a.at_mut(row, c) = tmp;
            }
        }
        let inv = a.at(row, col).recip();
        for c in col..a.cols {
            let v = a.at(row, c) * &inv;
            *a.at_mut(row, c) = v;
        }
        for r in 0..a.rows {
            if r == row || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for c in col..a.cols {
                let v = a.at(r, c) - &factor * a.at(row, c);
                *a.at_mut(r, c) = v;
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    RowReduced { rank: pivot_cols.len(), rref: a, pivot_cols }
}

pub fn rank(m: &Matrix) -> usize {
    row_reduce(m).rank
}

/// Basis of the null space, one basis vector per column. The basis is the
/// standard pivot-based one, so it is a deterministic function of the input.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let red = row_reduce(m);
    let free_cols: Vec<usize> = (0..m.cols()).filter(|c| !red.pivot_cols.contains(c)).collect();
    let mut basis = Matrix::zero(m.cols(), free_cols.len());
    for (k, &fc) in free_cols.iter().enumerate() {
        *basis.at_mut(fc, k) = Rational::one();
        for (pr, &pc) in red.pivot_cols.iter().enumerate() {
            *basis.at_mut(pc, k) = -red.rref.at(pr, fc).clone();
        }
    }
    basis
}

/// Surjection from the target space of `m` onto its cokernel.
///
/// The projection has full row rank `rows − rank`, satisfies `proj · m = 0`,
/// and its kernel is exactly the column space of `m`. It is the pivot-based
/// complement projection, hence deterministic.
pub fn cokernel_projection(m: &Matrix) -> (Matrix, usize) {
    // coker(m) = ker(mᵀ) read as rows: rows of the projection are a basis of
    // the left null space of m.
    let proj = kernel_basis(&m.transpose()).transpose();
    let dim = proj.rows();
    (proj, dim)
}

/// Basis of the column space: the pivot columns of the original matrix.
pub fn image_basis(m: &Matrix) -> Matrix {
    let red = row_reduce(m);
    let mut out = Matrix::zero(m.rows(), red.rank);
    for (k, &pc) in red.pivot_cols.iter().enumerate() {
        for r in 0..m.rows() {
            *out.at_mut(r, k) = m.at(r, pc).clone();
        }
    }
    out
}

/// Solves `a · x = b` exactly; returns the pivot-based particular solution
/// (free variables set to zero) or an error if the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix, RatError> {
    assert_eq!(a.rows(), b.rows(), "solve shape");
    let aug = a.hstack(b);
    let red = row_reduce(&aug);
    // Any pivot in the b-part means inconsistency.
    if red.pivot_cols.iter().any(|&c| c >= a.cols()) {
        return Err(RatError::Inconsistent);
    }
    let mut x = Matrix::zero(a.cols(), b.cols());
    for (pr, &pc) in red.pivot_cols.iter().enumerate() {
        for c in 0..b.cols() {
            *x.at_mut(pc, c) = red.rref.at(pr, a.cols() + c).clone();
        }
    }
    Ok(x)
}

/// Right inverse of a surjective matrix (`m · r = id`).
pub fn right_inverse(m: &Matrix) -> Result<Matrix, RatError> {
    solve(m, &Matrix::identity(m.rows()))
}

/// Left inverse of an injective matrix (`l · m = id`).
pub fn left_inverse(m: &Matrix) -> Result<Matrix, RatError> {
    let lt = solve(&m.transpose(), &Matrix::identity(m.cols()))?;
    Ok(lt.transpose())
}

pub fn is_injective(m: &Matrix) -> bool {
    rank(m) == m.cols()
}

pub fn is_surjective(m: &Matrix) -> bool {
    rank(m) == m.rows()
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.rows() == m.cols() && rank(m) == m.rows()
}

pub fn inverse(m: &Matrix) -> Result<Matrix, RatError> {
    if m.rows() != m.cols() {
        return Err(RatError::Shape("inverse of a non-square matrix".into()));
    }
    let inv = solve(m, &Matrix::identity(m.rows()))?;
    if m.mul(&inv).is_identity() {
        Ok(inv)
    } else {
        Err(RatError::Inconsistent)
    }
}

/// Block-diagonal assembly.
pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut out = Matrix::zero(rows, cols);
    let (mut ro, mut co) = (0, 0);
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                *out.at_mut(ro + r, co + c) = b.at(r, c).clone();
            }
        }
        ro += b.rows();
        co += b.cols();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(2);
        let red = row_reduce(&m);
        assert_eq!(red.rank, 2);
        assert_eq!(red.pivot_cols, vec![0, 1]);
        assert_eq!(red.rref, m);
    }

    #[test]
    fn rref_rank_one() {
        // Hand elimination: [[1,2],[2,4]] -> [[1,2],[0,0]].
        let m = Matrix::from_rows(&[&[1, 2], &[2, 4]]);
        let red = row_reduce(&m);
        assert_eq!(red.rank, 1);
        assert_eq!(red.rref, Matrix::from_rows(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_empty() {
        let m = Matrix::zero(0, 3);
        let red = row_reduce(&m);
        assert_eq!(red.rank, 0);
        assert!(red.pivot_cols.is_empty());
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_rows(&[&[2, 4, 1], &[1, 2, 0], &[0, 0, 3]]);
        let red = row_reduce(&m);
        let red2 = row_reduce(&red.rref);
        assert_eq!(red.rref, red2.rref);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(kernel_basis(&Matrix::identity(3)).cols(), 0);
        let z = Matrix::zero(2, 2);
        let k = kernel_basis(&z);
        assert_eq!(k.cols(), 2);
        assert!(is_invertible(&k));
    }

    #[test]
    fn kernel_rank_nullity() {
        // span{(-2,1)} for [[1,2],[2,4]].
        let m = Matrix::from_rows(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        assert_eq!(rank(&m) + k.cols(), m.cols());
    }

    #[test]
    fn cokernel_cases() {
        let (_, d) = cokernel_projection(&Matrix::identity(2));
        assert_eq!(d, 0);

        // ℚ → ℚ² with image spanned by (1,2): coker has dimension 1.
        let m = Matrix::from_rows(&[&[1], &[2]]);
        let (p, d) = cokernel_projection(&m);
        assert_eq!(d, 1);
        assert!(p.mul(&m).is_zero());
        assert_eq!(rank(&p), 1);

        let m = Matrix::zero(3, 0);
        let (p, d) = cokernel_projection(&m);
        assert_eq!(d, 3);
        assert!(is_invertible(&p));
    }

    #[test]
    fn solve_and_inverses() {
        let a = Matrix::from_rows(&[&[1, 1], &[0, 1]]);
        let b = Matrix::from_rows(&[&[3], &[2]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);

        let surj = Matrix::from_rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let r = right_inverse(&surj).unwrap();
        assert!(surj.mul(&r).is_identity());

        let inj = surj.transpose();
        let l = left_inverse(&inj).unwrap();
        assert!(l.mul(&inj).is_identity());

        let sing = Matrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert!(solve(&sing, &Matrix::from_rows(&[&[0], &[1]])).is_err());
    }

    #[test]
    fn rational_round_trip() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(format_rational(&ratio(-4, 2)), "-2");
        assert_eq!(format_rational(&ratio(1, 3)), "1/3");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn kronecker_matches_block_structure() {
        let a = Matrix::from_rows(&[&[1, 2]]);
        let b = Matrix::from_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kronecker(&b);
        assert_eq!(k.rows(), 2);
        assert_eq!(k.cols(), 4);
        assert_eq!(k, Matrix::from_rows(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }
}
