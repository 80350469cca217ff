//! Exact linear algebra over a [`Field`]: matrices, canonical subspaces and
//! the lattice operations (sum, intersection, quotient image) everything
//! else consumes.
//!
//! A [`Subspace`] is stored as its reduced row echelon basis, so subspace
//! equality is plain structural equality.

use std::fmt;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    entries: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<K> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = K::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    /// Apply to a column vector.
    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// In-place Gauss-Jordan; returns the pivot columns of the echelonized
    /// matrix. Zero rows sink to the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            let pivot_row = (lead..self.rows).find(|&r| !self[(r, col)].is_zero());
            let Some(pr) = pivot_row else { continue };
            self.swap_rows(pr, lead);
            let inv = self[(lead, col)].inv();
            for j in col..self.cols {
                self[(lead, j)] = self[(lead, j)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r != lead && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let delta = factor.clone() * self[(lead, j)].clone();
                        self[(r, j)] = self[(r, j)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "det of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = K::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return K::zero();
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv();
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone() * inv.clone();
                    for j in col..n {
                        let delta = factor.clone() * m[(col, j)].clone();
                        m[(r, j)] = m[(r, j)].clone() - delta;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix<K>, LinAlgError> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                K::one()
            } else {
                K::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinAlgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Solve `x * self = rhs` for a row vector `x`, if consistent.
    pub fn solve_left(&self, rhs: &[K]) -> Option<Vec<K>> {
        // Solve self^T y = rhs^T.
        assert_eq!(rhs.len(), self.cols);
        let t = self.transpose();
        let mut aug = Matrix::from_fn(t.rows, t.cols + 1, |i, j| {
            if j < t.cols {
                t[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.contains(&t.cols) {
            return None; // inconsistent
        }
        let mut x = vec![K::zero(); t.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug[(row, t.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn stack(top: &Matrix<K>, bottom: &Matrix<K>) -> Matrix<K> {
        assert_eq!(top.cols, bottom.cols, "stack width mismatch");
        let mut entries = top.entries.clone();
        entries.extend_from_slice(&bottom.entries);
        Matrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            entries,
        }
    }
}

impl<K> std::ops::Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.entries[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.entries[i * self.cols + j]
    }
}

impl<K: fmt::Display> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of `K^n` in canonical (reduced row echelon) form. Two
/// subspaces are equal as sets iff their representations are identical.
#[derive(Clone, PartialEq)]
pub struct Subspace<K> {
    ambient: usize,
    basis: Matrix<K>,
    pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Echelon basis rows; pivot entries are 1, pivot columns otherwise zero.
    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<K>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

impl<K: fmt::Display> fmt::Debug for Subspace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, basis {:?})",
            self.basis.rows, self.ambient, self.basis
        )
    }
}

/// Canonical span of a list of vectors.
pub fn span<K: Field>(vectors: &[Vec<K>], ambient_dim: usize) -> Result<Subspace<K>, LinAlgError> {
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: ambient_dim,
                got: v.len(),
            });
        }
    }
    let mut m = Matrix::from_rows(vectors.to_vec());
    if m.rows == 0 {
        return Ok(Subspace::zero(ambient_dim));
    }
    m.cols = ambient_dim; // zero-row inputs keep the right width
    let pivots = m.rref_in_place();
    let basis = Matrix::from_fn(pivots.len(), ambient_dim, |i, j| m[(i, j)].clone());
    Ok(Subspace {
        ambient: ambient_dim,
        basis,
        pivots,
    })
}

fn check_ambient<K>(a: &Subspace<K>, b: &Subspace<K>) -> Result<(), LinAlgError>
where
    K: Field,
{
    if a.ambient != b.ambient {
        return Err(LinAlgError::DimensionMismatch {
            expected: a.ambient,
            got: b.ambient,
        });
    }
    Ok(())
}

/// A + B.
pub fn sum<K: Field>(a: &Subspace<K>, b: &Subspace<K>) -> Result<Subspace<K>, LinAlgError> {
    check_ambient(a, b)?;
    let mut rows = a.basis.row_vecs();
    rows.extend(b.basis.row_vecs());
    span(&rows, a.ambient)
}

/// Orthogonal complement for the standard coordinate pairing, i.e. the right
/// null space of the basis matrix.
pub fn orthogonal_complement<K: Field>(s: &Subspace<K>) -> Subspace<K> {
    let n = s.ambient;
    let mut m = s.basis.clone();
    let pivots = m.rref_in_place();
    let pivot_set: Vec<usize> = pivots.clone();
    let free: Vec<usize> = (0..n).filter(|j| !pivot_set.contains(j)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &fcol in &free {
        let mut v = vec![K::zero(); n];
        v[fcol] = K::one();
        for (row, &pcol) in pivot_set.iter().enumerate() {
            v[pcol] = -m[(row, fcol)].clone();
        }
        rows.push(v);
    }
    span(&rows, n).expect("kernel rows have ambient length")
}

/// A ∩ B computed as (A^⊥ + B^⊥)^⊥.
pub fn intersect<K: Field>(a: &Subspace<K>, b: &Subspace<K>) -> Result<Subspace<K>, LinAlgError> {
    check_ambient(a, b)?;
    let ap = orthogonal_complement(a);
    let bp = orthogonal_complement(b);
    Ok(orthogonal_complement(&sum(&ap, &bp)?))
}

/// Reduce `v` modulo the subspace `w` (clear the pivot coordinates of `w`).
pub fn reduce_mod<K: Field>(v: &[K], w: &Subspace<K>) -> Vec<K> {
    let mut v = v.to_vec();
    for (row, &p) in w.pivots.iter().enumerate() {
        if !v[p].is_zero() {
            let factor = v[p].clone();
            for j in 0..w.ambient {
                let delta = factor.clone() * w.basis[(row, j)].clone();
                v[j] = v[j].clone() - delta;
            }
        }
    }
    v
}

/// Does `v` lie in `w`?
pub fn contains_vector<K: Field>(w: &Subspace<K>, v: &[K]) -> bool {
    reduce_mod(v, w).iter().all(|x| x.is_zero())
}

pub fn contains<K: Field>(big: &Subspace<K>, small: &Subspace<K>) -> bool {
    small
        .basis
        .row_vecs()
        .iter()
        .all(|v| contains_vector(big, v))
}

/// Image of `a` in `V/w`, realized on the non-pivot coordinates of `w`.
pub fn quotient_image<K: Field>(
    a: &Subspace<K>,
    w: &Subspace<K>,
) -> Result<Subspace<K>, LinAlgError> {
    check_ambient(a, w)?;
    let free: Vec<usize> = (0..w.ambient).filter(|j| !w.pivots.contains(j)).collect();
    let rows: Vec<Vec<K>> = a
        .basis
        .row_vecs()
        .iter()
        .map(|v| {
            let red = reduce_mod(v, w);
            free.iter().map(|&j| red[j].clone()).collect()
        })
        .collect();
    span(&rows, free.len())
}

/// Coordinates of the rows of `a` with respect to the basis of `w`;
/// `a` must be contained in `w`. The result lives in `K^{dim w}`.
pub fn restrict_to<K: Field>(a: &Subspace<K>, w: &Subspace<K>) -> Result<Subspace<K>, LinAlgError> {
    check_ambient(a, w)?;
    let rows: Vec<Vec<K>> = a
        .basis
        .row_vecs()
        .iter()
        .map(|v| {
            w.basis
                .solve_left(v)
                .expect("restrict_to: subspace not contained in carrier")
        })
        .collect();
    span(&rows, w.dim())
}

/// Push a subspace through an invertible matrix: span of `g·v` over basis
/// vectors `v` (columns convention).
pub fn apply<K: Field>(g: &Matrix<K>, s: &Subspace<K>) -> Subspace<K> {
    let rows: Vec<Vec<K>> = s.basis.row_vecs().iter().map(|v| g.mul_vec(v)).collect();
    span(&rows, s.ambient).expect("apply keeps ambient dimension")
}

/// The deterministic complement of `d` inside `c` (`d ⊆ c` required):
/// the span of the echelon rows of `c` whose pivots are not pivots of `d`.
/// Since pivot columns nest for nested subspaces, this is a complement.
pub fn pivot_complement<K: Field>(c: &Subspace<K>, d: &Subspace<K>) -> Subspace<K> {
    debug_assert!(contains(c, d), "pivot_complement needs d ⊆ c");
    let rows: Vec<Vec<K>> = c
        .basis
        .row_vecs()
        .into_iter()
        .zip(c.pivots())
        .filter(|(_, p)| !d.pivots.contains(p))
        .map(|(row, _)| row)
        .collect();
    span(&rows, c.ambient).expect("complement rows fit the ambient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rint, Rat};
    use proptest::prelude::*;

    fn qvec(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rint(x)).collect()
    }

    fn qspan(vectors: &[&[i64]], n: usize) -> Subspace<Rat> {
        let rows: Vec<Vec<Rat>> = vectors.iter().map(|v| qvec(v)).collect();
        span(&rows, n).unwrap()
    }

    #[test]
    fn span_normalizes_single_vector() {
        let s = qspan(&[&[1, 1]], 2);
        assert_eq!(s.basis_rows(), vec![qvec(&[1, 1])]);
    }

    #[test]
    fn span_scaling_invariance() {
        let s = qspan(&[&[2, 0], &[0, 3]], 2);
        assert!(s.is_full());
        assert_eq!(s, Subspace::full(2));
    }

    #[test]
    fn span_collapses_dependent_rows() {
        let s = qspan(&[&[1, 2], &[2, 4]], 2);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_rows(), vec![qvec(&[1, 2])]);
    }

    #[test]
    fn span_rejects_bad_length() {
        let err = span(&[qvec(&[1, 0, 0])], 2).unwrap_err();
        assert!(matches!(err, LinAlgError::DimensionMismatch { .. }));
    }

    #[test]
    fn intersect_with_superspace_is_identity() {
        let w = qspan(&[&[1, 0, 2]], 3);
        let v = Subspace::full(3);
        assert_eq!(intersect(&v, &w).unwrap(), w);
    }

    #[test]
    fn intersect_complementary_lines() {
        let a = qspan(&[&[1, 0]], 2);
        let b = qspan(&[&[0, 1]], 2);
        assert_eq!(intersect(&a, &b).unwrap(), Subspace::zero(2));
    }

    #[test]
    fn intersect_planes_in_q3() {
        // Hand-solved joint system: a(e1) + b(e1+e2) = c(e2) + d(e3)
        // forces d = 0, a = -b, leaving span(e2).
        let a = qspan(&[&[1, 0, 0], &[1, 1, 0]], 3);
        let b = qspan(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(intersect(&a, &b).unwrap(), qspan(&[&[0, 1, 0]], 3));
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let a = qspan(&[&[1, 5]], 2);
        assert_eq!(sum(&a, &Subspace::zero(2)).unwrap(), a);
    }

    #[test]
    fn sum_of_lines_spans_plane() {
        let a = qspan(&[&[1, 0]], 2);
        let b = qspan(&[&[0, 1]], 2);
        assert!(sum(&a, &b).unwrap().is_full());
        let c = qspan(&[&[1, 1]], 2);
        let d = qspan(&[&[1, -1]], 2);
        assert!(sum(&c, &d).unwrap().is_full());
    }

    #[test]
    fn quotient_image_cases() {
        let w = qspan(&[&[1, 0]], 2);
        assert_eq!(quotient_image(&w, &w).unwrap(), Subspace::zero(1));
        assert_eq!(quotient_image(&Subspace::full(2), &w).unwrap(), Subspace::full(1));
        let a = qspan(&[&[1, 1]], 2);
        assert_eq!(quotient_image(&a, &w).unwrap(), Subspace::full(1));
    }

    #[test]
    fn restrict_roundtrip() {
        let w = qspan(&[&[1, 0, 1], &[0, 1, 2]], 3);
        let a = qspan(&[&[1, 1, 3]], 3);
        let r = restrict_to(&a, &w).unwrap();
        assert_eq!(r.dim(), 1);
        // coordinates (1,1) with respect to w's echelon basis
        assert_eq!(r.basis_rows(), vec![qvec(&[1, 1])]);
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(vec![qvec(&[2, 1]), qvec(&[1, 1])]);
        assert_eq!(m.det(), rint(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![qvec(&[1, 2]), qvec(&[2, 4])]);
        assert_eq!(sing.det(), rint(0));
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn fp_rref_works() {
        use crate::field::Fp;
        let p = 5;
        let rows = vec![
            vec![Fp::new(2, p), Fp::new(1, p)],
            vec![Fp::new(4, p), Fp::new(2, p)],
        ];
        let s = span(&rows, 2).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_rows(), vec![vec![Fp::new(1, p), Fp::new(3, p)]]);
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-4i64..5, 1i64..4).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
        prop::collection::vec(prop::collection::vec(arb_rat(), n), 0..=count)
    }

    proptest! {
        #[test]
        fn canonicality(vectors in arb_vectors(4, 5)) {
            let s = span(&vectors, 4).unwrap();
            let again = span(&s.basis_rows(), 4).unwrap();
            prop_assert_eq!(s, again);
        }

        #[test]
        fn modular_law(av in arb_vectors(5, 3), bv in arb_vectors(5, 3)) {
            let a = span(&av, 5).unwrap();
            let b = span(&bv, 5).unwrap();
            let meet = intersect(&a, &b).unwrap();
            let join = sum(&a, &b).unwrap();
            prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
            prop_assert!(contains(&a, &meet));
            prop_assert!(contains(&join, &b));
        }

        #[test]
        fn quotient_dimension(av in arb_vectors(5, 3), wv in arb_vectors(5, 2)) {
            let a = span(&av, 5).unwrap();
            let w = span(&wv, 5).unwrap();
            let q = quotient_image(&a, &w).unwrap();
            let join = sum(&a, &w).unwrap();
            prop_assert_eq!(q.dim(), join.dim() - w.dim());
        }
    }
}
