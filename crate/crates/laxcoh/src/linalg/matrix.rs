//! Dense matrices over ℚ(i) with exact row reduction.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// A column vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of an affine solve `A·x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineSolution {
    Solved { particular: Vector, kernel: Vec<Vector> },
    Infeasible { rank: usize, augmented_rank: usize },
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    /// The elementary matrix with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds from integer rows; convenient in tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .expect("rectangular input")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn column(v: &[Scalar]) -> Self {
        ExactMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (k, x) in d.iter().enumerate() {
            m[(k, k)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|k| &self[(k, k)]).sum()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector size mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `AB − BA` for square matrices of equal size.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        if !self.is_square() || self.rows != o.rows || !o.is_square() {
            return Err(Error::Dimension("commutator needs equal square sizes".into()));
        }
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    /// Reduced row-echelon form and pivot columns.
    ///
    /// Columns are scanned left to right; within a column the first row at or
    /// below the current pivot row holding a nonzero entry becomes the pivot.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column, in column order,
    /// with that free variable set to 1 and the other free variables 0.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Solves `A·x = b`; the particular solution has all free variables 0.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<AffineSolution> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs length {} for {} rows", b.len(), self.rows)));
        }
        let aug =
            Self::from_fn(
                self.rows,
                self.cols + 1,
                |i, j| {
                    if j < self.cols {
                        self[(i, j)].clone()
                    } else {
                        b[i].clone()
                    }
                },
            );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(AffineSolution::Infeasible { rank: pivots.len() - 1, augmented_rank: pivots.len() });
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        let coeff = Self::from_fn(r.rows, self.cols, |i, j| r[(i, j)].clone());
        Ok(AffineSolution::Solved { particular: x, kernel: kernel_from_rref(&coeff, &pivots) })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse of a square matrix by row reduction of `[A | I]`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Stacks matrices vertically; all must share the column count.
    pub fn vstack(blocks: &[ExactMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        Ok(ExactMatrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        })
    }
}

fn kernel_from_rref(r: &ExactMatrix, pivots: &[usize]) -> Vec<Vector> {
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); r.cols];
        v[free] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(row, free)];
        }
        basis.push(v);
    }
    basis
}

impl AffineSolution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, AffineSolution::Solved { .. })
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, o: &ExactMatrix) -> ExactMatrix {
        self.try_add(o).expect("shape mismatch in +")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, o: &ExactMatrix) -> ExactMatrix {
        self.try_sub(o).expect("shape mismatch in -")
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, o: &ExactMatrix) -> ExactMatrix {
        self.try_mul(o).expect("shape mismatch in *")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dot product `uᵗv` (no conjugation).
pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

/// Outer product `u vᵗ`.
pub fn outer(u: &[Scalar], v: &[Scalar]) -> ExactMatrix {
    ExactMatrix::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn commutator_of_elementary_matrices() {
        let e12 = ExactMatrix::unit(2, 0, 1);
        let e21 = ExactMatrix::unit(2, 1, 0);
        assert_eq!(e12.commutator(&e21).unwrap(), ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]));
        assert!(e12.commutator(&e12).unwrap().is_zero());
        let h = ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        assert_eq!(h.commutator(&e12).unwrap(), e12.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn commutator_size_mismatch() {
        assert!(ExactMatrix::identity(2).commutator(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn rref_examples() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = ExactMatrix::zeros(2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let a = ExactMatrix::from_rows(vec![vec![s("1"), s("i")], vec![s("i"), s("-1")]]).unwrap();
        let expect = ExactMatrix::from_rows(vec![vec![s("1"), s("i")], vec![s("0"), s("0")]]).unwrap();
        assert_eq!(a.rref(), (expect, vec![0]));
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::identity(3).nullspace().is_empty());
        let ns = ExactMatrix::zeros(2, 2).nullspace();
        assert_eq!(ns, vec![vec![s("1"), s("0")], vec![s("0"), s("1")]]);
        let a = ExactMatrix::from_rows(vec![vec![s("1"), s("i")]]).unwrap();
        assert_eq!(a.nullspace(), vec![vec![s("-i"), s("1")]]);
    }

    #[test]
    fn solve_affine_examples() {
        let b = vec![s("2"), s("1/3+i")];
        match ExactMatrix::identity(2).solve_affine(&b).unwrap() {
            AffineSolution::Solved { particular, kernel } => {
                assert_eq!(particular, b);
                assert!(kernel.is_empty());
            }
            other => panic!("{other:?}"),
        }
        let inf = ExactMatrix::zeros(1, 2).solve_affine(&[s("1")]).unwrap();
        assert_eq!(inf, AffineSolution::Infeasible { rank: 0, augmented_rank: 1 });
        match ExactMatrix::from_ints(&[&[1, 1]]).solve_affine(&[s("1")]).unwrap() {
            AffineSolution::Solved { particular, kernel } => {
                assert_eq!(particular, vec![s("1"), s("0")]);
                assert_eq!(kernel, vec![vec![s("-1"), s("1")]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solve_affine_rejects_bad_rhs() {
        assert!(ExactMatrix::identity(2).solve_affine(&[s("1")]).is_err());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
        prop::collection::vec(-3i64..4, rows * cols)
            .prop_map(move |v| ExactMatrix::from_fn(rows, cols, |i, j| Scalar::from_int(v[i * cols + j])))
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix(3, 5)) {
            let ker = m.nullspace();
            prop_assert_eq!(m.rank() + ker.len(), 5);
            for v in ker {
                prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn inverse_when_full_rank(m in small_matrix(3, 3)) {
            match m.inverse() {
                Ok(inv) => prop_assert_eq!(m.try_mul(&inv).unwrap(), ExactMatrix::identity(3)),
                Err(_) => prop_assert!(m.rank() < 3),
            }
        }

        #[test]
        fn commutator_jacobi(a in small_matrix(3, 3), b in small_matrix(3, 3), c in small_matrix(3, 3)) {
            let t = |x: &ExactMatrix, y: &ExactMatrix, z: &ExactMatrix| x.commutator(&y.commutator(z).unwrap()).unwrap();
            let s = t(&a, &b, &c).try_add(&t(&b, &c, &a)).unwrap().try_add(&t(&c, &a, &b)).unwrap();
            prop_assert!(s.is_zero());
        }
    }
}
