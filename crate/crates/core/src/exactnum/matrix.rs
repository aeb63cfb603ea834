//! Dense exact matrices over Q(i) with kernel and rank computation.
//!
//! Elimination is fraction-free (Bareiss) on rows that were first scaled to
//! Gaussian-integer entries; every intermediate division is exact, so the
//! echelon form stays integral and coefficient growth is bounded by minors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::GaussianRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussianRational::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
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
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    fn echelon(&self) -> Echelon {
        let mut a: Vec<Vec<GaussianRational>> = (0..self.rows).map(|i| integral_row(self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut prev = GaussianRational::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Largest-numerator pivot in column c.
            let best = (r..self.rows)
                .filter(|&i| !a[i][c].is_zero())
                .max_by(|&i, &j| a[i][c].numerator_height().cmp(&a[j][c].numerator_height()));
            let Some(p) = best else { continue };
            a.swap(r, p);
            for i in r + 1..self.rows {
                if a[i][c].is_zero() {
                    // Bareiss still needs the scaling by the pivot for exactness.
                    for j in c + 1..self.cols {
                        if !a[i][j].is_zero() {
                            a[i][j] = &(&a[r][c] * &a[i][j]) / &prev;
                        }
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    let v = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                    a[i][j] = &v / &prev;
                }
                a[i][c] = GaussianRational::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon { rows: a, pivots }
    }

    /// Basis of the right null space. Each vector has its first nonzero
    /// entry equal to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        let ech = self.echelon();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            for (r, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[r];
                let mut acc = GaussianRational::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += &(&row[j] * &v[j]);
                    }
                }
                v[pc] = -(&acc / &row[pc]);
            }
            normalize_first_one(&mut v);
            basis.push(v);
        }
        basis
    }

    /// A nonzero kernel vector (first nonzero entry 1), or `OnlyTrivial`.
    pub fn solve_homogeneous(&self) -> Result<Vec<GaussianRational>> {
        self.kernel_basis().into_iter().next().ok_or(Error::OnlyTrivial)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<GaussianRational> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<GaussianRational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = GaussianRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det = &det * &piv;
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &piv;
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        Ok(det)
    }
}

struct Echelon {
    rows: Vec<Vec<GaussianRational>>,
    pivots: Vec<usize>,
}

/// Scales a row by the lcm of its denominators so all entries lie in Z[i].
fn integral_row(row: &[GaussianRational]) -> Vec<GaussianRational> {
    use num_integer::Integer;
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let l = GaussianRational::from(BigRational::from_integer(l));
    row.iter().map(|x| x * &l).collect()
}

pub fn normalize_first_one(v: &mut [GaussianRational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = first.inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Free-function form of [`ExactMatrix::kernel_basis`].
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    m.kernel_basis()
}

/// Free-function form of [`ExactMatrix::solve_homogeneous`].
pub fn solve_homogeneous(m: &ExactMatrix) -> Result<Vec<GaussianRational>> {
    m.solve_homogeneous()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    #[test]
    fn identity_has_empty_kernel() {
        assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(ExactMatrix::identity(3).solve_homogeneous(), Err(Error::OnlyTrivial));
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let k = ExactMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn one_dimensional_kernel() {
        let m = ExactMatrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![ints(&[1, -1, 1])]);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn single_row_forced_solution() {
        let m = ExactMatrix::from_int_rows(&[&[2, -1]]);
        assert_eq!(m.solve_homogeneous().unwrap(), ints(&[1, 2]));
    }

    #[test]
    fn gaussian_entries() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        // rows (1, i), (i, -1) are dependent; kernel spanned by (1, i).
        let m = ExactMatrix::from_rows(vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.solve_homogeneous().unwrap();
        assert_eq!(k, vec![one, i]);
    }

    #[test]
    fn determinant_small() {
        let m = ExactMatrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), GaussianRational::from_int(1));
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(-3i64..4, 30)) {
            let data: Vec<Vec<GaussianRational>> = (0..rows)
                .map(|i| (0..cols).map(|j| GaussianRational::from_ratio(seed[(i * cols + j) % 30], 1 + (j as i64 % 2))).collect())
                .collect();
            let m = ExactMatrix::from_rows(data).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), cols);
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            if !k.is_empty() {
                let stacked = ExactMatrix::from_rows(k.clone()).unwrap();
                prop_assert_eq!(stacked.rank(), k.len());
            }
        }
    }
}
