//! Small dense integer matrices with exact determinant, inverse and kernel.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

type R128 = Ratio<i128>;

/// Square integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[i64], w: &[i64]) -> i64 {
        v.iter().zip(self.mul_vec(w)).map(|(a, b)| a * b).sum()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Inverse over the integers; `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a: Vec<Vec<R128>> = (0..n)
            .map(|i| {
                let mut row: Vec<R128> = self.row(i).iter().map(|&x| R128::from_integer(x.into())).collect();
                row.extend((0..n).map(|j| if i == j { R128::one() } else { R128::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let piv = a[c][c];
            for x in a[c].iter_mut() {
                *x /= piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c];
                    let pivot_row = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        let mut inv = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let x = a[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                inv[(i, j)] = i64::try_from(x.to_integer()).ok()?;
            }
        }
        Some(inv)
    }

    /// Basis of the rational kernel, each vector scaled to a primitive integer vector.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut a: Vec<Vec<R128>> =
            self.rows().into_iter().map(|r| r.into_iter().map(|x| R128::from_integer(x.into())).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..n {
            let Some(p) = (row..n).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(row, p);
            let piv = a[row][c];
            for x in a[row].iter_mut() {
                *x /= piv;
            }
            for r in 0..n {
                if r != row && !a[r][c].is_zero() {
                    let f = a[r][c];
                    let pivot_row = a[row].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![R128::zero(); n];
                v[f] = R128::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][f];
                }
                primitive(&v)
            })
            .collect()
    }
}

fn primitive(v: &[R128]) -> Vec<i64> {
    let den = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * R128::from_integer(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x)).max(1);
    ints.iter().map(|x| i64::try_from(x / g).expect("kernel entry fits i64")).collect()
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn det_and_inverse_of_unipotent() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, -3], vec![0, 0, 1]]);
        assert_eq!(m.det(), 1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
    }

    #[test]
    fn non_unimodular_has_no_integer_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(m.det(), 2);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn kernel_of_affine_a1_cartan() {
        let c = IntMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]);
        assert_eq!(c.kernel(), vec![vec![1, 1]]);
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in proptest::collection::vec(-3i64..4, 9), b in proptest::collection::vec(-3i64..4, 9)) {
            let ma = IntMatrix { n: 3, data: a };
            let mb = IntMatrix { n: 3, data: b };
            prop_assert_eq!(ma.mul(&mb).det(), ma.det() * mb.det());
        }

        #[test]
        fn pow_agrees_with_repeated_mul(a in proptest::collection::vec(-2i64..3, 4), e in 0u32..5) {
            let m = IntMatrix { n: 2, data: a };
            let mut acc = IntMatrix::identity(2);
            for _ in 0..e { acc = acc.mul(&m); }
            prop_assert_eq!(m.pow(e), acc);
        }
    }
}
