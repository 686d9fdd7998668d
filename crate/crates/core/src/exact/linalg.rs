//! Dense linear algebra over an exact field.

use super::coeff::Coeff;
use super::poly::Poly;

/// Row-major matrix over a field D.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<D: Coeff> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<D>,
}

impl<D: Coeff> Matrix<D> {
    pub fn new(rows: usize, cols: usize, zero: D) -> Self {
        Matrix { rows, cols, data: vec![zero; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<D>>, zero: D) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Self::new(r, c, zero);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize, zero: D) -> Self {
        let one = zero.one_like();
        let mut m = Self::new(n, n, zero);
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &D {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: D) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<D> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn zero_elem(&self) -> D {
        self.data.first().map(|v| v.zero_like()).expect("empty matrix has no zero template")
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows, self.zero_elem());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let zero = self.zero_elem();
        let mut out = Self::new(self.rows, rhs.cols, zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_c() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).plus(&a.times(rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[D]) -> Vec<D> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(v[0].zero_like(), |acc, j| acc.plus(&self.get(i, j).times(&v[j]))))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.plus(b);
        }
        out
    }

    pub fn scale(&self, k: &D) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.times(k);
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero_c()) else { continue };
            m.swap_rows(p, r);
            let inv = m.get(r, c).try_inverse().expect("field element");
            for j in 0..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero_c() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<D>> {
        let (r, pivots) = self.rref();
        let zero = self.zero_elem();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = zero.one_like();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).negate();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let zero = self.zero_elem();
        let mut aug = Self::new(n, 2 * n, zero.clone());
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, zero.one_like());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::new(n, n, zero);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solutions of M x = b: a particular solution and the kernel basis, or
    /// None when the system is inconsistent.
    pub fn solve(&self, b: &[D]) -> Option<(Vec<D>, Vec<Vec<D>>)> {
        let zero = self.zero_elem();
        let mut aug = Self::new(self.rows, self.cols + 1, zero.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![zero; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some((x, self.kernel()))
    }

    /// Characteristic polynomial det(xI − M) by the Faddeev–LeVerrier recurrence.
    pub fn charpoly(&self) -> Poly<D> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let zero = self.zero_elem();
        let one = zero.one_like();
        let mut coeffs = vec![zero.clone(); n + 1];
        coeffs[n] = one.clone();
        let mut mk = Self::new(n, n, zero.clone());
        let id = Self::identity(n, zero.clone());
        for k in 1..=n {
            mk = self.mul(&mk).add(&id.scale(&coeffs[n - k + 1]));
            let am = self.mul(&mk);
            let tr = (0..n).fold(zero.clone(), |acc, i| acc.plus(am.get(i, i)));
            let kinv = one.scale_i64(k as i64).try_inverse().expect("characteristic zero");
            coeffs[n - k] = tr.times(&kinv).negate();
        }
        Poly::from_coeffs(coeffs, zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, RPoly, Rat};

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect(), rat_int(0))
    }

    #[test]
    fn inverse_and_kernel() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, rat_int(0)));
        let s = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(s.rank(), 1);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(s.mul_vec(&v).iter().all(|x| *x == rat_int(0)));
        }
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistency() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let (x, k) = a.solve(&[rat_int(3), rat_int(1), rat_int(4)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        assert!(k.is_empty());
        assert!(a.solve(&[rat_int(3), rat_int(1), rat_int(5)]).is_none());
    }

    #[test]
    fn charpoly_companion() {
        // Companion matrix of x^3 − 2x + 5.
        let c = m(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        let expected = crate::exact::IPoly::from_i64(&[1, 0, -2, 5]).to_rpoly();
        assert_eq!(c.charpoly(), expected);
        let _: RPoly = c.charpoly();
    }
}
