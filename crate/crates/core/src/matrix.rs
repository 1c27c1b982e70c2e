//! Dense matrices of polynomials. The ring is supplied per operation.

use crate::groebner::Vector;
use crate::polyring::{Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub nrows: usize,
    pub ncols: usize,
    /// Row-major entries.
    pub entries: Vec<Poly>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Matrix {
        Matrix {
            nrows,
            ncols,
            entries: vec![Poly::zero(); nrows * ncols],
        }
    }

    pub fn identity(ring: &PolyRing, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn scalar(n: usize, f: &Poly) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix {
            nrows,
            ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `nrows`.
    pub fn from_cols(nrows: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn cols(&self) -> Vec<Vector> {
        (0..self.ncols).map(|j| self.col(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.entries[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix product shape");
        let mut out = Matrix::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.ncols + j;
                    out.entries[idx] = ring.add(&out.entries[idx], &ring.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: &PolyRing, v: &[Poly]) -> Vector {
        assert_eq!(self.ncols, v.len(), "matrix-vector shape");
        (0..self.nrows)
            .map(|i| {
                let mut acc = Poly::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = ring.add(&acc, &ring.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self, ring: &PolyRing) -> Matrix {
        self.map(|p| ring.neg(p))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows, "hconcat rows");
        let mut out = Matrix::zeros(self.nrows, self.ncols + other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.ncols {
                out.set(i, self.ncols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// `[self; other]`.
    pub fn vconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.ncols, "vconcat cols");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            entries,
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.nrows + other.nrows, self.ncols + other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.nrows {
            for j in 0..other.ncols {
                out.set(self.nrows + i, self.ncols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let rows: Vec<usize> = (start..end).collect();
        let cols: Vec<usize> = (0..self.ncols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.nrows).collect();
        let cols: Vec<usize> = (start..end).collect();
        self.submatrix(&rows, &cols)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.nrows * other.nrows, self.ncols * other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.nrows {
                    for l in 0..other.ncols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.nrows + k, j * other.ncols + l, ring.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Column-major vectorization.
    pub fn vec(&self) -> Vector {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    /// Inverse of [`Matrix::vec`].
    pub fn unvec(nrows: usize, ncols: usize, v: &[Poly]) -> Matrix {
        assert_eq!(v.len(), nrows * ncols);
        let mut m = Matrix::zeros(nrows, ncols);
        for j in 0..ncols {
            for i in 0..nrows {
                m.set(i, j, v[j * nrows + i].clone());
            }
        }
        m
    }

    /// Determinant by cofactor expansion along the sparsest row.
    pub fn det(&self, ring: &PolyRing) -> Poly {
        assert_eq!(self.nrows, self.ncols, "determinant of a non-square matrix");
        let rows: Vec<usize> = (0..self.nrows).collect();
        let cols: Vec<usize> = (0..self.ncols).collect();
        self.minor(ring, &rows, &cols)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, ring: &PolyRing, rows: &[usize], cols: &[usize]) -> Poly {
        match rows.len() {
            0 => return ring.one(),
            1 => return self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = ring.mul(self.get(rows[0], cols[0]), self.get(rows[1], cols[1]));
                let b = ring.mul(self.get(rows[0], cols[1]), self.get(rows[1], cols[0]));
                return ring.sub(&a, &b);
            }
            _ => {}
        }
        let pick = (0..rows.len())
            .min_by_key(|&a| cols.iter().filter(|&&j| !self.get(rows[a], j).is_zero()).count())
            .unwrap();
        let rest_rows: Vec<usize> = rows.iter().enumerate().filter(|(a, _)| *a != pick).map(|(_, &r)| r).collect();
        let mut acc = Poly::zero();
        for (b, &j) in cols.iter().enumerate() {
            let e = self.get(rows[pick], j);
            if e.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().enumerate().filter(|(c, _)| *c != b).map(|(_, &c)| c).collect();
            let sub = ring.mul(e, &self.minor(ring, &rest_rows, &rest_cols));
            acc = if (pick + b) % 2 == 0 { ring.add(&acc, &sub) } else { ring.sub(&acc, &sub) };
        }
        acc
    }

    pub fn to_strings(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| ring.format(self.get(i, j))).collect())
            .collect()
    }

    pub fn parse(ring: &PolyRing, rows: &[Vec<&str>]) -> crate::Result<Matrix> {
        let mut out = Vec::new();
        for r in rows {
            let mut row = Vec::new();
            for s in r {
                row.push(crate::polyring::parse_poly(ring, s)?);
            }
            out.push(row);
        }
        let ncols = out.first().map_or(0, |r: &Vec<Poly>| r.len());
        if out.iter().any(|r| r.len() != ncols) {
            return Err(crate::Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix::from_rows(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, MonomialOrder};

    #[test]
    fn determinant_and_kron_vec_identity() {
        let r = PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let a = Matrix::parse(&r, &[vec!["x", "y"], vec!["1", "x"]]).unwrap();
        assert_eq!(r.format(&a.det(&r)), "x^2 - y");
        let b = Matrix::parse(&r, &[vec!["1", "2", "y"], vec!["0", "x", "1"], vec!["x", "0", "1"]]).unwrap();
        // 1*(x - 0) - 2*(0 - x) + y*(0 - x^2)
        assert_eq!(r.format(&b.det(&r)), "-x^2*y + 3*x");
        // vec(A X B) = (B^T ⊗ A) vec(X)
        let x = Matrix::parse(&r, &[vec!["y", "1"], vec!["x", "x*y"]]).unwrap();
        let lhs = a.mul(&r, &x).mul(&r, &a).vec();
        let rhs = a.transpose().kron(&r, &a).mul_vec(&r, &x.vec());
        assert_eq!(lhs, rhs);
    }
}
