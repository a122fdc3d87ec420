use std::fmt;
use std::sync::Arc;

use super::field::FiniteField;

/// A square matrix over a small finite field, entries stored row-major as
/// field indices.
#[derive(Clone)]
pub struct Matrix {
    n: usize,
    entries: Vec<u8>,
    field: Arc<FiniteField>,
}

impl Matrix {
    pub fn identity(n: usize, field: &Arc<FiniteField>) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix {
            n,
            entries,
            field: Arc::clone(field),
        }
    }

    pub fn from_entries(n: usize, entries: Vec<u8>, field: &Arc<FiniteField>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix must be square");
        assert!(entries.iter().all(|&e| (e as usize) < field.order()));
        Matrix {
            n,
            entries,
            field: Arc::clone(field),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        out
    }

    /// Applies a field map entrywise.
    pub fn map(&self, f: impl Fn(u8) -> u8) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| f(x)).collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n * n).all(|idx| self.entries[idx] == u8::from(idx / n == idx % n))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| self.field.sub(a, b))
                .collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn determinant(&self) -> u8 {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u8;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], v);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                a.swap(piv * n + j, rank * n + j);
            }
            let pinv = f.inv(a[rank * n + col]);
            for r in 0..n {
                if r == rank || a[r * n + col] == 0 {
                    continue;
                }
                let factor = f.mul(a[r * n + col], pinv);
                for j in 0..n {
                    let v = f.mul(factor, a[rank * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut acc = Matrix::identity(self.n, &self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, assuming the matrix is invertible.
    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = &x * self;
            k += 1;
        }
        k
    }
}

/// Row-major product `c = a·b` of raw `n × n` entry arrays.
pub fn mul_into(field: &FiniteField, n: usize, a: &[u8], b: &[u8], c: &mut [u8]) {
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u8;
            for t in 0..n {
                s = field.add(s, field.mul(a[i * n + t], b[t * n + j]));
            }
            c[i * n + j] = s;
        }
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let mut entries = vec![0u8; self.n * self.n];
        mul_into(&self.field, self.n, &self.entries, &rhs.entries, &mut entries);
        Matrix {
            n: self.n,
            entries,
            field: Arc::clone(&self.field),
        }
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
