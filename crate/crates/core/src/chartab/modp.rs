//! Dense linear algebra over `Z/P` for a word-sized prime `P`.

use crate::numtheory::mod_pow;

#[derive(Clone, Copy, Debug)]
pub struct Zp {
    pub p: u64,
}

impl Zp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse mod {}", self.p);
        mod_pow(a, self.p - 2, self.p)
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        mod_pow(a, e, self.p)
    }
}

/// Row-major `rows × cols` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Mat, f: Zp) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(t, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Columns as vectors.
    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).collect())
            .collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<u64>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for r in 0..rows {
                m.set(r, c, v[r]);
            }
        }
        m
    }
}

/// Basis of the right kernel `{v : A·v = 0}`.
pub fn kernel(a: &Mat, f: Zp) -> Vec<Vec<u64>> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        for j in 0..cols {
            m.data.swap(piv * cols + j, r * cols + j);
        }
        let inv = f.inv(m.get(r, c));
        for j in 0..cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor == 0 {
                continue;
            }
            for j in 0..cols {
                let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, m.get(i, fc));
            }
            v
        })
        .collect()
}

/// For an `A`-invariant subspace with basis the columns of `b` (full column
/// rank), the matrix `R` with `A·B = B·R`.
pub fn restrict(a: &Mat, b: &Mat, f: Zp) -> Mat {
    let ab = a.mul(b, f);
    let d = b.cols;
    // Row-reduce [B | AB]; the top d rows then read [I | R].
    let width = 2 * d;
    let mut m = Mat::zeros(b.rows, width);
    for i in 0..b.rows {
        for j in 0..d {
            m.set(i, j, b.get(i, j));
            m.set(i, d + j, ab.get(i, j));
        }
    }
    let mut r = 0;
    for c in 0..d {
        let piv = (r..m.rows)
            .find(|&i| m.get(i, c) != 0)
            .expect("basis columns are independent");
        for j in 0..width {
            m.data.swap(piv * width + j, r * width + j);
        }
        let inv = f.inv(m.get(r, c));
        for j in 0..width {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor == 0 {
                continue;
            }
            for j in 0..width {
                let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        r += 1;
    }
    let mut out = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, m.get(i, d + j));
        }
    }
    out
}

/// Characteristic polynomial `det(x·I - A)`, constant term first, via a
/// Hessenberg reduction.
pub fn char_poly(a: &Mat, f: Zp) -> Vec<u64> {
    let n = a.rows;
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                h.data.swap(piv * n + c, (j + 1) * n + c);
            }
            for r in 0..n {
                h.data.swap(r * n + piv, r * n + j + 1);
            }
        }
        let inv = f.inv(h.get(j + 1, j));
        for r in j + 2..n {
            let u = f.mul(h.get(r, j), inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = f.sub(h.get(r, c), f.mul(u, h.get(j + 1, c)));
                h.set(r, c, v);
            }
            for rr in 0..n {
                let v = f.add(h.get(rr, j + 1), f.mul(u, h.get(rr, r)));
                h.set(rr, j + 1, v);
            }
        }
    }
    // polys[m] is the characteristic polynomial of the leading m × m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h.get(m, m), c));
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = f.mul(t, h.get(i + 1, i));
            let coef = f.mul(t, h.get(i, m));
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = f.sub(next[k], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the empty product")
}

/// Roots in `Z/P`, increasing.
pub fn roots(poly: &[u64], f: Zp) -> Vec<u64> {
    (0..f.p)
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_companion() {
        let f = Zp { p: 101 };
        // Companion matrix of x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3).
        let a = Mat { rows: 3, cols: 3, data: vec![0, 0, 6, 1, 0, 101 - 11, 0, 1, 6] };
        let cp = char_poly(&a, f);
        assert_eq!(cp, vec![101 - 6, 11, 101 - 6, 1]);
        assert_eq!(roots(&cp, f), vec![1, 2, 3]);
    }

    #[test]
    fn char_poly_matches_determinant_definition() {
        let f = Zp { p: 13 };
        let a = Mat { rows: 3, cols: 3, data: vec![2, 5, 7, 1, 0, 3, 4, 4, 9] };
        let cp = char_poly(&a, f);
        for x in 0..13 {
            let mut m = a.clone();
            for i in 0..3 {
                m.set(i, i, f.sub(m.get(i, i), x));
            }
            // det(A - xI) = -det(xI - A) for n = 3.
            let det = det3(&m, f);
            let val = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(f.sub(0, det), val);
        }
    }

    fn det3(m: &Mat, f: Zp) -> u64 {
        let g = |r, c| m.get(r, c);
        let t1 = f.mul(g(0, 0), f.sub(f.mul(g(1, 1), g(2, 2)), f.mul(g(1, 2), g(2, 1))));
        let t2 = f.mul(g(0, 1), f.sub(f.mul(g(1, 0), g(2, 2)), f.mul(g(1, 2), g(2, 0))));
        let t3 = f.mul(g(0, 2), f.sub(f.mul(g(1, 0), g(2, 1)), f.mul(g(1, 1), g(2, 0))));
        f.add(f.sub(t1, t2), t3)
    }

    #[test]
    fn kernel_and_restriction() {
        let f = Zp { p: 7 };
        let a = Mat { rows: 2, cols: 3, data: vec![1, 2, 3, 2, 4, 6] };
        let k = kernel(&a, f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!((0..3).fold(0, |s, j| f.add(s, f.mul(a.get(0, j), v[j]))), 0);
        }
        let m = Mat { rows: 2, cols: 2, data: vec![2, 0, 0, 3] };
        let b = Mat::from_columns(2, &[vec![0, 1]]);
        assert_eq!(restrict(&m, &b, f).data, vec![3]);
    }
}
