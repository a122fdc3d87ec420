//! Generators of the classical groups SL_n(q), Sp_n(q), SU_3(q) and GU_3(q).

use std::collections::HashSet;
use std::sync::Arc;

use super::field::FiniteField;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::numtheory;

fn elementary(n: usize, i: usize, j: usize, a: u8, field: &Arc<FiniteField>) -> Matrix {
    let mut m = Matrix::identity(n, field);
    m.set(i, j, a);
    m
}

/// `ω^0, …, ω^{k-1}` for a primitive element ω: a basis of F_q over F_l.
fn prime_field_basis(field: &FiniteField) -> Vec<u8> {
    let w = field.primitive_element();
    (0..field.degree() as u64).map(|t| field.pow(w, t)).collect()
}

/// Root elements `x_{i,i±1}(a)` with `a` running over a basis of F_q over F_l.
pub fn sl_generators(n: usize, q: u64) -> Result<Vec<Matrix>> {
    if n < 2 {
        return Err(Error::UnsupportedGroup(format!("sl:{n}:{q} needs n >= 2")));
    }
    let field = Arc::new(FiniteField::new(q)?);
    let basis = prime_field_basis(&field);
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for &a in &basis {
            gens.push(elementary(n, i, i + 1, a, &field));
            gens.push(elementary(n, i + 1, i, a, &field));
        }
    }
    Ok(gens)
}

/// The alternating form `[[0, I], [-I, 0]]` of even dimension `n`.
pub fn symplectic_form(n: usize, field: &Arc<FiniteField>) -> Matrix {
    let m = n / 2;
    let mut j = Matrix::from_entries(n, vec![0; n * n], field);
    let minus_one = field.neg(1);
    for i in 0..m {
        j.set(i, m + i, 1);
        j.set(m + i, i, minus_one);
    }
    j
}

/// Symplectic transvections `I + a·v·vᵀ·J` for `v` among the `e_i` and
/// `e_i + e_j`, and `a` over a basis of F_q over F_l.
pub fn sp_generators(n: usize, q: u64) -> Result<Vec<Matrix>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::UnsupportedGroup(format!(
            "sp:{n}:{q} needs an even dimension"
        )));
    }
    let field = Arc::new(FiniteField::new(q)?);
    let form = symplectic_form(n, &field);
    let basis = prime_field_basis(&field);
    let mut vectors: Vec<Vec<u8>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0u8; n];
        v[i] = 1;
        vectors.push(v);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v[j] = 1;
            vectors.push(v);
        }
    }
    let mut gens = Vec::new();
    for v in &vectors {
        // w = vᵀ J as a row vector.
        let w: Vec<u8> = (0..n)
            .map(|c| {
                (0..n).fold(0u8, |s, r| field.add(s, field.mul(v[r], form.get(r, c))))
            })
            .collect();
        for &a in &basis {
            let mut t = Matrix::identity(n, &field);
            for r in 0..n {
                for c in 0..n {
                    let extra = field.mul(a, field.mul(v[r], w[c]));
                    t.set(r, c, field.add(t.get(r, c), extra));
                }
            }
            gens.push(t);
        }
    }
    Ok(gens)
}

/// `gᵀ·J·g = J`.
pub fn preserves_bilinear(g: &Matrix, form: &Matrix) -> bool {
    &(&g.transpose() * form) * g == *form
}

/// The Hermitian form used for the unitary groups: antidiagonal ones.
pub fn hermitian_form(field: &Arc<FiniteField>) -> Matrix {
    let mut j = Matrix::from_entries(3, vec![0; 9], field);
    for i in 0..3 {
        j.set(i, 2 - i, 1);
    }
    j
}

/// `ḡᵀ·J·g = J` where the bar is `x ↦ x^q` on F_{q²}.
pub fn preserves_hermitian(g: &Matrix, form: &Matrix, q: u64) -> bool {
    let f = g.field();
    let bar = g.map(|x| f.pow(x, q));
    &(&bar.transpose() * form) * g == *form
}

fn unitary_field(q: u64) -> Result<Arc<FiniteField>> {
    if numtheory::prime_power(q).is_none() {
        return Err(Error::UnsupportedGroup(format!("unitary group over q = {q}")));
    }
    if q * q > 256 {
        return Err(Error::UnsupportedGroup(format!(
            "unitary group over q = {q}: F_(q^2) exceeds 256 elements"
        )));
    }
    Ok(Arc::new(FiniteField::new(q * q)?))
}

fn closure(gens: &[Matrix]) -> HashSet<Vec<u8>> {
    let Some(first) = gens.first() else {
        return HashSet::new();
    };
    let id = Matrix::identity(first.dim(), first.field());
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(id.entries().to_vec());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.entries().to_vec()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Generators of SU_3(q) preserving [`hermitian_form`]: a generating set of
/// the upper unitriangular form-preserving matrices (found by search), a
/// monomial Weyl element and a diagonal torus element of maximal order.
pub fn su3_generators(q: u64) -> Result<Vec<Matrix>> {
    let field = unitary_field(q)?;
    let form = hermitian_form(&field);
    let size = field.order();

    let mut unipotent = Vec::new();
    let mut span: HashSet<Vec<u8>> = HashSet::new();
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                let mut u = Matrix::identity(3, &field);
                u.set(0, 1, a as u8);
                u.set(0, 2, b as u8);
                u.set(1, 2, c as u8);
                if u.is_identity() || !preserves_hermitian(&u, &form, q) {
                    continue;
                }
                if !span.contains(u.entries()) {
                    unipotent.push(u);
                    span = closure(&unipotent);
                }
            }
        }
    }

    let weyl = (1..size)
        .flat_map(|x| (1..size).flat_map(move |y| (1..size).map(move |z| (x, y, z))))
        .map(|(x, y, z)| {
            let mut w = Matrix::from_entries(3, vec![0; 9], &field);
            w.set(0, 2, x as u8);
            w.set(1, 1, y as u8);
            w.set(2, 0, z as u8);
            w
        })
        .find(|w| w.determinant() == 1 && preserves_hermitian(w, &form, q))
        .expect("a monomial element of SU_3 exists");

    let mut torus: Option<(u64, Matrix)> = None;
    for a in 1..size {
        for b in 1..size {
            let ab = field.mul(a as u8, b as u8);
            let c = field.inv(ab);
            let mut d = Matrix::identity(3, &field);
            d.set(0, 0, a as u8);
            d.set(1, 1, b as u8);
            d.set(2, 2, c);
            if !preserves_hermitian(&d, &form, q) {
                continue;
            }
            let ord = d.order();
            if torus.as_ref().is_none_or(|(o, _)| ord > *o) {
                torus = Some((ord, d));
            }
        }
    }
    let mut gens = unipotent;
    gens.push(weyl);
    if let Some((_, d)) = torus {
        if !d.is_identity() {
            gens.push(d);
        }
    }
    Ok(gens)
}

/// SU_3(q) generators plus `diag(1, β, 1)` with β of order `q + 1`.
pub fn gu3_generators(q: u64) -> Result<Vec<Matrix>> {
    let mut gens = su3_generators(q)?;
    let field = Arc::clone(gens[0].field());
    let beta = field.pow(field.primitive_element(), q - 1);
    let mut d = Matrix::identity(3, &field);
    d.set(1, 1, beta);
    gens.push(d);
    Ok(gens)
}

/// The transvection `I + E_{1,2}` in SL_n(l).
pub fn transvection(n: usize, l: u64) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "transvections need n >= 2, got {n}"
        )));
    }
    if !numtheory::is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let field = Arc::new(FiniteField::new(l)?);
    Ok(elementary(n, 0, 1, 1, &field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_generators_preserve_form() {
        for q in [2, 3, 4, 5] {
            let gens = su3_generators(q).unwrap();
            let form = hermitian_form(gens[0].field());
            for g in &gens {
                assert!(preserves_hermitian(g, &form, q));
                assert_eq!(g.determinant(), 1);
            }
            for g in gu3_generators(q).unwrap() {
                assert!(preserves_hermitian(&g, &form, q));
            }
        }
    }

    #[test]
    fn symplectic_generators_preserve_form() {
        for (n, q) in [(2, 3), (4, 2), (4, 3), (6, 2)] {
            let gens = sp_generators(n, q).unwrap();
            let form = symplectic_form(n, gens[0].field());
            for g in &gens {
                assert!(preserves_bilinear(g, &form));
            }
        }
        assert!(sp_generators(3, 2).is_err());
    }

    #[test]
    fn transvections() {
        let t = transvection(4, 2).unwrap();
        assert_eq!(t.order(), 2);
        let id = Matrix::identity(4, t.field());
        assert_eq!(t.sub(&id).rank(), 1);
        assert_eq!(transvection(2, 3).unwrap().order(), 3);
        assert!(transvection(3, 4).is_err());
    }
}
