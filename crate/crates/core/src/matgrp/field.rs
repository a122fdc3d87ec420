//! Finite fields with at most 256 elements, backed by full operation tables.
//!
//! An element is stored as a byte: the coefficients `c_0, …, c_{k-1}` of its
//! polynomial representative modulo the field's defining polynomial, read as
//! the base-`l` number `c_0 + c_1 l + … + c_{k-1} l^{k-1}`. So `0` and `1` are
//! the additive and multiplicative identities and the prime field sits at
//! indices `0..l`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory;

pub struct FiniteField {
    characteristic: u64,
    degree: u32,
    order: usize,
    modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive: u8,
}

impl FiniteField {
    /// The field with `q` elements. `q` must be a prime power at most 256.
    pub fn new(q: u64) -> Result<Self> {
        let (l, k) = numtheory::prime_power(q).ok_or_else(|| {
            Error::InvalidArgument(format!("field size {q} is not a prime power"))
        })?;
        if q > 256 {
            return Err(Error::InvalidArgument(format!(
                "field size {q} exceeds the supported maximum of 256"
            )));
        }
        let modulus = smallest_irreducible(l, k);
        let order = q as usize;
        let digits: Vec<Vec<u64>> = (0..order).map(|x| to_digits(x as u64, l, k)).collect();

        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<u64> = (0..k as usize)
                    .map(|i| (digits[a][i] + digits[b][i]) % l)
                    .collect();
                add[a * order + b] = from_digits(&s, l) as u8;
                mul[a * order + b] = from_digits(&poly_mulmod(&digits[a], &digits[b], &modulus, l), l) as u8;
            }
        }
        let mut neg = vec![0u8; order];
        let mut inv = vec![0u8; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * order + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let mut field = FiniteField {
            characteristic: l,
            degree: k,
            order,
            modulus,
            add,
            mul,
            neg,
            inv,
            primitive: 1,
        };
        field.primitive = (1..order)
            .map(|x| x as u8)
            .find(|&x| field.element_order(x) == (order - 1) as u64)
            .expect("the multiplicative group of a finite field is cyclic");
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut acc = 1u8;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// A generator of the multiplicative group (the least one by index).
    pub fn primitive_element(&self) -> u8 {
        self.primitive
    }

    /// `x ↦ x^l`.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.characteristic)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> u8 {
        v.rem_euclid(self.characteristic as i64) as u8
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.order).map(|x| x as u8)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u8) -> u64 {
        assert!(a != 0);
        let n = (self.order - 1) as u64;
        let mut ord = n;
        for p in numtheory::prime_divisors(n) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == 1 {
                ord /= p;
            }
        }
        ord
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) modulus {:?}", self.order, self.modulus)
    }
}

fn to_digits(mut x: u64, l: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = x % l;
            x /= l;
            d
        })
        .collect()
}

fn from_digits(d: &[u64], l: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * l + c)
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], l: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % l;
        }
    }
    poly_rem(&mut prod, modulus, l);
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// Reduces `a` in place modulo the monic polynomial `m`.
fn poly_rem(a: &mut [u64], m: &[u64], l: u64) {
    let d = m.len() - 1;
    for top in (d..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - d + i;
            a[idx] = (a[idx] + (l - c) * mi) % l;
        }
    }
}

fn is_irreducible(poly: &[u64], l: u64) -> bool {
    let k = poly.len() - 1;
    for d in 1..=k / 2 {
        for low in 0..l.pow(d as u32) {
            let mut divisor = to_digits(low, l, d as u32);
            divisor.push(1);
            let mut r = poly.to_vec();
            poly_rem(&mut r, &divisor, l);
            if r[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `k` whose lower coefficients, read as a
/// base-`l` number with the constant term least significant, are smallest.
fn smallest_irreducible(l: u64, k: u32) -> Vec<u64> {
    (0..l.pow(k))
        .map(|low| {
            let mut p = to_digits(low, l, k);
            p.push(1);
            p
        })
        .find(|p| is_irreducible(p, l))
        .expect("irreducible polynomials exist in every degree")
}
