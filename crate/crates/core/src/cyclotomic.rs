//! Exact elements of cyclotomic fields.
//!
//! An element of `Q(ζ_n)` is stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`
//! obtained by reducing polynomials in `ζ_n` modulo the `n`-th cyclotomic
//! polynomial. Every value is kept at its *minimal* conductor (never
//! `≡ 2 mod 4`), so two values are equal iff their conductors and coefficient
//! vectors are equal, and rationals always have conductor 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, FromPrimitive, One, Signed, Zero};

use crate::numtheory::{euler_phi, mod_inv, prime_divisors};

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in crate::numtheory::divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = exact_div(&num, &den);
    }
    let poly = Arc::new(num);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

// Division of integer polynomials by a monic divisor, remainder assumed zero.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

/// Reduces a polynomial in `ζ_n` (coefficient `i` multiplies `ζ_n^i`, any
/// length) to the canonical basis of length `φ(n)`. Returns `None` on
/// arithmetic overflow for fixed-width coefficient types.
pub fn reduce_mod_cyclotomic<T>(mut v: Vec<T>, n: u64) -> Option<Vec<T>>
where
    T: Clone + Zero + CheckedSub + CheckedMul + FromPrimitive,
{
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    if v.len() < phi {
        v.resize(phi, T::zero());
    }
    let nonzero: Vec<(usize, T)> = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, T::from_i64(c).expect("small coefficient")))
        .collect();
    for i in (phi..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let t = std::mem::replace(&mut v[i], T::zero());
        for (j, c) in &nonzero {
            let idx = i - phi + j;
            v[idx] = v[idx].checked_sub(&t.checked_mul(c)?)?;
        }
    }
    v.truncate(phi);
    Some(v)
}

/// An element of a cyclotomic field, stored canonically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![v],
        }
    }

    /// `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u64) -> Self {
        Self::from_powers(n, [(1u64, BigRational::one())])
    }

    /// `Σ c · ζ_n^e` over the given (exponent, coefficient) pairs.
    pub fn from_powers<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![BigRational::zero(); n as usize];
        for (e, c) in terms {
            let slot = &mut dense[(e % n) as usize];
            *slot += c;
        }
        Self::from_dense(n, dense)
    }

    /// Canonicalises a polynomial in `ζ_n` given by dense coefficients.
    pub fn from_dense(n: u64, dense: Vec<BigRational>) -> Self {
        let reduced = reduce_mod_cyclotomic(dense, n).expect("big rationals do not overflow");
        let (conductor, coeffs) = minimize(n, reduced);
        Cyclotomic { conductor, coeffs }
    }

    /// Builds a value from coefficients already in the canonical basis of
    /// `Q(ζ_n)` (length must be `φ(n)`), then lowers the conductor.
    pub fn from_basis(n: u64, coeffs: Vec<BigRational>) -> Option<Self> {
        if n == 0 || coeffs.len() as u64 != euler_phi(n) {
            return None;
        }
        let (conductor, coeffs) = minimize(n, coeffs);
        Some(Cyclotomic { conductor, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients in the canonical basis of `Q(ζ_conductor)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// True when every basis coefficient is an integer; for the power basis
    /// this is exactly membership in `Z[ζ_n]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as `(exponent of ζ_m, integer)` pairs in a field
    /// `Q(ζ_m)` with `conductor | m`. `None` if some coefficient is not an
    /// integer.
    pub fn integer_terms_in(&self, m: u64) -> Option<Vec<(u64, BigInt)>> {
        assert!(m.is_multiple_of(self.conductor), "target field does not contain the value");
        let step = m / self.conductor;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c.is_integer().then(|| (i as u64 * step, c.to_integer())))
            .collect()
    }

    /// Dense coefficients of `ζ_m` powers, `m` a multiple of the conductor.
    pub fn dense_in(&self, m: u64) -> Vec<BigRational> {
        assert!(m.is_multiple_of(self.conductor));
        let step = (m / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] = c.clone();
        }
        out
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^a` (`a` coprime to the conductor).
    pub fn galois(&self, a: i64) -> Self {
        let n = self.conductor;
        let a = a.rem_euclid(n as i64) as u64;
        assert!(n == 1 || a.gcd(&n) == 1, "exponent must be a unit modulo the conductor");
        let mut dense = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[((i as u64 * a) % n) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    fn binary(&self, other: &Self, f: impl Fn(&[BigRational], &[BigRational], usize) -> Vec<BigRational>) -> Self {
        let n = self.conductor.lcm(&other.conductor);
        let a = self.dense_in(n);
        let b = other.dense_in(n);
        Self::from_dense(n, f(&a, &b, n as usize))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b, n| {
            let mut out = vec![BigRational::zero(); n];
            for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    out[(i + j) % n] += x * y;
                }
            }
            out
        })
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order used only to make sorting deterministic.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-like notation, e.g. `-1-E(5)^2-E(5)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if i == 1 {
                write!(f, "E({})", self.conductor)?;
            } else {
                write!(f, "E({})^{}", self.conductor, i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Lowers the conductor of a canonical vector as far as possible. Subfields of
// Q(ζ_n) containing a value are closed under intersection, so descending one
// prime at a time reaches the minimal conductor.
fn minimize(mut n: u64, mut c: Vec<BigRational>) -> (u64, Vec<BigRational>) {
    'outer: loop {
        if n == 1 {
            return (n, c);
        }
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m.
            let m = n / 2;
            let mut dense = vec![BigRational::zero(); m as usize];
            let half = m.div_ceil(2);
            for (j, cj) in c.iter().enumerate() {
                let e = ((j as u64 * half) % m) as usize;
                if j % 2 == 0 {
                    dense[e] += cj;
                } else {
                    dense[e] -= cj;
                }
            }
            c = reduce_mod_cyclotomic(dense, m).unwrap();
            n = m;
            continue;
        }
        for p in prime_divisors(n) {
            let m = n / p;
            let candidate = reduce_mod_cyclotomic(trace_down(n, p, &c), m).unwrap();
            // Embed back and compare.
            let mut dense = vec![BigRational::zero(); n as usize];
            for (i, x) in candidate.iter().enumerate() {
                dense[i * p as usize] = x.clone();
            }
            let back = reduce_mod_cyclotomic(dense, n).unwrap();
            if back == c {
                n = m;
                c = candidate;
                continue 'outer;
            }
        }
        return (n, c);
    }
}

// (1/[Q(ζ_n):Q(ζ_m)]) · Tr_{Q(ζ_n)/Q(ζ_m)} with m = n/p, as a dense
// polynomial in ζ_m.
fn trace_down(n: u64, p: u64, c: &[BigRational]) -> Vec<BigRational> {
    let m = n / p;
    let mut out = vec![BigRational::zero(); m as usize];
    if m.is_multiple_of(p) {
        for (j, cj) in c.iter().enumerate() {
            if (j as u64).is_multiple_of(p) {
                out[(j as u64 / p) as usize] += cj;
            }
        }
    } else {
        // ζ_n = ζ_m^u ζ_p^v with u = p^{-1} mod m.
        let u = if m == 1 { 0 } else { inverse_mod(p % m, m) };
        let minus = BigRational::new(BigInt::from(-1), BigInt::from(p - 1));
        for (j, cj) in c.iter().enumerate() {
            let e = ((u * j as u64) % m) as usize;
            if (j as u64).is_multiple_of(p) {
                out[e] += cj;
            } else {
                out[e] += cj * &minus;
            }
        }
    }
    out
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    if crate::numtheory::is_prime(m) {
        return mod_inv(a, m);
    }
    let e = num_integer::Integer::extended_gcd(&(a as i64), &(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

/// Sparse `(exponent of ζ_n, coefficient)` form of an algebraic integer in
/// `Q(ζ_n)`. `None` if a coefficient is not an integer or exceeds `i128`.
pub fn int_terms(c: &Cyclotomic, n: u64) -> Option<Vec<(u32, i128)>> {
    use num_traits::ToPrimitive;
    c.integer_terms_in(n)?
        .into_iter()
        .map(|(e, v)| Some((e as u32, v.to_i128()?)))
        .collect()
}

/// Exact accumulator for `Σ w · f_1 ⋯ f_r` where the factors are cyclotomic
/// integers in sparse form over a common `ζ_n`.
///
/// Work is done in `i128` with checked arithmetic; once anything overflows
/// the accumulator moves to `BigInt` for the rest of its life.
pub struct ProductSum {
    n: u64,
    small: Vec<i128>,
    big: Option<Vec<BigInt>>,
    scratch: Vec<i128>,
    touched: Vec<u32>,
}

impl ProductSum {
    pub fn new(n: u64) -> Self {
        ProductSum {
            n,
            small: vec![0; n as usize],
            big: None,
            scratch: vec![0; n as usize],
            touched: Vec::new(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Adds `weight · ∏ factors`.
    pub fn add_product(&mut self, weight: &BigInt, factors: &[&[(u32, i128)]]) {
        use num_traits::ToPrimitive;
        if self.big.is_none() {
            if let Some(w) = weight.to_i128() {
                if let Some(prod) = self.product_small(w, factors) {
                    let mut ok = true;
                    for &(e, c) in &prod {
                        match self.small[e as usize].checked_add(c) {
                            Some(v) => self.small[e as usize] = v,
                            None => {
                                // Undo the partial addition, then switch to big integers.
                                for &(e2, c2) in &prod {
                                    if e2 == e {
                                        break;
                                    }
                                    self.small[e2 as usize] -= c2;
                                }
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        return;
                    }
                }
            }
            self.big = Some(self.small.iter().map(|&x| BigInt::from(x)).collect());
        }
        let n = self.n;
        let mut cur: Vec<(u32, BigInt)> = vec![(0, weight.clone())];
        for f in factors {
            let mut next: HashMap<u32, BigInt> = HashMap::new();
            for (e1, c1) in &cur {
                for &(e2, c2) in f.iter() {
                    let e = ((*e1 as u64 + e2 as u64) % n) as u32;
                    *next.entry(e).or_insert_with(BigInt::zero) += c1 * BigInt::from(c2);
                }
            }
            cur = next.into_iter().collect();
        }
        let big = self.big.as_mut().expect("switched to big integers");
        for (e, c) in cur {
            big[e as usize] += c;
        }
    }

    fn product_small(&mut self, weight: i128, factors: &[&[(u32, i128)]]) -> Option<Vec<(u32, i128)>> {
        let n = self.n;
        let mut cur: Vec<(u32, i128)> = vec![(0, weight)];
        for f in factors {
            self.touched.clear();
            let mut overflow = false;
            'mul: for &(e1, c1) in &cur {
                for &(e2, c2) in f.iter() {
                    let e = ((e1 as u64 + e2 as u64) % n) as usize;
                    let Some(v) = c1.checked_mul(c2).and_then(|v| v.checked_add(self.scratch[e])) else {
                        overflow = true;
                        break 'mul;
                    };
                    if self.scratch[e] == 0 {
                        self.touched.push(e as u32);
                    }
                    self.scratch[e] = v;
                }
            }
            let next: Vec<(u32, i128)> = self
                .touched
                .iter()
                .map(|&e| (e, std::mem::take(&mut self.scratch[e as usize])))
                .filter(|&(_, c)| c != 0)
                .collect();
            if overflow {
                for &e in &self.touched {
                    self.scratch[e as usize] = 0;
                }
                return None;
            }
            cur = next;
        }
        Some(cur)
    }

    /// The exact sum as a canonical cyclotomic number.
    pub fn finish(self) -> Cyclotomic {
        let n = self.n;
        if self.big.is_none() {
            if let Some(red) = reduce_mod_cyclotomic(self.small.clone(), n) {
                let coeffs = red
                    .into_iter()
                    .map(|x| BigRational::from_integer(BigInt::from(x)))
                    .collect();
                return Cyclotomic::from_basis(n, coeffs).expect("length is φ(n)");
            }
        }
        let big = match self.big {
            Some(b) => b,
            None => self.small.iter().map(|&x| BigInt::from(x)).collect(),
        };
        let red = reduce_mod_cyclotomic(big, n).expect("big integers do not overflow");
        let coeffs = red.into_iter().map(BigRational::from_integer).collect();
        Cyclotomic::from_basis(n, coeffs).expect("length is φ(n)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn sums_of_all_roots_vanish() {
        for n in 2..40u64 {
            let s = Cyclotomic::from_powers(n, (0..n).map(|e| (e, q(1, 1))));
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn conductor_is_minimal() {
        // ζ_6 = -ζ_3^2, lives in Q(ζ_3).
        let z6 = Cyclotomic::zeta(6);
        assert_eq!(z6.conductor(), 3);
        assert_eq!(z6, -&Cyclotomic::zeta(3).pow(2));
        // ζ_8 + ζ_8^7 = √2 has conductor 8, ζ_8^2 = i has conductor 4.
        let r2 = &Cyclotomic::zeta(8) + &Cyclotomic::zeta(8).pow(7);
        assert_eq!(r2.conductor(), 8);
        assert_eq!(Cyclotomic::zeta(8).pow(2).conductor(), 4);
        // (-1 + √5)/2 = ζ_5 + ζ_5^4 written in Q(ζ_15).
        let b5 = Cyclotomic::from_powers(15, [(3, q(1, 1)), (12, q(1, 1))]);
        assert_eq!(b5.conductor(), 5);
        // i·i = -1 has conductor 1.
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        // √-3 = ζ_3 - ζ_3^2 squared is -3.
        let s = &Cyclotomic::zeta(3) - &Cyclotomic::zeta(3).pow(2);
        assert_eq!(&s * &s, Cyclotomic::from_integer(-3));
        // √5 via Gauss sum in Q(ζ_20)
        let g = Cyclotomic::from_powers(
            20,
            [(4, q(1, 1)), (8, q(-1, 1)), (12, q(-1, 1)), (16, q(1, 1))],
        );
        assert_eq!(g.conductor(), 5);
        assert_eq!(&g * &g, Cyclotomic::from_integer(5));
    }

    #[test]
    fn conjugation_and_rationality() {
        let z7 = Cyclotomic::zeta(7);
        let norm = &z7 * &z7.conj();
        assert_eq!(norm, Cyclotomic::one());
        let b7 = &(&z7 + &z7.pow(2)) + &z7.pow(4);
        assert!(!b7.is_rational());
        let tr = &b7 + &b7.conj();
        assert_eq!(tr, Cyclotomic::from_integer(-1));
        assert!(b7.is_integral());
        assert_eq!(Cyclotomic::from_rational(q(3, 6)).to_rational(), Some(q(1, 2)));
    }

    #[test]
    fn integer_reduction_detects_overflow() {
        let v: Vec<i128> = vec![0, 0, i128::MAX];
        assert!(reduce_mod_cyclotomic(v, 3).is_some());
        let v: Vec<i128> = vec![i128::MAX, 0, 0, 0, 0, 1];
        assert!(reduce_mod_cyclotomic(v, 5).is_none());
    }

    #[test]
    fn product_sum_matches_direct_arithmetic() {
        let z5 = Cyclotomic::zeta(5);
        let a = &Cyclotomic::one() + &z5.pow(2);
        let b = &z5 - &Cyclotomic::from_integer(3);
        let ta = int_terms(&a, 5).unwrap();
        let tb = int_terms(&b, 5).unwrap();
        let mut sum = ProductSum::new(5);
        sum.add_product(&BigInt::from(7), &[&ta, &tb]);
        sum.add_product(&BigInt::from(-2), &[&tb]);
        let expect = &(&Cyclotomic::from_integer(7) * &(&a * &b)) - &(&Cyclotomic::from_integer(2) * &b);
        assert_eq!(sum.finish(), expect);

        // Force the big-integer path and come back to a small value.
        let huge = BigInt::from(i128::MAX);
        let mut sum = ProductSum::new(1);
        sum.add_product(&huge, &[&[(0, 4)]]);
        sum.add_product(&(-&huge * 4 + 1), &[]);
        assert_eq!(sum.finish(), Cyclotomic::one());
    }
}
