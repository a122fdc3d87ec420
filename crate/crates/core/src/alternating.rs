//! Alternating groups: explicit factorisations into two elements of order 3,
//! and the cycle-type criteria for `C³ = A_n` and `(g^{S_n})² = A_n`.
//!
//! Products are left-acts-first throughout: `x·y` applies `x`, then `y`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};
use crate::numtheory::is_prime;
use crate::perm::{CycleType, Permutation};

/// `h = x·y` with `x³ = y³ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeFactorWitness {
    #[serde(serialize_with = "display")]
    pub input: Permutation,
    #[serde(serialize_with = "display")]
    pub x: Permutation,
    #[serde(serialize_with = "display")]
    pub y: Permutation,
}

fn display<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl ThreeFactorWitness {
    /// Checks `x·y = h`, `x³ = y³ = 1`, both factors even, and that some
    /// factor has order exactly 3 when `h ≠ 1`.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Witness(format!("{m} for {}", self.input)));
        if self.x.compose(&self.y)? != self.input {
            return fail("x·y differs from the input");
        }
        if !self.x.pow(3).is_identity() || !self.y.pow(3).is_identity() {
            return fail("a factor has order not dividing 3");
        }
        if !self.x.is_even() || !self.y.is_even() {
            return fail("a factor is odd");
        }
        if !self.input.is_identity() && self.x.order() != 3 && self.y.order() != 3 {
            return fail("no factor of order 3");
        }
        Ok(())
    }

    /// Number of nontrivial factors.
    pub fn width(&self) -> usize {
        usize::from(!self.x.is_identity()) + usize::from(!self.y.is_identity())
    }
}

/// `(1,…,l) = (1,2,3)·(4,…,l,1)`.
pub fn break_left(l: usize) -> Result<(Permutation, Permutation)> {
    if l < 4 {
        return Err(Error::InvalidArgument(format!("cycle length {l} is below 4")));
    }
    let mut rest: Vec<usize> = (4..=l).collect();
    rest.push(1);
    Ok((Permutation::cycle(l, &[1, 2, 3])?, Permutation::cycle(l, &rest)?))
}

/// `(1,…,l) = (l-2,1,2,…,l-3)·(1,l-1,l)`.
pub fn break_right(l: usize) -> Result<(Permutation, Permutation)> {
    if l < 4 {
        return Err(Error::InvalidArgument(format!("cycle length {l} is below 4")));
    }
    let mut first = vec![l - 2];
    first.extend(1..=l - 3);
    Ok((Permutation::cycle(l, &first)?, Permutation::cycle(l, &[1, l - 1, l])?))
}

/// The 3-cycles of `x` and `y` for `(1,…,l)`, `l` odd, as 1-based points.
fn odd_cycle_parts(l: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let m = (l - 1) / 2;
    let wrap = |v: usize| if v == l + 1 { 1 } else { v };
    let x = (0..m.div_ceil(2))
        .map(|i| vec![wrap(l + 1 - 2 * i), 2 * i + 2, 2 * i + 3])
        .collect();
    let y = (0..m / 2)
        .map(|i| vec![4 + 2 * i, l - 2 * i, wrap(l - 2 * i + 1)])
        .collect();
    (x, y)
}

/// The two-factor decomposition of `(1,…,l)` for odd `l >= 5`, each factor a
/// product of disjoint 3-cycles.
pub fn odd_cycle_factors(l: usize) -> Result<ThreeFactorWitness> {
    if l < 5 || l.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("cycle length {l} must be odd and at least 5")));
    }
    let (x, y) = odd_cycle_parts(l);
    let input = Permutation::cycle(l, &(1..=l).collect::<Vec<_>>())?;
    let w = ThreeFactorWitness {
        input,
        x: Permutation::from_cycles(l, &x)?,
        y: Permutation::from_cycles(l, &y)?,
    };
    w.verify()?;
    Ok(w)
}

/// An even cycle split as `X·(a,b)·Y` with `X`, `Y` lists of 3-cycles,
/// alternating between breaking left and right.
struct EvenSplit {
    xs: Vec<Vec<usize>>,
    t: (usize, usize),
    ys: Vec<Vec<usize>>,
}

fn split_even(cycle: &[usize], start_left: bool) -> EvenSplit {
    let mut cur = cycle.to_vec();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut left = start_left;
    while cur.len() > 2 {
        let l = cur.len();
        if left {
            xs.push(cur[..3].to_vec());
            let mut rest = cur[3..].to_vec();
            rest.push(cur[0]);
            cur = rest;
        } else {
            ys.insert(0, vec![cur[0], cur[l - 2], cur[l - 1]]);
            let mut rest = vec![cur[l - 3]];
            rest.extend_from_slice(&cur[..l - 3]);
            cur = rest;
        }
        left = !left;
    }
    EvenSplit { xs, t: (cur[0], cur[1]), ys }
}

fn support(cycles: &[Vec<usize>]) -> Vec<usize> {
    cycles.iter().flatten().copied().collect()
}

/// `x` and `y` cycle lists for the product of two disjoint even cycles.
fn even_pair_parts(c1: &[usize], c2: &[usize]) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    for (first, second) in [(c1, c2), (c2, c1)] {
        for d1 in [true, false] {
            for d2 in [true, false] {
                let s1 = split_even(first, d1);
                let s2 = split_even(second, d2);
                for flip1 in [false, true] {
                    for flip2 in [false, true] {
                        let (a1, b1) = if flip1 { (s1.t.1, s1.t.0) } else { s1.t };
                        let (a2, b2) = if flip2 { (s2.t.1, s2.t.0) } else { s2.t };
                        let mut xs = s1.xs.clone();
                        xs.extend(s2.xs.iter().cloned());
                        let mut ys = s1.ys.clone();
                        ys.extend(s2.ys.iter().cloned());
                        let (mx, my) = (support(&xs), support(&ys));
                        let x_ok = [a1, a2, b2].iter().all(|v| !mx.contains(v));
                        let y_ok = [a1, b1, b2].iter().all(|v| !my.contains(v));
                        if x_ok && y_ok {
                            xs.push(vec![a1, b2, a2]);
                            ys.insert(0, vec![a1, b2, b1]);
                            return Some((xs, ys));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Factors the product of two disjoint even cycles, given as 1-based point
/// lists in a permutation of the given degree.
pub fn even_pair_factors(degree: usize, c1: &[usize], c2: &[usize]) -> Result<ThreeFactorWitness> {
    for c in [c1, c2] {
        if c.len() < 2 || c.len() % 2 == 1 {
            return Err(Error::InvalidArgument(format!("cycle {c:?} does not have even length")));
        }
    }
    if c1.iter().any(|v| c2.contains(v)) {
        return Err(Error::InvalidArgument("cycles overlap".into()));
    }
    let input = Permutation::from_cycles(degree, &[c1.to_vec(), c2.to_vec()])?;
    let (xs, ys) = even_pair_parts(c1, c2)
        .ok_or_else(|| Error::Witness(format!("no admissible splice for {input}")))?;
    let w = ThreeFactorWitness {
        input,
        x: Permutation::from_cycles(degree, &xs)?,
        y: Permutation::from_cycles(degree, &ys)?,
    };
    w.verify()?;
    Ok(w)
}

/// Writes an even permutation as a product of two elements of order dividing
/// 3.
pub fn w3_witness(h: &Permutation) -> Result<ThreeFactorWitness> {
    if !h.is_even() {
        return Err(Error::OddPermutation);
    }
    let n = h.degree();
    let mut xs: Vec<Vec<usize>> = Vec::new();
    let mut ys: Vec<Vec<usize>> = Vec::new();
    let mut evens: Vec<Vec<usize>> = Vec::new();
    for c in h.cycles() {
        match c.len() {
            3 => xs.push(c),
            l if l % 2 == 0 => evens.push(c),
            l => {
                let (x, y) = odd_cycle_parts(l);
                let relabel = |v: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
                    v.into_iter().map(|cy| cy.into_iter().map(|i| c[i - 1]).collect()).collect()
                };
                xs.extend(relabel(x));
                ys.extend(relabel(y));
            }
        }
    }
    // Longest first; the sort is stable, so ties keep cycle order.
    evens.sort_by_key(|c| std::cmp::Reverse(c.len()));
    for pair in evens.chunks(2) {
        let (x, y) = even_pair_parts(&pair[0], &pair[1])
            .ok_or_else(|| Error::Witness(format!("no admissible splice for {h}")))?;
        xs.extend(x);
        ys.extend(y);
    }
    let w = ThreeFactorWitness {
        input: h.clone(),
        x: Permutation::from_cycles(n, &xs)?,
        y: Permutation::from_cycles(n, &ys)?,
    };
    w.verify()?;
    Ok(w)
}

/// Whether the class of type `t` in `A_n` meets the cube criterion: no
/// cycles of length `2^k` for `k > 1`, not a product of transpositions only,
/// and `r >= (n-1)/2`. `true` guarantees `C³ = A_n`; `false` decides nothing.
///
/// The transposition clause matters: in `A_8` the type `(2^4)` has `r = 4`
/// and no long cycles, yet its cube misses the elements of order 15.
pub fn dvir_cubes(t: &CycleType) -> Result<bool> {
    if !t.is_even() {
        return Err(Error::OddPermutation);
    }
    Ok(dvir_literal(t) && !t.parts().iter().all(|&l| l == 2))
}

/// The criterion without the transposition clause.
pub fn dvir_literal(t: &CycleType) -> bool {
    let no_powers_of_two = t.parts().iter().all(|&l| l < 4 || !l.is_power_of_two());
    no_powers_of_two && 2 * t.stats().r_value + 1 >= t.degree()
}

/// For the class of type `(p^k, 1^{n-kp})`: whether `n < (k+1)p`, in which
/// case `C³ = A_n` is guaranteed.
pub fn cor25_bound(p: u64, k: u64, n: u64) -> bool {
    n < (k + 1) * p
}

/// The integers `n` with `(4p+3)/3 < n < 2p`.
pub fn bertram_gap(p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(((4 * p + 3) / 3 + 1..2 * p).filter(|&n| 3 * n > 4 * p + 3).collect())
}

/// `f < n^e` for rational `e = a/b > 0`, decided as `f^b < n^a`.
fn below_power(f: u64, n: u64, e: &BigRational) -> bool {
    let a: u32 = e.numer().try_into().expect("small exponent");
    let b: u32 = e.denom().try_into().expect("small exponent");
    BigUint::from(f).pow(b) < BigUint::from(n).pow(a)
}

/// The two conditions `c*(g) + fix(g) < (1/4 - ε)n` and
/// `fix(g²) < n^{1/4-ε}`, evaluated exactly.
pub fn ls_conditions(g: &Permutation, n: usize, epsilon: &BigRational) -> Result<(bool, bool)> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if *epsilon <= BigRational::zero() || *epsilon >= quarter {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside (0, 1/4)")));
    }
    if g.degree() != n {
        return Err(Error::DegreeMismatch(g.degree(), n));
    }
    let s = g.cycle_stats();
    let e = &quarter - epsilon;
    let lhs = BigRational::from_integer(BigInt::from(s.nontrivial_cycles + s.fixed_points));
    let first = lhs < &e * BigRational::from_integer(BigInt::from(n));
    let second = below_power(g.pow(2).fix() as u64, n as u64, &e);
    Ok((first, second))
}

/// `⌊n/p⌋` disjoint `p`-cycles on consecutive points.
pub fn packed_p_cycles(p: usize, n: usize) -> Permutation {
    let cycles: Vec<Vec<usize>> = (0..n / p).map(|i| (i * p + 1..=(i + 1) * p).collect()).collect();
    Permutation::from_cycles(n, &cycles).expect("disjoint cycles")
}

/// Thresholds beyond which the packed `p`-cycle element meets both
/// conditions with `ε = 1/p²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticThresholds {
    pub p: u64,
    #[serde(serialize_with = "crate::frobenius::serialize_rational")]
    pub epsilon: BigRational,
    /// `(4p³ - 4p²)/(p² - 4p - 4)`.
    #[serde(serialize_with = "crate::frobenius::serialize_rational")]
    pub n1: BigRational,
    /// Least `n` with `p - 1 < n^{1/4 - ε}`.
    pub n2: u64,
}

impl AsymptoticThresholds {
    /// Least integer exceeding both thresholds.
    pub fn start(&self) -> u64 {
        let n1 = self.n1.floor().to_integer();
        let n1: u64 = (n1 + 1u32).try_into().expect("small threshold");
        n1.max(self.n2)
    }
}

pub fn thresholds(p: u64) -> Result<AsymptoticThresholds> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::InvalidArgument(format!(
            "no thresholds for p = {p}: the 3-width of A_n is already 2 for every n >= 5"
        )));
    }
    let pi = BigInt::from(p);
    let p2 = &pi * &pi;
    let epsilon = BigRational::new(BigInt::one(), p2.clone());
    let n1 = BigRational::new(4 * &p2 * &pi - 4 * &p2, &p2 - 4 * &pi - 4);
    let e = BigRational::new(BigInt::one(), BigInt::from(4)) - &epsilon;
    let f = p - 1;
    let mut hi = 1u64;
    while !below_power(f, hi, &e) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below_power(f, mid, &e) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(AsymptoticThresholds { p, epsilon, n1, n2: hi })
}

/// Classes contained in `C^k`, by direct search: `z ∈ S·C` iff some `y ∈ C`
/// has `z·y⁻¹ ∈ S`.
pub fn class_power_support(g: &FiniteGroup, data: &ClassData, c: usize, k: usize) -> Vec<usize> {
    let mut reach = vec![false; data.len()];
    if k == 0 {
        reach[0] = true;
    } else {
        reach[c] = true;
    }
    let members = &data.class(c).members;
    for _ in 1..k {
        reach = (0..data.len())
            .into_par_iter()
            .map(|x| {
                let z = data.class(x).representative;
                members.iter().any(|&y| reach[data.class_of(g.mul(z, g.inverse(y)))])
            })
            .collect();
    }
    (0..data.len()).filter(|&x| reach[x]).collect()
}

/// Whether `C^k = G`.
pub fn class_power_covers(g: &FiniteGroup, data: &ClassData, c: usize, k: usize) -> bool {
    class_power_support(g, data, c, k).len() == data.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn breaks() {
        let (a, b) = break_left(5).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("(1,2,3)".into(), "(1,4,5)".into()));
        let (a, b) = break_right(4).unwrap();
        assert_eq!(a, p(4, "(2,1)"));
        assert_eq!(b, p(4, "(1,3,4)"));
        assert!(break_left(3).is_err());
    }

    #[test]
    fn eleven_cycle() {
        let w = odd_cycle_factors(11).unwrap();
        assert_eq!(w.x, p(11, "(1,2,3)(10,4,5)(8,6,7)"));
        assert_eq!(w.y, p(11, "(6,9,10)(4,11,1)"));
    }

    #[test]
    fn transposition_pair() {
        let w = even_pair_factors(4, &[1, 2], &[3, 4]).unwrap();
        assert_eq!(w.x, p(4, "(1,4,3)"));
        assert_eq!(w.y, p(4, "(1,4,2)"));
    }

    #[test]
    fn witnesses_for_small_cases() {
        let id = Permutation::identity(6);
        assert_eq!(w3_witness(&id).unwrap().width(), 0);
        let t = p(6, "(2,5,6)");
        let w = w3_witness(&t).unwrap();
        assert_eq!((w.x.clone(), w.y.is_identity()), (t, true));
        assert_eq!(w3_witness(&p(6, "(1,2)")), Err(Error::OddPermutation));
    }

    #[test]
    fn predicates() {
        assert!(dvir_cubes(&CycleType::parse(6, "5").unwrap()).unwrap());
        assert!(!dvir_cubes(&CycleType::parse(6, "4,2").unwrap()).unwrap());
        assert!(!dvir_cubes(&CycleType::parse(9, "3").unwrap()).unwrap());
        let involution = CycleType::parse(8, "2,2,2,2").unwrap();
        assert!(dvir_literal(&involution) && !dvir_cubes(&involution).unwrap());
        assert!(cor25_bound(5, 1, 9) && cor25_bound(3, 2, 8));
        assert_eq!(bertram_gap(5).unwrap(), vec![8, 9]);
        assert_eq!(bertram_gap(7).unwrap(), vec![11, 12, 13]);
        assert!(bertram_gap(3).unwrap().is_empty());
    }

    #[test]
    fn threshold_values() {
        let t = thresholds(5).unwrap();
        assert_eq!(t.n1, BigRational::from_integer(400.into()));
        assert!(below_power(4, t.n2, &(BigRational::new(21.into(), 100.into()))));
        assert!(!below_power(4, t.n2 - 1, &(BigRational::new(21.into(), 100.into()))));
        assert_eq!(thresholds(7).unwrap().n1, BigRational::new(1176.into(), 17.into()));
        assert!(thresholds(3).is_err());
    }
}
